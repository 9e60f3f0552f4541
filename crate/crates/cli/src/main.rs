//! Report-emitting command line for the comox calculus: homology tables,
//! document validation, adjunction certificates, covers, loop groups, and
//! property suites over the generated catalog.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use comox::adjunction::{counit, slash, star, unit};
use comox::covers::{universal_cover, LoopGroup};
use comox::doc::{parse, Parsed};
use comox::homology::{homology, normalized_chains, space_homology};
use comox::report::{Report, Verdict};
use comox::verify::{run_suite, DEFAULT_COSET_BOUND};
use comox::Error;

#[derive(Parser)]
#[command(name = "comox", version, about = "exact calculus of comodules and retractive spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of a document's underlying space.
    Homology {
        file: PathBuf,
        /// Reduced homology (via the augmentation).
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        json: bool,
    },
    /// Parse and validate a document of any kind.
    Check { file: PathBuf },
    /// Adjunction certificates.
    Adjoint {
        #[command(subcommand)]
        which: AdjointCommand,
    },
    /// Fundamental group, universal cover, and cover homology.
    Cover {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_COSET_BOUND)]
        max_cosets: usize,
        #[arg(long)]
        json: bool,
    },
    /// Loop-group statistics and identity reports for a reduced document.
    Loopgroup {
        file: PathBuf,
        #[arg(long)]
        truncate: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run property suites over the generated catalog.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 60)]
        cases: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum AdjointCommand {
    /// Build the unit on a retractive document and certify it.
    Unit {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Counit isomorphism and round-trip certificates on a comodule document.
    Roundtrip {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn read_doc(file: &PathBuf) -> Result<(comox::doc::Document, Parsed), Error> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
    parse(&text)
}

fn emit(report: Report, json: bool) -> ExitCode {
    let code = report.exit_code();
    if json {
        print!("{}", report.render_json());
    } else {
        print!("{}", report.render_text());
    }
    ExitCode::from(code as u8)
}

fn run() -> Result<ExitCode, Error> {
    if let Ok(cap) = std::env::var("COMODULE_MAX_DIM") {
        let cap: usize = cap
            .parse()
            .map_err(|_| Error::Parse("COMODULE_MAX_DIM must be an integer".into()))?;
        comox::sset::set_max_dim(cap);
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Homology { file, reduced, json } => {
            let (doc, parsed) = read_doc(&file)?;
            let space = parsed.homology_space()?;
            let h = homology(&normalized_chains(&space, reduced));
            if json {
                let rows: Vec<serde_json::Value> = h
                    .groups
                    .iter()
                    .enumerate()
                    .map(|(n, g)| {
                        serde_json::json!({
                            "degree": n,
                            "rank": g.rank,
                            "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "name": doc.name,
                        "reduced": reduced,
                        "homology": rows,
                    }))
                    .expect("serializable")
                );
            } else {
                println!("{} ({})", doc.name, if reduced { "reduced" } else { "unreduced" });
                for (n, g) in h.groups.iter().enumerate() {
                    println!("H{n} = {g}");
                }
                if h.groups.is_empty() {
                    println!("trivial");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { file } => {
            let (doc, parsed) = read_doc(&file)?;
            println!("ok: {} is a valid {} document", doc.name, parsed.kind());
            Ok(ExitCode::SUCCESS)
        }
        Command::Adjoint { which } => match which {
            AdjointCommand::Unit { file, json } => {
                let (doc, parsed) = read_doc(&file)?;
                let Parsed::Retractive(obj) = parsed else {
                    return Err(Error::Parse("adjoint unit wants a retractive document".into()));
                };
                let u = unit(&obj)?;
                let mut r = Report::new(format!("adjoint-unit/{}", doc.name), 0);
                r.check("unit/retractive-map", true, "triangles validated");
                r.check("unit/hz-equivalence", u.certificate.pass, u.certificate.to_string());
                r.case(
                    "unit/isomorphism-observed",
                    if u.is_iso { Verdict::Pass } else { Verdict::Fail },
                    format!(
                        "source counts {:?}, target counts {:?}",
                        u.map.source.counts(),
                        u.map.target.counts()
                    ),
                );
                Ok(emit(r.finalize(), json))
            }
            AdjointCommand::Roundtrip { file, json } => {
                let (doc, parsed) = read_doc(&file)?;
                let Parsed::Comodule(c) = parsed else {
                    return Err(Error::Parse("adjoint roundtrip wants a comodule document".into()));
                };
                let st = star(&c)?;
                let eps = counit(&c, &st)?;
                let mut r = Report::new(format!("adjoint-roundtrip/{}", doc.name), 0);
                r.check("counit/isomorphism", eps.map.is_iso(), "two-sided inverse certified");
                let sl = slash(&st.object)?;
                r.check(
                    "roundtrip/slash-star-counts",
                    sl.comodule.counts() == c.counts(),
                    format!("{:?}", sl.comodule.counts()),
                );
                let u = unit(&st.object)?;
                r.check("roundtrip/unit-on-star", u.certificate.pass, "");
                Ok(emit(r.finalize(), json))
            }
        },
        Command::Cover { file, max_cosets, json } => {
            let (doc, parsed) = read_doc(&file)?;
            let Parsed::Space(space) = parsed else {
                return Err(Error::Parse("cover wants an sset document".into()));
            };
            let ep = comox::covers::fundamental_group(
                &space,
                comox::sset::SimplexId { dim: 0, idx: 0 },
            )?;
            let mut r = Report::new(format!("cover/{}", doc.name), 0);
            r.pass(
                "pi1/presentation",
                format!(
                    "{} generators, {} relators, abelianization {}",
                    ep.presentation.generators.len(),
                    ep.presentation.relators.len(),
                    ep.presentation.abelianization()
                ),
            );
            match universal_cover(&space, max_cosets) {
                Ok(cover) => {
                    r.pass("pi1/order", format!("{}", cover.order()));
                    r.pass("cover/counts", format!("{:?}", cover.total.counts()));
                    r.pass("cover/homology", format!("{}", space_homology(&cover.total)));
                    match cover.verify(max_cosets) {
                        Ok(checks) => {
                            for (name, ok) in checks {
                                r.check(format!("cover/{name}"), ok, "");
                            }
                        }
                        Err(e) => r.error("cover/invariants", e),
                    }
                }
                Err(Error::Exceeded { bound }) => {
                    r.pass("pi1/order", format!("Exceeded({bound}): possibly infinite"));
                }
                Err(e) => r.error("cover", e),
            }
            Ok(emit(r.finalize(), json))
        }
        Command::Loopgroup { file, truncate, json } => {
            let (doc, parsed) = read_doc(&file)?;
            let Parsed::Space(space) = parsed else {
                return Err(Error::Parse("loopgroup wants an sset document".into()));
            };
            let engine = LoopGroup::new(space.clone(), truncate)?;
            let mut r = Report::new(format!("loopgroup/{}", doc.name), 0);
            for degree in 0..truncate {
                r.pass(
                    format!("generators/degree{degree}"),
                    format!("{}", engine.generators(degree).len()),
                );
            }
            let mut tau_ok = true;
            for n in 1..=truncate {
                for x in space.all_refs(n) {
                    if !engine.check_twisting_identities(&x)? {
                        tau_ok = false;
                    }
                }
            }
            r.check("twisting-identities", tau_ok, format!("all simplices up to dim {truncate}"));
            let ab = engine.pi0()?.abelianization();
            let h1 = space_homology(&space).group(1);
            r.check("pi0-abelianization-vs-h1", ab == h1, format!("pi0 ab = {ab}, H1 = {h1}"));
            Ok(emit(r.finalize(), json))
        }
        Command::Verify { suite, seed, cases, json } => {
            let start = Instant::now();
            let report = run_suite(&suite, seed, cases)?;
            eprintln!(
                "suite {suite} finished in {:.1}s",
                start.elapsed().as_secs_f64()
            );
            Ok(emit(report, json))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
