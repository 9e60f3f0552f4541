//! Regenerates the sample documents under docs/. Run from the workspace
//! root: `cargo run -p comox-cli --example gendocs`.

use comox::adjunction::slash;
use comox::catalog::{base_plus, cylinder};
use comox::doc::{comodule_to_doc, retractive_to_doc, sset_to_doc, to_text};
use comox::sset::{projective_plane, standard, Product, Standard};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::path::Path::new("docs");
    std::fs::create_dir_all(dir)?;
    let write = |name: &str, text: String| -> std::io::Result<()> {
        std::fs::write(dir.join(name), text)
    };

    let s1 = standard(Standard::Sphere(1))?.unpointed();
    write("circle.json", to_text(&sset_to_doc("circle", &s1)))?;

    let rp2 = projective_plane()?;
    write("rp2.json", to_text(&sset_to_doc("rp2", &rp2)))?;

    let torus = Product::new(&s1, &s1)?;
    write("torus.json", to_text(&sset_to_doc("torus", &torus.space)))?;

    let cyl = cylinder(&s1)?;
    write("cylinder.json", to_text(&retractive_to_doc("cylinder", &cyl)))?;

    write(
        "circle-plus.json",
        to_text(&comodule_to_doc("circle-plus", &base_plus(&s1)?)),
    )?;

    write(
        "cylinder-slash.json",
        to_text(&comodule_to_doc("cylinder-slash", &slash(&cyl)?.comodule)),
    )?;

    println!("wrote sample documents to {}", dir.display());
    Ok(())
}
