//! Machine-readable verification reports. The canonical rendering contains no
//! timing data, so reports are byte-identical across runs with the same seed;
//! wall time is reported separately by the CLI on stderr.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<CaseReport>,
}

impl Report {
    pub fn new(suite: impl Into<String>, seed: u64) -> Report {
        Report { suite: suite.into(), seed, cases: Vec::new() }
    }

    pub fn case(&mut self, name: impl Into<String>, verdict: Verdict, detail: impl Into<String>) {
        self.cases.push(CaseReport { name: name.into(), verdict, detail: detail.into() });
    }

    pub fn pass(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.case(name, Verdict::Pass, detail);
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.case(name, if ok { Verdict::Pass } else { Verdict::Fail }, detail);
    }

    pub fn error(&mut self, name: impl Into<String>, err: impl std::fmt::Display) {
        self.case(name, Verdict::Error, err.to_string());
    }

    /// Add another report's cases under a prefix.
    pub fn absorb(&mut self, other: Report) {
        for c in other.cases {
            self.cases.push(CaseReport { name: format!("{}/{}", other.suite, c.name), ..c });
        }
    }

    /// Cases sorted by name so assembly order never shows.
    pub fn finalize(mut self) -> Report {
        self.cases.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    pub fn worst(&self) -> Verdict {
        let mut worst = Verdict::Pass;
        for c in &self.cases {
            match c.verdict {
                Verdict::Error => return Verdict::Error,
                Verdict::Fail => worst = Verdict::Fail,
                Verdict::Pass => {}
            }
        }
        worst
    }

    pub fn exit_code(&self) -> i32 {
        match self.worst() {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("suite {} (seed {})\n", self.suite, self.seed));
        for c in &self.cases {
            let v = match c.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
                Verdict::Error => "ERROR",
            };
            if c.detail.is_empty() {
                out.push_str(&format!("{v:5} {}\n", c.name));
            } else {
                out.push_str(&format!("{v:5} {}: {}\n", c.name, c.detail));
            }
        }
        let (p, f, e) = self.tally();
        out.push_str(&format!("total {} pass, {} fail, {} error\n", p, f, e));
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn tally(&self) -> (usize, usize, usize) {
        let mut t = (0, 0, 0);
        for c in &self.cases {
            match c.verdict {
                Verdict::Pass => t.0 += 1,
                Verdict::Fail => t.1 += 1,
                Verdict::Error => t.2 += 1,
            }
        }
        t
    }
}
