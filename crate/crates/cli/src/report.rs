use std::fmt::Write as _;

use latlab_core::Verdict;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const FORMAT: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub title: String,
    pub rows: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub format: u32,
    pub command: String,
    pub inputs_digest: String,
    pub sections: Vec<Section>,
    pub verdicts: Vec<Verdict>,
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut out = String::from("sha256:");
    for b in hash {
        let _ = write!(out, "{b:02x}");
    }
    out
}

impl Report {
    pub fn new(command: &str, input: &[u8]) -> Self {
        Report {
            format: FORMAT,
            command: command.to_string(),
            inputs_digest: digest(input),
            sections: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn section(&mut self, title: impl Into<String>, rows: Vec<String>) {
        self.sections.push(Section { title: title.into(), rows });
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "latlab {}", self.command);
        let _ = writeln!(out, "inputs {}", self.inputs_digest);
        for s in &self.sections {
            let _ = writeln!(out, "\n== {} ==", s.title);
            for r in &s.rows {
                let _ = writeln!(out, "{r}");
            }
        }
        if !self.verdicts.is_empty() {
            let _ = writeln!(out, "\n== verdicts ==");
            for v in &self.verdicts {
                let tag = if v.pass { "PASS" } else { "FAIL" };
                match &v.witness {
                    Some(w) => {
                        let _ = writeln!(out, "{tag} {}: {w}", v.name);
                    }
                    None => {
                        let _ = writeln!(out, "{tag} {}", v.name);
                    }
                }
            }
            let failed = self.verdicts.iter().filter(|v| !v.pass).count();
            let _ = writeln!(out, "\n{} checks, {failed} failed", self.verdicts.len());
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(digest(b""), "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn text_and_json() {
        let mut r = Report::new("check", b"{}");
        r.section("summary", vec!["elements 5".into()]);
        r.verdict(Verdict::pass("ok"));
        r.verdict(Verdict::fail("bad", "witness"));
        assert!(!r.passed());
        let text = r.render_text();
        assert!(text.contains("PASS ok\nFAIL bad: witness"));
        let json: serde_json::Value = serde_json::from_str(&r.render_json()).unwrap();
        assert_eq!(json["format"], 1);
        assert_eq!(json["verdicts"][1]["pass"], false);
    }
}
