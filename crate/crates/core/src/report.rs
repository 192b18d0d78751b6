//! Plain-text verification reports.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportLine {
    pub ok: bool,
    pub text: String,
}

/// A titled list of checks, each passing or failing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), lines: Vec::new() }
    }

    pub fn check(&mut self, ok: bool, text: impl Into<String>) -> bool {
        self.lines.push(ReportLine { ok, text: text.into() });
        ok
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportLine> {
        self.lines.iter().filter(|l| !l.ok)
    }

    /// Appends another report's lines under this one.
    pub fn absorb(&mut self, other: Report) {
        for l in other.lines {
            self.lines.push(ReportLine { ok: l.ok, text: format!("{}: {}", other.title, l.text) });
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for l in &self.lines {
            writeln!(f, "  {} {}", if l.ok { "PASS" } else { "FAIL" }, l.text)?;
        }
        write!(f, "{}", if self.passed() { "all checks passed" } else { "some checks FAILED" })
    }
}
