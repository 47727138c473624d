//! Line-oriented reports shared by every command.

use std::fmt::Write;

use starperm::checkers::{combine, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub summary: String,
    /// Machine-mode witness; runs to the end of the line.
    pub witness: Option<String>,
    /// Extra human-mode lines, printed indented under the check.
    pub details: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict, summary: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            verdict,
            summary: summary.into(),
            witness: None,
            details: Vec::new(),
        }
    }

    pub fn from_bool(name: impl Into<String>, holds: bool, summary: impl Into<String>) -> Self {
        Self::new(name, if holds { Verdict::Pass } else { Verdict::Fail }, summary)
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn detail(mut self, line: impl Into<String>) -> Self {
        self.details.push(line.into());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub header: Vec<String>,
    /// Listing lines: printed in both modes, before the checks.
    pub items: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn verdict(&self) -> Verdict {
        combine(self.checks.iter().map(|c| c.verdict))
    }

    /// 0 pass, 1 fail, 3 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.verdict() {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 3,
        }
    }

    pub fn render(&self, machine: bool) -> String {
        if machine {
            self.render_machine()
        } else {
            self.render_human()
        }
    }

    fn render_machine(&self) -> String {
        let mut out = String::new();
        for (tag, item) in &self.items {
            writeln!(out, "{} {item}", tag.to_uppercase()).unwrap();
        }
        for c in &self.checks {
            write!(out, "CHECK {} {}", c.name, c.verdict).unwrap();
            if let Some(w) = &c.witness {
                write!(out, " witness={w}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    fn render_human(&self) -> String {
        let mut out = String::new();
        for line in &self.header {
            writeln!(out, "{line}").unwrap();
        }
        for (tag, item) in &self.items {
            writeln!(out, "{tag} {item}").unwrap();
        }
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            writeln!(out, "{:width$}  {:<12} {}", c.name, c.verdict.to_string(), c.summary).unwrap();
            if let Some(w) = &c.witness {
                writeln!(out, "    witness {w}").unwrap();
            }
            for d in &c.details {
                writeln!(out, "    {d}").unwrap();
            }
        }
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        if !self.checks.is_empty() {
            writeln!(out, "result: {}", self.verdict()).unwrap();
        }
        out
    }
}
