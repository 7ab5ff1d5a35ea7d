//! Check records and the versioned report format.

use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA: &str = "eiscoc-report/1";

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckRecord {
    pub id: String,
    pub criterion: u32,
    pub inputs: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, criterion: u32, inputs: impl Into<String>, expected: impl Into<String>, got: impl Into<String>) -> Self {
        let (expected, got) = (expected.into(), got.into());
        CheckRecord { id: id.into(), criterion, inputs: inputs.into(), pass: expected == got, expected, got }
    }
}

/// Runs `f` on samples 0..n and records the first failure, if any.
/// `f` returns `Ok(None)` on success and a description otherwise.
pub fn property<E: std::fmt::Display>(
    id: &str,
    criterion: u32,
    inputs: &str,
    n: usize,
    mut f: impl FnMut(usize) -> Result<Option<String>, E>,
) -> CheckRecord {
    let expected = format!("{n} of {n} hold");
    for i in 0..n {
        match f(i) {
            Ok(None) => {}
            Ok(Some(why)) => return CheckRecord::new(id, criterion, inputs, expected, format!("sample {i}: {why}")),
            Err(e) => return CheckRecord::new(id, criterion, inputs, expected, format!("sample {i}: error: {e}")),
        }
    }
    CheckRecord::new(id, criterion, inputs, expected.clone(), expected)
}

/// An observation that is reported but never asserted.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Note {
    pub id: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub suite: String,
    pub seed: u64,
    pub slow: bool,
    pub elapsed_ms: u128,
    pub checks: Vec<CheckRecord>,
    pub notes: Vec<Note>,
}

impl Report {
    pub fn new(suite: &str, seed: u64, slow: bool) -> Self {
        Report {
            schema: SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            suite: suite.to_string(),
            seed,
            slow,
            elapsed_ms: 0,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self.notes.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn criterion_passed(&self, k: u32) -> Option<bool> {
        let mut it = self.checks.iter().filter(|c| c.criterion == k).peekable();
        it.peek()?;
        Some(it.all(|c| c.pass))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{tag} {} [{}]", c.id, c.inputs);
            if !c.pass {
                let _ = writeln!(s, "     expected: {}", c.expected);
                let _ = writeln!(s, "     got:      {}", c.got);
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note {}: {}", n.id, n.value);
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        let _ = writeln!(
            s,
            "suite {}: {} checks, {} failed, {} ms",
            self.suite,
            self.checks.len(),
            failed,
            self.elapsed_ms
        );
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
