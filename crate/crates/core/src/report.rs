//! Pass/fail records shared by the lemma checkers.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of checking one statement on one input. An inapplicable report
/// (hypothesis not met) carries a single passing "hypothesis" check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub applicable: bool,
    pub checks: Vec<Check>,
}

impl LemmaReport {
    pub fn new(lemma: impl Into<String>) -> LemmaReport {
        LemmaReport { lemma: lemma.into(), applicable: true, checks: Vec::new() }
    }

    pub fn inapplicable(lemma: impl Into<String>, why: impl Into<String>) -> LemmaReport {
        LemmaReport {
            lemma: lemma.into(),
            applicable: false,
            checks: vec![Check { name: "hypothesis".into(), passed: true, detail: why.into() }],
        }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
