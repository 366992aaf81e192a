use std::fmt;

use serde::Serialize;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Itemized verification result. Every check is recorded, passing or not,
/// so a rejection names everything that went wrong at once.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: true,
            detail: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            detail: Some(detail.into()),
        });
    }

    /// Records `name` as passed when `ok`, otherwise as failed with the lazily built detail.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, detail());
        }
    }

    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn violation_names(&self) -> Vec<&str> {
        self.violations().map(|c| c.name.as_str()).collect()
    }

    pub fn has_violation(&self, name: &str) -> bool {
        self.violations().any(|c| c.name == name)
    }

    pub fn merge(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }

    /// `Ok(())` when every check passed, otherwise the report as an error.
    pub fn into_result(self) -> crate::error::Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(crate::error::Error::Rejected(self))
        }
    }
}

impl Report {
    /// Like [`into_result`](Self::into_result) but classifies failures as precondition violations.
    pub fn into_precondition(self) -> crate::error::Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(crate::error::Error::PreconditionFailed(self))
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bad: Vec<String> = self
            .violations()
            .map(|c| match &c.detail {
                Some(d) => format!("{}: {d}", c.name),
                None => c.name.clone(),
            })
            .collect();
        if bad.is_empty() {
            write!(f, "all {} checks passed", self.checks.len())
        } else {
            write!(f, "{}", bad.join("; "))
        }
    }
}
