use std::fmt;

/// One named check with its outcome and the labels that violated it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub offenders: Vec<String>,
}

/// Aggregated outcome of a validator. Failures are entries, never errors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        offenders: Vec<String>,
        detail: impl Into<String>,
    ) {
        self.checks.push(Check {
            name: name.into(),
            passed: offenders.is_empty(),
            detail: detail.into(),
            offenders,
        });
    }

    /// Record a boolean check without per-cell offenders.
    pub fn assert(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        let offenders = if ok { Vec::new() } else { vec![detail.clone()] };
        self.push(name, offenders, detail);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "[{mark}] {}", c.name)?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
            if !c.passed {
                for o in c.offenders.iter().take(8) {
                    writeln!(f, "    {o}")?;
                }
                if c.offenders.len() > 8 {
                    writeln!(f, "    ... {} more", c.offenders.len() - 8)?;
                }
            }
        }
        Ok(())
    }
}
