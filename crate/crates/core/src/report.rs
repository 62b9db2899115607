use std::fmt;

/// One failed identity found by a validator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Short name of the law that failed, e.g. `"associativity"`.
    pub law: String,
    pub detail: String,
}

/// Outcome of a validator: empty when every checked identity holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, law: &str, detail: impl Into<String>) {
        self.violations.push(Violation { law: law.to_string(), detail: detail.into() });
    }

    /// Records a violation when `ok` is false.
    pub fn check(&mut self, ok: bool, law: &str, detail: impl FnOnce() -> String) {
        if !ok {
            self.push(law, detail());
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    /// Prefixes every detail, for nesting reports of sub-structures.
    pub fn prefixed(mut self, prefix: &str) -> Report {
        for v in &mut self.violations {
            v.detail = format!("{prefix}: {}", v.detail);
        }
        self
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn mentions(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", v.law, v.detail)?;
        }
        Ok(())
    }
}
