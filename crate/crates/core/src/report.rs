use std::fmt;

use crate::Poly;

/// One nonzero residual of an identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    /// Name of the identity that failed, e.g. `jacobi`.
    pub identity: String,
    /// Indices (or names) locating the failing instance.
    pub location: Vec<String>,
    pub value: Poly,
}

/// Outcome of an identity check: valid iff there are no residuals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub residuals: Vec<Residual>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn is_valid(&self) -> bool {
        self.residuals.is_empty()
    }

    /// Records `value` under `identity` unless it is zero.
    pub fn check(&mut self, identity: &str, location: Vec<String>, value: Poly) {
        if !value.is_zero() {
            self.residuals.push(Residual {
                identity: identity.to_string(),
                location,
                value,
            });
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.residuals.extend(other.residuals);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        writeln!(f, "invalid")?;
        for r in &self.residuals {
            writeln!(
                f,
                "  {} [{}]: {}",
                r.identity,
                r.location.join(","),
                r.value
            )?;
        }
        Ok(())
    }
}
