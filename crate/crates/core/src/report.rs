//! Pass/fail bookkeeping shared by the verification suites.

use serde::Serialize;

use crate::exactnum::Matrix;

/// Nonzero entries kept per failing residual.
const ENTRIES_KEPT: usize = 4;
/// Failing residuals kept per report; the count is always exact.
const FAILURES_KEPT: usize = 16;

/// One failing residual: where it happened and some of its nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub context: String,
    pub entries: Vec<String>,
}

/// Outcome of checking one identity over many instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub identity: String,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<Residual>,
}

impl CheckReport {
    pub fn new(identity: impl Into<String>) -> Self {
        CheckReport {
            identity: identity.into(),
            checked: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.failed == 0
    }

    /// Records a residual matrix that must vanish.
    pub fn record(&mut self, context: impl FnOnce() -> String, residual: &Matrix) {
        self.checked += 1;
        if residual.is_zero() {
            return;
        }
        self.failed += 1;
        if self.failures.len() < FAILURES_KEPT {
            let entries = residual
                .nonzero_entries()
                .take(ENTRIES_KEPT)
                .map(|(i, j, v)| format!("({i},{j})={v}"))
                .collect();
            self.failures.push(Residual {
                context: context(),
                entries,
            });
        }
    }

    /// Records a boolean check, with a description used on failure.
    pub fn record_bool(&mut self, context: impl FnOnce() -> String, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if ok {
            return;
        }
        self.failed += 1;
        if self.failures.len() < FAILURES_KEPT {
            self.failures.push(Residual {
                context: context(),
                entries: vec![detail()],
            });
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failed += other.failed;
        let room = FAILURES_KEPT.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }

    /// The first kept residual's entries; empty on success.
    pub fn max_residual_entries(&self) -> Vec<String> {
        self.failures
            .first()
            .map(|f| f.entries.clone())
            .unwrap_or_default()
    }
}

/// Serialized summary of one identity checked for a given `(D, μ)`.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    #[serde(rename = "D")]
    pub dim: usize,
    pub mu: String,
    pub points_checked: usize,
    pub max_residual_entries: Vec<String>,
    pub pass: bool,
    #[serde(skip)]
    pub detail: CheckReport,
}

impl IdentityReport {
    pub fn from_check(c: CheckReport, dim: usize, mu: &str, points: usize) -> Self {
        IdentityReport {
            identity: c.identity.clone(),
            dim,
            mu: mu.to_string(),
            points_checked: points,
            max_residual_entries: c.max_residual_entries(),
            pass: c.pass(),
            detail: c,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Scalar;

    #[test]
    fn records_only_nonzero_residuals() {
        let mut r = CheckReport::new("demo");
        r.record(|| "a".into(), &Matrix::zeros(2, 2));
        assert!(r.pass());
        let mut m = Matrix::zeros(2, 2);
        m.set(1, 0, Scalar::from_int(3));
        r.record(|| "b".into(), &m);
        assert!(!r.pass());
        assert_eq!(r.checked, 2);
        assert_eq!(r.max_residual_entries(), vec!["(1,0)=3".to_string()]);
    }
}
