//! Structured pass/fail records for identity checks.

use serde::Serialize;

use crate::C64;

/// Sup-norm distance between two sides of an identity.
///
/// `rel` divides by `max(‖lhs‖∞, ‖rhs‖∞, 1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Deviation {
    pub abs: f64,
    pub rel: f64,
}

impl Deviation {
    pub fn between(lhs: &[C64], rhs: &[C64]) -> Self {
        assert_eq!(lhs.len(), rhs.len(), "compared sides differ in length");
        let mut abs: f64 = 0.0;
        let mut scale: f64 = 1.0;
        let mut nan = false;
        for (a, b) in lhs.iter().zip(rhs) {
            let d = (a - b).norm();
            nan |= d.is_nan();
            abs = abs.max(d);
            scale = scale.max(a.norm()).max(b.norm());
        }
        if nan || abs.is_infinite() {
            return Self {
                abs: f64::INFINITY,
                rel: f64::INFINITY,
            };
        }
        Self {
            abs,
            rel: abs / scale,
        }
    }

    pub fn scalar(lhs: C64, rhs: C64) -> Self {
        Self::between(&[lhs], &[rhs])
    }

    /// Pointwise maximum, for folding several comparisons into one record.
    pub fn max(self, other: Self) -> Self {
        Self {
            abs: self.abs.max(other.abs),
            rel: self.rel.max(other.rel),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityRecord {
    pub name: String,
    /// The identity in formula form.
    pub anchor: String,
    pub max_abs_dev: f64,
    pub max_rel_dev: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Evaluated and reported, but excluded from the overall verdict.
    pub informational: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub records: Vec<IdentityRecord>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            records: Vec::new(),
            pass: true,
        }
    }

    /// Records a check that passes when `dev.rel < tol_rel`.
    pub fn check(&mut self, name: &str, anchor: &str, dev: Deviation, tol_rel: f64) -> bool {
        let pass = dev.rel < tol_rel;
        self.push(IdentityRecord {
            name: name.into(),
            anchor: anchor.into(),
            max_abs_dev: dev.abs,
            max_rel_dev: dev.rel,
            tolerance: tol_rel,
            pass,
            informational: false,
        });
        pass
    }

    /// Records a check that passes when `dev.abs < tol_abs`.
    pub fn check_abs(&mut self, name: &str, anchor: &str, dev: Deviation, tol_abs: f64) -> bool {
        let pass = dev.abs < tol_abs;
        self.push(IdentityRecord {
            name: name.into(),
            anchor: anchor.into(),
            max_abs_dev: dev.abs,
            max_rel_dev: dev.rel,
            tolerance: tol_abs,
            pass,
            informational: false,
        });
        pass
    }

    pub fn inform(&mut self, name: &str, anchor: &str, dev: Deviation, tol_rel: f64) {
        self.push(IdentityRecord {
            name: name.into(),
            anchor: anchor.into(),
            max_abs_dev: dev.abs,
            max_rel_dev: dev.rel,
            tolerance: tol_rel,
            pass: dev.rel < tol_rel,
            informational: true,
        });
    }

    pub fn push(&mut self, record: IdentityRecord) {
        if !record.informational && !record.pass {
            self.pass = false;
        }
        self.records.push(record);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for r in other.records {
            self.push(r);
        }
    }

    pub fn record(&self, name: &str) -> Option<&IdentityRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityRecord> {
        self.records.iter().filter(|r| !r.informational && !r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
