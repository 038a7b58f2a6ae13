//! Outcome of an exhaustive identity check.

use serde::Serialize;

use crate::kernel::{format_scalar, Vector};

/// First violating basis tuple of a failed check, with both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub identity: String,
    /// 0-based basis indices in argument order.
    pub args: Vec<usize>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

impl Witness {
    pub fn new(identity: impl Into<String>, args: Vec<usize>, lhs: &Vector, rhs: &Vector) -> Self {
        Witness {
            identity: identity.into(),
            args,
            lhs: lhs.iter().map(format_scalar).collect(),
            rhs: rhs.iter().map(format_scalar).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(w: Witness) -> Self {
        CheckReport {
            holds: false,
            witness: Some(w),
        }
    }

    /// Compares two sides; a mismatch turns into a failed report.
    pub fn compare(identity: &str, args: Vec<usize>, lhs: &Vector, rhs: &Vector) -> Option<Self> {
        (lhs != rhs).then(|| CheckReport::fail(Witness::new(identity, args, lhs, rhs)))
    }

    /// Conjunction keeping the first witness.
    pub fn and(self, other: CheckReport) -> CheckReport {
        if self.holds {
            other
        } else {
            self
        }
    }
}
