//! Ortho-symplectic Lie superalgebras `spo(2n|l)`: exact Chevalley bases,
//! the Kostant integral form, Mullineux combinatorics, odd reflections and
//! the classification of simple highest weights.

use serde::{Deserialize, Serialize};

pub mod borelwalk;
pub mod chevalley;
pub mod classify;
pub mod cli;
pub mod kostant;
pub mod partitions;
pub mod quadint;
pub mod rootdata;

/// `p` is an odd prime.
pub fn is_odd_prime(p: u64) -> bool {
    p >= 3
        && p % 2 == 1
        && (3..)
            .step_by(2)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Outcome of an exhaustive or sampled verification.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checked: u64,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }

    pub fn merge_all(parts: impl IntoIterator<Item = CheckReport>) -> CheckReport {
        let mut out = CheckReport::default();
        for part in parts {
            out.merge(part);
        }
        out
    }
}
