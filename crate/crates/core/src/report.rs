//! Pass/fail records for the identity checks run across the crate.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{SparseMatrix, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable to the given input (e.g. needs a pair in involution).
    Skipped,
    /// A measured fact that is reported but not required to hold.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
            Status::Info => "info",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub degree: Option<usize>,
    pub status: Status,
    /// `(row, column)` of the first differing entry.
    pub witness: Option<(usize, usize)>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, name: &str, degree: Option<usize>) -> Option<&IdentityCheck> {
        self.checks
            .iter()
            .find(|c| c.name == name && c.degree == degree)
    }

    pub fn push(&mut self, check: IdentityCheck) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: IdentityReport) {
        self.checks.extend(other.checks);
    }

    /// Records whether `lhs == rhs` as matrices.
    pub fn equal(&mut self, name: &str, degree: Option<usize>, lhs: &SparseMatrix, rhs: &SparseMatrix) -> bool {
        let diff = lhs.first_difference(rhs);
        self.record(name, degree, diff, String::new())
    }

    /// Records whether `m` is the zero matrix.
    pub fn zero(&mut self, name: &str, degree: Option<usize>, m: &SparseMatrix) -> bool {
        let diff = m
            .columns()
            .iter()
            .enumerate()
            .find_map(|(j, c)| c.leading().map(|(i, _)| (i, j)));
        self.record(name, degree, diff, String::new())
    }

    /// Records whether two linear maps agree on the first `cols` basis vectors.
    pub fn equal_maps(
        &mut self,
        name: &str,
        degree: Option<usize>,
        cols: usize,
        lhs: impl Fn(&SparseVec) -> SparseVec,
        rhs: impl Fn(&SparseVec) -> SparseVec,
    ) -> bool {
        let diff = (0..cols).find_map(|j| {
            let e = SparseVec::unit(j);
            let d = lhs(&e).sub(&rhs(&e));
            d.leading().map(|(i, _)| (i, j))
        });
        self.record(name, degree, diff, String::new())
    }

    pub fn record(&mut self, name: &str, degree: Option<usize>, diff: Option<(usize, usize)>, detail: String) -> bool {
        let ok = diff.is_none();
        self.checks.push(IdentityCheck {
            name: name.into(),
            degree,
            status: if ok { Status::Pass } else { Status::Fail },
            witness: diff,
            detail,
        });
        ok
    }

    pub fn note(&mut self, name: &str, degree: Option<usize>, status: Status, detail: String) {
        self.checks.push(IdentityCheck {
            name: name.into(),
            degree,
            status,
            witness: None,
            detail,
        });
    }
}
