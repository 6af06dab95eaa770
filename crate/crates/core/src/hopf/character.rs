use alloc::vec::Vec;

use super::{Algebra, HopfError};
use crate::linalg::SparseVec;
use crate::scalar::Scalar;

/// A multiplicative functional with `ξ(1) = 1`, validated at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    values: Vec<Scalar>,
}

impl Character {
    pub fn new(algebra: &Algebra, values: Vec<Scalar>) -> Result<Character, HopfError> {
        let d = algebra.dim();
        if values.len() != d {
            return Err(HopfError::Shape(alloc::format!(
                "character has {} values, expected {d}",
                values.len()
            )));
        }
        let ch = Character { values };
        if let Some(w) = ch.multiplicativity_witness(algebra) {
            return Err(HopfError::NotACharacter { witness: w });
        }
        Ok(ch)
    }

    /// The counit, read off the Hopf structure.
    pub fn counit(hopf: &super::Hopf) -> Character {
        Character {
            values: hopf.counit_values().to_vec(),
        }
    }

    pub(super) fn from_values_unchecked(values: Vec<Scalar>) -> Character {
        Character { values }
    }

    /// First basis pair on which multiplicativity fails; `(0, 0)` if `ξ(1) != 1`.
    pub fn multiplicativity_witness(&self, algebra: &Algebra) -> Option<(usize, usize)> {
        if self.values.len() != algebra.dim() || !self.values[0].is_one() {
            return Some((0, 0));
        }
        let d = algebra.dim();
        (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .find(|&(i, j)| self.eval(algebra.mul_basis(i, j)) != &self.values[i] * &self.values[j])
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Scalar {
        &self.values[i]
    }

    pub fn eval(&self, a: &SparseVec) -> Scalar {
        let mut s = Scalar::zero();
        for (i, x) in a.iter() {
            s += &(x * &self.values[i]);
        }
        s
    }

    pub fn is_trivial_on(&self, counit: &[Scalar]) -> bool {
        self.values == counit
    }
}
