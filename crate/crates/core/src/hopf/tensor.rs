use alloc::vec::Vec;

use crate::linalg::SparseVec;
use crate::scalar::Scalar;

/// Flat index of a multi-index in base `d`, first slot most significant.
pub fn flat_index(slots: &[usize], d: usize) -> usize {
    slots.iter().fold(0, |acc, &s| acc * d + s)
}

/// Inverse of [`flat_index`] for `n` slots.
pub fn multi_index(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = alloc::vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

/// An element of `H^{⊗n}` over a basis of size `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector {
    dim: usize,
    arity: usize,
    vec: SparseVec,
}

impl TensorVector {
    pub fn new(dim: usize, arity: usize, vec: SparseVec) -> TensorVector {
        debug_assert!(vec
            .max_index()
            .is_none_or(|m| m < dim.pow(arity as u32)));
        TensorVector { dim, arity, vec }
    }

    pub fn zero(dim: usize, arity: usize) -> TensorVector {
        TensorVector::new(dim, arity, SparseVec::new())
    }

    pub fn basis(dim: usize, slots: &[usize]) -> TensorVector {
        TensorVector::new(dim, slots.len(), SparseVec::unit(flat_index(slots, dim)))
    }

    /// Pure tensor `v_1 ⊗ ... ⊗ v_n`.
    pub fn pure(dim: usize, factors: &[SparseVec]) -> TensorVector {
        let mut acc = TensorVector::new(dim, 0, SparseVec::unit(0));
        for f in factors {
            acc = acc.tensor(&TensorVector::new(dim, 1, f.clone()));
        }
        acc
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn vec(&self) -> &SparseVec {
        &self.vec
    }

    pub fn into_vec(self) -> SparseVec {
        self.vec
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero()
    }

    pub fn get(&self, slots: &[usize]) -> Scalar {
        self.vec.get(flat_index(slots, self.dim))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.vec
            .iter()
            .map(|(i, c)| (multi_index(i, self.dim, self.arity), c))
    }

    pub fn tensor(&self, other: &TensorVector) -> TensorVector {
        debug_assert_eq!(self.dim, other.dim);
        let shift = self.dim.pow(other.arity as u32);
        let pairs = self.vec.iter().flat_map(|(i, a)| {
            other.vec.iter().map(move |(j, b)| (i * shift + j, a * b))
        });
        TensorVector::new(self.dim, self.arity + other.arity, SparseVec::from_pairs(pairs))
    }
}
