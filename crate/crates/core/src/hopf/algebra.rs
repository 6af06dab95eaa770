use alloc::string::String;
use alloc::vec::Vec;

use super::HopfError;
use crate::linalg::{Accumulator, Frame, SparseMatrix, SparseVec};
use crate::scalar::Scalar;

/// A finite-dimensional unital algebra given by structure constants
/// `e_i e_j = sum_k m[i][j][k] e_k`. The unit is basis element 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    labels: Vec<String>,
    // products of basis elements, indexed by i * dim + j
    mult: Vec<SparseVec>,
}

impl Algebra {
    pub fn new<I>(labels: Vec<String>, mult: I) -> Result<Algebra, HopfError>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let d = labels.len();
        if d == 0 {
            return Err(HopfError::Shape("algebra must have dimension at least 1".into()));
        }
        let mut acc: Vec<Accumulator> = (0..d * d).map(|_| Accumulator::new()).collect();
        for (i, j, k, c) in mult {
            if i >= d || j >= d || k >= d {
                return Err(HopfError::IndexOutOfRange {
                    what: "mult",
                    index: [i, j, k].into(),
                    dim: d,
                });
            }
            acc[i * d + j].add(k, &c);
        }
        Ok(Algebra {
            labels,
            mult: acc.into_iter().map(Accumulator::into_vec).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> SparseVec {
        SparseVec::unit(0)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim() + j]
    }

    /// Structure constants as `(i, j, k, m_ijk)`, sorted.
    pub fn mult_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let d = self.dim();
        let mut out = Vec::new();
        for (ij, v) in self.mult.iter().enumerate() {
            for (k, c) in v.iter() {
                out.push((ij / d, ij % d, k, c.clone()));
            }
        }
        out
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                acc.add_vec(self.mul_basis(i, j), &(x * y));
            }
        }
        acc.into_vec()
    }

    /// Product of a list of elements, left to right; the unit if empty.
    pub fn product<'a, I: IntoIterator<Item = &'a SparseVec>>(&self, factors: I) -> SparseVec {
        factors
            .into_iter()
            .fold(self.unit(), |acc, f| self.mul(&acc, f))
    }

    /// Product of basis elements `e_{i_1} ... e_{i_k}`.
    pub fn product_basis(&self, idx: &[usize]) -> SparseVec {
        let mut acc = self.unit();
        for &i in idx {
            acc = self.mul(&acc, &SparseVec::unit(i));
        }
        acc
    }

    /// Matrix of `x -> a x`.
    pub fn left_matrix(&self, a: &SparseVec) -> SparseMatrix {
        let d = self.dim();
        SparseMatrix::from_columns(d, (0..d).map(|j| self.mul(a, &SparseVec::unit(j))).collect())
    }

    /// Matrix of `x -> x a`.
    pub fn right_matrix(&self, a: &SparseVec) -> SparseMatrix {
        let d = self.dim();
        SparseMatrix::from_columns(d, (0..d).map(|j| self.mul(&SparseVec::unit(j), a)).collect())
    }

    /// Checks that `f` is an invertible unital multiplicative map; returns the
    /// offending basis pair on failure (`(0, 0)` for the unit or invertibility).
    pub fn check_automorphism(&self, f: &SparseMatrix) -> Result<(), HopfError> {
        let d = self.dim();
        if f.shape() != (d, d) {
            return Err(HopfError::Shape("automorphism matrix has wrong shape".into()));
        }
        if f.column(0) != &self.unit() || Frame::from_matrix(f).is_none() {
            return Err(HopfError::NotAutomorphism { witness: (0, 0) });
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = f.apply(self.mul_basis(i, j));
                let rhs = self.mul(f.column(i), f.column(j));
                if lhs != rhs {
                    return Err(HopfError::NotAutomorphism { witness: (i, j) });
                }
            }
        }
        Ok(())
    }

    /// Structure constants in a new basis whose vectors are the columns of
    /// `p` (in old coordinates). `p` must be invertible.
    pub fn change_basis(&self, p: &SparseMatrix, labels: Vec<String>) -> Result<Algebra, HopfError> {
        let frame = change_frame(self.dim(), p, &labels)?;
        let d = self.dim();
        let mut entries = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let prod = self.mul(p.column(i), p.column(j));
                let c = frame.coords(&prod).expect("frame spans the algebra");
                entries.extend(c.iter().map(|(k, x)| (i, j, k, x.clone())));
            }
        }
        Algebra::new(labels, entries)
    }
}

pub(super) fn change_frame(d: usize, p: &SparseMatrix, labels: &[String]) -> Result<Frame, HopfError> {
    if p.shape() != (d, d) || labels.len() != d {
        return Err(HopfError::Shape("change of basis has wrong shape".into()));
    }
    Frame::from_matrix(p).ok_or_else(|| HopfError::Shape("change of basis is singular".into()))
}
