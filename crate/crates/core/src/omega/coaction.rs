//! Left and right coactions of `H` on `Ω(H)`, the maps `π^R`, `π^L` and
//! (σ-)coinvariant subspaces.

use alloc::vec::Vec;

use super::{Calculus, Form, OmegaError};
use crate::hopf::{multi_index, Character};
use crate::linalg::{kernel, Accumulator, Frame, SparseMatrix, SparseVec, Subspace};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// The σ-coinvariants of `Ω_n` together with the basis coming from
/// products of `π` images.
#[derive(Clone, Debug)]
pub struct CoinvariantData {
    pub side: Side,
    pub degree: usize,
    pub sigma: SparseVec,
    pub delta: Option<Character>,
    /// Kernel of `Δ_R - (· ⊗ σ)` (resp. `Δ_L - (σ ⊗ ·)`).
    pub subspace: Subspace,
    /// Columns indexed by `(i_1, ..., i_n) ∈ {1..d-1}^n`:
    /// `π^R(u_{i_1}) ... π^R(u_{i_n}) σ` (resp. `σ π^L(u_{i_1}) ... π^L(u_{i_n})`),
    /// `u_i = e_i - ε(e_i) 1`.
    pub basis_map: SparseMatrix,
    pub frame: Frame,
}

impl CoinvariantData {
    pub fn dim(&self) -> usize {
        self.frame.len()
    }
}

impl Calculus {
    /// Matrix of `Δ_R : Ω_n -> Ω_n ⊗ H` (index `form * d + h`) or
    /// `Δ_L : Ω_n -> H ⊗ Ω_n` (index `h * dim Ω_n + form`).
    pub fn coaction_matrix(&self, side: Side, n: usize) -> SparseMatrix {
        let d = self.dim();
        let dim = self.grade_dim(n);
        let cols = (0..dim)
            .map(|idx| {
                let (a0, slots) = self.decode(idx, n);
                let mut acc = Accumulator::new();
                let mut legs: Vec<usize> = Vec::with_capacity(n + 1);
                legs.push(a0);
                legs.extend_from_slice(&slots);
                self.coact_rec(side, &legs, 0, &mut Vec::new(), &mut Vec::new(), &Scalar::one(), &mut acc, dim, d);
                acc.into_vec()
            })
            .collect();
        SparseMatrix::from_columns(dim * d, cols)
    }

    #[allow(clippy::too_many_arguments)]
    fn coact_rec(
        &self,
        side: Side,
        legs: &[usize],
        pos: usize,
        form: &mut Vec<usize>,
        coef: &mut Vec<usize>,
        c: &Scalar,
        acc: &mut Accumulator,
        dim: usize,
        d: usize,
    ) {
        if pos == legs.len() {
            let h = self.hopf.algebra().product_basis(coef);
            let f = self.encode(form[0], &form[1..]);
            for (k, x) in h.iter() {
                let i = match side {
                    Side::Right => f * d + k,
                    Side::Left => k * dim + f,
                };
                acc.add(i, &(c * x));
            }
            return;
        }
        for (j, k, x) in self.hopf.comult_terms(legs[pos]) {
            // the form leg is the second one for Δ_L, the first for Δ_R
            let (fl, hl) = match side {
                Side::Right => (j, k),
                Side::Left => (k, j),
            };
            if pos > 0 && fl == 0 {
                continue;
            }
            form.push(fl);
            coef.push(hl);
            self.coact_rec(side, legs, pos + 1, form, coef, &(c * x), acc, dim, d);
            form.pop();
            coef.pop();
        }
    }

    /// `Δ_R(f)` (resp. `Δ_L(f)`) as a tensor over the flat index.
    pub fn coaction(&self, side: Side, f: &Form) -> SparseVec {
        self.coaction_matrix(side, f.degree).apply(&f.coeffs)
    }

    /// `π^R(h) = d(h_(1)) S(h_(2))`.
    pub fn pi_r(&self, h: &SparseVec) -> Form {
        let mut acc = Accumulator::new();
        for (i, c) in h.iter() {
            for (j, k, x) in self.hopf.comult_terms(i) {
                let dh = self.d_element(&SparseVec::unit(j));
                let s = self.hopf.antipode_matrix().column(k);
                acc.add_vec(&self.right_mul(&dh, 1, s), &(c * x));
            }
        }
        Form::new(1, acc.into_vec())
    }

    /// `π^L(h) = S(h_(1)) d(h_(2))`.
    pub fn pi_l(&self, h: &SparseVec) -> Form {
        let mut acc = Accumulator::new();
        for (i, c) in h.iter() {
            for (j, k, x) in self.hopf.comult_terms(i) {
                let s = self.hopf.antipode_matrix().column(j);
                acc.add_vec(&self.append_d(s, &SparseVec::unit(k)), &(c * x));
            }
        }
        Form::new(1, acc.into_vec())
    }

    /// `u_i = e_i - ε(e_i) 1`, the canonical basis of `ker ε` for `i ≥ 1`.
    pub fn augmentation_basis(&self, i: usize) -> SparseVec {
        let eps = self.hopf.counit_values()[i].clone();
        SparseVec::unit(i).combine(&Scalar::one(), &SparseVec::unit(0), &(-eps))
    }

    /// `σ`-coinvariants of `Ω_n`. `delta` is recorded for the twisted
    /// setting; the coinvariant subspace itself does not depend on it.
    pub fn coinvariant_subspace(
        &self,
        side: Side,
        n: usize,
        sigma: &SparseVec,
        delta: Option<&Character>,
    ) -> Result<CoinvariantData, OmegaError> {
        if !self.hopf.is_grouplike(sigma) {
            return Err(OmegaError::NotGrouplike);
        }
        let d = self.dim();
        let dim = self.grade_dim(n);
        let coact = self.coaction_matrix(side, n);
        let target = (0..dim).map(|f| {
            let mut acc = Accumulator::new();
            for (k, s) in sigma.iter() {
                let i = match side {
                    Side::Right => f * d + k,
                    Side::Left => k * dim + f,
                };
                acc.add(i, s);
            }
            acc.into_vec()
        });
        let twist = SparseMatrix::from_columns(dim * d, target.collect());
        let subspace = kernel(&coact.sub(&twist));
        let expected = self.tail(n);
        if subspace.dim() != expected {
            return Err(OmegaError::DimensionMismatch {
                expected,
                found: subspace.dim(),
                what: "coinvariant kernel",
            });
        }

        let pis: Vec<SparseVec> = (1..d)
            .map(|i| {
                let u = self.augmentation_basis(i);
                match side {
                    Side::Right => self.pi_r(&u).coeffs,
                    Side::Left => self.pi_l(&u).coeffs,
                }
            })
            .collect();
        let cols = (0..expected)
            .map(|col| {
                let idx: Vec<usize> = multi_index(col, d - 1, n);
                let mut f = match side {
                    Side::Right => SparseVec::unit(0),
                    Side::Left => sigma.clone(),
                };
                for (k, &i) in idx.iter().enumerate() {
                    f = self.form_mul(&f, k, &pis[i], 1);
                }
                match side {
                    Side::Right => self.right_mul(&f, n, sigma),
                    Side::Left => f,
                }
            })
            .collect();
        let basis_map = SparseMatrix::from_columns(dim, cols);
        let frame = Frame::from_matrix(&basis_map).ok_or_else(|| OmegaError::DimensionMismatch {
            expected,
            found: crate::linalg::rank(&basis_map),
            what: "basis map rank",
        })?;
        if frame.span() != &subspace {
            return Err(OmegaError::DimensionMismatch {
                expected,
                found: frame.len(),
                what: "basis map image differs from coinvariant kernel",
            });
        }
        Ok(CoinvariantData {
            side,
            degree: n,
            sigma: sigma.clone(),
            delta: delta.cloned(),
            subspace,
            basis_map,
            frame,
        })
    }

    /// `Ω_n ⊗ H` flat coefficients of `f ⊗ h`, for building expected values.
    pub fn tensor_with_element(&self, f: &SparseVec, h: &SparseVec) -> SparseVec {
        let d = self.dim();
        let mut acc = Accumulator::new();
        for (i, x) in f.iter() {
            for (k, y) in h.iter() {
                acc.add(i * d + k, &(x * y));
            }
        }
        acc.into_vec()
    }
}
