//! The antipode extended to forms as a graded anti-automorphism.

use super::{Calculus, Form};
use crate::linalg::{matrix_from_fn, SparseMatrix, SparseVec};
use crate::scalar::Scalar;

impl Calculus {
    /// `S(a_0 da_1 ... da_n) = (-1)^(n(n-1)/2) dS(a_n) ... dS(a_1) S(a_0)`.
    pub fn antipode_matrix(&self, n: usize) -> SparseMatrix {
        let dim = self.grade_dim(n);
        let s = self.hopf.antipode_matrix();
        let sign = Scalar::sign(n * n.saturating_sub(1) / 2);
        let cols = (0..dim)
            .map(|idx| {
                let (a0, slots) = self.decode(idx, n);
                let mut f = SparseVec::unit(0);
                for &a in slots.iter().rev() {
                    f = self.append_d(&f, s.column(a));
                }
                self.right_mul(&f, n, s.column(a0)).scale(&sign)
            })
            .collect();
        SparseMatrix::from_columns(dim, cols)
    }

    pub fn antipode_on_forms(&self, f: &Form) -> Form {
        Form::new(f.degree, self.antipode_matrix(f.degree).apply(&f.coeffs))
    }

    /// `ξ̃` applied slotwise to a form.
    pub fn xi_extend(&self, ctx: &super::TwistContext, f: &Form) -> Form {
        Form::new(f.degree, ctx.xi_forms(f.degree).apply(&f.coeffs))
    }

    /// Matrix of left multiplication by `a` on `Ω_n`.
    pub fn left_mul_matrix(&self, n: usize, a: &SparseVec) -> SparseMatrix {
        let dim = self.grade_dim(n);
        matrix_from_fn(dim, dim, |v| self.left_mul(a, v, n))
    }
}
