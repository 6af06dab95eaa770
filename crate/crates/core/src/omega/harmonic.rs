//! The spectral projection onto the generalized 1-eigenspace of `κ`.

use alloc::vec;

use super::{Calculus, OmegaError, OpKind};
use crate::linalg::{apply_polynomial, Poly, SparseMatrix, SparseVec};
use crate::scalar::Scalar;

/// `(t^n - 1)(t^(n+1) - 1)`.
fn annihilator(n: usize) -> Poly {
    let mut a = vec![Scalar::zero(); n + 1];
    a[0] = Scalar::from_int(-1);
    a[n] += &Scalar::one();
    let mut b = vec![Scalar::zero(); n + 2];
    b[0] = Scalar::from_int(-1);
    b[n + 1] = Scalar::one();
    Poly::new(a).mul(&Poly::new(b))
}

/// `h` with `h ≡ 1 mod (t-1)^2` and `h ≡ 0 mod q`, where
/// `q = (1 + ... + t^(n-1))(1 + ... + t^n)`; reduced mod `(t-1)^2 q`.
pub fn harmonic_polynomial(n: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let a = Poly::from_ints(&[1, -2, 1]);
    let q = Poly::geometric(n).mul(&Poly::geometric(n + 1));
    let (g, _s, t) = Poly::ext_gcd(&a, &q);
    debug_assert_eq!(g, Poly::one());
    t.mul(&q).rem(&a.mul(&q))
}

impl Calculus {
    /// `P = h(κ)` on `Ω_n`, after checking that `(κ^n - 1)(κ^(n+1) - 1)`
    /// vanishes.
    pub fn harmonic_projection(&self, n: usize) -> Result<SparseMatrix, OmegaError> {
        let dim = self.grade_dim(n);
        if n == 0 {
            return Ok(SparseMatrix::identity(dim));
        }
        let kappa = self.std_op(OpKind::Karoubi, n);
        let ann = annihilator(n);
        for j in 0..dim {
            if !apply_polynomial(&kappa, ann.coeffs(), &SparseVec::unit(j)).is_zero() {
                return Err(OmegaError::AnnihilatorFailure { degree: n, column: j });
            }
        }
        let h = harmonic_polynomial(n);
        let cols = (0..dim)
            .map(|j| apply_polynomial(&kappa, h.coeffs(), &SparseVec::unit(j)))
            .collect();
        Ok(SparseMatrix::from_columns(dim, cols))
    }
}
