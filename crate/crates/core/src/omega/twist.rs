use alloc::string::String;
use core::fmt::Write;

use crate::hopf::{Character, Hopf};
use crate::linalg::SparseMatrix;

/// A character `ξ` together with the matrices of `ξ̃(a) = a_(1) ξ(a_(2))`
/// and its inverse `a_(1) ξ(S a_(2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistContext {
    xi: Character,
    x: SparseMatrix,
    xinv: SparseMatrix,
    xbar: SparseMatrix,
    xbar_inv: SparseMatrix,
    trivial: bool,
}

fn drop_unit(m: &SparseMatrix) -> SparseMatrix {
    let d = m.nrows();
    SparseMatrix::from_triplets(
        d - 1,
        d - 1,
        m.triplets()
            .into_iter()
            .filter(|(r, c, _)| *r >= 1 && *c >= 1)
            .map(|(r, c, x)| (r - 1, c - 1, x)),
    )
}

impl TwistContext {
    pub fn new(hopf: &Hopf, xi: Character) -> TwistContext {
        let x = hopf.right_convolution(&xi);
        let xinv = hopf.right_convolution(&hopf.character_inverse(&xi));
        let trivial = xi.values() == hopf.counit_values();
        TwistContext {
            xbar: drop_unit(&x),
            xbar_inv: drop_unit(&xinv),
            x,
            xinv,
            xi,
            trivial,
        }
    }

    /// The untwisted context `ξ = ε`.
    pub fn counit(hopf: &Hopf) -> TwistContext {
        TwistContext::new(hopf, Character::counit(hopf))
    }

    pub fn character(&self) -> &Character {
        &self.xi
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    /// `ξ̃` on `H`.
    pub fn xi_tilde(&self) -> &SparseMatrix {
        &self.x
    }

    pub fn xi_tilde_inv(&self) -> &SparseMatrix {
        &self.xinv
    }

    pub(crate) fn key(&self) -> String {
        if self.trivial {
            return String::new();
        }
        let mut s = String::new();
        for (i, v) in self.xi.values().iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{v}");
        }
        s
    }

    fn tensor_power(base: &SparseMatrix, head: &SparseMatrix, n: usize) -> SparseMatrix {
        let mut m = head.clone();
        for _ in 0..n {
            m = m.kron(base);
        }
        m
    }

    /// `ξ̃` extended to `Ω_n` as an algebra map commuting with `d`:
    /// `a_0 da_1 ... da_n -> ξ̃(a_0) dξ̃(a_1) ... dξ̃(a_n)`.
    pub fn xi_forms(&self, n: usize) -> SparseMatrix {
        Self::tensor_power(&self.xbar, &self.x, n)
    }

    pub fn xi_forms_inv(&self, n: usize) -> SparseMatrix {
        Self::tensor_power(&self.xbar_inv, &self.xinv, n)
    }

    /// Change of coordinates from the `ξ`-presentation `a_0 d_ξ a_1 ... d_ξ a_n`
    /// (with `d_ξ a = dξ̃(a)` on degree zero) to the standard basis of `Ω_n`.
    pub fn presentation(&self, n: usize) -> SparseMatrix {
        let d = self.x.nrows();
        Self::tensor_power(&self.xbar, &SparseMatrix::identity(d), n)
    }

    pub fn presentation_inv(&self, n: usize) -> SparseMatrix {
        let d = self.x.nrows();
        Self::tensor_power(&self.xbar_inv, &SparseMatrix::identity(d), n)
    }
}
