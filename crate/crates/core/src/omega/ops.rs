//! The operators `d, b, b', κ, κ', B, B'` on `Ω(H)` and their `ξ`-twisted
//! versions, built column by column in the standard basis.

use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{Calculus, Form, TwistContext};
use crate::linalg::{apply_polynomial, matrix_from_fn, SparseMatrix, SparseVec};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpKind {
    D,
    Hochschild,
    HochschildPrime,
    Karoubi,
    KaroubiPrime,
    Connes,
    ConnesPrime,
    /// `ξ̃` extended to forms.
    Xi,
}

impl OpKind {
    pub const ALL: [OpKind; 8] = [
        OpKind::D,
        OpKind::Hochschild,
        OpKind::HochschildPrime,
        OpKind::Karoubi,
        OpKind::KaroubiPrime,
        OpKind::Connes,
        OpKind::ConnesPrime,
        OpKind::Xi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OpKind::D => "d",
            OpKind::Hochschild => "b",
            OpKind::HochschildPrime => "b'",
            OpKind::Karoubi => "kappa",
            OpKind::KaroubiPrime => "kappa'",
            OpKind::Connes => "B",
            OpKind::ConnesPrime => "B'",
            OpKind::Xi => "xi",
        }
    }

    /// Target degree for a source in degree `n`; `None` when the target is
    /// `Ω_{-1} = 0`.
    pub fn target_degree(self, n: usize) -> Option<usize> {
        match self {
            OpKind::D | OpKind::Connes | OpKind::ConnesPrime => Some(n + 1),
            OpKind::Hochschild | OpKind::HochschildPrime => n.checked_sub(1),
            OpKind::Karoubi | OpKind::KaroubiPrime | OpKind::Xi => Some(n),
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OpKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OpKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown operator '{s}' (expected one of d, b, b', kappa, kappa', B, B', xi)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct OpKey {
    kind: OpKind,
    degree: usize,
    twist: String,
}

impl OpKey {
    pub(crate) fn store_key(&self) -> String {
        format!("{}/{}/{}", self.kind.name(), self.degree, self.twist)
    }
}

/// An operator on a fixed source degree, as a matrix in standard bases.
#[derive(Clone, Debug)]
pub struct FormOperator {
    pub kind: OpKind,
    pub degree: usize,
    pub twisted: bool,
    pub matrix: Rc<SparseMatrix>,
}

impl FormOperator {
    pub fn target_degree(&self) -> Option<usize> {
        self.kind.target_degree(self.degree)
    }

    pub fn apply(&self, form: &Form) -> Option<Form> {
        assert_eq!(form.degree, self.degree, "operator applied in the wrong degree");
        self.target_degree()
            .map(|t| Form::new(t, self.matrix.apply(&form.coeffs)))
    }
}

impl Calculus {
    pub fn counit_twist(&self) -> TwistContext {
        TwistContext::counit(&self.hopf)
    }

    pub fn operator(&self, kind: OpKind, n: usize, twist: Option<&TwistContext>) -> FormOperator {
        let twisted = twist.is_some_and(|t| !t.is_trivial());
        FormOperator {
            kind,
            degree: n,
            twisted,
            matrix: self.op(kind, n, twist),
        }
    }

    /// Matrix of an operator on `Ω_n`, twisted by `twist` when given.
    pub fn op(&self, kind: OpKind, n: usize, twist: Option<&TwistContext>) -> Rc<SparseMatrix> {
        let owned;
        let ctx = match twist {
            Some(t) if !t.is_trivial() => t,
            _ => {
                owned = self.counit_twist();
                &owned
            }
        };
        let key = OpKey {
            kind,
            degree: n,
            twist: ctx.key(),
        };
        self.cached(key, || self.build(kind, n, ctx))
    }

    /// Untwisted operator.
    pub fn std_op(&self, kind: OpKind, n: usize) -> Rc<SparseMatrix> {
        self.op(kind, n, None)
    }

    fn target_dim(&self, kind: OpKind, n: usize) -> usize {
        kind.target_degree(n).map_or(0, |t| self.grade_dim(t))
    }

    fn build(&self, kind: OpKind, n: usize, ctx: &TwistContext) -> SparseMatrix {
        let dim = self.grade_dim(n);
        let rows = self.target_dim(kind, n);
        let trivial = ctx.is_trivial();
        match kind {
            OpKind::D => {
                let plain = matrix_from_fn(rows, dim, |v| self.d_vec(v, n));
                if trivial {
                    plain
                } else {
                    ctx.xi_forms(n + 1).mul(&plain)
                }
            }
            OpKind::Xi => ctx.xi_forms(n),
            OpKind::Hochschild | OpKind::HochschildPrime | OpKind::Karoubi | OpKind::KaroubiPrime => {
                let raw = self.build_presented(kind, n, ctx);
                if trivial || n == 0 {
                    raw
                } else {
                    raw.mul(&ctx.presentation_inv(n))
                }
            }
            OpKind::Connes | OpKind::ConnesPrime => {
                let k = if kind == OpKind::Connes {
                    OpKind::Karoubi
                } else {
                    OpKind::KaroubiPrime
                };
                let kappa = self.op(k, n + 1, Some(ctx));
                let dd = if kind == OpKind::Connes {
                    self.op(OpKind::D, n, Some(ctx))
                } else {
                    self.std_op(OpKind::D, n)
                };
                let ones = alloc::vec![Scalar::one(); n + 1];
                let cols = dd
                    .columns()
                    .iter()
                    .map(|c| apply_polynomial(&kappa, &ones, c))
                    .collect();
                SparseMatrix::from_columns(rows, cols)
            }
        }
    }

    /// Columns indexed by the `ξ`-presentation of `Ω_n` (identical to the
    /// standard basis when `ξ = ε`).
    fn build_presented(&self, kind: OpKind, n: usize, ctx: &TwistContext) -> SparseMatrix {
        let dim = self.grade_dim(n);
        let rows = self.target_dim(kind, n);
        if n == 0 {
            return match kind {
                OpKind::Hochschild | OpKind::HochschildPrime => SparseMatrix::zeros(0, dim),
                OpKind::Karoubi => ctx.xi_tilde_inv().clone(),
                // chosen so that κ' inverts κ in degree zero as well
                _ => ctx.xi_tilde().clone(),
            };
        }
        let trivial = ctx.is_trivial();
        let pres = if trivial {
            None
        } else {
            Some(ctx.presentation(n - 1))
        };
        let lower = |i: usize| -> SparseVec {
            match &pres {
                Some(p) => p.column(i).clone(),
                None => SparseVec::unit(i),
            }
        };
        let x = |a: usize| ctx.xi_tilde().column(a).clone();
        let xinv = |a: usize| ctx.xi_tilde_inv().column(a).clone();
        let e = self.dim() - 1;
        let sign = Scalar::sign(n - 1);
        let cols: Vec<SparseVec> = (0..dim)
            .map(|idx| match kind {
                OpKind::Hochschild => {
                    // b(ω da) = (-1)^(n-1) (ω ξ̃(a) - a ω)
                    let (w, a) = (idx / e, idx % e + 1);
                    let om = lower(w);
                    let r = self.right_mul(&om, n - 1, &x(a));
                    let l = self.left_mul(&SparseVec::unit(a), &om, n - 1);
                    r.sub(&l).scale(&sign)
                }
                OpKind::Karoubi => {
                    // κ(ω da) = (-1)^(n-1) da ω
                    let (w, a) = (idx / e, idx % e + 1);
                    let om = lower(w);
                    let da = self.d_element(&SparseVec::unit(a));
                    self.form_mul(&da, 1, &om, n - 1).scale(&sign)
                }
                OpKind::HochschildPrime | OpKind::KaroubiPrime => {
                    let t = self.tail(n);
                    let a0 = idx / t;
                    let a1 = (idx % t) / self.tail(n - 1) + 1;
                    let om = lower(idx % self.tail(n - 1));
                    let c = xinv(a0);
                    let ca1 = self.hopf.mul(&c, &SparseVec::unit(a1));
                    if kind == OpKind::HochschildPrime {
                        // b'(a_0 da_1 ω') = ξ̃(a_1) ω' c - ω' c a_1,  c = ξ̃^{-1}(a_0)
                        let oc = self.right_mul(&om, n - 1, &c);
                        let l = self.left_mul(&x(a1), &oc, n - 1);
                        l.sub(&self.right_mul(&om, n - 1, &ca1))
                    } else {
                        // κ'(a_0 da_1 ω') = (-1)^(n-1) (ω' d(c a_1) - ξ̃(a_1) ω' dc)
                        let first = self.append_d(&om, &ca1);
                        let lo = self.left_mul(&x(a1), &om, n - 1);
                        first.sub(&self.append_d(&lo, &c)).scale(&sign)
                    }
                }
                _ => unreachable!(),
            })
            .collect();
        SparseMatrix::from_columns(rows, cols)
    }
}
