//! The universal differential calculus `Ω(H)` in bar coordinates.
//!
//! A basis form `a_0 da_1 ... da_n` has `a_0` any basis index of `H` and
//! `a_1, ..., a_n` in `1..d` (the unit is quotiented out). Its flat index is
//! `a_0 (d-1)^n + sum_i (a_i - 1) (d-1)^(n-i)`.

mod antipode;
mod coaction;
mod harmonic;
mod identities;
mod ops;
mod twist;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

pub use coaction::{CoinvariantData, Side};
pub use harmonic::harmonic_polynomial;
pub use identities::{CoordinateFormulaReport, FormulaMatch, SignFit};
pub use ops::{FormOperator, OpKind};
pub use twist::TwistContext;

use crate::hopf::Hopf;
use crate::linalg::{Accumulator, LinalgError, SparseMatrix, SparseVec};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OmegaError {
    /// Coinvariant dimensions or spans disagree with `(d-1)^n`.
    DimensionMismatch { expected: usize, found: usize, what: &'static str },
    /// `(κ^n - 1)(κ^(n+1) - 1) != 0` on the given grade.
    AnnihilatorFailure { degree: usize, column: usize },
    NotGrouplike,
    Linalg(LinalgError),
}

impl From<LinalgError> for OmegaError {
    fn from(e: LinalgError) -> Self {
        OmegaError::Linalg(e)
    }
}

impl fmt::Display for OmegaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaError::DimensionMismatch { expected, found, what } => {
                write!(f, "{what}: expected dimension {expected}, found {found}")
            }
            OmegaError::AnnihilatorFailure { degree, column } => write!(
                f,
                "(κ^n - 1)(κ^(n+1) - 1) is nonzero at degree {degree}, column {column}"
            ),
            OmegaError::NotGrouplike => write!(f, "σ is not group-like"),
            OmegaError::Linalg(e) => write!(f, "{e}"),
        }
    }
}

/// Optional persistent store for operator matrices, keyed by a string
/// that identifies the operator (the store is responsible for scoping keys
/// to the algebra).
pub trait MatrixStore {
    fn load(&self, key: &str) -> Option<SparseMatrix>;
    fn save(&self, key: &str, matrix: &SparseMatrix);
}

/// An element of `Ω_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub degree: usize,
    pub coeffs: SparseVec,
}

impl Form {
    pub fn new(degree: usize, coeffs: SparseVec) -> Form {
        Form { degree, coeffs }
    }
}

/// Operator factory for `Ω(H)`. Matrices are memoized per
/// `(kind, degree, twist)`; the memo is deterministic, so repeated requests
/// return identical values.
pub struct Calculus {
    hopf: Hopf,
    // right multiplication by e_j on Ω_n, indexed [n][j]
    right: RefCell<Vec<Rc<Vec<SparseMatrix>>>>,
    ops: RefCell<BTreeMap<ops::OpKey, Rc<SparseMatrix>>>,
    store: Option<Box<dyn MatrixStore>>,
}

impl fmt::Debug for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Calculus").field("dim", &self.hopf.dim()).finish()
    }
}

impl Calculus {
    pub fn new(hopf: Hopf) -> Calculus {
        Calculus {
            hopf,
            right: RefCell::new(Vec::new()),
            ops: RefCell::new(BTreeMap::new()),
            store: None,
        }
    }

    pub fn with_store(hopf: Hopf, store: Box<dyn MatrixStore>) -> Calculus {
        let mut c = Calculus::new(hopf);
        c.store = Some(store);
        c
    }

    pub fn hopf(&self) -> &Hopf {
        &self.hopf
    }

    /// `d`, the dimension of `H`.
    pub fn dim(&self) -> usize {
        self.hopf.dim()
    }

    fn bar(&self) -> usize {
        self.dim() - 1
    }

    /// `(d-1)^n`, the size of the tail block of `Ω_n`.
    pub fn tail(&self, n: usize) -> usize {
        self.bar().pow(n as u32)
    }

    /// `dim Ω_n = d (d-1)^n`.
    pub fn grade_dim(&self, n: usize) -> usize {
        self.dim() * self.tail(n)
    }

    pub fn encode(&self, a0: usize, slots: &[usize]) -> usize {
        let e = self.bar();
        slots.iter().fold(a0, |acc, &a| {
            debug_assert!(a >= 1 && a < self.dim());
            acc * e + (a - 1)
        })
    }

    pub fn decode(&self, idx: usize, n: usize) -> (usize, Vec<usize>) {
        let e = self.bar();
        let mut slots = alloc::vec![0; n];
        let mut rest = idx;
        for s in slots.iter_mut().rev() {
            *s = rest % e + 1;
            rest /= e;
        }
        (rest, slots)
    }

    /// Human-readable name of a basis form, e.g. `g dx dg`.
    pub fn basis_label(&self, idx: usize, n: usize) -> String {
        let (a0, slots) = self.decode(idx, n);
        let mut s = String::new();
        if a0 != 0 || n == 0 {
            s.push_str(self.hopf.label(a0));
        }
        for a in slots {
            if !s.is_empty() {
                s.push(' ');
            }
            s.push('d');
            s.push_str(self.hopf.label(a));
        }
        s
    }

    /// `ω ∈ Ω_n` times `dh`, in `Ω_{n+1}` (the unit component of `h` drops).
    pub fn append_d(&self, form: &SparseVec, h: &SparseVec) -> SparseVec {
        let e = self.bar();
        let mut acc = Accumulator::new();
        for (idx, c) in form.iter() {
            for (k, x) in h.iter() {
                if k >= 1 {
                    acc.add(idx * e + (k - 1), &(c * x));
                }
            }
        }
        acc.into_vec()
    }

    fn right_mats(&self, n: usize) -> Rc<Vec<SparseMatrix>> {
        if let Some(m) = self.right.borrow().get(n) {
            return m.clone();
        }
        let d = self.dim();
        let mats: Vec<SparseMatrix> = if n == 0 {
            (0..d)
                .map(|j| self.hopf.algebra().right_matrix(&SparseVec::unit(j)))
                .collect()
        } else {
            let prev = self.right_mats(n - 1);
            let e = self.bar();
            let dim = self.grade_dim(n);
            (0..d)
                .map(|j| {
                    let cols = (0..dim)
                        .map(|idx| {
                            // (ω da) e_j = ω d(a e_j) - (ω a) de_j
                            let (w, a) = (idx / e, idx % e + 1);
                            let mut acc = Accumulator::new();
                            for (k, c) in self.hopf.mul_basis(a, j).iter() {
                                if k >= 1 {
                                    acc.add(w * e + (k - 1), c);
                                }
                            }
                            if j >= 1 {
                                for (t, c) in prev[a].column(w).iter() {
                                    acc.add(t * e + (j - 1), &(-c));
                                }
                            }
                            acc.into_vec()
                        })
                        .collect();
                    SparseMatrix::from_columns(dim, cols)
                })
                .collect()
        };
        let rc = Rc::new(mats);
        let mut cache = self.right.borrow_mut();
        // lower grades were filled by the recursion above
        assert!(cache.len() >= n, "right multiplication cache filled out of order");
        if cache.len() == n {
            cache.push(rc.clone());
        }
        rc
    }

    /// Matrix of right multiplication by `a` on `Ω_n`.
    pub fn right_mul_matrix(&self, n: usize, a: &SparseVec) -> SparseMatrix {
        let mats = self.right_mats(n);
        let dim = self.grade_dim(n);
        let mut out = SparseMatrix::zeros(dim, dim);
        for (j, c) in a.iter() {
            out = out.combine(&Scalar::one(), &mats[j], c);
        }
        out
    }

    /// `ω a` for `ω ∈ Ω_n`.
    pub fn right_mul(&self, form: &SparseVec, n: usize, a: &SparseVec) -> SparseVec {
        let mats = self.right_mats(n);
        let mut acc = Accumulator::new();
        for (j, c) in a.iter() {
            acc.add_vec(&mats[j].apply(form), c);
        }
        acc.into_vec()
    }

    /// `a ω` for `ω ∈ Ω_n` (only the first slot is multiplied).
    pub fn left_mul(&self, a: &SparseVec, form: &SparseVec, n: usize) -> SparseVec {
        let t = self.tail(n);
        let mut acc = Accumulator::new();
        for (idx, c) in form.iter() {
            let (a0, rest) = (idx / t, idx % t);
            for (j, x) in a.iter() {
                for (k, y) in self.hopf.mul_basis(j, a0).iter() {
                    acc.add(k * t + rest, &(&(c * x) * y));
                }
            }
        }
        acc.into_vec()
    }

    /// Product `f g` of `f ∈ Ω_p` and `g ∈ Ω_q`.
    pub fn form_mul(&self, f: &SparseVec, p: usize, g: &SparseVec, q: usize) -> SparseVec {
        let t = self.tail(q);
        let mats = self.right_mats(p);
        let mut acc = Accumulator::new();
        for (gidx, c) in g.iter() {
            let (b0, rest) = (gidx / t, gidx % t);
            for (fidx, x) in mats[b0].apply(f).iter() {
                acc.add(fidx * t + rest, &(c * x));
            }
        }
        acc.into_vec()
    }

    pub fn mul_forms(&self, f: &Form, g: &Form) -> Form {
        Form::new(
            f.degree + g.degree,
            self.form_mul(&f.coeffs, f.degree, &g.coeffs, g.degree),
        )
    }

    /// `d` on a vector of `Ω_n`.
    pub fn d_vec(&self, form: &SparseVec, n: usize) -> SparseVec {
        let t = self.tail(n);
        SparseVec::from_pairs(
            form.iter()
                .filter(|(idx, _)| *idx >= t)
                .map(|(idx, c)| (idx - t, c.clone())),
        )
    }

    /// The form `h` in degree 0.
    pub fn element(&self, h: &SparseVec) -> Form {
        Form::new(0, h.clone())
    }

    /// `dh ∈ Ω_1`.
    pub fn d_element(&self, h: &SparseVec) -> SparseVec {
        self.append_d(&SparseVec::unit(0), h)
    }

    fn cached(&self, key: ops::OpKey, build: impl FnOnce() -> SparseMatrix) -> Rc<SparseMatrix> {
        if let Some(m) = self.ops.borrow().get(&key) {
            return m.clone();
        }
        let skey = key.store_key();
        let m = match self.store.as_ref().and_then(|s| s.load(&skey)) {
            Some(m) => m,
            None => {
                let m = build();
                if let Some(s) = &self.store {
                    s.save(&skey, &m);
                }
                m
            }
        };
        let rc = Rc::new(m);
        self.ops.borrow_mut().insert(key, rc.clone());
        rc
    }
}

#[cfg(test)]
mod tests;
