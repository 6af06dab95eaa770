//! Finite-dimensional Hopf algebras as structure constants.

mod algebra;
pub mod builtins;
mod character;
mod tensor;
mod validate;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use algebra::Algebra;
pub use character::Character;
pub use tensor::{flat_index, multi_index, TensorVector};
pub use validate::{AxiomCheck, PairReport, ValidationReport};

use crate::linalg::{Accumulator, SparseMatrix, SparseVec};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HopfError {
    Shape(String),
    IndexOutOfRange {
        what: &'static str,
        index: Vec<usize>,
        dim: usize,
    },
    /// `xi(e_i e_j) != xi(e_i) xi(e_j)`, or `xi(1) != 1` (witness `(0, 0)`).
    NotACharacter { witness: (usize, usize) },
    NotAutomorphism { witness: (usize, usize) },
    NotGrouplike,
}

impl fmt::Display for HopfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HopfError::Shape(msg) => write!(f, "malformed presentation: {msg}"),
            HopfError::IndexOutOfRange { what, index, dim } => {
                write!(f, "{what} index {index:?} out of range for dimension {dim}")
            }
            HopfError::NotACharacter { witness: (i, j) } => {
                write!(f, "not a character: fails on basis pair ({i}, {j})")
            }
            HopfError::NotAutomorphism { witness: (i, j) } => {
                write!(f, "not an algebra automorphism: fails on basis pair ({i}, {j})")
            }
            HopfError::NotGrouplike => write!(f, "element is not group-like"),
        }
    }
}

/// A finite-dimensional Hopf algebra. Construction only checks shapes;
/// [`Hopf::validate`] checks the axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hopf {
    algebra: Algebra,
    // Δ(e_i) over the flat index j * dim + k
    comult: Vec<SparseVec>,
    counit: Vec<Scalar>,
    antipode: SparseMatrix,
}

impl Hopf {
    /// `comult` entries `(i, j, k, c)` mean `Δ(e_i) ∋ c e_j ⊗ e_k`;
    /// `antipode` entries `(i, j, c)` mean `S(e_j) ∋ c e_i`.
    pub fn new<C, S>(
        algebra: Algebra,
        comult: C,
        counit: Vec<Scalar>,
        antipode: S,
    ) -> Result<Hopf, HopfError>
    where
        C: IntoIterator<Item = (usize, usize, usize, Scalar)>,
        S: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let d = algebra.dim();
        if counit.len() != d {
            return Err(HopfError::Shape(alloc::format!(
                "counit has {} entries, expected {d}",
                counit.len()
            )));
        }
        let mut acc: Vec<Accumulator> = (0..d).map(|_| Accumulator::new()).collect();
        for (i, j, k, c) in comult {
            if i >= d || j >= d || k >= d {
                return Err(HopfError::IndexOutOfRange {
                    what: "comult",
                    index: [i, j, k].into(),
                    dim: d,
                });
            }
            acc[i].add(j * d + k, &c);
        }
        let mut s = Vec::new();
        for (i, j, c) in antipode {
            if i >= d || j >= d {
                return Err(HopfError::IndexOutOfRange {
                    what: "antipode",
                    index: [i, j].into(),
                    dim: d,
                });
            }
            s.push((i, j, c));
        }
        Ok(Hopf {
            comult: acc.into_iter().map(Accumulator::into_vec).collect(),
            counit,
            antipode: SparseMatrix::from_triplets(d, d, s),
            algebra,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn label(&self, i: usize) -> &str {
        self.algebra.label(i)
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.algebra.mul(a, b)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        self.algebra.mul_basis(i, j)
    }

    pub fn comult_basis(&self, i: usize) -> &SparseVec {
        &self.comult[i]
    }

    /// Comultiplication terms `(j, k, c)` of `e_i`.
    pub fn comult_terms(&self, i: usize) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        let d = self.dim();
        self.comult[i].iter().map(move |(jk, c)| (jk / d, jk % d, c))
    }

    /// `Δ(a)` as a vector over the flat index `j * dim + k`.
    pub fn comult(&self, a: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in a.iter() {
            acc.add_vec(&self.comult[i], x);
        }
        acc.into_vec()
    }

    /// Structure constants of `Δ` as `(i, j, k, c)`, sorted.
    pub fn comult_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        (0..self.dim())
            .flat_map(|i| {
                self.comult_terms(i)
                    .map(move |(j, k, c)| (i, j, k, c.clone()))
            })
            .collect()
    }

    pub fn counit_values(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn counit(&self, a: &SparseVec) -> Scalar {
        let mut s = Scalar::zero();
        for (i, x) in a.iter() {
            s += &(x * &self.counit[i]);
        }
        s
    }

    pub fn antipode_matrix(&self) -> &SparseMatrix {
        &self.antipode
    }

    pub fn antipode(&self, a: &SparseVec) -> SparseVec {
        self.antipode.apply(a)
    }

    /// `Δ^{(n-1)}(a)` in `H^{⊗n}`, expanding the last leg each time.
    pub fn iterated_coproduct(&self, a: &SparseVec, n: usize) -> TensorVector {
        assert!(n >= 1, "iterated coproduct needs at least one leg");
        let d = self.dim();
        let mut cur = a.clone();
        for _ in 1..n {
            let mut acc = Accumulator::new();
            for (idx, x) in cur.iter() {
                let (head, last) = (idx / d, idx % d);
                for (jk, c) in self.comult[last].iter() {
                    acc.add(head * d * d + jk, &(x * c));
                }
            }
            cur = acc.into_vec();
        }
        TensorVector::new(d, n, cur)
    }

    /// Same as [`Hopf::iterated_coproduct`] but expanding the first leg.
    pub fn iterated_coproduct_left(&self, a: &SparseVec, n: usize) -> TensorVector {
        assert!(n >= 1, "iterated coproduct needs at least one leg");
        let d = self.dim();
        let mut cur = a.clone();
        for k in 1..n {
            let tail_size = d.pow(k as u32 - 1);
            let mut acc = Accumulator::new();
            for (idx, x) in cur.iter() {
                let (first, tail) = (idx / tail_size, idx % tail_size);
                for (jk, c) in self.comult[first].iter() {
                    acc.add(jk * tail_size + tail, &(x * c));
                }
            }
            cur = acc.into_vec();
        }
        TensorVector::new(d, n, cur)
    }

    pub fn is_grouplike(&self, sigma: &SparseVec) -> bool {
        let d = self.dim();
        let square = TensorVector::pure(d, &[sigma.clone(), sigma.clone()]);
        self.counit(sigma).is_one() && &self.comult(sigma) == square.vec()
    }

    /// Inverse `S(σ)` of a group-like element.
    pub fn grouplike_inverse(&self, sigma: &SparseVec) -> SparseVec {
        self.antipode(sigma)
    }

    /// Matrix of `a -> sum a_(1) ξ(a_(2))`.
    pub fn right_convolution(&self, xi: &Character) -> SparseMatrix {
        self.convolution(|_, k| xi.value(k).clone(), true)
    }

    /// Matrix of `a -> sum ξ(a_(1)) a_(2)`.
    pub fn left_convolution(&self, xi: &Character) -> SparseMatrix {
        self.convolution(|j, _| xi.value(j).clone(), false)
    }

    fn convolution(&self, weight: impl Fn(usize, usize) -> Scalar, keep_first: bool) -> SparseMatrix {
        let d = self.dim();
        let cols = (0..d)
            .map(|i| {
                let mut acc = Accumulator::new();
                for (j, k, c) in self.comult_terms(i) {
                    let w = weight(j, k);
                    if !w.is_zero() {
                        acc.add(if keep_first { j } else { k }, &(c * &w));
                    }
                }
                acc.into_vec()
            })
            .collect();
        SparseMatrix::from_columns(d, cols)
    }

    /// `ξ̃(a) = a ⋆ ξ = sum a_(1) ξ(a_(2))`.
    pub fn star_convolve(&self, a: &SparseVec, xi: &Character) -> SparseVec {
        self.right_convolution(xi).apply(a)
    }

    /// The convolution inverse `ξ ∘ S` of a character.
    pub fn character_inverse(&self, xi: &Character) -> Character {
        let d = self.dim();
        let values = (0..d)
            .map(|i| xi.eval(self.antipode.column(i)))
            .collect();
        Character::from_values_unchecked(values)
    }

    /// Matrix of `Ad_ξ(a) = sum ξ(S(a_(1))) a_(2) ξ(a_(3))`.
    pub fn ad_matrix(&self, xi: &Character) -> SparseMatrix {
        let inv = self.character_inverse(xi);
        self.left_convolution(&inv).mul(&self.right_convolution(xi))
    }

    pub fn ad_character(&self, xi: &Character, a: &SparseVec) -> SparseVec {
        self.ad_matrix(xi).apply(a)
    }

    /// Matrix of `S_δ(h) = sum δ(h_(1)) S(h_(2))`.
    pub fn twisted_antipode_matrix(&self, delta: &Character) -> SparseMatrix {
        self.antipode.mul(&self.left_convolution(delta))
    }

    pub fn twisted_antipode(&self, delta: &Character, h: &SparseVec) -> SparseVec {
        self.twisted_antipode_matrix(delta).apply(h)
    }

    /// `h · (h_1, ..., h_n) = (h_(1) h_1, ..., h_(n) h_n)`.
    pub fn diagonal_action(&self, h: &SparseVec, t: &TensorVector) -> TensorVector {
        let n = t.arity();
        assert!(n >= 1, "diagonal action needs arity at least 1");
        let d = self.dim();
        let legs = self.iterated_coproduct(h, n);
        let mut acc = Accumulator::new();
        for (p, x) in legs.terms() {
            for (q, y) in t.terms() {
                let factors: Vec<SparseVec> = p
                    .iter()
                    .zip(&q)
                    .map(|(&a, &b)| self.mul_basis(a, b).clone())
                    .collect();
                let prod = TensorVector::pure(d, &factors);
                acc.add_vec(prod.vec(), &(x * y));
            }
        }
        TensorVector::new(d, n, acc.into_vec())
    }

    /// Matrix of `f(a) = sum α(a_(1)) a_(2) β(a_(3))`, verified to be an
    /// algebra automorphism.
    pub fn two_sided_twist(&self, alpha: &Character, beta: &Character) -> Result<SparseMatrix, HopfError> {
        let f = self
            .left_convolution(alpha)
            .mul(&self.right_convolution(beta));
        self.algebra.check_automorphism(&f)?;
        Ok(f)
    }

    /// Structure constants in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &SparseMatrix, labels: Vec<String>) -> Result<Hopf, HopfError> {
        let d = self.dim();
        let frame = algebra::change_frame(d, p, &labels)?;
        let algebra = self.algebra.change_basis(p, labels)?;
        let pp = p.kron(p);
        let pp_frame = crate::linalg::Frame::from_matrix(&pp).expect("kron of invertible");
        let mut comult = Vec::new();
        let mut antipode = Vec::new();
        let mut counit = Vec::new();
        for i in 0..d {
            let c = pp_frame
                .coords(&self.comult(p.column(i)))
                .expect("frame spans the tensor square");
            comult.extend(c.iter().map(|(jk, x)| (i, jk / d, jk % d, x.clone())));
            let s = frame.coords(&self.antipode(p.column(i))).expect("frame spans");
            antipode.extend(s.iter().map(|(j, x)| (j, i, x.clone())));
            counit.push(self.counit(p.column(i)));
        }
        Hopf::new(algebra, comult, counit, antipode)
    }
}
