//! Exact sparse linear algebra over the rationals.

mod echelon;
pub mod poly;
mod sparse;

use alloc::vec::Vec;
use core::fmt;

pub use echelon::{Echelon, Frame, Subspace};
pub use poly::Poly;
pub use sparse::{Accumulator, SparseMatrix, SparseVec};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    DimensionMismatch { expected: usize, found: usize },
    /// `map` sends `witness` (a basis vector of the domain) outside the codomain.
    NotStable { witness: SparseVec, image: SparseVec },
    /// `d_out * d_in` has a nonzero column.
    NotAComplex { column: usize },
    NonSquare { rows: usize, cols: usize },
    /// The supplied frame vectors are linearly dependent.
    DependentFrame,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            LinalgError::NotStable { witness, .. } => {
                write!(f, "subspace not stable; witness {witness:?}")
            }
            LinalgError::NotAComplex { column } => {
                write!(f, "not a complex: d_out * d_in nonzero in column {column}")
            }
            LinalgError::NonSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            LinalgError::DependentFrame => write!(f, "frame vectors are linearly dependent"),
        }
    }
}

/// Rank, kernel and image of a matrix.
#[derive(Debug, Clone)]
pub struct RankKernelImage {
    pub rank: usize,
    pub kernel: Subspace,
    pub image: Subspace,
}

pub fn rank(m: &SparseMatrix) -> usize {
    if m.nrows() < m.ncols() {
        Echelon::from_rows(m.columns().iter().cloned(), m.nrows()).rank()
    } else {
        Echelon::from_rows(m.rows_vec(), m.ncols()).rank()
    }
}

pub fn kernel(m: &SparseMatrix) -> Subspace {
    let ech = Echelon::from_rows(m.rows_vec(), m.ncols());
    Subspace::span(m.ncols(), ech.null_space())
}

pub fn image(m: &SparseMatrix) -> Subspace {
    Subspace::column_space(m)
}

pub fn rank_kernel_image(m: &SparseMatrix) -> RankKernelImage {
    let ech = Echelon::from_rows(m.rows_vec(), m.ncols());
    let rank = ech.rank();
    let kernel = Subspace::span(m.ncols(), ech.null_space());
    let image = image(m);
    debug_assert_eq!(image.dim(), rank);
    RankKernelImage {
        rank,
        kernel,
        image,
    }
}

fn check_ambient(a: &Subspace, b: usize) -> Result<(), LinalgError> {
    if a.ambient_dim() != b {
        return Err(LinalgError::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b,
        });
    }
    Ok(())
}

pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace, LinalgError> {
    check_ambient(a, b.ambient_dim())?;
    Ok(Subspace::span(
        a.ambient_dim(),
        a.basis().iter().chain(b.basis()).cloned(),
    ))
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace, LinalgError> {
    check_ambient(a, b.ambient_dim())?;
    let n = a.ambient_dim();
    // kernel of [A | -B]; each kernel vector (x, y) gives A x in the intersection
    let p = a.dim();
    let cols: Vec<SparseVec> = a
        .basis()
        .iter()
        .cloned()
        .chain(b.basis().iter().map(SparseVec::neg))
        .collect();
    let stacked = SparseMatrix::from_columns(n, cols);
    let ker = kernel(&stacked);
    let amat = a.basis_matrix();
    let vecs = ker
        .basis()
        .iter()
        .map(|k| amat.apply(&k.map_indices(|i| (i < p).then_some(i))));
    Ok(Subspace::span(n, vecs))
}

pub fn contains_vector(a: &Subspace, v: &SparseVec) -> Result<bool, LinalgError> {
    if let Some(m) = v.max_index() {
        if m >= a.ambient_dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: a.ambient_dim(),
                found: m + 1,
            });
        }
    }
    Ok(a.contains(v))
}

pub fn equals(a: &Subspace, b: &Subspace) -> Result<bool, LinalgError> {
    check_ambient(a, b.ambient_dim())?;
    Ok(a == b)
}

/// Matrix of `m` restricted to `dom` and corestricted to `cod`, in the
/// canonical subspace bases. Fails with a witness if `m(dom)` leaves `cod`.
pub fn restrict_map(
    m: &SparseMatrix,
    dom: &Subspace,
    cod: &Subspace,
) -> Result<SparseMatrix, LinalgError> {
    restrict_in_frames(m, &Frame::from_subspace(dom), &Frame::from_subspace(cod))
}

/// Same as [`restrict_map`] but in arbitrary independent frames: returns `X`
/// with `m * F_dom = F_cod * X`.
pub fn restrict_in_frames(
    m: &SparseMatrix,
    dom: &Frame,
    cod: &Frame,
) -> Result<SparseMatrix, LinalgError> {
    check_ambient(dom.span(), m.ncols())?;
    check_ambient(cod.span(), m.nrows())?;
    let mut cols = Vec::with_capacity(dom.len());
    for v in dom.vectors() {
        let w = m.apply(v);
        match cod.coords(&w) {
            Some(c) => cols.push(c),
            None => {
                return Err(LinalgError::NotStable {
                    witness: v.clone(),
                    image: w,
                })
            }
        }
    }
    Ok(SparseMatrix::from_columns(cod.len(), cols))
}

/// Cohomology of `A --d_in--> M --d_out--> C` at `M`.
#[derive(Debug, Clone)]
pub struct CohomologyClasses {
    pub dim: usize,
    /// Cocycles lifting a basis of `ker d_out / im d_in`.
    pub representatives: Vec<SparseVec>,
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
}

impl CohomologyClasses {
    /// Coordinates of a cocycle in the basis of classes given by the
    /// representatives, or `None` if `v` is not a cocycle.
    pub fn class_of(&self, v: &SparseVec) -> Option<SparseVec> {
        if !self.cocycles.contains(v) {
            return None;
        }
        let frame = Frame::new(
            self.cocycles.ambient_dim(),
            self.representatives
                .iter()
                .chain(self.coboundaries.basis())
                .cloned()
                .collect(),
        )
        .expect("representatives complement the coboundaries");
        let c = frame.coords(v)?;
        let k = self.representatives.len();
        Some(c.map_indices(|i| (i < k).then_some(i)))
    }
}

pub fn cohomology_dim(
    d_in: &SparseMatrix,
    d_out: &SparseMatrix,
) -> Result<CohomologyClasses, LinalgError> {
    if d_in.nrows() != d_out.ncols() {
        return Err(LinalgError::DimensionMismatch {
            expected: d_out.ncols(),
            found: d_in.nrows(),
        });
    }
    let comp = d_out.mul(d_in);
    if let Some((_, c)) = comp.first_difference(&SparseMatrix::zeros(comp.nrows(), comp.ncols())) {
        return Err(LinalgError::NotAComplex { column: c });
    }
    let cocycles = kernel(d_out);
    let coboundaries = image(d_in);
    let mut reps = Vec::new();
    let mut span = coboundaries.clone();
    for z in cocycles.basis() {
        if !span.contains(z) {
            reps.push(z.clone());
            span = Subspace::span(
                span.ambient_dim(),
                span.basis().iter().cloned().chain(core::iter::once(z.clone())),
            );
        }
    }
    debug_assert_eq!(reps.len(), cocycles.dim() - coboundaries.dim());
    Ok(CohomologyClasses {
        dim: reps.len(),
        representatives: reps,
        cocycles,
        coboundaries,
    })
}

/// `sum_i coeffs[i] * m^i` (Horner).
pub fn evaluate_polynomial(m: &SparseMatrix, coeffs: &[Scalar]) -> Result<SparseMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NonSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.nrows();
    let mut acc = SparseMatrix::zeros(n, n);
    for c in coeffs.iter().rev() {
        acc = acc.mul(m).add(&SparseMatrix::scalar(n, c));
    }
    Ok(acc)
}

/// `sum_i coeffs[i] * m^i v` without forming matrix powers.
pub fn apply_polynomial(m: &SparseMatrix, coeffs: &[Scalar], v: &SparseVec) -> SparseVec {
    let mut acc = SparseVec::new();
    for c in coeffs.iter().rev() {
        acc = m.apply(&acc).combine(&Scalar::one(), v, c);
    }
    acc
}

/// `m^k v` by repeated application.
pub fn apply_power(m: &SparseMatrix, k: usize, v: &SparseVec) -> SparseVec {
    let mut out = v.clone();
    for _ in 0..k {
        out = m.apply(&out);
    }
    out
}

/// Matrix whose columns are `f(e_j)` for `j < cols`.
pub fn matrix_from_fn(rows: usize, cols: usize, f: impl FnMut(&SparseVec) -> SparseVec) -> SparseMatrix {
    let mut f = f;
    SparseMatrix::from_columns(rows, (0..cols).map(|j| f(&SparseVec::unit(j))).collect())
}
