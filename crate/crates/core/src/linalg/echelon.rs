use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::sparse::{SparseMatrix, SparseVec};
use crate::scalar::Scalar;

/// Reduced row echelon form: every row has leading coefficient 1 and the
/// pivot columns are zero in every other row. Rows are sorted by pivot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
}

/// Fraction-free elimination of `row` against `pivot` at column `col`:
/// returns the primitive part of `p*row - v*pivot`.
fn eliminate(row: &SparseVec, pivot: &SparseVec, col: usize) -> SparseVec {
    let p = pivot.get(col);
    let v = row.get(col);
    debug_assert!(!p.is_zero() && !v.is_zero());
    if p.is_integer() && v.is_integer() {
        let g = p.int_gcd(&v);
        let (a, b) = (&p / &g, &v / &g);
        row.combine(&a, pivot, &(-&b)).primitive()
    } else {
        row.combine(&Scalar::one(), pivot, &(-&(&v / &p))).primitive()
    }
}

impl Echelon {
    pub fn from_rows<I: IntoIterator<Item = SparseVec>>(rows: I, ncols: usize) -> Echelon {
        let mut pivots: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for row in rows {
            if let Some(m) = row.max_index() {
                assert!(m < ncols, "row index {m} out of range for {ncols} columns");
            }
            let mut row = row.primitive();
            let mut start = 0usize;
            loop {
                let hit = row
                    .iter()
                    .filter(|(c, _)| *c >= start)
                    .find(|(c, _)| pivots.contains_key(c))
                    .map(|(c, _)| c);
                match hit {
                    None => break,
                    Some(c) => {
                        row = eliminate(&row, &pivots[&c], c);
                        start = c + 1;
                    }
                }
            }
            if let Some((lead, _)) = row.leading() {
                pivots.insert(lead, row);
            }
        }
        // back substitution, highest pivot first
        let cols: Vec<usize> = pivots.keys().copied().collect();
        for (k, &c) in cols.iter().enumerate().rev() {
            let prow = pivots[&c].clone();
            for &above in &cols[..k] {
                let r = &pivots[&above];
                if !r.get(c).is_zero() {
                    let reduced = eliminate(r, &prow, c);
                    pivots.insert(above, reduced);
                }
            }
        }
        let rows = pivots
            .into_values()
            .map(|r| {
                let lead = r.leading().unwrap().1.recip();
                r.scale(&lead)
            })
            .collect();
        Echelon { ncols, rows }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().unwrap().0)
    }

    /// Coefficients of `v` in the echelon rows together with the residual
    /// `v - sum c_i row_i` (zero iff `v` lies in the row space).
    pub fn decompose(&self, v: &SparseVec) -> (Vec<Scalar>, SparseVec) {
        let coeffs: Vec<Scalar> = self
            .rows
            .iter()
            .map(|r| v.get(r.leading().unwrap().0))
            .collect();
        let mut acc = super::sparse::Accumulator::new();
        acc.add_vec(v, &Scalar::one());
        for (c, r) in coeffs.iter().zip(&self.rows) {
            acc.add_vec(r, &(-c));
        }
        (coeffs, acc.into_vec())
    }

    /// Null space basis of the row space viewed as equations.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let pivots: Vec<usize> = self.pivots().collect();
        let mut is_pivot = alloc::vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        // column-wise view of the non-pivot part
        let mut by_col: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (k, r) in self.rows.iter().enumerate() {
            for (c, v) in r.iter() {
                if !is_pivot[c] {
                    by_col.entry(c).or_default().push((pivots[k], v.clone()));
                }
            }
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut pairs: Vec<(usize, Scalar)> = by_col
                    .remove(&f)
                    .unwrap_or_default()
                    .into_iter()
                    .map(|(p, v)| (p, -v))
                    .collect();
                pairs.push((f, Scalar::one()));
                SparseVec::from_pairs(pairs)
            })
            .collect()
    }
}

/// A linear subspace of `Q^ambient` with a canonical (RREF) basis, so that
/// equality of subspaces is structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ech: Echelon,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ech: Echelon {
                ncols: ambient,
                rows: Vec::new(),
            },
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ech: Echelon {
                ncols: ambient,
                rows: (0..ambient).map(SparseVec::unit).collect(),
            },
        }
    }

    pub fn span<I: IntoIterator<Item = SparseVec>>(ambient: usize, vectors: I) -> Subspace {
        Subspace {
            ech: Echelon::from_rows(vectors, ambient),
        }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &SparseMatrix) -> Subspace {
        Subspace::span(m.nrows(), m.columns().iter().cloned())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ech.ncols
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn basis(&self) -> &[SparseVec] {
        self.ech.rows()
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.ambient_dim(), self.basis().to_vec())
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.ech.decompose(v).1.is_zero()
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let (c, res) = self.ech.decompose(v);
        res.is_zero().then(|| SparseVec::from_dense(&c))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }
}

/// An ordered, linearly independent family of vectors, with a solver for
/// coordinates in that family.
#[derive(Clone, Debug)]
pub struct Frame {
    ambient: usize,
    vectors: Vec<SparseVec>,
    // RREF of [f_i | e_i]; the tail records which combination of the f_i
    // each echelon row is.
    aug: Echelon,
    span: Subspace,
}

impl Frame {
    /// Returns `None` if the vectors are linearly dependent.
    pub fn new(ambient: usize, vectors: Vec<SparseVec>) -> Option<Frame> {
        let k = vectors.len();
        let rows = vectors.iter().enumerate().map(|(i, v)| {
            let mut e: Vec<(usize, Scalar)> = v.entries().to_vec();
            e.push((ambient + i, Scalar::one()));
            SparseVec::from_sorted_unchecked(e)
        });
        let aug = Echelon::from_rows(rows, ambient + k);
        if aug.pivots().any(|p| p >= ambient) {
            return None;
        }
        let span = Subspace {
            ech: Echelon {
                ncols: ambient,
                rows: aug
                    .rows()
                    .iter()
                    .map(|r| r.map_indices(|i| (i < ambient).then_some(i)))
                    .collect(),
            },
        };
        Some(Frame {
            ambient,
            vectors,
            aug,
            span,
        })
    }

    pub fn from_matrix(m: &SparseMatrix) -> Option<Frame> {
        Frame::new(m.nrows(), m.columns().to_vec())
    }

    pub fn from_subspace(s: &Subspace) -> Frame {
        Frame::new(s.ambient_dim(), s.basis().to_vec()).expect("subspace basis is independent")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.ambient, self.vectors.clone())
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// Coordinates `a` with `sum a_i f_i = v`, if `v` is in the span.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let (coeffs, res) = self.span.ech.decompose(v);
        if !res.is_zero() {
            return None;
        }
        let mut acc = super::sparse::Accumulator::new();
        for (c, r) in coeffs.iter().zip(self.aug.rows()) {
            for (i, x) in r.iter() {
                if i >= self.ambient {
                    acc.add(i - self.ambient, &(x * c));
                }
            }
        }
        Some(acc.into_vec())
    }
}
