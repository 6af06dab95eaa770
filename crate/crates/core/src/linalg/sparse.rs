use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::Scalar;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(i, c)| (i, c)))
            .finish()
    }
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Scalar::one())],
        }
    }

    pub fn single(i: usize, c: Scalar) -> Self {
        if c.is_zero() {
            SparseVec::new()
        } else {
            SparseVec {
                entries: vec![(i, c)],
            }
        }
    }

    /// Builds from arbitrary (index, value) pairs; duplicates are summed.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut acc = Accumulator::new();
        for (i, c) in pairs {
            acc.add(i, &c);
        }
        acc.into_vec()
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    /// Caller guarantees sorted, unique, nonzero entries.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, c)| !c.is_zero()));
        SparseVec { entries }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect(),
        }
    }

    /// `a*self + b*other` by a sorted merge.
    pub fn combine(&self, a: &Scalar, other: &SparseVec, b: &Scalar) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut p, mut q) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while p < x.len() || q < y.len() {
            let take = match (x.get(p), y.get(q)) {
                (Some((i, _)), Some((j, _))) => i.cmp(j),
                (Some(_), None) => core::cmp::Ordering::Less,
                (None, Some(_)) => core::cmp::Ordering::Greater,
                (None, None) => unreachable!(),
            };
            let (idx, val) = match take {
                core::cmp::Ordering::Less => {
                    p += 1;
                    (x[p - 1].0, a * &x[p - 1].1)
                }
                core::cmp::Ordering::Greater => {
                    q += 1;
                    (y[q - 1].0, b * &y[q - 1].1)
                }
                core::cmp::Ordering::Equal => {
                    p += 1;
                    q += 1;
                    (x[p - 1].0, &(a * &x[p - 1].1) + &(b * &y[q - 1].1))
                }
            };
            if !val.is_zero() {
                out.push((idx, val));
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.combine(&Scalar::one(), other, &Scalar::one())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.combine(&Scalar::one(), other, &Scalar::from_int(-1))
    }

    pub fn dot(&self, other: &SparseVec) -> Scalar {
        let mut acc = Scalar::zero();
        let (mut p, mut q) = (0, 0);
        while p < self.entries.len() && q < other.entries.len() {
            match self.entries[p].0.cmp(&other.entries[q].0) {
                core::cmp::Ordering::Less => p += 1,
                core::cmp::Ordering::Greater => q += 1,
                core::cmp::Ordering::Equal => {
                    acc += &(&self.entries[p].1 * &other.entries[q].1);
                    p += 1;
                    q += 1;
                }
            }
        }
        acc
    }

    /// Reindexes every entry through `f`; entries mapped to `None` are dropped.
    pub fn map_indices(&self, mut f: impl FnMut(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(
            self.entries
                .iter()
                .filter_map(|(i, c)| f(*i).map(|j| (j, c.clone()))),
        )
    }

    /// Scales by the lcm of the denominators, then divides by the gcd of
    /// the numerators. Leaves a vector of coprime integers with the same span.
    pub(crate) fn primitive(&self) -> SparseVec {
        if self.entries.is_empty() {
            return SparseVec::new();
        }
        let mut l = Scalar::one();
        for (_, c) in &self.entries {
            if !c.is_integer() {
                l = l.denom_lcm(c);
            }
        }
        let scaled: Vec<(usize, Scalar)> = if l.is_one() {
            self.entries.clone()
        } else {
            self.entries.iter().map(|(i, c)| (*i, c * &l)).collect()
        };
        let mut g = Scalar::zero();
        for (_, c) in &scaled {
            g = g.int_gcd(c);
            if g.is_one() {
                break;
            }
        }
        if g.is_one() {
            SparseVec { entries: scaled }
        } else {
            SparseVec {
                entries: scaled.iter().map(|(i, c)| (*i, c / &g)).collect(),
            }
        }
    }
}

/// Ordered accumulator of sparse contributions.
#[derive(Default, Clone, Debug)]
pub struct Accumulator {
    map: BTreeMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator {
            map: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.map.entry(i).or_insert_with(Scalar::zero);
        *e += c;
    }

    pub fn add_vec(&mut self, v: &SparseVec, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v.iter() {
            self.add(i, &(x * c));
        }
    }

    pub fn into_vec(self) -> SparseVec {
        SparseVec {
            entries: self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

/// Dense scratch buffer for summing many sparse columns of a fixed length.
struct Scratch {
    vals: Vec<Scalar>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl Scratch {
    fn new(len: usize) -> Self {
        Scratch {
            vals: vec![Scalar::zero(); len],
            touched: Vec::new(),
            mark: vec![false; len],
        }
    }

    fn add_scaled(&mut self, v: &SparseVec, c: &Scalar) {
        for (i, x) in v.iter() {
            if !self.mark[i] {
                self.mark[i] = true;
                self.touched.push(i);
            }
            let t = x * c;
            self.vals[i] += &t;
        }
    }

    fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.mark[i] = false;
            let v = core::mem::take(&mut self.vals[i]);
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        SparseVec::from_sorted_unchecked(out)
    }
}

/// Sparse matrix stored by columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} [", self.rows, self.cols.len())?;
        for r in 0..self.rows.min(24) {
            write!(f, "  ")?;
            for c in 0..self.cols.len().min(24) {
                write!(f, "{:>5} ", alloc::format!("{}", self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn scalar(n: usize, c: &Scalar) -> Self {
        SparseMatrix {
            rows: n,
            cols: (0..n).map(|i| SparseVec::single(i, c.clone())).collect(),
        }
    }

    /// Panics if a column has an index out of range.
    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        for c in &cols {
            if let Some(m) = c.max_index() {
                assert!(m < rows, "column entry {m} out of range for {rows} rows");
            }
        }
        SparseMatrix { rows, cols }
    }

    pub fn from_rows(cols: usize, rows: &[SparseVec]) -> Self {
        SparseMatrix::from_columns(rows.len(), rows.to_vec()).transpose_with_rows(cols)
    }

    fn transpose_with_rows(&self, new_rows: usize) -> SparseMatrix {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); new_rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.iter() {
                cols[i].push((j, c.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols.len(),
            cols: cols.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        }
    }

    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, Scalar)>>(
        rows: usize,
        cols: usize,
        trips: I,
    ) -> Self {
        let mut acc = vec![Accumulator::new(); cols];
        for (r, c, v) in trips {
            assert!(r < rows && c < cols, "triplet ({r},{c}) out of range");
            acc[c].add(r, &v);
        }
        SparseMatrix {
            rows,
            cols: acc.into_iter().map(Accumulator::into_vec).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        SparseMatrix::from_triplets(
            r,
            c,
            rows.iter().enumerate().flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(j, v)| (i, j, Scalar::from_int(*v)))
            }),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols.len())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.cols[c].get(r)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .cols
                .iter()
                .enumerate()
                .all(|(j, c)| c.nnz() == 1 && c.entries()[0].0 == j && c.entries()[0].1.is_one())
    }

    pub fn transpose(&self) -> SparseMatrix {
        self.transpose_with_rows(self.rows)
    }

    /// Row-major list of nonzero entries.
    pub fn triplets(&self) -> Vec<(usize, usize, Scalar)> {
        let t = self.transpose();
        let mut out = Vec::with_capacity(self.nnz());
        for (r, row) in t.cols.iter().enumerate() {
            for (c, v) in row.iter() {
                out.push((r, c, v.clone()));
            }
        }
        out
    }

    pub fn rows_vec(&self) -> Vec<SparseVec> {
        self.transpose().cols
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.ncols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.iter() {
                out[i][j] = c.clone();
            }
        }
        out
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        if let Some(m) = v.max_index() {
            assert!(m < self.ncols(), "vector index {m} out of range");
        }
        let mut acc = Scratch::new(self.rows);
        for (j, c) in v.iter() {
            acc.add_scaled(&self.cols[j], c);
        }
        acc.drain()
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            self.ncols(),
            rhs.rows,
            "shape mismatch {:?} * {:?}",
            self.shape(),
            rhs.shape()
        );
        let mut scratch = Scratch::new(self.rows);
        let cols = rhs
            .cols
            .iter()
            .map(|col| {
                for (k, c) in col.iter() {
                    scratch.add_scaled(&self.cols[k], c);
                }
                scratch.drain()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols,
        }
    }

    pub fn combine(&self, a: &Scalar, other: &SparseMatrix, b: &Scalar) -> SparseMatrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        SparseMatrix {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(x, y)| x.combine(a, y, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(&Scalar::one(), other, &Scalar::one())
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.combine(&Scalar::one(), other, &Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> SparseMatrix {
        self.scale(&Scalar::from_int(-1))
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u32) -> SparseMatrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = SparseMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                acc = if first { base.clone() } else { acc.mul(&base) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// First entry (row, col) where the two matrices differ.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((usize::MAX, usize::MAX));
        }
        for (j, (x, y)) in self.cols.iter().zip(&other.cols).enumerate() {
            if x != y {
                let diff = x.sub(y);
                return diff.leading().map(|(i, _)| (i, j));
            }
        }
        None
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut t = Scalar::zero();
        for j in 0..self.ncols() {
            t += &self.get(j, j);
        }
        t
    }

    /// Block placement: copies `self` into a larger zero matrix at (r0, c0).
    pub fn embed(&self, rows: usize, cols: usize, r0: usize, c0: usize) -> SparseMatrix {
        assert!(r0 + self.rows <= rows && c0 + self.ncols() <= cols);
        let mut out = vec![SparseVec::new(); cols];
        for (j, col) in self.cols.iter().enumerate() {
            out[c0 + j] = col.map_indices(|i| Some(i + r0));
        }
        SparseMatrix { rows, cols: out }
    }

    /// Kronecker product `self ⊗ other` with row/column index `i*|other| + k`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let (r2, c2) = other.shape();
        let mut cols = Vec::with_capacity(self.ncols() * c2);
        for a in &self.cols {
            for b in &other.cols {
                let mut entries = Vec::with_capacity(a.nnz() * b.nnz());
                for (i, x) in a.iter() {
                    for (k, y) in b.iter() {
                        entries.push((i * r2 + k, x * y));
                    }
                }
                cols.push(SparseVec::from_sorted_unchecked(entries));
            }
        }
        SparseMatrix {
            rows: self.rows * r2,
            cols,
        }
    }
}
