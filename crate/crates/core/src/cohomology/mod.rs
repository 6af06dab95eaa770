//! Hochschild and cyclic cohomology of truncated mixed complexes, the
//! periodicity map `S` with stabilization detection, and maps induced on
//! cohomology by chain maps.
//!
//! The total complex in degree `m` is `Tot^m = M_m ⊕ M_{m-2} ⊕ ...` (column
//! `k` holds `M_{m-2k}`), with `b` inside a column and `B` into the next one.
//! Degree `m` only involves `M_p` for `p <= m + 1`, so `HC^m` is exact for
//! `m <= cutoff - 1`.

#[cfg(test)]
mod tests;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cyclic::MixedComplex;
use crate::linalg::{cohomology_dim, rank, CohomologyClasses, LinalgError, SparseMatrix, SparseVec};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    /// Degree `degree` needs differentials beyond the cutoff.
    CutoffExceeded { degree: usize, max: Option<usize> },
    /// The mixed identities fail; no cohomology is computed.
    NotMixed { name: String, failures: Vec<String> },
    /// A chain map fails to commute with the differentials in `degree`.
    NotChainMap { degree: usize, what: String },
    Linalg(LinalgError),
}

impl From<LinalgError> for CohomologyError {
    fn from(e: LinalgError) -> Self {
        CohomologyError::Linalg(e)
    }
}

impl fmt::Display for CohomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyError::CutoffExceeded { degree, max: Some(m) } => {
                write!(f, "degree {degree} exceeds the cutoff (largest computable degree is {m})")
            }
            CohomologyError::CutoffExceeded { degree, max: None } => {
                write!(f, "degree {degree} exceeds the cutoff (no degree is computable)")
            }
            CohomologyError::NotMixed { name, failures } => {
                write!(f, "{name} is not a mixed complex: {}", failures.join("; "))
            }
            CohomologyError::NotChainMap { degree, what } => write!(f, "not a chain map in degree {degree}: {what}"),
            CohomologyError::Linalg(e) => write!(f, "{e}"),
        }
    }
}

fn check_degree(m: &MixedComplex, n: usize) -> Result<(), CohomologyError> {
    if n < m.cutoff {
        Ok(())
    } else {
        Err(CohomologyError::CutoffExceeded {
            degree: n,
            max: m.cutoff.checked_sub(1),
        })
    }
}

/// Re-verifies `b² = B² = bB + Bb = 0` before any cohomology is taken.
pub fn ensure_mixed(m: &MixedComplex) -> Result<(), CohomologyError> {
    let r = m.verify();
    if r.passed() {
        return Ok(());
    }
    Err(CohomologyError::NotMixed {
        name: m.name.clone(),
        failures: r
            .failures()
            .map(|c| format!("{} in degree {}", c.name, c.degree.unwrap_or(0)))
            .collect(),
    })
}

/// `b` entering degree `n` (zero map from a zero space in degree 0).
fn b_into(m: &MixedComplex, n: usize) -> SparseMatrix {
    if n == 0 {
        SparseMatrix::zeros(m.dims[0], 0)
    } else {
        m.b[n - 1].clone()
    }
}

/// Cohomology of `(M, b)` at `n`; needs `n < cutoff`.
pub fn hochschild_cohomology(m: &MixedComplex, n: usize) -> Result<CohomologyClasses, CohomologyError> {
    check_degree(m, n)?;
    Ok(cohomology_dim(&b_into(m, n), &m.b[n])?)
}

/// Sign `s` of the total differential `b + s B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TotalSign(pub i64);

impl TotalSign {
    /// Both signs square to zero when `bB + Bb = 0`; `+1` is tried first and
    /// kept if it does.
    pub fn arbitrate(m: &MixedComplex) -> Result<TotalSign, CohomologyError> {
        for s in [1, -1] {
            let sign = TotalSign(s);
            let squares_to_zero = (0..m.cutoff.saturating_sub(1)).all(|k| {
                let d2 = total_differential(m, k + 1, sign).mul(&total_differential(m, k, sign));
                d2.is_zero()
            });
            if squares_to_zero {
                return Ok(sign);
            }
        }
        Err(CohomologyError::NotMixed {
            name: m.name.clone(),
            failures: vec![String::from("no sign makes b ± B square to zero")],
        })
    }

    pub fn describe(&self) -> &'static str {
        if self.0 > 0 {
            "D = b + B"
        } else {
            "D = b - B"
        }
    }
}

/// Block layout of `Tot^deg`: `(column k, M-degree p, offset)`.
pub fn total_blocks(m: &MixedComplex, deg: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for k in 0..=deg / 2 {
        let p = deg - 2 * k;
        out.push((k, p, off));
        off += m.dims[p];
    }
    out
}

pub fn total_dim(m: &MixedComplex, deg: usize) -> usize {
    (0..=deg / 2).map(|k| m.dims[deg - 2 * k]).sum()
}

/// `D : Tot^deg -> Tot^{deg+1}`; needs `deg < cutoff`.
pub fn total_differential(m: &MixedComplex, deg: usize, sign: TotalSign) -> SparseMatrix {
    let rows = total_dim(m, deg + 1);
    let cols = total_dim(m, deg);
    let target = total_blocks(m, deg + 1);
    let offset_of = |k: usize| target.iter().find(|t| t.0 == k).map(|t| t.2);
    let mut acc = SparseMatrix::zeros(rows, cols);
    for (k, p, c0) in total_blocks(m, deg) {
        if let Some(r0) = offset_of(k) {
            acc = acc.add(&m.b[p].embed(rows, cols, r0, c0));
        }
        if p >= 1 {
            if let Some(r0) = offset_of(k + 1) {
                let big = m.big_b[p].scale(&Scalar::from_int(sign.0));
                acc = acc.add(&big.embed(rows, cols, r0, c0));
            }
        }
    }
    acc
}

fn total_into(m: &MixedComplex, n: usize, sign: TotalSign) -> SparseMatrix {
    if n == 0 {
        SparseMatrix::zeros(total_dim(m, 0), 0)
    } else {
        total_differential(m, n - 1, sign)
    }
}

/// Cohomology of the total complex at `n` (`n < cutoff`), in `Tot^n`
/// coordinates.
pub fn cyclic_cohomology(m: &MixedComplex, n: usize, sign: TotalSign) -> Result<CohomologyClasses, CohomologyError> {
    check_degree(m, n)?;
    Ok(cohomology_dim(&total_into(m, n, sign), &total_differential(m, n, sign))?)
}

/// Hochschild cohomology read off the first column of the total complex.
pub fn hochschild_via_total(m: &MixedComplex, n: usize, sign: TotalSign) -> Result<CohomologyClasses, CohomologyError> {
    check_degree(m, n)?;
    let column0 = |d: SparseMatrix, deg_out: usize| {
        let rows = m.dims[deg_out];
        let cols = d.ncols();
        SparseMatrix::from_triplets(rows, cols, d.triplets().into_iter().filter(|(r, _, _)| *r < rows))
    };
    let out = column0(total_differential(m, n, sign), n + 1);
    let out = SparseMatrix::from_columns(out.nrows(), out.columns()[..m.dims[n]].to_vec());
    let into = if n == 0 {
        SparseMatrix::zeros(m.dims[0], 0)
    } else {
        let d = column0(total_differential(m, n - 1, sign), n);
        SparseMatrix::from_columns(d.nrows(), d.columns()[..m.dims[n - 1]].to_vec())
    };
    Ok(cohomology_dim(&into, &out)?)
}

/// The column shift `S : Tot^n -> Tot^{n+2}`, column `k` to column `k + 1`.
pub fn periodicity_shift(m: &MixedComplex, n: usize) -> SparseMatrix {
    let rows = total_dim(m, n + 2);
    let cols = total_dim(m, n);
    SparseMatrix::identity(cols).embed(rows, cols, m.dims[n + 2], 0)
}

/// A linear map on cohomology in the bases of class representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub degree: usize,
    pub matrix: SparseMatrix,
    pub injective: bool,
    pub surjective: bool,
}

impl InducedMap {
    pub fn iso(&self) -> bool {
        self.injective && self.surjective
    }

    fn from_chain_level(
        degree: usize,
        f: &SparseMatrix,
        source: &CohomologyClasses,
        target: &CohomologyClasses,
    ) -> Result<InducedMap, CohomologyError> {
        let cols = source
            .representatives
            .iter()
            .map(|r| {
                target.class_of(&f.apply(r)).ok_or_else(|| CohomologyError::NotChainMap {
                    degree,
                    what: String::from("a cocycle is sent to a non-cocycle"),
                })
            })
            .collect::<Result<Vec<SparseVec>, _>>()?;
        let matrix = SparseMatrix::from_columns(target.dim, cols);
        let r = rank(&matrix);
        Ok(InducedMap {
            degree,
            injective: r == source.dim,
            surjective: r == target.dim,
            matrix,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    Hochschild,
    Cyclic,
}

/// The map on `HH^n` or `HC^n` induced by the degree-wise maps `f[k] : M_k -> M'_k`.
/// `f` must commute with `b` (and with `B` for cyclic cohomology) in the
/// degrees that reach `n`; otherwise `NotChainMap` names the first bad degree.
pub fn induced_map(
    f: &[SparseMatrix],
    source: &MixedComplex,
    target: &MixedComplex,
    n: usize,
    theory: Theory,
) -> Result<InducedMap, CohomologyError> {
    check_degree(source, n)?;
    check_degree(target, n)?;
    let top = n + 1;
    if f.len() <= top {
        return Err(CohomologyError::CutoffExceeded {
            degree: n,
            max: f.len().checked_sub(2),
        });
    }
    for (k, fk) in f.iter().enumerate().take(top + 1) {
        if fk.shape() != (target.dims[k], source.dims[k]) {
            return Err(CohomologyError::NotChainMap {
                degree: k,
                what: String::from("wrong shape"),
            });
        }
    }
    for k in 0..top {
        if f[k + 1].mul(&source.b[k]) != target.b[k].mul(&f[k]) {
            return Err(CohomologyError::NotChainMap {
                degree: k,
                what: String::from("f b != b f"),
            });
        }
    }
    match theory {
        Theory::Hochschild => {
            let s = hochschild_cohomology(source, n)?;
            let t = hochschild_cohomology(target, n)?;
            InducedMap::from_chain_level(n, &f[n], &s, &t)
        }
        Theory::Cyclic => {
            for k in 1..=top {
                if f[k - 1].mul(&source.big_b[k]) != target.big_b[k].mul(&f[k]) {
                    return Err(CohomologyError::NotChainMap {
                        degree: k,
                        what: String::from("f B != B f"),
                    });
                }
            }
            let ss = TotalSign::arbitrate(source)?;
            let ts = TotalSign::arbitrate(target)?;
            let s = cyclic_cohomology(source, n, ss)?;
            let t = cyclic_cohomology(target, n, ts)?;
            let tot = total_map(f, source, target, n);
            InducedMap::from_chain_level(n, &tot, &s, &t)
        }
    }
}

/// `f` applied column by column on `Tot^n`.
pub fn total_map(f: &[SparseMatrix], source: &MixedComplex, target: &MixedComplex, n: usize) -> SparseMatrix {
    let rows = total_dim(target, n);
    let cols = total_dim(source, n);
    let mut acc = SparseMatrix::zeros(rows, cols);
    for ((_, p, c0), (_, _, r0)) in total_blocks(source, n).into_iter().zip(total_blocks(target, n)) {
        acc = acc.add(&f[p].embed(rows, cols, r0, c0));
    }
    acc
}

/// One degree of a [`CohomologyTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: usize,
    pub hh: usize,
    pub hc: usize,
    /// Cocycles in `M_n` representing a basis of `HH^n`.
    pub hh_representatives: Vec<SparseVec>,
    /// Cocycles in `Tot^n` representing a basis of `HC^n`.
    pub hc_representatives: Vec<SparseVec>,
    /// `degree < N - 1`.
    pub truncation_reliable: bool,
    /// `S : HC^{n-2} -> HC^n`, for `n >= 2`.
    pub s_map: Option<InducedMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilization {
    pub parity: usize,
    /// The last two `S`-maps of this parity below `N` are isomorphisms.
    pub stabilized: bool,
    /// `HC` in the highest degree of this parity below `N`: the periodic
    /// estimate, meaningful only when `stabilized` and always cutoff-dependent.
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub complex: String,
    /// How `B` was obtained.
    pub convention: String,
    pub total_sign: TotalSign,
    /// Degrees `0..N` are reported.
    pub max_degree: usize,
    pub rows: Vec<DegreeRow>,
    pub stabilization: [Stabilization; 2],
}

impl CohomologyTable {
    pub fn hh(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.hh).collect()
    }

    pub fn hc(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.hc).collect()
    }
}

/// `HH^n`, `HC^n` for `n <= N - 1`, the `S`-maps between them and the
/// per-parity stabilization verdict.
pub fn periodicity_and_hp(m: &MixedComplex, big_n: usize) -> Result<CohomologyTable, CohomologyError> {
    if big_n > m.cutoff || big_n == 0 {
        return Err(CohomologyError::CutoffExceeded {
            degree: big_n,
            max: m.cutoff.checked_sub(1),
        });
    }
    ensure_mixed(m)?;
    let m = &m.truncate(big_n);
    let sign = TotalSign::arbitrate(m)?;
    let mut classes = Vec::with_capacity(big_n);
    let mut rows: Vec<DegreeRow> = Vec::with_capacity(big_n);
    for n in 0..big_n {
        let hh = hochschild_cohomology(m, n)?;
        let hc = cyclic_cohomology(m, n, sign)?;
        let s_map = if n >= 2 {
            let s = periodicity_shift(m, n - 2);
            Some(InducedMap::from_chain_level(n, &s, &classes[n - 2], &hc)?)
        } else {
            None
        };
        rows.push(DegreeRow {
            degree: n,
            hh: hh.dim,
            hc: hc.dim,
            hh_representatives: hh.representatives,
            hc_representatives: hc.representatives.clone(),
            truncation_reliable: n + 1 < big_n,
            s_map,
        });
        classes.push(hc);
    }
    let stabilization = [0, 1].map(|parity| {
        let top = (0..big_n).rev().find(|n| n % 2 == parity);
        let Some(top) = top else {
            return Stabilization {
                parity,
                stabilized: false,
                dim: 0,
            };
        };
        let iso = |n: usize| rows[n].s_map.as_ref().is_some_and(InducedMap::iso);
        Stabilization {
            parity,
            stabilized: top >= 4 && iso(top) && iso(top - 2),
            dim: rows[top].hc,
        }
    });
    Ok(CohomologyTable {
        complex: m.name.clone(),
        convention: m.convention.clone(),
        total_sign: sign,
        max_degree: big_n - 1,
        rows,
        stabilization,
    })
}
