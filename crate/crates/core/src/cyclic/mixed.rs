use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{CocyclicModule, CyclicError};
use crate::linalg::SparseMatrix;
use crate::report::IdentityReport;

/// A mixed complex in cochain convention: `b[n] : M_n -> M_{n+1}` for
/// `n < cutoff` and `big_b[n] : M_n -> M_{n-1}` for `n <= cutoff`
/// (`big_b[0]` has zero rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedComplex {
    pub name: String,
    pub cutoff: usize,
    pub dims: Vec<usize>,
    pub b: Vec<SparseMatrix>,
    pub big_b: Vec<SparseMatrix>,
    /// How `B` was obtained.
    pub convention: String,
}

impl MixedComplex {
    pub fn new(name: &str, b: Vec<SparseMatrix>, big_b: Vec<SparseMatrix>, convention: String) -> MixedComplex {
        let cutoff = b.len();
        assert_eq!(big_b.len(), cutoff + 1, "need B in every degree up to the cutoff");
        let dims: Vec<usize> = big_b.iter().map(|m| m.ncols()).collect();
        for (n, m) in b.iter().enumerate() {
            assert_eq!(m.shape(), (dims[n + 1], dims[n]), "b has the wrong shape in degree {n}");
        }
        for (n, m) in big_b.iter().enumerate().skip(1) {
            assert_eq!(m.shape(), (dims[n - 1], dims[n]), "B has the wrong shape in degree {n}");
        }
        MixedComplex {
            name: name.into(),
            cutoff,
            dims,
            b,
            big_b,
            convention,
        }
    }

    /// The same complex with only degrees `<= cutoff`.
    pub fn truncate(&self, cutoff: usize) -> MixedComplex {
        let cutoff = cutoff.min(self.cutoff);
        MixedComplex {
            name: self.name.clone(),
            cutoff,
            dims: self.dims[..=cutoff].to_vec(),
            b: self.b[..cutoff].to_vec(),
            big_b: self.big_b[..=cutoff].to_vec(),
            convention: self.convention.clone(),
        }
    }

    /// `b² = 0`, `B² = 0`, `bB + Bb = 0` in every degree where both sides
    /// are inside the cutoff.
    pub fn verify(&self) -> IdentityReport {
        let mut r = IdentityReport::new();
        for (n, check) in mixed_checks(&self.b, &self.big_b) {
            let (name, diff) = check;
            r.record(name, Some(n), diff, String::new());
        }
        r
    }
}

type Check = (&'static str, Option<(usize, usize)>);

fn mixed_checks(b: &[SparseMatrix], big_b: &[SparseMatrix]) -> Vec<(usize, Check)> {
    let cutoff = b.len();
    let mut out = Vec::new();
    for n in 0..=cutoff {
        let dim = big_b[n].ncols();
        if n + 1 < cutoff {
            let bb = b[n + 1].mul(&b[n]);
            out.push((n, ("b^2 = 0", bb.first_difference(&SparseMatrix::zeros(bb.nrows(), dim)))));
        }
        if n >= 2 {
            let bb = big_b[n - 1].mul(&big_b[n]);
            out.push((n, ("B^2 = 0", bb.first_difference(&SparseMatrix::zeros(bb.nrows(), dim)))));
        }
        if n < cutoff {
            let mut s = big_b[n + 1].mul(&b[n]);
            if n >= 1 {
                s = s.add(&b[n - 1].mul(&big_b[n]));
            }
            out.push((n, ("bB + Bb = 0", s.first_difference(&SparseMatrix::zeros(dim, dim)))));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub name: String,
    pub accepted: bool,
    pub reason: String,
}

/// Which formula for `B` was kept, and why the others were not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedArbitration {
    pub candidates: Vec<Candidate>,
    pub chosen: String,
}

pub(super) type Differentials = (Vec<SparseMatrix>, Vec<SparseMatrix>);

/// Tries each candidate `(b, B)` in order and keeps the first one that is a
/// mixed complex. A candidate whose `B` vanishes identically is only kept if
/// every admissible candidate's does.
pub(super) fn arbitrate(
    name: &str,
    candidates: Vec<(String, Result<Differentials, String>)>,
) -> Result<(MixedComplex, MixedArbitration), CyclicError> {
    let mut report = Vec::new();
    let mut admissible: Vec<(usize, Differentials)> = Vec::new();
    for (i, (cname, built)) in candidates.into_iter().enumerate() {
        let (accepted, reason) = match built {
            Err(why) => (false, why),
            Ok((b, big_b)) => match mixed_checks(&b, &big_b).into_iter().find(|(_, (_, d))| d.is_some()) {
                Some((n, (what, _))) => (false, format!("{what} fails in degree {n}")),
                None => {
                    let zero = big_b.iter().all(|m| m.is_zero());
                    admissible.push((i, (b, big_b)));
                    (true, if zero { "vanishes identically".into() } else { String::new() })
                }
            },
        };
        report.push(Candidate {
            name: cname,
            accepted,
            reason,
        });
    }
    let pick = admissible
        .iter()
        .position(|(_, (_, m))| m.iter().any(|x| !x.is_zero()))
        .or(if admissible.is_empty() { None } else { Some(0) });
    let Some(pos) = pick else {
        let detail = report
            .iter()
            .map(|c| format!("{}: {}", c.name, c.reason))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(CyclicError::NoValidMixedStructure { detail });
    };
    let (idx, (b, big_b)) = admissible.swap_remove(pos);
    for (i, c) in report.iter_mut().enumerate() {
        if c.accepted && i != idx {
            c.accepted = false;
            if c.reason.is_empty() {
                c.reason = "admissible, not first".into();
            }
        }
    }
    let chosen = report[idx].name.clone();
    let mixed = MixedComplex::new(name, b, big_b, chosen.clone());
    Ok((
        mixed,
        MixedArbitration {
            candidates: report,
            chosen,
        },
    ))
}

/// Smallest cutoff at which every candidate `B` can be told apart: the
/// `τ`-orderings first fail `bB + Bb = 0` in degree 3.
pub const ARBITRATION_DEPTH: usize = 4;

/// `b = sum (-1)^i δ_i` and `B` chosen among the orderings
/// `N (1 - τ) σ̃`, `N σ̃ (1 - τ)`, with `τ` or its signed version `λ`.
/// Compressed (normalized) modules are refused: their structure maps do not
/// determine `B`, see [`super::NormalizedModule::mixed`].
///
/// Admissibility is tested through degree `cutoff - 1` only; build the
/// module to at least [`ARBITRATION_DEPTH`] and truncate afterwards.
pub fn mixed_of_cocyclic(m: &CocyclicModule) -> Result<(MixedComplex, MixedArbitration), CyclicError> {
    let candidates = candidates(m)?.into_iter().map(|(n, d)| (n, Ok(d))).collect();
    arbitrate(&m.name, candidates)
}

pub(super) fn candidates(m: &CocyclicModule) -> Result<Vec<(String, Differentials)>, CyclicError> {
    if m.normalized {
        return Err(CyclicError::NoValidMixedStructure {
            detail: "compressed structure maps do not determine B".into(),
        });
    }
    let top = m.cutoff;
    let b: Vec<SparseMatrix> = (0..top).map(|n| m.coboundary(n)).collect();
    let build = |f: &dyn Fn(usize) -> SparseMatrix| -> Vec<SparseMatrix> {
        (0..=top)
            .map(|n| {
                if n == 0 {
                    SparseMatrix::zeros(0, m.dim(0))
                } else {
                    f(n)
                }
            })
            .collect()
    };
    let one_minus = |n: usize, signed: bool| {
        let t = if signed { m.signed_cyclic(n) } else { m.cyclic[n].clone() };
        SparseMatrix::identity(m.dim(n)).sub(&t)
    };
    let mut out = Vec::new();
    for signed in [false, true] {
        let t = if signed { "lambda" } else { "tau" };
        out.push((
            format!("N (1 - {t}) sigma~"),
            (b.clone(), build(&|n| m.norm(n - 1).mul(&one_minus(n - 1, signed)).mul(&m.extra_degeneracy(n)))),
        ));
        out.push((
            format!("N sigma~ (1 - {t})"),
            (b.clone(), build(&|n| m.norm(n - 1).mul(&m.extra_degeneracy(n)).mul(&one_minus(n, signed)))),
        ));
    }
    Ok(out)
}
