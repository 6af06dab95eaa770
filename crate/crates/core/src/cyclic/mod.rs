//! Truncated cocyclic modules and mixed complexes: the Connes–Moscovici
//! module of a modular pair, its normalization, the twisted cyclic module of
//! an algebra automorphism, and the mixed complexes on coinvariant forms.
//!
//! Index conventions: `faces[n][i] : C^n -> C^{n+1}` for `0 <= i <= n+1`,
//! `degeneracies[n][i] : C^{n+1} -> C^n` for `0 <= i <= n`, `cyclic[n]` is
//! `τ_n` on `C^n`.

mod cm;
mod coinvariant;
mod mixed;
mod twisted;


use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use cm::{connes_moscovici_module, normalized_cm_module, NormalizedModule};
pub use coinvariant::{coinvariant_mixed_complex, ChainMapReport, CoinvariantComplexes, Intertwining};
pub use mixed::{mixed_of_cocyclic, ARBITRATION_DEPTH, Candidate, MixedArbitration, MixedComplex};
pub use twisted::{f_twisted_module, invariant_mixed_complex, InvariantMixed, TauRelation};

use crate::hopf::{multi_index, HopfError};
use crate::linalg::SparseMatrix;
use crate::omega::OmegaError;
use crate::report::{IdentityReport, Status};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicError {
    /// No candidate `B` makes `(b, B)` a mixed complex.
    NoValidMixedStructure { detail: String },
    NotAutomorphism(HopfError),
    /// An operator leaves the coinvariant forms (impossible for a modular
    /// pair in involution).
    NotStable { what: String },
    Omega(OmegaError),
}

impl From<OmegaError> for CyclicError {
    fn from(e: OmegaError) -> Self {
        CyclicError::Omega(e)
    }
}

impl fmt::Display for CyclicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclicError::NoValidMixedStructure { detail } => write!(f, "no valid mixed structure: {detail}"),
            CyclicError::NotAutomorphism(e) => write!(f, "not an algebra automorphism: {e}"),
            CyclicError::NotStable { what } => write!(f, "not stable: {what}"),
            CyclicError::Omega(e) => write!(f, "{e}"),
        }
    }
}

/// What `τ_n^{n+1}` is expected to be.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyclicPower {
    /// `τ_n^{n+1} = id` is promised (pair in involution, untwisted module).
    Identity,
    /// No promise: measured and reported only.
    Unpromised,
    /// Paracyclic: `τ_n^{n+1}` is measured against these matrices (`f^{⊗(n+1)}`).
    Twist(Vec<SparseMatrix>),
}

#[derive(Clone, Debug)]
pub struct CocyclicModule {
    pub name: String,
    pub cutoff: usize,
    /// Labels of one tensor slot; `C^n` has basis `slot_labels^{⊗(n + arity_offset)}`.
    pub slot_labels: Vec<String>,
    pub arity_offset: usize,
    /// Structure maps compressed to normalized cochains: degeneracies vanish
    /// and the cyclic relations are not expected to hold.
    pub normalized: bool,
    pub faces: Vec<Vec<SparseMatrix>>,
    pub degeneracies: Vec<Vec<SparseMatrix>>,
    pub cyclic: Vec<SparseMatrix>,
    pub power: CyclicPower,
}

impl CocyclicModule {
    pub fn dim(&self, n: usize) -> usize {
        self.cyclic[n].ncols()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.cutoff).map(|n| self.dim(n)).collect()
    }

    pub fn arity(&self, n: usize) -> usize {
        n + self.arity_offset
    }

    pub fn basis_label(&self, n: usize, idx: usize) -> String {
        let slots = multi_index(idx, self.slot_labels.len(), self.arity(n));
        let parts: Vec<&str> = slots.iter().map(|&s| self.slot_labels[s].as_str()).collect();
        format!("({})", parts.join(", "))
    }

    /// `λ_n = (-1)^n τ_n`.
    pub fn signed_cyclic(&self, n: usize) -> SparseMatrix {
        self.cyclic[n].scale(&Scalar::sign(n))
    }

    /// `N_n = sum_{i=0}^n λ_n^i`.
    pub fn norm(&self, n: usize) -> SparseMatrix {
        let lam = self.signed_cyclic(n);
        let mut acc = SparseMatrix::identity(self.dim(n));
        let mut p = SparseMatrix::identity(self.dim(n));
        for _ in 0..n {
            p = lam.mul(&p);
            acc = acc.add(&p);
        }
        acc
    }

    /// `σ̃_n = σ_{n-1} τ_n : C^n -> C^{n-1}` (`n >= 1`).
    pub fn extra_degeneracy(&self, n: usize) -> SparseMatrix {
        self.degeneracies[n - 1][n - 1].mul(&self.cyclic[n])
    }

    /// The same module with only degrees `<= cutoff`.
    pub fn truncate(&self, cutoff: usize) -> CocyclicModule {
        let cutoff = cutoff.min(self.cutoff);
        CocyclicModule {
            name: self.name.clone(),
            cutoff,
            slot_labels: self.slot_labels.clone(),
            arity_offset: self.arity_offset,
            normalized: self.normalized,
            faces: self.faces[..cutoff].to_vec(),
            degeneracies: self.degeneracies[..cutoff].to_vec(),
            cyclic: self.cyclic[..=cutoff].to_vec(),
            power: match &self.power {
                CyclicPower::Twist(fs) => CyclicPower::Twist(fs[..=cutoff].to_vec()),
                p => p.clone(),
            },
        }
    }

    /// `b_n = sum_i (-1)^i δ_i : C^n -> C^{n+1}` (`n < cutoff`).
    pub fn coboundary(&self, n: usize) -> SparseMatrix {
        let mut acc = SparseMatrix::zeros(self.dim(n + 1), self.dim(n));
        for (i, f) in self.faces[n].iter().enumerate() {
            acc = acc.combine(&Scalar::one(), f, &Scalar::sign(i));
        }
        acc
    }
}

fn first_failure<I>(pairs: I) -> (Option<(usize, usize)>, String)
where
    I: IntoIterator<Item = (String, SparseMatrix, SparseMatrix)>,
{
    for (what, l, r) in pairs {
        if let Some(w) = l.first_difference(&r) {
            return (Some(w), what);
        }
    }
    (None, String::new())
}

/// Checks the cosimplicial and cyclic relations and measures `τ_n^{n+1}`.
pub fn verify_cyclic_identities(m: &CocyclicModule) -> IdentityReport {
    let mut r = IdentityReport::new();
    let top = m.cutoff;
    let f = &m.faces;
    let s = &m.degeneracies;
    let t = &m.cyclic;
    for n in 0..=top {
        let g = Some(n);
        if m.normalized {
            r.note(
                "cosimplicial and cyclic relations",
                g,
                Status::Skipped,
                "compressed structure maps of normalized cochains".into(),
            );
        } else {
            if n >= 1 {
                // C^{n-1} -> C^{n+1}
                if n < top {
                    let pairs = (0..=n + 1).flat_map(|j| {
                        (0..j).map(move |i| {
                            (
                                format!("i={i}, j={j}"),
                                f[n][j].mul(&f[n - 1][i]),
                                f[n][i].mul(&f[n - 1][j - 1]),
                            )
                        })
                    });
                    let (w, d) = first_failure(pairs);
                    r.record("delta_j delta_i = delta_i delta_(j-1), i < j", g, w, d);
                }
                let pairs = (1..=n).map(|i| {
                    (format!("i={i}"), t[n].mul(&f[n - 1][i]), f[n - 1][i - 1].mul(&t[n - 1]))
                });
                let (w, d) = first_failure(pairs);
                r.record("tau delta_i = delta_(i-1) tau", g, w, d);
                let w = t[n].mul(&f[n - 1][0]).first_difference(&f[n - 1][n]);
                r.record("tau delta_0 = delta_n", g, w, String::new());
            }
            if n + 1 < top {
                // C^{n+2} -> C^n
                let pairs = (0..=n).flat_map(|j| {
                    (0..=j).map(move |i| {
                        (
                            format!("i={i}, j={j}"),
                            s[n][j].mul(&s[n + 1][i]),
                            s[n][i].mul(&s[n + 1][j + 1]),
                        )
                    })
                });
                let (w, d) = first_failure(pairs);
                r.record("sigma_j sigma_i = sigma_i sigma_(j+1), i <= j", g, w, d);
            }
            if n < top {
                // σ_j δ_i on C^n
                let id = SparseMatrix::identity(m.dim(n));
                let pairs = (0..=n).flat_map(|j| {
                    (0..=n + 1).map(move |i| (i, j))
                });
                let mut found = (None, String::new());
                for (i, j) in pairs {
                    let lhs = s[n][j].mul(&f[n][i]);
                    let rhs = if i < j {
                        f[n - 1][i].mul(&s[n - 1][j - 1])
                    } else if i == j || i == j + 1 {
                        id.clone()
                    } else {
                        f[n - 1][i - 1].mul(&s[n - 1][j])
                    };
                    if let Some(w) = lhs.first_difference(&rhs) {
                        found = (Some(w), format!("i={i}, j={j}"));
                        break;
                    }
                }
                r.record("sigma_j delta_i relations", g, found.0, found.1);
                let pairs = (1..=n).map(|i| {
                    (format!("i={i}"), t[n].mul(&s[n][i]), s[n][i - 1].mul(&t[n + 1]))
                });
                let (w, d) = first_failure(pairs);
                r.record("tau sigma_i = sigma_(i-1) tau", g, w, d);
                let w = t[n].mul(&s[n][0]).first_difference(&s[n][n].mul(&t[n + 1].pow(2)));
                r.record("tau sigma_0 = sigma_n tau^2", g, w, String::new());
            }
        }

        let power = t[n].pow(n as u32 + 1);
        let id = SparseMatrix::identity(m.dim(n));
        match &m.power {
            CyclicPower::Identity => {
                r.record("tau^(n+1) = id", g, power.first_difference(&id), String::new());
            }
            CyclicPower::Unpromised => {
                let holds = power == id;
                r.note(
                    "tau^(n+1) = id",
                    g,
                    Status::Info,
                    format!("measured: {}", if holds { "holds" } else { "fails" }),
                );
            }
            CyclicPower::Twist(fs) => {
                let rel = TauRelation::measure(&power, &fs[n]);
                r.note("tau^(n+1) relation", g, Status::Info, format!("measured: {rel}"));
            }
        }
    }
    r
}
