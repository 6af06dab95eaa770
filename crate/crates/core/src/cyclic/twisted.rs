use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use alloc::format;

use super::cm::tensor_map;
use super::mixed::{arbitrate, candidates, MixedArbitration, MixedComplex};
use super::{CocyclicModule, CyclicError, CyclicPower};
use crate::hopf::{flat_index, Algebra};
use crate::linalg::{kernel, restrict_in_frames, Accumulator, Frame, SparseMatrix, SparseVec};

/// Measured relation satisfied by `τ_n^{n+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauRelation {
    /// `τ^{n+1} = id` and `f^{⊗(n+1)} = id`.
    IdentityAndTwist,
    Identity,
    /// `τ^{n+1} = f^{⊗(n+1)} ≠ id`.
    TwistPower,
    Other,
}

impl TauRelation {
    pub fn measure(power: &SparseMatrix, twist: &SparseMatrix) -> TauRelation {
        let id = power.is_identity();
        match (id, power == twist) {
            (true, true) => TauRelation::IdentityAndTwist,
            (true, false) => TauRelation::Identity,
            (false, true) => TauRelation::TwistPower,
            (false, false) => TauRelation::Other,
        }
    }
}

impl fmt::Display for TauRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TauRelation::IdentityAndTwist => "tau^(n+1) = f^(n+1) = id",
            TauRelation::Identity => "tau^(n+1) = id != f^(n+1)",
            TauRelation::TwistPower => "tau^(n+1) = f^(n+1) != id",
            TauRelation::Other => "tau^(n+1) is neither id nor f^(n+1)",
        })
    }
}

/// The `f`-twisted cyclic module of `A`: on `A^{⊗(n+1)}`,
/// `d_i` multiplies `a_i a_{i+1}` (`i < n`), `d_n(a) = (f(a_n) a_0, a_1, ..., a_{n-1})`,
/// `s_i` inserts `1` after `a_i`, `t_n(a) = (f(a_n), a_0, ..., a_{n-1})`.
///
/// Stored as its dual cocyclic module (all maps transposed), so the
/// cohomology computed from it is the cyclic cohomology of `A` twisted by
/// `f`. The module is paracyclic: `τ^{n+1}` is measured against
/// `f^{⊗(n+1)}`, never assumed.
pub fn f_twisted_module(alg: &Algebra, f: &SparseMatrix, cutoff: usize) -> Result<CocyclicModule, CyclicError> {
    alg.check_automorphism(f).map_err(CyclicError::NotAutomorphism)?;
    let d = alg.dim();
    let size = |k: usize| d.pow(k as u32);
    // d_i : A^{⊗(k+1)} -> A^{⊗k}
    let face = |k: usize, i: usize| -> SparseMatrix {
        tensor_map(d, k + 1, size(k), |s| {
            // the product replacing slots i, i+1 (or f(a_k) a_0), then the rest
            let (prod, head, tail) = if i < k {
                (alg.mul_basis(s[i], s[i + 1]).clone(), &s[..i], &s[i + 2..])
            } else {
                (alg.mul(f.column(s[k]), &SparseVec::unit(s[0])), &s[..0], &s[1..k])
            };
            let mut acc = Accumulator::new();
            for (p, c) in prod.iter() {
                let t: Vec<usize> = head.iter().copied().chain([p]).chain(tail.iter().copied()).collect();
                acc.add(flat_index(&t, d), c);
            }
            acc.into_vec()
        })
    };
    // s_i : A^{⊗(k+1)} -> A^{⊗(k+2)}
    let degeneracy = |k: usize, i: usize| -> SparseMatrix {
        tensor_map(d, k + 1, size(k + 2), |s| {
            let mut t = s.to_vec();
            t.insert(i + 1, 0);
            SparseVec::unit(flat_index(&t, d))
        })
    };
    let rotation = |k: usize| -> SparseMatrix {
        tensor_map(d, k + 1, size(k + 1), |s| {
            let mut acc = Accumulator::new();
            for (p, c) in f.column(s[k]).iter() {
                let mut t = Vec::with_capacity(k + 1);
                t.push(p);
                t.extend_from_slice(&s[..k]);
                acc.add(flat_index(&t, d), c);
            }
            acc.into_vec()
        })
    };
    let faces = (0..cutoff)
        .map(|n| (0..=n + 1).map(|i| face(n + 1, i).transpose()).collect())
        .collect();
    let degeneracies = (0..cutoff)
        .map(|n| (0..=n).map(|i| degeneracy(n, i).transpose()).collect())
        .collect();
    let cyclic = (0..=cutoff).map(|n| rotation(n).transpose()).collect();
    let mut power = Vec::with_capacity(cutoff + 1);
    let mut fp = f.clone();
    for _ in 0..=cutoff {
        power.push(fp.transpose());
        fp = fp.kron(f);
    }
    Ok(CocyclicModule {
        name: String::from("f-twisted"),
        cutoff,
        slot_labels: alg.labels().to_vec(),
        arity_offset: 1,
        normalized: false,
        faces,
        degeneracies,
        cyclic,
        power: CyclicPower::Twist(power),
    })
}

/// Mixed complex on the cochains fixed by `τ_n^{n+1}`, in the canonical
/// bases of those subspaces.
#[derive(Clone, Debug)]
pub struct InvariantMixed {
    pub mixed: MixedComplex,
    pub arbitration: MixedArbitration,
    /// Basis of `ker(τ_n^{n+1} - 1)` inside `C^n`.
    pub frames: Vec<Frame>,
}

/// Restricts a paracyclic module to `ker(τ_n^{n+1} - 1)`, which the
/// structure maps preserve and on which the cyclic relations all hold, and
/// arbitrates `B` there. For a cyclic module this is the whole module.
pub fn invariant_mixed_complex(m: &CocyclicModule) -> Result<InvariantMixed, CyclicError> {
    let frames: Vec<Frame> = (0..=m.cutoff)
        .map(|n| {
            let t = m.cyclic[n].pow(n as u32 + 1);
            Frame::from_subspace(&kernel(&t.sub(&SparseMatrix::identity(m.dim(n)))))
        })
        .collect();
    let restricted = candidates(m)?
        .into_iter()
        .map(|(name, (b, big_b))| {
            let r = || -> Result<_, String> {
                let b = b
                    .iter()
                    .enumerate()
                    .map(|(n, x)| restrict_in_frames(x, &frames[n], &frames[n + 1]).map_err(|e| format!("b in degree {n}: {e}")))
                    .collect::<Result<Vec<_>, _>>()?;
                let big_b = big_b
                    .iter()
                    .enumerate()
                    .map(|(n, x)| {
                        if n == 0 {
                            Ok(SparseMatrix::zeros(0, frames[0].len()))
                        } else {
                            restrict_in_frames(x, &frames[n], &frames[n - 1]).map_err(|e| format!("B in degree {n}: {e}"))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((b, big_b))
            };
            (name, r())
        })
        .collect();
    let (mixed, arbitration) = arbitrate(&format!("{}-invariant", m.name), restricted)?;
    Ok(InvariantMixed {
        mixed,
        arbitration,
        frames,
    })
}
