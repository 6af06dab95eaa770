use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::cm::{normalized_cm_module, NormalizedModule};
use super::mixed::{arbitrate, mixed_of_cocyclic, Differentials, MixedArbitration, MixedComplex, ARBITRATION_DEPTH};
use super::CyclicError;
use crate::hopf::Character;
use crate::linalg::{restrict_in_frames, Frame, SparseMatrix, SparseVec};
use crate::omega::{Calculus, OmegaError, OpKind, Side, SignFit, TwistContext};
use crate::report::IdentityReport;
use crate::scalar::Scalar;

/// One operator correspondence in one degree: `lhs = sign · rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwining {
    pub name: String,
    pub degree: usize,
    pub sign: SignFit,
}

/// The comparison between the normalized Connes–Moscovici mixed complex and
/// the module-facing mixed complex on coinvariant forms.
#[derive(Clone, Debug)]
pub struct ChainMapReport {
    /// `φ_n`: normalized coordinates -> coinvariant frame coordinates.
    pub maps: Vec<SparseMatrix>,
    /// Diagonal sign of `φ_n`.
    pub signs: Vec<i64>,
    pub intertwinings: Vec<Intertwining>,
    /// Exact checks `φ b̃' = d_ξ φ` and `φ B̃' = (Σ κ'_ξ^j b'_ξ) φ`.
    pub certified: IdentityReport,
}

impl ChainMapReport {
    pub fn passed(&self) -> bool {
        self.certified.passed() && self.intertwinings.iter().all(|i| i.sign != SignFit::Neither)
    }
}

#[derive(Clone, Debug)]
pub struct CoinvariantComplexes {
    pub module: NormalizedModule,
    /// Mixed complex of the full module `H♯_(δ,σ)`.
    pub cm: MixedComplex,
    pub cm_arbitration: MixedArbitration,
    pub normalized: MixedComplex,
    pub normalized_report: IdentityReport,
    /// (A): degree-raising and -lowering operators restricted from forms,
    /// as chosen by arbitration.
    pub form_native: MixedComplex,
    pub form_native_arbitration: MixedArbitration,
    /// (B): `d_ξ` (raising) and `Σ κ'_ξ^j b'_ξ` (lowering) restricted.
    pub module_facing: MixedComplex,
    pub chain_map: ChainMapReport,
    /// Frames of `Ω^R_{ξ,σ,n}` used for the coordinates, `n <= cutoff`.
    pub frames: Vec<Frame>,
}

fn restrict(m: &SparseMatrix, from: &Frame, to: &Frame) -> Result<SparseMatrix, OmegaError> {
    Ok(restrict_in_frames(m, from, to)?)
}

/// Mixed complexes on the σ-coinvariants `Ω^R_{ξ,σ}` (`ξ = δ ∘ S`) and the
/// chain map identifying the module-facing one with the normalized
/// Connes–Moscovici complex through the basis `π(u_{i_1}) ... π(u_{i_n}) σ`.
///
/// Everything is built and checked to at least [`ARBITRATION_DEPTH`], then
/// truncated to `cutoff`.
pub fn coinvariant_mixed_complex(
    calc: &Calculus,
    delta: &Character,
    sigma: &SparseVec,
    cutoff: usize,
) -> Result<CoinvariantComplexes, CyclicError> {
    let c = build(calc, delta, sigma, cutoff.max(ARBITRATION_DEPTH))?;
    Ok(c.truncate(cutoff))
}

impl CoinvariantComplexes {
    fn truncate(self, cutoff: usize) -> CoinvariantComplexes {
        if cutoff >= self.cm.cutoff {
            return self;
        }
        let t = |m: &MixedComplex| m.truncate(cutoff);
        let mut chain_map = self.chain_map;
        chain_map.maps.truncate(cutoff + 1);
        chain_map.signs.truncate(cutoff + 1);
        CoinvariantComplexes {
            module: self.module.truncate(cutoff),
            cm: t(&self.cm),
            cm_arbitration: self.cm_arbitration,
            normalized: t(&self.normalized),
            normalized_report: self.normalized_report,
            form_native: t(&self.form_native),
            form_native_arbitration: self.form_native_arbitration,
            module_facing: t(&self.module_facing),
            chain_map,
            frames: self.frames[..=cutoff].to_vec(),
        }
    }
}

fn build(calc: &Calculus, delta: &Character, sigma: &SparseVec, cutoff: usize) -> Result<CoinvariantComplexes, CyclicError> {
    let hopf = calc.hopf();
    let module = normalized_cm_module(hopf, delta, sigma, cutoff);
    let (cm, cm_arbitration) = mixed_of_cocyclic(&module.full)?;
    let (normalized, normalized_report) = module.mixed(&cm)?;

    let ctx = TwistContext::new(hopf, hopf.character_inverse(delta));
    let frames = (0..=cutoff)
        .map(|n| Ok(calc.coinvariant_subspace(Side::Right, n, sigma, Some(delta))?.frame))
        .collect::<Result<Vec<Frame>, OmegaError>>()?;
    let op = |k: OpKind, n: usize| calc.op(k, n, Some(&ctx));

    let raise = |k: OpKind| -> Result<Vec<SparseMatrix>, String> {
        (0..cutoff)
            .map(|n| restrict(&op(k, n), &frames[n], &frames[n + 1]).map_err(|e| format!("{k} in degree {n}: {e}")))
            .collect()
    };
    let lower = |f: &dyn Fn(usize) -> SparseMatrix, what: &str| -> Result<Vec<SparseMatrix>, String> {
        (0..=cutoff)
            .map(|n| {
                if n == 0 {
                    Ok(SparseMatrix::zeros(0, frames[0].len()))
                } else {
                    restrict(&f(n), &frames[n], &frames[n - 1]).map_err(|e| format!("{what} in degree {n}: {e}"))
                }
            })
            .collect()
    };
    let plain = |k: OpKind| move |n: usize| (*op(k, n)).clone();
    let pair = |r: Result<Vec<SparseMatrix>, String>, l: Result<Vec<SparseMatrix>, String>| -> Result<Differentials, String> {
        Ok((r?, l?))
    };

    let candidates = alloc::vec![
        (
            String::from("raise B_xi, lower b'_xi"),
            pair(raise(OpKind::Connes), lower(&plain(OpKind::HochschildPrime), "b'_xi")),
        ),
        (
            String::from("raise B'_xi, lower b'_xi"),
            pair(raise(OpKind::ConnesPrime), lower(&plain(OpKind::HochschildPrime), "b'_xi")),
        ),
        (
            String::from("raise B_xi, lower b_xi"),
            pair(raise(OpKind::Connes), lower(&plain(OpKind::Hochschild), "b_xi")),
        ),
    ];
    let (form_native, form_native_arbitration) = arbitrate("coinvariant-forms", candidates)?;

    // Σ_{j<n} κ'_ξ^j b'_ξ on Ω_n
    let kappa_sum = |n: usize| -> SparseMatrix {
        let bp = op(OpKind::HochschildPrime, n);
        let kp = op(OpKind::KaroubiPrime, n - 1);
        let mut acc = SparseMatrix::zeros(bp.nrows(), bp.ncols());
        let mut cur = (*bp).clone();
        for _ in 0..n {
            acc = acc.add(&cur);
            cur = kp.mul(&cur);
        }
        acc
    };
    let up = raise(OpKind::D).map_err(|what| CyclicError::NotStable { what })?;
    let down = lower(&kappa_sum, "sum kappa'_xi^j b'_xi").map_err(|what| CyclicError::NotStable { what })?;
    let module_facing = MixedComplex::new(
        "coinvariant",
        up,
        down,
        String::from("d_xi raising, sum kappa'_xi^j b'_xi lowering"),
    );

    let chain_map = compare(&normalized, &module_facing);
    Ok(CoinvariantComplexes {
        module,
        cm,
        cm_arbitration,
        normalized,
        normalized_report,
        form_native,
        form_native_arbitration,
        module_facing,
        chain_map,
        frames,
    })
}

/// Finds diagonal signs `φ_n = ±1` making `φ` a map of mixed complexes
/// from `src` to `dst` (same dimensions), then certifies it exactly.
fn compare(src: &MixedComplex, dst: &MixedComplex) -> ChainMapReport {
    let top = src.cutoff;
    let mut intertwinings = Vec::new();
    let mut b_sign = Vec::new();
    let mut big_sign = alloc::vec![SignFit::Either];
    for n in 0..top {
        let s = SignFit::of(&dst.b[n], &src.b[n]);
        intertwinings.push(Intertwining {
            name: "d_xi = s b~'".into(),
            degree: n,
            sign: s,
        });
        b_sign.push(s);
    }
    for n in 1..=top {
        let s = SignFit::of(&dst.big_b[n], &src.big_b[n]);
        intertwinings.push(Intertwining {
            name: "sum kappa'_xi^j b'_xi = s B~'".into(),
            degree: n,
            sign: s,
        });
        big_sign.push(s);
    }
    // φ_{n+1} b̃' = d φ_n with d = s b̃'  =>  ε_{n+1} = s ε_n;
    // φ_n B̃' = B φ_{n+1} with B = t B̃' =>  ε_{n+1} = t ε_n
    let mut signs = alloc::vec![1i64];
    for n in 0..top {
        let e = signs[n];
        let next = b_sign[n].sign().or(big_sign[n + 1].sign()).unwrap_or(1);
        signs.push(e * next);
    }
    let maps: Vec<SparseMatrix> = signs
        .iter()
        .zip(&src.dims)
        .map(|(&s, &d)| SparseMatrix::scalar(d, &Scalar::from_int(s)))
        .collect();
    let mut certified = IdentityReport::new();
    for n in 0..top {
        certified.equal(
            "phi b~' = d_xi phi",
            Some(n),
            &maps[n + 1].mul(&src.b[n]),
            &dst.b[n].mul(&maps[n]),
        );
    }
    for n in 1..=top {
        certified.equal(
            "phi B~' = (sum kappa'_xi^j b'_xi) phi",
            Some(n),
            &maps[n - 1].mul(&src.big_b[n]),
            &dst.big_b[n].mul(&maps[n]),
        );
    }
    ChainMapReport {
        maps,
        signs,
        intertwinings,
        certified,
    }
}
