use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::mixed::MixedComplex;
use super::{CocyclicModule, CyclicError, CyclicPower};
use crate::hopf::{flat_index, multi_index, Character, Hopf, TensorVector};
use crate::linalg::{Accumulator, SparseMatrix, SparseVec};
use crate::report::{IdentityReport, Status};
use crate::Scalar;

/// Matrix with one column per basis tensor of `H^{⊗arity}`.
pub(super) fn tensor_map(
    d: usize,
    arity: usize,
    rows: usize,
    mut f: impl FnMut(&[usize]) -> SparseVec,
) -> SparseMatrix {
    let cols = (0..d.pow(arity as u32))
        .map(|idx| f(&multi_index(idx, d, arity)))
        .collect();
    SparseMatrix::from_columns(rows, cols)
}

/// `ε(h_{i+1}) (h_1, ..., ĥ_{i+1}, ...)` on `H^{⊗arity}` with the given counit.
pub(super) fn drop_slot(counit: &[crate::Scalar], arity: usize, i: usize) -> SparseMatrix {
    let d = counit.len();
    tensor_map(d, arity, d.pow(arity as u32 - 1), |s| {
        let mut rest = s.to_vec();
        rest.remove(i);
        SparseVec::single(flat_index(&rest, d), counit[s[i]].clone())
    })
}

/// The cocyclic module `H♯_(δ,σ)` up to degree `cutoff`:
/// `δ_0 = (1, h_1, ...)`, `δ_i` applies `Δ` to `h_i`, `δ_{n+1}` appends `σ`,
/// `σ_i` applies `ε` to `h_{i+1}`, `τ_n = S_δ(h_1) · (h_2, ..., h_n, σ)`.
/// `τ^{n+1} = id` is only promised when `(δ, σ)` is a modular pair in
/// involution.
pub fn connes_moscovici_module(hopf: &Hopf, delta: &Character, sigma: &SparseVec, cutoff: usize) -> CocyclicModule {
    let d = hopf.dim();
    let size = |n: usize| d.pow(n as u32);
    let mut faces = Vec::with_capacity(cutoff);
    let mut degeneracies = Vec::with_capacity(cutoff);
    for n in 0..cutoff {
        let mut fs = Vec::with_capacity(n + 2);
        fs.push(tensor_map(d, n, size(n + 1), |s| SparseVec::unit(flat_index(s, d))));
        for i in 1..=n {
            fs.push(tensor_map(d, n, size(n + 1), |s| {
                let mut acc = Accumulator::new();
                for (j, k, c) in hopf.comult_terms(s[i - 1]) {
                    let mut t = Vec::with_capacity(n + 1);
                    t.extend_from_slice(&s[..i - 1]);
                    t.push(j);
                    t.push(k);
                    t.extend_from_slice(&s[i..]);
                    acc.add(flat_index(&t, d), c);
                }
                acc.into_vec()
            }));
        }
        fs.push(tensor_map(d, n, size(n + 1), |s| {
            let base = flat_index(s, d) * d;
            SparseVec::from_pairs(sigma.iter().map(|(k, c)| (base + k, c.clone())))
        }));
        faces.push(fs);
        degeneracies.push((0..=n).map(|i| drop_slot(hopf.counit_values(), n + 1, i)).collect());
    }
    let sd = hopf.twisted_antipode_matrix(delta);
    let cyclic = (0..=cutoff)
        .map(|n| {
            if n == 0 {
                return SparseMatrix::identity(1);
            }
            tensor_map(d, n, size(n), |s| {
                let mut factors: Vec<SparseVec> = s[1..].iter().map(|&i| SparseVec::unit(i)).collect();
                factors.push(sigma.clone());
                hopf.diagonal_action(sd.column(s[0]), &TensorVector::pure(d, &factors))
                    .into_vec()
            })
        })
        .collect();
    let valid = hopf.check_modular_pair(delta.values(), sigma).is_valid();
    CocyclicModule {
        name: String::from("connes-moscovici"),
        cutoff,
        slot_labels: hopf.algebra().labels().to_vec(),
        arity_offset: 0,
        normalized: false,
        faces,
        degeneracies,
        cyclic,
        power: if valid {
            CyclicPower::Identity
        } else {
            CyclicPower::Unpromised
        },
    }
}

/// `H♯` restricted to normalized cochains `(ker ε)^{⊗n}`, in the basis
/// `u_{i_1} ⊗ ... ⊗ u_{i_n}`, `u_i = e_i - ε(e_i) 1`.
#[derive(Clone, Debug)]
pub struct NormalizedModule {
    pub full: CocyclicModule,
    /// Structure maps compressed by `proj' ∘ · ∘ incl`.
    pub module: CocyclicModule,
    /// `incl_n : (ker ε)^{⊗n} -> H^{⊗n}`.
    pub inclusion: Vec<SparseMatrix>,
    /// `proj'_n = (h - ε(h) 1)^{⊗n}` in `u` coordinates; `proj' ∘ incl = id`.
    pub projection: Vec<SparseMatrix>,
}

pub fn normalized_cm_module(hopf: &Hopf, delta: &Character, sigma: &SparseVec, cutoff: usize) -> NormalizedModule {
    let full = connes_moscovici_module(hopf, delta, sigma, cutoff);
    let d = hopf.dim();
    let u = SparseMatrix::from_columns(
        d,
        (1..d)
            .map(|i| {
                SparseVec::unit(i).combine(
                    &Scalar::one(),
                    &SparseVec::unit(0),
                    &(-hopf.counit_values()[i].clone()),
                )
            })
            .collect(),
    );
    let p = SparseMatrix::from_triplets(d - 1, d, (1..d).map(|i| (i - 1, i, Scalar::one())));
    let mut inclusion = Vec::with_capacity(cutoff + 1);
    let mut projection = Vec::with_capacity(cutoff + 1);
    let (mut e, mut q) = (SparseMatrix::identity(1), SparseMatrix::identity(1));
    for _ in 0..=cutoff {
        inclusion.push(e.clone());
        projection.push(q.clone());
        e = e.kron(&u);
        q = q.kron(&p);
    }
    let compress = |m: &SparseMatrix, from: usize, to: usize| projection[to].mul(m).mul(&inclusion[from]);
    let faces = full
        .faces
        .iter()
        .enumerate()
        .map(|(n, fs)| fs.iter().map(|f| compress(f, n, n + 1)).collect())
        .collect();
    let degeneracies = full
        .degeneracies
        .iter()
        .enumerate()
        .map(|(n, ss)| ss.iter().map(|s| compress(s, n + 1, n)).collect())
        .collect();
    let cyclic = full
        .cyclic
        .iter()
        .enumerate()
        .map(|(n, t)| compress(t, n, n))
        .collect();
    let labels = hopf.algebra().labels()[1..]
        .iter()
        .map(|l| format!("u({l})"))
        .collect();
    let module = CocyclicModule {
        name: String::from("normalized"),
        cutoff,
        slot_labels: labels,
        arity_offset: 0,
        normalized: true,
        faces,
        degeneracies,
        cyclic,
        power: CyclicPower::Unpromised,
    };
    NormalizedModule {
        full,
        module,
        inclusion,
        projection,
    }
}

impl NormalizedModule {
    pub fn truncate(&self, cutoff: usize) -> NormalizedModule {
        let cutoff = cutoff.min(self.module.cutoff);
        NormalizedModule {
            full: self.full.truncate(cutoff),
            module: self.module.truncate(cutoff),
            inclusion: self.inclusion[..=cutoff].to_vec(),
            projection: self.projection[..=cutoff].to_vec(),
        }
    }

    /// The normalized mixed complex `(proj' b incl, proj' B incl)` built from
    /// the full module's mixed complex `full`, with checks that normalized
    /// cochains form a sub-mixed complex, that the compressed cofaces
    /// assemble to `b`, and that `B = N σ̃` on normalized cochains.
    pub fn mixed(&self, full: &MixedComplex) -> Result<(MixedComplex, IdentityReport), CyclicError> {
        let n_max = self.module.cutoff;
        let e = &self.inclusion;
        let p = &self.projection;
        let mut r = IdentityReport::new();
        let b: Vec<SparseMatrix> = (0..n_max).map(|n| p[n + 1].mul(&full.b[n]).mul(&e[n])).collect();
        let big_b: Vec<SparseMatrix> = (0..=n_max)
            .map(|n| {
                if n == 0 {
                    SparseMatrix::zeros(0, e[0].ncols())
                } else {
                    p[n - 1].mul(&full.big_b[n]).mul(&e[n])
                }
            })
            .collect();
        for n in 0..=n_max {
            let g = Some(n);
            if n < n_max {
                r.equal("b preserves normalized cochains", g, &full.b[n].mul(&e[n]), &e[n + 1].mul(&b[n]));
            }
            if n >= 1 {
                r.equal("B preserves normalized cochains", g, &full.big_b[n].mul(&e[n]), &e[n - 1].mul(&big_b[n]));
            }
        }
        // σ̃ λ = ±τ σ_0 kills normalized cochains, so B reduces to N σ̃ there
        for n in 0..=n_max {
            let g = Some(n);
            if n < n_max {
                let assembled = (0..=n + 1).fold(SparseMatrix::zeros(p[n + 1].nrows(), e[n].ncols()), |acc, i| {
                    acc.combine(&Scalar::one(), &self.module.faces[n][i], &Scalar::sign(i))
                });
                r.equal("compressed cofaces assemble to proj' b incl", g, &assembled, &b[n]);
            }
            if n >= 1 {
                let f = &self.full;
                let nsigma = f.norm(n - 1).mul(&f.extra_degeneracy(n)).mul(&e[n]);
                r.equal("B = N sigma~ on normalized cochains", g, &full.big_b[n].mul(&e[n]), &nsigma);
                let m = &self.module;
                let compressed = m.norm(n - 1).mul(&m.extra_degeneracy(n));
                let holds = compressed == p[n - 1].mul(&nsigma);
                r.note(
                    "N sigma~ assembled from compressed maps",
                    g,
                    Status::Info,
                    format!("measured: {}", if holds { "agrees with proj' B incl" } else { "differs from proj' B incl" }),
                );
            }
        }
        let mixed = MixedComplex::new(
            "normalized",
            b,
            big_b,
            format!("proj' B incl, B = {}", full.convention),
        );
        Ok((mixed, r))
    }
}
