use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::cyclic::{
    connes_moscovici_module, f_twisted_module, invariant_mixed_complex, mixed_of_cocyclic, normalized_cm_module,
    CocyclicModule, ARBITRATION_DEPTH,
};
use crate::hopf::builtins::{cyclic_group, functions_on_cyclic, sweedler, trivial};
use crate::hopf::{Character, Hopf};
use crate::linalg::{kernel, restrict_in_frames, Frame};

fn int(x: i64) -> Scalar {
    Scalar::from_int(x)
}

fn cm_mixed(h: &Hopf, sigma: usize, cutoff: usize) -> (CocyclicModule, MixedComplex) {
    let e = Character::counit(h);
    let m = connes_moscovici_module(h, &e, &SparseVec::unit(sigma), cutoff.max(ARBITRATION_DEPTH));
    let (mixed, _) = mixed_of_cocyclic(&m).unwrap();
    (m.truncate(cutoff), mixed.truncate(cutoff))
}

/// Mixed complex with the given dimensions and zero differentials.
fn zero_mixed(dims: &[usize]) -> MixedComplex {
    let b = (0..dims.len() - 1).map(|n| SparseMatrix::zeros(dims[n + 1], dims[n])).collect();
    let big_b = (0..dims.len())
        .map(|n| SparseMatrix::zeros(if n == 0 { 0 } else { dims[n - 1] }, dims[n]))
        .collect();
    MixedComplex::new("zero", b, big_b, "zero".into())
}

/// Connes' complex `ker(1 - λ)` with `b` restricted: an independent route to
/// cyclic cohomology over the rationals.
fn connes_lambda_hc(m: &CocyclicModule, n_max: usize) -> Vec<usize> {
    let frames: Vec<Frame> = (0..=n_max)
        .map(|n| {
            let one_minus = SparseMatrix::identity(m.dim(n)).sub(&m.signed_cyclic(n));
            Frame::from_subspace(&kernel(&one_minus))
        })
        .collect();
    let b: Vec<SparseMatrix> = (0..n_max)
        .map(|n| restrict_in_frames(&m.coboundary(n), &frames[n], &frames[n + 1]).unwrap())
        .collect();
    (0..n_max)
        .map(|n| {
            let into = if n == 0 {
                SparseMatrix::zeros(frames[0].len(), 0)
            } else {
                b[n - 1].clone()
            };
            cohomology_dim(&into, &b[n]).unwrap().dim
        })
        .collect()
}

fn rank_nullity_hh(m: &MixedComplex, n: usize) -> usize {
    let into = if n == 0 { 0 } else { rank(&m.b[n - 1]) };
    m.dims[n] - rank(&m.b[n]) - into
}

#[test]
fn trivial_algebra_anchor() {
    let (_, m) = cm_mixed(&trivial(), 0, 6);
    let t = periodicity_and_hp(&m, 6).unwrap();
    assert_eq!(t.hc(), vec![1, 0, 1, 0, 1, 0]);
    assert_eq!(t.hh(), vec![1, 0, 0, 0, 0, 0]);
    assert_eq!(t.stabilization[0], Stabilization { parity: 0, stabilized: true, dim: 1 });
    assert_eq!(t.stabilization[1], Stabilization { parity: 1, stabilized: true, dim: 0 });
    let reliable: Vec<bool> = t.rows.iter().map(|r| r.truncation_reliable).collect();
    assert_eq!(reliable, vec![true, true, true, true, true, false]);
    // the scalars of the bicomplex: b_1 = 1 and B_1 = 2 make D_1 injective
    assert_eq!(m.b[1], SparseMatrix::scalar(1, &int(1)));
    assert_eq!(m.big_b[1], SparseMatrix::scalar(1, &int(2)));
}

#[test]
fn single_column_complex() {
    let m = zero_mixed(&[1, 0, 0, 0, 0, 0, 0]);
    let t = periodicity_and_hp(&m, 6).unwrap();
    assert_eq!(t.hc(), vec![1, 0, 1, 0, 1, 0]);
    assert!(t.stabilization.iter().all(|s| s.stabilized));
}

#[test]
fn zero_complex_and_zero_differentials() {
    let t = periodicity_and_hp(&zero_mixed(&[0; 7]), 6).unwrap();
    assert!(t.hc().iter().all(|&x| x == 0));
    assert!(t.stabilization.iter().all(|s| s.stabilized && s.dim == 0));
    let m = zero_mixed(&[2, 3, 1, 4]);
    for n in 0..3 {
        assert_eq!(hochschild_cohomology(&m, n).unwrap().dim, m.dims[n]);
    }
}

#[test]
fn cutoff_is_enforced() {
    let (_, m) = cm_mixed(&cyclic_group(2), 0, 3);
    assert!(hochschild_cohomology(&m, 2).is_ok());
    assert_eq!(
        hochschild_cohomology(&m, 3).unwrap_err(),
        CohomologyError::CutoffExceeded { degree: 3, max: Some(2) }
    );
    assert!(matches!(cyclic_cohomology(&m, 3, TotalSign(1)), Err(CohomologyError::CutoffExceeded { .. })));
    assert!(matches!(periodicity_and_hp(&m, 4), Err(CohomologyError::CutoffExceeded { .. })));
}

#[test]
fn corrupted_complex_is_refused() {
    let (_, mut m) = cm_mixed(&cyclic_group(3), 0, 3);
    m.big_b[2] = m.big_b[2].add(&SparseMatrix::from_triplets(3, 9, [(0, 4, int(1))]));
    assert!(matches!(periodicity_and_hp(&m, 3), Err(CohomologyError::NotMixed { .. })));
}

#[test]
fn bicomplex_agrees_with_connes_lambda_complex() {
    for (h, sigma) in [(trivial(), 0), (cyclic_group(2), 0), (cyclic_group(3), 0), (sweedler(), 1)] {
        let top = if h.dim() == 4 { 4 } else { 5 };
        let (module, m) = cm_mixed(&h, sigma, top);
        let t = periodicity_and_hp(&m, top).unwrap();
        assert_eq!(t.hc(), connes_lambda_hc(&module, top), "dim {}", h.dim());
    }
}

#[test]
fn semisimple_commutative_algebras() {
    // HH(Q^k) = Q^k in degree 0 only, HC^{2j} = Q^k
    for (k, h) in [(2, cyclic_group(2)), (3, cyclic_group(3)), (3, functions_on_cyclic(3))] {
        let top = 4;
        let m = f_twisted_module(h.algebra(), &SparseMatrix::identity(k), top.max(ARBITRATION_DEPTH)).unwrap();
        let inv = invariant_mixed_complex(&m).unwrap();
        let t = periodicity_and_hp(&inv.mixed, top).unwrap();
        assert_eq!(t.hh(), vec![k, 0, 0, 0]);
        assert_eq!(t.hc(), vec![k, 0, k, 0]);
    }
}

#[test]
fn hochschild_two_routes_and_rank_nullity() {
    for (h, sigma) in [(cyclic_group(3), 0), (sweedler(), 1)] {
        let (_, m) = cm_mixed(&h, sigma, 3);
        let sign = TotalSign::arbitrate(&m).unwrap();
        for n in 0..3 {
            let direct = hochschild_cohomology(&m, n).unwrap().dim;
            assert_eq!(hochschild_via_total(&m, n, sign).unwrap().dim, direct);
            assert_eq!(rank_nullity_hh(&m, n), direct);
        }
    }
}

#[test]
fn hc0_is_kernel_of_b0() {
    let h = cyclic_group(2);
    let e = Character::counit(&h);
    let nm = normalized_cm_module(&h, &e, &SparseVec::unit(0), ARBITRATION_DEPTH);
    let (full, _) = mixed_of_cocyclic(&nm.full).unwrap();
    let (norm, _) = nm.mixed(&full).unwrap();
    let norm = norm.truncate(4);
    let t = periodicity_and_hp(&norm, 4).unwrap();
    assert_eq!(t.rows[0].hc, norm.dims[0] - rank(&norm.b[0]));
}

#[test]
fn induced_maps() {
    let (_, m) = cm_mixed(&cyclic_group(3), 0, 3);
    let id: Vec<SparseMatrix> = m.dims.iter().map(|&d| SparseMatrix::identity(d)).collect();
    for n in 0..3 {
        for theory in [Theory::Hochschild, Theory::Cyclic] {
            let f = induced_map(&id, &m, &m, n, theory).unwrap();
            assert!(f.iso());
            assert!(f.matrix.is_identity());
        }
    }
    let zero: Vec<SparseMatrix> = m.dims.iter().map(|&d| SparseMatrix::zeros(d, d)).collect();
    let f = induced_map(&zero, &m, &m, 0, Theory::Cyclic).unwrap();
    assert!(f.matrix.is_zero() && !f.iso());
    // scaling only degree 1 breaks b in degree 0 or 1
    let mut bad = id.clone();
    bad[1] = bad[1].scale(&int(2));
    assert!(matches!(
        induced_map(&bad, &m, &m, 1, Theory::Hochschild),
        Err(CohomologyError::NotChainMap { .. })
    ));
}

fn normalization_maps(h: &Hopf, sigma: usize, top: usize) -> (MixedComplex, MixedComplex, Vec<SparseMatrix>, Vec<SparseMatrix>) {
    let e = Character::counit(h);
    let nm = normalized_cm_module(h, &e, &SparseVec::unit(sigma), top.max(ARBITRATION_DEPTH));
    let (full, _) = mixed_of_cocyclic(&nm.full).unwrap();
    let (norm, _) = nm.mixed(&full).unwrap();
    (
        full.truncate(top),
        norm.truncate(top),
        nm.inclusion[..=top].to_vec(),
        nm.projection[..=top].to_vec(),
    )
}

#[test]
fn normalization_is_a_quasi_isomorphism() {
    for (h, sigma) in [(cyclic_group(2), 0), (cyclic_group(3), 0), (sweedler(), 1)] {
        let (full, norm, incl, proj) = normalization_maps(&h, sigma, 3);
        for n in 0..3 {
            assert!(induced_map(&proj, &full, &norm, n, Theory::Hochschild).unwrap().iso());
            assert!(induced_map(&incl, &norm, &full, n, Theory::Hochschild).unwrap().iso());
            assert!(induced_map(&incl, &norm, &full, n, Theory::Cyclic).unwrap().iso());
        }
    }
}

#[test]
fn periodicity_is_natural_for_normalization() {
    let (full, norm, incl, _) = normalization_maps(&cyclic_group(3), 0, 4);
    let (sf, sn) = (TotalSign::arbitrate(&full).unwrap(), TotalSign::arbitrate(&norm).unwrap());
    for n in 0..2 {
        // S f = f S on cochains, hence on cohomology
        let lhs = periodicity_shift(&full, n).mul(&total_map(&incl, &norm, &full, n));
        let rhs = total_map(&incl, &norm, &full, n + 2).mul(&periodicity_shift(&norm, n));
        assert_eq!(lhs, rhs);
        let f_lo = induced_map(&incl, &norm, &full, n, Theory::Cyclic).unwrap();
        let f_hi = induced_map(&incl, &norm, &full, n + 2, Theory::Cyclic).unwrap();
        let s_norm = InducedMap::from_chain_level(
            n + 2,
            &periodicity_shift(&norm, n),
            &cyclic_cohomology(&norm, n, sn).unwrap(),
            &cyclic_cohomology(&norm, n + 2, sn).unwrap(),
        )
        .unwrap();
        let s_full = InducedMap::from_chain_level(
            n + 2,
            &periodicity_shift(&full, n),
            &cyclic_cohomology(&full, n, sf).unwrap(),
            &cyclic_cohomology(&full, n + 2, sf).unwrap(),
        )
        .unwrap();
        assert_eq!(s_full.matrix.mul(&f_lo.matrix), f_hi.matrix.mul(&s_norm.matrix));
    }
}

/// `I + c E_{ij}` and its inverse.
fn elementary(d: usize, i: usize, j: usize, c: i64) -> (SparseMatrix, SparseMatrix) {
    let e = SparseMatrix::from_triplets(d, d, [(i, j, int(c))]);
    let id = SparseMatrix::identity(d);
    (id.add(&e), id.sub(&e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Cohomology is invariant under degree-wise changes of basis, and the
    /// change of basis induces isomorphisms.
    #[test]
    fn invariant_under_change_of_basis(ops in proptest::collection::vec((0usize..4, 0usize..64, 0usize..64, -3i64..=3), 1..8)) {
        let (_, m) = cm_mixed(&cyclic_group(2), 0, 4);
        let mut g: Vec<SparseMatrix> = m.dims.iter().map(|&d| SparseMatrix::identity(d)).collect();
        let mut gi = g.clone();
        for (n, i, j, c) in ops {
            let d = m.dims[n];
            let (i, j) = (i % d, j % d);
            if i == j || c == 0 {
                continue;
            }
            let (e, ei) = elementary(d, i, j, c);
            g[n] = e.mul(&g[n]);
            gi[n] = gi[n].mul(&ei);
        }
        let b = (0..4).map(|n| g[n + 1].mul(&m.b[n]).mul(&gi[n])).collect();
        let big_b = (0..=4)
            .map(|n| if n == 0 { m.big_b[0].clone() } else { g[n - 1].mul(&m.big_b[n]).mul(&gi[n]) })
            .collect();
        let conj = MixedComplex::new("conjugated", b, big_b, m.convention.clone());
        let t0 = periodicity_and_hp(&m, 4).unwrap();
        let t1 = periodicity_and_hp(&conj, 4).unwrap();
        prop_assert_eq!(t0.hh(), t1.hh());
        prop_assert_eq!(t0.hc(), t1.hc());
        for n in 0..4 {
            prop_assert!(induced_map(&g, &m, &conj, n, Theory::Cyclic).unwrap().iso());
        }
    }
}
