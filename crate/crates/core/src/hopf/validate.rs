use alloc::vec;
use alloc::vec::Vec;

use super::{Character, Hopf, TensorVector};
use crate::linalg::{Accumulator, SparseVec};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Basis indices on which the axiom first fails.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
    /// Whether `S² = id` (informational, not an axiom).
    pub antipode_involutive: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub delta_is_character: bool,
    pub sigma_grouplike: bool,
    pub delta_of_sigma_is_one: bool,
    /// `S_δ²(e_i) = σ e_i σ⁻¹` for all `i`.
    pub involution: bool,
    /// `(σ⁻¹ S_δ)² = id`, the equivalent single-map form.
    pub involution_alt: bool,
    /// First basis element on which `S_δ² = Ad σ` fails.
    pub involution_witness: Option<usize>,
}

impl PairReport {
    pub fn is_valid(&self) -> bool {
        self.delta_is_character
            && self.sigma_grouplike
            && self.delta_of_sigma_is_one
            && self.involution
    }

    /// The two involution criteria must agree whenever the pair data is
    /// well formed; a disagreement is an internal inconsistency.
    pub fn criteria_agree(&self) -> bool {
        !(self.sigma_grouplike && self.delta_of_sigma_is_one) || self.involution == self.involution_alt
    }
}

fn first<I: IntoIterator<Item = Vec<usize>>>(
    name: &'static str,
    failures: I,
) -> AxiomCheck {
    let witness = failures.into_iter().next();
    AxiomCheck {
        name,
        passed: witness.is_none(),
        witness,
    }
}

impl Hopf {
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim();
        let alg = self.algebra();
        let e = SparseVec::unit;
        let pairs = || (0..d).flat_map(move |i| (0..d).map(move |j| (i, j)));
        let mut checks = Vec::new();

        checks.push(first(
            "unit",
            (0..d)
                .filter(|&i| alg.mul_basis(0, i) != &e(i) || alg.mul_basis(i, 0) != &e(i))
                .map(|i| vec![i]),
        ));
        checks.push(first(
            "associativity",
            pairs().flat_map(|(i, j)| {
                (0..d).filter_map(move |k| {
                    let l = alg.mul(alg.mul_basis(i, j), &e(k));
                    let r = alg.mul(&e(i), alg.mul_basis(j, k));
                    (l != r).then(|| vec![i, j, k])
                })
            }),
        ));
        checks.push(first(
            "coassociativity",
            (0..d)
                .filter(|&i| {
                    self.iterated_coproduct(&e(i), 3) != self.iterated_coproduct_left(&e(i), 3)
                })
                .map(|i| vec![i]),
        ));
        checks.push(first(
            "counit",
            (0..d)
                .filter(|&i| {
                    let mut left = Accumulator::new();
                    let mut right = Accumulator::new();
                    for (j, k, c) in self.comult_terms(i) {
                        left.add(k, &(c * &self.counit_values()[j]));
                        right.add(j, &(c * &self.counit_values()[k]));
                    }
                    left.into_vec() != e(i) || right.into_vec() != e(i)
                })
                .map(|i| vec![i]),
        ));
        checks.push(first(
            "comultiplication unital",
            (self.comult_basis(0) != &SparseVec::unit(0)).then(|| vec![0]),
        ));
        checks.push(first(
            "comultiplication multiplicative",
            pairs()
                .filter(|&(i, j)| {
                    let lhs = self.comult(alg.mul_basis(i, j));
                    let rhs = self.tensor_square_mul(self.comult_basis(i), self.comult_basis(j));
                    lhs != rhs
                })
                .map(|(i, j)| vec![i, j]),
        ));
        checks.push(first(
            "counit unital",
            (!self.counit_values()[0].is_one()).then(|| vec![0]),
        ));
        checks.push(first(
            "counit multiplicative",
            pairs()
                .filter(|&(i, j)| {
                    self.counit(alg.mul_basis(i, j))
                        != &self.counit_values()[i] * &self.counit_values()[j]
                })
                .map(|(i, j)| vec![i, j]),
        ));
        let s = self.antipode_matrix();
        let antipode_law = |left: bool| {
            (0..d)
                .filter(move |&i| {
                    let mut acc = Accumulator::new();
                    for (j, k, c) in self.comult_terms(i) {
                        let p = if left {
                            alg.mul(s.column(j), &e(k))
                        } else {
                            alg.mul(&e(j), s.column(k))
                        };
                        acc.add_vec(&p, c);
                    }
                    acc.into_vec() != SparseVec::single(0, self.counit_values()[i].clone())
                })
                .map(|i| vec![i])
        };
        checks.push(first("antipode (left)", antipode_law(true)));
        checks.push(first("antipode (right)", antipode_law(false)));
        checks.push(first(
            "antipode unital",
            (s.column(0) != &SparseVec::unit(0)).then(|| vec![0]),
        ));

        ValidationReport {
            checks,
            antipode_involutive: s.mul(s).is_identity(),
        }
    }

    /// Product in `H ⊗ H` of two vectors over the flat index `j * dim + k`.
    pub fn tensor_square_mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let d = self.dim();
        let mut acc = Accumulator::new();
        for (p, x) in a.iter() {
            for (q, y) in b.iter() {
                let first = self.mul_basis(p / d, q / d);
                let second = self.mul_basis(p % d, q % d);
                let t = TensorVector::pure(d, &[first.clone(), second.clone()]);
                acc.add_vec(t.vec(), &(x * y));
            }
        }
        acc.into_vec()
    }

    /// Checks that `(δ, σ)` is a modular pair in involution.
    pub fn check_modular_pair(&self, delta: &[Scalar], sigma: &SparseVec) -> PairReport {
        let d = self.dim();
        let alg = self.algebra();
        let delta_is_character = Character::new(alg, delta.to_vec()).is_ok();
        let ch = Character::from_values_unchecked(delta.to_vec());
        let sigma_grouplike = self.is_grouplike(sigma);
        let delta_of_sigma_is_one = delta.len() == d && ch.eval(sigma).is_one();
        let sinv = self.grouplike_inverse(sigma);
        let sd = self.twisted_antipode_matrix(&ch);
        let sd2 = sd.mul(&sd);
        let conj = alg.left_matrix(sigma).mul(&alg.right_matrix(&sinv));
        let involution_witness = (0..d).find(|&i| sd2.column(i) != conj.column(i));
        let alt = alg.left_matrix(&sinv).mul(&sd);
        let involution_alt = alt.mul(&alt).is_identity();
        PairReport {
            delta_is_character,
            sigma_grouplike,
            delta_of_sigma_is_one,
            involution: involution_witness.is_none(),
            involution_alt,
            involution_witness,
        }
    }
}

