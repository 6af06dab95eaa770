//! Small Hopf algebras used as a test corpus, together with a few named
//! characters and group-like elements for each.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{Algebra, Hopf};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::scalar::Scalar;

pub const NAMES: [&str; 8] = [
    "trivial",
    "group:Z2",
    "group:Z3",
    "group:Z4",
    "group:S3",
    "functions:Z2",
    "functions:Z3",
    "sweedler",
];

/// A builtin algebra with its catalog of named characters (including
/// `eps`) and named group-like elements (including `1`).
#[derive(Clone, Debug)]
pub struct Builtin {
    pub name: &'static str,
    pub hopf: Hopf,
    pub characters: Vec<(String, Vec<Scalar>)>,
    pub grouplikes: Vec<(String, SparseVec)>,
}

impl Builtin {
    pub fn character(&self, name: &str) -> Option<&[Scalar]> {
        self.characters
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    pub fn grouplike(&self, name: &str) -> Option<&SparseVec> {
        self.grouplikes.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

pub fn builtin(name: &str) -> Option<Builtin> {
    let (name, hopf, characters, grouplikes) = match name {
        "trivial" => ("trivial", trivial(), vec![], Vec::new()),
        "group:Z2" => {
            let h = cyclic_group(2);
            ("group:Z2", h, vec![("sgn", signs(&[1, -1]))], grouplikes_of_group(2))
        }
        "group:Z3" => ("group:Z3", cyclic_group(3), vec![], grouplikes_of_group(3)),
        "group:Z4" => (
            "group:Z4",
            cyclic_group(4),
            vec![("sgn", signs(&[1, -1, 1, -1]))],
            grouplikes_of_group(4),
        ),
        "group:S3" => (
            "group:S3",
            symmetric_group(),
            vec![("sgn", signs(&[1, -1, -1, -1, 1, 1]))],
            grouplikes_of_group(6),
        ),
        "functions:Z2" => (
            "functions:Z2",
            functions_on_cyclic(2),
            vec![("ev_g", signs(&[1, 1]))],
            named(vec![("s", SparseVec::from_dense(&[Scalar::one(), Scalar::from_int(-2)]))]),
        ),
        "functions:Z3" => (
            "functions:Z3",
            functions_on_cyclic(3),
            vec![("ev_g", signs(&[1, 1, 0])), ("ev_g2", signs(&[1, 0, 1]))],
            Vec::new(),
        ),
        "sweedler" => (
            "sweedler",
            sweedler(),
            vec![("chi", signs(&[1, -1, 0, 0]))],
            named(vec![("g", SparseVec::unit(1))]),
        ),
        _ => return None,
    };
    let mut chars = vec![("eps".to_string(), hopf.counit_values().to_vec())];
    chars.extend(characters.into_iter().map(|(n, v)| (n.to_string(), v)));
    let mut gl = vec![("1".to_string(), SparseVec::unit(0))];
    gl.extend(grouplikes.into_iter().filter(|(n, _)| n != "1"));
    Some(Builtin {
        name,
        hopf,
        characters: chars,
        grouplikes: gl,
    })
}

fn named(v: Vec<(&str, SparseVec)>) -> Vec<(String, SparseVec)> {
    v.into_iter().map(|(n, x)| (n.to_string(), x)).collect()
}

fn signs(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

fn labels_of<S: AsRef<str>>(v: &[S]) -> Vec<String> {
    v.iter().map(|s| s.as_ref().to_string()).collect()
}

pub fn trivial() -> Hopf {
    let alg = Algebra::new(labels_of(&["1"]), [(0, 0, 0, Scalar::one())]).unwrap();
    Hopf::new(
        alg,
        [(0, 0, 0, Scalar::one())],
        vec![Scalar::one()],
        [(0, 0, Scalar::one())],
    )
    .unwrap()
}

/// Group algebra from a multiplication table; element 0 must be the identity.
pub fn group_algebra(labels: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Hopf {
    let n = labels.len();
    let inv = |a: usize| (0..n).find(|&b| mul(a, b) == 0).expect("group has inverses");
    let alg = Algebra::new(
        labels,
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| (a, b, mul(a, b), Scalar::one())),
    )
    .unwrap();
    Hopf::new(
        alg,
        (0..n).map(|a| (a, a, a, Scalar::one())),
        vec![Scalar::one(); n],
        (0..n).map(|a| (inv(a), a, Scalar::one())),
    )
    .unwrap()
}

fn cyclic_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g{k}"),
        })
        .collect()
}

fn grouplikes_of_group(n: usize) -> Vec<(String, SparseVec)> {
    let labels = match n {
        6 => s3_labels(),
        _ => cyclic_labels(n),
    };
    labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| (l, SparseVec::unit(i)))
        .collect()
}

pub fn cyclic_group(n: usize) -> Hopf {
    group_algebra(cyclic_labels(n), |a, b| (a + b) % n)
}

const S3_PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 0, 2],
    [2, 1, 0],
    [0, 2, 1],
    [1, 2, 0],
    [2, 0, 1],
];

fn s3_labels() -> Vec<String> {
    labels_of(&["1", "(12)", "(13)", "(23)", "(123)", "(132)"])
}

pub fn symmetric_group() -> Hopf {
    // (p q)(x) = p(q(x))
    let compose = |a: usize, b: usize| {
        let (p, q) = (S3_PERMS[a], S3_PERMS[b]);
        let r = [p[q[0]], p[q[1]], p[q[2]]];
        S3_PERMS.iter().position(|s| *s == r).unwrap()
    };
    group_algebra(s3_labels(), compose)
}

/// Functions on `Z/n` in the basis `1, p_g, ..., p_{g^{n-1}}` where `p_h`
/// is the indicator of `h`.
pub fn functions_on_cyclic(n: usize) -> Hopf {
    let point_labels: Vec<String> = (0..n).map(|k| format!("p{k}")).collect();
    let alg = Algebra::new(point_labels, (0..n).map(|a| (a, a, a, Scalar::one()))).unwrap();
    let points = Hopf::new(
        alg,
        (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n, a, b, Scalar::one()))),
        (0..n).map(|a| if a == 0 { Scalar::one() } else { Scalar::zero() }).collect(),
        (0..n).map(|a| ((n - a) % n, a, Scalar::one())),
    )
    .unwrap();
    let mut cols = vec![SparseVec::from_dense(&vec![Scalar::one(); n])];
    cols.extend((1..n).map(SparseVec::unit));
    let p = SparseMatrix::from_columns(n, cols);
    let labels = core::iter::once("1".to_string())
        .chain(cyclic_labels(n).into_iter().skip(1).map(|l| format!("p_{l}")))
        .collect();
    points.change_basis(&p, labels).unwrap()
}

/// Sweedler's four-dimensional algebra with basis `1, g, x, gx`.
pub fn sweedler() -> Hopf {
    // basis index a + 2b for g^a x^b
    let mut mult = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let (a, b, c, e) = (i % 2, i / 2, j % 2, j / 2);
            if b + e < 2 {
                let sign = if b * c == 1 { -1 } else { 1 };
                mult.push((i, j, (a + c) % 2 + 2 * (b + e), Scalar::from_int(sign)));
            }
        }
    }
    let alg = Algebra::new(labels_of(&["1", "g", "x", "gx"]), mult).unwrap();
    let one = Scalar::one;
    let comult = [
        (0, 0, 0, one()),
        (1, 1, 1, one()),
        (2, 2, 0, one()),
        (2, 1, 2, one()),
        (3, 3, 1, one()),
        (3, 0, 3, one()),
    ];
    let antipode = [
        (0, 0, one()),
        (1, 1, one()),
        (3, 2, Scalar::from_int(-1)),
        (2, 3, one()),
    ];
    Hopf::new(alg, comult, signs(&[1, 1, 0, 0]), antipode).unwrap()
}
