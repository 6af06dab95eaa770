//! One pass/fail line per acceptance criterion. Criteria that are known not
//! to hold are listed in `KNOWN_FAILURES`; the test fails if the set of
//! failing criteria differs from it in either direction.

use std::collections::BTreeSet;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use hopfcyc::commands::default_max_degree;
use hopfcyc::input::Input;
use hopfcyc_core::cohomology::{induced_map, periodicity_and_hp, Theory};
use hopfcyc_core::cyclic::{
    coinvariant_mixed_complex, connes_moscovici_module, f_twisted_module, mixed_of_cocyclic, verify_cyclic_identities,
    ARBITRATION_DEPTH,
};
use hopfcyc_core::hopf::builtins::{self, NAMES};
use hopfcyc_core::hopf::Character;
use hopfcyc_core::linalg::{cohomology_dim, kernel, restrict_in_frames, Frame, SparseMatrix};
use hopfcyc_core::omega::{OpKind, Side, SignFit, TwistContext};
use hopfcyc_core::report::Status;

/// Criteria whose literal statement fails on exact computation.
/// 2: `κ_ξ^{n(n+1)} - 1 = b_ξ B_ξ = -B_ξ b_ξ` for nontrivial `ξ` (the
///    relation that holds carries `ξ̃^{n+1}`).
/// 6: `b' = b` on the image of `P`; exactly `b' = -b` there.
const KNOWN_FAILURES: [u32; 2] = [2, 6];

/// The pairs in involution the criteria are stated for.
const PAIRS: [(&str, &str); 4] = [
    ("group:Z2", "eps-1"),
    ("group:Z3", "eps-1"),
    ("group:S3", "eps-1"),
    ("sweedler", "eps-g"),
];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn load(name: &str) -> Input {
    Input::load(None, Some(name)).expect("builtin")
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn c1_validation() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for name in NAMES {
        if !load(name).hopf.validate().passed() {
            bad.push(name.to_string());
        }
    }
    let mut mutants = 0;
    let dir = fixtures().join("mutations");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("mutation fixtures")
        .map(|e| e.expect("dir entry").path())
        .collect();
    files.sort();
    for f in &files {
        let input = Input::load(Some(f), None).expect("mutation parses");
        let r = input.hopf.validate();
        let witnessed = r.failures().count() > 0 && r.failures().all(|c| c.witness.is_some());
        if witnessed {
            mutants += 1;
        } else {
            bad.push(f.file_name().unwrap().to_string_lossy().into_owned());
        }
    }
    let el = t.elapsed();
    outcome(
        bad.is_empty() && files.len() == 10 && el < Duration::from_secs(5),
        format!(
            "{} builtins valid, {mutants}/{} mutations rejected with witness, {}{}",
            NAMES.len() - bad.iter().filter(|b| NAMES.contains(&b.as_str())).count(),
            files.len(),
            secs(el),
            if bad.is_empty() { String::new() } else { format!("; bad: {}", bad.join(", ")) }
        ),
    )
}

fn c2_identities() -> Outcome {
    let t = Instant::now();
    let mut failures: BTreeSet<String> = BTreeSet::new();
    let mut failing_rows = 0;
    let mut rows = 0;
    let mut signs: BTreeSet<i64> = BTreeSet::new();
    let mut sign_bad = Vec::new();
    for name in NAMES {
        let b = builtins::builtin(name).unwrap();
        let input = load(name);
        let calc = input.calculus();
        let h = &input.hopf;
        let top = default_max_degree(h.dim());
        let mut twists = vec![("eps".to_string(), TwistContext::counit(h))];
        for (cname, values) in &b.characters {
            let delta = Character::new(h.algebra(), values.clone()).expect("catalog character");
            let xi = h.character_inverse(&delta);
            if xi != Character::counit(h) {
                twists.push((format!("{cname} o S"), TwistContext::new(h, xi)));
            }
        }
        for (xname, ctx) in &twists {
            let mut reports: Vec<_> = (0..=top).map(|n| calc.verify_identities(n, Some(ctx))).collect();
            reports.push(calc.verify_leibniz(top, Some(ctx)));
            for r in &reports {
                rows += r.checks.iter().filter(|c| c.status == Status::Pass).count();
                for c in r.failures() {
                    failing_rows += 1;
                    failures.insert(format!("{} [{name}, xi = {xname}]", c.name));
                }
            }
        }
        for n in 1..=top {
            match calc.hochschild_prime_sign(n) {
                SignFit::Neither => sign_bad.push(format!("{name} n={n}")),
                fit => {
                    if let Some(s) = fit.sign() {
                        signs.insert(s);
                    }
                }
            }
        }
    }
    let el = t.elapsed();
    let sign_ok = sign_bad.is_empty() && signs.len() == 1;
    let mut names: BTreeSet<String> = BTreeSet::new();
    for f in &failures {
        names.insert(f.split(" [").next().unwrap().to_string());
    }
    let mut detail = format!(
        "{rows} passing rows, {failing_rows} failing; b' = s b kappa' with s = {:?}{}; {}",
        signs,
        if sign_ok { "" } else { " (not consistent)" },
        secs(el)
    );
    if !names.is_empty() {
        let which: Vec<&str> = failures
            .iter()
            .map(|f| f.split(", xi = ").nth(1).unwrap_or("").trim_end_matches(']'))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        detail.push_str(&format!(
            "; failing: {} for xi in {{{}}}",
            names.into_iter().collect::<Vec<_>>().join(" / "),
            which.join(", ")
        ));
    }
    outcome(failures.is_empty() && sign_ok && el < Duration::from_secs(180), detail)
}

fn c3_coinvariant_dims() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    let mut check = |label: &str, input: &Input, sigma: &hopfcyc_core::linalg::SparseVec, delta: Option<&Character>| {
        let calc = input.calculus();
        let d = input.dim() - 1;
        for n in 0..=3 {
            checked += 1;
            match calc.coinvariant_subspace(Side::Right, n, sigma, delta) {
                Ok(c) if c.dim() == d.pow(n as u32) => {}
                Ok(c) => bad.push(format!("{label} n={n}: {} != {}", c.dim(), d.pow(n as u32))),
                Err(e) => bad.push(format!("{label} n={n}: {e}")),
            }
        }
    };
    let one = hopfcyc_core::linalg::SparseVec::unit(0);
    for name in NAMES {
        check(&format!("Omega^R {name}"), &load(name), &one, None);
    }
    for (name, p) in PAIRS {
        let input = load(name);
        let pair = input.pair(p).unwrap();
        let delta = pair.delta(&input.hopf).unwrap();
        check(&format!("Omega^R_(xi,sigma) {name} {p}"), &input, &pair.sigma, Some(&delta));
    }
    let detail = if bad.is_empty() {
        format!("{checked} spaces of dimension (d-1)^n, n <= 3")
    } else {
        bad.join("; ")
    };
    outcome(bad.is_empty(), detail)
}

fn c4_stability() -> Outcome {
    use OpKind::*;
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for (name, p) in PAIRS {
        let input = load(name);
        let calc = input.calculus();
        let h = &input.hopf;
        let pair = input.pair(p).unwrap();
        assert!(pair.report.is_valid(), "{name} {p}");
        let delta = pair.delta(h).unwrap();
        let ctx = TwistContext::new(h, h.character_inverse(&delta));
        let untwisted = calc.verify_stability(Side::Right, 3, &pair.sigma, None, None, &[HochschildPrime, KaroubiPrime, ConnesPrime]);
        let twisted =
            calc.verify_stability(Side::Right, 3, &pair.sigma, Some(&delta), Some(&ctx), &[HochschildPrime, KaroubiPrime, Connes]);
        for (what, r) in [("b', kappa', B'", untwisted), ("b'_xi, kappa'_xi, B_xi", twisted)] {
            match r {
                Ok(r) if r.passed() => {}
                Ok(r) => bad.extend(r.failures().map(|c| format!("{name} {what}: {} n={}", c.name, c.degree.unwrap_or(0)))),
                Err(e) => bad.push(format!("{name} {what}: {e}")),
            }
        }
        if pair.sigma != hopfcyc_core::linalg::SparseVec::unit(0) {
            // literal σ = 1, outside the S^2 = 1 hypothesis of the untwisted statement
            let one = hopfcyc_core::linalg::SparseVec::unit(0);
            let lit = calc.verify_stability(Side::Right, 3, &one, None, None, &[HochschildPrime, KaroubiPrime, ConnesPrime]);
            let first = match lit {
                Ok(r) => r.failures().next().map(|c| format!("{} n={}", c.name, c.degree.unwrap_or(0))),
                Err(e) => Some(e.to_string()),
            };
            notes.push(format!(
                "{name}: checked on sigma-coinvariants; with sigma = 1 {}",
                first.map_or("also stable".into(), |f| format!("not stable ({f})"))
            ));
        }
    }
    let mut detail = if bad.is_empty() {
        "untwisted and twisted operators restrict for the 4 pairs, n <= 3".to_string()
    } else {
        bad.join("; ")
    };
    for n in notes {
        detail.push_str("; ");
        detail.push_str(&n);
    }
    outcome(bad.is_empty(), detail)
}

fn c5_coordinate_formulas() -> Outcome {
    let mut bad = Vec::new();
    let mut proj2_signs: BTreeSet<i64> = BTreeSet::new();
    let mut matched = 0;
    for (name, p) in PAIRS {
        let input = load(name);
        let calc = input.calculus();
        let pair = input.pair(p).unwrap();
        let delta = pair.delta(&input.hopf).unwrap();
        for n in 1..=3 {
            let r = calc.coordinate_formulas(n, &delta, &pair.sigma).expect("stable spaces");
            for m in &r.matches {
                if m.name.contains("proj''") {
                    if let Some(s) = m.sign.sign() {
                        proj2_signs.insert(s);
                    }
                }
                if m.passed() {
                    matched += 1;
                } else {
                    bad.push(format!("{name} {}: {} n={n}", m.name, m.sign));
                }
            }
        }
    }
    let ok = bad.is_empty() && proj2_signs.len() <= 1;
    let detail = if bad.is_empty() {
        format!("{matched} formula matches; proj'' global sign {:?}", proj2_signs)
    } else {
        bad.join("; ")
    };
    outcome(ok, detail)
}

fn c6_harmonic() -> Outcome {
    let mut bad = Vec::new();
    let mut literal_bad = Vec::new();
    let mut checked = 0;
    for name in NAMES {
        let input = load(name);
        if input.dim() > 4 {
            continue;
        }
        let calc = input.calculus();
        for n in 0..=3 {
            let r = match calc.verify_harmonic(n) {
                Ok(r) => r,
                Err(e) => {
                    bad.push(format!("{name} n={n}: {e}"));
                    continue;
                }
            };
            checked += r.checks.iter().filter(|c| c.status == Status::Pass).count();
            bad.extend(r.failures().map(|c| format!("{name} {} n={n}", c.name)));
            if n == 0 {
                continue;
            }
            // literal b' = b on im P, computed afresh
            let p = calc.harmonic_projection(n).unwrap();
            let bp = calc.op(OpKind::HochschildPrime, n, None).mul(&p);
            let b = calc.op(OpKind::Hochschild, n, None).mul(&p);
            if bp != b {
                let fit = SignFit::of(&bp, &b);
                literal_bad.push(format!("{name} n={n} (b' = {fit} b)"));
            }
        }
    }
    let mut detail = format!("{checked} passing checks, {} failing", bad.len());
    if !bad.is_empty() {
        detail.push_str(&format!(": {}", bad.join("; ")));
    }
    if !literal_bad.is_empty() {
        detail.push_str(&format!("; b' = b on image P fails: {}", literal_bad.join(", ")));
    }
    outcome(bad.is_empty() && literal_bad.is_empty(), detail)
}

fn c7_normalization() -> Outcome {
    let mut bad = Vec::new();
    let mut dims = Vec::new();
    for (name, p) in PAIRS {
        let input = load(name);
        let pair = input.pair(p).unwrap();
        let delta = pair.delta(&input.hopf).unwrap();
        let c = coinvariant_mixed_complex(&input.calculus(), &delta, &pair.sigma, 3).expect("complexes");
        let mut hh = Vec::new();
        for k in 0..=2 {
            let m = induced_map(&c.module.projection, &c.cm, &c.normalized, k, Theory::Hochschild).expect("chain map");
            if !m.iso() {
                bad.push(format!("{name} HH^{k}"));
            }
            hh.push(m.matrix.nrows());
        }
        dims.push(format!("{name} {hh:?}"));
    }
    let detail = if bad.is_empty() {
        format!("projection iso on HH^0..2: {}", dims.join(", "))
    } else {
        format!("not iso: {}", bad.join(", "))
    };
    outcome(bad.is_empty(), detail)
}

fn c8_identification() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut dims = Vec::new();
    for (name, p) in PAIRS {
        let input = load(name);
        let pair = input.pair(p).unwrap();
        let delta = pair.delta(&input.hopf).unwrap();
        let c = coinvariant_mixed_complex(&input.calculus(), &delta, &pair.sigma, 3).expect("complexes");
        if !c.chain_map.passed() {
            bad.push(format!("{name} chain map"));
        }
        let tn = periodicity_and_hp(&c.normalized, 3).unwrap();
        let tc = periodicity_and_hp(&c.module_facing, 3).unwrap();
        for k in 0..=2 {
            for theory in [Theory::Hochschild, Theory::Cyclic] {
                match induced_map(&c.chain_map.maps, &c.normalized, &c.module_facing, k, theory) {
                    Ok(m) if m.iso() => {}
                    Ok(_) => bad.push(format!("{name} {theory:?}^{k} not iso")),
                    Err(e) => bad.push(format!("{name} {theory:?}^{k}: {e}")),
                }
            }
        }
        if tn.hh() != tc.hh() || tn.hc() != tc.hc() {
            bad.push(format!("{name} dimensions differ"));
        }
        dims.push(format!("{name} HH {:?} HC {:?}", tc.hh(), tc.hc()));
    }
    let el = t.elapsed();
    let detail = if bad.is_empty() {
        format!("phi certified, HH and HC iso in degrees <= 2: {}; {}", dims.join(", "), secs(el))
    } else {
        bad.join("; ")
    };
    outcome(bad.is_empty() && el < Duration::from_secs(600), detail)
}

fn run_cli(args: &[&str]) -> (Vec<u8>, Option<i32>) {
    let o = Command::new(env!("CARGO_BIN_EXE_hopfcyc"))
        .args(args)
        .env_remove(hopfcyc::store::CACHE_ENV)
        .output()
        .expect("run hopfcyc");
    (o.stdout, o.status.code())
}

fn golden(name: &str) -> Vec<u8> {
    std::fs::read(fixtures().join("golden").join(name)).expect("golden fixture")
}

fn c9_trivial_anchor() -> Outcome {
    let input = load("trivial");
    let h = &input.hopf;
    let eps = Character::counit(h);
    let one = hopfcyc_core::linalg::SparseVec::unit(0);
    let m = connes_moscovici_module(h, &eps, &one, 6);
    let (mixed, _) = mixed_of_cocyclic(&m).unwrap();
    let t = periodicity_and_hp(&mixed, 6).unwrap();
    let hc: Vec<usize> = t.hc()[..5].to_vec();
    let stabilized = t.stabilization.iter().all(|s| s.stabilized);

    // Connes' complex of λ-invariant cochains
    let frames: Vec<Frame> = (0..=5)
        .map(|n| {
            let l = m.signed_cyclic(n);
            Frame::from_subspace(&kernel(&SparseMatrix::identity(l.nrows()).sub(&l)))
        })
        .collect();
    let b: Vec<SparseMatrix> = (0..5)
        .map(|n| restrict_in_frames(&m.coboundary(n), &frames[n], &frames[n + 1]).expect("b preserves ker(1 - lambda)"))
        .collect();
    let oracle: Vec<usize> = (0..5)
        .map(|n| {
            let d_in = if n == 0 { SparseMatrix::zeros(frames[0].len(), 0) } else { b[n - 1].clone() };
            cohomology_dim(&d_in, &b[n]).unwrap().dim
        })
        .collect();

    let (out, code) = run_cli(&["cohomology", "--builtin", "trivial", "--pair", "eps-1", "--complex", "cm", "-N", "6", "--format", "json"]);
    let golden_ok = out == golden("trivial_cm_6.json") && code == Some(0);
    outcome(
        hc == [1, 0, 1, 0, 1] && oracle == hc && stabilized && golden_ok,
        format!(
            "HC^0..4 = {hc:?}, lambda-complex oracle {oracle:?}, both parities stabilized: {stabilized}, CLI matches fixture: {golden_ok}"
        ),
    )
}

fn c10_f_twisted() -> Outcome {
    let mut bad = Vec::new();
    for name in ["group:Z2", "group:Z3", "sweedler"] {
        let input = load(name);
        let id = SparseMatrix::identity(input.dim());
        let m = f_twisted_module(input.hopf.algebra(), &id, ARBITRATION_DEPTH).unwrap();
        let r = verify_cyclic_identities(&m);
        let tau = r.checks.iter().filter(|c| c.name.starts_with("tau^(n+1)"));
        let all_id = tau.clone().count() > 0 && tau.clone().all(|c| c.detail.ends_with("f^(n+1) = id"));
        if !r.passed() || !all_id {
            bad.push(format!("{name} with f = id"));
        }
    }
    let input = load("sweedler");
    let chi = input.character("chi").unwrap();
    let f = input.hopf.two_sided_twist(&chi, &chi).unwrap();
    let report = || verify_cyclic_identities(&f_twisted_module(input.hopf.algebra(), &f, 2).unwrap());
    let (r1, r2) = (report(), report());
    let tau: Vec<String> = r1
        .checks
        .iter()
        .filter(|c| c.name.starts_with("tau^(n+1)"))
        .map(|c| c.detail.clone())
        .collect();
    if !r1.passed() {
        bad.push("Sweedler twist: simplicial identities".into());
    }
    if r1 != r2 {
        bad.push("Sweedler twist: reports differ between runs".into());
    }
    let (out, _) = run_cli(&[
        "cohomology", "--builtin", "sweedler", "--complex", "f-twisted", "--f", "twist:chi;chi", "-N", "2", "--format", "json",
    ]);
    if out != golden("sweedler_f_twisted_2.json") {
        bad.push("Sweedler twist: CLI output differs from fixture".into());
    }
    let detail = if bad.is_empty() {
        format!(
            "f = id: cyclic on Z2, Z3, Sweedler; Sweedler twist chi;chi: {}",
            tau.first().map_or("-", |s| s.as_str())
        )
    } else {
        bad.join("; ")
    };
    outcome(bad.is_empty(), detail)
}

fn c11_determinism() -> Outcome {
    let bad_file = fixtures().join("mutations/z3_mult_associativity.json");
    let sweedler_file = fixtures().join("sweedler.json");
    let bad_file = bad_file.to_str().unwrap();
    let sweedler_file = sweedler_file.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["validate", "--builtin", "sweedler"],
        vec!["validate", bad_file],
        vec!["validate", "--builtin", "trivial"],
        vec!["validate", sweedler_file],
        vec!["identities", "--builtin", "group:Z2", "--pair", "eps-1", "-N", "4"],
        vec!["identities", "--builtin", "sweedler", "--pair", "eps-1", "-N", "2"],
        vec!["identities", "--builtin", "sweedler", "--pair", "eps-g", "-N", "3"],
        vec!["cohomology", "--builtin", "trivial", "--pair", "eps-1", "--complex", "cm", "-N", "6"],
        vec!["cohomology", "--builtin", "group:Z2", "--pair", "eps-1", "--complex", "all", "-N", "4"],
        vec!["cohomology", "--builtin", "sweedler", "--pair", "eps-g", "--complex", "coinvariant", "-N", "3"],
        vec!["cohomology", "--builtin", "sweedler", "--complex", "f-twisted", "--f", "twist:chi;chi", "-N", "2"],
        vec!["operators", "--builtin", "group:Z2", "--op", "kappa", "--degree", "1"],
        vec!["operators", "--builtin", "trivial", "--op", "b", "--degree", "1"],
        vec!["operators", "--builtin", "sweedler", "--op", "B'", "--degree", "0"],
        vec!["export", "--builtin", "sweedler"],
    ];
    let mut runs = 0;
    let mut bad = Vec::new();
    for cmd in &commands {
        for format in ["table", "json", "csv"] {
            let mut args = cmd.clone();
            args.extend(["--format", format]);
            let first = run_cli(&args);
            let second = run_cli(&args);
            runs += 2;
            if first != second || first.0.is_empty() {
                bad.push(format!("{} ({format})", cmd.join(" ")));
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{} commands x 3 formats, {runs} runs, byte-identical", commands.len())
    } else {
        format!("differs: {}", bad.join("; "))
    };
    outcome(bad.is_empty(), detail)
}

#[test]
fn primary_criteria() {
    let criteria: [Criterion; 11] = [
        (1, "Hopf validation", c1_validation),
        (2, "operator identity suite", c2_identities),
        (3, "coinvariant dimensions", c3_coinvariant_dims),
        (4, "stability", c4_stability),
        (5, "coordinate formulas", c5_coordinate_formulas),
        (6, "harmonic subcomplex", c6_harmonic),
        (7, "normalization", c7_normalization),
        (8, "coinvariant identification", c8_identification),
        (9, "trivial algebra anchor", c9_trivial_anchor),
        (10, "f-twisted module", c10_f_twisted),
        (11, "determinism", c11_determinism),
    ];
    let mut failing = BTreeSet::new();
    for (id, name, run) in criteria {
        let o = run();
        // bypass the test harness capture so the lines land in the log
        let mut out = std::io::stdout().lock();
        let _ = writeln!(
            out,
            "criterion {id} [PRIMARY] {name}: {} ({})",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.passed {
            failing.insert(id);
        }
    }
    let known: BTreeSet<u32> = KNOWN_FAILURES.into_iter().collect();
    assert_eq!(failing, known, "failing criteria differ from the known failures");
}
