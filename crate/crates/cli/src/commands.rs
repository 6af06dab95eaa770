//! The subcommands. Each builds a [`Document`]; mathematical failures that
//! are results (a failed axiom or identity) mark it failed, failures that
//! prevent the computation are errors.

use clap::ValueEnum;
use hopfcyc_core::cohomology::{induced_map, periodicity_and_hp, CohomologyTable, Theory};
use hopfcyc_core::cyclic::{
    coinvariant_mixed_complex, connes_moscovici_module, f_twisted_module, invariant_mixed_complex, mixed_of_cocyclic,
    normalized_cm_module, verify_cyclic_identities, CoinvariantComplexes, MixedComplex, ARBITRATION_DEPTH,
};
use hopfcyc_core::hopf::Character;
use hopfcyc_core::omega::{Calculus, OpKind, Side, SignFit, TwistContext};
use hopfcyc_core::report::{IdentityReport, Status};
use serde_json::{json, Value};

use crate::emit::{Document, Section};
use crate::error::CliError;
use crate::input::{Input, Pair, TwistSpec};

/// Default cutoff: 3 for algebras of dimension at least 6, else 4.
pub fn default_max_degree(dim: usize) -> usize {
    if dim >= 6 {
        3
    } else {
        4
    }
}

fn witness(w: Option<(usize, usize)>) -> Value {
    match w {
        Some((r, c)) => json!([r, c]),
        None => Value::Null,
    }
}

fn degree(d: Option<usize>) -> Value {
    d.map_or(Value::Null, Value::from)
}

const CHECK_COLUMNS: [&str; 6] = ["check", "degree", "xi", "status", "witness", "detail"];

/// Appends the checks of `r` accepted by `keep`; returns whether none failed.
fn add_checks(s: &mut Section, r: &IdentityReport, xi: &str, keep: impl Fn(&str) -> bool) -> bool {
    let mut ok = true;
    for c in r.checks.iter().filter(|c| keep(&c.name)) {
        ok &= c.status != Status::Fail;
        s.row(vec![
            json!(c.name),
            degree(c.degree),
            json!(xi),
            json!(c.status.to_string()),
            witness(c.witness),
            json!(c.detail),
        ]);
    }
    ok
}

fn skipped(s: &mut Section, name: &str, xi: &str, why: &str) {
    s.row(vec![
        json!(name),
        Value::Null,
        json!(xi),
        json!(Status::Skipped.to_string()),
        Value::Null,
        json!(why),
    ]);
}

pub fn validate(input: &Input) -> Document {
    let mut doc = Document::new("validate", &input.label);
    let r = input.hopf.validate();
    let mut s = Section::new("Hopf axioms", &["axiom", "status", "witness", "witness labels"]);
    for c in &r.checks {
        let labels = c.witness.as_ref().map_or(Value::Null, |w| {
            let names: Vec<&str> = w.iter().map(|&i| input.hopf.label(i)).collect();
            json!(names.join(", "))
        });
        s.row(vec![
            json!(c.name),
            json!(if c.passed { "pass" } else { "FAIL" }),
            c.witness.as_ref().map_or(Value::Null, |w| json!(w)),
            labels,
        ]);
    }
    s.note(format!("dimension {}", input.dim()));
    s.note(format!("S^2 = id: {}", if r.antipode_involutive { "yes" } else { "no" }));
    doc.push(s);
    doc.passed = r.passed();
    doc
}

fn pair_section(pair: &Pair) -> Section {
    let r = &pair.report;
    let mut s = Section::new("modular pair", &["check", "holds"]);
    s.row(vec![json!("delta is a character"), json!(r.delta_is_character)]);
    s.row(vec![json!("sigma is group-like"), json!(r.sigma_grouplike)]);
    s.row(vec![json!("delta(sigma) = 1"), json!(r.delta_of_sigma_is_one)]);
    s.row(vec![json!("S_delta^2 = Ad sigma"), json!(r.involution)]);
    s.row(vec![json!("(sigma^-1 S_delta)^2 = id"), json!(r.involution_alt)]);
    s.note(format!("pair {}", pair.spec));
    if let Some(i) = r.involution_witness {
        s.note(format!("involution fails on basis element {i}"));
    }
    s.note(if r.is_valid() {
        "modular pair in involution".to_string()
    } else {
        format!("not a modular pair in involution: {}", pair.failures().join("; "))
    });
    s
}

fn twist_contexts(input: &Input, pair: &Pair, spec: &TwistSpec) -> Result<Vec<(String, TwistContext)>, CliError> {
    let h = &input.hopf;
    let mut out = vec![("eps".to_string(), TwistContext::counit(h))];
    match spec {
        TwistSpec::None => {}
        TwistSpec::Auto => {
            if let Ok(xi) = pair.xi(h) {
                if xi != Character::counit(h) {
                    out.push(("delta o S".into(), TwistContext::new(h, xi)));
                }
            }
        }
        TwistSpec::Character(_) => {
            if let Some(t) = input.twist(spec, Some(pair))? {
                out = vec![t];
            }
        }
    }
    Ok(out)
}

pub struct IdentityOptions {
    pub pair: String,
    pub twist: TwistSpec,
    pub max_degree: Option<usize>,
}

pub fn identities(input: &Input, opts: &IdentityOptions) -> Result<Document, CliError> {
    input.require_valid()?;
    let n_max = opts.max_degree.unwrap_or_else(|| default_max_degree(input.dim()));
    let pair = input.pair(&opts.pair)?;
    let h = &input.hopf;
    let calc = input.calculus();
    let mut doc = Document::new("identities", &input.label);
    let valid = pair.report.is_valid();
    doc.push(pair_section(&pair));
    let mut passed = valid;

    let twists = twist_contexts(input, &pair, &opts.twist)?;
    let mut s = Section::new("operator identities", &CHECK_COLUMNS);
    for (k, (name, ctx)) in twists.iter().enumerate() {
        for n in 0..=n_max {
            let r = calc.verify_identities(n, Some(ctx));
            // the untwisted rows do not depend on ξ
            passed &= add_checks(&mut s, &r, name, |c| k == 0 || c.contains("xi"));
        }
    }
    doc.push(s);

    let mut s = Section::new("Leibniz rules", &CHECK_COLUMNS);
    passed &= add_checks(&mut s, &calc.verify_leibniz(n_max, None), "-", |_| true);
    for (name, ctx) in &twists {
        if !ctx.is_trivial() {
            passed &= add_checks(&mut s, &calc.verify_leibniz(n_max, Some(ctx)), name, |_| true);
        }
    }
    doc.push(s);

    let mut s = Section::new("sign of b' = s b kappa'", &["degree", "sign"]);
    let mut common = SignFit::Either;
    for n in 1..=n_max {
        let fit = calc.hochschild_prime_sign(n);
        common = match (common.sign(), fit.sign()) {
            (_, None) if fit == SignFit::Either => common,
            (None, _) if common == SignFit::Either => fit,
            (Some(a), Some(b)) if a == b => common,
            _ => SignFit::Neither,
        };
        s.row(vec![json!(n), json!(fit.to_string())]);
    }
    if common == SignFit::Neither {
        passed = false;
        s.note("no sign holds in every degree");
    } else {
        s.note(format!("consistent sign: {common}"));
    }
    doc.push(s);

    passed &= coinvariant_dimensions(&mut doc, &calc, &pair, n_max);
    passed &= stability(&mut doc, input, &calc, &pair, n_max)?;

    let top = n_max.min(3);
    let mut s = Section::new(
        "coordinate formulas",
        &["formula", "degree", "expected sign", "measured sign", "status"],
    );
    if valid {
        let delta = pair.delta(h)?;
        for n in 1..=top {
            let r = calc
                .coordinate_formulas(n, &delta, &pair.sigma)
                .map_err(|e| CliError::Math(e.to_string()))?;
            for m in &r.matches {
                passed &= m.passed();
                s.row(vec![
                    json!(m.name),
                    json!(m.degree),
                    m.expected_sign.map_or(Value::Null, Value::from),
                    json!(m.sign.to_string()),
                    json!(if m.passed() { "pass" } else { "FAIL" }),
                ]);
            }
        }
    } else {
        s.note("skipped: needs a modular pair in involution");
    }
    doc.push(s);

    let mut s = Section::new("harmonic subcomplex", &CHECK_COLUMNS);
    for n in 0..=top {
        match calc.verify_harmonic(n) {
            Ok(r) => passed &= add_checks(&mut s, &r, "-", |_| true),
            Err(e) => {
                passed = false;
                s.row(vec![
                    json!("harmonic projection"),
                    json!(n),
                    json!("-"),
                    json!(Status::Fail.to_string()),
                    Value::Null,
                    json!(e.to_string()),
                ]);
            }
        }
    }
    doc.push(s);

    doc.passed = passed;
    Ok(doc)
}

fn coinvariant_dimensions(doc: &mut Document, calc: &Calculus, pair: &Pair, n_max: usize) -> bool {
    let mut s = Section::new("coinvariant dimensions", &["space", "degree", "dim", "expected", "status"]);
    let mut ok = true;
    let d = calc.dim() - 1;
    let delta = pair.delta(calc.hopf()).ok();
    let one = hopfcyc_core::linalg::SparseVec::unit(0);
    let spaces: Vec<(&str, &hopfcyc_core::linalg::SparseVec, Option<&Character>)> = if pair.report.is_valid() {
        vec![("Omega^R", &one, None), ("Omega^R_(xi,sigma)", &pair.sigma, delta.as_ref())]
    } else {
        vec![("Omega^R", &one, None)]
    };
    for (name, sigma, delta) in spaces {
        for n in 0..=n_max {
            let expected = d.pow(n as u32);
            let (dim, status) = match calc.coinvariant_subspace(Side::Right, n, sigma, delta) {
                Ok(c) if c.dim() == expected => (json!(c.dim()), "pass"),
                Ok(c) => (json!(c.dim()), "FAIL"),
                Err(e) => (json!(e.to_string()), "FAIL"),
            };
            ok &= status == "pass";
            s.row(vec![json!(name), json!(n), dim, json!(expected), json!(status)]);
        }
    }
    if !pair.report.is_valid() {
        s.note("Omega^R_(xi,sigma) skipped: needs a modular pair in involution");
    }
    doc.push(s);
    ok
}

fn stability(doc: &mut Document, input: &Input, calc: &Calculus, pair: &Pair, n_max: usize) -> Result<bool, CliError> {
    use OpKind::*;
    let h = &input.hopf;
    let mut s = Section::new("stability", &CHECK_COLUMNS);
    let mut ok = true;
    // untwisted operators on the σ-coinvariants need (ε, σ) in involution
    let untwisted = h.check_modular_pair(h.counit_values(), &pair.sigma).is_valid();
    let where_ = |name: &str| format!("{name} on Omega^R_sigma");
    if untwisted {
        let r = calc
            .verify_stability(Side::Right, n_max, &pair.sigma, None, None, &[HochschildPrime, KaroubiPrime, ConnesPrime])
            .map_err(|e| CliError::Math(e.to_string()))?;
        ok &= add_checks(&mut s, &r, "-", |_| true);
    } else {
        skipped(&mut s, &where_("b', kappa', B'"), "-", "needs (eps, sigma) in involution");
    }
    if pair.report.is_valid() {
        let delta = pair.delta(h)?;
        let ctx = TwistContext::new(h, h.character_inverse(&delta));
        let r = calc
            .verify_stability(Side::Right, n_max, &pair.sigma, Some(&delta), Some(&ctx), &[HochschildPrime, KaroubiPrime, Connes])
            .map_err(|e| CliError::Math(e.to_string()))?;
        ok &= add_checks(&mut s, &r, "delta o S", |_| true);
    } else {
        skipped(&mut s, "b'_xi, kappa'_xi, B_xi on Omega^R_(xi,sigma)", "delta o S", "needs a modular pair in involution");
    }
    doc.push(s);
    Ok(ok)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComplexKind {
    /// The Connes–Moscovici cocyclic module.
    Cm,
    /// Its normalized subcomplex.
    Normalized,
    /// The module-facing mixed complex on σ-coinvariant forms.
    Coinvariant,
    /// The twisted cyclic module of an automorphism (invariant part).
    FTwisted,
    /// cm, normalized and coinvariant side by side, with induced maps.
    All,
}

pub struct CohomologyOptions {
    pub pair: String,
    pub complex: ComplexKind,
    pub max_degree: Option<usize>,
    pub automorphism: String,
}

fn cohomology_section(title: &str, t: &CohomologyTable) -> Section {
    let mut s = Section::new(title, &["degree", "HH", "HC", "reliable", "S: HC^(n-2) -> HC^n iso"]);
    for r in &t.rows {
        s.row(vec![
            json!(r.degree),
            json!(r.hh),
            json!(r.hc),
            json!(r.truncation_reliable),
            r.s_map.as_ref().map_or(Value::Null, |m| json!(m.iso())),
        ]);
    }
    s.note(format!("complex: {}", t.complex));
    s.note(format!("convention: {}", t.convention));
    s.note(format!("total differential: {}", t.total_sign.describe()));
    for st in &t.stabilization {
        let parity = if st.parity == 0 { "even" } else { "odd" };
        s.note(if st.stabilized {
            format!("{parity} degrees: S-stabilized, periodic dimension {}", st.dim)
        } else {
            format!("{parity} degrees: not S-stabilized within degree {}", t.max_degree)
        });
    }
    s
}

fn table(m: &MixedComplex, n: usize) -> Result<CohomologyTable, CliError> {
    periodicity_and_hp(m, n).map_err(|e| CliError::Math(e.to_string()))
}

fn math<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Math(e.to_string())
}

pub fn cohomology(input: &Input, opts: &CohomologyOptions) -> Result<Document, CliError> {
    input.require_valid()?;
    let n = opts.max_degree.unwrap_or_else(|| default_max_degree(input.dim()));
    if n == 0 {
        return Err(CliError::Usage("--max-degree must be at least 1".into()));
    }
    let h = &input.hopf;
    let depth = n.max(ARBITRATION_DEPTH);
    let mut doc = Document::new("cohomology", &input.label);

    if opts.complex == ComplexKind::FTwisted {
        let f = input.automorphism(&opts.automorphism)?;
        let m = f_twisted_module(h.algebra(), &f, depth).map_err(math)?;
        let mut s = Section::new("cyclic identities", &CHECK_COLUMNS);
        let ok = add_checks(&mut s, &verify_cyclic_identities(&m.truncate(n)), "-", |_| true);
        s.note(format!("automorphism {}", opts.automorphism));
        doc.push(s);
        let inv = invariant_mixed_complex(&m).map_err(math)?;
        let t = table(&inv.mixed, n)?;
        doc.push(cohomology_section("f-twisted", &t));
        doc.passed = ok;
        return Ok(doc);
    }

    let pair = input.pair(&opts.pair)?;
    doc.push(pair_section(&pair));
    pair.require_valid()?;
    let delta = pair.delta(h)?;

    match opts.complex {
        ComplexKind::Cm => {
            let m = connes_moscovici_module(h, &delta, &pair.sigma, depth);
            let (mixed, _) = mixed_of_cocyclic(&m).map_err(math)?;
            doc.push(cohomology_section("cm", &table(&mixed, n)?));
        }
        ComplexKind::Normalized => {
            let nm = normalized_cm_module(h, &delta, &pair.sigma, depth);
            let (full, _) = mixed_of_cocyclic(&nm.full).map_err(math)?;
            let (mixed, report) = nm.mixed(&full).map_err(math)?;
            doc.passed &= report.passed();
            doc.push(cohomology_section("normalized", &table(&mixed, n)?));
        }
        ComplexKind::Coinvariant => {
            let c = coinvariant_mixed_complex(&input.calculus(), &delta, &pair.sigma, n).map_err(math)?;
            doc.push(cohomology_section("coinvariant", &table(&c.module_facing, n)?));
        }
        ComplexKind::All => {
            let c = coinvariant_mixed_complex(&input.calculus(), &delta, &pair.sigma, n).map_err(math)?;
            let cm = table(&c.cm, n)?;
            let normalized = table(&c.normalized, n)?;
            let coinvariant = table(&c.module_facing, n)?;
            doc.push(cohomology_section("cm", &cm));
            doc.push(cohomology_section("normalized", &normalized));
            doc.push(cohomology_section("coinvariant", &coinvariant));
            doc.passed &= compare(&mut doc, &c, n)?;
        }
        ComplexKind::FTwisted => unreachable!("handled above"),
    }
    Ok(doc)
}

/// Side-by-side dimensions and induced-map verdicts for `--complex all`.
fn compare(doc: &mut Document, c: &CoinvariantComplexes, n: usize) -> Result<bool, CliError> {
    let mut ok = c.chain_map.passed() && c.normalized_report.passed();
    let mut s = Section::new("chain map normalized -> coinvariant", &["correspondence", "degree", "sign"]);
    for i in &c.chain_map.intertwinings {
        s.row(vec![json!(i.name), json!(i.degree), json!(i.sign.to_string())]);
    }
    s.note(format!("phi = diag{:?}", c.chain_map.signs));
    s.note(format!(
        "exact intertwining: {}",
        if c.chain_map.certified.passed() { "certified" } else { "FAILED" }
    ));
    doc.push(s);

    let iso = |f, src, dst, k, theory| -> Result<bool, CliError> {
        Ok(induced_map(f, src, dst, k, theory).map_err(math)?.iso())
    };
    let phi = &c.chain_map.maps;
    let mut s = Section::new(
        "normalized vs coinvariant",
        &["degree", "HH normalized", "HH coinvariant", "HH iso", "HC normalized", "HC coinvariant", "HC iso"],
    );
    let (tn, tc) = (table(&c.normalized, n)?, table(&c.module_facing, n)?);
    for k in 0..n {
        let hh = iso(phi, &c.normalized, &c.module_facing, k, Theory::Hochschild)?;
        let hc = iso(phi, &c.normalized, &c.module_facing, k, Theory::Cyclic)?;
        ok &= hh && hc;
        s.row(vec![
            json!(k),
            json!(tn.rows[k].hh),
            json!(tc.rows[k].hh),
            json!(hh),
            json!(tn.rows[k].hc),
            json!(tc.rows[k].hc),
            json!(hc),
        ]);
    }
    s.note("induced by phi");
    doc.push(s);

    let (proj, incl) = (&c.module.projection, &c.module.inclusion);
    let tf = table(&c.cm, n)?;
    let mut s = Section::new(
        "full vs normalized",
        &["degree", "HH full", "HH normalized", "HH iso (proj)", "HH iso (incl)", "HC full", "HC normalized", "HC iso (incl)"],
    );
    for k in 0..n {
        let p = iso(proj, &c.cm, &c.normalized, k, Theory::Hochschild)?;
        let i = iso(incl, &c.normalized, &c.cm, k, Theory::Hochschild)?;
        let ic = iso(incl, &c.normalized, &c.cm, k, Theory::Cyclic)?;
        ok &= p && i && ic;
        s.row(vec![
            json!(k),
            json!(tf.rows[k].hh),
            json!(tn.rows[k].hh),
            json!(p),
            json!(i),
            json!(tf.rows[k].hc),
            json!(tn.rows[k].hc),
            json!(ic),
        ]);
    }
    doc.push(s);
    Ok(ok)
}

pub struct OperatorOptions {
    pub pair: Option<String>,
    pub op: OpKind,
    pub degree: usize,
    pub twist: TwistSpec,
}

pub fn operators(input: &Input, opts: &OperatorOptions) -> Result<Document, CliError> {
    input.require_valid()?;
    let pair = opts.pair.as_deref().map(|p| input.pair(p)).transpose()?;
    let twist = input.twist(&opts.twist, pair.as_ref())?;
    let calc = input.calculus();
    let n = opts.degree;
    let m = calc.op(opts.op, n, twist.as_ref().map(|(_, t)| t));
    let target = opts.op.target_degree(n);

    let mut doc = Document::new("operators", &input.label);
    let mut s = Section::new("operator", &[]);
    s.note(format!("{} on Omega_{n}", opts.op.name()));
    s.note(format!("twist: {}", twist.as_ref().map_or("none", |(name, _)| name.as_str())));
    s.note(format!(
        "target: {}",
        target.map_or("0 (below degree 0)".to_string(), |t| format!("Omega_{t}"))
    ));
    s.note(format!("shape: {} x {}", m.nrows(), m.ncols()));
    doc.push(s);

    let basis = |title: &str, deg: Option<usize>, len: usize| {
        let mut s = Section::new(title, &["index", "label"]);
        if let Some(deg) = deg {
            for i in 0..len {
                s.row(vec![json!(i), json!(calc.basis_label(i, deg))]);
            }
        }
        s
    };
    doc.push(basis("source basis", Some(n), m.ncols()));
    doc.push(basis("target basis", target, m.nrows()));

    let mut entries = m.triplets();
    entries.sort_by_key(|&(r, c, _)| (r, c));
    let mut s = Section::new("entries", &["row", "column", "value"]);
    for (r, c, v) in entries {
        s.row(vec![json!(r), json!(c), json!(v.to_string())]);
    }
    doc.push(s);
    Ok(doc)
}
