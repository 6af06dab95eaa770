use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hopfcyc::format::AlgebraFile;
use hopfcyc_core::hopf::builtins::{builtin, NAMES};
use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn hopfcyc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcyc"))
        .args(args)
        .env_remove("HOPFCYC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = hopfcyc(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", stdout(&o)));
    (v, o.status.code().unwrap())
}

fn section<'a>(doc: &'a Value, title: &str) -> &'a Value {
    doc["sections"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["title"] == title)
        .unwrap_or_else(|| panic!("no section {title}"))
}

fn column(sec: &Value, name: &str) -> Vec<Value> {
    let idx = sec["columns"].as_array().unwrap().iter().position(|c| c == name).unwrap();
    sec["rows"].as_array().unwrap().iter().map(|r| r[idx].clone()).collect()
}

#[test]
fn builtins_validate() {
    for name in NAMES {
        let o = hopfcyc(&["validate", "--builtin", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert!(stdout(&o).ends_with("result: pass\n"));
    }
}

#[test]
fn mutations_fail_with_witness() {
    let dir = fixtures().join("mutations");
    let mut count = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let (doc, code) = json(&["validate", path.to_str().unwrap()]);
        assert_eq!(code, 1, "{path:?}");
        assert_eq!(doc["passed"], false);
        let axioms = section(&doc, "Hopf axioms");
        let failed: Vec<&Value> = axioms["rows"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|r| r[1] == "FAIL")
            .collect();
        assert!(!failed.is_empty(), "{path:?}");
        assert!(failed.iter().all(|r| r[2].is_array()), "{path:?}: witness missing");
        count += 1;
    }
    assert_eq!(count, 10);
}

#[test]
fn mutation_names_the_broken_axiom() {
    let dir = fixtures().join("mutations");
    for (file, axiom) in [
        ("z3_mult_associativity.json", "associativity"),
        ("z2_mult_unit.json", "unit"),
        ("z2_comult_counit.json", "counit"),
        ("z3_counit_multiplicative.json", "counit multiplicative"),
        ("s3_antipode.json", "antipode (left)"),
        ("sweedler_mult_sign.json", "associativity"),
        ("sweedler_antipode.json", "antipode (right)"),
        ("sweedler_comult_multiplicative.json", "comultiplication multiplicative"),
        ("trivial_counit_unital.json", "counit unital"),
        ("functions_z3_coassociativity.json", "coassociativity"),
    ] {
        let (doc, _) = json(&["validate", dir.join(file).to_str().unwrap()]);
        let rows = section(&doc, "Hopf axioms")["rows"].as_array().unwrap().clone();
        let row = rows.iter().find(|r| r[0] == axiom).unwrap();
        assert_eq!(row[1], "FAIL", "{file}");
    }
}

#[test]
fn builtins_round_trip_through_the_file_format() {
    for name in NAMES {
        let h = builtin(name).unwrap().hopf;
        let file = AlgebraFile::from_hopf(&h);
        let back = AlgebraFile::parse(&file.to_json()).unwrap();
        assert_eq!(back, file, "{name}");
        assert_eq!(back.to_hopf().unwrap(), h, "{name}");
    }
}

#[test]
fn export_then_validate_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.json");
    let o = hopfcyc(&["export", "--builtin", "group:S3"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&path, &o.stdout).unwrap();
    let o = hopfcyc(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // the committed Sweedler file is the export of the builtin
    let committed = std::fs::read(fixtures().join("sweedler.json")).unwrap();
    assert_eq!(hopfcyc(&["export", "--builtin", "sweedler"]).stdout, committed);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = dir.path().join("bad.json");
    std::fs::write(&bad_json, "{\"dim\": 1,").unwrap();
    let mut shifted: Value = serde_json::from_slice(&std::fs::read(fixtures().join("sweedler.json")).unwrap()).unwrap();
    shifted["unit"] = 1.into();
    let bad_unit = dir.path().join("unit.json");
    std::fs::write(&bad_unit, shifted.to_string()).unwrap();
    let mut bad_scalar = shifted.clone();
    bad_scalar["unit"] = 0.into();
    bad_scalar["counit"][0] = "1/0".into();
    let bad_frac = dir.path().join("frac.json");
    std::fs::write(&bad_frac, bad_scalar.to_string()).unwrap();
    for args in [
        vec!["validate", bad_json.to_str().unwrap()],
        vec!["validate", bad_unit.to_str().unwrap()],
        vec!["validate", bad_frac.to_str().unwrap()],
        vec!["validate", "/nonexistent/algebra.json"],
        vec!["validate", "--builtin", "group:Z7"],
        vec!["validate"],
        vec!["identities", "--builtin", "sweedler", "--pair", "eps"],
        vec!["identities", "--builtin", "sweedler", "--pair", "eps;1,2"],
        vec!["operators", "--builtin", "sweedler", "--op", "kappa''", "--degree", "1"],
        vec!["cohomology", "--builtin", "sweedler", "--complex", "dihedral"],
        vec!["cohomology", "--builtin", "trivial", "-N", "0"],
    ] {
        let o = hopfcyc(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn operators_examples() {
    let (doc, code) = json(&["operators", "--builtin", "group:Z2", "--op", "kappa", "--degree", "1"]);
    assert_eq!(code, 0);
    assert_eq!(column(section(&doc, "source basis"), "label"), ["dg", "g dg"]);
    let entries = section(&doc, "entries")["rows"].clone();
    assert_eq!(entries, serde_json::json!([[0, 0, "1"], [1, 1, "-1"]]));

    let (doc, code) = json(&["operators", "--builtin", "trivial", "--op", "b", "--degree", "1"]);
    assert_eq!(code, 0);
    assert!(section(&doc, "entries")["rows"].as_array().unwrap().is_empty());
    assert!(section(&doc, "source basis")["rows"].as_array().unwrap().is_empty());

    // B' = d in degree 0
    let (bp, _) = json(&["operators", "--builtin", "sweedler", "--op", "B'", "--degree", "0"]);
    let (d, _) = json(&["operators", "--builtin", "sweedler", "--op", "d", "--degree", "0"]);
    assert_eq!(section(&bp, "entries"), section(&d, "entries"));
    assert!(!section(&d, "entries")["rows"].as_array().unwrap().is_empty());
}

#[test]
fn twisted_operator_needs_a_pair_for_auto() {
    let o = hopfcyc(&["operators", "--builtin", "sweedler", "--op", "b", "--degree", "1", "--twist", "auto"]);
    assert_eq!(o.status.code(), Some(2));
    let (doc, code) = json(&[
        "operators", "--builtin", "sweedler", "--op", "xi", "--degree", "0", "--twist", "chi",
    ]);
    assert_eq!(code, 0);
    // ξ̃ for χ = (1, -1, 0, 0) fixes 1 and x and negates g and gx
    let entries = section(&doc, "entries")["rows"].clone();
    assert_eq!(entries, serde_json::json!([[0, 0, "1"], [1, 1, "-1"], [2, 2, "1"], [3, 3, "-1"]]));
}

#[test]
fn identities_examples() {
    let (doc, code) = json(&["identities", "--builtin", "group:Z2", "--pair", "eps-1", "-N", "4"]);
    assert_eq!(code, 0);
    assert_eq!(doc["passed"], true);

    let (doc, code) = json(&["identities", "--builtin", "sweedler", "--pair", "eps-g", "-N", "3"]);
    assert_eq!(code, 0);
    let stab = section(&doc, "stability");
    assert!(column(stab, "status").iter().all(|s| s == "pass"));

    // (ε, 1) is not in involution on Sweedler's algebra
    let (doc, code) = json(&["identities", "--builtin", "sweedler", "--pair", "eps-1", "-N", "2"]);
    assert_eq!(code, 1);
    let pair = section(&doc, "modular pair");
    assert_eq!(pair["rows"][3], serde_json::json!(["S_delta^2 = Ad sigma", false]));
    let ops = section(&doc, "operator identities");
    assert!(column(ops, "status").iter().all(|s| s != "FAIL"));
    let stab = section(&doc, "stability");
    assert!(column(stab, "status").iter().all(|s| s == "skipped"));
    assert_eq!(column(stab, "status").len(), 2);
}

#[test]
fn explicit_coefficient_pairs() {
    // (ε, g) on Sweedler's algebra written out
    let (named, _) = json(&["cohomology", "--builtin", "sweedler", "--pair", "eps-g", "--complex", "cm", "-N", "3"]);
    let (coeffs, code) = json(&[
        "cohomology", "--builtin", "sweedler", "--pair", "1,1,0,0;0,1,0,0", "--complex", "cm", "-N", "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(section(&named, "cm"), section(&coeffs, "cm"));
}

#[test]
fn cohomology_examples() {
    let (doc, code) = json(&["cohomology", "--builtin", "trivial", "--pair", "eps-1", "--complex", "cm", "-N", "6"]);
    assert_eq!(code, 0);
    let cm = section(&doc, "cm");
    assert_eq!(column(cm, "HC"), [1, 0, 1, 0, 1, 0]);
    let notes = cm["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n == "even degrees: S-stabilized, periodic dimension 1"));
    assert!(notes.iter().any(|n| n == "odd degrees: S-stabilized, periodic dimension 0"));

    let (doc, code) = json(&["cohomology", "--builtin", "group:Z2", "--pair", "eps-1", "--complex", "all", "-N", "4"]);
    assert_eq!(code, 0);
    let cmp = section(&doc, "normalized vs coinvariant");
    assert_eq!(column(cmp, "HH normalized"), column(cmp, "HH coinvariant"));
    assert!(column(cmp, "HH iso").iter().all(|v| v == true));

    let (doc, code) = json(&["cohomology", "--builtin", "sweedler", "--pair", "eps-g", "--complex", "coinvariant", "-N", "3"]);
    assert_eq!(code, 0);
    assert_eq!(column(section(&doc, "coinvariant"), "degree"), [0, 1, 2]);
}

#[test]
fn invalid_pair_stops_cohomology() {
    let o = hopfcyc(&["cohomology", "--builtin", "sweedler", "--pair", "eps-1", "--complex", "cm"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid modular pair"));
}

#[test]
fn invalid_algebra_stops_other_commands() {
    let bad = fixtures().join("mutations/z3_mult_associativity.json");
    let o = hopfcyc(&["identities", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("associativity"));
}

#[test]
fn f_twisted_cohomology() {
    let (doc, code) = json(&["cohomology", "--builtin", "group:Z3", "--complex", "f-twisted", "-N", "4"]);
    assert_eq!(code, 0);
    // HC of Q^3
    assert_eq!(column(section(&doc, "f-twisted"), "HC"), [3, 0, 3, 0]);
    let (doc, code) = json(&[
        "cohomology", "--builtin", "sweedler", "--complex", "f-twisted", "--f", "twist:chi;chi", "-N", "2",
    ]);
    assert_eq!(code, 0);
    let ids = section(&doc, "cyclic identities");
    let details = column(ids, "detail");
    assert!(details.iter().any(|d| d == "measured: tau^(n+1) = f^(n+1) != id"));
}

#[test]
fn csv_and_table_formats() {
    let o = hopfcyc(&["cohomology", "--builtin", "trivial", "-N", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("section,degree,HH,HC,reliable,S: HC^(n-2) -> HC^n iso\n"));
    assert!(text.contains("cm,2,0,1,yes,yes\n"));
    assert!(text.ends_with("result,pass\n"));
    let o = hopfcyc(&["cohomology", "--builtin", "trivial", "-N", "4"]);
    assert!(stdout(&o).contains("\n== cm ==\n"));
}

#[test]
fn cache_directory_reproduces_results() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["identities", "--builtin", "group:Z3", "-N", "2", "--format", "json"];
    let plain = hopfcyc(&args);
    let cached = |_: ()| {
        Command::new(env!("CARGO_BIN_EXE_hopfcyc"))
            .args(args)
            .env("HOPFCYC_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = cached(());
    let stored = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(stored > 0);
    let second = cached(());
    assert_eq!(first.stdout, plain.stdout);
    assert_eq!(second.stdout, plain.stdout);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), stored);
}
