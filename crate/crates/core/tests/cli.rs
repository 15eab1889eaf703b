use std::path::PathBuf;

use rees::cli::{run, InstanceFile, RecordJson};
use rees::generators::recursion_generators;
use rees::ring::{PrimeField, Ring};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(format!("{name}.json"));
    p.display().to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["rees"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn bidegrees_table1_grid() {
    let (code, out, _) = call(&["bidegrees", &fixture("table1"), "--rows", "7"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "7 |          |");
    assert_eq!(lines[2], "5 |          |     1");
    assert_eq!(lines[6], "1 |          |  1                                      1");
}

#[test]
fn generators_json_parses_back_into_records() {
    let path = fixture("ex2n");
    let (code, out, _) = call(&["generators", &path, "-m", "1", "--json"]);
    assert_eq!(code, 0);
    let parsed: Vec<RecordJson> = serde_json::from_str(&out).unwrap();

    let inst = InstanceFile::load(std::path::Path::new(&path)).unwrap();
    let f = PrimeField::default();
    let p = inst.presentation(&f).unwrap();
    let level = p.level(1).unwrap();
    let recs = recursion_generators(&level, &p.sym_equations()[1]).unwrap();
    assert_eq!(parsed.len(), recs.len());
    let s = Ring::S { n: 3 };
    for (j, r) in parsed.iter().zip(&recs) {
        assert!(j.certified);
        assert_eq!(j.tag, r.tag);
        assert_eq!(j.bidegree, r.bidegree);
        assert_eq!(j.provenance, r.provenance);
        assert_eq!(s.parse(&f, &j.poly).unwrap(), r.poly);
        assert_eq!(level.scroll_ring().parse(&f, &j.image).unwrap(), r.image);
    }
    let again = serde_json::to_value(&parsed).unwrap();
    assert_eq!(again, serde_json::from_str::<serde_json::Value>(&out).unwrap());
}

#[test]
fn check_is_all_green() {
    let (code, out, _) = call(&["check", &fixture("ex2n"), "--seeds", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("all checks passed"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn random_is_deterministic_and_round_trips() {
    let a = call(&["random", "--n", "3", "--degrees", "2,5", "--seed", "42"]);
    let b = call(&["random", "--n", "3", "--degrees", "2,5", "--seed", "42"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
    let inst = InstanceFile::from_json(&a.1).unwrap();
    assert_eq!(inst.col_degrees, vec![2, 5]);
    let p = inst.presentation(&PrimeField::default()).unwrap();
    assert_eq!(InstanceFile::from_presentation(&p), inst);
    assert_eq!(inst.to_json().trim(), a.1.trim());

    let c = call(&["random", "--n", "3", "--degrees", "2,5", "--seed", "43"]);
    assert_ne!(a.1, c.1);
}

#[test]
fn random_almost_linear_instance() {
    let (code, out, _) = call(&["random", "--n", "3", "--degrees", "1,1", "--seed", "7"]);
    assert_eq!(code, 0);
    let inst = InstanceFile::from_json(&out).unwrap();
    assert!(inst.presentation(&PrimeField::default()).is_ok());
}

#[test]
fn fixture_round_trip() {
    let inst = InstanceFile::load(std::path::Path::new(&fixture("ex2n"))).unwrap();
    let p = inst.presentation(&PrimeField::default()).unwrap();
    let back = InstanceFile::from_presentation(&p);
    assert_eq!(back.presentation(&PrimeField::default()).unwrap().phi, p.phi);
    assert_eq!(back.field, inst.field);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["random", "--n", "3", "--degrees", "0,0", "--seed", "1"]).0, 1);
    assert_eq!(call(&["frobnicate"]).0, 1);
    assert_eq!(call(&["info", "--bogus"]).0, 1);
    assert_eq!(call(&["info", "/nonexistent/file.json"]).0, 1);
    assert_eq!(call(&["--help"]).0, 0);
    let dir = std::env::temp_dir().join("rees-cli-test-height");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"n":3,"col_degrees":[1,1],"phi_rows":[["x0","x0"],["x1","x1"],["0","0"]]}"#,
    )
    .unwrap();
    let (code, _, err) = call(&["info", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("error"));
}

#[test]
fn slice_trim_on_final_example() {
    let (code, out, _) = call(&["slice", &fixture("final"), "--xdeg", "3", "--trim", "--json"]);
    assert_eq!(code, 0);
    let recs: Vec<RecordJson> = serde_json::from_str(&out).unwrap();
    assert_eq!(recs.iter().filter(|r| r.bidegree == (3, 3)).count(), 3);
    assert_eq!(recs.iter().filter(|r| r.bidegree == (3, 4)).count(), 4);
    assert!(recs.iter().all(|r| r.certified));
}

#[test]
fn scroll_and_sigmas() {
    let (code, out, _) = call(&["scroll", &fixture("ex2n"), "-m", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("[x0, v1_0, v2_0]"));
    assert!(out.contains("3 minors"));
    let (code, out, _) = call(&["sigmas", &fixture("exgen0"), "-m", "1", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["sigma"], serde_json::json!([2, 0]));
    assert_eq!(v[0]["r"], 1);
}

#[test]
fn oracle_subcommand() {
    let (code, out, _) = call(&["oracle", &fixture("ex2n"), "--max-x", "3", "--max-t", "3", "--what", "membership"]);
    assert_eq!(code, 0);
    assert!(!out.contains("NOT"));
    let (code, out, _) = call(&[
        "oracle", &fixture("final"), "--max-x", "3", "--max-t", "5", "--what", "mingens", "--count", "slice", "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let at = |x: i64, t: i64| {
        v["bidegrees"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["x"] == x && c["t"] == t)
            .map_or(0, |c| c["count"].as_u64().unwrap())
    };
    assert_eq!((at(3, 3), at(3, 4)), (3, 4));
}

#[test]
fn rational_field_instance() {
    let dir = std::env::temp_dir().join("rees-cli-test-rational");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ex2n_q.json");
    std::fs::write(
        &path,
        r#"{"field":{"type":"rational"},"n":3,"col_degrees":[2,3],"phi_rows":[["x0^2","x1^3"],["x0*x1","0"],["x1^2","x0^3"]]}"#,
    )
    .unwrap();
    let (code, out, _) = call(&["generators", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("-x1^2*T1^2 + x0^2*T2*T3 + x0*x1*T3^2"), "{out}");
}
