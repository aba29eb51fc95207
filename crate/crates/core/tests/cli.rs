//! End-to-end runs of the `zs` binary.

mod common;

use std::path::Path;
use std::process::{Command, Output};

use zs_core::catalog;
use zs_core::formats::{read_json, to_json, write_json, MagmaFile, PresentationFile, ProductFile};
use zs_core::magma::Magma;
use zs_core::rewriting::{Alphabet, Kind, RuleSet};

fn zs(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zs")).current_dir(dir).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_rules(dir: &Path, name: &str, alphabet: &str, rules: &[(&str, &str)]) {
    let rs = RuleSet::parse(Alphabet::chars(alphabet), rules, Kind::Monoid).unwrap();
    write_json(&dir.join(name), &PresentationFile::from_rules(&rs)).unwrap();
}

#[test]
fn example_to_product_is_s4() {
    let d = tempfile::tempdir().unwrap();
    let o = zs(d.path(), &["example", "s4-s3-c4", "--emit-actions", "out.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = zs(d.path(), &["product", "out.json", "-o", "s4.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let p: ProductFile = read_json(&d.path().join("s4.json")).unwrap();
    assert_eq!(p.pairs.len(), 24);
    let m = p.magma.to_magma().unwrap();
    assert!(common::verified_iso(&m, &catalog::symmetric(4)));
}

#[test]
fn normalize_prints_the_normal_form() {
    let d = tempfile::tempdir().unwrap();
    write_rules(d.path(), "pres.json", "xy", &[("yx", "xyy")]);
    let o = zs(d.path(), &["normalize", "pres.json", "--word", "yxx", "--fuel", "1000"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("xxyyyy"));
    let o = zs(d.path(), &["normalize", "pres.json", "--word", "yxx", "--fuel", "2"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn check_reports_and_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    write_json(&d.path().join("s3.json"), &MagmaFile::from_magma(&catalog::symmetric(3))).unwrap();
    // x·y = x except 1·1 = 0: not associative
    let bad = Magma::from_fn(vec!["a".into(), "b".into()], |a, b| Some(if a == 1 && b == 1 { 0 } else { a })).unwrap();
    write_json(&d.path().join("bad.json"), &MagmaFile::from_magma(&bad)).unwrap();

    let o = zs(d.path(), &["check", "s3.json", "--prop", "categorical", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["reports"][0]["property"], "categorical");

    let o = zs(d.path(), &["check", "bad.json", "--prop", "assoc"]);
    assert_eq!(code(&o), 1);
    assert_eq!(code(&zs(d.path(), &["check", "missing.json"])), 2);
    assert_eq!(code(&zs(d.path(), &["check", "s3.json", "--no-such-flag"])), 2);
    assert_eq!(code(&zs(d.path(), &["frobnicate"])), 2);
}

#[test]
fn termination_without_certificate_is_inconclusive() {
    let d = tempfile::tempdir().unwrap();
    write_rules(d.path(), "swap.json", "ab", &[("ab", "ba"), ("ba", "ab")]);
    let o = zs(d.path(), &["termination", "swap.json"]);
    assert_eq!(code(&o), 3, "{}", stdout(&o));
}

#[test]
fn seeded_runs_are_reproducible() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    assert_eq!(code(&zs(p, &["example", "s4-s3-c4", "--emit-actions", "a.json"])), 0);
    let run = |seed: &str| stdout(&zs(p, &["check-axiom", "a.json", "--fuzz", "10", "--seed", seed, "--json"]));
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
    let rel = |seed: &str| stdout(&zs(p, &["rel-check", "--random", "50", "--size", "5", "--seed", seed]));
    assert_eq!(rel("1"), rel("1"));
}

#[test]
fn emitted_files_are_byte_stable() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    write_json(&p.join("q8.json"), &MagmaFile::from_magma(&catalog::quaternion())).unwrap();
    assert_eq!(code(&zs(p, &["table-pres", "q8.json", "--kind", "group", "-o", "a.json"])), 0);
    assert_eq!(code(&zs(p, &["table-pres", "q8.json", "--kind", "group", "-o", "b.json"])), 0);
    let (a, b) = (std::fs::read_to_string(p.join("a.json")).unwrap(), std::fs::read_to_string(p.join("b.json")).unwrap());
    assert_eq!(a, b);
    let f: PresentationFile = read_json(&p.join("a.json")).unwrap();
    assert_eq!(to_json(&PresentationFile::from_rules(&f.to_rules().unwrap())), a);
}

#[test]
fn groupoid_example_roundtrips() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    assert_eq!(code(&zs(p, &["example", "groupoid-s3", "--dir", "g"])), 0);
    for f in ["g/bundle.json", "g/external.json"] {
        let o = zs(p, &["roundtrip", f]);
        assert_eq!(code(&o), 0, "{f}: {}", stdout(&o));
    }
}

#[test]
fn presentation_pipeline() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    assert_eq!(code(&zs(p, &["example", "c3-c2-pres", "--dir", "c"])), 0);
    let o = zs(p, &["zs-pres", "--u", "c/u.json", "--a", "c/a.json", "--gen", "c/gen.json", "--expected", "6", "-o", "s3.json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = zs(p, &["wp", "s3.json", "fr", "sf"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = zs(p, &["wp", "s3.json", "fr", "rf"]);
    assert_eq!(code(&o), 1);
}
