use std::ffi::{c_char, CStr, CString};
use std::ptr;

use zs_core::catalog;
use zs_core::formats::{to_json, ActionsFile, MagmaFile, PresentationFile};
use zs_core::product::dihedral_actions;
use zs_core::rewriting::{Alphabet, Kind, RuleSet};
use zs_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { zs_string_free(s) };
    out
}

fn last_error() -> String {
    let p = zs_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn magma(json: &str) -> *mut ZsMagma {
    let mut m = ptr::null_mut();
    let j = cs(json);
    assert_eq!(unsafe { zs_magma_from_json(j.as_ptr(), &mut m) }, ZsStatus::Ok);
    m
}

#[test]
fn magma_round_trip_and_checks() {
    let s3 = catalog::symmetric(3);
    let m = magma(&to_json(&MagmaFile::from_magma(&s3)));
    let mut n = 0;
    unsafe {
        assert_eq!(zs_magma_size(m, &mut n), ZsStatus::Ok);
        assert_eq!(n, 6);
        let mut c = 0;
        assert_eq!(zs_magma_mul(m, 1, 2, &mut c), ZsStatus::Ok);
        assert_eq!(c, s3.mul(zs_core::magma::ElementId(1), zs_core::magma::ElementId(2)).unwrap().0);
        let mut v = ZsVerdict::Fail;
        let p = cs("assoc");
        assert_eq!(zs_magma_check(m, p.as_ptr(), &mut v), ZsStatus::Ok);
        assert_eq!(v, ZsVerdict::Pass);

        let mut json = ptr::null_mut();
        assert_eq!(zs_magma_to_json(m, &mut json), ZsStatus::Ok);
        let back = magma(&take(json));
        let mut iso = false;
        assert_eq!(zs_magma_isomorphic(m, back, &mut iso), ZsStatus::Ok);
        assert!(iso);
        zs_magma_free(back);
        zs_magma_free(m);
    }
}

#[test]
fn undefined_products_and_bad_input_report_errors() {
    let m = magma(r#"{"size": 2, "table": [[0, 0, 0]]}"#);
    let mut c = 0;
    unsafe {
        assert_eq!(zs_magma_mul(m, 1, 1, &mut c), ZsStatus::Undefined);
        assert!(last_error().contains("undefined"));
        assert_eq!(zs_magma_mul(m, 5, 0, &mut c), ZsStatus::InvalidInput);
        let p = cs("no-such-property");
        let mut v = ZsVerdict::Pass;
        assert_eq!(zs_magma_check(m, p.as_ptr(), &mut v), ZsStatus::InvalidInput);
        zs_magma_free(m);

        let mut out = ptr::null_mut();
        let bad = cs("{not json");
        assert_eq!(zs_magma_from_json(bad.as_ptr(), &mut out), ZsStatus::InvalidInput);
        assert!(out.is_null());
        assert_eq!(zs_magma_from_json(ptr::null(), &mut out), ZsStatus::NullArgument);
        assert_eq!(zs_magma_size(ptr::null(), &mut c), ZsStatus::NullArgument);
        zs_magma_free(ptr::null_mut());
        zs_string_free(ptr::null_mut());
    }
}

#[test]
fn actions_product_is_dihedral() {
    let ap = dihedral_actions(4);
    let json = cs(&to_json(&ActionsFile::from_actions(&ap, &zs_core::axioms::ProductDomain::Full)));
    let oracle = magma(&to_json(&MagmaFile::from_magma(&catalog::dihedral(4))));
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(zs_actions_from_json(json.as_ptr(), &mut h), ZsStatus::Ok);
        let mut v = ZsVerdict::Fail;
        let all = cs("all");
        assert_eq!(zs_actions_check_axiom(h, all.as_ptr(), &mut v), ZsStatus::Ok);
        assert_eq!(v, ZsVerdict::Pass);
        let mut p = ptr::null_mut();
        assert_eq!(zs_actions_product(h, &mut p), ZsStatus::Ok);
        let mut iso = false;
        assert_eq!(zs_magma_isomorphic(p, oracle, &mut iso), ZsStatus::Ok);
        assert!(iso);
        zs_magma_free(p);
        zs_actions_free(h);
        zs_magma_free(oracle);
    }
}

#[test]
fn rules_normalize_and_decide() {
    let rs = RuleSet::parse(Alphabet::chars("xy"), &[("yx", "xyy")], Kind::Monoid).unwrap();
    let json = cs(&to_json(&PresentationFile::from_rules(&rs)));
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(zs_rules_from_json(json.as_ptr(), &mut h), ZsStatus::Ok);
        let (w, mut nf) = (cs("yxx"), ptr::null_mut());
        assert_eq!(zs_rules_normalize(h, w.as_ptr(), 1000, &mut nf), ZsStatus::Ok);
        assert_eq!(take(nf), "xxyyyy");
        assert_eq!(zs_rules_normalize(h, w.as_ptr(), 1, &mut nf), ZsStatus::FuelExhausted);

        let (a, b) = (cs("yx"), cs("xyy"));
        let mut ans = ZsWordAnswer::Unknown;
        assert_eq!(zs_rules_word_problem(h, a.as_ptr(), b.as_ptr(), 1000, &mut ans), ZsStatus::Ok);
        assert_eq!(ans, ZsWordAnswer::Equal);
        assert_eq!(zs_rules_word_problem(h, a.as_ptr(), a.as_ptr(), 1000, &mut ans), ZsStatus::Ok);
        let c = cs("xy");
        assert_eq!(zs_rules_word_problem(h, a.as_ptr(), c.as_ptr(), 1000, &mut ans), ZsStatus::Ok);
        assert_eq!(ans, ZsWordAnswer::Distinct);
        let z = cs("z");
        assert_eq!(zs_rules_normalize(h, z.as_ptr(), 10, &mut nf), ZsStatus::InvalidInput);
        zs_rules_free(h);
    }
}

#[test]
fn cli_entry_point() {
    let args: Vec<CString> = ["zs", "example", "--list"].iter().map(|s| cs(s)).collect();
    let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    assert_eq!(unsafe { zs_cli_run(ptrs.len() as i32, ptrs.as_ptr()) }, 0);
    let bad: Vec<CString> = ["zs", "no-such-verb"].iter().map(|s| cs(s)).collect();
    let ptrs: Vec<*const c_char> = bad.iter().map(|a| a.as_ptr()).collect();
    assert_eq!(unsafe { zs_cli_run(ptrs.len() as i32, ptrs.as_ptr()) }, 2);
    assert_eq!(unsafe { zs_cli_run(1, ptr::null()) }, 2);
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(zs_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
