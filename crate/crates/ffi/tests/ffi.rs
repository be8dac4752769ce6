use std::ffi::{CStr, CString};
use std::ptr;

use qgs_ffi::*;

fn last_error() -> String {
    let p = qgs_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn param(n: u32, q: &str) -> *mut QgsParam {
    let s = CString::new(q).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { qgs_param_parse(n, s.as_ptr(), &mut p) }, QgsStatus::Ok);
    p
}

#[test]
fn spot_values_through_the_abi() {
    let p = param(2, "0.5");
    let mut v = 0.0;
    unsafe {
        assert_eq!(qgs_delta(p, 1, &mut v), QgsStatus::Ok);
        assert!((v - 0.4).abs() < 1e-15);
        assert_eq!(qgs_delta(p, 2, &mut v), QgsStatus::Ok);
        assert!((v - 20.0 / 21.0).abs() < 1e-15);
        assert_eq!(qgs_q_number(p, 3, &mut v), QgsStatus::Ok);
        assert!((v - 5.25).abs() < 1e-15);
        let (mut d, mut b) = (0.0, 0.0);
        assert_eq!(qgs_pentagon_defect(p, 3, 1, 1, 1, 1, true, &mut d, &mut b), QgsStatus::Ok);
        assert!((b - 0.125).abs() < 1e-15 && d <= b);
        let (mut t, mut e) = (0.0, 0.0);
        assert_eq!(qgs_jw_qtrace(p, 4, &mut t, &mut e), QgsStatus::Ok);
        assert!((t - e).abs() < 1e-10);
        qgs_param_free(p);
    }
}

#[test]
fn certificate_verdicts() {
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(qgs_param_kac(3, &mut p), QgsStatus::Ok);
        let mut verdict = QgsVerdict::Inconclusive;
        let mut ratio = 0.0;
        assert_eq!(qgs_hs_certificate(p, 0.1, 200, &mut verdict, &mut ratio), QgsStatus::Ok);
        assert_eq!(verdict, QgsVerdict::Finite);
        assert_eq!(qgs_hs_certificate(p, 0.0, 200, &mut verdict, &mut ratio), QgsStatus::Ok);
        assert_eq!(verdict, QgsVerdict::Divergent);
        qgs_param_free(p);
    }
}

#[test]
fn error_codes_and_messages() {
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(qgs_param_new(3, 0.5, &mut p), QgsStatus::Domain);
        assert!(p.is_null());
        assert!(last_error().contains("exceeds q0"));
        assert_eq!(qgs_param_new(1, 0.5, &mut p), QgsStatus::Domain);
        assert_eq!(qgs_param_new(2, 0.5, ptr::null_mut()), QgsStatus::NullPointer);
        let mut v = 0.0;
        assert_eq!(qgs_delta(ptr::null(), 1, &mut v), QgsStatus::NullPointer);

        let q = param(2, "1/2");
        assert_eq!(qgs_semigroup_coeff(q, 1, 2.0, &mut v), QgsStatus::Domain);
        let (mut d, mut b) = (0.0, 0.0);
        assert_eq!(
            qgs_pentagon_defect(q, 20, 1, 1, 1, 1, true, &mut d, &mut b),
            QgsStatus::Resource
        );
        assert!(last_error().contains("strand"));
        qgs_param_free(q);
        qgs_param_free(ptr::null_mut());
    }
}

#[test]
fn freeprod_patterns() {
    let (b, x, a) = ([0u8], [0u8, 1], [1u8]);
    let mut pass = false;
    unsafe {
        assert_eq!(
            qgs_freeprod_verify(b.as_ptr(), 1, x.as_ptr(), 2, a.as_ptr(), 1, &mut pass),
            QgsStatus::Ok
        );
        assert!(pass);
        assert_eq!(
            qgs_freeprod_verify(ptr::null(), 0, x.as_ptr(), 2, ptr::null(), 0, &mut pass),
            QgsStatus::Ok
        );
        let bad = [0u8, 0];
        assert_eq!(
            qgs_freeprod_verify(bad.as_ptr(), 2, x.as_ptr(), 2, a.as_ptr(), 1, &mut pass),
            QgsStatus::Domain
        );
        assert!(last_error().contains("not reduced"));
    }
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qgs.h")).unwrap();
    for name in ["qgs_param_new", "qgs_last_error", "QGS_STATUS_RESOURCE", "typedef struct QgsParam"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
