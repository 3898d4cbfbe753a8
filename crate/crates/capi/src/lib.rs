//! C ABI for the growthlab core: opaque handles, integer status codes, and
//! JSON-string reports so other languages can bind without knowing any Rust
//! types. Every returned string is owned by this library and must be released
//! with `glab_string_free`; enclosure handles with `glab_enclosure_free`.
//!
//! All entry points are `unsafe` in the Rust signature because they accept
//! raw pointers from the caller; each one null-checks its arguments and
//! catches panics at the boundary, returning `Internal` instead of
//! unwinding across the ABI.

use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use growthlab::families::{
    builtin_family, family_from_config, family_interval, verify_theorem1, verify_theorem2,
};
use growthlab::growth::{growth_rate, named_constants, EnumSequence, RootEnclosure};
use growthlab::perm::Permutation;
use growthlab::report::{
    constants_json, family_json, theorem1_json, theorem2_json, Report, DEFAULT_DECIMAL_PLACES,
};

/// Status codes mirrored by the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum GlabStatus {
    /// Success.
    Ok = 0,
    /// Malformed input (parse error, unknown name, bad parameters).
    InputError = 2,
    /// A certification failed (infeasible family, failed verification).
    CertificationFailed = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
    /// Internal error (a panic was caught at the boundary).
    Internal = 5,
}

/// Opaque certified root enclosure.
pub struct GlabEnclosure {
    inner: RootEnclosure,
}

fn to_cstring(s: String) -> *mut c_char {
    CString::new(s)
        .unwrap_or_else(|_| CString::new("invalid").unwrap())
        .into_raw()
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().ok()
}

fn guarded<F: FnOnce() -> GlabStatus>(f: F) -> GlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => GlabStatus::Internal,
    }
}

/// Release a string returned by any `glab_*` function.
///
/// # Safety
/// `s` must be null or a pointer previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn glab_string_free(s: *mut c_char) {
    if !s.is_null() {
        unsafe {
            drop(CString::from_raw(s));
        }
    }
}

/// Release an enclosure handle.
///
/// # Safety
/// `e` must be null or a handle previously returned by `glab_growth_rate`
/// and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn glab_enclosure_free(e: *mut GlabEnclosure) {
    if !e.is_null() {
        unsafe {
            drop(Box::from_raw(e));
        }
    }
}

/// Growth rate of the sum closure of `seq` ("pre;period" integer lists),
/// enclosed to width 2^-precision_bits.
/// # Safety
/// `seq` must be null or a NUL-terminated string; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn glab_growth_rate(
    seq: *const c_char,
    precision_bits: u32,
    out: *mut *mut GlabEnclosure,
) -> GlabStatus {
    guarded(|| {
        if out.is_null() {
            return GlabStatus::NullPointer;
        }
        let Some(text) = (unsafe { read_str(seq) }) else {
            return GlabStatus::NullPointer;
        };
        let Ok(s) = EnumSequence::parse(text) else {
            return GlabStatus::InputError;
        };
        match growth_rate(&s, precision_bits) {
            Ok(enclosure) => {
                unsafe {
                    *out = Box::into_raw(Box::new(GlabEnclosure { inner: enclosure }));
                }
                GlabStatus::Ok
            }
            Err(_) => GlabStatus::InputError,
        }
    })
}

/// Exact lower endpoint of an enclosure, as a rational string "p/q".
/// # Safety
/// `e` must be null or a live enclosure handle; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn glab_enclosure_lo(
    e: *const GlabEnclosure,
    out: *mut *mut c_char,
) -> GlabStatus {
    guarded(|| {
        if e.is_null() || out.is_null() {
            return GlabStatus::NullPointer;
        }
        let e = unsafe { &*e };
        unsafe {
            *out = to_cstring(e.inner.lo.to_string());
        }
        GlabStatus::Ok
    })
}

/// Exact upper endpoint of an enclosure, as a rational string "p/q".
/// # Safety
/// `e` must be null or a live enclosure handle; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn glab_enclosure_hi(
    e: *const GlabEnclosure,
    out: *mut *mut c_char,
) -> GlabStatus {
    guarded(|| {
        if e.is_null() || out.is_null() {
            return GlabStatus::NullPointer;
        }
        let e = unsafe { &*e };
        unsafe {
            *out = to_cstring(e.inner.hi.to_string());
        }
        GlabStatus::Ok
    })
}

/// Fixed-point decimal rendering of the enclosure midpoint.
/// # Safety
/// `e` must be null or a live enclosure handle; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn glab_enclosure_decimal(
    e: *const GlabEnclosure,
    places: u32,
    out: *mut *mut c_char,
) -> GlabStatus {
    guarded(|| {
        if e.is_null() || out.is_null() {
            return GlabStatus::NullPointer;
        }
        let e = unsafe { &*e };
        unsafe {
            *out = to_cstring(e.inner.decimal(places));
        }
        GlabStatus::Ok
    })
}

/// The defining polynomial of the enclosed root, highest degree first.
/// # Safety
/// `e` must be null or a live enclosure handle; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn glab_enclosure_polynomial(
    e: *const GlabEnclosure,
    out: *mut *mut c_char,
) -> GlabStatus {
    guarded(|| {
        if e.is_null() || out.is_null() {
            return GlabStatus::NullPointer;
        }
        let e = unsafe { &*e };
        unsafe {
            *out = to_cstring(e.inner.poly.to_desc_string());
        }
        GlabStatus::Ok
    })
}

/// JSON report of the named constants at the given precision.
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn glab_constants_json(
    precision_bits: u32,
    out: *mut *mut c_char,
) -> GlabStatus {
    guarded(|| {
        if out.is_null() {
            return GlabStatus::NullPointer;
        }
        let Ok(consts) = named_constants(precision_bits) else {
            return GlabStatus::InputError;
        };
        let ordered = consts
            .windows(2)
            .all(|w| w[0].enclosure.certified_below(&w[1].enclosure));
        let report = Report {
            command: "constants".into(),
            inputs: serde_json::json!({"precision": precision_bits}),
            results: serde_json::json!({
                "constants": constants_json(&consts, DEFAULT_DECIMAL_PLACES),
                "ordering_certified": ordered,
            }),
            pass: ordered,
        };
        unsafe {
            *out = to_cstring(report.render_json());
        }
        if ordered {
            GlabStatus::Ok
        } else {
            GlabStatus::CertificationFailed
        }
    })
}

/// JSON interval report of a built-in family name or an inline JSON config
/// (a string starting with '{').
/// # Safety
/// `name` must be null or a NUL-terminated string; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn glab_family_json(
    name: *const c_char,
    precision_bits: u32,
    out: *mut *mut c_char,
) -> GlabStatus {
    guarded(|| {
        if out.is_null() {
            return GlabStatus::NullPointer;
        }
        let Some(text) = (unsafe { read_str(name) }) else {
            return GlabStatus::NullPointer;
        };
        let spec = if text.trim_start().starts_with('{') {
            family_from_config(text)
        } else {
            builtin_family(text)
        };
        let spec = match spec {
            Ok(s) => s,
            Err(_) => return GlabStatus::InputError,
        };
        let interval = match family_interval(&spec, precision_bits) {
            Ok(r) => r,
            Err(_) => return GlabStatus::CertificationFailed,
        };
        let pass = interval.certified_nonempty();
        let report = Report {
            command: "family".into(),
            inputs: serde_json::json!({"name": text, "precision": precision_bits}),
            results: family_json(&interval, DEFAULT_DECIMAL_PLACES),
            pass,
        };
        unsafe {
            *out = to_cstring(report.render_json());
        }
        if pass {
            GlabStatus::Ok
        } else {
            GlabStatus::CertificationFailed
        }
    })
}

/// JSON verification report: `which` is "theorem1", "theorem2" or "all".
/// # Safety
/// `which` must be null or a NUL-terminated string; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn glab_verify_json(
    which: *const c_char,
    precision_bits: u32,
    out: *mut *mut c_char,
) -> GlabStatus {
    guarded(|| {
        if out.is_null() {
            return GlabStatus::NullPointer;
        }
        let Some(text) = (unsafe { read_str(which) }) else {
            return GlabStatus::NullPointer;
        };
        let mut results = serde_json::Map::new();
        let mut pass = true;
        if text == "theorem1" || text == "all" {
            let ks: Vec<usize> = (5..=21).step_by(2).collect();
            match verify_theorem1(&ks, precision_bits) {
                Ok(rep) => {
                    pass &= rep.all_certified;
                    results.insert(
                        "theorem1".into(),
                        theorem1_json(&rep, DEFAULT_DECIMAL_PLACES),
                    );
                }
                Err(_) => return GlabStatus::CertificationFailed,
            }
        }
        if text == "theorem2" || text == "all" {
            match verify_theorem2(precision_bits) {
                Ok(rep) => {
                    pass &= rep.all_certified;
                    results.insert(
                        "theorem2".into(),
                        theorem2_json(&rep, DEFAULT_DECIMAL_PLACES),
                    );
                }
                Err(_) => return GlabStatus::CertificationFailed,
            }
        }
        if results.is_empty() {
            return GlabStatus::InputError;
        }
        let report = Report {
            command: "verify".into(),
            inputs: serde_json::json!({"which": text, "precision": precision_bits}),
            results: serde_json::Value::Object(results),
            pass,
        };
        unsafe {
            *out = to_cstring(report.render_json());
        }
        if pass {
            GlabStatus::Ok
        } else {
            GlabStatus::CertificationFailed
        }
    })
}

/// Subpermutation containment test on one-line notation strings;
/// writes 1 or 0 into `out`.
/// # Safety
/// `sigma` and `pattern` must be null or NUL-terminated strings; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn glab_perm_contains(
    sigma: *const c_char,
    pattern: *const c_char,
    out: *mut c_int,
) -> GlabStatus {
    guarded(|| {
        if out.is_null() {
            return GlabStatus::NullPointer;
        }
        let (Some(s), Some(p)) = (unsafe { read_str(sigma) }, unsafe { read_str(pattern) }) else {
            return GlabStatus::NullPointer;
        };
        let (Ok(s), Ok(p)) = (s.parse::<Permutation>(), p.parse::<Permutation>()) else {
            return GlabStatus::InputError;
        };
        unsafe {
            *out = c_int::from(s.contains(&p));
        }
        GlabStatus::Ok
    })
}
