//! C ABI over `zs-core`.
//!
//! Objects cross the boundary as opaque handles created from JSON (the same
//! formats the `zs` binary reads) and released with the matching `*_free`.
//! Every call returns a [`ZsStatus`]; on anything but `ZS_STATUS_OK` the
//! thread's last error message is available from [`zs_last_error`].
//! Strings returned through out-parameters are owned by the caller and must
//! be released with [`zs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use zs_core::actions::FiniteActions;
use zs_core::axioms::{check_axioms, Axiom, ProductDomain};
use zs_core::domain::Fuel;
use zs_core::formats::{to_json, ActionsFile, MagmaFile, PresentationFile};
use zs_core::iso::are_isomorphic;
use zs_core::magma::{ElementId, Magma};
use zs_core::presentations::{word_problem, WordAnswer};
use zs_core::product::external_product;
use zs_core::properties::{check_property, Property};
use zs_core::report::Verdict;
use zs_core::rewriting::RuleSet;

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZsStatus {
    Ok = 0,
    /// A null pointer or a handle of the wrong state.
    NullArgument = 1,
    /// Input that does not parse or does not describe a valid object.
    InvalidInput = 2,
    /// The requested value does not exist, e.g. an undefined product.
    Undefined = 3,
    /// A bounded computation ran out of fuel.
    FuelExhausted = 4,
    /// A library-level failure, such as a failed hypothesis.
    Failed = 5,
    /// A Rust panic was caught at the boundary.
    Panic = 6,
}

/// Verdict of a check, mirroring the library's verdicts.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZsVerdict {
    Pass = 0,
    Fail = 1,
    NotApplicable = 2,
    PassUpToFuel = 3,
    Inconclusive = 4,
}

impl From<Verdict> for ZsVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Pass => ZsVerdict::Pass,
            Verdict::Fail => ZsVerdict::Fail,
            Verdict::NotApplicable => ZsVerdict::NotApplicable,
            Verdict::PassUpToFuel => ZsVerdict::PassUpToFuel,
            Verdict::Inconclusive => ZsVerdict::Inconclusive,
        }
    }
}

/// Word-problem answers.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZsWordAnswer {
    Equal = 0,
    Distinct = 1,
    Unknown = 2,
}

/// A finite partial magma.
pub struct ZsMagma(Magma);

/// Finite mutual actions with their product domain.
pub struct ZsActions {
    actions: FiniteActions,
    e: ProductDomain<ElementId, ElementId>,
}

/// A string rewriting system.
pub struct ZsRules(RuleSet);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

struct Error(ZsStatus, String);

type Res<T> = Result<T, Error>;

fn err<T>(status: ZsStatus, msg: impl Into<String>) -> Res<T> {
    Err(Error(status, msg.into()))
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Res<()>) -> ZsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ZsStatus::Ok,
        Ok(Err(Error(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside zs");
            ZsStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return err(ZsStatus::NullArgument, format!("{what} is null"));
    }
    CStr::from_ptr(p)
        .to_str()
        .or_else(|_| err(ZsStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref()
        .ok_or_else(|| Error(ZsStatus::NullArgument, format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Res<&'a mut T> {
    p.as_mut()
        .ok_or_else(|| Error(ZsStatus::NullArgument, format!("{what} is null")))
}

fn invalid(e: impl std::fmt::Display) -> Error {
    Error(ZsStatus::InvalidInput, e.to_string())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior NUL").into_raw()
}

/// The last error message on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn zs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn zs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------- magmas

/// Parses a magma file (`{"size", "names", "table"}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zs_magma_from_json(json: *const c_char, out_magma: *mut *mut ZsMagma) -> ZsStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let slot = out(out_magma, "out")?;
        let f: MagmaFile = serde_json::from_str(text).map_err(invalid)?;
        let m = f.to_magma().map_err(invalid)?;
        *slot = Box::into_raw(Box::new(ZsMagma(m)));
        Ok(())
    })
}

/// # Safety
/// `m` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn zs_magma_free(m: *mut ZsMagma) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of elements.
///
/// # Safety
/// `m` must be a live handle and `size` writable.
#[no_mangle]
pub unsafe extern "C" fn zs_magma_size(m: *const ZsMagma, size: *mut usize) -> ZsStatus {
    guard(|| {
        *out(size, "size")? = handle(m, "magma")?.0.size();
        Ok(())
    })
}

/// `a·b`; `ZS_STATUS_UNDEFINED` when the pair is outside the domain.
///
/// # Safety
/// `m` must be a live handle and `product` writable.
#[no_mangle]
pub unsafe extern "C" fn zs_magma_mul(m: *const ZsMagma, a: usize, b: usize, product: *mut usize) -> ZsStatus {
    guard(|| {
        let m = &handle(m, "magma")?.0;
        let slot = out(product, "product")?;
        if a >= m.size() || b >= m.size() {
            return err(ZsStatus::InvalidInput, format!("index out of range for size {}", m.size()));
        }
        match m.mul(ElementId(a), ElementId(b)) {
            Some(c) => {
                *slot = c.0;
                Ok(())
            }
            None => err(ZsStatus::Undefined, format!("{a}·{b} is undefined")),
        }
    })
}

/// Checks one property by tag, e.g. `"categorical"` or `"assoc"`.
///
/// # Safety
/// `m` must be a live handle, `property` a NUL-terminated string, `verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn zs_magma_check(
    m: *const ZsMagma,
    property: *const c_char,
    verdict: *mut ZsVerdict,
) -> ZsStatus {
    guard(|| {
        let m = &handle(m, "magma")?.0;
        let p: Property = str_arg(property, "property")?.parse().map_err(invalid)?;
        *out(verdict, "verdict")? = check_property(m, p).verdict.into();
        Ok(())
    })
}

/// Whether two magmas are isomorphic, by exhaustive search.
///
/// # Safety
/// `a`, `b` must be live handles and `result` writable.
#[no_mangle]
pub unsafe extern "C" fn zs_magma_isomorphic(a: *const ZsMagma, b: *const ZsMagma, result: *mut bool) -> ZsStatus {
    guard(|| {
        let (a, b) = (&handle(a, "a")?.0, &handle(b, "b")?.0);
        *out(result, "result")? = are_isomorphic(a, b);
        Ok(())
    })
}

/// Serializes a magma; free the result with [`zs_string_free`].
///
/// # Safety
/// `m` must be a live handle and `json` writable.
#[no_mangle]
pub unsafe extern "C" fn zs_magma_to_json(m: *const ZsMagma, json: *mut *mut c_char) -> ZsStatus {
    guard(|| {
        let m = &handle(m, "magma")?.0;
        *out(json, "json")? = c_string(to_json(&MagmaFile::from_magma(m)));
        Ok(())
    })
}

// ---------------------------------------------------------------- actions

/// Parses an actions file. Path references resolve against the working directory.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zs_actions_from_json(json: *const c_char, out_actions: *mut *mut ZsActions) -> ZsStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let slot = out(out_actions, "out")?;
        let f: ActionsFile = serde_json::from_str(text).map_err(invalid)?;
        let l = f.load(Path::new(".")).map_err(invalid)?;
        *slot = Box::into_raw(Box::new(ZsActions {
            actions: l.actions,
            e: l.e,
        }));
        Ok(())
    })
}

/// # Safety
/// `ap` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn zs_actions_free(ap: *mut ZsActions) {
    if !ap.is_null() {
        drop(Box::from_raw(ap));
    }
}

/// Checks an axiom or group of axioms (`"P2"`, `"P7a"`, `"all"`); the verdict is their conjunction.
///
/// # Safety
/// `ap` must be a live handle, `axiom` a NUL-terminated string, `verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn zs_actions_check_axiom(
    ap: *const ZsActions,
    axiom: *const c_char,
    verdict: *mut ZsVerdict,
) -> ZsStatus {
    guard(|| {
        let ap = handle(ap, "actions")?;
        let axes = Axiom::parse_group(str_arg(axiom, "axiom")?).map_err(invalid)?;
        let v = check_axioms(&ap.actions, &ap.e, &axes, &Fuel::default())
            .iter()
            .fold(Verdict::Pass, |v, r| v.and(r.verdict));
        *out(verdict, "verdict")? = v.into();
        Ok(())
    })
}

/// The external product's table; `ZS_STATUS_FAILED` when the domain is not closed.
///
/// # Safety
/// `ap` must be a live handle and `product` writable.
#[no_mangle]
pub unsafe extern "C" fn zs_actions_product(ap: *const ZsActions, product: *mut *mut ZsMagma) -> ZsStatus {
    guard(|| {
        let ap = handle(ap, "actions")?;
        let slot = out(product, "product")?;
        let fuel = Fuel::default();
        let ext = external_product(ap.actions.clone(), ap.e.clone(), &fuel);
        if let Some(r) = ext.closure.iter().find(|r| r.failed()) {
            return err(ZsStatus::Failed, format!("product domain is not closed: {} fails", r.property));
        }
        let table = ext
            .product
            .to_magma(&fuel)
            .map_err(|e| Error(ZsStatus::Failed, e.to_string()))?;
        *slot = Box::into_raw(Box::new(ZsMagma(table.magma)));
        Ok(())
    })
}

// ---------------------------------------------------------------- rewriting

/// Parses a presentation file (`{"alphabet", "kind", "rules"}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zs_rules_from_json(json: *const c_char, out_rules: *mut *mut ZsRules) -> ZsStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let slot = out(out_rules, "out")?;
        let f: PresentationFile = serde_json::from_str(text).map_err(invalid)?;
        *slot = Box::into_raw(Box::new(ZsRules(f.to_rules().map_err(invalid)?)));
        Ok(())
    })
}

/// # Safety
/// `rs` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn zs_rules_free(rs: *mut ZsRules) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// Leftmost normal form within `fuel` steps; free the result with [`zs_string_free`].
///
/// # Safety
/// `rs` must be a live handle, `word` a NUL-terminated string, `normal_form` writable.
#[no_mangle]
pub unsafe extern "C" fn zs_rules_normalize(
    rs: *const ZsRules,
    word: *const c_char,
    fuel: usize,
    normal_form: *mut *mut c_char,
) -> ZsStatus {
    guard(|| {
        let rs = &handle(rs, "rules")?.0;
        let w = rs.word(str_arg(word, "word")?).map_err(invalid)?;
        let slot = out(normal_form, "normal_form")?;
        let nf = rs
            .normalize(&w, fuel)
            .map_err(|e| Error(ZsStatus::FuelExhausted, e.to_string()))?;
        *slot = c_string(rs.render(&nf));
        Ok(())
    })
}

/// Decides `w1 = w2` in the presented monoid within `fuel`.
///
/// # Safety
/// `rs` must be a live handle, the words NUL-terminated strings, `answer` writable.
#[no_mangle]
pub unsafe extern "C" fn zs_rules_word_problem(
    rs: *const ZsRules,
    w1: *const c_char,
    w2: *const c_char,
    fuel: usize,
    answer: *mut ZsWordAnswer,
) -> ZsStatus {
    guard(|| {
        let rs = &handle(rs, "rules")?.0;
        let a = rs.word(str_arg(w1, "w1")?).map_err(invalid)?;
        let b = rs.word(str_arg(w2, "w2")?).map_err(invalid)?;
        let slot = out(answer, "answer")?;
        let f = Fuel {
            steps: fuel,
            ..Fuel::default()
        };
        *slot = match word_problem(rs, &a, &b, &f) {
            WordAnswer::Equal => ZsWordAnswer::Equal,
            WordAnswer::Distinct => ZsWordAnswer::Distinct,
            WordAnswer::Inconclusive => ZsWordAnswer::Unknown,
        };
        Ok(())
    })
}

// ---------------------------------------------------------------- command line

/// Runs the `zs` command line with `argc` arguments (program name first)
/// and returns its exit code; output goes to the process's stdout and stderr.
/// Returns 2 on null or non-UTF-8 arguments.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn zs_cli_run(argc: c_int, argv: *const *const c_char) -> c_int {
    if argv.is_null() || argc < 0 {
        set_error("argv is null");
        return 2;
    }
    let mut args = Vec::with_capacity(argc as usize);
    for i in 0..argc as usize {
        match str_arg(*argv.add(i), "argument") {
            Ok(s) => args.push(s.to_string()),
            Err(Error(_, msg)) => {
                set_error(msg);
                return 2;
            }
        }
    }
    catch_unwind(|| zs_core::cli::run(args)).unwrap_or_else(|_| {
        set_error("panic inside zs");
        2
    })
}
