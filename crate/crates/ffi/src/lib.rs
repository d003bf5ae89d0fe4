//! C ABI for the dihedral word-length toolkit.
//!
//! Conventions:
//! - Every fallible function returns a [`DlStatus`]; results go through out
//!   parameters, which are written only on `DL_STATUS_OK`.
//! - Generating sets are opaque [`DlGenSet`] handles, created by
//!   `dl_genset_new`/`dl_genset_parse` and released with `dl_genset_free`.
//! - Strings returned through `char **` are owned by the caller and must be
//!   released with `dl_string_free`.
//! - After a failure, `dl_last_error_message` describes it. The pointer stays
//!   valid until the next call into this library on the same thread.
//! - Panics never cross the boundary; they surface as `DL_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dlambda::genset::{classify, GenSet, PresentationClass, ThreeInvClass};
use dlambda::morphisms::find_relation_preserving_map;
use dlambda::presentations::{predict, BoundKind, Prediction};
use dlambda::wordlen::{export_cayley, LambdaReport, LengthTable};
use dlambda::{DihedralElement, Error};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Element or generating-set text did not parse.
    ParseError = 3,
    /// `n` is out of range for the group.
    InvalidOrder = 4,
    /// The generator list is empty, has duplicates, contains the identity,
    /// is not inverse-closed, or names an element outside the group.
    InvalidGenSet = 5,
    /// The set does not generate `D_n`.
    NotGenerating = 6,
    /// The request is outside what the library supports (e.g. more than
    /// three generators for classification, or no closed form exists).
    Unsupported = 7,
    /// Two sets live in different groups or have different sizes.
    DifferentAmbient = 8,
    /// An internal cross-check failed.
    InternalError = 9,
    /// A Rust panic was caught at the boundary.
    Panic = 10,
}

/// Presentation family of a generating set.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlClass {
    Card2 = 0,
    TwoInvOneCentral = 1,
    OneInvTwoCyclic = 2,
    ThreeInvA = 3,
    ThreeInvB = 4,
    ThreeInvC = 5,
    ThreeInvD = 6,
    GeneratingOutsideFamilies = 7,
    NonGenerating = 8,
}

impl From<PresentationClass> for DlClass {
    fn from(c: PresentationClass) -> Self {
        match c {
            PresentationClass::Card2 => DlClass::Card2,
            PresentationClass::TwoInvOneCentral => DlClass::TwoInvOneCentral,
            PresentationClass::OneInvTwoCyclic => DlClass::OneInvTwoCyclic,
            PresentationClass::ThreeInv(ThreeInvClass::A) => DlClass::ThreeInvA,
            PresentationClass::ThreeInv(ThreeInvClass::B) => DlClass::ThreeInvB,
            PresentationClass::ThreeInv(ThreeInvClass::C) => DlClass::ThreeInvC,
            PresentationClass::ThreeInv(ThreeInvClass::D) => DlClass::ThreeInvD,
            PresentationClass::GeneratingOutsideFamilies => DlClass::GeneratingOutsideFamilies,
            PresentationClass::NonGenerating => DlClass::NonGenerating,
        }
    }
}

impl From<DlClass> for PresentationClass {
    fn from(c: DlClass) -> Self {
        match c {
            DlClass::Card2 => PresentationClass::Card2,
            DlClass::TwoInvOneCentral => PresentationClass::TwoInvOneCentral,
            DlClass::OneInvTwoCyclic => PresentationClass::OneInvTwoCyclic,
            DlClass::ThreeInvA => PresentationClass::ThreeInv(ThreeInvClass::A),
            DlClass::ThreeInvB => PresentationClass::ThreeInv(ThreeInvClass::B),
            DlClass::ThreeInvC => PresentationClass::ThreeInv(ThreeInvClass::C),
            DlClass::ThreeInvD => PresentationClass::ThreeInv(ThreeInvClass::D),
            DlClass::GeneratingOutsideFamilies => PresentationClass::GeneratingOutsideFamilies,
            DlClass::NonGenerating => PresentationClass::NonGenerating,
        }
    }
}

/// How a predicted value is to be read.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlBoundKind {
    Exact = 0,
    UpperBound = 1,
    Conjecture = 2,
}

impl From<BoundKind> for DlBoundKind {
    fn from(k: BoundKind) -> Self {
        match k {
            BoundKind::Exact => DlBoundKind::Exact,
            BoundKind::UpperBound => DlBoundKind::UpperBound,
            BoundKind::Conjecture => DlBoundKind::Conjecture,
        }
    }
}

/// Classification result. The three-reflection fields are meaningful only
/// when `has_three_flip` is true; they describe the normalized form
/// `{f, r^a f, r^b f}` obtained by multiplying with `r^-shift`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DlClassInfo {
    pub family: u32,
    pub generates: bool,
    pub has_three_flip: bool,
    pub shift: u32,
    pub a: u32,
    pub b: u32,
    pub h1: u32,
    pub h2: u32,
    pub h3: u32,
    pub h1h2: u32,
    pub generating_pairs: u32,
}

/// λ values and diameter of one generating set.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DlLambda {
    pub lambda1: u32,
    pub lambda2: u32,
    pub diameter: u32,
}

/// Closed-form prediction for a family.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DlPrediction {
    pub lambda1: u32,
    pub lambda1_kind: DlBoundKind,
    pub lambda2: u32,
    pub lambda2_kind: DlBoundKind,
}

/// Opaque generating-set handle.
pub struct DlGenSet {
    inner: GenSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Boundary failure: a status plus a message for `dl_last_error_message`.
struct Failure(DlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } | Error::Usage(_) => DlStatus::ParseError,
            Error::InvalidOrder { .. } => DlStatus::InvalidOrder,
            Error::ForeignElement { .. }
            | Error::EmptyGenSet
            | Error::ContainsIdentity
            | Error::NotInverseClosed { .. }
            | Error::DuplicateElement { .. }
            | Error::WrongShape { .. } => DlStatus::InvalidGenSet,
            Error::NotGenerating { .. } => DlStatus::NotGenerating,
            Error::UnsupportedCardinality { .. } | Error::UnsupportedClass { .. } => DlStatus::Unsupported,
            Error::DifferentAmbient { .. } => DlStatus::DifferentAmbient,
            Error::ClassificationMismatch { .. } | Error::TransferViolation { .. } | Error::SinkWriteFailure(_) => {
                DlStatus::InternalError
            }
        };
        Failure(status, format!("{}: {}", e.name(), e))
    }
}

fn null(what: &str) -> Failure {
    Failure(DlStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body` with panics caught and the thread-local error updated.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> DlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            clear_last_error();
            DlStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(format!("panic: {msg}"));
            DlStatus::Panic
        }
    }
}

/// # Safety
/// `p` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(DlStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

/// # Safety
/// `h` must be null or a live handle from this library.
unsafe fn handle<'a>(h: *const DlGenSet, what: &str) -> Result<&'a GenSet, Failure> {
    h.as_ref().map(|h| &h.inner).ok_or_else(|| null(what))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(DlStatus::InternalError, "output contains a NUL byte".to_string()))
}

/// Builds a generating set of `D_n` from `len` element strings such as
/// `"f"`, `"r^2"`, `"r^3*f"`.
///
/// # Safety
/// `gens` must point to `len` NUL-terminated strings (it may be null when
/// `len` is 0); `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_genset_new(
    n: u32,
    gens: *const *const c_char,
    len: usize,
    out: *mut *mut DlGenSet,
) -> DlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if gens.is_null() && len > 0 {
            return Err(null("gens"));
        }
        let mut elements = Vec::with_capacity(len);
        for i in 0..len {
            let text = read_str(*gens.add(i), "generator")?;
            elements.push(text.parse::<DihedralElement>()?);
        }
        let inner = GenSet::new(n, elements)?;
        *out = Box::into_raw(Box::new(DlGenSet { inner }));
        Ok(())
    })
}

/// Parses the text form `"n=30; S={f, r^3*f, r^5*f}"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_genset_parse(text: *const c_char, out: *mut *mut DlGenSet) -> DlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner: GenSet = read_str(text, "text")?.parse()?;
        *out = Box::into_raw(Box::new(DlGenSet { inner }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `set` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_genset_free(set: *mut DlGenSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Number of generators in the set, or 0 for a null handle.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dl_genset_len(set: *const DlGenSet) -> usize {
    set.as_ref().map_or(0, |s| s.inner.len())
}

/// Writes the canonical text form of the set to `*out`.
///
/// # Safety
/// `set` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_genset_to_string(set: *const DlGenSet, out: *mut *mut c_char) -> DlStatus {
    guard(|| {
        let s = handle(set, "set")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = into_c_string(s.describe())?;
        Ok(())
    })
}

/// Whether the set generates all of `D_n`.
///
/// # Safety
/// `set` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_genset_generates(set: *const DlGenSet, out: *mut bool) -> DlStatus {
    guard(|| {
        let s = handle(set, "set")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = s.generates();
        Ok(())
    })
}

/// Classifies a set of at most three generators.
///
/// # Safety
/// `set` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_genset_classify(set: *const DlGenSet, out: *mut DlClassInfo) -> DlStatus {
    guard(|| {
        let s = handle(set, "set")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = classify(s)?;
        let mut info = DlClassInfo {
            family: DlClass::from(c.class) as u32,
            generates: s.generates(),
            ..DlClassInfo::default()
        };
        if let Some(d) = &c.three_flip {
            info.has_three_flip = true;
            info.shift = d.shift;
            info.a = d.a;
            info.b = d.b;
            info.h1 = d.subgroups.h1;
            info.h2 = d.subgroups.h2;
            info.h3 = d.subgroups.h3;
            info.h1h2 = d.subgroups.h1h2;
            info.generating_pairs = d.generating_pairs.len() as u32;
        }
        *out = info;
        Ok(())
    })
}

/// Computes λ₁, λ₂ and the diameter.
///
/// # Safety
/// `set` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_lambda(set: *const DlGenSet, out: *mut DlLambda) -> DlStatus {
    guard(|| {
        let s = handle(set, "set")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = LambdaReport::compute(s)?;
        *out = DlLambda {
            lambda1: r.lambda1,
            lambda2: r.lambda2,
            diameter: r.diameter,
        };
        Ok(())
    })
}

/// Word length of the element `element` (element grammar) in the set's
/// Cayley graph.
///
/// # Safety
/// `set` must be a live handle; `element` a NUL-terminated string; `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_word_length(set: *const DlGenSet, element: *const c_char, out: *mut u32) -> DlStatus {
    guard(|| {
        let s = handle(set, "set")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let raw: DihedralElement = read_str(element, "element")?.parse()?;
        let e = s.group().canonicalize(raw)?;
        *out = LengthTable::compute(s)?.length(e);
        Ok(())
    })
}

/// Full λ report (values and witnesses) as a JSON object.
///
/// # Safety
/// `set` must be a live handle; `out` must be a valid pointer. Free the
/// result with `dl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn dl_lambda_report_json(set: *const DlGenSet, out: *mut *mut c_char) -> DlStatus {
    guard(|| {
        let s = handle(set, "set")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = LambdaReport::compute(s)?;
        let json = serde_json::to_string(&r).map_err(Error::from)?;
        *out = into_c_string(json)?;
        Ok(())
    })
}

/// Cayley graph in DOT format.
///
/// # Safety
/// `set` must be a live handle; `out` must be a valid pointer. Free the
/// result with `dl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn dl_export_dot(set: *const DlGenSet, out: *mut *mut c_char) -> DlStatus {
    guard(|| {
        let s = handle(set, "set")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let table = LengthTable::compute(s)?;
        let mut buf = Vec::new();
        export_cayley(&table, &mut buf)?;
        let text = String::from_utf8(buf).map_err(|_| Failure(DlStatus::InternalError, "non-UTF-8 DOT".into()))?;
        *out = into_c_string(text)?;
        Ok(())
    })
}

/// Closed-form λ prediction for a family at `n`. `class` is a `DlClass`
/// value.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_predict(class: u32, n: u32, out: *mut DlPrediction) -> DlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let class = match class {
            0 => DlClass::Card2,
            1 => DlClass::TwoInvOneCentral,
            2 => DlClass::OneInvTwoCyclic,
            3 => DlClass::ThreeInvA,
            4 => DlClass::ThreeInvB,
            5 => DlClass::ThreeInvC,
            6 => DlClass::ThreeInvD,
            7 => DlClass::GeneratingOutsideFamilies,
            8 => DlClass::NonGenerating,
            other => return Err(Failure(DlStatus::Unsupported, format!("unknown class code {other}"))),
        };
        if n < 3 {
            return Err(Error::InvalidOrder {
                n,
                reason: "dihedral groups require n >= 3",
            }
            .into());
        }
        let p = predict(class.into(), n)?;
        let part = |x: Prediction| (x.value, DlBoundKind::from(x.kind));
        let (lambda1, lambda1_kind) = part(p.lambda1);
        let (lambda2, lambda2_kind) = part(p.lambda2);
        *out = DlPrediction {
            lambda1,
            lambda1_kind,
            lambda2,
            lambda2_kind,
        };
        Ok(())
    })
}

/// Whether some bijection `source -> target` of generators extends to an
/// automorphism of `D_n`.
///
/// # Safety
/// `source` and `target` must be live handles; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_automorphism_exists(
    source: *const DlGenSet,
    target: *const DlGenSet,
    out: *mut bool,
) -> DlStatus {
    guard(|| {
        let s1 = handle(source, "source")?;
        let s2 = handle(target, "target")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = find_relation_preserving_map(s1, s2)?.is_some();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message describing the most recent failure on this thread, or null if
/// the last call succeeded. Do not free.
#[no_mangle]
pub extern "C" fn dl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
