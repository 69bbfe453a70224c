//! C ABI for `qlattice`.
//!
//! Contexts and words are opaque heap handles. Every function returns a
//! [`QlStatus`]; on failure [`ql_last_error_message`] describes the error.
//! Words remember the context they were made in, and combining words from
//! different contexts fails with `QL_STATUS_CONTEXT_MISMATCH`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use qlattice::toeplitz::{enumerate_ball, norm_estimate, NormOptions};
use qlattice::{io, CommutationGraph, Error, Join, NormalWord};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QlStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed JSON, bad UTF-8 or an unknown preset.
    Parse = 2,
    /// Well-formed input naming unknown vertices, trivial syllables,
    /// invalid graphs or Coxeter matrices.
    InvalidInput = 3,
    NotInPpInv = 4,
    NotPositive = 5,
    BallTooLarge = 6,
    ContextMismatch = 7,
    /// Any other failure of a library operation.
    Domain = 8,
    Panic = 9,
}

pub struct QlContext {
    graph: Arc<CommutationGraph>,
}

pub struct QlWord {
    graph: Arc<CommutationGraph>,
    word: NormalWord,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(QlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) | Error::Io(_) => QlStatus::Parse,
            Error::NotInPPInv => QlStatus::NotInPpInv,
            Error::NotPositive => QlStatus::NotPositive,
            Error::BallTooLarge(_) => QlStatus::BallTooLarge,
            e if e.is_input_error() => QlStatus::InvalidInput,
            _ => QlStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(QlStatus::NullPointer, format!("`{name}` is null"))
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QlStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            QlStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(QlStatus::Parse, format!("`{name}` is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn write<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

fn same_context(a: &QlWord, b: &QlWord) -> Result<(), Failure> {
    if Arc::ptr_eq(&a.graph, &b.graph) {
        Ok(())
    } else {
        Err(Failure(QlStatus::ContextMismatch, "words belong to different contexts".into()))
    }
}

fn boxed(graph: &Arc<CommutationGraph>, word: NormalWord) -> *mut QlWord {
    Box::into_raw(Box::new(QlWord { graph: graph.clone(), word }))
}

fn context(graph: CommutationGraph) -> *mut QlContext {
    Box::into_raw(Box::new(QlContext { graph: Arc::new(graph) }))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ql_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ql_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a context from a JSON context document.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ql_context_from_json(json: *const c_char, out: *mut *mut QlContext) -> QlStatus {
    guard(|| {
        let graph = io::parse_context(text(json, "json")?)?;
        write(out, context(graph), "out")
    })
}

/// Builds one of the shipped preset contexts by name.
///
/// # Safety
/// `name` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ql_context_preset(name: *const c_char, out: *mut *mut QlContext) -> QlStatus {
    guard(|| {
        let name = text(name, "name")?;
        let doc = io::preset(name).ok_or_else(|| Failure(QlStatus::Parse, format!("unknown preset `{name}`")))?;
        write(out, context(io::parse_context(doc)?), "out")
    })
}

/// # Safety
/// `ctx` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ql_context_free(ctx: *mut QlContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_context_vertex_count(ctx: *const QlContext, out: *mut usize) -> QlStatus {
    guard(|| write(out, deref(ctx, "ctx")?.graph.vertex_count(), "out"))
}

/// Parses a JSON word literal and stores its normal form.
///
/// # Safety
/// `literal` must be a valid C string; other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_word_parse(
    ctx: *const QlContext,
    literal: *const c_char,
    out: *mut *mut QlWord,
) -> QlStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        let word = io::parse_word(&ctx.graph, text(literal, "literal")?)?;
        write(out, boxed(&ctx.graph, word), "out")
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_word_identity(ctx: *const QlContext, out: *mut *mut QlWord) -> QlStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        write(out, boxed(&ctx.graph, NormalWord::identity()), "out")
    })
}

/// # Safety
/// `word` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ql_word_free(word: *mut QlWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// The normal form as a JSON word literal. Release with [`ql_string_free`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_word_to_json(word: *const QlWord, out: *mut *mut c_char) -> QlStatus {
    guard(|| {
        let w = deref(word, "word")?;
        let json = io::word_to_json(&w.graph, &w.word).to_string();
        write(out, CString::new(json).expect("JSON has no nul bytes").into_raw(), "out")
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ql_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_word_multiply(a: *const QlWord, b: *const QlWord, out: *mut *mut QlWord) -> QlStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        same_context(a, b)?;
        write(out, boxed(&a.graph, a.graph.multiply(&a.word, &b.word)), "out")
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_word_invert(a: *const QlWord, out: *mut *mut QlWord) -> QlStatus {
    guard(|| {
        let a = deref(a, "a")?;
        write(out, boxed(&a.graph, a.graph.invert(&a.word)), "out")
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_word_equal(a: *const QlWord, b: *const QlWord, out: *mut bool) -> QlStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        same_context(a, b)?;
        write(out, a.word == b.word, "out")
    })
}

/// Number of syllables of the normal form.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_word_length(a: *const QlWord, out: *mut usize) -> QlStatus {
    guard(|| {
        let a = deref(a, "a")?;
        write(out, a.graph.length(&a.word), "out")
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_word_degree(a: *const QlWord, out: *mut i64) -> QlStatus {
    guard(|| write(out, deref(a, "a")?.word.degree(), "out"))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_word_is_positive(a: *const QlWord, out: *mut bool) -> QlStatus {
    guard(|| {
        let a = deref(a, "a")?;
        write(out, a.graph.is_positive(&a.word), "out")
    })
}

/// Whether `a ≤ b`, that is `a^-1 b` is positive.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_word_leq(a: *const QlWord, b: *const QlWord, out: *mut bool) -> QlStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        same_context(a, b)?;
        write(out, a.graph.leq(&a.word, &b.word), "out")
    })
}

/// Least upper bound. When there is none, `*infinite` is set and `*out`
/// is null.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_lub(
    a: *const QlWord,
    b: *const QlWord,
    out: *mut *mut QlWord,
    infinite: *mut bool,
) -> QlStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        same_context(a, b)?;
        if out.is_null() {
            return Err(null("out"));
        }
        match a.graph.lub_general(&a.word, &b.word) {
            Join::Finite(l) => {
                write(infinite, false, "infinite")?;
                write(out, boxed(&a.graph, l), "out")
            }
            Join::Infinity => {
                write(infinite, true, "infinite")?;
                write(out, ptr::null_mut(), "out")
            }
        }
    })
}

/// Greatest common right divisor of two positive words.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_rgcd(a: *const QlWord, b: *const QlWord, out: *mut *mut QlWord) -> QlStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        same_context(a, b)?;
        let d = a.graph.rgcd(&a.word, &b.word)?;
        write(out, boxed(&a.graph, d), "out")
    })
}

/// The positive pair `(num, den)` with `x = num den^-1` and trivial right gcd.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_canonical_fraction(
    x: *const QlWord,
    num: *mut *mut QlWord,
    den: *mut *mut QlWord,
) -> QlStatus {
    guard(|| {
        let x = deref(x, "x")?;
        if num.is_null() || den.is_null() {
            return Err(null(if num.is_null() { "num" } else { "den" }));
        }
        let (a, b) = x.graph.canonical_fraction(&x.word)?;
        write(num, boxed(&x.graph, a), "num")?;
        write(den, boxed(&x.graph, b), "den")
    })
}

/// Largest singular value of `Σ weights[i] T_{words[i]}` compressed to the
/// ball of radius `max_degree`, by power iteration to relative `tolerance`.
///
/// # Safety
/// `words` and `weights` must point to `count` valid entries.
#[no_mangle]
pub unsafe extern "C" fn ql_norm_estimate(
    ctx: *const QlContext,
    words: *const *const QlWord,
    weights: *const f64,
    count: usize,
    max_degree: usize,
    tolerance: f64,
    out: *mut f64,
) -> QlStatus {
    guard(|| {
        let ctx = deref(ctx, "ctx")?;
        if count > 0 && (words.is_null() || weights.is_null()) {
            return Err(null(if words.is_null() { "words" } else { "weights" }));
        }
        let mut pairs = Vec::with_capacity(count);
        for i in 0..count {
            let w = deref(*words.add(i), "words[i]")?;
            if !Arc::ptr_eq(&w.graph, &ctx.graph) {
                return Err(Failure(QlStatus::ContextMismatch, "word belongs to another context".into()));
            }
            pairs.push((w.word.clone(), *weights.add(i)));
        }
        let ball = enumerate_ball(&ctx.graph, max_degree, qlattice::toeplitz::DEFAULT_MAX_BALL)?;
        let options = NormOptions { tolerance, ..NormOptions::default() };
        write(out, norm_estimate(&ball, &pairs, options)?.value, "out")
    })
}
