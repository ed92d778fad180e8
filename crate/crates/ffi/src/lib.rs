//! C ABI over `ssym`.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free` function. Every fallible call returns an
//! [`SsymStatus`]; the message for the most recent failure on the calling
//! thread is available from [`ssym_last_error`].
//!
//! # Safety
//!
//! Pointer arguments must be null or valid for the access described on each
//! function; handles must come from this library and not be used after
//! being freed. Null pointers are reported, never dereferenced.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ssym::closedform::{classify, closed_antipode, closed_component, SigmaSpec};
use ssym::{AntipodeCache, Element, Error, Permutation};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SsymStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    OutOfRange = 4,
    Overflow = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// An integer combination of words.
pub struct SsymElement {
    element: Element,
    sorted: Vec<(Vec<u8>, i64)>,
}

impl SsymElement {
    fn boxed(element: Element) -> *mut SsymElement {
        let sorted = element
            .sorted_terms()
            .into_iter()
            .map(|(w, c)| (w.letters().to_vec(), c))
            .collect();
        Box::into_raw(Box::new(SsymElement { element, sorted }))
    }
}

/// Memo table shared across antipode calls; safe to use from several threads.
pub struct SsymCache {
    cache: AntipodeCache,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SsymStatus {
    match e {
        Error::Parse(_) => SsymStatus::ParseError,
        Error::Overflow => SsymStatus::Overflow,
        Error::OutOfRange(_) | Error::DegreeTooLarge { .. } | Error::LetterOutOfRange { .. } => {
            SsymStatus::OutOfRange
        }
        _ => SsymStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (SsymStatus, String)>) -> SsymStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SsymStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            SsymStatus::Panic
        }
    }
}

fn lift<T>(r: ssym::Result<T>) -> Result<T, (SsymStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (SsymStatus, String) {
    (SsymStatus::NullPointer, format!("{what} is null"))
}

unsafe fn put<T>(out: *mut *mut T, value: *mut T) -> Result<(), (SsymStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = value;
    Ok(())
}

unsafe fn slice<'a>(letters: *const u8, len: usize) -> Result<&'a [u8], (SsymStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if letters.is_null() {
        return Err(null("letters"));
    }
    Ok(std::slice::from_raw_parts(letters, len))
}

fn spec(n: usize, a: usize, b: usize) -> Result<SigmaSpec, (SsymStatus, String)> {
    lift(SigmaSpec::new(n, a, b))
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ssym_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn ssym_cache_new(out: *mut *mut SsymCache) -> SsymStatus {
    guard(|| {
        put(
            out,
            Box::into_raw(Box::new(SsymCache {
                cache: AntipodeCache::new(),
            })),
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn ssym_cache_free(cache: *mut SsymCache) {
    if !cache.is_null() {
        drop(Box::from_raw(cache));
    }
}

/// Number of permutations memoized in `cache`, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn ssym_cache_len(cache: *const SsymCache) -> usize {
    cache.as_ref().map_or(0, |c| c.cache.len())
}

/// Recursive antipode of the permutation `letters[0..len]`. `cache` may be
/// null, in which case a private cache is used.
#[no_mangle]
pub unsafe extern "C" fn ssym_antipode(
    cache: *const SsymCache,
    letters: *const u8,
    len: usize,
    out: *mut *mut SsymElement,
) -> SsymStatus {
    guard(|| {
        let p = lift(Permutation::new(slice(letters, len)?))?;
        let s = match cache.as_ref() {
            Some(c) => lift(c.cache.antipode(&p))?.as_ref().clone(),
            None => lift(ssym::antipode(&p))?,
        };
        put(out, SsymElement::boxed(s))
    })
}

/// Antipode of the permutation with descent `a > b` followed by the
/// remaining letters of `1..=n` in increasing order, from the closed form.
#[no_mangle]
pub unsafe extern "C" fn ssym_closed_antipode(
    n: usize,
    a: usize,
    b: usize,
    out: *mut *mut SsymElement,
) -> SsymStatus {
    guard(|| {
        let e = lift(closed_antipode(spec(n, a, b)?))?;
        put(out, SsymElement::boxed(e))
    })
}

/// Closed-form component ending in `j`, last letter stripped.
#[no_mangle]
pub unsafe extern "C" fn ssym_closed_component(
    n: usize,
    a: usize,
    b: usize,
    j: usize,
    out: *mut *mut SsymElement,
) -> SsymStatus {
    guard(|| {
        let e = lift(closed_component(spec(n, a, b)?, j))?;
        put(out, SsymElement::boxed(e))
    })
}

/// Writes the case tag (`"a"` … `"n"`) governing component `j` to `tag`, a
/// static NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ssym_classify(
    n: usize,
    a: usize,
    b: usize,
    j: usize,
    tag: *mut *const c_char,
) -> SsymStatus {
    guard(|| {
        let case = lift(classify(spec(n, a, b)?, j))?;
        if tag.is_null() {
            return Err(null("tag"));
        }
        let s: &'static CStr = match case.tag() {
            "a" => c"a",
            "b" => c"b",
            "c" => c"c",
            "d" => c"d",
            "e" => c"e",
            "f" => c"f",
            "g" => c"g",
            "h" => c"h",
            "i" => c"i",
            "j" => c"j",
            "k" => c"k",
            "l" => c"l",
            "m" => c"m",
            _ => c"n",
        };
        *tag = s.as_ptr();
        Ok(())
    })
}

/// Writes the `n` letters of the descent permutation into `buf`.
#[no_mangle]
pub unsafe extern "C" fn ssym_sigma(
    n: usize,
    a: usize,
    b: usize,
    buf: *mut u8,
    capacity: usize,
) -> SsymStatus {
    guard(|| {
        let p = spec(n, a, b)?.permutation();
        if buf.is_null() {
            return Err(null("buf"));
        }
        if capacity < n {
            return Err((
                SsymStatus::BufferTooSmall,
                format!("need {n} bytes, have {capacity}"),
            ));
        }
        ptr::copy_nonoverlapping(p.letters().as_ptr(), buf, n);
        Ok(())
    })
}

/// Parses text such as `-132 +231 -312` or `+2·1423`.
#[no_mangle]
pub unsafe extern "C" fn ssym_element_parse(
    text: *const c_char,
    out: *mut *mut SsymElement,
) -> SsymStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (SsymStatus::ParseError, "text is not UTF-8".to_string()))?;
        let e: Element = lift(s.parse())?;
        put(out, SsymElement::boxed(e))
    })
}

#[no_mangle]
pub unsafe extern "C" fn ssym_element_free(e: *mut SsymElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Number of distinct words, or 0 for null.
#[no_mangle]
pub unsafe extern "C" fn ssym_element_len(e: *const SsymElement) -> usize {
    e.as_ref().map_or(0, |e| e.sorted.len())
}

/// Term `index` in lexicographic word order. The word's letters go to
/// `letters` (at most `capacity`), its length to `word_len`, and its
/// coefficient to `coeff`. If `capacity` is too small, `word_len` is still
/// set and `SSYM_STATUS_BUFFER_TOO_SMALL` is returned.
#[no_mangle]
pub unsafe extern "C" fn ssym_element_term(
    e: *const SsymElement,
    index: usize,
    letters: *mut u8,
    capacity: usize,
    word_len: *mut usize,
    coeff: *mut i64,
) -> SsymStatus {
    guard(|| {
        let e = e.as_ref().ok_or_else(|| null("element"))?;
        let (w, c) = e.sorted.get(index).ok_or_else(|| {
            (
                SsymStatus::OutOfRange,
                format!("term {index} of {}", e.sorted.len()),
            )
        })?;
        if word_len.is_null() || coeff.is_null() {
            return Err(null("output pointer"));
        }
        *word_len = w.len();
        *coeff = *c;
        if capacity < w.len() {
            return Err((
                SsymStatus::BufferTooSmall,
                format!("need {} bytes, have {capacity}", w.len()),
            ));
        }
        if !w.is_empty() {
            if letters.is_null() {
                return Err(null("letters"));
            }
            ptr::copy_nonoverlapping(w.as_ptr(), letters, w.len());
        }
        Ok(())
    })
}

/// 1 if equal, 0 if not, -1 if either is null.
#[no_mangle]
pub unsafe extern "C" fn ssym_element_equal(x: *const SsymElement, y: *const SsymElement) -> i32 {
    match (x.as_ref(), y.as_ref()) {
        (Some(x), Some(y)) => (x.element == y.element) as i32,
        _ => -1,
    }
}

/// Text rendering; release with [`ssym_string_free`]. Null on failure.
#[no_mangle]
pub unsafe extern "C" fn ssym_element_to_string(e: *const SsymElement) -> *mut c_char {
    let mut out = ptr::null_mut();
    guard(|| {
        let e = e.as_ref().ok_or_else(|| null("element"))?;
        out = CString::new(e.element.to_string())
            .expect("no NUL in rendering")
            .into_raw();
        Ok(())
    });
    out
}

#[no_mangle]
pub unsafe extern "C" fn ssym_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
