//! C ABI over `circlang`.
//!
//! Every fallible function returns a [`CirclangStatus`]. On failure the
//! message is available from [`circlang_last_error`] on the same thread.
//! Objects are opaque handles released with their `_free` function; strings
//! returned through `char **` out-parameters are released with
//! [`circlang_string_free`]. Enum-valued parameters are passed as `uint32_t`
//! holding one of the declared enum values.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use circlang::alphabet::{
    count_all, count_balanced, count_surjective, english_partition, stirling2, AlphabetError,
    PartitionedAlphabet,
};
use circlang::circle_partition::{partition, PartitionError, PartitionMode, PartitionResult, PartitionSpec};
use circlang::grammar::{parse_grammar, DictionaryCfg, GrammarError};
use circlang::josephus::{eliminate, EliminationConvention, JosephusError};
use circlang::search::{check_sentence, find_sequence_and_sentence, SearchError, SearchInstance, SearchMode};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CirclangStatus {
    Ok = 0,
    /// The query ran but has no solution, or a check came out false.
    NoSolution = 1,
    InvalidArgument = 2,
    NullPointer = 3,
    ParseError = 4,
    DomainError = 5,
    BudgetExceeded = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub enum CirclangPartitionMode {
    Removal = 0,
    NonRemoval = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub enum CirclangConvention {
    CountK = 0,
    SkipK = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub enum CirclangCountKind {
    All = 0,
    Surjective = 1,
    Balanced = 2,
    Stirling = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub enum CirclangSearchMode {
    Exhaustive = 0,
    Maximal = 1,
}

pub struct CirclangAlphabet {
    inner: PartitionedAlphabet,
}

pub struct CirclangGrammar {
    inner: DictionaryCfg,
}

pub struct CirclangPartition {
    inner: PartitionResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(CirclangStatus, String);

impl Failure {
    fn null(what: &str) -> Self {
        Failure(CirclangStatus::NullPointer, format!("`{what}` is null"))
    }

    fn invalid(msg: impl Into<String>) -> Self {
        Failure(CirclangStatus::InvalidArgument, msg.into())
    }
}

impl From<AlphabetError> for Failure {
    fn from(e: AlphabetError) -> Self {
        let status = match e {
            AlphabetError::Format(_) | AlphabetError::NotASymbol(_) => CirclangStatus::ParseError,
            AlphabetError::DomainError(_) => CirclangStatus::DomainError,
            _ => CirclangStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<GrammarError> for Failure {
    fn from(e: GrammarError) -> Self {
        Failure(CirclangStatus::ParseError, e.to_string())
    }
}

impl From<PartitionError> for Failure {
    fn from(e: PartitionError) -> Self {
        Failure(CirclangStatus::DomainError, e.to_string())
    }
}

impl From<JosephusError> for Failure {
    fn from(e: JosephusError) -> Self {
        Failure(CirclangStatus::DomainError, e.to_string())
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let status = match e {
            SearchError::SearchBudgetExceeded { .. } => CirclangStatus::BudgetExceeded,
            _ => CirclangStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', "?")).expect("nul bytes replaced");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<CirclangStatus, Failure>) -> CirclangStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            CirclangStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::invalid(format!("`{what}` is not valid UTF-8")))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure::null(what))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "?"))
        .expect("nul bytes replaced")
        .into_raw()
}

fn parse_convention(v: u32) -> Result<EliminationConvention, Failure> {
    match v {
        0 => Ok(EliminationConvention::CountK),
        1 => Ok(EliminationConvention::SkipK),
        _ => Err(Failure::invalid(format!("unknown convention {v}"))),
    }
}

/// Message for the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn circlang_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn circlang_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn circlang_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The built-in straight/curved English letter partition.
#[no_mangle]
pub unsafe extern "C" fn circlang_alphabet_english(out_alphabet: *mut *mut CirclangAlphabet) -> CirclangStatus {
    guard(|| {
        let slot = out(out_alphabet, "out_alphabet")?;
        *slot = Box::into_raw(Box::new(CirclangAlphabet {
            inner: english_partition(),
        }));
        Ok(CirclangStatus::Ok)
    })
}

/// Parses an alphabet from its JSON form.
#[no_mangle]
pub unsafe extern "C" fn circlang_alphabet_from_json(
    json: *const c_char,
    out_alphabet: *mut *mut CirclangAlphabet,
) -> CirclangStatus {
    guard(|| {
        let slot = out(out_alphabet, "out_alphabet")?;
        let inner = PartitionedAlphabet::from_json(text(json, "json")?)?;
        *slot = Box::into_raw(Box::new(CirclangAlphabet { inner }));
        Ok(CirclangStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn circlang_alphabet_class_count(alphabet: *const CirclangAlphabet) -> usize {
    alphabet.as_ref().map_or(0, |a| a.inner.class_count())
}

#[no_mangle]
pub unsafe extern "C" fn circlang_alphabet_free(alphabet: *mut CirclangAlphabet) {
    if !alphabet.is_null() {
        drop(Box::from_raw(alphabet));
    }
}

/// Compares the run pattern of `sentence` (non-alphabet characters stripped)
/// with `lengths`. Returns OK on a match and NO_SOLUTION otherwise.
#[no_mangle]
pub unsafe extern "C" fn circlang_check_sentence(
    alphabet: *const CirclangAlphabet,
    sentence: *const c_char,
    lengths: *const usize,
    lengths_len: usize,
) -> CirclangStatus {
    guard(|| {
        let a = alphabet.as_ref().ok_or_else(|| Failure::null("alphabet"))?;
        let lengths = slice(lengths, lengths_len, "lengths")?;
        Ok(if check_sentence(text(sentence, "sentence")?, &a.inner, lengths)? {
            CirclangStatus::Ok
        } else {
            CirclangStatus::NoSolution
        })
    })
}

/// Parses a grammar file.
#[no_mangle]
pub unsafe extern "C" fn circlang_grammar_parse(
    source: *const c_char,
    out_grammar: *mut *mut CirclangGrammar,
) -> CirclangStatus {
    guard(|| {
        let slot = out(out_grammar, "out_grammar")?;
        let inner = parse_grammar(text(source, "source")?)?;
        *slot = Box::into_raw(Box::new(CirclangGrammar { inner }));
        Ok(CirclangStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn circlang_grammar_free(grammar: *mut CirclangGrammar) {
    if !grammar.is_null() {
        drop(Box::from_raw(grammar));
    }
}

/// Balanced partition of `1..=n` into `r` groups. `mode` is a
/// `CirclangPartitionMode`.
#[no_mangle]
pub unsafe extern "C" fn circlang_partition(
    n: usize,
    r: usize,
    k: usize,
    mode: u32,
    out_partition: *mut *mut CirclangPartition,
) -> CirclangStatus {
    guard(|| {
        let slot = out(out_partition, "out_partition")?;
        let mode = match mode {
            0 => PartitionMode::Removal,
            1 => PartitionMode::NonRemoval,
            other => return Err(Failure::invalid(format!("unknown partition mode {other}"))),
        };
        let inner = partition(PartitionSpec::new(n, r, k)?, mode)?;
        *slot = Box::into_raw(Box::new(CirclangPartition { inner }));
        Ok(CirclangStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn circlang_partition_group_count(p: *const CirclangPartition) -> usize {
    p.as_ref().map_or(0, |p| p.inner.groups.len())
}

/// Copies group `index` (0-based) into `buffer`. `out_len` always receives
/// the group size; BUFFER_TOO_SMALL is returned when `capacity` is short.
#[no_mangle]
pub unsafe extern "C" fn circlang_partition_group(
    p: *const CirclangPartition,
    index: usize,
    buffer: *mut usize,
    capacity: usize,
    out_len: *mut usize,
) -> CirclangStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| Failure::null("partition"))?;
        let len_slot = out(out_len, "out_len")?;
        let group = p
            .inner
            .groups
            .get(index)
            .ok_or_else(|| Failure::invalid(format!("group {index} out of range")))?;
        *len_slot = group.len();
        if capacity < group.len() {
            return Err(Failure(
                CirclangStatus::BufferTooSmall,
                format!("group has {} members, buffer holds {capacity}", group.len()),
            ));
        }
        if !group.is_empty() {
            if buffer.is_null() {
                return Err(Failure::null("buffer"));
            }
            ptr::copy_nonoverlapping(group.as_ptr(), buffer, group.len());
        }
        Ok(CirclangStatus::Ok)
    })
}

/// Groups and construction trace as JSON.
#[no_mangle]
pub unsafe extern "C" fn circlang_partition_to_json(
    p: *const CirclangPartition,
    out_json: *mut *mut c_char,
) -> CirclangStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| Failure::null("partition"))?;
        let slot = out(out_json, "out_json")?;
        let json = serde_json::to_string(&p.inner).map_err(|e| Failure::invalid(e.to_string()))?;
        *slot = owned_string(json);
        Ok(CirclangStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn circlang_partition_free(p: *mut CirclangPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Writes the first `count` removals on a circle of `n` into `buffer`,
/// which must hold `count` entries. `convention` is a `CirclangConvention`.
#[no_mangle]
pub unsafe extern "C" fn circlang_eliminate(
    n: usize,
    k: usize,
    count: usize,
    convention: u32,
    buffer: *mut usize,
    capacity: usize,
) -> CirclangStatus {
    guard(|| {
        let trace = eliminate(n, k, count, parse_convention(convention)?)?;
        if capacity < trace.removed.len() {
            return Err(Failure(
                CirclangStatus::BufferTooSmall,
                format!("{} removals, buffer holds {capacity}", trace.removed.len()),
            ));
        }
        if !trace.removed.is_empty() {
            if buffer.is_null() {
                return Err(Failure::null("buffer"));
            }
            ptr::copy_nonoverlapping(trace.removed.as_ptr(), buffer, trace.removed.len());
        }
        Ok(CirclangStatus::Ok)
    })
}

/// Arrangement count as a decimal string. `kind` is a `CirclangCountKind`.
#[no_mangle]
pub unsafe extern "C" fn circlang_count(n: u32, r: u32, kind: u32, out_decimal: *mut *mut c_char) -> CirclangStatus {
    guard(|| {
        let slot = out(out_decimal, "out_decimal")?;
        let value = match kind {
            0 => count_all(n, r),
            1 => count_surjective(n, r),
            2 => count_balanced(n, r)?,
            3 => stirling2(n, r),
            other => return Err(Failure::invalid(format!("unknown count kind {other}"))),
        };
        *slot = owned_string(value.to_string());
        Ok(CirclangStatus::Ok)
    })
}

/// Searches for a sequence and sentence for the run pattern `lengths`.
///
/// `dictionary` may be NULL (with `dictionary_len` 0) to use the grammar's
/// own words. `mode` is a `CirclangSearchMode`; `candidate_cap` of 0 uses the
/// default. On success `out_json` receives the solution JSON; NO_SOLUTION
/// leaves it NULL.
#[no_mangle]
pub unsafe extern "C" fn circlang_find_sentence(
    alphabet: *const CirclangAlphabet,
    grammar: *const CirclangGrammar,
    dictionary: *const *const c_char,
    dictionary_len: usize,
    lengths: *const usize,
    lengths_len: usize,
    mode: u32,
    candidate_cap: u64,
    out_json: *mut *mut c_char,
) -> CirclangStatus {
    guard(|| {
        let a = alphabet.as_ref().ok_or_else(|| Failure::null("alphabet"))?;
        let g = grammar.as_ref().ok_or_else(|| Failure::null("grammar"))?;
        let slot = out(out_json, "out_json")?;
        *slot = ptr::null_mut();
        let words: Vec<String> = if dictionary.is_null() {
            g.inner.dictionary().iter().cloned().collect()
        } else {
            slice(dictionary, dictionary_len, "dictionary")?
                .iter()
                .map(|&w| text(w, "dictionary entry").map(str::to_string))
                .collect::<Result<_, _>>()?
        };
        let mode = match mode {
            0 => SearchMode::Exhaustive,
            1 => SearchMode::Maximal,
            other => return Err(Failure::invalid(format!("unknown search mode {other}"))),
        };
        let mut inst = SearchInstance::new(
            a.inner.clone(),
            slice(lengths, lengths_len, "lengths")?.to_vec(),
            words,
            g.inner.clone(),
        )?
        .with_mode(mode);
        if candidate_cap > 0 {
            inst = inst.with_candidate_cap(candidate_cap);
        }
        match find_sequence_and_sentence(&inst)?.solution {
            Some(sol) => {
                *slot = owned_string(sol.to_json(&a.inner).to_string());
                Ok(CirclangStatus::Ok)
            }
            None => Ok(CirclangStatus::NoSolution),
        }
    })
}
