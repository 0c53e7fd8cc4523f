//! C ABI for knowledge-base completion.
//!
//! Objects are opaque handles created by `kbc_kb_parse`,
//! `kbc_session_start` or `kbc_session_resume` and released with the
//! matching `*_free`. Every fallible call
//! returns a [`KbcStatus`]; on failure, [`kbc_last_error`] describes the
//! problem until the next failing call on the same thread. Strings returned
//! through `char **` out-parameters are owned by the caller and must be
//! released with [`kbc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kbcomplete::completion::{CompletionError, CompletionSession, Status};
use kbcomplete::dl::{parse_concept, Concept, KnowledgeBase};
use kbcomplete::fca::stem_base;
use kbcomplete::io::{read_cxt, read_ontology, write_ontology};
use kbcomplete::lattice::{gcs, ConjunctionHierarchy, LatticeError};
use kbcomplete::partial::{render_set, PartialError};
use kbcomplete::reasoner::{Reasoner, ReasonerError, Verdict, DEFAULT_NODE_BUDGET};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KbcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    Conflict = 5,
    Inconsistent = 6,
    BudgetExhausted = 7,
    Complete = 8,
    Paused = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KbcVerdict {
    Entailed = 0,
    Refuted = 1,
    Unknown = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KbcSessionStatus {
    Running = 0,
    Paused = 1,
    Finished = 2,
}

/// A parsed knowledge base.
pub struct KbcKb {
    kb: KnowledgeBase,
}

/// A completion session.
pub struct KbcSession {
    session: CompletionSession,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(KbcStatus, String);

impl Failure {
    fn new(status: KbcStatus, message: impl Into<String>) -> Self {
        Failure(status, message.into())
    }
}

impl From<ReasonerError> for Failure {
    fn from(e: ReasonerError) -> Self {
        let status = match e {
            ReasonerError::BudgetExhausted { .. } => KbcStatus::BudgetExhausted,
            ReasonerError::InconsistentKb => KbcStatus::Inconsistent,
            ReasonerError::Dl(_) => KbcStatus::Invalid,
        };
        Failure(status, e.to_string())
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Reasoner(r) => r.into(),
            other => Failure(KbcStatus::Invalid, other.to_string()),
        }
    }
}

impl From<CompletionError> for Failure {
    fn from(e: CompletionError) -> Self {
        let status = match &e {
            CompletionError::StaleQuestion { .. } | CompletionError::Partial(PartialError::StaleQuestion { .. }) => {
                KbcStatus::Conflict
            }
            CompletionError::Paused => KbcStatus::Paused,
            CompletionError::Complete => KbcStatus::Complete,
            CompletionError::Inconsistent(_) | CompletionError::Reasoner(ReasonerError::InconsistentKb) => {
                KbcStatus::Inconsistent
            }
            CompletionError::Reasoner(ReasonerError::BudgetExhausted { .. }) => KbcStatus::BudgetExhausted,
            CompletionError::Io(_) | CompletionError::Dl(_) => KbcStatus::Parse,
            _ => KbcStatus::Invalid,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Run `f`, recording failures and containing panics.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KbcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KbcStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            KbcStatus::Panic
        }
    }
}

unsafe fn cstr<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(KbcStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(KbcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn text_array(p: *const *const c_char, n: usize, what: &str) -> Result<Vec<String>, Failure> {
    if p.is_null() {
        return Err(Failure::new(KbcStatus::NullArgument, format!("{what} is null")));
    }
    (0..n).map(|i| cstr(*p.add(i), what).map(str::to_owned)).collect()
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(KbcStatus::NullArgument, format!("{what} is null")))
}

unsafe fn handle_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure::new(KbcStatus::NullArgument, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(KbcStatus::NullArgument, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::new(KbcStatus::Invalid, "string contains NUL"))?;
    put(out, c.into_raw())
}

fn concept(s: &str) -> Result<Concept, Failure> {
    parse_concept(s).map_err(|e| Failure::new(KbcStatus::Parse, e.to_string()))
}

fn budget_or_default(budget: usize) -> usize {
    if budget == 0 {
        DEFAULT_NODE_BUDGET
    } else {
        budget
    }
}

fn reasoner(kb: &KnowledgeBase, budget: usize) -> Result<Reasoner, Failure> {
    Ok(Reasoner::new(kb.tbox.clone())?.with_budget(budget_or_default(budget)))
}

/// Message of the last failure on this thread; empty if none. Valid until
/// the next failing call on this thread.
#[no_mangle]
pub extern "C" fn kbc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kbc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse ontology text into a new knowledge base handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kbc_kb_parse(text: *const c_char, out: *mut *mut KbcKb) -> KbcStatus {
    guard(|| {
        let kb = read_ontology(cstr(text, "ontology text")?)
            .map_err(|e| Failure::new(KbcStatus::Parse, e.to_string()))?;
        put(out, Box::into_raw(Box::new(KbcKb { kb })))
    })
}

/// # Safety
/// `kb` must come from [`kbc_kb_parse`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn kbc_kb_free(kb: *mut KbcKb) {
    if !kb.is_null() {
        drop(Box::from_raw(kb));
    }
}

/// Canonical ontology text of `kb`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kbc_kb_write(kb: *const KbcKb, out: *mut *mut c_char) -> KbcStatus {
    guard(|| put_string(out, write_ontology(&handle(kb, "kb")?.kb)))
}

/// Whether `c` is subsumed by `d` w.r.t. the TBox. A zero budget means the
/// default.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn kbc_subsumes(
    kb: *const KbcKb,
    c: *const c_char,
    d: *const c_char,
    budget: usize,
    out: *mut bool,
) -> KbcStatus {
    guard(|| {
        let kb = &handle(kb, "kb")?.kb;
        let (c, d) = (concept(cstr(c, "C")?)?, concept(cstr(d, "D")?)?);
        put(out, reasoner(kb, budget)?.subsumes(&c, &d)?)
    })
}

/// Three-valued instance check of `individual` against `c`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn kbc_instance_check(
    kb: *const KbcKb,
    individual: *const c_char,
    c: *const c_char,
    budget: usize,
    out: *mut KbcVerdict,
) -> KbcStatus {
    guard(|| {
        let kb = &handle(kb, "kb")?.kb;
        let individual = cstr(individual, "individual")?;
        if !kb.abox.has_individual(individual) {
            return Err(Failure::new(KbcStatus::Invalid, format!("unknown individual {individual}")));
        }
        let c = concept(cstr(c, "C")?)?;
        let verdict = match reasoner(kb, budget)?.instance_check(&kb.abox, individual, &c)?.verdict {
            Verdict::Entailed => KbcVerdict::Entailed,
            Verdict::Refuted => KbcVerdict::Refuted,
            Verdict::Unknown => KbcVerdict::Unknown,
        };
        put(out, verdict)
    })
}

/// Good common subsumer of `c` and `d`, using the conjunction hierarchy
/// over `names` (all defined names when `names` is null).
///
/// # Safety
/// Pointers must be valid; `names` must hold `n_names` strings.
#[no_mangle]
pub unsafe extern "C" fn kbc_gcs(
    kb: *const KbcKb,
    c: *const c_char,
    d: *const c_char,
    names: *const *const c_char,
    n_names: usize,
    budget: usize,
    out: *mut *mut c_char,
) -> KbcStatus {
    guard(|| {
        let kb = &handle(kb, "kb")?.kb;
        let (c, d) = (concept(cstr(c, "C")?)?, concept(cstr(d, "D")?)?);
        let names = if names.is_null() {
            kb.tbox.definitions().iter().map(|(n, _)| n.clone()).collect()
        } else {
            text_array(names, n_names, "names")?
        };
        let r = reasoner(kb, budget)?;
        let h = ConjunctionHierarchy::build(&r, &names)?;
        put_string(out, gcs(&r, &h, &c, &d)?.to_string())
    })
}

/// Stem base of a context in `.cxt` format, one implication per line.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kbc_stem_base(cxt: *const c_char, out: *mut *mut c_char) -> KbcStatus {
    guard(|| {
        let ctx = read_cxt(cstr(cxt, "context")?).map_err(|e| Failure::new(KbcStatus::Parse, e.to_string()))?;
        let mut s = String::new();
        for imp in stem_base(&ctx) {
            s.push_str(&format!(
                "{} -> {}\n",
                render_set(&imp.premise, ctx.attributes()),
                render_set(&imp.conclusion, ctx.attributes())
            ));
        }
        put_string(out, s)
    })
}

/// Start completing a copy of `kb` over `names`. `order` may be null for
/// the order of `names`; a zero budget means the default.
///
/// # Safety
/// Pointers must be valid; arrays must hold `n_names` strings.
#[no_mangle]
pub unsafe extern "C" fn kbc_session_start(
    kb: *const KbcKb,
    names: *const *const c_char,
    order: *const *const c_char,
    n_names: usize,
    budget: usize,
    out: *mut *mut KbcSession,
) -> KbcStatus {
    guard(|| {
        let kb = handle(kb, "kb")?.kb.clone();
        let names = text_array(names, n_names, "names")?;
        let order = if order.is_null() {
            None
        } else {
            Some(text_array(order, n_names, "order")?)
        };
        let session = CompletionSession::start(kb, names, order, budget_or_default(budget))?;
        put(out, Box::into_raw(Box::new(KbcSession { session })))
    })
}

/// Rebuild a session from a snapshot.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kbc_session_resume(
    snapshot: *const c_char,
    budget: usize,
    out: *mut *mut KbcSession,
) -> KbcStatus {
    guard(|| {
        let session = CompletionSession::resume(cstr(snapshot, "snapshot")?, budget_or_default(budget))?;
        put(out, Box::into_raw(Box::new(KbcSession { session })))
    })
}

/// # Safety
/// `s` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn kbc_session_free(s: *mut KbcSession) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kbc_session_status(s: *const KbcSession, out: *mut KbcSessionStatus) -> KbcStatus {
    guard(|| {
        let status = match handle(s, "session")?.session.status() {
            Status::Running => KbcSessionStatus::Running,
            Status::Paused => KbcSessionStatus::Paused,
            Status::Complete => KbcSessionStatus::Finished,
        };
        put(out, status)
    })
}

/// The pending question as its id and the rendering `{a, b} -> {c}`.
/// Returns [`KbcStatus::Complete`] when nothing is left to ask.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kbc_session_question(
    s: *const KbcSession,
    id: *mut u64,
    implication: *mut *mut c_char,
) -> KbcStatus {
    guard(|| {
        let q = handle(s, "session")?
            .session
            .current_question()?
            .ok_or_else(|| Failure::new(KbcStatus::Complete, "completion is finished"))?;
        put(id, q.id)?;
        put_string(implication, q.implication_text())
    })
}

/// Accept question `id`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kbc_session_answer_yes(s: *mut KbcSession, id: u64) -> KbcStatus {
    guard(|| Ok(handle_mut(s, "session")?.session.answer_yes(id)?))
}

/// Reject question `id` with a new individual whose row over the session
/// names is given as `+`, `-` and `?` characters.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn kbc_session_answer_no(
    s: *mut KbcSession,
    id: u64,
    individual: *const c_char,
    row: *const c_char,
) -> KbcStatus {
    guard(|| {
        let session = &mut handle_mut(s, "session")?.session;
        let individual = cstr(individual, "individual")?;
        let row: Vec<char> = cstr(row, "row")?.chars().collect();
        if row.len() != session.names().len() {
            return Err(Failure::new(
                KbcStatus::Invalid,
                format!("row has {} cells, expected {}", row.len(), session.names().len()),
            ));
        }
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (name, c) in session.names().iter().zip(row) {
            match c {
                '+' => pos.push(name.clone()),
                '-' => neg.push(name.clone()),
                '?' => {}
                other => return Err(Failure::new(KbcStatus::Invalid, format!("illegal cell {other:?}"))),
            }
        }
        Ok(session.answer_no(id, individual, &pos, &neg)?)
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kbc_session_postpone(s: *mut KbcSession) -> KbcStatus {
    guard(|| Ok(handle_mut(s, "session")?.session.postpone()?))
}

/// Remove event `index` from the log and replay the rest. The number of
/// later events dropped as no longer applicable is stored in `dropped`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kbc_session_undo(s: *mut KbcSession, index: usize, dropped: *mut usize) -> KbcStatus {
    guard(|| {
        let report = handle_mut(s, "session")?.session.undo(index)?;
        put(dropped, report.dropped.len())
    })
}

/// Current snapshot of the session (does not pause it).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kbc_session_snapshot(s: *const KbcSession, out: *mut *mut c_char) -> KbcStatus {
    guard(|| put_string(out, handle(s, "session")?.session.snapshot()))
}

/// Completed ontology text and final partial context (`BP` dialect).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn kbc_session_export(
    s: *const KbcSession,
    ontology: *mut *mut c_char,
    context: *mut *mut c_char,
) -> KbcStatus {
    guard(|| {
        let export = handle(s, "session")?.session.export();
        if ontology.is_null() || context.is_null() {
            return Err(Failure::new(KbcStatus::NullArgument, "output pointer is null"));
        }
        put_string(ontology, export.ontology)?;
        put_string(context, export.context).inspect_err(|_| {
            kbc_string_free(*ontology);
            *ontology = ptr::null_mut();
        })
    })
}
