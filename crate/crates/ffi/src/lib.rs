//! C ABI over `rackxmod`.
//!
//! Structures are passed as opaque handles created by `rx_*_load` or a
//! constructor and released with the matching `rx_*_free`. Every fallible
//! call returns an [`RxStatus`]; on anything but `RX_STATUS_OK` a
//! description is available from [`rx_last_error_message`] on the same
//! thread until the next failing call.
//!
//! # Safety
//!
//! Handle arguments must be null or pointers previously returned by this
//! library and not yet freed. Out-pointers must be valid for writes.
//! Null handles and out-pointers are reported as `RX_STATUS_NULL_POINTER`.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use rackxmod::format::{self, emit_document, Structure};
use rackxmod::functors::check_adjunction_bijection;
use rackxmod::group_xmod::GroupXMod;
use rackxmod::pullback::{check_conj_preserves_pullback, pullback_xmod, verify_universal_property};
use rackxmod::rack::conj_rack;
use rackxmod::xmod::RackXMod;
use rackxmod::{corpus, FiniteGroup, FiniteRack, GroupHom, RackHom};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidString = 2,
    /// The file could not be read or parsed.
    Parse = 3,
    /// A structure failed its validator.
    Axiom = 4,
    /// The document has a different kind than the call expects.
    KindMismatch = 5,
    /// A verifier ran and reported a failure.
    VerificationFailed = 6,
    IndexOutOfRange = 7,
    Panic = 8,
}

pub struct RxRack(FiniteRack);
pub struct RxGroup(FiniteGroup);
pub struct RxRackHom(RackHom);
pub struct RxGroupHom(GroupHom);
pub struct RxXMod(RackXMod);
pub struct RxGroupXMod(GroupXMod);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

type Outcome<T> = Result<T, (RxStatus, String)>;

fn guard(f: impl FnOnce() -> Outcome<()>) -> RxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RxStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RxStatus::Panic
        }
    }
}

fn null(what: &str) -> (RxStatus, String) {
    (RxStatus::NullPointer, format!("{what} is null"))
}

fn axiom(e: rackxmod::Error) -> (RxStatus, String) {
    (RxStatus::Axiom, e.to_string())
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Outcome<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Outcome<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_value<T>(out: *mut T, value: T) -> Outcome<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = value;
    Ok(())
}

unsafe fn load_structure(path: *const c_char) -> Outcome<Structure> {
    if path.is_null() {
        return Err(null("path"));
    }
    let path = CStr::from_ptr(path)
        .to_str()
        .map_err(|_| (RxStatus::InvalidString, "path is not UTF-8".to_string()))?;
    format::load(Path::new(path)).map_err(|e| {
        let status = if e.is_axiom_failure() {
            RxStatus::Axiom
        } else {
            RxStatus::Parse
        };
        (status, e.to_string())
    })
}

fn kind_mismatch(expected: &str, found: &Structure) -> (RxStatus, String) {
    (
        RxStatus::KindMismatch,
        format!("expected {expected}, found {}", found.kind()),
    )
}

/// Message for the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn rx_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn rx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn free<T>(handle: *mut T) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Releases a handle; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rx_rack_free(handle: *mut RxRack) {
    free(handle)
}

/// Releases a handle; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rx_group_free(handle: *mut RxGroup) {
    free(handle)
}

/// Releases a handle; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rx_rack_hom_free(handle: *mut RxRackHom) {
    free(handle)
}

/// Releases a handle; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rx_group_hom_free(handle: *mut RxGroupHom) {
    free(handle)
}

/// Releases a handle; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rx_xmod_free(handle: *mut RxXMod) {
    free(handle)
}

/// Releases a handle; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rx_group_xmod_free(handle: *mut RxGroupXMod) {
    free(handle)
}

/// Loads and validates a `rack` document.
#[no_mangle]
pub unsafe extern "C" fn rx_rack_load(path: *const c_char, out: *mut *mut RxRack) -> RxStatus {
    guard(|| match load_structure(path)? {
        Structure::Rack(v) => write_out(out, RxRack(v)),
        other => Err(kind_mismatch("rack", &other)),
    })
}

/// Loads and validates a `group` document.
#[no_mangle]
pub unsafe extern "C" fn rx_group_load(path: *const c_char, out: *mut *mut RxGroup) -> RxStatus {
    guard(|| match load_structure(path)? {
        Structure::Group(v) => write_out(out, RxGroup(v)),
        other => Err(kind_mismatch("group", &other)),
    })
}

/// Loads and validates a `hom` document between racks.
#[no_mangle]
pub unsafe extern "C" fn rx_rack_hom_load(path: *const c_char, out: *mut *mut RxRackHom) -> RxStatus {
    guard(|| match load_structure(path)? {
        Structure::RackHom(v) => write_out(out, RxRackHom(v)),
        other => Err(kind_mismatch("hom between racks", &other)),
    })
}

/// Loads and validates a `hom` document between groups.
#[no_mangle]
pub unsafe extern "C" fn rx_group_hom_load(path: *const c_char, out: *mut *mut RxGroupHom) -> RxStatus {
    guard(|| match load_structure(path)? {
        Structure::GroupHom(v) => write_out(out, RxGroupHom(v)),
        other => Err(kind_mismatch("hom between groups", &other)),
    })
}

/// Loads and validates a `rack-xmod` document.
#[no_mangle]
pub unsafe extern "C" fn rx_xmod_load(path: *const c_char, out: *mut *mut RxXMod) -> RxStatus {
    guard(|| match load_structure(path)? {
        Structure::RackXMod(v) => write_out(out, RxXMod(v)),
        other => Err(kind_mismatch("rack-xmod", &other)),
    })
}

/// Loads and validates a `group-xmod` document.
#[no_mangle]
pub unsafe extern "C" fn rx_group_xmod_load(path: *const c_char, out: *mut *mut RxGroupXMod) -> RxStatus {
    guard(|| match load_structure(path)? {
        Structure::GroupXMod(v) => write_out(out, RxGroupXMod(v)),
        other => Err(kind_mismatch("group-xmod", &other)),
    })
}

/// Validates a row-major `size * size` table as a pointed rack.
#[no_mangle]
pub unsafe extern "C" fn rx_rack_from_table(
    size: usize,
    table: *const usize,
    basepoint: usize,
    out: *mut *mut RxRack,
) -> RxStatus {
    guard(|| {
        if table.is_null() {
            return Err(null("table"));
        }
        let cells = size.checked_mul(size).ok_or_else(|| {
            (RxStatus::IndexOutOfRange, "size overflows".to_string())
        })?;
        let entries = std::slice::from_raw_parts(table, cells).to_vec();
        let rack = FiniteRack::new(size, entries, basepoint).map_err(axiom)?;
        write_out(out, RxRack(rack))
    })
}

/// Validates a row-major `size * size` multiplication table.
#[no_mangle]
pub unsafe extern "C" fn rx_group_from_table(
    size: usize,
    table: *const usize,
    identity: usize,
    out: *mut *mut RxGroup,
) -> RxStatus {
    guard(|| {
        if table.is_null() {
            return Err(null("table"));
        }
        let cells = size.checked_mul(size).ok_or_else(|| {
            (RxStatus::IndexOutOfRange, "size overflows".to_string())
        })?;
        let entries = std::slice::from_raw_parts(table, cells).to_vec();
        let group = FiniteGroup::new(size, entries, identity).map_err(axiom)?;
        write_out(out, RxGroup(group))
    })
}

/// Number of elements; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn rx_rack_size(rack: *const RxRack) -> usize {
    rack.as_ref().map_or(0, |r| r.0.size())
}

#[no_mangle]
pub unsafe extern "C" fn rx_rack_basepoint(rack: *const RxRack, out: *mut usize) -> RxStatus {
    guard(|| write_value(out, borrow(rack, "rack")?.0.basepoint()))
}

/// `a ◁ b`.
#[no_mangle]
pub unsafe extern "C" fn rx_rack_op(
    rack: *const RxRack,
    a: usize,
    b: usize,
    out: *mut usize,
) -> RxStatus {
    guard(|| {
        let r = &borrow(rack, "rack")?.0;
        if a >= r.size() || b >= r.size() {
            return Err((
                RxStatus::IndexOutOfRange,
                format!("({a}, {b}) outside a rack of size {}", r.size()),
            ));
        }
        write_value(out, r.op(a, b))
    })
}

/// Number of orbits of the rack.
#[no_mangle]
pub unsafe extern "C" fn rx_rack_orbit_count(rack: *const RxRack, out: *mut usize) -> RxStatus {
    guard(|| write_value(out, borrow(rack, "rack")?.0.orbits().len()))
}

/// Canonical TOML text of a rack; release with [`rx_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rx_rack_to_toml(rack: *const RxRack, out: *mut *mut c_char) -> RxStatus {
    guard(|| {
        let text = emit_document(&format::rack_doc(&borrow(rack, "rack")?.0));
        let text = CString::new(text).expect("documents contain no NUL");
        write_value(out, text.into_raw())
    })
}

#[no_mangle]
pub unsafe extern "C" fn rx_group_size(group: *const RxGroup) -> usize {
    group.as_ref().map_or(0, |g| g.0.size())
}

/// Conjugation rack of a group.
#[no_mangle]
pub unsafe extern "C" fn rx_conj_rack(group: *const RxGroup, out: *mut *mut RxRack) -> RxStatus {
    guard(|| write_out(out, RxRack(conj_rack(&borrow(group, "group")?.0))))
}

#[no_mangle]
pub unsafe extern "C" fn rx_xmod_domain_size(xmod: *const RxXMod) -> usize {
    xmod.as_ref().map_or(0, |x| x.0.domain().size())
}

#[no_mangle]
pub unsafe extern "C" fn rx_xmod_codomain_size(xmod: *const RxXMod) -> usize {
    xmod.as_ref().map_or(0, |x| x.0.codomain().size())
}

/// Pullback of a crossed module of racks along a rack hom into its
/// codomain.
#[no_mangle]
pub unsafe extern "C" fn rx_pullback(
    xmod: *const RxXMod,
    phi: *const RxRackHom,
    out: *mut *mut RxXMod,
) -> RxStatus {
    guard(|| {
        let pb = pullback_xmod(&borrow(xmod, "xmod")?.0, &borrow(phi, "phi")?.0).map_err(axiom)?;
        write_out(out, RxXMod(pb.xmod().clone()))
    })
}

/// Certifies the universal property of the pullback against the built-in
/// test morphisms, writing how many were certified. Returns
/// `RX_STATUS_VERIFICATION_FAILED` if any test fails.
#[no_mangle]
pub unsafe extern "C" fn rx_certify_universal(
    xmod: *const RxXMod,
    phi: *const RxRackHom,
    certified: *mut usize,
) -> RxStatus {
    guard(|| {
        let pb = pullback_xmod(&borrow(xmod, "xmod")?.0, &borrow(phi, "phi")?.0).map_err(axiom)?;
        let tests = corpus::universal_tests(&pb);
        let mut ok = 0;
        let mut first_failure = None;
        for t in &tests {
            match verify_universal_property(&pb, t) {
                Ok(_) => ok += 1,
                Err(e) => {
                    first_failure.get_or_insert(e);
                }
            }
        }
        write_value(certified, ok)?;
        match first_failure {
            None => Ok(()),
            Some(e) => Err((RxStatus::VerificationFailed, e.to_string())),
        }
    })
}

/// Sizes of `Hom(X, Conj(G))` and of the relator-satisfying assignments
/// for `As(X)` in `G`.
#[no_mangle]
pub unsafe extern "C" fn rx_adjunction_counts(
    rack: *const RxRack,
    group: *const RxGroup,
    rack_homs: *mut usize,
    group_homs: *mut usize,
) -> RxStatus {
    guard(|| {
        let r = check_adjunction_bijection(&borrow(rack, "rack")?.0, &borrow(group, "group")?.0)
            .map_err(|e| (RxStatus::VerificationFailed, e.to_string()))?;
        write_value(rack_homs, r.rack_homs)?;
        write_value(group_homs, r.group_homs)
    })
}

/// Checks that Conj of the group pullback is isomorphic to the pullback of
/// Conj, writing the carrier size.
#[no_mangle]
pub unsafe extern "C" fn rx_conj_preserves(
    xmod: *const RxGroupXMod,
    phi: *const RxGroupHom,
    carrier: *mut usize,
) -> RxStatus {
    guard(|| {
        let r = check_conj_preserves_pullback(&borrow(xmod, "xmod")?.0, &borrow(phi, "phi")?.0)
            .map_err(|e| (RxStatus::VerificationFailed, e.to_string()))?;
        write_value(carrier, r.conj_of_pullback.domain().size())
    })
}
