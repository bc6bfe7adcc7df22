//! C ABI over the `repvar` library.
//!
//! Groups and character tables are exposed as opaque handles created by
//! `rv_*_new` and released by `rv_*_free`. Every fallible call returns an
//! `RvStatus`; on failure a description is kept per thread and can be read
//! with `rv_last_error_message`. Counts are returned as `uint64_t` and
//! report `RV_STATUS_OVERFLOW` when they do not fit.

use std::cell::RefCell;
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use repvar::chartab::{character_table, CharacterTable};
use repvar::ff::field_make;
use repvar::homcount::{commutator_count, fs_squares_count, quad_class_count, surface_hom_count};
use repvar::matgrp::{group_build_with_budget, GroupContext, GroupKind};
use repvar::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BudgetExceeded = 3,
    Numerical = 4,
    NoSuchClass = 5,
    Overflow = 6,
    Internal = 7,
}

/// `SL_n` or `GL_n`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RvGroupKind {
    Sl = 0,
    Gl = 1,
}

/// Opaque enumerated matrix group.
pub struct RvGroup {
    inner: Arc<GroupContext>,
}

/// Opaque certified character table.
pub struct RvTable {
    inner: CharacterTable,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> RvStatus {
    match e {
        Error::BudgetExceeded { .. } => RvStatus::BudgetExceeded,
        Error::EigensolverDegeneracy { .. } | Error::RoundingFailure { .. } => RvStatus::Numerical,
        Error::NoSuchClass => RvStatus::NoSuchClass,
        Error::Io(_) | Error::Json(_) | Error::Cache(_) => RvStatus::Internal,
        _ => RvStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), RvStatus>) -> RvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            RvStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            RvStatus::Internal
        }
    }
}

fn lift<T>(r: repvar::Result<T>) -> Result<T, RvStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn fail(status: RvStatus, msg: &str) -> RvStatus {
    set_error(msg.into());
    status
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, RvStatus> {
    p.as_ref()
        .ok_or_else(|| fail(RvStatus::NullPointer, "null handle"))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), RvStatus> {
    if out.is_null() {
        return Err(fail(RvStatus::NullPointer, "null output pointer"));
    }
    out.write(v);
    Ok(())
}

fn narrow(v: u128) -> Result<u64, RvStatus> {
    u64::try_from(v).map_err(|_| fail(RvStatus::Overflow, &format!("{v} exceeds uint64_t")))
}

/// Copies the last error of this thread into `buf` (NUL terminated,
/// truncated to `len`) and returns the full message length.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn rv_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Enumerates the group of `n x n` matrices over `F_{p^m}`, refusing
/// groups larger than `max_order`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rv_group_new(
    kind: RvGroupKind,
    n: usize,
    p: u64,
    m: u32,
    max_order: u64,
    out: *mut *mut RvGroup,
) -> RvStatus {
    guard(|| {
        let kind = match kind {
            RvGroupKind::Sl => GroupKind::SL,
            RvGroupKind::Gl => GroupKind::GL,
        };
        let field = lift(field_make(p, m))?;
        let g = lift(group_build_with_budget(kind, n, &field, max_order))?;
        let h = Box::new(RvGroup { inner: Arc::new(g) });
        write(out, Box::into_raw(h))
    })
}

/// # Safety
/// `group` must come from `rv_group_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rv_group_free(group: *mut RvGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rv_group_order(group: *const RvGroup, out: *mut u64) -> RvStatus {
    guard(|| write(out, deref(group)?.inner.order() as u64))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rv_group_class_count(group: *const RvGroup, out: *mut usize) -> RvStatus {
    guard(|| write(out, deref(group)?.inner.class_count()))
}

/// Size of conjugacy class `class`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rv_group_class_size(
    group: *const RvGroup,
    class: usize,
    out: *mut u64,
) -> RvStatus {
    guard(|| {
        let g = &deref(group)?.inner;
        let c = g
            .classes()
            .get(class)
            .ok_or_else(|| fail(RvStatus::NoSuchClass, "class index out of range"))?;
        write(out, c.size)
    })
}

/// Index of the identity class.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rv_group_identity_class(
    group: *const RvGroup,
    out: *mut usize,
) -> RvStatus {
    guard(|| write(out, deref(group)?.inner.identity_class()))
}

/// Computes and certifies the character table; the table keeps the group
/// alive on its own.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rv_table_new(
    group: *const RvGroup,
    seed: u64,
    out: *mut *mut RvTable,
) -> RvStatus {
    guard(|| {
        let g = deref(group)?.inner.clone();
        let t = lift(character_table(g, seed))?;
        write(out, Box::into_raw(Box::new(RvTable { inner: t })))
    })
}

/// # Safety
/// `table` must come from `rv_table_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rv_table_free(table: *mut RvTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

fn check_index(i: usize, k: usize, what: &str) -> Result<(), RvStatus> {
    if i < k {
        Ok(())
    } else {
        Err(fail(
            RvStatus::NoSuchClass,
            &format!("{what} index {i} out of range"),
        ))
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rv_table_degree(
    table: *const RvTable,
    chi: usize,
    out: *mut u64,
) -> RvStatus {
    guard(|| {
        let t = &deref(table)?.inner;
        check_index(chi, t.class_count(), "character")?;
        write(out, t.degree(chi))
    })
}

/// Value of character `chi` on class `class` as real and imaginary parts.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rv_table_value(
    table: *const RvTable,
    chi: usize,
    class: usize,
    re: *mut f64,
    im: *mut f64,
) -> RvStatus {
    guard(|| {
        let t = &deref(table)?.inner;
        check_index(chi, t.class_count(), "character")?;
        check_index(class, t.class_count(), "class")?;
        let z = t.value(chi, class);
        write(re, z.re)?;
        write(im, z.im)
    })
}

/// Pairs `(x, y)` with `[x, y]` equal to a fixed element of `class`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rv_commutator_count(
    table: *const RvTable,
    class: usize,
    out: *mut u64,
) -> RvStatus {
    guard(|| {
        let t = &deref(table)?.inner;
        write(out, narrow(lift(commutator_count(t, class))?)?)
    })
}

/// Homomorphisms from the genus-`genus` surface group.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rv_surface_count(
    table: *const RvTable,
    genus: usize,
    out: *mut u64,
) -> RvStatus {
    guard(|| {
        let t = &deref(table)?.inner;
        write(out, narrow(lift(surface_hom_count(t, genus))?)?)
    })
}

/// Tuples with `x_1^2 ... x_m^2` equal to a fixed element of `class`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rv_squares_count(
    table: *const RvTable,
    m: usize,
    class: usize,
    out: *mut u64,
) -> RvStatus {
    guard(|| {
        let t = &deref(table)?.inner;
        write(out, narrow(lift(fs_squares_count(t, m, class))?)?)
    })
}

/// Quadruples from four classes whose product is the identity.
///
/// # Safety
/// `classes` must point to four indices; other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rv_quad_count(
    table: *const RvTable,
    classes: *const usize,
    out: *mut u64,
) -> RvStatus {
    guard(|| {
        let t = &deref(table)?.inner;
        if classes.is_null() {
            return Err(fail(RvStatus::NullPointer, "null class array"));
        }
        let cs = [*classes, *classes.add(1), *classes.add(2), *classes.add(3)];
        write(out, narrow(lift(quad_class_count(t, cs))?)?)
    })
}

/// Number of `w`-dimensional subspaces of `F_q^a`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rv_gaussian_binomial(a: u64, w: u64, q: u64, out: *mut u64) -> RvStatus {
    guard(|| {
        write(
            out,
            narrow(lift(repvar::charbound::gaussian_binomial(a, w, q))?)?,
        )
    })
}

/// Size of `B_k` over `F_l`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rv_torsion_bk_count(l: u64, k: usize, out: *mut u64) -> RvStatus {
    guard(|| write(out, lift(repvar::torsion::b_k(l, k))?.len() as u64))
}

/// Size of `A_n` over `F_l`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rv_torsion_an_count(l: u64, n: u64, out: *mut u64) -> RvStatus {
    guard(|| write(out, lift(repvar::torsion::a_n(l, n))?.len() as u64))
}
