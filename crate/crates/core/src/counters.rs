//! Thread-local operation counters.
//!
//! The real-time mix phase must run without any public-key operations; these
//! counters let tests assert exact scalar-multiplication and point-addition
//! counts across a code region. Thread-local so parallel tests do not bleed
//! into each other.

use std::cell::Cell;

thread_local! {
    static SCALAR_MULS: Cell<u64> = const { Cell::new(0) };
    static POINT_ADDS: Cell<u64> = const { Cell::new(0) };
}

pub(crate) fn record_scalar_mul() {
    SCALAR_MULS.with(|c| c.set(c.get() + 1));
}

pub(crate) fn record_point_add() {
    POINT_ADDS.with(|c| c.set(c.get() + 1));
}

/// Total scalar multiplications performed on the current thread.
pub fn scalar_mul_count() -> u64 {
    SCALAR_MULS.with(Cell::get)
}

/// Total affine point additions performed on the current thread.
pub fn point_add_count() -> u64 {
    POINT_ADDS.with(Cell::get)
}

/// Snapshot of both counters, for delta assertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpSnapshot {
    pub scalar_muls: u64,
    pub point_adds: u64,
}

pub fn snapshot() -> OpSnapshot {
    OpSnapshot {
        scalar_muls: scalar_mul_count(),
        point_adds: point_add_count(),
    }
}

/// Scalar multiplications since `before`.
pub fn scalar_muls_since(before: &OpSnapshot) -> u64 {
    scalar_mul_count() - before.scalar_muls
}
