//! Read tracing: records which input positions a computation consulted.
//!
//! The index recorded depends on what is traced. Infinite words record the
//! letter index, p-adic numbers record the digit exponent `n` of `p^n`, and
//! decimals record the depth `-n` of the digit at `10^n`. In every case a
//! larger index means the computation looked further into the input.

use std::sync::atomic::{AtomicI64, AtomicU64, Ordering};
use std::sync::Arc;

/// Shared accumulator of read positions.
///
/// Clones share the same counters. A handle belongs to one computation at a
/// time; give concurrent computations separate handles.
#[derive(Clone, Debug, Default)]
pub struct ReadTrace {
    inner: Arc<Counters>,
}

#[derive(Debug)]
struct Counters {
    max: AtomicI64,
    total: AtomicU64,
}

impl Default for Counters {
    fn default() -> Self {
        Counters {
            max: AtomicI64::new(i64::MIN),
            total: AtomicU64::new(0),
        }
    }
}

impl ReadTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&self, index: i64) {
        self.inner.max.fetch_max(index, Ordering::Relaxed);
        self.inner.total.fetch_add(1, Ordering::Relaxed);
    }

    /// Largest index read so far, `None` before the first read.
    pub fn max_index(&self) -> Option<i64> {
        match self.inner.max.load(Ordering::Relaxed) {
            i64::MIN => None,
            m => Some(m),
        }
    }

    pub fn total_reads(&self) -> u64 {
        self.inner.total.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.inner.max.store(i64::MIN, Ordering::Relaxed);
        self.inner.total.store(0, Ordering::Relaxed);
    }
}
