//! Process-wide enumeration caps and worker count.
//!
//! Every exhaustive routine consults these before doing work so that a
//! mistaken input fails fast instead of running for hours. The CLI
//! overrides them from its global flags.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

pub const DEFAULT_MAX_RING_ORDER: usize = 64;
pub const DEFAULT_MAX_CODEWORDS: u64 = 1 << 22;
pub const DEFAULT_MAX_AMBIENT: u64 = 1 << 22;
pub const DEFAULT_MAX_SEARCH: u64 = 1 << 24;

/// Hard ceiling on ring order: elements are stored as one byte.
pub const HARD_MAX_RING_ORDER: usize = 256;

static MAX_RING_ORDER: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_RING_ORDER);
static MAX_CODEWORDS: AtomicU64 = AtomicU64::new(DEFAULT_MAX_CODEWORDS);
static MAX_AMBIENT: AtomicU64 = AtomicU64::new(DEFAULT_MAX_AMBIENT);
static MAX_SEARCH: AtomicU64 = AtomicU64::new(DEFAULT_MAX_SEARCH);
static WORKERS: AtomicUsize = AtomicUsize::new(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_ring_order: usize,
    /// Largest code that may be enumerated.
    pub max_codewords: u64,
    /// Largest ambient space |R|^n scanned when computing a dual.
    pub max_ambient: u64,
    /// Largest matrix space scanned by the exhaustive search.
    pub max_search: u64,
    pub workers: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ring_order: DEFAULT_MAX_RING_ORDER,
            max_codewords: DEFAULT_MAX_CODEWORDS,
            max_ambient: DEFAULT_MAX_AMBIENT,
            max_search: DEFAULT_MAX_SEARCH,
            workers: 1,
        }
    }
}

impl Limits {
    pub fn current() -> Limits {
        Limits {
            max_ring_order: MAX_RING_ORDER.load(Ordering::Relaxed),
            max_codewords: MAX_CODEWORDS.load(Ordering::Relaxed),
            max_ambient: MAX_AMBIENT.load(Ordering::Relaxed),
            max_search: MAX_SEARCH.load(Ordering::Relaxed),
            workers: WORKERS.load(Ordering::Relaxed),
        }
    }

    /// Makes these limits the process-wide setting.
    pub fn install(self) {
        MAX_RING_ORDER.store(
            self.max_ring_order.min(HARD_MAX_RING_ORDER),
            Ordering::Relaxed,
        );
        MAX_CODEWORDS.store(self.max_codewords, Ordering::Relaxed);
        MAX_AMBIENT.store(self.max_ambient, Ordering::Relaxed);
        MAX_SEARCH.store(self.max_search, Ordering::Relaxed);
        WORKERS.store(self.workers.max(1), Ordering::Relaxed);
    }
}
