//! Process-wide caps on element enumeration and coset-space size.
//!
//! Defaults are 10⁷ elements and 10⁶ vertices. `SYMCOV_MAX_ELEMENTS`
//! overrides the element cap when first read.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Once;

pub const DEFAULT_MAX_ELEMENTS: u64 = 10_000_000;
pub const DEFAULT_MAX_VERTICES: u64 = 1_000_000;
pub const ENV_MAX_ELEMENTS: &str = "SYMCOV_MAX_ELEMENTS";

static MAX_ELEMENTS: AtomicU64 = AtomicU64::new(DEFAULT_MAX_ELEMENTS);
static MAX_VERTICES: AtomicU64 = AtomicU64::new(DEFAULT_MAX_VERTICES);
static ENV_INIT: Once = Once::new();

fn init_from_env() {
    ENV_INIT.call_once(|| {
        if let Some(v) = std::env::var(ENV_MAX_ELEMENTS)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
        {
            MAX_ELEMENTS.store(v, Ordering::Relaxed);
        }
    });
}

pub fn max_elements() -> u64 {
    init_from_env();
    MAX_ELEMENTS.load(Ordering::Relaxed)
}

pub fn max_vertices() -> u64 {
    MAX_VERTICES.load(Ordering::Relaxed)
}

pub fn set_max_elements(cap: u64) {
    init_from_env();
    MAX_ELEMENTS.store(cap, Ordering::Relaxed);
}

pub fn set_max_vertices(cap: u64) {
    MAX_VERTICES.store(cap, Ordering::Relaxed);
}
