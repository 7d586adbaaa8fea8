//! Working-precision policy shared by every adaptive computation.

use std::sync::atomic::{AtomicU32, Ordering};

/// Initial significand width for enclosures.
pub const START_BITS: u32 = 64;

/// Default upper limit for precision doubling.
pub const DEFAULT_CEILING_BITS: u32 = 1024;

static CEILING: AtomicU32 = AtomicU32::new(DEFAULT_CEILING_BITS);

/// Current precision ceiling in bits.
pub fn ceiling() -> u32 {
    CEILING.load(Ordering::Relaxed)
}

/// Sets the process-wide ceiling; values below [`START_BITS`] are raised to it.
pub fn set_ceiling(bits: u32) {
    CEILING.store(bits.max(START_BITS), Ordering::Relaxed);
}

/// Precision schedule `START_BITS, 2*START_BITS, ...` up to the ceiling.
pub fn schedule() -> impl Iterator<Item = u32> {
    let top = ceiling();
    std::iter::successors(Some(START_BITS), move |&p| (p < top).then(|| (p * 2).min(top)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_doubles_to_ceiling() {
        assert_eq!(schedule().collect::<Vec<_>>(), vec![64, 128, 256, 512, 1024]);
    }
}
