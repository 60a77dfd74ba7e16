use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Seeded random partition of `items`. The first part receives
/// `round(fraction · n)` items, clamped so both parts are nonempty.
pub fn split<T: Clone>(items: &[T], fraction: f64, seed: u64) -> Result<(Vec<T>, Vec<T>)> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "split fraction must lie in (0, 1), got {fraction}"
        )));
    }
    let n = items.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!("cannot split {n} items")));
    }
    let mut shuffled = items.to_vec();
    shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let first = ((fraction * n as f64).round() as usize).clamp(1, n - 1);
    let second = shuffled.split_off(first);
    Ok((shuffled, second))
}
