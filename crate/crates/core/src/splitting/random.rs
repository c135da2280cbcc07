use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{PlanKind, SplitError, SplitPlan};
use crate::count::factorial;
use crate::perm::Permutation;

/// Lower bound `1 - e^{-k²/m}` on the chance that a fixed group element
/// lies in `AB` when `|A| = |B| = k` are drawn without replacement from a
/// group of order `m`.
pub fn coverage_lower_bound(k: f64, m: f64) -> f64 {
    1.0 - (-k * k / m).exp()
}

/// `count` distinct uniform permutations of degree `n`: draw with
/// replacement, redraw on duplicates.
pub fn sample_distinct(
    n: usize,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Permutation>, SplitError> {
    if n == 0 {
        return Err(SplitError::DegreeOutOfRange {
            n,
            min: 1,
            max: usize::MAX,
        });
    }
    if BigUint::from(count) > factorial(n as u64) {
        return Err(SplitError::SampleTooLarge { n, count });
    }
    let mut seen = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    let mut images: Vec<usize> = (0..n).collect();
    while out.len() < count {
        images.shuffle(rng);
        if seen.insert(images.clone()) {
            out.push(Permutation::from_images_unchecked(images.clone()));
        }
    }
    Ok(out)
}

/// Randomized plan: `A` and `B` are independent samples of `count`
/// distinct permutations each, from a ChaCha8 stream seeded with `seed`.
pub fn random_split(n: usize, count: usize, seed: u64) -> Result<SplitPlan, SplitError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = sample_distinct(n, count, &mut rng)?;
    let b = sample_distinct(n, count, &mut rng)?;
    let size = BigUint::from(count);
    Ok(
        SplitPlan::from_parts(n, PlanKind::Randomized { count, seed }, size.clone(), size)
            .with_sets(Arc::from(a), Arc::from(b)),
    )
}
