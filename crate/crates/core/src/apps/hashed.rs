//! The hashed-array puzzle: recover the permutation between two orderings of
//! indistinguishable objects while only ever looking at an injective hash
//! of each ordering.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AppError, Budget};
use crate::perm::Permutation;
use crate::solver::{GroupAction, SolveReport};

/// Longest array whose arrangement ranks fit below `2^127`.
pub const MAX_ARRAY_LEN: usize = 33;
const MASK_127: u128 = (1u128 << 127) - 1;

/// An ordered array of objects. Object identities are private; outside
/// this module an arrangement is an opaque handle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    objects: Vec<u64>,
}

impl Arrangement {
    /// `n` objects with random distinct hidden identities, in random order.
    pub fn scrambled(n: usize, seed: u64) -> Result<Self, AppError> {
        check_len(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut objects: Vec<u64> = Vec::with_capacity(n);
        while objects.len() < n {
            let id = rng.gen::<u64>();
            if !objects.contains(&id) {
                objects.push(id);
            }
        }
        objects.shuffle(&mut rng);
        Ok(Self { objects })
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Moves the object at position `i` to position `i^g`.
    pub fn permuted(&self, g: &Permutation) -> Self {
        let mut objects = vec![0; self.objects.len()];
        for (i, &o) in self.objects.iter().enumerate() {
            objects[g.apply(i)] = o;
        }
        Self { objects }
    }

    /// Renames every object through `rename`, which must be injective.
    pub fn relabeled(&self, rename: impl Fn(u64) -> u64) -> Self {
        Self {
            objects: self.objects.iter().map(|&o| rename(o)).collect(),
        }
    }

    /// Lexicographic rank of the arrangement among all orderings of the same
    /// objects (Lehmer code).
    fn rank(&self) -> u128 {
        let n = self.objects.len();
        let mut rank: u128 = 0;
        for i in 0..n {
            let smaller_after = self.objects[i + 1..]
                .iter()
                .filter(|&&o| o < self.objects[i])
                .count() as u128;
            rank = rank * (n - i) as u128 + smaller_after;
        }
        rank
    }
}

fn check_len(n: usize) -> Result<(), AppError> {
    if n == 0 || n > MAX_ARRAY_LEN {
        return Err(AppError::ArrayLength(n));
    }
    Ok(())
}

/// Keyed injective hash from arrangements to positive integers.
///
/// The rank is pushed through an affine bijection of `Z / 2^127` (odd
/// multiplier, xor mask) and shifted by one, so distinct arrangements of
/// the same objects never collide.
#[derive(Debug, Clone)]
pub struct HashedArrayOracle {
    n: usize,
    multiplier: u128,
    mask: u128,
}

impl HashedArrayOracle {
    pub fn new(n: usize, key: u64) -> Result<Self, AppError> {
        check_len(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(key);
        Ok(Self {
            n,
            multiplier: (rng.gen::<u128>() & MASK_127) | 1,
            mask: rng.gen::<u128>() & MASK_127,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hash(&self, arr: &Arrangement) -> u128 {
        let mixed = (arr.rank().wrapping_mul(self.multiplier) & MASK_127) ^ self.mask;
        mixed + 1
    }
}

/// `S_n` permuting positions; states are seen only through the oracle.
#[derive(Debug, Clone)]
pub struct HashedArrayAction<'a> {
    oracle: &'a HashedArrayOracle,
}

impl<'a> HashedArrayAction<'a> {
    pub fn new(oracle: &'a HashedArrayOracle) -> Self {
        Self { oracle }
    }
}

impl GroupAction for HashedArrayAction<'_> {
    type State = Arrangement;

    fn degree(&self) -> usize {
        self.oracle.n
    }

    fn apply(&self, g: &Permutation, state: &Arrangement) -> Arrangement {
        state.permuted(g)
    }

    fn encode(&self, state: &Arrangement) -> Vec<u8> {
        self.oracle.hash(state).to_be_bytes().to_vec()
    }
}

/// Finds `g` with `r^g = s` using only oracle hashes.
pub fn hashed_array_solve(
    oracle: &HashedArrayOracle,
    r: &Arrangement,
    s: &Arrangement,
    budget: &Budget,
) -> Result<SolveReport, AppError> {
    for arr in [r, s] {
        if arr.len() != oracle.n {
            return Err(AppError::DimensionMismatch {
                left: arr.len(),
                right: oracle.n,
            });
        }
    }
    budget.run(&HashedArrayAction::new(oracle), r, s)
}
