use super::{PermCursor, PlanKind, SplitError, SplitPlan};
use crate::count::{factorial, falling_factorial, solve_half_factorial};
use crate::lex::{KTuples, LexStream};
use crate::perm::Permutation;

/// Bidirectional split at `k = n - round(x)`, `x! = √n!`, clamped to `1..=n`.
///
/// `|A| = (n)_k` and `|B| = (n-k)!`.
pub fn bidirectional_split(n: usize) -> Result<SplitPlan, SplitError> {
    if n < 2 {
        return Err(SplitError::DegreeOutOfRange {
            n,
            min: 2,
            max: usize::MAX,
        });
    }
    let x = solve_half_factorial(n as u64)?;
    let kept = (x.round() as usize).min(n - 1);
    let k = n - kept;
    bidirectional_at(n, k)
}

/// Bidirectional split at an explicit `k`.
pub(crate) fn bidirectional_at(n: usize, k: usize) -> Result<SplitPlan, SplitError> {
    if n == 0 || k == 0 || k > n {
        return Err(SplitError::InvalidSpec { n, k, ell: 0 });
    }
    Ok(SplitPlan::from_parts(
        n,
        PlanKind::Bidirectional { k },
        falling_factorial(n as u64, k as u64),
        factorial((n - k) as u64),
    ))
}

/// The `A` side of the bidirectional split.
///
/// For each injective `k`-tuple `(p_1, …, p_k)` of positions (lexicographic),
/// yields the permutation whose base image holds value `i` at position
/// `p_i` and the values `k+1..n` ascending elsewhere. These are the
/// inverses of the prefix-extended permutations that send `1..k` to the
/// tuple, and they form a left transversal of the pointwise stabilizer of
/// `1..k`.
#[derive(Debug, Clone)]
pub struct PlacementCursor {
    k: usize,
    tuples: KTuples,
    current: Permutation,
}

impl PlacementCursor {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            k,
            tuples: KTuples::new(n, k),
            current: Permutation::identity(n).expect("n >= 1"),
        }
    }
}

impl PermCursor for PlacementCursor {
    fn advance(&mut self) -> Option<&Permutation> {
        let tuple = self.tuples.advance()?;
        let k = self.k;
        let images = self.current.images_mut();
        const EMPTY: usize = usize::MAX;
        images.iter_mut().for_each(|v| *v = EMPTY);
        for (value, &pos) in tuple.iter().enumerate() {
            images[pos] = value;
        }
        for (next, v) in (k..).zip(images.iter_mut().filter(|v| **v == EMPTY)) {
            *v = next;
        }
        Some(&self.current)
    }

    fn state_words(&self) -> usize {
        self.current.degree() + self.tuples.state_len() + 1
    }
}

impl Iterator for PlacementCursor {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        self.advance().cloned()
    }
}

/// The `B` side: identity on `1..k`, every arrangement of `k+1..n` after it.
#[derive(Debug, Clone)]
pub struct SuffixCursor {
    k: usize,
    suffixes: LexStream,
    current: Permutation,
}

impl SuffixCursor {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            k,
            suffixes: LexStream::range(k, n),
            current: Permutation::identity(n).expect("n >= 1"),
        }
    }
}

impl PermCursor for SuffixCursor {
    fn advance(&mut self) -> Option<&Permutation> {
        let suffix = self.suffixes.advance()?;
        self.current.images_mut()[self.k..].copy_from_slice(suffix);
        Some(&self.current)
    }

    fn state_words(&self) -> usize {
        self.current.degree() + self.suffixes.ground_len() + 1
    }
}

impl Iterator for SuffixCursor {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        self.advance().cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use std::collections::HashSet;

    #[test]
    fn n10_split_sizes() {
        let plan = bidirectional_split(10).unwrap();
        assert_eq!(plan.kind(), &PlanKind::Bidirectional { k: 3 });
        assert_eq!(plan.size_a(), &BigUint::from(720u32));
        assert_eq!(plan.size_b(), &BigUint::from(5040u32));
    }

    #[test]
    fn n2_split_sizes() {
        let plan = bidirectional_split(2).unwrap();
        assert_eq!(plan.kind(), &PlanKind::Bidirectional { k: 1 });
        assert_eq!(plan.size_a(), &BigUint::from(2u32));
        assert_eq!(plan.size_b(), &BigUint::from(1u32));
        assert!(bidirectional_split(1).is_err());
    }

    #[test]
    fn sizes_multiply_to_n_factorial() {
        for n in 2..=30 {
            let plan = bidirectional_split(n).unwrap();
            assert_eq!(plan.size_a() * plan.size_b(), factorial(n as u64));
        }
    }

    #[test]
    fn products_cover_sn_exactly_once() {
        for n in 1..=6usize {
            for k in 1..=n {
                let a: Vec<_> = PlacementCursor::new(n, k).collect();
                let b: Vec<_> = SuffixCursor::new(n, k).collect();
                let mut seen = HashSet::new();
                for x in &a {
                    for y in &b {
                        assert!(seen.insert(x.compose(y).unwrap()), "n={n} k={k}");
                    }
                }
                assert_eq!(BigUint::from(seen.len()), factorial(n as u64));
            }
        }
    }

    #[test]
    fn placement_is_inverse_of_prefix_extension() {
        let a: Vec<_> = PlacementCursor::new(4, 2).collect();
        assert_eq!(a.len(), 12);
        for x in &a {
            let c = x.invert();
            // c sends 1..k to the tuple and the rest ascending.
            let tail: Vec<_> = c.images()[2..].to_vec();
            assert!(tail.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
