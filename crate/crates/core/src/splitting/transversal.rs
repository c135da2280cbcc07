use num_bigint::BigUint;

use super::{PermCursor, SplitError, SubgroupSpec, MAX_STREAM_DEGREE};
use crate::count::{binomial, factorial, ExactCount};
use crate::lex::LexStream;
use crate::perm::{PermError, Permutation};

/// `|S_n : H| = (ℓ-1)! (n-k-ℓ)! C(k+ℓ, ℓ) C(n, n-k-ℓ)`, with the step-2
/// factor taken as 1 when `ℓ = 0`.
pub fn transversal_index(spec: &SubgroupSpec) -> ExactCount {
    let (n, k, ell) = (spec.n() as u64, spec.k() as u64, spec.ell() as u64);
    let rest = n - k - ell;
    let step2 = if ell == 0 {
        BigUint::from(1u32)
    } else {
        factorial(ell - 1)
    };
    step2 * factorial(rest) * binomial(k + ell, ell) * binomial(n, rest)
}

/// Coset-minimality test for the left coset `gH`.
///
/// With the right action, `gH` relabels the values of `g`'s base image by
/// elements of `H`, so `g` is the least element of its coset exactly when
/// `1, …, k` occur in increasing order and `k+1` occurs before every one of
/// `k+2, …, k+ℓ`.
pub fn is_coset_minimal(g: &Permutation, spec: &SubgroupSpec) -> Result<bool, PermError> {
    check_degree(g, spec)?;
    let (k, ell) = (spec.k(), spec.ell());
    let mut next_small = 0;
    let mut cycle_head_seen = ell == 0;
    for &v in g.images() {
        if v < k {
            if v != next_small {
                return Ok(false);
            }
            next_small += 1;
        } else if v < k + ell && !cycle_head_seen {
            if v != k {
                return Ok(false);
            }
            cycle_head_seen = true;
        }
    }
    Ok(true)
}

/// The same test carried out on the stabilizer chain: position by position,
/// the image must be least in its orbit under the pointwise stabilizer of the
/// images already fixed.
///
/// Orbits of `H`: `{1..k}` stays a single orbit under repeated stabilization;
/// `{k+1..k+ℓ}` is one orbit until any of its points is fixed, after which
/// its points are singletons; the remaining points are singletons.
pub fn is_coset_minimal_by_orbits(g: &Permutation, spec: &SubgroupSpec) -> Result<bool, PermError> {
    check_degree(g, spec)?;
    let (k, ell) = (spec.k(), spec.ell());
    let mut fixed_small = vec![false; k];
    let mut cycle_intact = ell >= 2;
    for &alpha in g.images() {
        let minimal = if alpha < k {
            // Least unfixed point of the symmetric orbit.
            let least = fixed_small.iter().position(|f| !f).expect("alpha unfixed");
            fixed_small[alpha] = true;
            alpha == least
        } else if alpha < k + ell {
            let ok = !cycle_intact || alpha == k;
            cycle_intact = false;
            ok
        } else {
            true
        };
        if !minimal {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_degree(g: &Permutation, spec: &SubgroupSpec) -> Result<(), PermError> {
    if g.degree() != spec.n() {
        return Err(PermError::DegreeMismatch {
            left: g.degree(),
            right: spec.n(),
        });
    }
    Ok(())
}

/// Smallest `w`-bit mask with `c` bits set.
fn first_mask(c: usize) -> u128 {
    if c == 0 {
        0
    } else {
        (1u128 << c) - 1
    }
}

/// Next mask with the same popcount in increasing numeric order, if it
/// still fits in `w` bits.
fn next_mask(mask: u128, w: usize) -> Option<u128> {
    if mask == 0 {
        return None;
    }
    let t = mask | (mask - 1);
    let next = (t + 1) | (((!t & (t + 1)) - 1) >> (mask.trailing_zeros() + 1));
    (next >> w == 0).then_some(next)
}

/// Streams a left transversal of `H` in `S_n` as coset minima.
///
/// Order: step-2 arrangements (`k+1` followed by every arrangement of
/// `k+2..k+ℓ`, lexicographic) outermost, then arrangements of
/// `k+ℓ+1..n`, then the positions of those free points as an ascending
/// `n`-bit mask, then the positions of the cycle points among the remaining
/// slots as an ascending `(k+ℓ)`-bit mask. The most significant mask bit is
/// the first position, so free points start at the end of the base image.
#[derive(Debug, Clone)]
pub struct TransversalCursor {
    k: usize,
    ell: usize,
    n: usize,
    /// Arrangements of `k+2..k+ℓ` (0-based `k+1..k+ℓ`).
    cycle_tail: LexStream,
    free: LexStream,
    free_mask: u128,
    cycle_mask: u128,
    step2_left: Option<u128>,
    current: Permutation,
    live: bool,
    done: bool,
}

impl TransversalCursor {
    pub fn new(spec: &SubgroupSpec) -> Result<Self, SplitError> {
        Self::build(spec, 0, None)
    }

    /// Only the step-2 arrangements with lexicographic rank in
    /// `start..end`. Slices for disjoint ranges are disjoint, and ranges
    /// covering `0..step2_count` jointly give the whole transversal.
    pub fn with_step2_range(
        spec: &SubgroupSpec,
        start: u128,
        end: u128,
    ) -> Result<Self, SplitError> {
        if start > end {
            return Err(SplitError::BadRange { start, end });
        }
        Self::build(spec, start, Some(end - start))
    }

    /// Number of step-2 arrangements, `(ℓ-1)!` (1 when `ℓ = 0`).
    pub fn step2_count(spec: &SubgroupSpec) -> ExactCount {
        match spec.ell() {
            0 => BigUint::from(1u32),
            ell => factorial(ell as u64 - 1),
        }
    }

    fn build(spec: &SubgroupSpec, start: u128, len: Option<u128>) -> Result<Self, SplitError> {
        let n = spec.n();
        if n > MAX_STREAM_DEGREE {
            return Err(SplitError::DegreeOutOfRange {
                n,
                min: 1,
                max: MAX_STREAM_DEGREE,
            });
        }
        let (k, ell) = (spec.k(), spec.ell());
        let tail_lo = if ell == 0 { k } else { k + 1 };
        let mut cycle_tail = LexStream::range(tail_lo, k + ell);
        cycle_tail.seek(start);
        Ok(Self {
            k,
            ell,
            n,
            cycle_tail,
            free: LexStream::range(k + ell, n),
            free_mask: 0,
            cycle_mask: 0,
            step2_left: len,
            current: Permutation::identity(n).expect("n >= 1"),
            live: false,
            done: false,
        })
    }

    fn next_step2(&mut self) -> bool {
        if let Some(left) = self.step2_left.as_mut() {
            if *left == 0 {
                return false;
            }
            *left -= 1;
        }
        self.cycle_tail.advance().is_some()
    }

    fn write_current(&mut self) {
        let free = self.free.current().expect("live");
        let tail = self.cycle_tail.current().expect("live");
        let (k, ell) = (self.k, self.ell);
        let images = self.current.images_mut();
        let (n, slots) = (self.n, k + ell);
        let (mut fi, mut ci, mut si, mut slot) = (0, 0, 0, 0);
        for (pos, img) in images.iter_mut().enumerate() {
            if self.free_mask >> (n - 1 - pos) & 1 == 1 {
                *img = free[fi];
                fi += 1;
            } else {
                if self.cycle_mask >> (slots - 1 - slot) & 1 == 1 {
                    *img = if ci == 0 { k } else { tail[ci - 1] };
                    ci += 1;
                } else {
                    *img = si;
                    si += 1;
                }
                slot += 1;
            }
        }
        debug_assert!(ell == 0 || ci == ell);
    }
}

impl PermCursor for TransversalCursor {
    fn advance(&mut self) -> Option<&Permutation> {
        if self.done {
            return None;
        }
        let free_len = self.n - self.k - self.ell;
        if !self.live {
            if !self.next_step2() {
                self.done = true;
                return None;
            }
            self.free.advance();
            self.free_mask = first_mask(free_len);
            self.cycle_mask = first_mask(self.ell);
            self.live = true;
        } else if let Some(m) = next_mask(self.cycle_mask, self.k + self.ell) {
            self.cycle_mask = m;
        } else if let Some(m) = next_mask(self.free_mask, self.n) {
            self.free_mask = m;
            self.cycle_mask = first_mask(self.ell);
        } else {
            self.free_mask = first_mask(free_len);
            self.cycle_mask = first_mask(self.ell);
            if self.free.advance().is_none() {
                if !self.next_step2() {
                    self.done = true;
                    return None;
                }
                self.free.reset();
                self.free.advance();
            }
        }
        self.write_current();
        Some(&self.current)
    }

    fn state_words(&self) -> usize {
        // current + the two arrangement buffers + two 128-bit masks + scalars
        self.current.degree() + self.cycle_tail.ground_len() + self.free.ground_len() + 4 + 8
    }
}

impl Iterator for TransversalCursor {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        self.advance().cloned()
    }
}
