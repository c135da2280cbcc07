//! Splitting sets `A`, `B ⊆ S_n` with `AB = S_n`.
//!
//! Three families are provided:
//!
//! * subgroup + transversal: `B = H = ⟨S_k, (k+1 … k+ℓ)⟩` and `A` its
//!   left transversal of coset minima; a perfect splitting (every `g` is
//!   uniquely `ab`) with both sides within `√2` of `√n!` for `n >= 7`;
//! * bidirectional: `A` places the values `1..k` at every injective
//!   `k`-tuple of positions, `B` fixes `1..k` and permutes the rest;
//! * randomized: `A` and `B` are independent uniform samples.
//!
//! Deterministic families are exposed as streaming cursors whose working
//! state is `O(n)` words regardless of the set size.

mod bidirectional;
mod plan;
mod random;
mod subgroup;
mod transversal;

pub use bidirectional::{bidirectional_split, PlacementCursor, SuffixCursor};
pub use plan::{fmt_significant, PlanKind, SideStream, SplitPlan};
pub use random::{coverage_lower_bound, random_split, sample_distinct};
pub use subgroup::{
    choose_subgroup_params, subgroup_generators, SizeTarget, SubgroupCursor, SubgroupSpec,
};
pub use transversal::{
    is_coset_minimal, is_coset_minimal_by_orbits, transversal_index, TransversalCursor,
};

use thiserror::Error;

use crate::count::CountError;
use crate::perm::{PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplitError {
    #[error("invalid subgroup parameters n={n}, k={k}, ell={ell}")]
    InvalidSpec { n: usize, k: usize, ell: usize },
    #[error("size target must lie in [1, n!] for n = {n}")]
    TargetOutOfRange { n: usize },
    #[error("sample count {count} exceeds n! for n = {n}")]
    SampleTooLarge { n: usize, count: usize },
    #[error("degree {n} is outside the supported range {min}..={max}")]
    DegreeOutOfRange { n: usize, min: usize, max: usize },
    #[error("step-2 range {start}..{end} is invalid")]
    BadRange { start: u128, end: u128 },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Count(#[from] CountError),
}

/// Largest degree the mask-based enumerators handle.
pub const MAX_STREAM_DEGREE: usize = 64;
/// Largest degree [`collect`] will materialize.
pub const MAX_COLLECT_DEGREE: usize = 10;

/// A single-consumer cursor over permutations that reuses one buffer.
pub trait PermCursor {
    fn advance(&mut self) -> Option<&Permutation>;

    /// Working state in machine words.
    fn state_words(&self) -> usize;
}

/// Materializes a cursor; refuses degrees above [`MAX_COLLECT_DEGREE`].
pub fn collect<C: PermCursor>(cursor: &mut C, n: usize) -> Result<Vec<Permutation>, SplitError> {
    if n > MAX_COLLECT_DEGREE {
        return Err(SplitError::DegreeOutOfRange {
            n,
            min: 1,
            max: MAX_COLLECT_DEGREE,
        });
    }
    let mut out = Vec::new();
    while let Some(p) = cursor.advance() {
        out.push(p.clone());
    }
    Ok(out)
}
