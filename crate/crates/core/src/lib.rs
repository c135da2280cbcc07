//! Baby-step giant-step for the symmetric group.
//!
//! Builds splitting sets `A, B ⊆ S_n` with `AB = S_n` and both sides close to
//! `√n!`, streams them in `O(n)` working memory, and uses them to solve the
//! group-action discrete logarithm `r^g = s` by meet-in-the-middle.
//!
//! Composition convention: `g.compose(&h)` applies `g` first (`i^(gh) = (i^g)^h`).
//! Actions are right actions: `apply(gh, s) = apply(h, apply(g, s))`.

pub mod apps;
pub mod count;
pub mod lex;
pub mod perm;
pub mod solver;
pub mod splitting;

pub use apps::{AppError, Budget};
pub use count::{
    factorial, log_factorial, solve_half_factorial, CountError, ExactCount, LogMagnitude,
};
pub use lex::LexStream;
pub use perm::{PermError, Permutation};
pub use solver::{
    solve, solve_tradeoff, verify, GroupAction, SolveError, SolveOptions, SolveReport, Verdict,
};
pub use splitting::{PermCursor, SplitError, SplitPlan, SubgroupSpec};
