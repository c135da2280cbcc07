//! Concrete actions and reductions built on the solver.

pub mod dlog;
pub mod graph;
pub mod hashed;

use thiserror::Error;

use crate::perm::PermError;
use crate::solver::SolveError;
use crate::splitting::SplitError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AppError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {vertex} is out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{a} does not generate a cyclic group of order {order} mod {modulus}")]
    NotGenerator { a: u64, order: u64, modulus: u64 },
    #[error("{b} is not in the group generated by {a} mod {modulus}")]
    NotInGroup { a: u64, b: u64, modulus: u64 },
    #[error("arrays of length {0} are not supported (1..=33)")]
    ArrayLength(usize),
    #[error("shift search exceeded {0} steps")]
    ShiftSearchExhausted(u64),
    #[error("the action solver found no exponent")]
    ActionSolverFailed,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Resource limits for application-level solves.
#[derive(Debug, Clone, Default)]
pub struct Budget {
    /// Stored-side size `m` for the space/time tradeoff; `None` uses the
    /// subgroup closest to `√n!` and stores the smaller side.
    pub entries: Option<u64>,
    pub memory_cap_bytes: Option<u64>,
    pub threads: usize,
}

impl Budget {
    pub(crate) fn options(&self) -> crate::solver::SolveOptions {
        crate::solver::SolveOptions {
            memory_cap_bytes: self.memory_cap_bytes,
            threads: self.threads,
        }
    }

    pub(crate) fn run<A: crate::solver::GroupAction>(
        &self,
        action: &A,
        r: &A::State,
        s: &A::State,
    ) -> Result<crate::solver::SolveReport, AppError> {
        let opts = self.options();
        let report = match self.entries {
            Some(m) => crate::solver::solve_tradeoff(action, r, s, m, &opts)?,
            None => {
                let plan = crate::splitting::SplitPlan::balanced(action.degree())?;
                crate::solver::solve(action, r, s, &plan, &opts)?
            }
        };
        Ok(report)
    }
}
