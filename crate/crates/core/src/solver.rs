//! Meet-in-the-middle solver for the group-action discrete logarithm.
//!
//! Given a right action of `S_n` on states and a split `AB ⊆ S_n`, a solution
//! `g = ab` of `r^g = s` shows up as a collision `r^a = s^{b⁻¹}`. One side is
//! materialized in a [`CollisionTable`]; the other side is streamed.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::count::factorial;
use crate::perm::Permutation;
use crate::splitting::{
    choose_subgroup_params, PermCursor, SideStream, SizeTarget, SplitError, SplitPlan,
};

/// A right action of `S_n` on a set of states.
///
/// Implementations must satisfy `apply(e, s) = s`,
/// `apply(gh, s) = apply(h, apply(g, s))`, and `encode` must be injective on
/// reachable states.
pub trait GroupAction: Sync {
    type State: Clone + Send + Sync;

    fn degree(&self) -> usize;

    fn apply(&self, g: &Permutation, state: &Self::State) -> Self::State;

    fn encode(&self, state: &Self::State) -> Vec<u8>;
}

/// `encode(apply(g, r)) == encode(s)`.
pub fn verify<A: GroupAction>(action: &A, r: &A::State, s: &A::State, g: &Permutation) -> bool {
    g.degree() == action.degree() && action.encode(&action.apply(g, r)) == action.encode(s)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("plan degree {plan} does not match action degree {action}")]
    DegreeMismatch { plan: usize, action: usize },
    #[error("stored side needs about {estimate} bytes, over the cap of {cap} bytes")]
    MemoryCap { estimate: u64, cap: u64 },
    #[error("stored side of {0} elements cannot be materialized")]
    TooLarge(BigUint),
    #[error("memory budget {m} must satisfy 1 <= m <= sqrt(2 n!) for n = {n}")]
    BudgetOutOfRange { m: u64, n: usize },
    #[error(transparent)]
    Split(#[from] SplitError),
}

/// Stored half of the collision search: encoded state → group element.
/// The first element inserted under a key is kept.
#[derive(Debug, Default)]
pub struct CollisionTable {
    map: HashMap<Box<[u8]>, Permutation>,
    bytes: u64,
}

impl CollisionTable {
    pub fn with_capacity(cap: usize) -> Self {
        Self {
            map: HashMap::with_capacity(cap),
            bytes: 0,
        }
    }

    /// Approximate heap bytes for one entry.
    pub fn entry_bytes(key_len: usize, degree: usize) -> u64 {
        // key box + permutation buffer + Vec header + bucket/control overhead
        (key_len + 16 + degree * std::mem::size_of::<usize>() + 24 + 8) as u64
    }

    /// Returns false (and keeps the old element) if `key` is present.
    pub fn insert(&mut self, key: Vec<u8>, g: Permutation) -> bool {
        use std::collections::hash_map::Entry;
        match self.map.entry(key.into_boxed_slice()) {
            Entry::Occupied(_) => false,
            Entry::Vacant(v) => {
                self.bytes += Self::entry_bytes(v.key().len(), g.degree());
                v.insert(g);
                true
            }
        }
    }

    pub fn get(&self, key: &[u8]) -> Option<&Permutation> {
        self.map.get(key)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn memory_estimate(&self) -> u64 {
        self.bytes
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Outcome of a search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Found(Permutation),
    /// No solution in `S_n` (deterministic plan).
    NoneProved,
    /// No solution in `AB` (randomized plan): evidence only.
    NoneEvidence,
}

/// Machine-readable record of a solver run.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub verdict: Verdict,
    pub stored_side: Side,
    /// Distinct keys in the table.
    pub stored: u64,
    /// Elements of the streamed side examined before exit.
    pub scanned: u64,
    pub table_bytes: u64,
    pub elapsed: Duration,
}

impl SolveReport {
    pub fn witness(&self) -> Option<&Permutation> {
        match &self.verdict {
            Verdict::Found(g) => Some(g),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    /// Abort before building a table estimated above this many bytes.
    pub memory_cap_bytes: Option<u64>,
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub threads: usize,
}

const BATCH: usize = 1024;

/// Solves `r^g = s` over `plan`, storing the smaller side (ties store `B`).
pub fn solve<A: GroupAction>(
    action: &A,
    r: &A::State,
    s: &A::State,
    plan: &SplitPlan,
    opts: &SolveOptions,
) -> Result<SolveReport, SolveError> {
    let side = if plan.size_a() < plan.size_b() {
        Side::A
    } else {
        Side::B
    };
    solve_storing(action, r, s, plan, side, opts)
}

/// Space/time tradeoff: stores a subgroup `H` with `|H|` within `√2` of `m`
/// (for `n >= 7`) and streams its transversal of `n!/|H|` elements.
///
/// `m` may go up to `√(2 n!)`, the largest size the balanced subgroup can
/// reach, so that the balanced choice itself is a valid budget.
pub fn solve_tradeoff<A: GroupAction>(
    action: &A,
    r: &A::State,
    s: &A::State,
    m: u64,
    opts: &SolveOptions,
) -> Result<SolveReport, SolveError> {
    let n = action.degree();
    let m_big = BigUint::from(m);
    if m == 0 || &m_big * &m_big > factorial(n as u64) * 2u32 {
        return Err(SolveError::BudgetOutOfRange { m, n });
    }
    let spec = choose_subgroup_params(n, SizeTarget::Count(m_big))?;
    let plan = SplitPlan::subgroup_transversal(spec)?;
    solve_storing(action, r, s, &plan, Side::B, opts)
}

/// Solves with an explicit choice of stored side.
pub fn solve_storing<A: GroupAction>(
    action: &A,
    r: &A::State,
    s: &A::State,
    plan: &SplitPlan,
    stored_side: Side,
    opts: &SolveOptions,
) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let n = action.degree();
    if plan.n() != n {
        return Err(SolveError::DegreeMismatch {
            plan: plan.n(),
            action: n,
        });
    }
    let stored_size = match stored_side {
        Side::A => plan.size_a(),
        Side::B => plan.size_b(),
    };
    let count = stored_size
        .to_u64()
        .filter(|&c| c <= usize::MAX as u64)
        .ok_or_else(|| SolveError::TooLarge(stored_size.clone()))?;
    if let Some(cap) = opts.memory_cap_bytes {
        let key_len = action.encode(r).len();
        let estimate = count.saturating_mul(CollisionTable::entry_bytes(key_len, n));
        if estimate > cap {
            return Err(SolveError::MemoryCap { estimate, cap });
        }
    }
    let pool = if opts.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .expect("thread pool"),
        )
    } else {
        None
    };

    // Keys for A-side elements are r^a; for B-side elements s^{b⁻¹}.
    let key_a = |a: &Permutation| action.encode(&action.apply(a, r));
    let key_b = |b: &Permutation| action.encode(&action.apply(&b.invert(), s));

    let (mut stored_stream, mut scan_stream) = match stored_side {
        Side::A => (plan.stream_a(), plan.stream_b()),
        Side::B => (plan.stream_b(), plan.stream_a()),
    };

    let mut table = CollisionTable::with_capacity(count as usize);
    let mut batch = Vec::with_capacity(BATCH);
    while fill_batch(&mut stored_stream, &mut batch) {
        let keys = match stored_side {
            Side::A => map_batch(pool.as_ref(), &batch, &key_a),
            Side::B => map_batch(pool.as_ref(), &batch, &key_b),
        };
        for (key, g) in keys.into_iter().zip(batch.drain(..)) {
            table.insert(key, g);
        }
    }

    let mut scanned = 0u64;
    let mut found = None;
    'scan: while fill_batch(&mut scan_stream, &mut batch) {
        let keys = match stored_side {
            Side::A => map_batch(pool.as_ref(), &batch, &key_b),
            Side::B => map_batch(pool.as_ref(), &batch, &key_a),
        };
        for (key, x) in keys.iter().zip(batch.iter()) {
            scanned += 1;
            if let Some(y) = table.get(key) {
                let (a, b) = match stored_side {
                    Side::A => (y, x),
                    Side::B => (x, y),
                };
                let g = a.compose(b).expect("same degree");
                if verify(action, r, s, &g) {
                    found = Some(g);
                    break 'scan;
                }
            }
        }
        batch.clear();
    }

    let verdict = match found {
        Some(g) => Verdict::Found(g),
        None if plan.is_deterministic() => Verdict::NoneProved,
        None => Verdict::NoneEvidence,
    };
    Ok(SolveReport {
        verdict,
        stored_side,
        stored: table.len() as u64,
        scanned,
        table_bytes: table.memory_estimate(),
        elapsed: start.elapsed(),
    })
}

fn fill_batch(stream: &mut SideStream, batch: &mut Vec<Permutation>) -> bool {
    batch.clear();
    while batch.len() < BATCH {
        match stream.advance() {
            Some(p) => batch.push(p.clone()),
            None => break,
        }
    }
    !batch.is_empty()
}

fn map_batch<F>(pool: Option<&rayon::ThreadPool>, batch: &[Permutation], f: &F) -> Vec<Vec<u8>>
where
    F: Fn(&Permutation) -> Vec<u8> + Sync,
{
    match pool {
        Some(pool) => pool.install(|| batch.par_iter().map(f).collect()),
        None => batch.iter().map(f).collect(),
    }
}
