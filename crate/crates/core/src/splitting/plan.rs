use std::fmt;
use std::sync::Arc;

use super::{
    choose_subgroup_params, transversal_index, PermCursor, PlacementCursor, SizeTarget, SplitError,
    SubgroupCursor, SubgroupSpec, SuffixCursor, TransversalCursor, MAX_STREAM_DEGREE,
};
use crate::count::{ln_biguint, log_factorial_int, ExactCount};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanKind {
    /// `A` = transversal of `H`, `B = H`.
    SubgroupTransversal(SubgroupSpec),
    /// `A` = placements of `1..k`, `B` = arrangements fixing `1..k`.
    Bidirectional { k: usize },
    /// `A`, `B` = independent seeded samples of `count` elements.
    Randomized { count: usize, seed: u64 },
}

impl PlanKind {
    pub fn name(&self) -> &'static str {
        match self {
            PlanKind::SubgroupTransversal(_) => "subgroup_transversal",
            PlanKind::Bidirectional { .. } => "bidirectional",
            PlanKind::Randomized { .. } => "randomized",
        }
    }
}

type SampledSides = (Arc<[Permutation]>, Arc<[Permutation]>);

/// A factorization `AB` of (all or part of) `S_n` with exact side sizes.
#[derive(Debug, Clone)]
pub struct SplitPlan {
    n: usize,
    kind: PlanKind,
    size_a: ExactCount,
    size_b: ExactCount,
    sets: Option<SampledSides>,
}

impl SplitPlan {
    pub(crate) fn from_parts(
        n: usize,
        kind: PlanKind,
        size_a: ExactCount,
        size_b: ExactCount,
    ) -> Self {
        Self {
            n,
            kind,
            size_a,
            size_b,
            sets: None,
        }
    }

    pub(crate) fn with_sets(mut self, a: Arc<[Permutation]>, b: Arc<[Permutation]>) -> Self {
        self.sets = Some((a, b));
        self
    }

    pub fn subgroup_transversal(spec: SubgroupSpec) -> Result<Self, SplitError> {
        let n = spec.n();
        if n > MAX_STREAM_DEGREE {
            return Err(SplitError::DegreeOutOfRange {
                n,
                min: 1,
                max: MAX_STREAM_DEGREE,
            });
        }
        let size_a = transversal_index(&spec);
        let size_b = spec.order().clone();
        Ok(Self::from_parts(
            n,
            PlanKind::SubgroupTransversal(spec),
            size_a,
            size_b,
        ))
    }

    /// Subgroup/transversal plan with `|H|` closest to `√n!`.
    pub fn balanced(n: usize) -> Result<Self, SplitError> {
        Self::subgroup_transversal(choose_subgroup_params(n, SizeTarget::SqrtFactorial)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &PlanKind {
        &self.kind
    }

    pub fn size_a(&self) -> &ExactCount {
        &self.size_a
    }

    pub fn size_b(&self) -> &ExactCount {
        &self.size_b
    }

    /// Deterministic plans cover all of `S_n`; randomized ones may not.
    pub fn is_deterministic(&self) -> bool {
        !matches!(self.kind, PlanKind::Randomized { .. })
    }

    pub fn stream_a(&self) -> SideStream {
        match &self.kind {
            PlanKind::SubgroupTransversal(spec) => {
                SideStream::Transversal(TransversalCursor::new(spec).expect("degree checked"))
            }
            PlanKind::Bidirectional { k } => {
                SideStream::Placement(PlacementCursor::new(self.n, *k))
            }
            PlanKind::Randomized { .. } => {
                SideStream::listed(self.sets.as_ref().expect("sampled").0.clone())
            }
        }
    }

    pub fn stream_b(&self) -> SideStream {
        match &self.kind {
            PlanKind::SubgroupTransversal(spec) => SideStream::Subgroup(SubgroupCursor::new(spec)),
            PlanKind::Bidirectional { k } => SideStream::Suffix(SuffixCursor::new(self.n, *k)),
            PlanKind::Randomized { .. } => {
                SideStream::listed(self.sets.as_ref().expect("sampled").1.clone())
            }
        }
    }

    /// `max(|A|, |B|) / √n!`.
    pub fn ratio(&self) -> f64 {
        let big = ln_biguint(&self.size_a).max(ln_biguint(&self.size_b));
        (big - log_factorial_int(self.n as u64) / 2.0).exp()
    }
}

/// One-line text rendering:
/// `n=7 kind=subgroup_transversal k=4 ell=3 |A|=70 |B|=72 ratio=1.01419`.
impl fmt::Display for SplitPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} kind={}", self.n, self.kind.name())?;
        match &self.kind {
            PlanKind::SubgroupTransversal(spec) => write!(f, " k={} ell={}", spec.k(), spec.ell())?,
            PlanKind::Bidirectional { k } => write!(f, " k={k}")?,
            PlanKind::Randomized { count, seed } => write!(f, " count={count} seed={seed}")?,
        }
        write!(
            f,
            " |A|={} |B|={} ratio={}",
            self.size_a,
            self.size_b,
            fmt_significant(self.ratio(), 6)
        )
    }
}

/// Formats `x` with `digits` significant digits in fixed notation.
pub fn fmt_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// A cursor over one side of a plan.
#[derive(Debug, Clone)]
pub enum SideStream {
    Subgroup(SubgroupCursor),
    Transversal(TransversalCursor),
    Placement(PlacementCursor),
    Suffix(SuffixCursor),
    Listed {
        items: Arc<[Permutation]>,
        next: usize,
    },
}

impl SideStream {
    fn listed(items: Arc<[Permutation]>) -> Self {
        SideStream::Listed { items, next: 0 }
    }
}

impl PermCursor for SideStream {
    fn advance(&mut self) -> Option<&Permutation> {
        match self {
            SideStream::Subgroup(c) => c.advance(),
            SideStream::Transversal(c) => c.advance(),
            SideStream::Placement(c) => c.advance(),
            SideStream::Suffix(c) => c.advance(),
            SideStream::Listed { items, next } => {
                let item = items.get(*next)?;
                *next += 1;
                Some(item)
            }
        }
    }

    fn state_words(&self) -> usize {
        match self {
            SideStream::Subgroup(c) => c.state_words(),
            SideStream::Transversal(c) => c.state_words(),
            SideStream::Placement(c) => c.state_words(),
            SideStream::Suffix(c) => c.state_words(),
            SideStream::Listed { items, .. } => {
                items.len() * items.first().map_or(0, |p| p.degree())
            }
        }
    }
}
