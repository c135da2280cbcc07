use std::cmp::Ordering;

use num_bigint::BigUint;

use super::{PermCursor, SplitError};
use crate::count::{factorial, ExactCount, LogMagnitude};
use crate::lex::LexStream;
use crate::perm::Permutation;

/// `H = ⟨S_k, σ⟩ ≤ S_n` with `σ = (k+1 k+2 … k+ℓ)`.
///
/// `ℓ = 1` is stored as `ℓ = 0` (both give `S_k`), and `(k, ℓ) = (0, 1)`
/// becomes `(1, 0)`, the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubgroupSpec {
    n: usize,
    k: usize,
    ell: usize,
    order: ExactCount,
}

impl SubgroupSpec {
    pub fn new(n: usize, k: usize, ell: usize) -> Result<Self, SplitError> {
        let invalid = SplitError::InvalidSpec { n, k, ell };
        if n == 0 || k > n || ell > n - k || k + ell == 0 {
            return Err(invalid);
        }
        let (k, ell) = match (k, ell) {
            (0, 1) => (1, 0),
            (k, 1) => (k, 0),
            other => other,
        };
        let order = factorial(k as u64) * BigUint::from(ell.max(1));
        Ok(Self { n, k, ell, order })
    }

    /// `H = S_n`.
    pub fn full(n: usize) -> Result<Self, SplitError> {
        Self::new(n, n, 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `|H|`: `k!` when `ℓ = 0`, `ℓ·k!` otherwise.
    pub fn order(&self) -> &ExactCount {
        &self.order
    }

    /// Number of powers of `σ` (1 when there is no cycle).
    pub(crate) fn cycle_len(&self) -> usize {
        self.ell.max(1)
    }
}

/// Generators of `H`, following the four cases `k >= 2 ∧ ℓ >= 2`,
/// `k >= 2 ∧ ℓ = 0`, `k = 1`, `k = 0`. Repeated generators (`(1 2)` and
/// `(1 … k)` coincide when `k = 2`) are listed once; the trivial group has
/// no generators.
pub fn subgroup_generators(spec: &SubgroupSpec) -> Vec<Permutation> {
    let n = spec.n;
    let (k, ell) = (spec.k, spec.ell);
    let mut gens: Vec<Permutation> = Vec::with_capacity(3);
    let mut push = |p: Permutation| {
        if !p.is_identity() && !gens.contains(&p) {
            gens.push(p);
        }
    };
    if k >= 2 {
        push(Permutation::cycle(n, &[0, 1]).expect("k >= 2 points exist"));
        push(Permutation::cycle(n, &(0..k).collect::<Vec<_>>()).expect("in range"));
    }
    if ell >= 2 {
        push(Permutation::cycle(n, &(k..k + ell).collect::<Vec<_>>()).expect("in range"));
    }
    gens
}

/// What `choose_subgroup_params` aims for.
#[derive(Debug, Clone, PartialEq)]
pub enum SizeTarget {
    /// `√n!`, compared exactly through `|H|²` against `n!`.
    SqrtFactorial,
    /// An exact count `m`.
    Count(ExactCount),
    /// An arbitrary real target given by its logarithm.
    Log(LogMagnitude),
}

impl From<LogMagnitude> for SizeTarget {
    fn from(l: LogMagnitude) -> Self {
        SizeTarget::Log(l)
    }
}

impl From<u64> for SizeTarget {
    fn from(m: u64) -> Self {
        SizeTarget::Count(BigUint::from(m))
    }
}

/// Distance of an order from the target as an exact ratio `num / den >= 1`.
struct Ratio {
    num: BigUint,
    den: BigUint,
}

impl Ratio {
    fn cmp(&self, other: &Ratio) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

fn exact_ratio(scaled: &BigUint, reference: &BigUint) -> Ratio {
    if scaled >= reference {
        Ratio {
            num: scaled.clone(),
            den: reference.clone(),
        }
    } else {
        Ratio {
            num: reference.clone(),
            den: scaled.clone(),
        }
    }
}

/// Picks `(k, ℓ)` whose `|H|` is closest to the target in log distance.
///
/// All admissible pairs with `1 <= k + ℓ <= n` are scanned. Exact ties go
/// to the smaller order, then to the larger `k`.
pub fn choose_subgroup_params(
    n: usize,
    target: impl Into<SizeTarget>,
) -> Result<SubgroupSpec, SplitError> {
    let target = target.into();
    if n == 0 {
        return Err(SplitError::TargetOutOfRange { n });
    }
    let n_fact = factorial(n as u64);
    let ln_n_fact = crate::count::log_factorial_int(n as u64);
    match &target {
        SizeTarget::SqrtFactorial => {}
        SizeTarget::Count(m) => {
            if m.bits() == 0 || *m > n_fact {
                return Err(SplitError::TargetOutOfRange { n });
            }
        }
        SizeTarget::Log(l) => {
            let slack = 1e-12 * ln_n_fact.max(1.0);
            if !(l.0 >= -slack && l.0 <= ln_n_fact + slack) {
                return Err(SplitError::TargetOutOfRange { n });
            }
        }
    }

    let mut best: Option<(SubgroupSpec, Candidate)> = None;
    // k descending so that, among equal orders, the larger k is kept.
    let mut k_fact = n_fact.clone();
    for k in (0..=n).rev() {
        for ell in std::iter::once(0).chain(2..=n - k) {
            if k + ell == 0 {
                continue;
            }
            let order = &k_fact * BigUint::from(ell.max(1));
            let cand = Candidate::new(&order, &target, &n_fact);
            let better = match &best {
                None => true,
                Some((spec, b)) => match cand.cmp(b) {
                    Ordering::Less => true,
                    Ordering::Equal => order < spec.order,
                    Ordering::Greater => false,
                },
            };
            if better {
                best = Some((SubgroupSpec::new(n, k, ell)?, cand));
            }
        }
        if k > 0 {
            k_fact /= k;
        }
    }
    Ok(best.expect("k = n is always admissible").0)
}

enum Candidate {
    Exact(Ratio),
    Approx(f64, f64),
}

impl Candidate {
    fn new(order: &BigUint, target: &SizeTarget, n_fact: &BigUint) -> Self {
        match target {
            SizeTarget::SqrtFactorial => {
                let sq = order * order;
                Candidate::Exact(exact_ratio(&sq, n_fact))
            }
            SizeTarget::Count(m) => Candidate::Exact(exact_ratio(order, m)),
            SizeTarget::Log(l) => {
                let d = (crate::count::ln_biguint(order) - l.0).abs();
                Candidate::Approx(d, 1e-12 * l.0.abs().max(1.0))
            }
        }
    }

    fn cmp(&self, other: &Candidate) -> Ordering {
        match (self, other) {
            (Candidate::Exact(a), Candidate::Exact(b)) => a.cmp(b),
            (Candidate::Approx(a, tol), Candidate::Approx(b, _)) => {
                if (a - b).abs() <= *tol {
                    Ordering::Equal
                } else {
                    a.partial_cmp(b).unwrap_or(Ordering::Equal)
                }
            }
            _ => unreachable!("one target per scan"),
        }
    }
}

/// Streams the elements of `H`: each arrangement of `S_k` (lexicographic)
/// composed with `σ^0, σ^1, …, σ^{ℓ-1}`.
#[derive(Debug, Clone)]
pub struct SubgroupCursor {
    k: usize,
    ell: usize,
    powers: usize,
    power: usize,
    sk: LexStream,
    current: Permutation,
    live: bool,
}

impl SubgroupCursor {
    pub fn new(spec: &SubgroupSpec) -> Self {
        Self {
            k: spec.k,
            ell: spec.ell,
            powers: spec.cycle_len(),
            power: 0,
            sk: LexStream::range(0, spec.k),
            current: Permutation::identity(spec.n).expect("n >= 1"),
            live: false,
        }
    }

    fn write_cycle_power(&mut self) {
        let (k, ell, p) = (self.k, self.ell, self.power);
        let images = self.current.images_mut();
        for i in 0..ell {
            images[k + i] = k + (i + p) % ell;
        }
    }
}

impl PermCursor for SubgroupCursor {
    fn advance(&mut self) -> Option<&Permutation> {
        if self.live && self.power + 1 < self.powers {
            self.power += 1;
        } else {
            let arr = self.sk.advance()?;
            self.current.images_mut()[..arr.len()].copy_from_slice(arr);
            self.power = 0;
            self.live = true;
        }
        self.write_cycle_power();
        Some(&self.current)
    }

    fn state_words(&self) -> usize {
        self.current.degree() + self.sk.ground_len() + 5
    }
}

impl Iterator for SubgroupCursor {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        self.advance().cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_one_based(v).unwrap()
    }

    /// Closure of a generating set by breadth-first multiplication.
    fn closure(n: usize, gens: &[Permutation]) -> HashSet<Permutation> {
        let id = Permutation::identity(n).unwrap();
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.compose(g).unwrap();
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn spec_orders_and_normalization() {
        let s = SubgroupSpec::new(7, 4, 3).unwrap();
        assert_eq!(s.order(), &BigUint::from(72u32));
        let s = SubgroupSpec::new(5, 3, 1).unwrap();
        assert_eq!((s.k(), s.ell()), (3, 0));
        let s = SubgroupSpec::new(5, 0, 1).unwrap();
        assert_eq!((s.k(), s.ell()), (1, 0));
        assert!(SubgroupSpec::new(5, 0, 0).is_err());
        assert!(SubgroupSpec::new(5, 4, 2).is_err());
        assert!(SubgroupSpec::new(5, 6, 0).is_err());
    }

    #[test]
    fn generator_cases() {
        let g = subgroup_generators(&SubgroupSpec::new(4, 2, 2).unwrap());
        assert_eq!(g, vec![p(&[2, 1, 3, 4]), p(&[1, 2, 4, 3])]);
        assert_eq!(closure(4, &g).len(), 4);

        let g = subgroup_generators(&SubgroupSpec::new(5, 0, 5).unwrap());
        assert_eq!(g, vec![p(&[2, 3, 4, 5, 1])]);

        let g = subgroup_generators(&SubgroupSpec::new(3, 3, 0).unwrap());
        assert_eq!(g, vec![p(&[2, 1, 3]), p(&[2, 3, 1])]);

        let g = subgroup_generators(&SubgroupSpec::new(5, 1, 3).unwrap());
        assert_eq!(g, vec![p(&[1, 3, 4, 2, 5])]);

        assert!(subgroup_generators(&SubgroupSpec::new(3, 1, 0).unwrap()).is_empty());
    }

    /// Oracle: every admissible (k, ℓ) by brute force over f64 logs.
    fn scan_oracle(n: usize, ln_target: f64) -> Vec<(f64, usize, usize, u128)> {
        let mut out = Vec::new();
        for k in 0..=n {
            for ell in 0..=(n - k) {
                if k + ell == 0 || ell == 1 {
                    continue;
                }
                let order: u128 = (1..=k as u128).product::<u128>() * ell.max(1) as u128;
                out.push(((order as f64).ln() - ln_target, k, ell, order));
            }
        }
        out.sort_by(|a, b| a.0.abs().partial_cmp(&b.0.abs()).unwrap());
        out
    }

    #[test]
    fn chooses_closest_for_sqrt_factorial() {
        let s = choose_subgroup_params(7, SizeTarget::SqrtFactorial).unwrap();
        assert_eq!((s.k(), s.ell()), (4, 3));
        assert_eq!(s.order(), &BigUint::from(72u32));
        let s = choose_subgroup_params(10, SizeTarget::SqrtFactorial).unwrap();
        assert_eq!((s.k(), s.ell()), (6, 3));
        assert_eq!(s.order(), &BigUint::from(2160u32));

        for n in 1..=25usize {
            let s = choose_subgroup_params(n, SizeTarget::SqrtFactorial).unwrap();
            let ln_t = crate::count::log_factorial_int(n as u64) / 2.0;
            let oracle = scan_oracle(n, ln_t);
            let best = oracle[0].0.abs();
            let got = (crate::count::ln_biguint(s.order()) - ln_t).abs();
            assert!((got - best).abs() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn n2_tie_is_sqrt2_and_prefers_smaller() {
        let s = choose_subgroup_params(2, SizeTarget::SqrtFactorial).unwrap();
        assert_eq!(s.order(), &BigUint::from(1u32));
        // n = 3 and n = 4 have exact ties between orders on both sides of √n!.
        let s = choose_subgroup_params(3, SizeTarget::SqrtFactorial).unwrap();
        assert_eq!((s.k(), s.ell()), (2, 0));
        let s = choose_subgroup_params(4, SizeTarget::SqrtFactorial).unwrap();
        assert_eq!((s.k(), s.ell()), (2, 2));
    }

    #[test]
    fn count_and_log_targets() {
        let s = choose_subgroup_params(8, 240u64).unwrap();
        assert_eq!(s.order(), &BigUint::from(240u32));
        let s = choose_subgroup_params(7, 1u64).unwrap();
        assert_eq!(s.order(), &BigUint::from(1u32));
        let s = choose_subgroup_params(7, LogMagnitude(72f64.ln())).unwrap();
        assert_eq!(s.order(), &BigUint::from(72u32));
        assert!(choose_subgroup_params(4, 25u64).is_err());
        assert!(choose_subgroup_params(4, 0u64).is_err());
        assert!(choose_subgroup_params(4, LogMagnitude(-1.0)).is_err());
    }

    #[test]
    fn enumerates_small_subgroups() {
        let spec = SubgroupSpec::new(4, 2, 2).unwrap();
        let got: Vec<_> = SubgroupCursor::new(&spec).collect();
        assert_eq!(
            got,
            vec![
                p(&[1, 2, 3, 4]),
                p(&[1, 2, 4, 3]),
                p(&[2, 1, 3, 4]),
                p(&[2, 1, 4, 3])
            ]
        );
        let rot: Vec<_> = SubgroupCursor::new(&SubgroupSpec::new(4, 0, 3).unwrap()).collect();
        assert_eq!(
            rot,
            vec![p(&[1, 2, 3, 4]), p(&[2, 3, 1, 4]), p(&[3, 1, 2, 4])]
        );
        let s3: HashSet<_> = SubgroupCursor::new(&SubgroupSpec::full(3).unwrap()).collect();
        assert_eq!(s3.len(), 6);
        let triv: Vec<_> = SubgroupCursor::new(&SubgroupSpec::new(3, 1, 0).unwrap()).collect();
        assert_eq!(triv, vec![Permutation::identity(3).unwrap()]);
    }

    #[test]
    fn enumeration_equals_generator_closure() {
        for n in 1..=6usize {
            for k in 0..=n {
                for ell in 0..=(n - k) {
                    let Ok(spec) = SubgroupSpec::new(n, k, ell) else {
                        continue;
                    };
                    let listed: Vec<_> = SubgroupCursor::new(&spec).collect();
                    let set: HashSet<_> = listed.iter().cloned().collect();
                    assert_eq!(set.len(), listed.len());
                    assert_eq!(BigUint::from(listed.len()), *spec.order());
                    assert_eq!(
                        set,
                        closure(n, &subgroup_generators(&spec)),
                        "{n} {k} {ell}"
                    );
                }
            }
        }
    }
}
