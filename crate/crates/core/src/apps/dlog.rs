//! Discrete logarithms in cyclic subgroups of `Z_p^*`, and the reduction of
//! a discrete logarithm to the units-acting-on-generators problem.

use std::collections::HashMap;

use super::AppError;

/// `a^x = b` in the subgroup `⟨a⟩ ⊆ Z_p^*` of order `order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicGroupInstance {
    modulus: u64,
    order: u64,
    a: u64,
    b: u64,
}

/// One instance of the action problem: find a unit `u` of `Z_order` with
/// `from^u = to`, where both are generators of the same cyclic group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitActionProblem {
    pub modulus: u64,
    pub order: u64,
    pub from: u64,
    pub to: u64,
}

/// Outcome of [`dl_reduction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DlReduction {
    pub exponent: u64,
    /// Shift attempts `r = 1, 2, ...` tried; 0 when no search was needed.
    pub shifts: u64,
    /// Calls made to the action solver.
    pub solver_calls: u64,
}

impl CyclicGroupInstance {
    /// Whole group `Z_p^*`; `a` must be a primitive root.
    pub fn new(modulus: u64, a: u64, b: u64) -> Result<Self, AppError> {
        if !is_prime(modulus) {
            return Err(AppError::NotPrime(modulus));
        }
        Self::in_subgroup(modulus, a, b, modulus - 1)
    }

    /// Subgroup of order `order` (dividing `p - 1`) generated by `a`.
    pub fn in_subgroup(modulus: u64, a: u64, b: u64, order: u64) -> Result<Self, AppError> {
        if !is_prime(modulus) {
            return Err(AppError::NotPrime(modulus));
        }
        let not_gen = AppError::NotGenerator { a, order, modulus };
        if a == 0 || a >= modulus || order == 0 || !(modulus - 1).is_multiple_of(order) {
            return Err(not_gen);
        }
        if multiplicative_order(a, modulus, order) != Some(order) {
            return Err(not_gen);
        }
        if b == 0 || b >= modulus || pow_mod(b, order, modulus) != 1 {
            return Err(AppError::NotInGroup { a, b, modulus });
        }
        Ok(Self {
            modulus,
            order,
            a,
            b,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn is_generator(&self, c: u64) -> bool {
        multiplicative_order(c, self.modulus, self.order) == Some(self.order)
    }
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn mul_mod(x: u64, y: u64, m: u64) -> u64 {
    ((x as u128 * y as u128) % m as u128) as u64
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Order of `c` given that it divides `group_order`; `None` if it does not.
fn multiplicative_order(c: u64, modulus: u64, group_order: u64) -> Option<u64> {
    if pow_mod(c, group_order, modulus) != 1 {
        return None;
    }
    let mut ord = group_order;
    for q in prime_factors(group_order) {
        while ord.is_multiple_of(q) && pow_mod(c, ord / q, modulus) == 1 {
            ord /= q;
        }
    }
    Some(ord)
}

fn mod_inverse(x: u64, m: u64) -> u64 {
    // m prime
    pow_mod(x, m - 2, m)
}

/// Shanks baby-step giant-step; returns the least `x` in `[0, order)`.
pub fn classic_bsgs(inst: &CyclicGroupInstance) -> Result<u64, AppError> {
    let p = inst.modulus;
    let mut steps = ((inst.order as f64).sqrt() as u64).max(1);
    while steps * steps < inst.order {
        steps += 1;
    }
    let mut baby: HashMap<u64, u64> = HashMap::with_capacity(steps as usize);
    let mut cur = 1u64;
    for j in 0..steps {
        baby.entry(cur).or_insert(j);
        cur = mul_mod(cur, inst.a, p);
    }
    let giant = mod_inverse(pow_mod(inst.a, steps, p), p);
    let mut gamma = inst.b;
    for i in 0..steps {
        if let Some(&j) = baby.get(&gamma) {
            let x = i * steps + j;
            if x < inst.order {
                return Ok(x);
            }
        }
        gamma = mul_mod(gamma, giant, p);
    }
    Err(AppError::NotInGroup {
        a: inst.a,
        b: inst.b,
        modulus: p,
    })
}

/// Reference action solver: tries every unit of `Z_order` in increasing order.
pub fn unit_action_search(problem: &UnitActionProblem) -> Option<u64> {
    let n = problem.order;
    (1..n.max(2))
        .filter(|&u| gcd(u, n) == 1)
        .find(|&u| pow_mod(problem.from, u, problem.modulus) == problem.to % problem.modulus)
}

fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// Solves `a^x = b` with calls to an action solver.
///
/// `b = 1` gives 0 directly. For prime order every other `b` generates, so
/// one call suffices. Otherwise `b·a^r` is tried for `r = 1, 2, ...` until
/// it generates.
pub fn dl_reduction<F>(inst: &CyclicGroupInstance, solver: F) -> Result<DlReduction, AppError>
where
    F: FnMut(&UnitActionProblem) -> Option<u64>,
{
    if inst.b == 1 {
        return Ok(DlReduction {
            exponent: 0,
            shifts: 0,
            solver_calls: 0,
        });
    }
    if is_prime(inst.order) {
        let mut solver = solver;
        let u = solver(&UnitActionProblem {
            modulus: inst.modulus,
            order: inst.order,
            from: inst.a,
            to: inst.b,
        })
        .ok_or(AppError::ActionSolverFailed)?;
        return Ok(DlReduction {
            exponent: u % inst.order,
            shifts: 0,
            solver_calls: 1,
        });
    }
    dl_shift_search(inst, solver)
}

/// The shift search used for composite order, callable for any order.
pub fn dl_shift_search<F>(
    inst: &CyclicGroupInstance,
    mut solver: F,
) -> Result<DlReduction, AppError>
where
    F: FnMut(&UnitActionProblem) -> Option<u64>,
{
    let n = inst.order;
    let p = inst.modulus;
    let mut shifted = inst.b;
    for r in 1..=n {
        shifted = mul_mod(shifted, inst.a, p);
        if !inst.is_generator(shifted) {
            continue;
        }
        let u = solver(&UnitActionProblem {
            modulus: p,
            order: n,
            from: inst.a,
            to: shifted,
        })
        .ok_or(AppError::ActionSolverFailed)?;
        let exponent = ((u % n) + n - (r % n)) % n;
        return Ok(DlReduction {
            exponent,
            shifts: r,
            solver_calls: 1,
        });
    }
    Err(AppError::ShiftSearchExhausted(n))
}

/// Largest gap between cyclically consecutive units of `Z_n`, for `n >= 2`.
pub fn jacobsthal(n: u64) -> u64 {
    if n < 2 {
        return 1;
    }
    let units: Vec<u64> = (1..n).filter(|&u| gcd(u, n) == 1).collect();
    let mut gap = units[0] + n - units[units.len() - 1];
    for w in units.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    gap
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primitive_roots(p: u64) -> Vec<u64> {
        (1..p)
            .filter(|&a| multiplicative_order(a, p, p - 1) == Some(p - 1))
            .collect()
    }

    fn scan(inst: &CyclicGroupInstance) -> Option<u64> {
        (0..inst.order()).find(|&x| pow_mod(inst.a(), x, inst.modulus()) == inst.b())
    }

    #[test]
    fn small_example() {
        let inst = CyclicGroupInstance::new(11, 2, 9).unwrap();
        assert_eq!(classic_bsgs(&inst).unwrap(), 6);
        assert_eq!(dl_reduction(&inst, unit_action_search).unwrap().exponent, 6);
    }

    #[test]
    fn agrees_with_scan_for_small_primes() {
        for p in (3..=31).filter(|&p| is_prime(p)) {
            for a in primitive_roots(p) {
                for b in 1..p {
                    let inst = CyclicGroupInstance::new(p, a, b).unwrap();
                    let x = scan(&inst).unwrap();
                    assert_eq!(classic_bsgs(&inst).unwrap(), x, "p={p} a={a} b={b}");
                    let red = dl_reduction(&inst, unit_action_search).unwrap();
                    assert_eq!(red.exponent, x);
                    assert!(red.shifts <= jacobsthal(p - 1));
                }
            }
        }
    }

    #[test]
    fn prime_order_uses_one_call() {
        // 16 has order 7 in Z_29^*
        for x in 0..7 {
            let b = pow_mod(16, x, 29);
            let inst = CyclicGroupInstance::in_subgroup(29, 16, b, 7).unwrap();
            let mut calls = 0;
            let red = dl_reduction(&inst, |q| {
                calls += 1;
                unit_action_search(q)
            })
            .unwrap();
            assert_eq!(red.exponent, x);
            assert!(calls <= 1);
            let forced = dl_shift_search(&inst, unit_action_search).unwrap();
            assert_eq!(forced.exponent, x);
            assert!(forced.shifts <= jacobsthal(7));
        }
        assert_eq!(jacobsthal(7), 2);
    }

    #[test]
    fn jacobsthal_values() {
        let known = [(2, 2), (3, 2), (4, 2), (6, 4), (10, 4), (12, 4), (30, 6)];
        for (n, j) in known {
            assert_eq!(jacobsthal(n), j, "n={n}");
        }
    }

    #[test]
    fn rejects_bad_instances() {
        assert_eq!(
            CyclicGroupInstance::new(12, 5, 1),
            Err(AppError::NotPrime(12))
        );
        assert!(matches!(
            CyclicGroupInstance::new(11, 3, 1),
            Err(AppError::NotGenerator { .. })
        ));
        assert!(matches!(
            CyclicGroupInstance::in_subgroup(29, 16, 2, 7),
            Err(AppError::NotInGroup { .. })
        ));
        assert!(matches!(
            CyclicGroupInstance::new(11, 2, 0),
            Err(AppError::NotInGroup { .. })
        ));
        let inst = CyclicGroupInstance::new(11, 2, 9).unwrap();
        assert_eq!(
            dl_reduction(&inst, |_| None),
            Err(AppError::ActionSolverFailed)
        );
    }

    #[test]
    fn larger_bsgs() {
        let p = 1_000_003;
        let a = primitive_roots_upto(p);
        let inst = CyclicGroupInstance::new(p, a, pow_mod(a, 777_777, p)).unwrap();
        assert_eq!(classic_bsgs(&inst).unwrap(), 777_777);
    }

    fn primitive_roots_upto(p: u64) -> u64 {
        (2..p)
            .find(|&a| multiplicative_order(a, p, p - 1) == Some(p - 1))
            .unwrap()
    }
}
