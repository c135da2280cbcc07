//! Exact and logarithmic counting: factorials, falling factorials,
//! binomials, and the real root of `x! = sqrt(n!)`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

/// Exact non-negative count (group orders, indices, set sizes).
pub type ExactCount = BigUint;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CountError {
    #[error("log_factorial needs a finite x >= 0, got {0}")]
    NegativeArgument(f64),
    #[error("bisection for n = {n} did not converge in {iterations} iterations")]
    NoConvergence { n: u64, iterations: usize },
    #[error("half-factorial root needs n >= 1")]
    ZeroDegree,
}

/// Natural logarithm of a positive count.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogMagnitude(pub f64);

impl LogMagnitude {
    pub fn of_count(c: &ExactCount) -> Self {
        LogMagnitude(ln_biguint(c))
    }

    /// `ln(sqrt(n!))`.
    pub fn sqrt_factorial(n: u64) -> Self {
        LogMagnitude(log_factorial_int(n) / 2.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn factorial(n: u64) -> ExactCount {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `(n)_k = n (n-1) … (n-k+1)`; zero when `k > n`.
pub fn falling_factorial(n: u64, k: u64) -> ExactCount {
    if k > n {
        return BigUint::default();
    }
    ((n - k + 1)..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> ExactCount {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    // Each prefix product is itself a binomial coefficient, so division is exact.
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `ln Γ(x + 1)`.
pub fn log_factorial(x: f64) -> Result<LogMagnitude, CountError> {
    if !x.is_finite() || x < 0.0 {
        return Err(CountError::NegativeArgument(x));
    }
    Ok(LogMagnitude(lgamma1p(x)))
}

/// `ln(n!)` for integer `n`; summed exactly below 32, log-gamma above.
pub fn log_factorial_int(n: u64) -> f64 {
    if n < 32 {
        (2..=n).map(|i| (i as f64).ln()).sum()
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}

fn lgamma1p(x: f64) -> f64 {
    if x.fract() == 0.0 && x < 32.0 {
        log_factorial_int(x as u64)
    } else {
        libm::lgamma(x + 1.0)
    }
}

/// Natural log of an arbitrary-size count; `-inf` for zero.
pub fn ln_biguint(c: &BigUint) -> f64 {
    if let Some(v) = c.to_f64().filter(|v| v.is_finite()) {
        if c.bits() <= 53 {
            return v.ln();
        }
    }
    // Keep the top 64 bits and add the shift back in log space.
    let bits = c.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let shift = bits.saturating_sub(64);
    let top = (c >> shift).to_u64().expect("fits in 64 bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Tolerance on the log scale for [`solve_half_factorial`].
pub const HALF_FACTORIAL_TOL: f64 = 1e-9;
const BISECTION_CAP: usize = 200;

/// The real `x` with `x! = sqrt(n!)`, by bisection on `[n/2, n]`.
///
/// For `n = 1` the root `x = 1` is taken on `[1/2, 1]`, where log-gamma is
/// increasing.
pub fn solve_half_factorial(n: u64) -> Result<f64, CountError> {
    if n == 0 {
        return Err(CountError::ZeroDegree);
    }
    let target = log_factorial_int(n) / 2.0;
    let (mut lo, mut hi) = (n as f64 / 2.0, n as f64);
    for _ in 0..BISECTION_CAP {
        let mid = 0.5 * (lo + hi);
        let f = lgamma1p(mid) - target;
        if f.abs() <= HALF_FACTORIAL_TOL {
            return Ok(mid);
        }
        if f < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(CountError::NoConvergence {
        n,
        iterations: BISECTION_CAP,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials() {
        assert_eq!(factorial(7), BigUint::from(5040u32));
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(1), BigUint::one());
    }

    #[test]
    fn factorial_recurrence_is_exact() {
        for n in 1..=64u64 {
            assert_eq!(factorial(n), factorial(n - 1) * n);
        }
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
    }

    #[test]
    fn falling_and_binomial() {
        assert_eq!(falling_factorial(10, 3), BigUint::from(720u32));
        assert_eq!(falling_factorial(5, 0), BigUint::one());
        assert_eq!(falling_factorial(3, 4), BigUint::default());
        assert_eq!(binomial(7, 3), BigUint::from(35u32));
        assert_eq!(binomial(64, 32).to_string(), "1832624140942590534");
        for n in 0..20 {
            for k in 0..=n {
                assert_eq!(falling_factorial(n, k) * factorial(n - k), factorial(n));
                assert_eq!(
                    binomial(n, k) * factorial(k) * factorial(n - k),
                    factorial(n)
                );
            }
        }
    }

    #[test]
    fn log_factorial_matches_exact() {
        let lf = log_factorial(10.0).unwrap().value();
        assert!((lf - 3628800f64.ln()).abs() < 1e-12);
        assert!((lf - 15.1044).abs() < 1e-4);
        for n in 0..=170u64 {
            let exact = factorial(n).to_f64().unwrap();
            let approx = log_factorial(n as f64).unwrap().value().exp();
            assert!(((approx - exact) / exact).abs() <= 1e-9, "n = {n}");
        }
        assert!(log_factorial(-1.0).is_err());
        assert!(log_factorial(f64::NAN).is_err());
    }

    #[test]
    fn log_factorial_large_n_relative_accuracy() {
        // Stirling series with three correction terms is good to ~1e-20 relative here.
        for &n in &[1_000u64, 50_000, 1_000_000] {
            let x = n as f64;
            let stirling =
                x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x)
                    - 1.0 / (360.0 * x.powi(3))
                    + 1.0 / (1260.0 * x.powi(5));
            let got = log_factorial(x).unwrap().value();
            assert!(((got - stirling) / stirling).abs() <= 1e-9, "n = {n}");
        }
    }

    #[test]
    fn ln_biguint_large() {
        let f = factorial(64);
        assert!((ln_biguint(&f) - log_factorial_int(64)).abs() < 1e-9);
        assert_eq!(ln_biguint(&BigUint::default()), f64::NEG_INFINITY);
    }

    #[test]
    fn half_factorial_examples() {
        let x10 = solve_half_factorial(10).unwrap();
        assert!((x10 - 6.509).abs() <= 1e-3, "{x10}");
        let x1 = solve_half_factorial(1).unwrap();
        assert!((0.5..=1.0).contains(&x1));
        assert!(log_factorial(x1).unwrap().value().abs() <= HALF_FACTORIAL_TOL);
        assert_eq!(solve_half_factorial(0), Err(CountError::ZeroDegree));
    }

    #[test]
    fn half_factorial_bracket_and_monotone() {
        let mut prev = 0.0;
        for n in 1..=300u64 {
            let x = solve_half_factorial(n).unwrap();
            assert!(x >= n as f64 / 2.0 && x <= n as f64);
            assert!(x > prev);
            let resid = log_factorial(x).unwrap().value() - log_factorial_int(n) / 2.0;
            assert!(resid.abs() <= HALF_FACTORIAL_TOL);
            prev = x;
        }
    }
}
