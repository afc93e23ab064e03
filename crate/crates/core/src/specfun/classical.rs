use crate::error::{Error, Result};

use super::gamma::log_pochhammer;
use super::hypergeometric::hyp1f1_terminating;

/// Generalized Laguerre polynomial `L_n^{(a)}(t)`, via
/// `L_n^{(a)}(t) = (a+1)_n / n! * 1F1(-n; a+1; t)`.
pub fn laguerre(n: u32, a: f64, t: f64) -> Result<f64> {
    if !(a > -1.0) {
        return Err(Error::InvalidParameter(format!("Laguerre parameter must exceed -1, got {a}")));
    }
    let series = hyp1f1_terminating(n, a + 1.0, t)?;
    let nf = f64::from(n);
    let prefactor = log_pochhammer(a + 1.0, nf)? / log_pochhammer(1.0, nf)?;
    Ok(prefactor.value() * series)
}

/// Physicists' Hermite polynomial `H_n(x)` by the three-term recurrence.
pub fn hermite(n: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * f64::from(k) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laguerre_low_degrees() {
        for &(a, t) in &[(0.0, 0.3), (1.5, 2.0), (-0.5, 7.25)] {
            assert_eq!(laguerre(0, a, t).unwrap(), 1.0);
            assert!((laguerre(1, a, t).unwrap() - (a + 1.0 - t)).abs() < 1e-14);
        }
        assert!((laguerre(2, 0.0, 1.0).unwrap() + 0.5).abs() < 1e-15);
        assert!(laguerre(2, -1.0, 1.0).is_err());
    }

    #[test]
    fn laguerre_matches_explicit_sum() {
        // L_n^(a)(t) = sum_k (-1)^k C(n+a, n-k) t^k / k!
        let binom = |top: f64, k: u32| (0..k).fold(1.0, |acc, i| acc * (top - f64::from(i)) / f64::from(i + 1));
        for n in 0..8u32 {
            for &(a, t) in &[(0.3, 0.7), (2.0, 1.9), (-0.6, 3.1)] {
                let mut want = 0.0;
                let mut tk = 1.0;
                let mut fact = 1.0;
                for k in 0..=n {
                    if k > 0 {
                        tk *= t;
                        fact *= f64::from(k);
                    }
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    want += sign * binom(f64::from(n) + a, n - k) * tk / fact;
                }
                let got = laguerre(n, a, t).unwrap();
                assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "n={n} a={a} t={t}");
            }
        }
    }

    #[test]
    fn hermite_low_degrees() {
        assert_eq!(hermite(0, 0.3), 1.0);
        assert_eq!(hermite(1, 0.3), 0.6);
        assert_eq!(hermite(2, 1.0), 2.0);
        // H_5(x) = 32x^5 - 160x^3 + 120x
        let x: f64 = 0.7;
        let want = 32.0 * x.powi(5) - 160.0 * x.powi(3) + 120.0 * x;
        assert!((hermite(5, x) - want).abs() < 1e-12);
    }
}
