//! Gamma-function helpers kept in log space.

use std::ops::{Div, Mul};

use crate::error::{Error, Result};

/// A real number stored as `sign * exp(log_magnitude)`.
///
/// Weights and squared norms of the Hahn family overflow `f64` long before
/// the polynomials themselves do, so they travel in this form and are only
/// exponentiated once a ratio of them is formed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogWeight {
    pub log_magnitude: f64,
    pub sign: i8,
}

impl LogWeight {
    pub const ONE: LogWeight = LogWeight { log_magnitude: 0.0, sign: 1 };

    pub fn new(log_magnitude: f64, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        LogWeight { log_magnitude, sign }
    }

    pub fn from_value(value: f64) -> Self {
        LogWeight {
            log_magnitude: value.abs().ln(),
            sign: if value.is_sign_negative() { -1 } else { 1 },
        }
    }

    pub fn value(self) -> f64 {
        f64::from(self.sign) * self.log_magnitude.exp()
    }

    pub fn is_positive(self) -> bool {
        self.sign > 0
    }

    /// Square root of a positive weight, still in log space.
    pub fn sqrt(self) -> Result<LogWeight> {
        if self.sign < 0 {
            return Err(Error::Domain("square root of a negative weight".into()));
        }
        Ok(LogWeight::new(0.5 * self.log_magnitude, 1))
    }
}

impl Mul for LogWeight {
    type Output = LogWeight;
    fn mul(self, rhs: LogWeight) -> LogWeight {
        LogWeight::new(self.log_magnitude + rhs.log_magnitude, self.sign * rhs.sign)
    }
}

impl Div for LogWeight {
    type Output = LogWeight;
    fn div(self, rhs: LogWeight) -> LogWeight {
        LogWeight::new(self.log_magnitude - rhs.log_magnitude, self.sign * rhs.sign)
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// `ln |Gamma(x)|` together with the sign of `Gamma(x)`.
pub fn ln_gamma_signed(x: f64) -> Result<LogWeight> {
    if !x.is_finite() {
        return Err(Error::NotFinite(x));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Domain(format!("Gamma pole at {x}")));
    }
    let (value, sign) = libm::lgamma_r(x);
    Ok(LogWeight::new(value, if sign < 0 { -1 } else { 1 }))
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a + f64::from(i)))
}

/// `(a)_k` as the Gamma ratio `Gamma(a+k) / Gamma(a)` for real `k`.
///
/// Both `a` and `a + k` must avoid the Gamma poles.
pub fn log_pochhammer(a: f64, k: f64) -> Result<LogWeight> {
    if k == 0.0 {
        return Ok(LogWeight::ONE);
    }
    Ok(ln_gamma_signed(a + k)? / ln_gamma_signed(a)?)
}

/// Generalized binomial `Gamma(top+1) / (Gamma(k+1) Gamma(top-k+1))` in log space.
///
/// Valid whenever none of the three Gamma arguments is a nonpositive
/// integer; this covers every `top > -1` with non-integer `top`, and every
/// integer `top >= k`. The sign is carried, so e.g. `C(0.5, 2) < 0` is
/// representable.
pub fn log_binomial_real(top: f64, k: u32) -> Result<LogWeight> {
    if k == 0 {
        return Ok(LogWeight::ONE);
    }
    let k = f64::from(k);
    Ok(ln_gamma_signed(top + 1.0)? / (ln_gamma_signed(k + 1.0)? * ln_gamma_signed(top - k + 1.0)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(0.37, 0), 1.0);
        assert_eq!(pochhammer(3.0, 2), 12.0);
        assert_eq!(pochhammer(-2.0, 3), 0.0);
    }

    #[test]
    fn binomial_examples() {
        let c = log_binomial_real(4.0, 2).unwrap();
        assert_eq!(c.sign, 1);
        assert!(close(c.log_magnitude, 6f64.ln(), 1e-15));

        assert_eq!(log_binomial_real(0.3, 0).unwrap(), LogWeight::ONE);

        // direct product oracle: 2.5 * 1.5 / 2!
        let c = log_binomial_real(2.5, 2).unwrap();
        assert!(close(c.value(), 2.5 * 1.5 / 2.0, 1e-14));

        let c = log_binomial_real(0.5, 2).unwrap();
        assert_eq!(c.sign, -1);
        assert!(close(c.value(), 0.5 * -0.5 / 2.0, 1e-14));
    }

    #[test]
    fn binomial_pole_is_a_domain_error() {
        assert!(matches!(log_binomial_real(-1.0, 1), Err(Error::Domain(_))));
        assert!(matches!(log_binomial_real(2.0, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn log_pochhammer_matches_product() {
        for &a in &[0.5, 1.0, 2.7, -0.3] {
            for k in 0..30u32 {
                let direct = pochhammer(a, k);
                let lp = log_pochhammer(a, f64::from(k)).unwrap();
                assert!(close(lp.value(), direct, 1e-13), "a={a} k={k}");
            }
        }
    }
}
