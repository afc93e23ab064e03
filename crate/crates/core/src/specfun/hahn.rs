//! Hahn polynomials `Q_n(x; alpha, beta, N)`, their weight, squared norm and
//! orthonormal form.
//!
//! `Q_n(x) = 3F2(-n, n+alpha+beta+1, -x; alpha+1, -N; 1)` on `x = 0..=N`.
//! Read with the roles of `n` and `x` swapped, the same sum is the dual Hahn
//! polynomial of degree `x` in `lambda(n) = n (n + alpha + beta + 1)`.

use crate::error::{Error, Result};

use super::gamma::{ln_gamma_signed, log_binomial_real, log_pochhammer, LogWeight};
use super::hypergeometric::hyp3f2_terminating;

/// Degree and parameters of a Hahn polynomial on the support `{0, ..., N}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HahnSpec {
    n: u32,
    alpha: f64,
    beta: f64,
    support: u32,
}

fn check_parameter(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NotFinite(value));
    }
    if value <= -1.0 {
        return Err(Error::InvalidParameter(format!("{name} must exceed -1, got {value}")));
    }
    Ok(())
}

impl HahnSpec {
    /// `n` is the degree, `support` is `N`.
    pub fn new(n: u32, alpha: f64, beta: f64, support: u32) -> Result<Self> {
        check_parameter("alpha", alpha)?;
        check_parameter("beta", beta)?;
        if n > support {
            return Err(Error::InvalidParameter(format!("degree {n} exceeds N = {support}")));
        }
        Ok(HahnSpec { n, alpha, beta, support })
    }

    pub fn degree(&self) -> u32 {
        self.n
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn support(&self) -> u32 {
        self.support
    }

    pub fn with_degree(&self, n: u32) -> Result<Self> {
        HahnSpec::new(n, self.alpha, self.beta, self.support)
    }

    fn check_x(&self, x: u32) -> Result<()> {
        if x > self.support {
            return Err(Error::Domain(format!("x = {x} outside 0..={}", self.support)));
        }
        Ok(())
    }
}

/// `lambda(n) = n (n + alpha + beta + 1)`.
pub fn dual_hahn_lambda(n: f64, alpha: f64, beta: f64) -> f64 {
    n * (n + alpha + beta + 1.0)
}

/// `Q_n(x; alpha, beta, N)`. `Q_0` and `Q_n(0)` are exactly `1`.
pub fn hahn_q(spec: &HahnSpec, x: u32) -> Result<f64> {
    spec.check_x(x)?;
    hyp3f2_terminating(
        -f64::from(spec.n),
        f64::from(spec.n) + spec.alpha + spec.beta + 1.0,
        -f64::from(x),
        spec.alpha + 1.0,
        -f64::from(spec.support),
    )
}

/// Weight `w(x) = C(alpha+x, x) C(N+beta-x, N-x)`.
pub fn hahn_weight(x: u32, alpha: f64, beta: f64, support: u32) -> Result<LogWeight> {
    check_parameter("alpha", alpha)?;
    check_parameter("beta", beta)?;
    if x > support {
        return Err(Error::Domain(format!("x = {x} outside 0..={support}")));
    }
    let n = f64::from(support);
    let xf = f64::from(x);
    Ok(log_binomial_real(alpha + xf, x)? * log_binomial_real(n + beta - xf, support - x)?)
}

/// Squared norm `h(n)` of `Q_n` under [`hahn_weight`].
pub fn hahn_norm(n: u32, alpha: f64, beta: f64, support: u32) -> Result<LogWeight> {
    if n > support {
        return Err(Error::InvalidParameter(format!("degree {n} exceeds N = {support}")));
    }
    hahn_norm_real(f64::from(n), alpha, beta, support)
}

/// The squared-norm formula continued to a real degree `nu`, with every
/// Pochhammer symbol written as a Gamma ratio.
///
/// `(nu+a+b+1)_{N+1} / (2nu+a+b+1)` is split as
/// `(nu+a+b+1)/(2nu+a+b+1) * (nu+a+b+2)_N`; at `nu = 0` the leading ratio is
/// exactly 1, which also covers `a + b + 1 = 0`.
pub fn hahn_norm_real(nu: f64, alpha: f64, beta: f64, support: u32) -> Result<LogWeight> {
    check_parameter("alpha", alpha)?;
    check_parameter("beta", beta)?;
    if !nu.is_finite() {
        return Err(Error::NotFinite(nu));
    }
    let big_n = f64::from(support);
    let s = alpha + beta;
    let lead = if nu == 0.0 {
        LogWeight::ONE
    } else {
        LogWeight::from_value((nu + s + 1.0) / (2.0 * nu + s + 1.0))
    };
    let numer = lead
        * log_pochhammer(nu + s + 2.0, big_n)?
        * log_pochhammer(beta + 1.0, nu)?
        * ln_gamma_signed(nu + 1.0)?;
    let falling = ln_gamma_signed(big_n + 1.0)? / ln_gamma_signed(big_n - nu + 1.0)?;
    let denom = log_pochhammer(alpha + 1.0, nu)? * falling * ln_gamma_signed(big_n + 1.0)?;
    Ok(numer / denom)
}

/// Orthonormal Hahn function `sqrt(w(x)) Q_n(x) / sqrt(h(n))`.
pub fn hahn_orthonormal(spec: &HahnSpec, x: u32) -> Result<f64> {
    let q = hahn_q(spec, x)?;
    let w = hahn_weight(x, spec.alpha, spec.beta, spec.support)?;
    let h = hahn_norm(spec.n, spec.alpha, spec.beta, spec.support)?;
    let scale = (w / h).sqrt()?;
    Ok(scale.value() * q)
}

/// All orthonormal values `table[n][x]` for `n, x` in `0..=N`.
pub fn orthonormal_table(alpha: f64, beta: f64, support: u32) -> Result<Vec<Vec<f64>>> {
    (0..=support)
        .map(|n| {
            let spec = HahnSpec::new(n, alpha, beta, support)?;
            (0..=support).map(|x| hahn_orthonormal(&spec, x)).collect()
        })
        .collect()
}

/// `max_{l,n} |sum_x w(x) Q_l(x) Q_n(x) / sqrt(h(l) h(n)) - delta_{ln}|`.
pub fn orthogonality_defect(alpha: f64, beta: f64, support: u32) -> Result<f64> {
    let q: Vec<Vec<f64>> = (0..=support)
        .map(|n| {
            let spec = HahnSpec::new(n, alpha, beta, support)?;
            (0..=support).map(|x| hahn_q(&spec, x)).collect()
        })
        .collect::<Result<_>>()?;
    let w: Vec<LogWeight> = (0..=support).map(|x| hahn_weight(x, alpha, beta, support)).collect::<Result<_>>()?;
    let h: Vec<LogWeight> = (0..=support).map(|n| hahn_norm(n, alpha, beta, support)).collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    for l in 0..=support as usize {
        for n in l..=support as usize {
            let scale = (h[l] * h[n]).sqrt()?;
            let sum: f64 = (0..=support as usize).map(|x| (w[x] / scale).value() * q[l][x] * q[n][x]).sum();
            let target = if l == n { 1.0 } else { 0.0 };
            worst = worst.max((sum - target).abs());
        }
    }
    Ok(worst)
}
