//! The parabose (Wigner) oscillator: one pair of operators `b+-` acting on
//! `l2(Z+)` with basis `|n>` and representation label `a > 0`, truncated to
//! the first `trunc` basis vectors, and the wavefunctions `Psi^(a)_n(x)`.
//!
//! ```text
//! b+ |2n>   = sqrt(2(n+a)) |2n+1>      b- |2n+1> = sqrt(2(n+a)) |2n>
//! b+ |2n+1> = sqrt(2(n+1)) |2n+2>      b- |2n+2> = sqrt(2(n+1)) |2n+1>
//! ```
//!
//! Truncation breaks the ladder identities in the last two rows and
//! columns, so relation checks only look at indices `< trunc - 2`.

use nalgebra::DMatrix;

use crate::algebra::{anticommutator, commutator, OperatorMatrix};
use crate::error::{Error, Result};
use crate::quadrature::integrate;
use crate::specfun::{hermite, laguerre, ln_gamma_signed};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParaboseParams {
    a: f64,
    trunc: usize,
}

impl ParaboseParams {
    pub fn new(a: f64, trunc: usize) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::InvalidParameter(format!("a must be positive, got {a}")));
        }
        if trunc < 2 {
            return Err(Error::InvalidParameter(format!("trunc must be at least 2, got {trunc}")));
        }
        Ok(Self { a, trunc })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Number of basis vectors on which relations are asserted.
    pub fn interior(&self) -> usize {
        self.trunc - 2
    }
}

/// Coefficient of `b+ |m> -> |m+1>`.
fn raise(a: f64, m: usize) -> f64 {
    if m.is_multiple_of(2) {
        (2.0 * ((m / 2) as f64 + a)).sqrt()
    } else {
        (2.0 * ((m / 2) as f64 + 1.0)).sqrt()
    }
}

/// Coefficient of `b- |m> -> |m-1>`, for `m >= 1`.
fn lower(a: f64, m: usize) -> f64 {
    if m % 2 == 1 {
        (2.0 * (((m - 1) / 2) as f64 + a)).sqrt()
    } else {
        (2.0 * (((m - 2) / 2) as f64 + 1.0)).sqrt()
    }
}

pub fn build_bplus(p: &ParaboseParams) -> OperatorMatrix {
    OperatorMatrix::from_real_fn(p.trunc, |r, c| if r == c + 1 { raise(p.a, c) } else { 0.0 })
}

pub fn build_bminus(p: &ParaboseParams) -> OperatorMatrix {
    OperatorMatrix::from_real_fn(p.trunc, |r, c| if c == r + 1 { lower(p.a, c) } else { 0.0 })
}

/// Residuals of the osp(1|2) relations and the anticommutator action.
#[derive(Debug, Clone, PartialEq)]
pub struct Osp12Report {
    /// `max |([{b-,b+}, b+] - 2b+)_{rc}|` over `r, c < trunc - 2`.
    pub raise_relation: f64,
    /// `max |([{b-,b+}, b-] + 2b-)_{rc}|` over `r, c < trunc - 2`.
    pub lower_relation: f64,
    /// `max |({b-,b+} - 2(n+a))_{rc}|` over `r, c < trunc - 1`.
    pub anticommutator_action: f64,
    /// Largest entry magnitude of `2b+-` on the interior block.
    pub scale: f64,
    /// Both relation residuals over the whole truncated matrix.
    pub full_matrix: f64,
}

impl Osp12Report {
    /// Interior relation residuals relative to `scale`.
    pub fn relative_relation_residual(&self) -> f64 {
        self.raise_relation.max(self.lower_relation) / self.scale
    }
}

fn block_amax(m: &DMatrix<f64>, size: usize) -> f64 {
    m.view((0, 0), (size, size)).amax()
}

pub fn verify_osp12(p: &ParaboseParams) -> Osp12Report {
    let bp = build_bplus(p).real();
    let bm = build_bminus(p).real();
    let anti = anticommutator(&bm, &bp);
    let r_plus = commutator(&anti, &bp) - &bp * 2.0;
    let r_minus = commutator(&anti, &bm) + &bm * 2.0;
    let interior = p.interior();
    let diag = DMatrix::from_fn(p.trunc, p.trunc, |r, c| if r == c { 2.0 * (r as f64 + p.a) } else { 0.0 });
    Osp12Report {
        raise_relation: block_amax(&r_plus, interior),
        lower_relation: block_amax(&r_minus, interior),
        anticommutator_action: block_amax(&(&anti - diag), p.trunc - 1),
        scale: 2.0 * block_amax(&bp, interior),
        full_matrix: r_plus.amax().max(r_minus.amax()),
    }
}

/// `H = {b-, b+}/2` restricted to indices `< trunc - 1`, diagonal entries.
pub fn hamiltonian_interior_spectrum(p: &ParaboseParams) -> Vec<f64> {
    let anti = anticommutator(&build_bminus(p).real(), &build_bplus(p).real());
    (0..p.trunc - 1).map(|n| 0.5 * anti[(n, n)]).collect()
}

/// Off-diagonals of the Jacobi matrix of `q`: `c_{2n} = sqrt(n+a)`,
/// `c_{2n+1} = sqrt(n+1)`.
pub fn jacobi_coefficients(a: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|m| if m % 2 == 0 { ((m / 2) as f64 + a).sqrt() } else { ((m / 2) as f64 + 1.0).sqrt() })
        .collect()
}

/// `max |(b+ + b-)/sqrt2 - J| / max |J|` where `J` is the tridiagonal
/// matrix of [`jacobi_coefficients`].
pub fn jacobi_action_check(p: &ParaboseParams) -> f64 {
    let q = (build_bplus(p).real() + build_bminus(p).real()) * std::f64::consts::FRAC_1_SQRT_2;
    let c = jacobi_coefficients(p.a, p.trunc - 1);
    let jac = DMatrix::from_fn(p.trunc, p.trunc, |r, s| {
        if r == s + 1 {
            c[s]
        } else if s == r + 1 {
            c[r]
        } else {
            0.0
        }
    });
    (q - &jac).amax() / jac.amax()
}

/// `Psi^(a)_n(x)`:
///
/// ```text
/// Psi_{2n}(x)   = (-1)^n sqrt(n!/G(n+a))   |x|^{a-1/2} e^{-x^2/2} L_n^{(a-1)}(x^2)
/// Psi_{2n+1}(x) = (-1)^n sqrt(n!/G(n+a+1)) |x|^{a-1/2} e^{-x^2/2} x L_n^{(a)}(x^2)
/// ```
///
/// At `x = 0` even levels are `0` for `a > 1/2`, finite for `a = 1/2` and
/// `+-inf` for `a < 1/2`; odd levels are `0`.
pub fn psi(n: u32, a: f64, x: f64) -> Result<f64> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::InvalidParameter(format!("a must be positive, got {a}")));
    }
    if !x.is_finite() {
        return Err(Error::NotFinite(x));
    }
    let half = n / 2;
    let hf = f64::from(half);
    let sign = if half.is_multiple_of(2) { 1.0 } else { -1.0 };
    let t = x * x;
    let gauss = (-0.5 * t).exp();
    if n.is_multiple_of(2) {
        let pref = (ln_gamma_signed(hf + 1.0)? / ln_gamma_signed(hf + a)?).sqrt()?.value();
        let power = x.abs().powf(a - 0.5);
        Ok(sign * pref * power * gauss * laguerre(half, a - 1.0, t)?)
    } else {
        let pref = (ln_gamma_signed(hf + 1.0)? / ln_gamma_signed(hf + a + 1.0)?).sqrt()?.value();
        let power = x.abs().powf(a + 0.5).copysign(x);
        Ok(sign * pref * power * gauss * laguerre(half, a, t)?)
    }
}

/// `(2^{n/2} sqrt(n!) pi^{1/4})^{-1} H_n(x) e^{-x^2/2}`.
pub fn psi_hermite(n: u32, x: f64) -> f64 {
    let nf = f64::from(n);
    let log_norm = 0.5 * nf * std::f64::consts::LN_2
        + 0.5 * libm::lgamma(nf + 1.0)
        + 0.25 * std::f64::consts::PI.ln();
    hermite(n, x) * (-0.5 * x * x - log_norm).exp()
}

/// A level of the parabose oscillator as a callable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParaboseWavefunction {
    pub n: u32,
    pub a: f64,
}

impl ParaboseWavefunction {
    pub fn new(n: u32, a: f64) -> Result<Self> {
        psi(n, a, 1.0)?;
        Ok(Self { n, a })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        psi(self.n, self.a, x)
    }
}

/// `|x Psi_n - c_{n-1} Psi_{n-1} - c_n Psi_{n+1}|` at a single point.
pub fn recurrence_residual(n: u32, a: f64, x: f64) -> Result<f64> {
    let c = jacobi_coefficients(a, n as usize + 1);
    let below = if n == 0 { 0.0 } else { c[n as usize - 1] * psi(n - 1, a, x)? };
    let above = c[n as usize] * psi(n + 1, a, x)?;
    Ok((x * psi(n, a, x)? - below - above).abs())
}

pub const GRAM_HALF_WIDTH: f64 = 12.0;
pub const GRAM_TOLERANCE: f64 = 1e-10;

/// `G[m][n] = int Psi_m Psi_n dx` over `[-12, 12]` for `m, n <= max_level`,
/// integrating `[-12, 0]` and `[0, 12]` separately.
pub fn gram_matrix(a: f64, max_level: u32) -> Result<DMatrix<f64>> {
    let size = max_level as usize + 1;
    let pairs: Vec<(usize, usize)> = (0..size).flat_map(|m| (m..size).map(move |n| (m, n))).collect();
    let integrand = |x: f64, out: &mut [f64]| {
        let vals: Vec<f64> = (0..size as u32).map(|n| psi(n, a, x).unwrap_or(f64::NAN)).collect();
        for (slot, &(m, n)) in out.iter_mut().zip(&pairs) {
            *slot = vals[m] * vals[n];
        }
    };
    let mut g = DMatrix::<f64>::zeros(size, size);
    for (lo, hi) in [(-GRAM_HALF_WIDTH, 0.0), (0.0, GRAM_HALF_WIDTH)] {
        let r = integrate(integrand, lo, hi, pairs.len(), 0.5 * GRAM_TOLERANCE, 4000)?;
        for (&(m, n), v) in pairs.iter().zip(&r.values) {
            g[(m, n)] += v;
            if m != n {
                g[(n, m)] += v;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(ParaboseParams::new(0.0, 10).is_err());
        assert!(ParaboseParams::new(1.0, 1).is_err());
        assert!(ParaboseParams::new(f64::NAN, 10).is_err());
        assert_eq!(ParaboseParams::new(0.3, 5).unwrap().interior(), 3);
    }

    #[test]
    fn ladder_shape() {
        let p = ParaboseParams::new(0.7, 8).unwrap();
        let bp = build_bplus(&p).real();
        let bm = build_bminus(&p).real();
        assert_eq!(bp.transpose(), bm);
        assert!(bm.column(0).iter().all(|v| *v == 0.0));
        assert!((bp[(1, 0)] - (1.4f64).sqrt()).abs() < 1e-15);
        assert!((bp[(2, 1)] - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn half_reduces_to_boson() {
        let p = ParaboseParams::new(0.5, 12).unwrap();
        let bp = build_bplus(&p).real();
        for n in 0..11 {
            assert!((bp[(n + 1, n)] - ((n + 1) as f64).sqrt()).abs() < 1e-14);
        }
        let c = jacobi_coefficients(0.5, 11);
        for (n, cn) in c.iter().enumerate() {
            assert!((cn - ((n + 1) as f64 / 2.0).sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn osp12_interior_and_edge() {
        let r = verify_osp12(&ParaboseParams::new(1.0, 10).unwrap());
        assert!(r.raise_relation < 1e-12 && r.lower_relation < 1e-12);
        assert!(r.anticommutator_action < 1e-12);
        assert!(r.full_matrix >= 1.0);
        let spec = hamiltonian_interior_spectrum(&ParaboseParams::new(0.3, 20).unwrap());
        for (n, e) in spec.iter().enumerate() {
            assert!((e - (n as f64 + 0.3)).abs() < 1e-12);
        }
    }

    #[test]
    fn jacobi_matches_ladders() {
        let p = ParaboseParams::new(2.5, 30).unwrap();
        assert!(jacobi_action_check(&p) < 1e-15);
        let q = (build_bplus(&p).real() + build_bminus(&p).real()) * std::f64::consts::FRAC_1_SQRT_2;
        assert!((q[(1, 0)] - 2.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn psi_ground_state_and_hermite() {
        let x: f64 = 0.83;
        let want = std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp();
        assert!((psi(0, 0.5, x).unwrap() - want).abs() < 1e-15);
        for n in 0..8 {
            for &x in &[-3.1, -0.4, 0.0, 0.25, 1.7] {
                assert!((psi(n, 0.5, x).unwrap() - psi_hermite(n, x)).abs() < 1e-13, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn psi_at_origin() {
        assert_eq!(psi(0, 2.0, 0.0).unwrap(), 0.0);
        assert_eq!(psi(1, 0.3, 0.0).unwrap(), 0.0);
        assert_eq!(psi(0, 0.3, 0.0).unwrap(), f64::INFINITY);
        assert_eq!(psi(2, 0.3, 0.0).unwrap(), f64::NEG_INFINITY);
        assert!(psi(0, 0.5, 0.0).unwrap().is_finite());
    }

    #[test]
    fn recurrence() {
        for &a in &[0.3, 1.0, 2.0] {
            for n in 0..10 {
                for &x in &[-2.2, -0.6, 0.4, 1.3, 3.0] {
                    assert!(recurrence_residual(n, a, x).unwrap() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn gram_small() {
        let g = gram_matrix(1.0, 3).unwrap();
        let dev = (g - DMatrix::<f64>::identity(4, 4)).amax();
        assert!(dev < 1e-9, "{dev}");
    }
}
