//! Limit and reduction checks connecting the finite oscillator to the
//! parabose oscillator (`j -> infinity`) and to the symmetric Krawtchouk
//! functions (`alpha = -1/2`).

use crate::algebra::RepParams;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::oscillator::{wavefunction_direct, PositionSpectrum};
use crate::parabose::psi;
use crate::specfun::{
    hahn_norm_real, hahn_weight, hyp2f1_arg2_terminating, hyp3f2_terminating, laguerre, ln_gamma_signed,
    log_binomial_real, log_pochhammer,
};

/// Per-step growth allowed in a "non-increasing" error sequence.
pub const MONOTONE_SLACK: f64 = 1.05;

/// Largest `|x'|` compared in a parabose-limit scan.
pub const LIMIT_X_MAX: f64 = 2.0;

/// `+-0.25, +-0.5, ..., +-2`.
pub fn default_x_grid() -> Vec<f64> {
    let pos: Vec<f64> = (1..=8).map(|i| 0.25 * f64::from(i)).collect();
    pos.iter().rev().map(|x| -x).chain(pos.iter().copied()).collect()
}

/// `2j in {21, 61, 201, 401}`.
pub fn default_j_sequence() -> Vec<HalfInt> {
    [21, 61, 201, 401].into_iter().map(HalfInt::from_twice).collect()
}

/// `true` if each entry is at most `slack` times the one before it.
pub fn is_non_increasing(errors: &[f64], slack: f64) -> bool {
    errors.windows(2).all(|w| w[1] <= slack * w[0])
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitScan {
    pub n: u32,
    pub alpha: f64,
    pub x_grid: Vec<f64>,
    /// The representations actually scanned (levels `n > 2j` are dropped).
    pub j_sequence: Vec<HalfInt>,
    /// `j` values skipped because the level does not exist there.
    pub skipped: Vec<HalfInt>,
    pub errors: Vec<f64>,
}

impl LimitScan {
    pub fn final_error(&self) -> Option<f64> {
        self.errors.last().copied()
    }

    pub fn is_non_increasing(&self) -> bool {
        is_non_increasing(&self.errors, MONOTONE_SLACK)
    }
}

/// Column `j+k` whose `q_k` is nearest to `sqrt(j) x`.
pub fn nearest_column(params: &RepParams, x: f64) -> usize {
    let big_n = i64::from(params.hahn_support());
    let target = x.abs() * params.j().to_f64().sqrt() - params.alpha() - 1.0;
    let s = (target.round() as i64).clamp(0, big_n);
    let s = usize::try_from(s).expect("clamped to 0..=N");
    let nn = big_n as usize;
    if x < 0.0 {
        nn - s
    } else {
        nn + 1 + s
    }
}

/// Max over the grid of `|j^{1/4} Phi_n(q_k) - Psi^(alpha+1)_n(q_k / sqrt j)|`,
/// with `q_k` the spectrum point nearest `sqrt(j) x` and `|q_k / sqrt j| <= 2`.
pub fn limit_error(params: &RepParams, n: u32, x_grid: &[f64]) -> Result<f64> {
    let sqrt_j = params.j().to_f64().sqrt();
    let mut worst: f64 = 0.0;
    for &x in x_grid {
        let c = nearest_column(params, x);
        let q = PositionSpectrum::q_of(params, params.m_of_index(c));
        let x_exact = q / sqrt_j;
        if x_exact.abs() > LIMIT_X_MAX {
            continue;
        }
        let phi = wavefunction_direct(params, n as usize, c)?;
        let target = psi(n, params.alpha() + 1.0, x_exact)?;
        worst = worst.max((sqrt_j.sqrt() * phi - target).abs());
    }
    Ok(worst)
}

pub fn parabose_limit_scan(n: u32, alpha: f64, x_grid: &[f64], j_sequence: &[HalfInt]) -> Result<LimitScan> {
    let mut scan = LimitScan {
        n,
        alpha,
        x_grid: x_grid.to_vec(),
        j_sequence: Vec::new(),
        skipped: Vec::new(),
        errors: Vec::new(),
    };
    for &j in j_sequence {
        let params = RepParams::new(j, alpha)?;
        if i64::from(n) > params.two_j() {
            scan.skipped.push(j);
            continue;
        }
        scan.errors.push(limit_error(&params, n, x_grid)?);
        scan.j_sequence.push(j);
    }
    Ok(scan)
}

/// Both sides of the even and odd `alpha = -1/2` reductions,
///
/// ```text
/// 3F2(-q+1/2, q+1/2, -n; 1/2, -j+1/2) = (-1)^n C(2j,2n)/C(j-1/2,n) 2F1(-2n, -j-q; -2j; 2)
/// 3F2(-q+1/2, q+1/2, -n; 3/2, -j+1/2) = -(-1)^n/(2q) C(2j,2n+1)/C(j-1/2,n) 2F1(-2n-1, -j-q; -2j; 2)
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionSides {
    pub even_lhs: f64,
    pub even_rhs: f64,
    pub odd_lhs: f64,
    pub odd_rhs: f64,
}

impl ReductionSides {
    pub fn residuals(&self) -> (f64, f64) {
        ((self.even_lhs - self.even_rhs).abs(), (self.odd_lhs - self.odd_rhs).abs())
    }
}

fn check_reduction_args(n: u32, q: HalfInt, j: HalfInt) -> Result<()> {
    if j.twice() <= 0 || j.is_integer() {
        return Err(Error::InvalidParameter(format!("two_j must be odd and positive, got {}", j.twice())));
    }
    if q.is_integer() || q.twice() <= 0 || q > j {
        return Err(Error::Domain(format!("q = {q} outside 1/2..={j}")));
    }
    let big_n = (j - HalfInt::HALF).to_int().expect("j is a half-integer");
    if i64::from(n) > big_n {
        return Err(Error::Domain(format!("n = {n} exceeds j - 1/2 = {big_n}")));
    }
    Ok(())
}

pub fn krawtchouk_reduction_sides(n: u32, q: HalfInt, j: HalfInt) -> Result<ReductionSides> {
    check_reduction_args(n, q, j)?;
    let (qf, jf, nf) = (q.to_f64(), j.to_f64(), f64::from(n));
    let two_j = jf * 2.0;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let denom = log_binomial_real(jf - 0.5, n)?;

    let even_lhs = hyp3f2_terminating(-qf + 0.5, qf + 0.5, -nf, 0.5, -jf + 0.5)?;
    let even_ratio = (log_binomial_real(two_j, 2 * n)? / denom).value();
    let even_rhs = sign * even_ratio * hyp2f1_arg2_terminating(-2.0 * nf, -jf - qf, -two_j)?;

    let odd_lhs = hyp3f2_terminating(-qf + 0.5, qf + 0.5, -nf, 1.5, -jf + 0.5)?;
    let odd_ratio = (log_binomial_real(two_j, 2 * n + 1)? / denom).value();
    let odd_rhs = -sign / (2.0 * qf) * odd_ratio * hyp2f1_arg2_terminating(-2.0 * nf - 1.0, -jf - qf, -two_j)?;

    Ok(ReductionSides { even_lhs, even_rhs, odd_lhs, odd_rhs })
}

/// Absolute residuals `(even, odd)` of the two reductions.
pub fn krawtchouk_reduction_check(n: u32, q: HalfInt, j: HalfInt) -> Result<(f64, f64)> {
    krawtchouk_reduction_sides(n, q, j).map(|s| s.residuals())
}

/// `Phi_n(q_k)` at `alpha = -1/2` with the `3F2` replaced by its `2F1`
/// reduction; same layout as the oscillator tables.
pub fn krawtchouk_wavefunction(two_j: i64, n: usize, c: usize) -> Result<f64> {
    let params = RepParams::from_two_j(two_j, -0.5)?;
    let dim = params.dim();
    if n >= dim || c >= dim {
        return Err(Error::Domain(format!("level {n} or column {c} outside 0..{dim}")));
    }
    let big_n = params.hahn_support();
    let k = params.m_of_index(c);
    let q = k.abs();
    let qf = q.to_f64();
    let r = (n / 2) as u32;
    let odd = n % 2 == 1;
    let (wa, wb) = if odd { (0.5, -0.5) } else { (-0.5, 0.5) };
    let w = hahn_weight(r, wa, wb, big_n)?;
    let h = hahn_norm_real(qf - 0.5, wa, wb, big_n)?;
    let reduced = krawtchouk_reduction_sides(r, q, params.j())?;
    let series = if odd { reduced.odd_rhs } else { reduced.even_rhs };
    let sign = if r.is_multiple_of(2) { 1.0 } else { -1.0 };
    let value = sign * std::f64::consts::FRAC_1_SQRT_2 * (w / h).sqrt()?.value() * series;
    Ok(if odd && k.twice() < 0 { -value } else { value })
}

/// `|3F2(-sqrt(j)x+a+1, sqrt(j)x+a+1, -n; b, -j+1/2) - n!/(b)_n L_n^{(b-1)}(x^2)|`
/// per `j`, with `b = alpha+1` (even) or `alpha+2` (odd).
pub fn laguerre_limit_check(n: u32, alpha: f64, x: f64, j_sequence: &[HalfInt], odd: bool) -> Result<Vec<f64>> {
    let b = if odd { alpha + 2.0 } else { alpha + 1.0 };
    let nf = f64::from(n);
    let target = (log_pochhammer(1.0, nf)? / log_pochhammer(b, nf)?).value() * laguerre(n, b - 1.0, x * x)?;
    j_sequence
        .iter()
        .map(|&j| {
            let params = RepParams::new(j, alpha)?;
            let root = j.to_f64().sqrt() * x;
            let lower = -(f64::from(params.hahn_support()));
            let value = hyp3f2_terminating(-root + alpha + 1.0, root + alpha + 1.0, -nf, b, lower)?;
            Ok((value - target).abs())
        })
        .collect()
}

/// `|sqrt(j) w(n; a, a+1, N) / (2 h(sqrt(j)x - a - 1; a, a+1, N))
///  - (a+1)_n / (n! G(a+1)) x^{2a+1} e^{-x^2}|` per `j`.
pub fn weight_norm_limit_check(n: u32, alpha: f64, x: f64, j_sequence: &[HalfInt]) -> Result<Vec<f64>> {
    let nf = f64::from(n);
    let target = (log_pochhammer(alpha + 1.0, nf)? / (log_pochhammer(1.0, nf)? * ln_gamma_signed(alpha + 1.0)?))
        .value()
        * x.powf(2.0 * alpha + 1.0)
        * (-x * x).exp();
    j_sequence
        .iter()
        .map(|&j| {
            let params = RepParams::new(j, alpha)?;
            let big_n = params.hahn_support();
            let sqrt_j = j.to_f64().sqrt();
            let w = hahn_weight(n, alpha, alpha + 1.0, big_n)?;
            let h = hahn_norm_real(sqrt_j * x - alpha - 1.0, alpha, alpha + 1.0, big_n)?;
            Ok((sqrt_j * 0.5 * (w / h).value() - target).abs())
        })
        .collect()
}

/// Frozen per-`(n, alpha, two_j_max)` thresholds for the parabose limit.
///
/// Text format, one record per line, `#` starts a comment:
///
/// ```text
/// version 1
/// <n> <alpha> <two_j_max> <threshold>
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdFixture {
    pub entries: Vec<ThresholdEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdEntry {
    pub n: u32,
    pub alpha: f64,
    pub two_j_max: i64,
    pub threshold: f64,
}

pub const FIXTURE_VERSION: u32 = 1;

const EMBEDDED_FIXTURE: &str = include_str!("../fixtures/limit_thresholds.txt");

impl ThresholdFixture {
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED_FIXTURE).expect("embedded fixture parses")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut version = None;
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let fail = |msg: String| Error::Fixture { line: line_no, msg };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields[0] == "version" {
                let v: u32 = fields
                    .get(1)
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| fail("malformed version line".into()))?;
                if v != FIXTURE_VERSION {
                    return Err(fail(format!("unsupported version {v}")));
                }
                version = Some(v);
                continue;
            }
            if version.is_none() {
                return Err(fail("record before version line".into()));
            }
            if fields.len() != 4 {
                return Err(fail(format!("expected 4 fields, found {}", fields.len())));
            }
            let n = fields[0].parse().map_err(|_| fail(format!("bad n {:?}", fields[0])))?;
            let alpha: f64 = fields[1].parse().map_err(|_| fail(format!("bad alpha {:?}", fields[1])))?;
            let two_j_max = fields[2].parse().map_err(|_| fail(format!("bad two_j_max {:?}", fields[2])))?;
            let threshold: f64 = fields[3].parse().map_err(|_| fail(format!("bad threshold {:?}", fields[3])))?;
            if !(threshold > 0.0 && threshold.is_finite()) {
                return Err(fail(format!("threshold must be positive, got {threshold}")));
            }
            entries.push(ThresholdEntry { n, alpha, two_j_max, threshold });
        }
        if version.is_none() {
            return Err(Error::Fixture { line: 0, msg: "missing version line".into() });
        }
        Ok(Self { entries })
    }

    pub fn lookup(&self, n: u32, alpha: f64, two_j_max: i64) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.n == n && e.two_j_max == two_j_max && (e.alpha - alpha).abs() < 1e-12)
            .map(|e| e.threshold)
    }

    pub fn render(&self) -> String {
        let mut out = format!("version {FIXTURE_VERSION}\n# n alpha two_j_max threshold\n");
        for e in &self.entries {
            out.push_str(&format!("{} {} {} {:.3e}\n", e.n, e.alpha, e.two_j_max, e.threshold));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hi(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn grid_shapes() {
        let g = default_x_grid();
        assert_eq!(g.len(), 16);
        assert_eq!(g[0], -2.0);
        assert_eq!(g[15], 2.0);
        assert!(is_non_increasing(&[1.0, 1.04, 0.5], 1.05));
        assert!(!is_non_increasing(&[1.0, 1.06], 1.05));
    }

    #[test]
    fn nearest_column_snaps() {
        let p = RepParams::from_two_j(21, 0.0).unwrap();
        let sqrt_j = (10.5f64).sqrt();
        let c = nearest_column(&p, 1.0);
        let q = PositionSpectrum::q_of(&p, p.m_of_index(c));
        assert!((q - sqrt_j).abs() <= 0.5);
        assert_eq!(nearest_column(&p, -1.0), p.dim() - 1 - c);
    }

    #[test]
    fn reduction_degree_zero() {
        let (e, o) = krawtchouk_reduction_check(0, hi(1), hi(13)).unwrap();
        assert!(e < 1e-13 && o < 1e-13, "{e} {o}");
        let s = krawtchouk_reduction_sides(0, hi(13), hi(13)).unwrap();
        assert_eq!(s.even_lhs, 1.0);
        assert!((s.odd_rhs - 1.0).abs() < 1e-14);
    }

    #[test]
    fn reduction_bad_args() {
        assert!(krawtchouk_reduction_check(7, hi(1), hi(13)).is_err());
        assert!(krawtchouk_reduction_check(0, hi(15), hi(13)).is_err());
        assert!(krawtchouk_reduction_check(0, hi(2), hi(13)).is_err());
    }

    #[test]
    fn laguerre_limit_trivial_degree() {
        let js = default_j_sequence();
        for e in laguerre_limit_check(0, 0.3, 1.1, &js, false).unwrap() {
            assert_eq!(e, 0.0);
        }
    }

    #[test]
    fn fixture_round_trip() {
        let text = "version 1\n# comment\n0 -0.7 401 1.5e-3\n3 1 401 2e-2 # trailing\n";
        let f = ThresholdFixture::parse(text).unwrap();
        assert_eq!(f.lookup(0, -0.7, 401), Some(1.5e-3));
        assert_eq!(f.lookup(3, 1.0, 401), Some(2e-2));
        assert_eq!(f.lookup(3, 1.0, 201), None);
        assert_eq!(ThresholdFixture::parse(&f.render()).unwrap(), f);
        assert!(ThresholdFixture::parse("0 0 1 1").is_err());
        assert!(ThresholdFixture::parse("version 2\n").is_err());
        assert!(ThresholdFixture::parse("version 1\n0 0 1 -1\n").is_err());
    }
}
