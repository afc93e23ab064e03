//! Terminating generalized hypergeometric series.
//!
//! Every series handled here terminates because one upper parameter is a
//! nonpositive integer `-n`. The Hahn-type sums alternate in sign and their
//! terms grow many orders of magnitude above the final value (at support
//! size 60 the ratio exceeds `1e20`), so rounding each term in `f64`
//! destroys the result no matter how the terms are accumulated. The main
//! kernel therefore runs the term-ratio recurrence exactly: every `f64`
//! parameter is a dyadic rational, so the whole sum is a rational number
//! that can be built with big integers and rounded once.
//!
//! [`sum_terminating_compensated`] is the plain floating-point version of
//! the same recurrence (Neumaier summation). It is accurate only when the
//! terms do not cancel and is kept as a cheap reference path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Result of a terminating series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Number of terms summed, counting the leading `1`.
    pub terms: usize,
}

/// Number of terms of `pFq(upper; lower; z)` before termination, or an error
/// when the series does not terminate or a lower parameter hits a pole first.
pub fn terminating_length(upper: &[f64], lower: &[f64]) -> Result<usize> {
    for &p in upper.iter().chain(lower) {
        if !p.is_finite() {
            return Err(Error::NotFinite(p));
        }
    }
    let degree = upper
        .iter()
        .filter(|p| **p <= 0.0 && p.fract() == 0.0)
        .map(|p| (-p) as usize)
        .min()
        .ok_or(Error::NonTerminating)?;
    // term k+1 divides by (b + k) for k = 0..degree-1
    for (index, &b) in lower.iter().enumerate() {
        if b <= 0.0 && b.fract() == 0.0 {
            let step = (-b) as usize;
            if step < degree {
                return Err(Error::LowerPole { index, step });
            }
        }
    }
    Ok(degree + 1)
}

/// An exact dyadic rational `mantissa / 2^exp`.
#[derive(Debug, Clone)]
struct Dyadic {
    mantissa: BigInt,
    exp: u32,
}

impl Dyadic {
    fn from_f64(x: f64) -> Dyadic {
        debug_assert!(x.is_finite());
        if x == 0.0 {
            return Dyadic { mantissa: BigInt::zero(), exp: 0 };
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & ((1u64 << 52) - 1);
        let (mut mant, mut e) = if biased == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), biased - 1075)
        };
        while mant & 1 == 0 && e < 0 {
            mant >>= 1;
            e += 1;
        }
        let mut mantissa = BigInt::from(mant);
        if negative {
            mantissa = -mantissa;
        }
        if e >= 0 {
            Dyadic { mantissa: mantissa << (e as usize), exp: 0 }
        } else {
            Dyadic { mantissa, exp: (-e) as u32 }
        }
    }

    /// Mantissa rescaled to a common exponent `exp >= self.exp`.
    fn scaled_to(&self, exp: u32) -> BigInt {
        &self.mantissa << ((exp - self.exp) as usize)
    }
}

/// Exact evaluation of `pFq(upper; lower; z)` over `terms` terms, rounded
/// once to the nearest `f64`.
fn sum_exact(upper: &[f64], lower: &[f64], z: f64, terms: usize) -> f64 {
    if terms <= 1 {
        return 1.0;
    }
    let up: Vec<Dyadic> = upper.iter().map(|&p| Dyadic::from_f64(p)).collect();
    let lo: Vec<Dyadic> = lower.iter().map(|&p| Dyadic::from_f64(p)).collect();
    let zd = Dyadic::from_f64(z);
    let scale = up.iter().chain(&lo).chain(std::iter::once(&zd)).map(|d| d.exp).max().unwrap_or(0);

    let up: Vec<BigInt> = up.iter().map(|d| d.scaled_to(scale)).collect();
    let lo: Vec<BigInt> = lo.iter().map(|d| d.scaled_to(scale)).collect();
    let zs = zd.scaled_to(scale);
    let unit = BigInt::one() << (scale as usize);

    // ratio_k = prod(u + k) z / (prod(b + k) (k + 1)); every factor carries
    // one power of 2^scale, leaving (p + 1 - q) of them unbalanced.
    let excess = (up.len() as i64 + 1 - lo.len() as i64) * i64::from(scale);

    // Nested form 1 + r_0 (1 + r_1 (1 + ... r_{K-2})), built from the inside.
    let mut numer = BigInt::one();
    let mut denom = BigInt::one();
    for k in (0..terms - 1).rev() {
        let shift = &unit * BigInt::from(k);
        let mut rn = up.iter().fold(zs.clone(), |acc, u| acc * (u + &shift));
        let mut rd = lo.iter().fold(BigInt::from(k + 1), |acc, b| acc * (b + &shift));
        if excess > 0 {
            rd <<= excess as usize;
        } else if excess < 0 {
            rn <<= (-excess) as usize;
        }
        // (numer/denom) <- 1 + (rn/rd)(numer/denom)
        let new_denom = &denom * &rd;
        numer = &new_denom + rn * numer;
        denom = new_denom;
    }
    BigRational::new_raw(numer, denom).to_f64().unwrap_or(f64::NAN)
}

/// Term-ratio recurrence in `f64` with Neumaier compensated summation.
pub fn sum_terminating_compensated(upper: &[f64], lower: &[f64], z: f64) -> Result<SeriesValue> {
    let terms = terminating_length(upper, lower)?;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut carry = 0.0f64;
    for k in 0..terms - 1 {
        let kf = k as f64;
        let num: f64 = upper.iter().map(|a| a + kf).product();
        let den: f64 = lower.iter().map(|b| b + kf).product();
        term *= num / den * z / (kf + 1.0);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            carry += (sum - t) + term;
        } else {
            carry += (term - t) + sum;
        }
        sum = t;
    }
    Ok(SeriesValue { value: sum + carry, terms })
}

/// Exact terminating `pFq(upper; lower; z)` rounded once to `f64`.
pub fn sum_terminating(upper: &[f64], lower: &[f64], z: f64) -> Result<SeriesValue> {
    let terms = terminating_length(upper, lower)?;
    if !z.is_finite() {
        return Err(Error::NotFinite(z));
    }
    Ok(SeriesValue { value: sum_exact(upper, lower, z, terms), terms })
}

/// Terminating `3F2(a1, a2, a3; b1, b2; 1)`.
pub fn hyp3f2_terminating(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64) -> Result<f64> {
    sum_terminating(&[a1, a2, a3], &[b1, b2], 1.0).map(|s| s.value)
}

/// Terminating `2F1(a1, a2; b; 2)`, the symmetric Krawtchouk building block.
///
/// Termination is keyed on `a1`, which must be a nonpositive integer.
pub fn hyp2f1_arg2_terminating(a1: f64, a2: f64, b: f64) -> Result<f64> {
    if !(a1 <= 0.0 && a1.fract() == 0.0) {
        return Err(Error::NonTerminating);
    }
    sum_terminating(&[a1, a2], &[b], 2.0).map(|s| s.value)
}

/// Terminating `1F1(-n; b; t)`.
pub fn hyp1f1_terminating(n: u32, b: f64, t: f64) -> Result<f64> {
    sum_terminating(&[-f64::from(n)], &[b], t).map(|s| s.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i128>;

    fn q(n: i128, d: i128) -> Q {
        Q::new(n, d)
    }

    /// Plain exact-rational sum over explicit Pochhammer products.
    fn oracle(upper: &[Q], lower: &[Q], z: Q, terms: usize) -> Q {
        let mut total = Q::zero();
        for k in 0..terms {
            let mut t = Q::one();
            for i in 0..k as i128 {
                for u in upper {
                    t *= *u + i;
                }
                for b in lower {
                    t /= *b + i;
                }
                t *= z;
                t /= i + 1;
            }
            total += t;
        }
        total
    }

    fn to_f64(r: Q) -> f64 {
        *r.numer() as f64 / *r.denom() as f64
    }

    #[test]
    fn degree_zero_is_one() {
        assert_eq!(hyp3f2_terminating(0.0, 3.5, -4.0, 1.5, -7.0).unwrap(), 1.0);
        assert_eq!(hyp3f2_terminating(-5.0, 3.5, 0.0, 1.5, -7.0).unwrap(), 1.0);
        assert_eq!(hyp2f1_arg2_terminating(0.0, 2.0, -3.0).unwrap(), 1.0);
    }

    #[test]
    fn three_term_hahn_example() {
        // (-2, 3, -1; 1, -4) with alpha = beta = 0, N = 4
        let got = hyp3f2_terminating(-2.0, 3.0, -1.0, 1.0, -4.0).unwrap();
        let want = oracle(&[q(-2, 1), q(3, 1), q(-1, 1)], &[q(1, 1), q(-4, 1)], q(1, 1), 3);
        assert_eq!(want, q(-1, 2));
        assert!((got - to_f64(want)).abs() < 1e-16);
    }

    #[test]
    fn krawtchouk_building_block() {
        // one-term tail: 1 - 2 (-j-q)/(-2j)
        let (j, qv) = (3.5, 1.5);
        let got = hyp2f1_arg2_terminating(-1.0, -j - qv, -2.0 * j).unwrap();
        assert!((got - (1.0 - (j + qv) / j)).abs() < 1e-15);

        let got = hyp2f1_arg2_terminating(-2.0, -4.0, -6.0).unwrap();
        let want = oracle(&[q(-2, 1), q(-4, 1)], &[q(-6, 1)], q(2, 1), 3);
        assert!((got - to_f64(want)).abs() < 1e-15, "{got} vs {want}");
    }

    #[test]
    fn matches_rational_oracle_on_half_integer_parameters() {
        for n in 0..8i128 {
            for x in 0..8i128 {
                let up = [q(-n, 1), q(2 * n + 3, 2), q(-x, 1)];
                let lo = [q(3, 2), q(-9, 1)];
                let want = to_f64(oracle(&up, &lo, q(1, 1), (n.min(x) + 1) as usize));
                let got = hyp3f2_terminating(-n as f64, (2 * n + 3) as f64 / 2.0, -x as f64, 1.5, -9.0).unwrap();
                assert!((got - want).abs() <= 1e-15 * want.abs().max(1.0), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn term_count_follows_smallest_degree() {
        let s = sum_terminating(&[-7.0, 2.5, -3.0], &[1.5, -10.0], 1.0).unwrap();
        assert_eq!(s.terms, 4);
        let s = sum_terminating(&[-7.0, 2.5, 1.0], &[1.5, -10.0], 1.0).unwrap();
        assert_eq!(s.terms, 8);
    }

    #[test]
    fn error_paths() {
        assert_eq!(hyp3f2_terminating(0.5, 1.5, 2.0, 1.0, 1.0), Err(Error::NonTerminating));
        assert_eq!(
            hyp3f2_terminating(-5.0, 1.0, 1.0, 1.0, -2.0),
            Err(Error::LowerPole { index: 1, step: 2 })
        );
        assert!(hyp3f2_terminating(-2.0, f64::NAN, 1.0, 1.0, 1.0).is_err());
        assert_eq!(hyp2f1_arg2_terminating(0.5, -1.0, 2.0), Err(Error::NonTerminating));
    }

    #[test]
    fn exact_kernel_survives_heavy_cancellation() {
        // Q_30(30; 0, 0, 60) has alternating terms near 1e17 while the sum is O(1e-1).
        let exact = sum_terminating(&[-30.0, 31.0, -30.0], &[1.0, -60.0], 1.0).unwrap().value;
        // i128 overflows on this one, so the oracle runs on BigRational
        let mut total = BigRational::zero();
        let mut t = BigRational::one();
        for k in 0..=30i64 {
            total += &t;
            let kk = BigInt::from(k);
            t = t * BigRational::from(BigInt::from(-30) + &kk)
                * BigRational::from(BigInt::from(31) + &kk)
                * BigRational::from(BigInt::from(-30) + &kk)
                / (BigRational::from(BigInt::from(1) + &kk)
                    * BigRational::from(BigInt::from(-60) + &kk)
                    * BigRational::from(kk + 1));
        }
        assert_eq!(exact, total.to_f64().unwrap());
        let naive = sum_terminating_compensated(&[-30.0, 31.0, -30.0], &[1.0, -60.0], 1.0).unwrap().value;
        assert!((naive - exact).abs() > 1e-6, "float path unexpectedly accurate");
    }

    #[test]
    fn dyadic_conversion_is_exact() {
        for &x in &[0.1, -0.7, 2.5, 1e-300, -3.0, 5e-324, 1.5e300] {
            let d = Dyadic::from_f64(x);
            let r = BigRational::new(d.mantissa.clone(), BigInt::one() << (d.exp as usize));
            assert_eq!(r.to_f64().unwrap(), x);
        }
    }
}
