use hahn_oscillator::specfun::{
    hahn_norm, hahn_q, hahn_weight, hyp3f2_terminating, laguerre, orthogonality_defect, orthonormal_table,
    pochhammer, sum_terminating, HahnSpec,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

const PARAMS: [f64; 5] = [-0.5, -0.3, 0.0, 1.0, 2.5];

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Explicit-product sum over rationals `p/q` given as `(p, q)` pairs.
fn rational_series(upper: &[(i64, i64)], lower: &[(i64, i64)], terms: usize) -> f64 {
    let mut total = BigRational::zero();
    let mut t = BigRational::one();
    for k in 0..terms {
        total += &t;
        if k + 1 == terms {
            break;
        }
        let kk = rational(k as i64, 1);
        for &(p, q) in upper {
            t *= rational(p, q) + &kk;
        }
        for &(p, q) in lower {
            t /= rational(p, q) + &kk;
        }
        t /= rational(k as i64 + 1, 1);
    }
    total.to_f64().unwrap()
}

#[test]
fn hahn_orthogonality_grid() {
    for &support in &[1u32, 5, 20, 60] {
        for &a in &PARAMS {
            for &b in &PARAMS {
                let d = orthogonality_defect(a, b, support).unwrap();
                assert!(d <= 1e-12, "alpha={a} beta={b} N={support}: {d:e}");
            }
        }
    }
}

#[test]
fn dual_orthogonality() {
    for &(a, b, support) in &[(0.5, 1.5, 12u32), (-0.7, 0.3, 33), (1.0, 2.0, 40)] {
        let t = orthonormal_table(a, b, support).unwrap();
        let size = support as usize + 1;
        for x in 0..size {
            for y in 0..size {
                let s: f64 = (0..size).map(|n| t[n][x] * t[n][y]).sum();
                let want = if x == y { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-12, "x={x} y={y}");
            }
        }
    }
}

#[test]
fn norms_match_weighted_sums_small_support() {
    // plain f64 sums are trustworthy only while cancellation is mild
    for &(a, b) in &[(0.0, 0.0), (0.5, 1.5), (2.5, -0.3)] {
        for support in 1..=6u32 {
            for n in 0..=support {
                let spec = HahnSpec::new(n, a, b, support).unwrap();
                let sum: f64 = (0..=support)
                    .map(|x| hahn_weight(x, a, b, support).unwrap().value() * hahn_q(&spec, x).unwrap().powi(2))
                    .sum();
                let h = hahn_norm(n, a, b, support).unwrap().value();
                assert!((sum / h - 1.0).abs() < 1e-12, "a={a} b={b} N={support} n={n}");
            }
        }
    }
}

#[test]
fn laguerre_three_term_recurrence() {
    // (n+1) L_{n+1} = (2n+1+a-t) L_n - (n+a) L_{n-1}
    for &(a, t) in &[(0.3, 0.9), (1.7, 4.4), (-0.5, 2.25)] {
        for n in 1..12u32 {
            let nf = f64::from(n);
            let lhs = (nf + 1.0) * laguerre(n + 1, a, t).unwrap();
            let rhs = (2.0 * nf + 1.0 + a - t) * laguerre(n, a, t).unwrap() - (nf + a) * laguerre(n - 1, a, t).unwrap();
            assert!((lhs - rhs).abs() <= 1e-11 * lhs.abs().max(1.0), "a={a} t={t} n={n}");
        }
    }
}

proptest! {
    #[test]
    fn exact_kernel_matches_rational_oracle(
        n in 0u32..12,
        x in 0u32..12,
        extra in 0u32..10,
        a_num in -3i64..12,
        b_num in -3i64..12,
    ) {
        let support = n.max(x) + extra;
        // quarter-integer alpha, beta > -1
        let (alpha, beta) = (a_num as f64 / 4.0, b_num as f64 / 4.0);
        let got = hyp3f2_terminating(
            -f64::from(n),
            f64::from(n) + alpha + beta + 1.0,
            -f64::from(x),
            alpha + 1.0,
            -f64::from(support),
        )
        .unwrap();
        let upper = [(-(n as i64), 1), (4 * n as i64 + a_num + b_num + 4, 4), (-(x as i64), 1)];
        let lower = [(a_num + 4, 4), (-(support as i64), 1)];
        let want = rational_series(&upper, &lower, n.min(x) as usize + 1);
        prop_assert!((got - want).abs() <= 4.0 * f64::EPSILON * want.abs().max(f64::MIN_POSITIVE));
    }

    #[test]
    fn series_symmetric_in_parameter_order(n in 0u32..10, a in -0.9f64..4.0, c in 0.1f64..6.0, support in 10u32..20) {
        let nf = -f64::from(n);
        let s1 = sum_terminating(&[nf, a, c], &[a + 1.5, -f64::from(support)], 1.0).unwrap().value;
        let s2 = sum_terminating(&[c, nf, a], &[-f64::from(support), a + 1.5], 1.0).unwrap().value;
        prop_assert_eq!(s1, s2);
    }

    #[test]
    fn hahn_q_at_origin_is_one(n in 0u32..20, a in -0.99f64..5.0, b in -0.99f64..5.0, extra in 0u32..10) {
        let spec = HahnSpec::new(n, a, b, n + extra).unwrap();
        prop_assert_eq!(hahn_q(&spec, 0).unwrap(), 1.0);
    }

    #[test]
    fn pochhammer_shift(a in -5.0f64..5.0, k in 0u32..15) {
        // (a)_{k+1} = (a)_k (a+k)
        let lhs = pochhammer(a, k + 1);
        let rhs = pochhammer(a, k) * (a + f64::from(k));
        prop_assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs().max(1e-300));
    }
}
