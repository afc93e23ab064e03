#![allow(clippy::excessive_precision)]

//! Globally adaptive Gauss-Kronrod (7/15) quadrature for vector-valued
//! integrands. Nodes are interior to every subinterval, so endpoint
//! singularities are never evaluated.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone)]
pub struct QuadratureResult {
    pub values: Vec<f64>,
    pub error_estimate: f64,
    pub intervals: usize,
}

struct Segment {
    a: f64,
    b: f64,
    values: Vec<f64>,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F>(f: &F, a: f64, b: f64, dim: usize) -> Segment
where
    F: Fn(f64, &mut [f64]),
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = vec![0.0; dim];
    let mut gauss = vec![0.0; dim];
    let mut buf = vec![0.0; dim];
    let mut add = |x: f64, wk: f64, wg: f64, kronrod: &mut [f64], gauss: &mut [f64]| {
        f(x, &mut buf);
        for i in 0..dim {
            kronrod[i] += wk * buf[i];
            gauss[i] += wg * buf[i];
        }
    };
    add(centre, WGK[7], WG[3], &mut kronrod, &mut gauss);
    for (k, &node) in XGK.iter().take(7).enumerate() {
        let wg = if k % 2 == 1 { WG[k / 2] } else { 0.0 };
        add(centre - half * node, WGK[k], wg, &mut kronrod, &mut gauss);
        add(centre + half * node, WGK[k], wg, &mut kronrod, &mut gauss);
    }
    let error = kronrod.iter().zip(&gauss).map(|(k, g)| (half * (k - g)).abs()).fold(0.0, f64::max);
    Segment { a, b, values: kronrod.iter().map(|v| v * half).collect(), error }
}

/// Integrates the `dim` components written by `f(x, out)` over `[a, b]`
/// until the summed error estimate (max over components) drops below `tol`.
pub fn integrate<F>(f: F, a: f64, b: f64, dim: usize, tol: f64, max_intervals: usize) -> Result<QuadratureResult>
where
    F: Fn(f64, &mut [f64]),
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParameter(format!("bad integration interval [{a}, {b}]")));
    }
    let mut heap = BinaryHeap::new();
    heap.push(gk15(&f, a, b, dim));
    loop {
        let total_error: f64 = heap.iter().map(|s| s.error).sum();
        if total_error <= tol || heap.len() >= max_intervals {
            let mut values = vec![0.0; dim];
            // Sum in a fixed order so results do not depend on heap layout.
            let mut segments: Vec<Segment> = heap.into_vec();
            segments.sort_by(|x, y| x.a.total_cmp(&y.a));
            for s in &segments {
                for (v, sv) in values.iter_mut().zip(&s.values) {
                    *v += sv;
                }
            }
            if total_error > tol {
                return Err(Error::Domain(format!(
                    "quadrature did not reach {tol:e} within {max_intervals} intervals (estimate {total_error:e})"
                )));
            }
            return Ok(QuadratureResult { values, error_estimate: total_error, intervals: segments.len() });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(gk15(&f, worst.a, mid, dim));
        heap.push(gk15(&f, mid, worst.b, dim));
    }
}
