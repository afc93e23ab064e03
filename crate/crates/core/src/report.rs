//! Named residual checks grouped into suites.

use crate::algebra::{relation_tolerance, verify_defining_relations, verify_irreducibility, RepParams};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::limits::{
    default_j_sequence, default_x_grid, krawtchouk_reduction_check, krawtchouk_wavefunction, parabose_limit_scan,
    ThresholdFixture, MONOTONE_SLACK,
};
use crate::oscillator::{
    build_hamiltonian, eigenvector_matrix, heisenberg_residuals, momentum_spectrum_numeric,
    position_spectrum_closed_form, twice_position_spectrum_numeric, wavefunction_table, PATH_RELATIVE_TOLERANCE,
};
use crate::parabose::{
    gram_matrix, hamiltonian_interior_spectrum, jacobi_action_check, psi, psi_hermite, verify_osp12, ParaboseParams,
};
use crate::specfun::orthogonality_defect;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), residual, tolerance }
    }

    /// `false` for NaN residuals.
    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

pub fn first_failure(checks: &[Check]) -> Option<&Check> {
    checks.iter().find(|c| !c.passed())
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Algebra, spectrum, eigenvector and wavefunction checks for one `V_j`.
pub fn representation_checks(params: &RepParams) -> Result<Vec<Check>> {
    let dim = params.dim();
    let tol = relation_tolerance(dim);
    let mut out: Vec<Check> = verify_defining_relations(params)
        .entries()
        .iter()
        .map(|(name, r)| Check::new(format!("relation {name}"), *r, tol))
        .collect();
    out.push(Check::new("irreducible", if verify_irreducibility(params) { 0.0 } else { 1.0 }, 0.0));

    let closed = position_spectrum_closed_form(params);
    let twice: Vec<f64> = closed.eigenvalues.iter().map(|q| 2.0 * q).collect();
    out.push(Check::new("spectrum vs eigensolver", max_abs_diff(&twice_position_spectrum_numeric(params)?, &twice), 1e-10));
    out.push(Check::new("middle gap", (closed.middle_gap() - (2.0 * params.alpha() + 2.0)).abs(), 1e-12));

    let u = eigenvector_matrix(params)?;
    out.push(Check::new("U orthogonal", u.orthogonality_residual(), 1e-12));
    out.push(Check::new("eigen residual", u.eigen_residuals().into_iter().fold(0.0, f64::max), 1e-10));

    match wavefunction_table(params) {
        Ok(t) => {
            out.push(Check::new("dual path", t.max_path_discrepancy(), PATH_RELATIVE_TOLERANCE));
            out.push(Check::new("unit norms", t.norm_residual(), 1e-12));
        }
        Err(Error::PathDisagreement { .. }) => out.push(Check::new("dual path", f64::INFINITY, PATH_RELATIVE_TOLERANCE)),
        Err(e) => return Err(e),
    }

    let (hq, hp) = heisenberg_residuals(params);
    out.push(Check::new("heisenberg [H,q]+ip", hq, tol));
    out.push(Check::new("heisenberg [H,p]-iq", hp, tol));
    let h = build_hamiltonian(params).real();
    let linear = (0..dim).map(|n| (h[(n, n)] - (n as f64 + 0.5)).abs()).fold(0.0, f64::max);
    out.push(Check::new("H spectrum n+1/2", linear, 1e-12));
    out.push(Check::new("p spectrum = q spectrum", max_abs_diff(&momentum_spectrum_numeric(params)?, &closed.eigenvalues), 1e-10));
    Ok(out)
}

/// Both reduction identities over all `(n, q)` at `two_j`, and the
/// `alpha = -1/2` table against its `2F1` form.
pub fn krawtchouk_checks(two_j: i64) -> Result<Vec<Check>> {
    let j = HalfInt::from_twice(two_j);
    let big_n = (two_j - 1) / 2;
    let (mut even, mut odd): (f64, f64) = (0.0, 0.0);
    for n in 0..=big_n as u32 {
        for q_twice in (1..=two_j).step_by(2) {
            let (e, o) = krawtchouk_reduction_check(n, HalfInt::from_twice(q_twice), j)?;
            even = even.max(e);
            odd = odd.max(o);
        }
    }
    let params = RepParams::from_two_j(two_j, -0.5)?;
    let table = wavefunction_table(&params)?;
    let mut table_dev: f64 = 0.0;
    for n in 0..params.dim() {
        for c in 0..params.dim() {
            table_dev = table_dev.max((krawtchouk_wavefunction(two_j, n, c)? - table.values[n][c]).abs());
        }
    }
    Ok(vec![
        Check::new(format!("krawtchouk even 2j={two_j}"), even, 1e-10),
        Check::new(format!("krawtchouk odd 2j={two_j}"), odd, 1e-10),
        Check::new(format!("krawtchouk table 2j={two_j}"), table_dev, 1e-10),
    ])
}

/// osp(1|2) relations, anticommutator action, interior energies and the
/// Jacobi form of `q` for one truncation.
///
/// The relation residuals are measured relative to the largest entry of
/// `2b+-` on the interior block.
pub fn parabose_checks(p: &ParaboseParams) -> Vec<Check> {
    let r = verify_osp12(p);
    let tag = format!("a={} trunc={}", p.a(), p.trunc());
    let energies = hamiltonian_interior_spectrum(p);
    let spec = energies.iter().enumerate().map(|(n, e)| (e - (n as f64 + p.a())).abs()).fold(0.0, f64::max);
    vec![
        Check::new(format!("osp12 relations (relative) {tag}"), r.relative_relation_residual(), 1e-12),
        Check::new(format!("anticommutator action {tag}"), r.anticommutator_action, 1e-12),
        Check::new(format!("H interior spectrum {tag}"), spec, 1e-12),
        Check::new(format!("jacobi form (relative) {tag}"), jacobi_action_check(p), 1e-15),
    ]
}

/// `n` points spaced evenly over `[lo, hi]`, both ends included.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let last = (n - 1) as f64;
    (0..n).map(|i| (lo * (last - i as f64) + hi * i as f64) / last).collect()
}

/// Gram matrix of `Psi^(a)_0 .. Psi^(a)_max_level` against the identity.
pub fn psi_orthonormality_check(a: f64, max_level: u32) -> Result<Check> {
    let g = gram_matrix(a, max_level)?;
    let size = g.nrows();
    let dev = (g - nalgebra::DMatrix::<f64>::identity(size, size)).amax();
    Ok(Check::new(format!("psi gram a={a} n<={max_level}"), dev, 1e-8))
}

/// `Psi^(1/2)_n` against the Hermite form on the 501-point grid over `[-5, 5]`.
pub fn hermite_form_check(max_level: u32) -> Result<Check> {
    let mut worst: f64 = 0.0;
    for x in uniform_grid(-5.0, 5.0, 501) {
        for n in 0..=max_level {
            worst = worst.max((psi(n, 0.5, x)? - psi_hermite(n, x)).abs());
        }
    }
    Ok(Check::new(format!("psi a=1/2 hermite form n<={max_level}"), worst, 1e-12))
}

/// Hahn orthogonality over a grid of `(alpha, beta, N)`.
pub fn hahn_checks(params: &[f64], supports: &[u32]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &support in supports {
        let mut worst: f64 = 0.0;
        for &alpha in params {
            for &beta in params {
                worst = worst.max(orthogonality_defect(alpha, beta, support)?);
            }
        }
        out.push(Check::new(format!("hahn orthogonality N={support}"), worst, 1e-12));
    }
    Ok(out)
}

/// Monotone-decrease and frozen-threshold checks for the parabose limit
/// over the default grid.
pub fn limit_checks(fixture: &ThresholdFixture, levels: &[u32], alphas: &[f64], two_js: &[i64]) -> Result<Vec<Check>> {
    let grid = default_x_grid();
    let js: Vec<HalfInt> = if two_js.is_empty() {
        default_j_sequence()
    } else {
        two_js.iter().map(|&t| HalfInt::from_twice(t)).collect()
    };
    let two_j_max = js.iter().map(|j| j.twice()).max().unwrap_or(0);
    let mut out = Vec::new();
    for &alpha in alphas {
        for &n in levels {
            let scan = parabose_limit_scan(n, alpha, &grid, &js)?;
            let worst_ratio = scan.errors.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
            out.push(Check::new(format!("limit monotone n={n} alpha={alpha}"), worst_ratio, MONOTONE_SLACK));
            let threshold = fixture.lookup(n, alpha, two_j_max).ok_or_else(|| Error::Fixture {
                line: 0,
                msg: format!("no threshold for n={n} alpha={alpha} two_j_max={two_j_max}"),
            })?;
            let last = scan.final_error().unwrap_or(f64::INFINITY);
            out.push(Check::new(format!("limit threshold n={n} alpha={alpha}"), last, threshold));
        }
    }
    Ok(out)
}
