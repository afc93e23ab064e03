//! The finite oscillator built on `V_j`: position, momentum and Hamiltonian,
//! the closed-form position spectrum, its eigenvector matrix `U`, and the
//! discrete wavefunctions `Phi_n(q_k) = U[n, j+k]`.
//!
//! Columns of every eigenvector object are ordered by ascending `q_k`, i.e.
//! column `c` carries the label `k = -j + c`. Rows are indexed by `n = j+m`.
//!
//! Wavefunction values come from two independent routes that are kept side
//! by side: the entries of `U` built from orthonormal Hahn functions of
//! degree `s = |k| - 1/2` in the variable `n/2`, and the explicit dual Hahn
//! form written in the position variable `q_k` with its own weight/norm
//! prefactor. [`wavefunction_table`] fails if the two disagree.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::algebra::{build_c, build_j0, build_jminus, build_jplus, commutator, OperatorMatrix, RepParams};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::specfun::{hahn_norm_real, hahn_weight, hyp3f2_terminating, orthonormal_table};

/// Relative tolerance for the two wavefunction routes, with an absolute floor.
pub const PATH_RELATIVE_TOLERANCE: f64 = 1e-10;
pub const PATH_ABSOLUTE_FLOOR: f64 = 1e-12;

const EIGEN_EPS: f64 = 1e-15;
const EIGEN_MAX_ITER: usize = 10_000;

/// `q = (J+ + J-)/2`.
pub fn build_position(params: &RepParams) -> OperatorMatrix {
    let m = (build_jplus(params).into_matrix() + build_jminus(params).into_matrix()) * Complex64::from(0.5);
    OperatorMatrix::from_matrix(m)
}

/// `p = i (J+ - J-)/2`.
pub fn build_momentum(params: &RepParams) -> OperatorMatrix {
    let m = (build_jplus(params).into_matrix() - build_jminus(params).into_matrix()) * Complex64::new(0.0, 0.5);
    OperatorMatrix::from_matrix(m)
}

/// `H = J0 + C/2`, diagonal with entries `m + j + 1/2`.
pub fn build_hamiltonian(params: &RepParams) -> OperatorMatrix {
    let m = build_j0(params).into_matrix() + build_c(params).into_matrix() * Complex64::from(0.5);
    OperatorMatrix::from_matrix(m)
}

/// Off-diagonal entries `M_0 .. M_{2j-1}` of `2q`:
/// `sqrt((k+1)(2j-k))` for odd `k`, `sqrt((k+2a+2)(2j-k+2a+1))` for even `k`.
pub fn offdiagonal_m(params: &RepParams) -> Vec<f64> {
    let two_j = params.two_j() as f64;
    let a = params.alpha();
    (0..params.two_j())
        .map(|k| {
            let kf = k as f64;
            if k % 2 == 1 {
                ((kf + 1.0) * (two_j - kf)).sqrt()
            } else {
                ((kf + 2.0 * a + 2.0) * (two_j - kf + 2.0 * a + 1.0)).sqrt()
            }
        })
        .collect()
}

/// `2q` as a real symmetric tridiagonal matrix assembled from [`offdiagonal_m`].
pub fn twice_position_tridiagonal(params: &RepParams) -> DMatrix<f64> {
    let m = offdiagonal_m(params);
    let dim = params.dim();
    DMatrix::from_fn(dim, dim, |r, c| {
        if r + 1 == c {
            m[r]
        } else if c + 1 == r {
            m[c]
        } else {
            0.0
        }
    })
}

/// Residuals `||[H,q] + i p||_F` and `||[H,p] - i q||_F`.
pub fn heisenberg_residuals(params: &RepParams) -> (f64, f64) {
    let h = build_hamiltonian(params);
    let q = build_position(params);
    let p = build_momentum(params);
    let i = Complex64::new(0.0, 1.0);
    let r1 = (commutator(h.matrix(), q.matrix()) + p.matrix() * i).norm();
    let r2 = (commutator(h.matrix(), p.matrix()) - q.matrix() * i).norm();
    (r1, r2)
}

/// The `2j+1` position eigenvalues `q_{+-k} = +-(alpha + k + 1/2)`, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionSpectrum {
    pub params: RepParams,
    /// `k = -j, ..., j`, in the same order as `eigenvalues`.
    pub labels: Vec<HalfInt>,
    pub eigenvalues: Vec<f64>,
}

impl PositionSpectrum {
    /// `q_k` for a label `k` with `|k| <= j`.
    pub fn q_of(params: &RepParams, k: HalfInt) -> f64 {
        let mag = params.alpha() + k.abs().to_f64() + 0.5;
        if k.twice() < 0 {
            -mag
        } else {
            mag
        }
    }

    /// Distance between the two eigenvalues closest to zero, `2 alpha + 2`.
    pub fn middle_gap(&self) -> f64 {
        let mid = self.eigenvalues.len() / 2;
        self.eigenvalues[mid] - self.eigenvalues[mid - 1]
    }
}

pub fn position_spectrum_closed_form(params: &RepParams) -> PositionSpectrum {
    let labels: Vec<HalfInt> = (0..params.dim()).map(|c| params.m_of_index(c)).collect();
    let eigenvalues = labels.iter().map(|&k| PositionSpectrum::q_of(params, k)).collect();
    PositionSpectrum { params: *params, labels, eigenvalues }
}

fn sorted_symmetric_eigen(m: DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let eig = SymmetricEigen::try_new(m, EIGEN_EPS, EIGEN_MAX_ITER)
        .ok_or_else(|| Error::Eigensolver("symmetric eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Eigenvalues of `2q` from a dense symmetric eigensolver, ascending.
pub fn twice_position_spectrum_numeric(params: &RepParams) -> Result<Vec<f64>> {
    let q2 = build_position(params).real() * 2.0;
    sorted_symmetric_eigen(q2).map(|(v, _)| v)
}

/// Eigenvalues of the Hermitian momentum operator, ascending.
pub fn momentum_spectrum_numeric(params: &RepParams) -> Result<Vec<f64>> {
    let p = build_momentum(params).into_matrix();
    let eig = SymmetricEigen::try_new(p, EIGEN_EPS, EIGEN_MAX_ITER)
        .ok_or_else(|| Error::Eigensolver("Hermitian eigensolver did not converge".into()))?;
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Orthogonal matrix whose column `j+k` is the normalized eigenvector of
/// `q` for `q_k`, expressed in the basis `|j,m>` (row `j+m`).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvectorMatrix {
    pub params: RepParams,
    pub u: DMatrix<f64>,
}

impl EigenvectorMatrix {
    /// `max |U U^T - I|` and `max |U^T U - I|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let dim = self.u.nrows();
        let id = DMatrix::<f64>::identity(dim, dim);
        let a = (&self.u * self.u.transpose() - &id).amax();
        let b = (self.u.transpose() * &self.u - &id).amax();
        a.max(b)
    }

    /// `||2q u_k - 2 q_k u_k||_2` for every column.
    pub fn eigen_residuals(&self) -> Vec<f64> {
        let q2 = twice_position_tridiagonal(&self.params);
        let spectrum = position_spectrum_closed_form(&self.params);
        (0..self.u.ncols())
            .map(|c| {
                let col: DVector<f64> = self.u.column(c).into_owned();
                (&q2 * &col - &col * (2.0 * spectrum.eigenvalues[c])).norm()
            })
            .collect()
    }
}

/// `U` from orthonormal Hahn functions:
///
/// ```text
/// U[2r,   j-s-1/2] =  U[2r,   j+s+1/2] =  (-1)^r / sqrt2 * Qt_s(r; a,   a+1, j-1/2)
/// U[2r+1, j-s-1/2] = -U[2r+1, j+s+1/2] = -(-1)^r / sqrt2 * Qt_s(r; a+1, a,   j-1/2)
/// ```
pub fn eigenvector_matrix(params: &RepParams) -> Result<EigenvectorMatrix> {
    let a = params.alpha();
    let big_n = params.hahn_support();
    let nn = big_n as usize;
    let even = orthonormal_table(a, a + 1.0, big_n)?;
    let odd = orthonormal_table(a + 1.0, a, big_n)?;
    let dim = params.dim();
    let mut u = DMatrix::<f64>::zeros(dim, dim);
    for r in 0..=nn {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 } * std::f64::consts::FRAC_1_SQRT_2;
        for s in 0..=nn {
            let (left, right) = (nn - s, nn + 1 + s);
            let e = sign * even[s][r];
            u[(2 * r, left)] = e;
            u[(2 * r, right)] = e;
            let o = sign * odd[s][r];
            u[(2 * r + 1, left)] = -o;
            u[(2 * r + 1, right)] = o;
        }
    }
    Ok(EigenvectorMatrix { params: *params, u })
}

/// Eigenvectors of `2q` from the dense eigensolver, columns ascending in
/// eigenvalue and each sign-aligned with the matching column of `reference`.
pub fn eigenvector_matrix_numeric(params: &RepParams, reference: &EigenvectorMatrix) -> Result<EigenvectorMatrix> {
    let (_, mut vectors) = sorted_symmetric_eigen(twice_position_tridiagonal(params))?;
    for c in 0..vectors.ncols() {
        if vectors.column(c).dot(&reference.u.column(c)) < 0.0 {
            vectors.column_mut(c).neg_mut();
        }
    }
    Ok(EigenvectorMatrix { params: *params, u: vectors })
}

/// `Phi_n(q_k)` from the explicit dual Hahn form, for level `n = j+m` and
/// column `c = j+k`.
///
/// With `s = |k| - 1/2` and `r = floor(n/2)`:
///
/// ```text
/// Phi_{2r}(q_k)   = (-1)^r/sqrt2 sqrt(w(r; a, a+1, N) / h(q_k-a-1; a, a+1, N))
///                   3F2(-q_k+a+1, q_k+a+1, -r; a+1, -N; 1)
/// Phi_{2r+1}(q_k) = (-1)^r/sqrt2 sqrt(w(r; a+1, a, N) / h(q_k-a-1; a+1, a, N))
///                   3F2(-q_k+a+1, q_k+a+1, -r; a+2, -N; 1)
/// ```
///
/// for `q_k > 0`; even levels are even in `q`, odd levels odd. The first
/// upper parameter is passed as the exact integer `-s`.
pub fn wavefunction_direct(params: &RepParams, n: usize, c: usize) -> Result<f64> {
    let dim = params.dim();
    if n >= dim || c >= dim {
        return Err(Error::Domain(format!("level {n} or column {c} outside 0..{dim}")));
    }
    let a = params.alpha();
    let big_n = params.hahn_support();
    let k = params.m_of_index(c);
    let s = (k.abs() - HalfInt::HALF).to_int().expect("k is a half-integer") as u32;
    let q = PositionSpectrum::q_of(params, k).abs();
    let r = (n / 2) as u32;
    let odd = n % 2 == 1;
    let (wa, wb, lower) = if odd { (a + 1.0, a, a + 2.0) } else { (a, a + 1.0, a + 1.0) };

    let w = hahn_weight(r, wa, wb, big_n)?;
    let h = hahn_norm_real(q - a - 1.0, wa, wb, big_n)?;
    let series = hyp3f2_terminating(-f64::from(s), q + a + 1.0, -f64::from(r), lower, -f64::from(big_n))?;
    let sign = if r.is_multiple_of(2) { 1.0 } else { -1.0 };
    let value = sign * std::f64::consts::FRAC_1_SQRT_2 * (w / h).sqrt()?.value() * series;
    Ok(if odd && k.twice() < 0 { -value } else { value })
}

/// Both wavefunction routes tabulated on the position spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionTable {
    pub params: RepParams,
    pub spectrum: PositionSpectrum,
    /// `values[n][c] = U[n, c]`.
    pub values: Vec<Vec<f64>>,
    /// The explicit dual Hahn route, same layout.
    pub direct: Vec<Vec<f64>>,
}

fn paths_agree(a: f64, b: f64) -> bool {
    (a - b).abs() <= (PATH_RELATIVE_TOLERANCE * b.abs()).max(PATH_ABSOLUTE_FLOOR)
}

impl WavefunctionTable {
    /// `(q_k, Phi_n(q_k))` pairs for level `n`.
    pub fn level(&self, n: usize) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.spectrum.eigenvalues.iter().copied().zip(self.values[n].iter().copied())
    }

    /// Largest `|U - direct| / max(|direct|, floor/rel)` over the table, i.e.
    /// a value `<= 1e-10` means the routes agree within tolerance.
    pub fn max_path_discrepancy(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .zip(self.direct.iter().flatten())
            .map(|(a, b)| (a - b).abs() / (b.abs().max(PATH_ABSOLUTE_FLOOR / PATH_RELATIVE_TOLERANCE)))
            .fold(0.0, f64::max)
    }

    /// `max_n |sum_k Phi_n(q_k)^2 - 1|`.
    pub fn norm_residual(&self) -> f64 {
        self.values
            .iter()
            .map(|row| (row.iter().map(|v| v * v).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

pub fn wavefunction_table(params: &RepParams) -> Result<WavefunctionTable> {
    let u = eigenvector_matrix(params)?;
    let dim = params.dim();
    let values: Vec<Vec<f64>> = (0..dim).map(|n| u.u.row(n).iter().copied().collect()).collect();
    let direct = (0..dim)
        .map(|n| (0..dim).map(|c| wavefunction_direct(params, n, c)).collect::<Result<Vec<f64>>>())
        .collect::<Result<Vec<_>>>()?;
    for n in 0..dim {
        for c in 0..dim {
            if !paths_agree(values[n][c], direct[n][c]) {
                return Err(Error::PathDisagreement { level: n, column: c, matrix: values[n][c], direct: direct[n][c] });
            }
        }
    }
    Ok(WavefunctionTable { params: *params, spectrum: position_spectrum_closed_form(params), values, direct })
}
