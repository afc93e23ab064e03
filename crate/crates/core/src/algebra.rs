//! The representation `V_j` of the deformed algebra `u(2)_alpha`.
//!
//! Generators `C`, `P`, `J0`, `J+`, `J-` are built as dense matrices in the
//! ordered basis `|j,-j>, |j,-j+1>, ..., |j,j>`: row/column `r` holds
//! `m = -j + r`. Only half-integer `j` (odd `2j`) and `alpha > -1` give a
//! representation; anything else is rejected at construction.
//!
//! The defining relations checked by [`verify_defining_relations`] are
//!
//! ```text
//! [P, J0] = 0,  {P, J+-} = 0,  P^2 = 1,
//! [J0, J+-] = +-J+-,
//! [J+, J-] = 2 J0 - (2 alpha + 1)^2 P - (2 alpha + 1) C P,
//! ```
//!
//! with `C` central. At `alpha = -1/2` the deformation disappears and the
//! ladder entries are the ordinary su(2) ones.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;

/// `(j, alpha)` labelling a representation `V_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepParams {
    j: HalfInt,
    alpha: f64,
}

impl RepParams {
    pub fn new(j: HalfInt, alpha: f64) -> Result<Self> {
        if j.twice() <= 0 || j.is_integer() {
            return Err(Error::InvalidParameter(format!("two_j must be odd and positive, got {}", j.twice())));
        }
        if !alpha.is_finite() {
            return Err(Error::NotFinite(alpha));
        }
        if alpha <= -1.0 {
            return Err(Error::InvalidParameter(format!("alpha must exceed -1, got {alpha}")));
        }
        Ok(RepParams { j, alpha })
    }

    pub fn from_two_j(two_j: i64, alpha: f64) -> Result<Self> {
        RepParams::new(HalfInt::from_twice(two_j), alpha)
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn two_j(&self) -> i64 {
        self.j.twice()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `2j + 1`.
    pub fn dim(&self) -> usize {
        (self.j.twice() + 1) as usize
    }

    /// `N = j - 1/2`, the support size of the Hahn functions in the eigenvectors.
    pub fn hahn_support(&self) -> u32 {
        ((self.j.twice() - 1) / 2) as u32
    }

    /// `m` of basis index `r`.
    pub fn m_of_index(&self, r: usize) -> HalfInt {
        -self.j + HalfInt::from_int(r as i64)
    }

    /// Whether `j + m` is even for basis index `r`.
    fn j_plus_m_even(&self, r: usize) -> bool {
        let sum = self.j + self.m_of_index(r);
        sum.to_int().map(|v| v % 2 == 0).expect("j + m is an integer")
    }
}

/// A dense complex square matrix acting on the ordered basis of `V_j`
/// (or on a truncated `l^2(Z_+)` for the parabose operators).
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix(DMatrix<Complex64>);

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        OperatorMatrix(DMatrix::zeros(dim, dim))
    }

    pub fn from_real_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        OperatorMatrix(DMatrix::from_fn(dim, dim, |r, c| Complex64::new(f(r, c), 0.0)))
    }

    pub fn from_matrix(m: DMatrix<Complex64>) -> Self {
        assert!(m.is_square(), "operator matrices are square");
        OperatorMatrix(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    /// Real parts, for operators whose entries are real by construction.
    pub fn real(&self) -> DMatrix<f64> {
        self.0.map(|z| z.re)
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|z| z.im == 0.0)
    }

    pub fn transpose(&self) -> OperatorMatrix {
        OperatorMatrix(self.0.transpose())
    }
}

fn diag(params: &RepParams, f: impl Fn(usize) -> f64) -> OperatorMatrix {
    OperatorMatrix::from_real_fn(params.dim(), |r, c| if r == c { f(r) } else { 0.0 })
}

/// `C |j,m> = (2j+1) |j,m>`.
pub fn build_c(params: &RepParams) -> OperatorMatrix {
    let d = params.dim() as f64;
    diag(params, |_| d)
}

/// `P |j,m> = (-1)^(j+m) |j,m>`.
pub fn build_p(params: &RepParams) -> OperatorMatrix {
    diag(params, |r| if params.j_plus_m_even(r) { 1.0 } else { -1.0 })
}

/// `J0 |j,m> = m |j,m>`.
pub fn build_j0(params: &RepParams) -> OperatorMatrix {
    diag(params, |r| params.m_of_index(r).to_f64())
}

/// Coefficient of `J+ |j,m>` on `|j,m+1>`, for basis index `r = j + m`.
pub fn jplus_coefficient(params: &RepParams, r: usize) -> f64 {
    let j = params.j.to_f64();
    let m = params.m_of_index(r).to_f64();
    let a = params.alpha;
    if params.j_plus_m_even(r) {
        ((j - m + 2.0 * a + 1.0) * (j + m + 2.0 * a + 2.0)).sqrt()
    } else {
        ((j - m) * (j + m + 1.0)).sqrt()
    }
}

/// Coefficient of `J- |j,m>` on `|j,m-1>`, for basis index `r = j + m`.
pub fn jminus_coefficient(params: &RepParams, r: usize) -> f64 {
    let j = params.j.to_f64();
    let m = params.m_of_index(r).to_f64();
    let a = params.alpha;
    if params.j_plus_m_even(r) {
        ((j + m) * (j - m + 1.0)).sqrt()
    } else {
        ((j + m + 2.0 * a + 1.0) * (j - m + 2.0 * a + 2.0)).sqrt()
    }
}

pub fn build_jplus(params: &RepParams) -> OperatorMatrix {
    OperatorMatrix::from_real_fn(params.dim(), |r, c| if r == c + 1 { jplus_coefficient(params, c) } else { 0.0 })
}

pub fn build_jminus(params: &RepParams) -> OperatorMatrix {
    OperatorMatrix::from_real_fn(params.dim(), |r, c| if r + 1 == c { jminus_coefficient(params, c) } else { 0.0 })
}

/// All five generators of `V_j`.
#[derive(Debug, Clone)]
pub struct Generators {
    pub c: OperatorMatrix,
    pub p: OperatorMatrix,
    pub j0: OperatorMatrix,
    pub jplus: OperatorMatrix,
    pub jminus: OperatorMatrix,
}

impl Generators {
    pub fn new(params: &RepParams) -> Self {
        Generators {
            c: build_c(params),
            p: build_p(params),
            j0: build_j0(params),
            jplus: build_jplus(params),
            jminus: build_jminus(params),
        }
    }
}

pub(crate) fn commutator<T: nalgebra::Scalar + num_traits::Zero + num_traits::One + nalgebra::ClosedAddAssign + nalgebra::ClosedSubAssign + nalgebra::ClosedMulAssign>(
    a: &DMatrix<T>,
    b: &DMatrix<T>,
) -> DMatrix<T> {
    a * b - b * a
}

pub(crate) fn anticommutator<T: nalgebra::Scalar + num_traits::Zero + num_traits::One + nalgebra::ClosedAddAssign + nalgebra::ClosedSubAssign + nalgebra::ClosedMulAssign>(
    a: &DMatrix<T>,
    b: &DMatrix<T>,
) -> DMatrix<T> {
    a * b + b * a
}

/// Frobenius norms of the defining-relation residuals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationResiduals {
    /// `[P, J0]`
    pub parity_j0: f64,
    /// `{P, J+}`
    pub parity_jplus: f64,
    /// `{P, J-}`
    pub parity_jminus: f64,
    /// `P^2 - I`
    pub parity_square: f64,
    /// max of `[J0, J+] - J+` and `[J0, J-] + J-`
    pub j0_ladder: f64,
    /// `[J+, J-] - (2 J0 - (2a+1)^2 P - (2a+1) C P)`
    pub ladder_bracket: f64,
}

impl RelationResiduals {
    pub fn entries(&self) -> [(&'static str, f64); 6] {
        [
            ("[P,J0]", self.parity_j0),
            ("{P,J+}", self.parity_jplus),
            ("{P,J-}", self.parity_jminus),
            ("P^2-I", self.parity_square),
            ("[J0,J+-]-+J+-", self.j0_ladder),
            ("[J+,J-]-deformed", self.ladder_bracket),
        ]
    }

    pub fn max(&self) -> f64 {
        self.entries().iter().map(|e| e.1).fold(0.0, f64::max)
    }
}

/// Tolerance applied to relation residuals: `1e-12 * dim`.
pub fn relation_tolerance(dim: usize) -> f64 {
    1e-12 * dim as f64
}

pub fn verify_defining_relations(params: &RepParams) -> RelationResiduals {
    let g = Generators::new(params);
    let (c, p, j0, jp, jm) = (g.c.matrix(), g.p.matrix(), g.j0.matrix(), g.jplus.matrix(), g.jminus.matrix());
    let id = DMatrix::<Complex64>::identity(params.dim(), params.dim());
    let s = Complex64::from(2.0 * params.alpha + 1.0);

    let deformed = j0 * Complex64::from(2.0) - p * (s * s) - (c * p) * s;
    RelationResiduals {
        parity_j0: commutator(p, j0).norm(),
        parity_jplus: anticommutator(p, jp).norm(),
        parity_jminus: anticommutator(p, jm).norm(),
        parity_square: (p * p - &id).norm(),
        j0_ladder: (commutator(j0, jp) - jp).norm().max((commutator(j0, jm) + jm).norm()),
        ladder_bracket: (commutator(jp, jm) - deformed).norm(),
    }
}

/// Coefficients of `(J+)^k |j,-j>` on `|j,-j+k>` for `k = 1..=2j`.
pub fn raising_chain(params: &RepParams) -> Vec<f64> {
    let jp = build_jplus(params);
    let mut v = nalgebra::DVector::<Complex64>::zeros(params.dim());
    v[0] = Complex64::from(1.0);
    (1..params.dim())
        .map(|k| {
            v = jp.matrix() * &v;
            v[k].re
        })
        .collect()
}

/// Coefficients of `(J-)^k |j,j>` on `|j,j-k>` for `k = 1..=2j`.
pub fn lowering_chain(params: &RepParams) -> Vec<f64> {
    let jm = build_jminus(params);
    let dim = params.dim();
    let mut v = nalgebra::DVector::<Complex64>::zeros(dim);
    v[dim - 1] = Complex64::from(1.0);
    (1..dim)
        .map(|k| {
            v = jm.matrix() * &v;
            v[dim - 1 - k].re
        })
        .collect()
}

/// True when every `(J+)^k |j,-j>` and `(J-)^k |j,j>` is nonzero, which is
/// the irreducibility criterion for `V_j`.
pub fn verify_irreducibility(params: &RepParams) -> bool {
    raising_chain(params).iter().chain(lowering_chain(params).iter()).all(|c| *c != 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(two_j: i64, alpha: f64) -> RepParams {
        RepParams::from_two_j(two_j, alpha).unwrap()
    }

    #[test]
    fn rejects_integer_j_and_small_alpha() {
        assert!(RepParams::from_two_j(4, 0.0).is_err());
        assert!(RepParams::from_two_j(0, 0.0).is_err());
        assert!(RepParams::from_two_j(-3, 0.0).is_err());
        assert!(RepParams::from_two_j(3, -1.0).is_err());
        assert!(RepParams::from_two_j(3, f64::INFINITY).is_err());
    }

    #[test]
    fn diagonal_generators() {
        let p = params(1, 0.3);
        assert_eq!(build_c(&p).real(), DMatrix::from_diagonal_element(2, 2, 2.0));
        assert_eq!(build_c(&params(3, 0.3)).real(), DMatrix::from_diagonal_element(4, 4, 4.0));
        assert_eq!(build_p(&p).real(), DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]));
        assert_eq!(build_j0(&p).real(), DMatrix::from_row_slice(2, 2, &[-0.5, 0.0, 0.0, 0.5]));

        let big = params(9, 1.2);
        let pm = build_p(&big).real();
        assert_eq!(pm.trace(), 0.0);
        assert_eq!(&pm * &pm, DMatrix::identity(10, 10));
        let j0 = build_j0(&big).real();
        assert_eq!(j0.trace(), 0.0);
        for r in 1..10 {
            assert_eq!(j0[(r, r)] - j0[(r - 1, r - 1)], 1.0);
        }
    }

    #[test]
    fn spin_half_ladder_entry() {
        let a = 0.8;
        let jp = build_jplus(&params(1, a));
        // even branch with j - m = 1, j + m = 0: sqrt((2a+2)(2a+2))
        let want = 2.0 * a + 2.0;
        assert!((jp.get(1, 0).re - want).abs() < 1e-15);
    }

    #[test]
    fn undeformed_entries_at_minus_half() {
        for two_j in [1, 3, 9, 21] {
            let p = params(two_j, -0.5);
            let j = two_j as f64 / 2.0;
            for r in 0..two_j as usize {
                let m = -j + r as f64;
                let su2 = ((j - m) * (j + m + 1.0)).sqrt();
                assert!((jplus_coefficient(&p, r) - su2).abs() < 1e-13);
                let m1 = m + 1.0;
                let su2m = ((j + m1) * (j - m1 + 1.0)).sqrt();
                assert!((jminus_coefficient(&p, r + 1) - su2m).abs() < 1e-13);
            }
            let res = verify_defining_relations(&p);
            // [J+, J-] = 2 J0 exactly up to rounding
            let g = Generators::new(&p);
            let br = commutator(g.jplus.matrix(), g.jminus.matrix()) - g.j0.matrix() * Complex64::from(2.0);
            assert!(br.norm() <= relation_tolerance(p.dim()));
            assert!(res.max() <= relation_tolerance(p.dim()));
        }
    }

    #[test]
    fn edges_are_annihilated() {
        let p = params(7, 2.3);
        assert_eq!(jplus_coefficient(&p, 7), 0.0);
        assert_eq!(jminus_coefficient(&p, 0), 0.0);
    }

    #[test]
    fn transpose_structure() {
        let p = params(15, -0.3);
        let g = Generators::new(&p);
        assert_eq!(g.jplus.transpose(), g.jminus);
        assert_eq!(g.p.transpose(), g.p);
        assert_eq!(g.j0.transpose(), g.j0);
        assert!(g.jplus.is_real() && g.jminus.is_real());
    }

    #[test]
    fn spin_half_bracket_by_hand() {
        let a = 0.37;
        let p = params(1, a);
        let g = Generators::new(&p);
        let br = commutator(g.jplus.matrix(), g.jminus.matrix()).map(|z| z.re);
        let v = (2.0 * a + 2.0) * (2.0 * a + 2.0);
        assert!((br[(0, 0)] + v).abs() < 1e-14 && (br[(1, 1)] - v).abs() < 1e-14);
        // 2 J0 - (2a+1)^2 P - (2a+1) (2j+1) P at m = +1/2 (P = -1)
        let s = 2.0 * a + 1.0;
        let rhs_top = 2.0 * 0.5 + s * s + s * 2.0;
        assert!((rhs_top - v).abs() < 1e-14);
        assert!(verify_defining_relations(&p).max() < 1e-13);
    }

    #[test]
    fn irreducibility() {
        assert!(verify_irreducibility(&params(65, 1.0)));
        let chain = raising_chain(&params(3, 0.0));
        assert_eq!(chain.len(), 3);
        assert!(chain.iter().all(|c| *c > 0.0));
        // (J+)|3/2,-3/2> = sqrt((3+1)(2)) , then sqrt(2*2), then sqrt((1+1)(3+2))
        let want1 = (4.0f64 * 2.0).sqrt();
        assert!((chain[0] - want1).abs() < 1e-14);

        let near = params(5, -1.0 + 1e-12);
        assert!(verify_irreducibility(&near));
        assert!(raising_chain(&near)[0] < 1e-5);
    }
}
