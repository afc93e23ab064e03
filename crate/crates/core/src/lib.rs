//! A finite oscillator built on the deformed algebra u(2)_alpha, its dual
//! Hahn wavefunctions, and the parabose oscillator it tends to as `j` grows.
//!
//! - [`specfun`]: Pochhammer/Gamma helpers, exact terminating series, Hahn
//!   functions, Laguerre and Hermite polynomials.
//! - [`algebra`]: the generators `C, P, J0, J+, J-` on `V_j` and checks of
//!   their defining relations.
//! - [`oscillator`]: position, momentum and Hamiltonian, the position
//!   spectrum, the eigenvector matrix and wavefunction tables.
//! - [`parabose`]: truncated `b+-`, osp(1|2) checks and `Psi^(a)_n(x)`.
//! - [`limits`]: the `j -> infinity` and `alpha = -1/2` reductions.
//! - [`report`]: named residual checks used by the command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod error;
pub mod halfint;
pub mod limits;
pub mod oscillator;
pub mod parabose;
pub mod quadrature;
pub mod report;
pub mod specfun;

pub use algebra::{OperatorMatrix, RepParams};
pub use error::{Error, Result};
pub use halfint::HalfInt;
pub use limits::{LimitScan, ThresholdFixture};
pub use oscillator::{EigenvectorMatrix, PositionSpectrum, WavefunctionTable};
pub use parabose::{ParaboseParams, ParaboseWavefunction};
pub use report::Check;
pub use specfun::HahnSpec;
