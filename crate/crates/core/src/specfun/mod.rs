//! Scalar special-function kernels: Pochhammer symbols and log-gamma
//! binomials, terminating hypergeometric sums, the Hahn family with weights
//! and norms, and the Laguerre/Hermite polynomials.
//!
//! Everything here is a pure function of its arguments.

mod classical;
mod gamma;
mod hahn;
mod hypergeometric;

pub use classical::{hermite, laguerre};
pub use gamma::{ln_gamma_signed, log_binomial_real, log_pochhammer, pochhammer, LogWeight};
pub use hahn::{
    dual_hahn_lambda, hahn_norm, hahn_norm_real, hahn_orthonormal, hahn_q, hahn_weight, orthogonality_defect, orthonormal_table,
    HahnSpec,
};
pub use hypergeometric::{
    hyp1f1_terminating, hyp2f1_arg2_terminating, hyp3f2_terminating, sum_terminating,
    sum_terminating_compensated, terminating_length, SeriesValue,
};
