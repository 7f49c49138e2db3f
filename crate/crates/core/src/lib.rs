//! Prime exponential sums S(k,x,theta) = sum_{x<n<=2x} Lambda(n) e(k alpha n^theta):
//! direct segmented-sieve evaluation, the truncated-explicit-formula
//! decomposition over Riemann zeta zeros, oscillatory-integral quadrature
//! with derivative-test certificates, and the bound envelopes of the
//! known estimates.

pub mod bounds;
pub mod dd;
pub mod error;
pub mod explicit;
pub mod kahan;
pub mod mangoldt;
pub mod oscillatory;
pub mod phase_sum;
pub mod zeros;

pub use error::{Error, Result};
pub use explicit::{approximate_sum, compare, error_scale, ComparisonReport, ExplicitApprox};
pub use mangoldt::{chebyshev_psi, lambda_single, sieve_lambda, IntegerRange, LambdaEntry};
pub use oscillatory::{
    derivative_test_bound, main_term_integral, zero_term_integral, BoundCertificate,
    OscIntegralSpec, PhaseFunction, Regime,
};
pub use phase_sum::{direct_sum, phase, SumParams};
pub use zeros::{load_zeros, max_rvm_residual, parse_zeros, rvm_estimate, ZeroTable};

pub use num_complex::Complex64;
