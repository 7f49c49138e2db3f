//! Direct evaluation of S(k,x,theta) = sum over x < n <= 2x of
//! Lambda(n) e(k alpha n^theta), with deterministic reduction.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::kahan::{tree_reduce_complex, ComplexSum};
use crate::mangoldt::{base_primes, block_ranges, isqrt, lambda_in_segment, IntegerRange, MAX_N};

/// Above this phase magnitude (in cycles) the phase is computed in
/// double-double before reduction mod 1.
pub const PHASE_DD_THRESHOLD: f64 = (1u64 << 20) as f64;

/// Parameters (x, k, alpha, theta) of S(k,x,theta).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumParams {
    pub x: f64,
    pub k: u64,
    pub alpha: f64,
    pub theta: f64,
}

impl SumParams {
    /// Standard constructor; rejects alpha = 0.
    pub fn new(x: f64, k: u64, alpha: f64, theta: f64) -> Result<Self> {
        if alpha == 0.0 {
            return Err(Error::Domain(
                "alpha = 0 requires degenerate-test mode".into(),
            ));
        }
        Self::validate(x, k, alpha, theta)
    }

    /// Degenerate-test constructor: alpha = 0 permitted, so the sum
    /// collapses to psi(2x) - psi(x).
    pub fn degenerate(x: f64, k: u64, theta: f64) -> Result<Self> {
        Self::validate(x, k, 0.0, theta)
    }

    fn validate(x: f64, k: u64, alpha: f64, theta: f64) -> Result<Self> {
        if !(x >= 2.0) {
            return Err(Error::Domain(format!("x = {x} must be >= 2")));
        }
        if !(theta > 0.0 && theta < 1.0) {
            return Err(Error::Domain(format!("theta = {theta} must lie in (0,1)")));
        }
        if k < 1 {
            return Err(Error::Domain("k must be a positive integer".into()));
        }
        if !alpha.is_finite() || !x.is_finite() {
            return Err(Error::Domain("parameters must be finite".into()));
        }
        Ok(Self { x, k, alpha, theta })
    }

    /// k*alpha as a double-double (exact product).
    fn k_alpha(&self) -> Dd {
        Dd::prod(self.k as f64, self.alpha)
    }
}

/// e(r) for r in cycles, r reduced to [-1/2, 1/2]. Evaluated through |r|
/// with an explicit sign flip so that negating r conjugates the result
/// bitwise.
#[inline]
fn cis_cycles(r: f64) -> Complex64 {
    let (s, c) = (std::f64::consts::TAU * r.abs()).sin_cos();
    Complex64::new(c, if r.is_sign_negative() { -s } else { s })
}

/// Fractional part of k*alpha*n^theta in [-1/2, 1/2], double-double path.
fn phase_frac_dd(n: u64, params: &SumParams) -> f64 {
    let ln_n = Dd::from_f64(n as f64).ln();
    let pow = ln_n.mul_f64(params.theta).exp();
    let m = pow.mul(params.k_alpha());
    let r = m.add_f64(-m.hi.round());
    let rf = r.to_f64();
    rf - rf.round()
}

/// e(k alpha n^theta). |result| = 1 to unit roundoff; the phase is
/// reduced mod 1 before trigonometric evaluation, in double-double
/// precision once its magnitude exceeds 2^20 cycles.
pub fn phase(n: u64, params: &SumParams) -> Complex64 {
    if params.alpha == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let ka = params.k as f64 * params.alpha;
    let m = ka * (n as f64).powf(params.theta);
    let r = if m.abs() > PHASE_DD_THRESHOLD {
        phase_frac_dd(n, params)
    } else {
        m - m.round()
    };
    cis_cycles(r)
}

/// The summation range (x, 2x] under floor semantics:
/// n runs from floor(x)+1 to floor(2x).
pub fn sum_range(params: &SumParams) -> Result<IntegerRange> {
    let hi = (2.0 * params.x).floor();
    if hi > MAX_N as f64 {
        return Err(Error::Resource(format!(
            "2x = {hi} exceeds the 2^50 summation cap"
        )));
    }
    IntegerRange::new(params.x.floor() as u64, hi as u64)
}

/// S(k,x,theta) by direct summation. Compensated accumulation per fixed
/// BLOCK-aligned slice, fixed pairwise-tree reduction over slices: the
/// result is bit-identical across thread counts and sieving granularity.
pub fn direct_sum(params: &SumParams) -> Result<Complex64> {
    let range = sum_range(params)?;
    let base = base_primes(isqrt(range.hi()));
    let blocks = block_ranges(range);
    let partials: Vec<Complex64> = blocks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut acc = ComplexSum::new();
            for e in lambda_in_segment(lo, hi, &base) {
                let z = phase(e.n, params);
                acc.add(Complex64::new(z.re * e.lambda, z.im * e.lambda));
            }
            acc.value()
        })
        .collect();
    Ok(tree_reduce_complex(&partials))
}
