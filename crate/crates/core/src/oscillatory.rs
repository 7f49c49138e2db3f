//! Oscillatory integrals of the explicit-formula decomposition.
//!
//! Every integral is taken through the substitution u^theta = v:
//!
//!   int_x^{2x} u^{rho-1} e(k alpha u^theta) du
//!     = (1/theta) int_{x^theta}^{(2x)^theta} v^{beta/theta - 1} e(f(v)) dv,
//!   f(v) = k alpha v + (gamma / 2 pi theta) log v.
//!
//! Panels are sized to at most half an oscillation of f (curvature-limited
//! near the stationary point), integrated with 16-node Gauss-Legendre and
//! a one-level refinement error estimate.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kahan::ComplexSum;
use crate::phase_sum::SumParams;

/// Phase f(v) = k alpha v + (gamma / 2 pi theta) log v, in cycles,
/// on [x^theta, (2x)^theta].
#[derive(Clone, Copy, Debug)]
pub struct PhaseFunction {
    pub k_alpha: f64,
    pub gamma: f64,
    pub theta: f64,
    pub lo: f64,
    pub hi: f64,
}

impl PhaseFunction {
    pub fn new(params: &SumParams, gamma: f64) -> Self {
        let lo = params.x.powf(params.theta);
        let hi = (2.0 * params.x).powf(params.theta);
        PhaseFunction {
            k_alpha: params.k as f64 * params.alpha,
            gamma,
            theta: params.theta,
            lo,
            hi,
        }
    }

    #[inline]
    pub fn log_coeff(&self) -> f64 {
        self.gamma / (std::f64::consts::TAU * self.theta)
    }

    #[inline]
    pub fn eval(&self, v: f64) -> f64 {
        self.k_alpha * v + self.log_coeff() * v.ln()
    }

    #[inline]
    pub fn deriv(&self, v: f64) -> f64 {
        self.k_alpha + self.log_coeff() / v
    }

    #[inline]
    pub fn second_deriv(&self, v: f64) -> f64 {
        -self.log_coeff() / (v * v)
    }

    /// v* = -gamma / (2 pi theta k alpha) when f' vanishes inside the
    /// domain; requires gamma and alpha of opposite sign.
    pub fn stationary_point(&self) -> Option<f64> {
        if self.k_alpha == 0.0 || self.gamma == 0.0 {
            return None;
        }
        let v = -self.log_coeff() / self.k_alpha;
        (v >= self.lo && v <= self.hi).then_some(v)
    }
}

/// Integral specification: rho = beta + i gamma against e(k alpha u^theta).
#[derive(Clone, Copy, Debug)]
pub struct OscIntegralSpec {
    pub beta: f64,
    pub gamma: f64,
    pub params: SumParams,
}

impl OscIntegralSpec {
    pub fn new(beta: f64, gamma: f64, params: SumParams) -> Result<Self> {
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::Domain(format!("beta = {beta} must lie in (0,1]")));
        }
        Ok(Self { beta, gamma, params })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    FirstDerivativeTest,
    SecondDerivativeTest,
    Trivial,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::FirstDerivativeTest => write!(f, "first-derivative-test"),
            Regime::SecondDerivativeTest => write!(f, "second-derivative-test"),
            Regime::Trivial => write!(f, "trivial"),
        }
    }
}

/// A priori magnitude bound with the derivative-test regime that
/// produced it.
#[derive(Clone, Copy, Debug)]
pub struct BoundCertificate {
    pub value: f64,
    pub regime: Regime,
}

// 16-node Gauss-Legendre on [-1, 1].
const GL16_NODES: [f64; 8] = [
    0.09501250983763745,
    0.2816035507792589,
    0.45801677765722737,
    0.6178762444026438,
    0.755404408355003,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL16_WEIGHTS: [f64; 8] = [
    0.18945061045506859,
    0.1826034150449236,
    0.16915651939500262,
    0.14959598881657676,
    0.12462897125553403,
    0.09515851168249259,
    0.062253523938647706,
    0.027152459411754037,
];

const MAX_BISECTION_DEPTH: u32 = 40;
const MAX_PANELS: usize = 8_000_000;

/// e(r) for r in cycles, |r| <= 1/2 after reduction.
#[inline]
fn cis_cycles(r: f64) -> Complex64 {
    let (s, c) = (std::f64::consts::TAU * r).sin_cos();
    Complex64::new(c, s)
}

struct Integrand {
    amp_exp: f64,   // exponent a in v^a
    amp_scale: f64, // 1/theta prefactor
    phase: PhaseFunction,
}

impl Integrand {
    #[inline]
    fn eval(&self, v: f64) -> Complex64 {
        let lnv = v.ln();
        let amp = self.amp_scale * (self.amp_exp * lnv).exp();
        let ph = self.phase.k_alpha * v + self.phase.log_coeff() * lnv;
        cis_cycles(ph - ph.round()) * amp
    }

    /// Analytic integral of |amplitude| over [a, b]; the error budget
    /// is distributed proportionally to this mass.
    fn amplitude_mass(&self, a: f64, b: f64) -> f64 {
        let p = self.amp_exp + 1.0;
        debug_assert!(p > 0.0);
        self.amp_scale * (b.powf(p) - a.powf(p)) / p
    }

    fn gl16(&self, a: f64, b: f64) -> Complex64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..8 {
            let d = h * GL16_NODES[i];
            acc += (self.eval(c + d) + self.eval(c - d)) * GL16_WEIGHTS[i];
        }
        acc * h
    }

    fn adaptive(&self, a: f64, b: f64, tol: f64, depth: u32) -> Result<Complex64> {
        let coarse = self.gl16(a, b);
        let m = 0.5 * (a + b);
        let fine = self.gl16(a, m) + self.gl16(m, b);
        let err = (fine - coarse).norm();
        if err <= tol {
            return Ok(fine);
        }
        if depth >= MAX_BISECTION_DEPTH {
            return Err(Error::Quadrature(format!(
                "panel [{a}, {b}] error {err:.3e} above budget {tol:.3e} at depth {depth}"
            )));
        }
        let left = self.adaptive(a, m, 0.5 * tol, depth + 1)?;
        let right = self.adaptive(m, b, 0.5 * tol, depth + 1)?;
        Ok(left + right)
    }
}

/// Initial panels: each spans at most half an oscillation of f, with the
/// curvature scale 1/sqrt(|f''|) taking over where f' vanishes.
fn build_panels(phase: &PhaseFunction) -> Result<Vec<(f64, f64)>> {
    let mut pieces = Vec::with_capacity(2);
    match phase.stationary_point() {
        Some(v) if v > phase.lo && v < phase.hi => {
            pieces.push((phase.lo, v));
            pieces.push((v, phase.hi));
        }
        _ => pieces.push((phase.lo, phase.hi)),
    }

    let width_at = |v: f64, remaining: f64| -> f64 {
        let q = phase.deriv(v).abs();
        let mut w = if q > 0.0 { 0.5 / q } else { remaining };
        let r = phase.second_deriv(v).abs();
        if r > 0.0 {
            w = w.min(1.0 / r.sqrt());
        }
        w.min(remaining)
    };

    let mut panels = Vec::new();
    for (a, b) in pieces {
        let mut v = a;
        while v < b {
            let mut w = width_at(v, b - v);
            // f' may grow toward the far edge; tighten once against it
            let w2 = width_at((v + w).min(b), b - v);
            w = w.min(w2).max((b - a) * 1e-12);
            let next = (v + w).min(b);
            panels.push((v, next));
            if panels.len() > MAX_PANELS {
                return Err(Error::Quadrature(format!(
                    "panel budget exceeded ({MAX_PANELS}) on [{}, {}]",
                    phase.lo, phase.hi
                )));
            }
            if next >= b || next == v {
                break;
            }
            v = next;
        }
    }
    Ok(panels)
}

fn integrate(itg: &Integrand, rel_tol: f64) -> Result<Complex64> {
    let total_mass = itg.amplitude_mass(itg.phase.lo, itg.phase.hi);
    let tol_total = rel_tol * total_mass;
    let panels = build_panels(&itg.phase)?;
    let mut acc = ComplexSum::new();
    for &(a, b) in &panels {
        let tol = tol_total * (itg.amplitude_mass(a, b) / total_mass).max(1e-300);
        acc.add(itg.adaptive(a, b, tol, 0)?);
    }
    Ok(acc.value())
}

/// Main term int_x^{2x} e(k alpha u^theta) du, relative quadrature
/// error <= 1e-10.
pub fn main_term_integral(params: &SumParams) -> Result<Complex64> {
    let itg = Integrand {
        amp_exp: 1.0 / params.theta - 1.0,
        amp_scale: 1.0 / params.theta,
        phase: PhaseFunction::new(params, 0.0),
    };
    integrate(&itg, 1e-11)
}

/// Zero term int_x^{2x} u^{rho-1} e(k alpha u^theta) du for
/// rho = beta + i gamma, relative quadrature error <= 1e-9.
pub fn zero_term_integral(spec: &OscIntegralSpec) -> Result<Complex64> {
    let theta = spec.params.theta;
    let itg = Integrand {
        amp_exp: spec.beta / theta - 1.0,
        amp_scale: 1.0 / theta,
        phase: PhaseFunction::new(&spec.params, spec.gamma),
    };
    integrate(&itg, 1e-10)
}

/// A priori magnitude certificate from the derivative tests:
/// x^beta / sqrt(1 + theta k |alpha| x^theta) below the threshold
/// |gamma| = 4 (1 + theta pi k |alpha| (2x)^theta), x^beta / (1 + |gamma|)
/// above it, capped at the trivial bound x^beta. At the threshold both
/// are evaluated and the smaller returned.
pub fn derivative_test_bound(spec: &OscIntegralSpec) -> BoundCertificate {
    let p = &spec.params;
    let xb = p.x.powf(spec.beta);
    let ka = p.k as f64 * p.alpha.abs();
    let threshold = 4.0 * (1.0 + p.theta * std::f64::consts::PI * ka * (2.0 * p.x).powf(p.theta));
    let second = xb / (1.0 + p.theta * ka * p.x.powf(p.theta)).sqrt();
    let first = xb / (1.0 + spec.gamma.abs());
    let g = spec.gamma.abs();
    let (mut value, mut regime) = if g < threshold {
        (second, Regime::SecondDerivativeTest)
    } else if g > threshold {
        (first, Regime::FirstDerivativeTest)
    } else if second <= first {
        (second, Regime::SecondDerivativeTest)
    } else {
        (first, Regime::FirstDerivativeTest)
    };
    if value > xb {
        value = xb;
        regime = Regime::Trivial;
    }
    BoundCertificate { value, regime }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simpson_oracle(
        lo: f64,
        hi: f64,
        n: usize,
        f: impl Fn(f64) -> Complex64,
    ) -> Complex64 {
        // composite Simpson with n (even) intervals
        let h = (hi - lo) / n as f64;
        let mut acc = ComplexSum::new();
        acc.add(f(lo));
        acc.add(f(hi));
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc.add(f(lo + i as f64 * h) * w);
        }
        acc.value() * (h / 3.0)
    }

    fn u_integrand(beta: f64, gamma: f64, p: &SumParams) -> impl Fn(f64) -> Complex64 + '_ {
        move |u: f64| {
            let amp = u.powf(beta - 1.0);
            let ph = p.k as f64 * p.alpha * u.powf(p.theta)
                + gamma * u.ln() / std::f64::consts::TAU;
            cis_cycles(ph - ph.round()) * amp
        }
    }

    #[test]
    fn main_term_degenerate_is_interval_length() {
        let p = SumParams::degenerate(1000.0, 1, 0.5).unwrap();
        let v = main_term_integral(&p).unwrap();
        assert!((v.re - 1000.0).abs() < 1e-7);
        assert!(v.im.abs() < 1e-7);
    }

    #[test]
    fn main_term_matches_dense_simpson() {
        let p = SumParams::new(100.0, 1, 1.0, 0.5).unwrap();
        let got = main_term_integral(&p).unwrap();
        let want = simpson_oracle(100.0, 200.0, 1_000_000, u_integrand(1.0, 0.0, &p));
        assert!((got - want).norm() < 1e-8 * want.norm().max(1.0), "got {got} want {want}");
    }

    #[test]
    fn zero_term_identity_beta1_no_phase() {
        let p = SumParams::degenerate(777.0, 1, 0.4).unwrap();
        let spec = OscIntegralSpec::new(1.0, 0.0, p).unwrap();
        let v = zero_term_integral(&spec).unwrap();
        assert!((v.re - 777.0).abs() < 1e-6);
        assert!(v.im.abs() < 1e-9);
    }

    #[test]
    fn zero_term_matches_dense_simpson() {
        let p = SumParams::new(100.0, 1, 1.0, 0.5).unwrap();
        let spec = OscIntegralSpec::new(0.5, 14.134725, p).unwrap();
        let got = zero_term_integral(&spec).unwrap();
        let want = simpson_oracle(100.0, 200.0, 1_000_000, u_integrand(0.5, 14.134725, &p));
        assert!(
            (got - want).norm() < 1e-8 * want.norm().max(1.0),
            "got {got} want {want}"
        );
    }

    #[test]
    fn zero_term_with_interior_stationary_point() {
        // v* = -gamma/(2 pi theta k alpha) must land in [x^t, (2x)^t]
        let p = SumParams::new(100.0, 1, 1.0, 0.5).unwrap();
        let gamma = -12.0 * std::f64::consts::PI; // v* = 12
        let spec = OscIntegralSpec::new(0.5, gamma, p).unwrap();
        let phase = PhaseFunction::new(&p, gamma);
        assert!(phase.stationary_point().unwrap() > phase.lo);
        let got = zero_term_integral(&spec).unwrap();
        let want = simpson_oracle(100.0, 200.0, 2_000_000, u_integrand(0.5, gamma, &p));
        assert!(
            (got - want).norm() < 1e-8 * want.norm().max(1.0),
            "got {got} want {want}"
        );
    }

    #[test]
    fn stationary_point_examples() {
        // k=1, alpha=1, theta=1/2, gamma=-pi: v* = 1
        let p = SumParams::new(2.0, 1, 1.0, 0.5).unwrap();
        let f = PhaseFunction::new(&p, -std::f64::consts::PI);
        // domain is [sqrt 2, 2]; v*=1 falls outside
        assert!((-f.log_coeff() / f.k_alpha - 1.0).abs() < 1e-15);
        assert!(f.stationary_point().is_none());

        // same sign: no stationary point
        let f = PhaseFunction::new(&p, std::f64::consts::PI);
        assert!(f.stationary_point().is_none());

        // gamma = 0: f' = k alpha never vanishes
        let f = PhaseFunction::new(&p, 0.0);
        assert!(f.stationary_point().is_none());
    }

    #[test]
    fn certificate_plug_ins() {
        let p = SumParams::new(1e4, 1, 1.0, 0.5).unwrap();
        let spec = OscIntegralSpec::new(0.5, 0.0, p).unwrap();
        let c = derivative_test_bound(&spec);
        assert_eq!(c.regime, Regime::SecondDerivativeTest);
        assert!((c.value - 100.0 / 51.0f64.sqrt()).abs() < 1e-12);

        let spec = OscIntegralSpec::new(0.5, 1e6, p).unwrap();
        let c = derivative_test_bound(&spec);
        assert_eq!(c.regime, Regime::FirstDerivativeTest);
        assert!((c.value - 100.0 / (1.0 + 1e6)).abs() < 1e-12);
    }

    #[test]
    fn conjugation_symmetry() {
        let p = SumParams::new(200.0, 1, 0.8, 0.4).unwrap();
        let m = SumParams::new(200.0, 1, -0.8, 0.4).unwrap();
        let a = zero_term_integral(&OscIntegralSpec::new(0.5, 50.0, p).unwrap()).unwrap();
        let b = zero_term_integral(&OscIntegralSpec::new(0.5, -50.0, m).unwrap()).unwrap();
        assert!((a.re - b.re).abs() < 1e-12 * a.norm().max(1.0));
        assert!((a.im + b.im).abs() < 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn trivial_bound_holds() {
        let p = SumParams::new(500.0, 2, 1.3, 0.3).unwrap();
        for &gamma in &[0.0, 14.134725, 100.0, -321.5] {
            let spec = OscIntegralSpec::new(0.5, gamma, p).unwrap();
            let v = zero_term_integral(&spec).unwrap();
            assert!(v.norm() <= 1.01 * p.x.powf(0.5), "gamma={gamma} |I|={}", v.norm());
        }
    }
}
