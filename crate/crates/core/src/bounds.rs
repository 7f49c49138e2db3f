//! Bound envelopes and auxiliary functions: the zero-free-region edge
//! sigma0, the density exponent combination g(sigma), the sup-over-sigma
//! maximization, admissible k ranges, and the right-hand sides of the
//! known estimates for S(k,x,theta).

use crate::error::{Error, Result};
use crate::phase_sum::SumParams;

/// Zero-density exponent A(sigma), constant in sigma for both variants:
/// Ingham-Huxley A = 12/5, density hypothesis A = 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityExponent {
    Huxley,
    Hypothesis,
}

impl DensityExponent {
    pub fn a(&self) -> f64 {
        match self {
            DensityExponent::Huxley => 12.0 / 5.0,
            DensityExponent::Hypothesis => 2.0,
        }
    }
}

/// Default stand-in for the absolute constant c0 of the zero-free region.
pub const C0_DEFAULT: f64 = 0.05;
/// Rigorous Vinogradov-Korobov-region value, available as a preset.
pub const C0_VINOGRADOV_KOROBOV: f64 = 1.0 / 57.54;

/// sigma0(T) = 1 - c0 (log T)^{-2/3} (log log T)^{-1/3},
/// clamped to [1/2, 1).
pub fn sigma0(t: f64, c0: f64) -> Result<f64> {
    if !(t >= 16.0) {
        return Err(Error::Domain(format!("sigma0 requires T >= 16, got {t}")));
    }
    if c0 < 0.0 {
        return Err(Error::Domain(format!("c0 = {c0} must be nonnegative")));
    }
    let lt = t.ln();
    let llt = lt.ln();
    let s = 1.0 - c0 * lt.powf(-2.0 / 3.0) * llt.powf(-1.0 / 3.0);
    Ok(s.clamp(0.5, 1.0 - f64::EPSILON))
}

/// g(sigma) = sigma + theta A(sigma) (1 - sigma) - theta/2.
pub fn g_sigma(sigma: f64, theta: f64, a: DensityExponent) -> f64 {
    sigma + theta * a.a() * (1.0 - sigma) - theta / 2.0
}

fn log_h(sigma: f64, params: &SumParams, a: f64) -> f64 {
    let lk = (params.k as f64).ln();
    let lx = params.x.ln();
    (a * (1.0 - sigma) - 0.5) * lk + (sigma + params.theta * a * (1.0 - sigma) - params.theta / 2.0) * lx
}

/// Maximize h(sigma) = k^{A(1-sigma)-1/2} x^{g(sigma)} over
/// sigma in [1/2, sigma0] with T = T0 = x. log h is affine in sigma, so
/// the maximum sits at an endpoint; the analytic endpoint answer is
/// returned after checking agreement with a grid + golden-section search.
pub fn sup_over_sigma(
    params: &SumParams,
    a: DensityExponent,
    c0: f64,
) -> Result<(f64, f64)> {
    let s0 = sigma0(params.x, c0)?;
    let av = a.a();
    // slope of log h in sigma; positive slope pushes the max to sigma0
    let slope = (1.0 - params.theta * av) * params.x.ln() - av * (params.k as f64).ln();
    let sigma_star = if slope >= 0.0 { s0 } else { 0.5 };
    let analytic = log_h(sigma_star, params, av).exp();

    let (num_sigma, num_log) = grid_golden_max(|s| log_h(s, params, av), 0.5, s0);
    let numeric = num_log.exp();
    let rel = (numeric - analytic).abs() / analytic.abs().max(f64::MIN_POSITIVE);
    if rel > 1e-9 {
        return Err(Error::Domain(format!(
            "sup_over_sigma: numeric {numeric} (sigma={num_sigma}) disagrees with analytic {analytic} (sigma={sigma_star})"
        )));
    }
    Ok((sigma_star, analytic))
}

/// Dense 1e-4 grid then golden-section refinement; independent check on
/// the analytic endpoint answer (and the path a non-constant A(sigma)
/// variant would take).
pub fn grid_golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    debug_assert!(lo <= hi);
    let steps = (((hi - lo) / 1e-4).ceil() as usize).max(1);
    let mut best_i = 0usize;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=steps {
        let s = lo + (hi - lo) * i as f64 / steps as f64;
        let v = f(s);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let a = lo + (hi - lo) * best_i.saturating_sub(1) as f64 / steps as f64;
    let b = lo + (hi - lo) * (best_i + 1).min(steps) as f64 / steps as f64;
    golden_max(f, a, b)
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - (b - a) * INV_PHI;
    let mut d = a + (b - a) * INV_PHI;
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..90 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * INV_PHI;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * INV_PHI;
            fd = f(d);
        }
    }
    let s = 0.5 * (a + b);
    // endpoints can strictly dominate the interior for affine objectives
    let candidates = [(s, f(s)), (a, f(a)), (b, f(b))];
    candidates
        .into_iter()
        .fold((s, f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 { c } else { acc })
}

/// Largest admissible k for the exponential-decay bounds:
/// x^{5/12 - theta - eps} (Huxley) or x^{1/2 - theta - eps} (hypothesis);
/// 1 when the range is empty.
pub fn admissible_k_max(x: f64, theta: f64, epsilon: f64, a: DensityExponent) -> f64 {
    let e = match a {
        DensityExponent::Huxley => 5.0 / 12.0 - theta - epsilon,
        DensityExponent::Hypothesis => 0.5 - theta - epsilon,
    };
    if e <= 0.0 {
        1.0
    } else {
        x.powf(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EnvelopeName {
    /// (1.1): (k^{1/2} x^{(1+theta)/2} + x^{4/5} + k^{-1/2} x^{1-theta/2}) log^A x
    RenGeneral,
    /// (1.2): (k^{1/10} x^{3/4+theta/10} + k^{-1/2} x^{1-theta/2}) log^{11} x
    RenSmallTheta,
    /// (1.4): (k^{1/2} x^{(1+theta)/2} + k^{-1/2} x^{1-theta/2}) log^{B+2} x
    RenZdh,
    /// k^{-1/2} x^{1-theta/2} exp(-c0 (log x)^{1/3-eps})
    Theorem11,
    /// Same right-hand side under the density hypothesis, wider k range
    Theorem12Zdh,
    /// k^{1/8} x^{(7+theta)/8} log(x k^3)
    MurtySrinivas,
    /// k^{1/4} x^{7/8+eps}, theta = 1/2
    Vinogradov,
}

impl EnvelopeName {
    pub const ALL: [EnvelopeName; 7] = [
        EnvelopeName::RenGeneral,
        EnvelopeName::RenSmallTheta,
        EnvelopeName::RenZdh,
        EnvelopeName::Theorem11,
        EnvelopeName::Theorem12Zdh,
        EnvelopeName::MurtySrinivas,
        EnvelopeName::Vinogradov,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EnvelopeName::RenGeneral => "ren_general",
            EnvelopeName::RenSmallTheta => "ren_small_theta",
            EnvelopeName::RenZdh => "ren_zdh",
            EnvelopeName::Theorem11 => "theorem_1_1",
            EnvelopeName::Theorem12Zdh => "theorem_1_2_zdh",
            EnvelopeName::MurtySrinivas => "murty_srinivas",
            EnvelopeName::Vinogradov => "vinogradov",
        }
    }
}

impl std::str::FromStr for EnvelopeName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EnvelopeName::ALL
            .iter()
            .find(|n| n.as_str() == s)
            .copied()
            .ok_or_else(|| Error::Domain(format!("unknown envelope name {s:?}")))
    }
}

/// Stand-in constants for the implied constants and log powers the
/// estimates leave unspecified.
#[derive(Clone, Copy, Debug)]
pub struct EnvelopeConstants {
    pub c0: f64,
    pub epsilon: f64,
    /// exponent A of log^A x in (1.1)
    pub log_power_a: f64,
    /// B of the density hypothesis; (1.4) carries log^{B+2} x
    pub log_power_b: f64,
}

impl Default for EnvelopeConstants {
    fn default() -> Self {
        Self {
            c0: C0_DEFAULT,
            epsilon: 0.01,
            log_power_a: 1.0,
            log_power_b: 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BoundEnvelope {
    pub name: EnvelopeName,
    pub value: f64,
    pub params: SumParams,
    pub constants: EnvelopeConstants,
}

/// Evaluate the named right-hand side literally.
pub fn envelope(
    name: EnvelopeName,
    params: &SumParams,
    constants: &EnvelopeConstants,
) -> Result<BoundEnvelope> {
    let x = params.x;
    let k = params.k as f64;
    let th = params.theta;
    let lx = x.ln();
    let c = constants;
    let value = match name {
        EnvelopeName::RenGeneral => {
            (k.sqrt() * x.powf((1.0 + th) / 2.0) + x.powf(0.8) + x.powf(1.0 - th / 2.0) / k.sqrt())
                * lx.powf(c.log_power_a)
        }
        EnvelopeName::RenSmallTheta => {
            if !(th <= 0.5 && k < x.powf(0.5 - th)) {
                return Err(Error::Precondition(format!(
                    "(1.2) requires theta <= 1/2 and k < x^(1/2-theta); got theta={th}, k={k}"
                )));
            }
            (k.powf(0.1) * x.powf(0.75 + th / 10.0) + x.powf(1.0 - th / 2.0) / k.sqrt())
                * lx.powi(11)
        }
        EnvelopeName::RenZdh => {
            (k.sqrt() * x.powf((1.0 + th) / 2.0) + x.powf(1.0 - th / 2.0) / k.sqrt())
                * lx.powf(c.log_power_b + 2.0)
        }
        EnvelopeName::Theorem11 => {
            if !(th < 5.0 / 12.0 && k < x.powf(5.0 / 12.0 - th - c.epsilon)) {
                return Err(Error::Precondition(format!(
                    "Theorem 1.1 requires 0 < theta < 5/12 and 1 <= k < x^(5/12-theta-eps); got theta={th}, k={k}"
                )));
            }
            x.powf(1.0 - th / 2.0) / k.sqrt() * (-c.c0 * lx.powf(1.0 / 3.0 - c.epsilon)).exp()
        }
        EnvelopeName::Theorem12Zdh => {
            if !(th < 0.5 && k < x.powf(0.5 - th - c.epsilon)) {
                return Err(Error::Precondition(format!(
                    "Theorem 1.2 requires 0 < theta < 1/2 and 1 <= k < x^(1/2-theta-eps); got theta={th}, k={k}"
                )));
            }
            x.powf(1.0 - th / 2.0) / k.sqrt() * (-c.c0 * lx.powf(1.0 / 3.0 - c.epsilon)).exp()
        }
        EnvelopeName::MurtySrinivas => {
            k.powf(0.125) * x.powf((7.0 + th) / 8.0) * (x * k.powi(3)).ln()
        }
        EnvelopeName::Vinogradov => {
            if th != 0.5 {
                return Err(Error::Precondition(format!(
                    "Vinogradov's bound is stated for theta = 1/2; got theta={th}"
                )));
            }
            if !(k <= x.powf(0.1)) {
                return Err(Error::Precondition(format!(
                    "Vinogradov's bound requires k <= x^(1/10); got k={k}"
                )));
            }
            k.powf(0.25) * x.powf(0.875 + c.epsilon)
        }
    };
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::Domain(format!(
            "envelope {} evaluated to non-positive or non-finite {value}",
            name.as_str()
        )));
    }
    Ok(BoundEnvelope {
        name,
        value,
        params: *params,
        constants: *constants,
    })
}
