//! Truncated-explicit-formula decomposition of S(k,x,theta):
//! main term minus the sum of zero-term integrals over |gamma| <= T,
//! with the truncation error scale, compared against direct summation.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kahan::ComplexSum;
use crate::oscillatory::{main_term_integral, zero_term_integral, OscIntegralSpec};
use crate::phase_sum::{direct_sum, SumParams};
use crate::zeros::ZeroTable;

/// Decomposed approximation: approx = main - zero_sum.
#[derive(Clone, Copy, Debug)]
pub struct ExplicitApprox {
    pub main: Complex64,
    pub zero_sum: Complex64,
    pub t: f64,
    pub error_scale: f64,
    pub approx: Complex64,
}

/// Truncation error scale at height T:
/// (1 + k|alpha| x^theta) x log^2(xT) / T, plus the contribution of
/// finite-precision zero ordinates when a table is supplied:
/// N(T) x 10^{-digits} log2 / (2 pi theta).
pub fn error_scale(params: &SumParams, t: f64, table: Option<&ZeroTable>) -> Result<f64> {
    if !(t >= 2.0 && t <= params.x) {
        return Err(Error::Domain(format!(
            "T = {t} must satisfy 2 <= T <= x = {}",
            params.x
        )));
    }
    let xt = params.x.powf(params.theta);
    let log_factor = (params.x * t).ln().powi(2);
    let truncation =
        (1.0 + params.k as f64 * params.alpha.abs() * xt) * params.x * log_factor / t;
    let ordinate = match table {
        Some(tab) => {
            let n = tab.count_saturating(t) as f64;
            n * params.x
                * 10f64.powi(-(tab.source_digits() as i32))
                * std::f64::consts::LN_2
                / (std::f64::consts::TAU * params.theta)
        }
        None => 0.0,
    };
    Ok(truncation + ordinate)
}

/// Zero-pair contribution for one positive ordinate: the rho = 1/2 + i gamma
/// and rho-bar = 1/2 - i gamma terms. The two are not conjugates of each
/// other (the e(k alpha u^theta) factor does not flip), so both sides are
/// integrated.
pub fn zero_pair_term(gamma: f64, params: &SumParams) -> Result<Complex64> {
    let plus = zero_term_integral(&OscIntegralSpec::new(0.5, gamma, *params)?)?;
    let minus = zero_term_integral(&OscIntegralSpec::new(0.5, -gamma, *params)?)?;
    Ok(plus + minus)
}

fn zero_pair_terms(params: &SumParams, zeros: &ZeroTable, t: f64) -> Result<Vec<Complex64>> {
    let count = zeros.count_up_to(t)?;
    zeros.gammas()[..count]
        .par_iter()
        .map(|&g| zero_pair_term(g, params))
        .collect()
}

fn sum_terms(terms: &[Complex64]) -> Complex64 {
    // deterministic: ascending gamma, compensated
    let mut acc = ComplexSum::new();
    for &z in terms {
        acc.add(z);
    }
    acc.value()
}

/// Assemble the truncated explicit formula at height T.
pub fn approximate_sum(params: &SumParams, zeros: &ZeroTable, t: f64) -> Result<ExplicitApprox> {
    if params.alpha == 0.0 {
        return Err(Error::Domain(
            "explicit-formula comparison requires alpha != 0".into(),
        ));
    }
    let main = main_term_integral(params)?;
    let terms = zero_pair_terms(params, zeros, t)?;
    let zero_sum = sum_terms(&terms);
    Ok(ExplicitApprox {
        main,
        zero_sum,
        t,
        error_scale: error_scale(params, t, Some(zeros))?,
        approx: main - zero_sum,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct ComparisonRow {
    pub t: f64,
    pub direct: Complex64,
    pub approx: Complex64,
    pub abs_diff: f64,
    pub error_scale: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub params: SumParams,
    pub rows: Vec<ComparisonRow>,
}

/// Run the explicit-formula comparison at each height in `t_list`.
/// The direct sum is evaluated once; zero-term integrals are evaluated
/// once up to max T and prefix-summed per height.
pub fn compare(params: &SumParams, zeros: &ZeroTable, t_list: &[f64]) -> Result<ComparisonReport> {
    let mut report = ComparisonReport {
        params: *params,
        rows: Vec::with_capacity(t_list.len()),
    };
    if t_list.is_empty() {
        return Ok(report);
    }
    let t_max = t_list.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let direct = direct_sum(params)?;
    let main = main_term_integral(params)?;
    let terms = zero_pair_terms(params, zeros, t_max)?;
    let gammas = &zeros.gammas()[..terms.len()];
    for &t in t_list {
        let n = gammas.partition_point(|&g| g <= t);
        let zero_sum = sum_terms(&terms[..n]);
        let approx = main - zero_sum;
        let scale = error_scale(params, t, Some(zeros))?;
        let abs_diff = (direct - approx).norm();
        report.rows.push(ComparisonRow {
            t,
            direct,
            approx,
            abs_diff,
            error_scale: scale,
            ratio: abs_diff / scale,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::parse_zeros;

    fn small_table() -> ZeroTable {
        parse_zeros(
            "14.134725142\n21.022039639\n25.010857580\n30.424876126\n32.935061588\n",
        )
        .unwrap()
    }

    #[test]
    fn error_scale_plug_in() {
        let p = SumParams::new(1e4, 1, 1.0, 1.0 / 3.0).unwrap();
        let v = error_scale(&p, 1e2, None).unwrap();
        let expected = (1.0 + 1e4f64.powf(1.0 / 3.0)) * 1e4 * (1e6f64).ln().powi(2) / 1e2;
        assert!((v - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn error_scale_halves_when_t_doubles() {
        let p = SumParams::new(1e4, 1, 1.0, 0.5).unwrap();
        let t = 100.0;
        let v1 = error_scale(&p, t, None).unwrap();
        let v2 = error_scale(&p, 2.0 * t, None).unwrap();
        // 1/T scaling at fixed log factor: recompute log(xT) at 2T
        let rescale = (p.x * 2.0 * t).ln().powi(2) / (p.x * t).ln().powi(2);
        assert!((v2 - v1 * rescale / 2.0).abs() < 1e-12 * v1);
    }

    #[test]
    fn error_scale_range_checks() {
        let p = SumParams::new(1e4, 1, 1.0, 0.5).unwrap();
        assert!(error_scale(&p, 1.0, None).is_err());
        assert!(error_scale(&p, 2e4, None).is_err());
        assert!(error_scale(&p, p.x, None).is_ok()); // canonical T = T0 = x
    }

    #[test]
    fn t_below_first_zero_gives_main_only() {
        let p = SumParams::new(100.0, 1, 1.0, 0.5).unwrap();
        let a = approximate_sum(&p, &small_table(), 10.0).unwrap();
        assert_eq!(a.zero_sum, Complex64::new(0.0, 0.0));
        assert_eq!(a.approx, a.main);
    }

    #[test]
    fn approx_identity_holds_exactly() {
        let p = SumParams::new(100.0, 1, 1.0, 0.5).unwrap();
        let a = approximate_sum(&p, &small_table(), 32.0).unwrap();
        assert_eq!(a.approx, a.main - a.zero_sum);
        assert_eq!(a.t, 32.0);
        assert!(a.error_scale > 0.0);
    }

    #[test]
    fn pair_sum_matches_naive_two_sided() {
        let p = SumParams::new(100.0, 1, 1.0, 0.5).unwrap();
        let table = small_table();
        let a = approximate_sum(&p, &table, 32.0).unwrap();
        let mut naive = Complex64::new(0.0, 0.0);
        for &g in table.gammas().iter().filter(|&&g| g <= 32.0) {
            for s in [g, -g] {
                naive += zero_term_integral(&OscIntegralSpec::new(0.5, s, p).unwrap()).unwrap();
            }
        }
        assert!((a.zero_sum - naive).norm() < 1e-12 * naive.norm().max(1.0));
    }

    #[test]
    fn conjugation_symmetry() {
        let p = SumParams::new(100.0, 1, 1.0, 0.5).unwrap();
        let m = SumParams::new(100.0, 1, -1.0, 0.5).unwrap();
        let table = small_table();
        let a = approximate_sum(&p, &table, 32.0).unwrap();
        let b = approximate_sum(&m, &table, 32.0).unwrap();
        let scale = a.approx.norm().max(1.0);
        assert!((a.approx.re - b.approx.re).abs() < 1e-12 * scale);
        assert!((a.approx.im + b.approx.im).abs() < 1e-12 * scale);
    }

    #[test]
    fn empty_t_list_gives_empty_report() {
        let p = SumParams::new(100.0, 1, 1.0, 0.5).unwrap();
        let r = compare(&p, &small_table(), &[]).unwrap();
        assert!(r.rows.is_empty());
    }

    #[test]
    fn coverage_error_surfaces() {
        let p = SumParams::new(100.0, 1, 1.0, 0.5).unwrap();
        assert!(matches!(
            approximate_sum(&p, &small_table(), 50.0),
            Err(Error::Coverage { .. })
        ));
    }
}
