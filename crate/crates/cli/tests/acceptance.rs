//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line. Oracles here are independent re-derivations (trial
//! division, dense composite Gauss-Legendre quadrature) rather than
//! calls back into the code under test.

use std::path::PathBuf;
use std::time::Instant;

use expsum::bounds::{
    envelope, grid_golden_max, g_sigma, sigma0, sup_over_sigma, DensityExponent,
    EnvelopeConstants, EnvelopeName, C0_DEFAULT,
};
use expsum::{
    chebyshev_psi, compare, derivative_test_bound, direct_sum, lambda_single, load_zeros,
    main_term_integral, max_rvm_residual, sieve_lambda, zero_term_integral, Complex64,
    IntegerRange, OscIntegralSpec, SumParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn report(criterion: u32, name: &str, ok: bool) {
    println!(
        "criterion {criterion} ({name}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} ({name}) failed");
}

// ---------------------------------------------------------------- oracle

const GL10_NODES: [f64; 10] = [
    -0.9739065285171717,
    -0.8650633666889845,
    -0.6794095682990244,
    -0.4333953941292472,
    -0.14887433898163122,
    0.14887433898163122,
    0.4333953941292472,
    0.6794095682990244,
    0.8650633666889845,
    0.9739065285171717,
];
const GL10_WEIGHTS: [f64; 10] = [
    0.06667134430868807,
    0.14945134915058036,
    0.219086362515982,
    0.2692667193099965,
    0.295524224714753,
    0.295524224714753,
    0.2692667193099965,
    0.219086362515982,
    0.14945134915058036,
    0.06667134430868807,
];

/// Dense composite quadrature with `points` total evaluations on uniform
/// panels: an oracle independent of the adaptive oscillation-sized panels
/// used by the library.
fn dense_oracle(lo: f64, hi: f64, points: usize, f: impl Fn(f64) -> Complex64) -> Complex64 {
    let panels = (points / 10).max(1);
    let h = (hi - lo) / panels as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let a = lo + p as f64 * h;
        let mid = a + 0.5 * h;
        let half = 0.5 * h;
        let mut panel = Complex64::new(0.0, 0.0);
        for i in 0..10 {
            panel += f(mid + half * GL10_NODES[i]) * GL10_WEIGHTS[i];
        }
        // compensated accumulation of panel * half
        let y = panel * half - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Integrand of int_x^{2x} u^{beta-1+i gamma} e(k alpha u^theta) du
/// in the original u variable (no substitution).
fn u_domain_integrand(beta: f64, gamma: f64, params: &SumParams) -> impl Fn(f64) -> Complex64 {
    let ka = params.k as f64 * params.alpha;
    let theta = params.theta;
    move |u: f64| {
        let phase = gamma * u.ln() + std::f64::consts::TAU * ka * u.powf(theta);
        u.powf(beta - 1.0) * Complex64::from_polar(1.0, phase)
    }
}

// ------------------------------------------------------------- criteria

#[test]
fn acceptance_1_sieve_correctness() {
    let started = Instant::now();
    let stream = sieve_lambda(IntegerRange::new(1, 1_000_000).unwrap(), 1 << 18).unwrap();
    let mut next = 2u64;
    let mut ok = true;
    for entry in stream {
        // everything skipped by the sieve must have Lambda = 0
        while next < entry.n {
            ok &= lambda_single(next).unwrap() == 0.0;
            next += 1;
        }
        ok &= entry.n == next && lambda_single(entry.n).unwrap() == entry.lambda;
        next = entry.n + 1;
    }
    while next <= 1_000_000 {
        ok &= lambda_single(next).unwrap() == 0.0;
        next += 1;
    }

    let psi = chebyshev_psi(1e5).unwrap();
    let mut oracle = 0f64;
    for n in 2..=100_000u64 {
        oracle += lambda_single(n).unwrap();
    }
    ok &= (psi - oracle).abs() <= 1e-12 * oracle;
    ok &= started.elapsed().as_secs_f64() < 5.0;
    report(1, "sieve vs trial division, psi(1e5)", ok);
}

#[test]
fn acceptance_2_degenerate_end_to_end() {
    let mut ok = true;
    for x in [1e3, 1e4, 1e5] {
        let params = SumParams::degenerate(x, 1, 0.5).unwrap();
        let s = direct_sum(&params).unwrap();
        let mass = chebyshev_psi(2.0 * x).unwrap() - chebyshev_psi(x).unwrap();
        ok &= (s.re - mass).abs() <= 1e-10 * mass && s.im == 0.0;
    }
    report(2, "alpha = 0 sum equals psi(2x) - psi(x)", ok);
}

#[test]
fn acceptance_3_explicit_formula_reproduction() {
    let started = Instant::now();
    let params = SumParams::new(1e4, 1, 1.0, 1.0 / 3.0).unwrap();
    let table = load_zeros(data("zeros_10k.txt")).unwrap();
    let report_rows = compare(&params, &table, &[1e2, 1e3, 1e4]).unwrap().rows;
    let mut ok = report_rows.len() == 3;
    for row in &report_rows {
        ok &= row.ratio <= 10.0;
    }
    ok &= report_rows[2].abs_diff <= report_rows[0].abs_diff / 5.0;
    ok &= started.elapsed().as_secs_f64() < 300.0;
    report(3, "truncated explicit formula vs direct sum", ok);
}

#[test]
fn acceptance_4_quadrature_vs_dense_oracle() {
    let mut ok = true;
    for &theta in &[0.25, 0.5] {
        for &x in &[1e2, 1e4] {
            let params = SumParams::new(x, 1, 1.0, theta).unwrap();
            let started = Instant::now();
            let main = main_term_integral(&params).unwrap();
            let oracle = dense_oracle(x, 2.0 * x, 1_000_000, u_domain_integrand(1.0, 0.0, &params));
            ok &= (main - oracle).norm() <= 1e-8 * oracle.norm();
            ok &= started.elapsed().as_secs_f64() < 1.0;

            for &gamma in &[0.0, 14.134725, 1e2, 1e4] {
                let started = Instant::now();
                let spec = OscIntegralSpec::new(0.5, gamma, params).unwrap();
                let val = zero_term_integral(&spec).unwrap();
                let oracle =
                    dense_oracle(x, 2.0 * x, 1_000_000, u_domain_integrand(0.5, gamma, &params));
                let rel = (val - oracle).norm() / oracle.norm();
                ok &= rel <= 1e-8;
                ok &= started.elapsed().as_secs_f64() < 1.0;
            }
        }
    }
    report(4, "oscillatory quadrature vs 1e6-point oracle", ok);
}

fn random_spec(rng: &mut impl Rng) -> OscIntegralSpec {
    let x = 10f64.powf(rng.gen_range(1.7..4.3));
    let theta = rng.gen_range(0.1..0.9);
    let k = rng.gen_range(1..=5u64);
    let alpha = loop {
        let a: f64 = rng.gen_range(-2.0..2.0);
        if a != 0.0 {
            break a;
        }
    };
    let beta = rng.gen_range(0.05..1.0f64);
    let gamma = rng.gen_range(-2e3..2e3);
    OscIntegralSpec::new(beta, gamma, SumParams::new(x, k, alpha, theta).unwrap()).unwrap()
}

#[test]
fn acceptance_5_trivial_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut violations = 0u32;
    for _ in 0..500 {
        let spec = random_spec(&mut rng);
        let val = zero_term_integral(&spec).unwrap().norm();
        let cap = 1.01 * spec.params.x.powf(spec.beta);
        if val > cap {
            violations += 1;
            println!(
                "trivial-bound violation: |I| = {val} > {cap} at {:?}",
                spec
            );
        }
    }
    report(5, "trivial bound |I| <= 1.01 x^beta, 500 specs", violations == 0);
}

#[test]
fn acceptance_6_derivative_test_certificates() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut violations = 0u32;
    for _ in 0..200 {
        let spec = random_spec(&mut rng);
        let val = zero_term_integral(&spec).unwrap().norm();
        let cert = derivative_test_bound(&spec);
        if val > 8.0 * cert.value {
            violations += 1;
            println!(
                "certificate violation ({}): |I| = {val} > 8 * {} at {:?}",
                cert.regime, cert.value, spec
            );
        }
    }
    report(6, "|I| <= 8 * derivative-test certificate, 200 specs", violations == 0);
}

#[test]
fn acceptance_7_zero_table_integrity() {
    let table = load_zeros(data("zeros_first100.txt")).unwrap();
    let mut ok = table.count_up_to(100.0).unwrap() == 29;
    ok &= max_rvm_residual(&table) <= 3.0;
    report(7, "N(100) = 29 and Riemann-von Mangoldt residual <= 3", ok);
}

#[test]
fn acceptance_8_bound_machinery() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut ok = true;
    for _ in 0..100 {
        let x = 10f64.powf(rng.gen_range(3.0..8.0));
        let theta = rng.gen_range(0.05..0.6);
        let k = rng.gen_range(1..=100u64);
        let a = if rng.gen::<bool>() {
            DensityExponent::Huxley
        } else {
            DensityExponent::Hypothesis
        };
        let params = SumParams::new(x, k, 1.0, theta).unwrap();

        // independent re-derivation: log h is affine in sigma, so the
        // analytic sup sits at an endpoint of [1/2, sigma0]
        let s0 = sigma0(x, C0_DEFAULT).unwrap();
        let av = a.a();
        let log_h = |s: f64| (av * (1.0 - s) - 0.5) * (k as f64).ln() + g_sigma(s, theta, a) * x.ln();
        let slope = (1.0 - theta * av) * x.ln() - av * (k as f64).ln();
        let endpoint = if slope >= 0.0 { s0 } else { 0.5 };
        let analytic = log_h(endpoint).exp();

        let (_, numeric_log) = grid_golden_max(log_h, 0.5, s0);
        ok &= (numeric_log.exp() - analytic).abs() <= 1e-12 * analytic;

        let (_, library) = sup_over_sigma(&params, a, C0_DEFAULT).unwrap();
        ok &= (library - analytic).abs() <= 1e-12 * analytic;
    }

    // Theorem 1.1's envelope improves on the small-theta estimate (1.2)
    let consts = EnvelopeConstants::default();
    for &x in &[1e4, 1e5, 1e6, 1e7, 1e8] {
        let params = SumParams::new(x, 1, 1.0, 1.0 / 3.0).unwrap();
        let t11 = envelope(EnvelopeName::Theorem11, &params, &consts).unwrap();
        let rst = envelope(EnvelopeName::RenSmallTheta, &params, &consts).unwrap();
        ok &= t11.value < rst.value;
    }
    report(8, "sup over sigma and envelope comparison", ok);
}

#[test]
fn acceptance_9_reproducibility_across_threads() {
    let zeros = data("zeros_first100.txt");
    let run = |threads: &str| {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_expsum"))
            .args([
                "explicit",
                "--x",
                "200",
                "--k",
                "2",
                "--alpha",
                "0.7",
                "--theta",
                "0.4",
                "--zeros",
                zeros.to_str().unwrap(),
                "--T",
                "50,100,200",
            ])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    let single = run("1");
    let multi = run("4");
    report(9, "bitwise-identical CSV across 1 and 4 threads", single == multi);
}
