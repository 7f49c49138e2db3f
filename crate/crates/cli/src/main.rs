//! Command-line front end for the prime exponential sum library.
//!
//! Every command emits CSV on stdout (or `--out <path>`), preceded by
//! '#'-prefixed header lines echoing the full configuration. Identical
//! invocations produce bitwise-identical CSV bodies regardless of the
//! thread count used inside the library.
//!
//! Exit codes: 0 success, 2 usage/domain error, 3 resource limit,
//! 4 data/coverage error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use expsum::bounds::{envelope, EnvelopeConstants, EnvelopeName, C0_DEFAULT};
use expsum::{
    chebyshev_psi, compare, direct_sum, load_zeros, max_rvm_residual, Error, Result, SumParams,
};

#[derive(Parser, Debug)]
#[command(name = "expsum", version, about = "Prime exponential sums S(k,x,theta)")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Direct summation of S(k,x,theta) over the segmented sieve
    Sum(SumArgs),
    /// Compare direct summation against the truncated explicit formula
    Explicit(ExplicitArgs),
    /// Sweep a parameter grid, tabulating |S| against the bound envelopes
    Sweep(SweepArgs),
    /// Evaluate the theorem bound envelopes
    Bounds(BoundsArgs),
    /// Summarize a zero-ordinate table
    ZerosInfo(ZerosInfoArgs),
    /// Chebyshev psi(x)
    Psi(PsiArgs),
}

/// theta as a decimal or an exact fraction string like "1/3".
fn parse_theta(s: &str) -> std::result::Result<f64, String> {
    let v = match s.split_once('/') {
        Some((num, den)) => {
            let n: f64 = num.trim().parse().map_err(|e| format!("{e}"))?;
            let d: f64 = den.trim().parse().map_err(|e| format!("{e}"))?;
            if d == 0.0 {
                return Err("zero denominator".into());
            }
            n / d
        }
        None => s.parse().map_err(|e| format!("{e}"))?,
    };
    Ok(v)
}

/// Comma-separated f64 list; an empty string is an empty list.
fn parse_list(s: &str) -> Result<Vec<f64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| Error::Domain(format!("bad list entry {p:?}: {e}")))
        })
        .collect()
}

/// A grid is either a comma list ("1e4,1e5,1e6") or a geometric range
/// "lo:hi:n" of n points.
fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 3 {
        let lo: f64 = parts[0]
            .parse()
            .map_err(|e| Error::Domain(format!("bad grid endpoint {:?}: {e}", parts[0])))?;
        let hi: f64 = parts[1]
            .parse()
            .map_err(|e| Error::Domain(format!("bad grid endpoint {:?}: {e}", parts[1])))?;
        let n: usize = parts[2]
            .parse()
            .map_err(|e| Error::Domain(format!("bad grid count {:?}: {e}", parts[2])))?;
        if !(lo > 0.0 && hi >= lo && n >= 1) {
            return Err(Error::Domain(format!("invalid geometric grid {s:?}")));
        }
        if n == 1 {
            return Ok(vec![lo]);
        }
        let ratio = (hi / lo).powf(1.0 / (n - 1) as f64);
        Ok((0..n).map(|i| lo * ratio.powi(i as i32)).collect())
    } else {
        parse_list(s)
    }
}

#[derive(Args, Debug)]
struct SumArgs {
    /// Lower endpoint x of the summation range (x, 2x]
    #[arg(long)]
    x: f64,
    /// Integer frequency multiplier k >= 1
    #[arg(long, default_value_t = 1)]
    k: u64,
    /// Frequency alpha; must be nonzero unless --degenerate-ok
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    /// Exponent theta in (0,1); decimal or a fraction like "1/3"
    #[arg(long, value_parser = parse_theta)]
    theta: f64,
    /// Permit alpha = 0, collapsing the sum to psi(2x) - psi(x)
    #[arg(long)]
    degenerate_ok: bool,
}

impl SumArgs {
    fn params(&self) -> Result<SumParams> {
        if self.alpha == 0.0 && self.degenerate_ok {
            SumParams::degenerate(self.x, self.k, self.theta)
        } else {
            SumParams::new(self.x, self.k, self.alpha, self.theta)
        }
    }
}

#[derive(Args, Debug)]
struct ExplicitArgs {
    #[arg(long)]
    x: f64,
    #[arg(long, default_value_t = 1)]
    k: u64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, value_parser = parse_theta)]
    theta: f64,
    /// Zero-ordinate table (one ascending ordinate per line)
    #[arg(long, env = "EXPSUM_ZEROS")]
    zeros: PathBuf,
    /// Comma-separated truncation heights; empty emits a header-only CSV
    #[arg(long = "T", default_value = "")]
    t: String,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// x values: comma list or geometric range lo:hi:n
    #[arg(long)]
    x_grid: String,
    /// k values: comma list or geometric range lo:hi:n
    #[arg(long, default_value = "1")]
    k_grid: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, value_parser = parse_theta)]
    theta: f64,
    #[arg(long, default_value_t = C0_DEFAULT)]
    c0: f64,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    x: f64,
    #[arg(long, default_value_t = 1)]
    k: u64,
    #[arg(long, value_parser = parse_theta)]
    theta: f64,
    #[arg(long, default_value_t = C0_DEFAULT)]
    c0: f64,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    /// Evaluate every envelope (out-of-range rows get an empty value)
    #[arg(long, conflicts_with = "name")]
    all: bool,
    /// Evaluate a single named envelope
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args, Debug)]
struct ZerosInfoArgs {
    #[arg(long, env = "EXPSUM_ZEROS")]
    zeros: PathBuf,
}

#[derive(Args, Debug)]
struct PsiArgs {
    #[arg(long)]
    x: f64,
}

fn cmd_sum(a: &SumArgs) -> Result<String> {
    let params = a.params()?;
    let s = direct_sum(&params)?;
    let mass = chebyshev_psi(2.0 * params.x)? - chebyshev_psi(params.x)?;
    let mut out = String::new();
    let _ = writeln!(out, "# command = sum");
    let _ = writeln!(
        out,
        "# x = {}, k = {}, alpha = {}, theta = {}, degenerate_ok = {}",
        a.x, a.k, a.alpha, a.theta, a.degenerate_ok
    );
    out.push_str("re,im,abs,psi_mass\n");
    let _ = writeln!(out, "{},{},{},{}", s.re, s.im, s.norm(), mass);
    Ok(out)
}

fn cmd_explicit(a: &ExplicitArgs) -> Result<String> {
    let params = SumParams::new(a.x, a.k, a.alpha, a.theta)?;
    let t_list = parse_list(&a.t)?;
    let table = load_zeros(&a.zeros)?;
    let report = compare(&params, &table, &t_list)?;
    let mut out = String::new();
    let _ = writeln!(out, "# command = explicit");
    let _ = writeln!(
        out,
        "# x = {}, k = {}, alpha = {}, theta = {}",
        a.x, a.k, a.alpha, a.theta
    );
    let _ = writeln!(
        out,
        "# zeros = {} ({} ordinates, {} source digits)",
        a.zeros.display(),
        table.len(),
        table.source_digits()
    );
    out.push_str("T,direct_re,direct_im,approx_re,approx_im,abs_diff,error_scale,ratio\n");
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.t,
            r.direct.re,
            r.direct.im,
            r.approx.re,
            r.approx.im,
            r.abs_diff,
            r.error_scale,
            r.ratio
        );
    }
    Ok(out)
}

/// Envelope value as a CSV cell; out-of-range parameters give an empty cell.
fn envelope_cell(name: EnvelopeName, params: &SumParams, consts: &EnvelopeConstants) -> String {
    match envelope(name, params, consts) {
        Ok(b) => format!("{}", b.value),
        Err(Error::Precondition(_)) => String::new(),
        Err(Error::Domain(_)) => String::new(),
        Err(e) => format!("{e}"),
    }
}

fn cmd_sweep(a: &SweepArgs) -> Result<String> {
    let xs = parse_grid(&a.x_grid)?;
    let ks: Vec<u64> = parse_grid(&a.k_grid)?
        .into_iter()
        .map(|v| v.round().max(1.0) as u64)
        .collect();
    if xs.is_empty() || ks.is_empty() {
        return Err(Error::Domain("sweep grids must be nonempty".into()));
    }
    let consts = EnvelopeConstants {
        c0: a.c0,
        epsilon: a.epsilon,
        ..EnvelopeConstants::default()
    };
    let mut out = String::new();
    let _ = writeln!(out, "# command = sweep");
    let _ = writeln!(
        out,
        "# x_grid = {}, k_grid = {}, alpha = {}, theta = {}, c0 = {}, epsilon = {}",
        a.x_grid, a.k_grid, a.alpha, a.theta, a.c0, a.epsilon
    );
    out.push_str("x,k,abs_s");
    for name in EnvelopeName::ALL {
        out.push(',');
        out.push_str(name.as_str());
    }
    out.push_str(",ratio_theorem_1_1\n");
    for &x in &xs {
        for &k in &ks {
            let params = SumParams::new(x, k, a.alpha, a.theta)?;
            let abs_s = direct_sum(&params)?.norm();
            let _ = write!(out, "{},{},{}", x, k, abs_s);
            for name in EnvelopeName::ALL {
                out.push(',');
                out.push_str(&envelope_cell(name, &params, &consts));
            }
            let ratio = match envelope(EnvelopeName::Theorem11, &params, &consts) {
                Ok(b) => format!("{}", abs_s / b.value),
                Err(_) => String::new(),
            };
            let _ = writeln!(out, ",{ratio}");
        }
    }
    Ok(out)
}

fn cmd_bounds(a: &BoundsArgs) -> Result<String> {
    // the envelopes do not involve alpha; any nonzero value works here
    let params = SumParams::new(a.x, a.k, 1.0, a.theta)?;
    let consts = EnvelopeConstants {
        c0: a.c0,
        epsilon: a.epsilon,
        ..EnvelopeConstants::default()
    };
    let names: Vec<EnvelopeName> = if let Some(name) = &a.name {
        vec![name.parse()?]
    } else {
        EnvelopeName::ALL.to_vec()
    };
    let mut out = String::new();
    let _ = writeln!(out, "# command = bounds");
    let _ = writeln!(
        out,
        "# x = {}, k = {}, theta = {}, c0 = {}, epsilon = {}",
        a.x, a.k, a.theta, a.c0, a.epsilon
    );
    out.push_str("name,x,k,theta,c0,epsilon,value\n");
    for name in names {
        let cell = if a.name.is_some() {
            // a single requested envelope must be in range
            format!("{}", envelope(name, &params, &consts)?.value)
        } else {
            envelope_cell(name, &params, &consts)
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            name.as_str(),
            a.x,
            a.k,
            a.theta,
            a.c0,
            a.epsilon,
            cell
        );
    }
    Ok(out)
}

fn cmd_zeros_info(a: &ZerosInfoArgs) -> Result<String> {
    let table = load_zeros(&a.zeros)?;
    let mut out = String::new();
    let _ = writeln!(out, "# command = zeros-info");
    let _ = writeln!(out, "# zeros = {}", a.zeros.display());
    out.push_str("count,first,max,source_digits,max_rvm_residual\n");
    let _ = writeln!(
        out,
        "{},{},{},{},{}",
        table.len(),
        table.gammas()[0],
        table.max_gamma(),
        table.source_digits(),
        max_rvm_residual(&table)
    );
    Ok(out)
}

fn cmd_psi(a: &PsiArgs) -> Result<String> {
    let v = chebyshev_psi(a.x)?;
    let mut out = String::new();
    let _ = writeln!(out, "# command = psi");
    let _ = writeln!(out, "# x = {}", a.x);
    out.push_str("x,psi\n");
    let _ = writeln!(out, "{},{}", a.x, v);
    Ok(out)
}

fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Sum(a) => cmd_sum(a),
        Command::Explicit(a) => cmd_explicit(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::ZerosInfo(a) => cmd_zeros_info(a),
        Command::Psi(a) => cmd_psi(a),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Precondition(_) => 2,
        Error::Resource(_) | Error::Quadrature(_) => 3,
        Error::Parse { .. }
        | Error::Monotonicity { .. }
        | Error::EmptyTable
        | Error::Coverage { .. }
        | Error::Io(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // --help/--version land here with non-error kinds
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(output) => {
            let result = match &cli.out {
                Some(path) => std::fs::write(path, &output).map_err(Error::from),
                None => {
                    print!("{output}");
                    Ok(())
                }
            };
            match result {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(exit_code(&e))
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
