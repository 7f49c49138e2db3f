//! Tables of nontrivial zeta-zero ordinates: loading, validation, and
//! Riemann-von Mangoldt counting checks.
//!
//! File format: UTF-8 text, LF or CRLF, one positive decimal ordinate
//! per line in ascending order, '#'-prefixed comment lines ignored,
//! blank lines only at the end.

use std::path::Path;

use crate::error::{Error, Result};

/// Validated ascending list of positive zero ordinates gamma.
/// All real parts are implicitly 1/2.
#[derive(Clone, Debug)]
pub struct ZeroTable {
    gammas: Vec<f64>,
    source_digits: u32,
}

impl ZeroTable {
    pub fn from_gammas(gammas: Vec<f64>, source_digits: u32) -> Result<Self> {
        if gammas.is_empty() {
            return Err(Error::EmptyTable);
        }
        for (i, w) in gammas.windows(2).enumerate() {
            if w[0] >= w[1] {
                return Err(Error::Monotonicity { line: i + 2 });
            }
        }
        if gammas[0] <= 0.0 {
            return Err(Error::Domain("ordinates must be positive".into()));
        }
        Ok(Self {
            gammas,
            source_digits,
        })
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn max_gamma(&self) -> f64 {
        *self.gammas.last().unwrap()
    }

    /// Decimal places of precision carried by the source file.
    pub fn source_digits(&self) -> u32 {
        self.source_digits
    }

    /// N(T): number of ordinates with 0 < gamma <= T.
    pub fn count_up_to(&self, t: f64) -> Result<usize> {
        if t > self.max_gamma() {
            return Err(Error::Coverage {
                t,
                max: self.max_gamma(),
            });
        }
        Ok(self.gammas.partition_point(|&g| g <= t))
    }

    /// Like `count_up_to` but saturating at the table size instead of
    /// failing; used where N(T) feeds an error estimate.
    pub fn count_saturating(&self, t: f64) -> usize {
        self.gammas.partition_point(|&g| g <= t)
    }

    /// Re-serialize in the table file format at source precision.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g in &self.gammas {
            s.push_str(&format!("{:.*}\n", self.source_digits as usize, g));
        }
        s
    }
}

/// Parse a zero table from text. Line numbers are 1-based in errors.
pub fn parse_zeros(text: &str) -> Result<ZeroTable> {
    let mut gammas = Vec::new();
    let mut digits = u32::MAX;
    let mut pending_blank: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.starts_with('#') {
            continue;
        }
        if line.trim().is_empty() {
            pending_blank.get_or_insert(lineno);
            continue;
        }
        if let Some(blank) = pending_blank {
            return Err(Error::Parse {
                line: blank,
                msg: "blank line before end of data".into(),
            });
        }
        let v: f64 = line.trim().parse().map_err(|e| Error::Parse {
            line: lineno,
            msg: format!("{e}: {line:?}"),
        })?;
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("ordinate must be positive, got {line:?}"),
            });
        }
        if let Some(&prev) = gammas.last() {
            if v <= prev {
                return Err(Error::Monotonicity { line: lineno });
            }
        }
        digits = digits.min(decimal_places(line.trim()));
        gammas.push(v);
    }
    if gammas.is_empty() {
        return Err(Error::EmptyTable);
    }
    let digits = if digits == u32::MAX { 0 } else { digits };
    ZeroTable::from_gammas(gammas, digits)
}

pub fn load_zeros<P: AsRef<Path>>(path: P) -> Result<ZeroTable> {
    let text = std::fs::read_to_string(path)?;
    parse_zeros(&text)
}

fn decimal_places(s: &str) -> u32 {
    match s.find('.') {
        Some(i) => s[i + 1..]
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .count() as u32,
        None => 0,
    }
}

/// Riemann-von Mangoldt main term:
/// N(T) ~ (T/2pi) log(T/2pi) - T/2pi + 7/8.
pub fn rvm_estimate(t: f64) -> f64 {
    let u = t / std::f64::consts::TAU;
    u * u.ln() - u + 0.875
}

/// sup over T in the table's range of |N(T) - rvm_estimate(T)|.
/// N is a step function and the estimate is increasing, so the supremum
/// is attained just before or just after a jump.
pub fn max_rvm_residual(table: &ZeroTable) -> f64 {
    let mut worst = 0f64;
    for (i, &g) in table.gammas().iter().enumerate() {
        let est = rvm_estimate(g);
        let below = (i as f64 - est).abs();
        let above = ((i + 1) as f64 - est).abs();
        worst = worst.max(below).max(above);
    }
    worst
}
