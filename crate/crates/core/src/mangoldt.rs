//! Von Mangoldt function over integer ranges via segmented sieving,
//! plus the Chebyshev psi function.

use crate::error::{Error, Result};
use crate::kahan::Neumaier;

/// Hard cap on sieved integers; keeps n^theta and phase arithmetic
/// within the precision analysis of the phase pipeline.
pub const MAX_N: u64 = 1 << 50;

/// Minimum accepted segment size for `sieve_lambda`.
pub const MIN_SEGMENT: u64 = 64;

/// Default segment size: an L2-resident sieve window.
pub const DEFAULT_SEGMENT: u64 = 1 << 20;

/// Fixed accumulation granule for deterministic parallel reductions.
/// Partial sums are always formed per BLOCK-aligned slice of n, so
/// results do not depend on segment size or thread count.
pub const BLOCK: u64 = 1 << 16;

/// Half-open-below range (lo, hi] of integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegerRange {
    lo: u64,
    hi: u64,
}

impl IntegerRange {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo < 1 {
            return Err(Error::Domain(format!("range lower bound {lo} must be >= 1")));
        }
        if lo >= hi {
            return Err(Error::Domain(format!("empty range ({lo}, {hi}]")));
        }
        if hi > MAX_N {
            return Err(Error::Domain(format!("range upper bound {hi} exceeds 2^50")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn width(&self) -> u64 {
        self.hi - self.lo
    }
}

/// One point of Lambda support: n = p^m with Lambda(n) = log p.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaEntry {
    pub n: u64,
    pub lambda: f64,
}

#[inline]
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

/// All primes <= limit by a plain sieve of Eratosthenes.
pub fn base_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

/// Lambda support in (lo, hi], ascending. `base` must contain all primes
/// <= sqrt(hi). Primes get log n; prime powers p^m (m >= 2) get log p and
/// are merged in after the sieve pass.
pub fn lambda_in_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<LambdaEntry> {
    debug_assert!(lo < hi);
    let width = (hi - lo) as usize;
    let mut composite = vec![false; width]; // index i <-> n = lo + 1 + i
    let root = isqrt(hi);
    for &p in base {
        if p > root {
            break;
        }
        let start = (lo / p + 1).max(p) * p; // first multiple > lo that is >= p^2
        let mut q = start;
        while q <= hi {
            composite[(q - lo - 1) as usize] = true;
            q += p;
        }
    }

    // prime powers p^m, m >= 2, landing in (lo, hi]
    let mut powers: Vec<LambdaEntry> = Vec::new();
    for &p in base {
        let mut q = match p.checked_mul(p) {
            Some(q) => q,
            None => break,
        };
        if q > hi {
            break;
        }
        let lambda = (p as f64).ln();
        while q <= hi {
            if q > lo {
                powers.push(LambdaEntry { n: q, lambda });
            }
            q = match q.checked_mul(p) {
                Some(q) => q,
                None => break,
            };
        }
    }
    powers.sort_by_key(|e| e.n);

    let mut out = Vec::new();
    let mut pw = powers.iter().peekable();
    for i in 0..width {
        let n = lo + 1 + i as u64;
        while let Some(e) = pw.peek() {
            if e.n < n {
                out.push(**e);
                pw.next();
            } else {
                break;
            }
        }
        if !composite[i] && n >= 2 {
            out.push(LambdaEntry {
                n,
                lambda: (n as f64).ln(),
            });
        } else if let Some(e) = pw.peek() {
            if e.n == n {
                out.push(**e);
                pw.next();
            }
        }
    }
    for e in pw {
        out.push(*e);
    }
    out
}

/// Lazily yields Lambda support over a range, segment by segment.
pub struct LambdaStream {
    range: IntegerRange,
    segment_size: u64,
    base: Vec<u64>,
    cursor: u64,
    buf: std::vec::IntoIter<LambdaEntry>,
}

impl LambdaStream {
    fn advance_segment(&mut self) -> bool {
        if self.cursor >= self.range.hi {
            return false;
        }
        let seg_hi = (self.cursor + self.segment_size).min(self.range.hi);
        let entries = lambda_in_segment(self.cursor, seg_hi, &self.base);
        self.cursor = seg_hi;
        self.buf = entries.into_iter();
        true
    }
}

impl Iterator for LambdaStream {
    type Item = LambdaEntry;

    fn next(&mut self) -> Option<LambdaEntry> {
        loop {
            if let Some(e) = self.buf.next() {
                return Some(e);
            }
            if !self.advance_segment() {
                return None;
            }
        }
    }
}

/// Stream Lambda(n) over (lo, hi] with the given sieving granularity.
pub fn sieve_lambda(range: IntegerRange, segment_size: u64) -> Result<LambdaStream> {
    if segment_size < MIN_SEGMENT {
        return Err(Error::Domain(format!(
            "segment_size {segment_size} below minimum {MIN_SEGMENT}"
        )));
    }
    let root = isqrt(range.hi);
    if root > (1 << 26) {
        return Err(Error::Resource(format!(
            "base-prime sieve up to {root} exceeds the memory budget"
        )));
    }
    Ok(LambdaStream {
        range,
        segment_size,
        base: base_primes(root),
        cursor: range.lo,
        buf: Vec::new().into_iter(),
    })
}

/// BLOCK-aligned partition of a range; the deterministic unit of
/// parallel accumulation.
pub fn block_ranges(range: IntegerRange) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut lo = range.lo;
    while lo < range.hi {
        let hi = ((lo / BLOCK + 1) * BLOCK).min(range.hi);
        out.push((lo, hi));
        lo = hi;
    }
    out
}

/// Lambda(n) by trial division. Independent test oracle, O(sqrt n).
pub fn lambda_single(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("Lambda(0) is undefined".into()));
    }
    if n > MAX_N {
        return Err(Error::Domain(format!("n={n} exceeds 2^50")));
    }
    if n == 1 {
        return Ok(0.0);
    }
    let mut m = n;
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            p = d;
            while m % d == 0 {
                m /= d;
            }
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Ok((n as f64).ln()); // n prime
    }
    if m != 1 {
        return Ok(0.0); // at least two distinct prime factors
    }
    // n is a power of p iff dividing out p alone reached 1
    let mut q = n;
    while q % p == 0 {
        q /= p;
    }
    Ok(if q == 1 { (p as f64).ln() } else { 0.0 })
}

/// Chebyshev psi(x) = sum of Lambda(n) for n <= x, compensated.
pub fn chebyshev_psi(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("psi argument {x} must be >= 0")));
    }
    if x > MAX_N as f64 {
        return Err(Error::Domain(format!("psi argument {x} exceeds 2^50")));
    }
    let hi = x.floor() as u64;
    if hi < 2 {
        return Ok(0.0);
    }
    let range = IntegerRange::new(1, hi)?;
    let mut acc = Neumaier::new();
    for e in sieve_lambda(range, DEFAULT_SEGMENT)? {
        acc.add(e.lambda);
    }
    Ok(acc.value())
}
