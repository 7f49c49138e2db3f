//! Compensated accumulation and deterministic pairwise-tree reduction.

use num_complex::Complex64;

/// Neumaier-compensated scalar accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Component-wise compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexSum {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Reduce partial results in a fixed pairwise tree: adjacent pairs are
/// combined level by level, so the result depends only on the partition
/// of work, never on thread scheduling.
pub fn tree_reduce<T: Copy, F: Fn(T, T) -> T>(parts: &[T], identity: T, combine: F) -> T {
    if parts.is_empty() {
        return identity;
    }
    let mut level: Vec<T> = parts.to_vec();
    while level.len() > 1 {
        let mut next = Vec::with_capacity((level.len() + 1) / 2);
        for pair in level.chunks(2) {
            next.push(if pair.len() == 2 {
                combine(pair[0], pair[1])
            } else {
                pair[0]
            });
        }
        level = next;
    }
    level[0]
}

pub fn tree_reduce_complex(parts: &[Complex64]) -> Complex64 {
    tree_reduce(parts, Complex64::new(0.0, 0.0), |a, b| a + b)
}
