//! Compensated accumulation and deterministic blocked reductions.
//!
//! Long double sums are accumulated with error-free transformations
//! (Knuth's TwoSum) on each real component. Parallel reductions split the
//! index range into fixed blocks, sum every block independently and then
//! combine the block results in ascending order, so the result does not
//! depend on how many worker threads took part.

use std::ops::AddAssign;

use num_complex::Complex64;
use rayon::prelude::*;

/// Outer-loop block length for parallel reductions.
pub const BLOCK_LEN: usize = 4096;

/// Inner loops accumulate this many terms naively before folding the
/// partial into a compensated accumulator.
pub const CHUNK_LEN: usize = 64;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Compensated real accumulator.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let (s, e) = two_sum(self.sum, x);
        self.sum = s;
        self.comp += e;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl CompensatedSum {
    /// Combine with another accumulator.
    pub fn merge(mut self, rhs: Self) -> Self {
        self.add(rhs.sum);
        self.comp += rhs.comp;
        self
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated complex accumulator (independent compensation per component).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedComplex {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplex {
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

impl AddAssign<Complex64> for CompensatedComplex {
    fn add_assign(&mut self, rhs: Complex64) {
        self.add(rhs);
    }
}

impl CompensatedComplex {
    /// Combine with another accumulator.
    pub fn merge(self, rhs: Self) -> Self {
        CompensatedComplex { re: self.re.merge(rhs.re), im: self.im.merge(rhs.im) }
    }
}

impl FromIterator<Complex64> for CompensatedComplex {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = CompensatedComplex::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// `Σ_{i} a[i] · b[i]` for equal-length slices, chunked naive partials folded
/// into a compensated accumulator.
#[inline]
pub fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = CompensatedComplex::new();
    for (ca, cb) in a.chunks(CHUNK_LEN).zip(b.chunks(CHUNK_LEN)) {
        // two independent partial sums keep the FP pipeline busy
        let (mut re0, mut im0, mut re1, mut im1) = (0.0, 0.0, 0.0, 0.0);
        let mut pairs = ca.chunks_exact(2).zip(cb.chunks_exact(2));
        for (x, y) in &mut pairs {
            re0 += x[0].re * y[0].re - x[0].im * y[0].im;
            im0 += x[0].re * y[0].im + x[0].im * y[0].re;
            re1 += x[1].re * y[1].re - x[1].im * y[1].im;
            im1 += x[1].re * y[1].im + x[1].im * y[1].re;
        }
        if ca.len() % 2 == 1 {
            let (x, y) = (ca[ca.len() - 1], cb[cb.len() - 1]);
            re0 += x.re * y.re - x.im * y.im;
            im0 += x.re * y.im + x.im * y.re;
        }
        acc.add(Complex64::new(re0 + re1, im0 + im1));
    }
    acc.value()
}

/// Real counterpart of [`dot`].
#[inline]
pub fn dot_real(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = CompensatedSum::new();
    for (ca, cb) in a.chunks(CHUNK_LEN).zip(b.chunks(CHUNK_LEN)) {
        let mut p = [0.0f64; 4];
        let mut quads = ca.chunks_exact(4).zip(cb.chunks_exact(4));
        for (x, y) in &mut quads {
            p[0] += x[0] * y[0];
            p[1] += x[1] * y[1];
            p[2] += x[2] * y[2];
            p[3] += x[3] * y[3];
        }
        let rem = ca.len() % 4;
        for i in ca.len() - rem..ca.len() {
            p[0] += ca[i] * cb[i];
        }
        acc.add((p[0] + p[1]) + (p[2] + p[3]));
    }
    acc.value()
}

/// `Σ_{i ∈ [start, end)} term(i)` with a fixed block decomposition.
///
/// Blocks are evaluated in parallel; block results are combined in
/// ascending block order, so the result is bit-identical for any size of
/// the rayon thread pool.
pub fn blocked_sum<F>(start: usize, end: usize, term: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    if end <= start {
        return Complex64::new(0.0, 0.0);
    }
    let blocks: Vec<(usize, usize)> = (start..end)
        .step_by(BLOCK_LEN)
        .map(|lo| (lo, (lo + BLOCK_LEN).min(end)))
        .collect();
    let partials: Vec<CompensatedComplex> = blocks
        .par_iter()
        .map(|&(lo, hi)| (lo..hi).map(&term).collect())
        .collect();
    partials.into_iter().fold(CompensatedComplex::new(), |a, b| a.merge(b)).value()
}

/// Real counterpart of [`blocked_sum`].
pub fn blocked_sum_real<F>(start: usize, end: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    if end <= start {
        return 0.0;
    }
    let blocks: Vec<(usize, usize)> = (start..end)
        .step_by(BLOCK_LEN)
        .map(|lo| (lo, (lo + BLOCK_LEN).min(end)))
        .collect();
    let partials: Vec<CompensatedSum> = blocks
        .par_iter()
        .map(|&(lo, hi)| (lo..hi).map(&term).collect())
        .collect();
    partials.into_iter().fold(CompensatedSum::new(), |a, b| a.merge(b)).value()
}
