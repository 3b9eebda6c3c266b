//! Brute-force oracles shared by the integration tests. Everything here is
//! written from the series definitions with plain loops; none of it calls
//! into the library's summation code.

#![allow(dead_code)]

use num_complex::Complex64;

/// `k^{-s}` for `k ≤ upto`, index 0 unused.
pub fn powers(s: Complex64, upto: usize) -> Vec<Complex64> {
    (0..=upto)
        .map(|k| if k == 0 { Complex64::new(0.0, 0.0) } else { (-s * (k as f64).ln()).exp() })
        .collect()
}

/// Kahan-compensated complex accumulation.
#[derive(Default, Clone, Copy)]
pub struct Kahan {
    sum: Complex64,
    c: Complex64,
}

impl Kahan {
    pub fn push(&mut self, x: Complex64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = Complex64::new((t.re - self.sum.re) - y.re, (t.im - self.sum.im) - y.im);
        self.sum = t;
    }

    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

/// Partial sums of the Apostol-Vu series over `m ≤ L` for every `L` in
/// `levels` (ascending), in one pass.
pub fn av_partials(s: [Complex64; 3], levels: &[usize]) -> Vec<Complex64> {
    let top = *levels.last().unwrap();
    let (p1, p2, p3) = (powers(s[0], top), powers(s[1], top), powers(s[2], 2 * top));
    let mut acc = Kahan::default();
    let mut out = Vec::new();
    let mut next = 0;
    for m in 1..=top {
        let mut row = Kahan::default();
        for n in 1..m {
            row.push(p2[n] * p3[m + n]);
        }
        acc.push(p1[m] * row.value());
        if m == levels[next] {
            out.push(acc.value());
            next += 1;
        }
    }
    out
}

/// Mordell-Tornheim partial sum over the square `m, n ≤ L`.
pub fn mt_partial(s: [Complex64; 3], l: usize) -> Complex64 {
    let (p1, p2, p3) = (powers(s[0], l), powers(s[1], l), powers(s[2], 2 * l));
    let mut acc = Kahan::default();
    for m in 1..=l {
        let mut row = Kahan::default();
        for n in 1..=l {
            row.push(p2[n] * p3[m + n]);
        }
        acc.push(p1[m] * row.value());
    }
    acc.value()
}

/// Partial sums of `Σ_k |S(k)|² k^{-σ}` for every cutoff in `levels`.
/// `full` selects the Mordell-Tornheim inner sum over `1 ≤ m ≤ k−1`,
/// otherwise `k/2 < m ≤ k−1`.
pub fn square_partials(s1: Complex64, s2: Complex64, sigma: f64, full: bool, levels: &[usize]) -> Vec<f64> {
    let top = *levels.last().unwrap();
    let (p1, p2) = (powers(s1, top), powers(s2, top));
    let mut acc = Kahan::default();
    let mut out = Vec::new();
    let mut next = 0;
    for k in 2..=top {
        let lo = if full { 1 } else { k / 2 + 1 };
        let mut inner = Kahan::default();
        for m in lo..k {
            inner.push(p1[m] * p2[k - m]);
        }
        acc.push(Complex64::new(inner.value().norm_sqr() * (k as f64).powf(-sigma), 0.0));
        if k == levels[next] {
            out.push(acc.value().re);
            next += 1;
        }
    }
    out
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Vec<Complex64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (x, &v) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    x
}

fn fit_limit(levels: &[usize], sums: &[Complex64], exponents: &[Complex64]) -> Complex64 {
    let rows: Vec<Vec<Complex64>> = levels
        .iter()
        .map(|&l| {
            let ln = (l as f64).ln();
            std::iter::once(Complex64::new(1.0, 0.0)).chain(exponents.iter().map(|e| (-e * ln).exp())).collect()
        })
        .collect();
    solve(rows, sums.to_vec())[0]
}

/// Generalised Richardson extrapolation: fits
/// `S(L) = S∞ + Σ c_i L^{-e_i}` through the last `exponents.len() + 1`
/// levels. The error estimate is the change against the same fit one level
/// lower.
pub fn extrapolate(levels: &[usize], sums: &[Complex64], exponents: &[Complex64]) -> (Complex64, f64) {
    let k = exponents.len() + 1;
    assert!(levels.len() > k, "need one spare level for the error estimate");
    let n = levels.len();
    let fine = fit_limit(&levels[n - k..], &sums[n - k..], exponents);
    let coarse = fit_limit(&levels[n - k - 1..n - 1], &sums[n - k - 1..n - 1], exponents);
    (fine, (fine - coarse).norm())
}

pub fn real_exponents(e: &[f64]) -> Vec<Complex64> {
    e.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
