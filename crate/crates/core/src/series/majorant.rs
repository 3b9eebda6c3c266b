//! Explicit tail majorants `Σ c·k^{-β}(1+ln k)^j` and their integral-test bounds.

use crate::error::Result;
use crate::kernel::{c64, riemann_zeta_em};

/// Smallest index from which every majorant term is decreasing.
pub(crate) const MIN_TAIL_START: usize = 8;

const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct PowerLog {
    pub coef: f64,
    pub exponent: f64,
    pub log_power: u32,
}

impl PowerLog {
    fn at(&self, x: f64) -> f64 {
        self.coef * x.powf(-self.exponent) * (1.0 + x.ln()).powi(self.log_power as i32)
    }

    /// `∫_K^∞ x^{-β}(1+ln x)^j dx` in closed form (`β > 1`).
    fn integral_from(&self, k: f64) -> f64 {
        let b = self.exponent - 1.0;
        debug_assert!(b > 0.0);
        let l = 1.0 + k.ln();
        let mut acc = 0.0;
        let mut falling = 1.0;
        for i in 0..=self.log_power {
            acc += falling * l.powi((self.log_power - i) as i32) / b.powi(i as i32 + 1);
            falling *= (self.log_power - i) as f64;
        }
        self.coef * k.powf(-b) * acc
    }
}

/// Sum of power-log terms bounding `|term(k)|`.
#[derive(Debug, Clone, PartialEq, Default)]
pub(crate) struct Majorant {
    pub terms: Vec<PowerLog>,
}

impl Majorant {
    pub fn single(coef: f64, exponent: f64, log_power: u32) -> Self {
        Self { terms: vec![PowerLog { coef, exponent, log_power }] }
    }

    pub fn plus(mut self, other: Majorant) -> Self {
        self.terms.extend(other.terms);
        self
    }

    /// Multiplies every term by `k^{-shift}`.
    pub fn shifted(mut self, shift: f64) -> Self {
        for t in &mut self.terms {
            t.exponent += shift;
        }
        self
    }

    /// Majorant of the square of the bounded quantity.
    pub fn squared(&self) -> Self {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &self.terms {
                terms.push(PowerLog {
                    coef: a.coef * b.coef,
                    exponent: a.exponent + b.exponent,
                    log_power: a.log_power + b.log_power,
                });
            }
        }
        Self { terms }
    }

    pub fn at(&self, k: f64) -> f64 {
        self.terms.iter().map(|t| t.at(k)).sum()
    }

    /// Upper bound for `Σ_{k > K} term(k)`, valid for `K ≥ MIN_TAIL_START`.
    pub fn tail(&self, k: usize) -> f64 {
        debug_assert!(k >= MIN_TAIL_START);
        self.terms.iter().map(|t| t.integral_from(k as f64)).sum()
    }

    /// Upper bound for `Σ_{k ≥ 1} term(k)`.
    pub fn total(&self) -> f64 {
        (1..=MIN_TAIL_START).map(|k| self.at(k as f64)).sum::<f64>() + self.tail(MIN_TAIL_START)
    }

    /// Smallest `K ≥ floor` with `tail(K) ≤ eps`, or `(cap, true)` if even
    /// the cap does not reach `eps`.
    pub fn cutoff(&self, eps: f64, floor: usize, cap: usize) -> (usize, bool) {
        let floor = floor.max(MIN_TAIL_START);
        let cap = cap.max(floor);
        if self.tail(floor) <= eps {
            return (floor, false);
        }
        if self.tail(cap) > eps {
            return (cap, true);
        }
        let (mut lo, mut hi) = (floor, cap);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.tail(mid) <= eps {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (hi, false)
    }
}

/// Upper bound for `ζ(σ)`, `σ > 1`.
fn zeta_upper(sigma: f64) -> Result<f64> {
    let z = riemann_zeta_em(c64(sigma, 0.0), 32, 8)?;
    Ok(z.value.re + z.error_bound + 4.0 * f64::EPSILON * z.value.re)
}

/// Bound `Σ_{j ≤ J} j^{-σ} ≤ P(σ, k)` for any `J ≤ k`, as a power-log term in `k`.
pub(crate) fn power_sum_bound(sigma: f64) -> Result<PowerLog> {
    Ok(if sigma > 1.0 + BOUNDARY_TOL {
        PowerLog { coef: zeta_upper(sigma)?, exponent: 0.0, log_power: 0 }
    } else if sigma >= 1.0 - BOUNDARY_TOL {
        PowerLog { coef: 1.0 + 1e-6, exponent: 0.0, log_power: 1 }
    } else {
        let c = if sigma > 0.0 { 1.0 / (1.0 - sigma) } else { 1.0 };
        PowerLog { coef: c, exponent: sigma - 1.0, log_power: 0 }
    })
}

/// Majorant in `m` of `|Σ_{n<m} m^{-s1} n^{-s2} (m+n)^{-s3}|`.
pub(crate) fn av_row(sigma1: f64, sigma2: f64, sigma3: f64) -> Result<Majorant> {
    let c3 = 2f64.powf(-sigma3).max(1.0);
    let p = power_sum_bound(sigma2)?;
    Ok(Majorant::single(c3 * p.coef, sigma1 + sigma3 + p.exponent, p.log_power))
}

/// Majorant in `m` for the Mordell–Tornheim square truncation: the two
/// triangles beyond `M` plus the diagonal.
pub(crate) fn mt_shell(sigma1: f64, sigma2: f64, sigma3: f64) -> Result<Majorant> {
    let diag = Majorant::single(2f64.powf(-sigma3), sigma1 + sigma2 + sigma3, 0);
    Ok(av_row(sigma1, sigma2, sigma3)?.plus(av_row(sigma2, sigma1, sigma3)?).plus(diag))
}

/// Majorant in `k` of `|Σ_{k/2<m≤k−1} m^{-s1}(k−m)^{-s2}|² k^{-σ}`.
pub(crate) fn av_square_row(sigma1: f64, sigma2: f64, sigma: f64) -> Result<Majorant> {
    let c1 = 2f64.powf(sigma1).max(1.0);
    let p = power_sum_bound(sigma2)?;
    let inner = Majorant::single(c1 * p.coef, sigma1 + p.exponent, p.log_power);
    Ok(inner.squared().shifted(sigma))
}

/// Majorant in `k` of `|Σ_{m=1}^{k−1} m^{-s1}(k−m)^{-s2}|² k^{-σ}`.
pub(crate) fn mt_square_row(sigma1: f64, sigma2: f64, sigma: f64) -> Result<Majorant> {
    let near = |a: f64, b: f64| -> Result<PowerLog> {
        // m ≤ k/2 carries m^{-a}, the partner k−m ≥ k/2 carries k^{-b}
        let p = power_sum_bound(a)?;
        Ok(PowerLog { coef: 2f64.powf(b).max(1.0) * p.coef, exponent: b + p.exponent, log_power: p.log_power })
    };
    let inner = Majorant { terms: vec![near(sigma1, sigma2)?, near(sigma2, sigma1)?] };
    Ok(inner.squared().shifted(sigma))
}
