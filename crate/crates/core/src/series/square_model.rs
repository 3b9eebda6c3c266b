//! Asymptotic model of the square-series inner sums, used to estimate the
//! tail `Σ_{k>K} |S(k)|² k^{-σ}` when direct summation to the rigorous
//! cutoff is out of reach.
//!
//! For the Apostol–Vu inner sum `S(k) = Σ_{1≤j<k/2} (k−j)^{-p} j^{-q}`,
//! expanding `(k−j)^{-p}` binomially and each power sum `Σ_{j<k/2} j^{r−q}`
//! by Euler–Maclaurin gives
//!
//! ```text
//! S(k) ≈ A(p,q)·k^{1−p−q} + Σ_{r≤R} (p)_r/r!·ζ(q−r)·k^{-p-r}
//!        + (q−p)/24·(k/2)^{-p-q-1}
//!        − [k even]·(½·(k/2)^{-p-q} + (q−p)/8·(k/2)^{-p-q-1})
//! A(p,q) = Σ_{r≥0} (p)_r/r! · 2^{q−1−r}/(r+1−q)
//! ```
//!
//! The full Mordell–Tornheim inner sum is the sum of the two triangular
//! pieces plus the middle term; the parity terms cancel.

use num_complex::Complex64;

use crate::error::Result;
use crate::kernel::power::pow_neg_ln;
use crate::kernel::zeta::power_tail;
use crate::kernel::zeta_continued;

const ZETA_TERMS: usize = 5;
const DEGENERATE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Parity {
    All,
    Even,
}

#[derive(Debug, Clone, Copy)]
struct Term {
    coef: Complex64,
    /// The term is `coef · k^{-exponent}`.
    exponent: Complex64,
    parity: Parity,
}

#[derive(Debug, Clone)]
pub(crate) struct InnerModel {
    terms: Vec<Term>,
}

/// Tail estimate and its error estimate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TailEstimate {
    pub value: f64,
    pub error: f64,
}

fn main_coefficient(p: Complex64, q: Complex64) -> Option<Complex64> {
    let mut rising = Complex64::new(1.0, 0.0); // (p)_r / r!
    let mut sum = Complex64::new(0.0, 0.0);
    for r in 0..400 {
        let denom = q - (r as f64 + 1.0);
        if denom.norm() < DEGENERATE_TOL {
            return None;
        }
        let term = rising * pow_neg_ln(std::f64::consts::LN_2, -(q - 1.0 - r as f64)) / (-denom);
        sum += term;
        if r > 8 && term.norm() < 1e-18 * sum.norm().max(1e-300) {
            return Some(sum);
        }
        rising *= (p + r as f64) / (r as f64 + 1.0);
    }
    Some(sum)
}

fn half_power(coef: Complex64, exponent: Complex64, parity: Parity) -> Term {
    // coef·(k/2)^{-e} = coef·2^{e}·k^{-e}
    Term { coef: coef * pow_neg_ln(std::f64::consts::LN_2, -exponent), exponent, parity }
}

/// Terms of the one-sided (Apostol–Vu) inner sum, `p` on the large index.
fn triangle_terms(p: Complex64, q: Complex64, with_parity: bool) -> Result<Option<Vec<Term>>> {
    for r in 0..=ZETA_TERMS {
        if (q - (r as f64 + 1.0)).norm() < DEGENERATE_TOL {
            return Ok(None);
        }
    }
    let Some(a) = main_coefficient(p, q) else { return Ok(None) };
    let mut terms = vec![Term { coef: a, exponent: p + q - 1.0, parity: Parity::All }];
    let mut rising = Complex64::new(1.0, 0.0);
    for r in 0..=ZETA_TERMS {
        let z = zeta_continued(q - r as f64)?.value;
        terms.push(Term { coef: rising * z, exponent: p + r as f64, parity: Parity::All });
        rising *= (p + r as f64) / (r as f64 + 1.0);
    }
    if with_parity {
        let e0 = p + q;
        let e1 = p + q + 1.0;
        terms.push(half_power((q - p) / 24.0, e1, Parity::All));
        terms.push(half_power(Complex64::new(-0.5, 0.0), e0, Parity::Even));
        terms.push(half_power(-(q - p) / 8.0, e1, Parity::Even));
    }
    Ok(Some(terms))
}

impl InnerModel {
    /// Model of `Σ_{k/2<m≤k−1} m^{-p}(k−m)^{-q}`; `None` if degenerate.
    pub fn apostol_vu(p: Complex64, q: Complex64) -> Result<Option<Self>> {
        Ok(triangle_terms(p, q, true)?.map(|terms| Self { terms }))
    }

    /// Model of `Σ_{m=1}^{k−1} m^{-p}(k−m)^{-q}`; `None` if degenerate.
    pub fn mordell_tornheim(p: Complex64, q: Complex64) -> Result<Option<Self>> {
        let (Some(a), Some(b)) = (triangle_terms(p, q, false)?, triangle_terms(q, p, false)?) else {
            return Ok(None);
        };
        let mut terms = a;
        terms.extend(b);
        Ok(Some(Self { terms }))
    }

    pub fn eval(&self, k: usize) -> Complex64 {
        let ln_k = (k as f64).ln();
        let even = k.is_multiple_of(2);
        self.terms
            .iter()
            .filter(|t| t.parity == Parity::All || even)
            .map(|t| t.coef * pow_neg_ln(ln_k, t.exponent))
            .sum()
    }

    /// `Σ_{k>K} |model(k)|² k^{-σ}`.
    fn square_tail(&self, sigma: f64, cutoff: usize) -> (f64, f64) {
        let mut value = Complex64::new(0.0, 0.0);
        let mut bound = 0.0;
        for a in &self.terms {
            for b in &self.terms {
                let beta = a.exponent + b.exponent.conj() + sigma;
                let coef = a.coef * b.coef.conj();
                let (z, e) = if a.parity == Parity::All && b.parity == Parity::All {
                    power_tail(beta, cutoff, 6)
                } else {
                    let (z, e) = power_tail(beta, cutoff / 2, 6);
                    let scale = pow_neg_ln(std::f64::consts::LN_2, beta);
                    (z * scale, e * scale.norm())
                };
                value += coef * z;
                bound += coef.norm() * e;
            }
        }
        (value.re, bound)
    }

    /// Tail estimate from the model, with the error scaled by the worst
    /// relative model error seen on `k ∈ [K/2, K]`. `exact[i]` is `S(first + i)`.
    pub fn tail_estimate(&self, sigma: f64, exact: &[Complex64], first: usize) -> Option<TailEstimate> {
        let cutoff = first + exact.len() - 1;
        let mut rho: f64 = 0.0;
        for (i, s) in exact.iter().enumerate() {
            let model = self.eval(first + i);
            let scale = model.norm();
            if !(scale > 0.0) {
                return None;
            }
            rho = rho.max((s - model).norm() / scale);
        }
        if !(rho < 0.1) {
            return None;
        }
        let (value, bound) = self.square_tail(sigma, cutoff);
        if !value.is_finite() || value < 0.0 {
            return None;
        }
        Some(TailEstimate { value, error: (2.0 * rho + rho * rho) * value + bound + 1e-15 * value })
    }
}
