//! Euler–Maclaurin accelerated evaluation of ζ_AV and ζ_MT.
//!
//! For `ζ_AV` the inner index `n` is split at `N`:
//!
//! - `n ≤ N`: the `m`-sum is taken directly up to `M ≥ 4N` and the rest
//!   `Σ_{m>M} m^{-s1}(m+n)^{-s3}` by Euler–Maclaurin, with the integral
//!   expanded binomially in `n/u`.
//! - `n > N`: scaling `m = n·v` turns `Σ_{m>n} m^{-s1}(m+n)^{-s3}` into
//!   `n^{1-s1-s3}·J0 − n^{-s1-s3}·g(1)/2 − Σ_j B_{2j}/(2j)!·n^{-s1-s3-2j+1}·g^{(2j-1)}(1)`
//!   with `g(v) = v^{-s1}(1+v)^{-s3}` and `J0 = ∫_1^∞ g`, so the whole
//!   region collapses to a handful of Dirichlet tails `Σ_{n>N} n^{-α}`.
//!
//! `ζ_MT` is covered by the same pieces: two such strips, the two far
//! triangles and the far diagonal. The error estimate is the change under
//! a 1.5× enlargement of `(N, M)`, so it is heuristic.

use num_complex::Complex64;

use super::direct::{check_av_region, check_mt_region};
use super::ZetaArgs;
use crate::approx::ApproxValue;
use crate::error::{Result, ZetaError};
use crate::kernel::bernoulli::bernoulli_even_over_factorial;
use crate::kernel::power::{neg_power_table, pow_neg_ln};
use crate::kernel::quadrature::PanelRule;
use crate::kernel::dirichlet_tail;
use crate::summation::{dot, CompensatedComplex};

/// Split point and Euler–Maclaurin order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AcceleratedParams {
    /// Inner-index split `N`.
    pub start: usize,
    /// Number of Bernoulli corrections.
    pub order: usize,
}

impl AcceleratedParams {
    /// Defaults that make the Euler–Maclaurin corrections decay quickly.
    pub fn for_args(args: &ZetaArgs) -> Self {
        let size = args.s1().norm().max(args.s2().norm()).max(args.s3().norm());
        Self { start: (3.0 * size).ceil().max(40.0) as usize, order: 8 }
    }

    fn enlarged(&self) -> Self {
        Self { start: self.start + self.start / 2, order: self.order }
    }
}

struct Kernel {
    s1: Complex64,
    s3: Complex64,
    /// (s1)_i, (s3)_i for i ≤ 2p
    poch1: Vec<Complex64>,
    poch3: Vec<Complex64>,
    binom: Vec<Vec<f64>>,
    order: usize,
}

impl Kernel {
    fn new(s1: Complex64, s3: Complex64, order: usize) -> Self {
        let len = 2 * order + 1;
        let poch = |s: Complex64| {
            let mut v = vec![Complex64::new(1.0, 0.0)];
            for i in 1..len {
                let prev = v[i - 1];
                v.push(prev * (s + (i - 1) as f64));
            }
            v
        };
        let mut binom = vec![vec![1.0]];
        for r in 1..len {
            let prev = &binom[r - 1];
            let mut row = vec![1.0; r + 1];
            for i in 1..r {
                row[i] = prev[i - 1] + prev[i];
            }
            binom.push(row);
        }
        Self { s1, s3, poch1: poch(s1), poch3: poch(s3), binom, order }
    }

    /// `G(r) = Σ_i C(r,i)(s1)_i(s3)_{r−i} x^i y^{r−i}`, so that the r-th
    /// derivative of `u^{-s1}(u+n)^{-s3}` is `(−1)^r u^{-s1}(u+n)^{-s3} G(r)`
    /// with `x = 1/u`, `y = 1/(u+n)`.
    fn g(&self, r: usize, x: f64, y: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..=r {
            acc += self.poch1[i] * self.poch3[r - i] * (self.binom[r][i] * x.powi(i as i32) * y.powi((r - i) as i32));
        }
        acc
    }

    /// `Σ_j B_{2j}/(2j)! · G(2j−1)`.
    fn corrections(&self, x: f64, y: f64) -> Complex64 {
        (1..=self.order).map(|j| self.g(2 * j - 1, x, y) * bernoulli_even_over_factorial(j)).sum()
    }

    /// `Σ_{m>M} m^{-s1}(m+n)^{-s3}` for `M ≥ 2·max(1,|s3|)·n`.
    fn far_row(&self, n: usize, big_m: usize) -> Complex64 {
        let mf = big_m as f64;
        let nf = n as f64;
        let a = pow_neg_ln(mf.ln(), self.s1);
        let b = pow_neg_ln((mf + nf).ln(), self.s3);
        let integral = self.binomial_integral(mf, nf / mf);
        integral - a * b * 0.5 + a * b * self.corrections(1.0 / mf, 1.0 / (mf + nf))
    }

    /// `∫_U^∞ u^{-s1}(u+c)^{-s3} du = U^{1-s1-s3} Σ_k binom(−s3,k)(c/U)^k/(s1+s3+k−1)`.
    fn binomial_integral(&self, big_u: f64, ratio: f64) -> Complex64 {
        let e = self.s1 + self.s3 - 1.0;
        let lead = pow_neg_ln(big_u.ln(), e);
        let mut coef = Complex64::new(1.0, 0.0);
        let mut power = 1.0;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..2000 {
            let term = coef * power / (e + k as f64);
            sum += term;
            if k > 2 && term.norm() < 1e-18 * sum.norm() {
                break;
            }
            coef *= -(self.s3 + k as f64) / (k as f64 + 1.0);
            power *= ratio;
        }
        lead * sum
    }

    /// `J0 = ∫_1^∞ v^{-s1}(1+v)^{-s3} dv`.
    fn j0(&self) -> Complex64 {
        let split = (2.0 * self.s3.norm() + 2.0).max(2.0);
        let width = split.ln();
        let rate = (Complex64::new(1.0, 0.0) - self.s1).norm() + self.s3.norm();
        let panels = (width * rate / 2.0).ceil() as usize + 2;
        let rule = PanelRule::gauss_legendre(24);
        let (near, _) = rule.integrate_panels(0.0, width, panels, |w| {
            let ln_v = w;
            let ln_1pv = w.exp().ln_1p();
            (ln_v * (Complex64::new(1.0, 0.0) - self.s1) - self.s3 * ln_1pv).exp()
        });
        near + self.binomial_integral(split, 1.0 / split)
    }

    /// `Σ_{n>N} n^{-s2} Σ_{m>n} m^{-s1}(m+n)^{-s3}`.
    fn far_triangle(&self, s2: Complex64, n_start: usize) -> Result<Complex64> {
        let sigma = self.s1 + s2 + self.s3;
        let two_pow = pow_neg_ln(std::f64::consts::LN_2, self.s3);
        let mut acc = self.j0() * dirichlet_tail(sigma - 1.0, n_start)?.value;
        acc -= two_pow * 0.5 * dirichlet_tail(sigma, n_start)?.value;
        for j in 1..=self.order {
            let c = self.g(2 * j - 1, 1.0, 0.5) * bernoulli_even_over_factorial(j);
            acc += two_pow * c * dirichlet_tail(sigma + (2 * j - 1) as f64, n_start)?.value;
        }
        Ok(acc)
    }
}

fn direct_limit(n_start: usize, s3: Complex64) -> usize {
    n_start * (2.0 * s3.norm().max(1.0)).ceil().max(4.0) as usize
}

fn av_value(args: &ZetaArgs, params: &AcceleratedParams) -> Result<(Complex64, f64)> {
    let n_start = params.start;
    let big_m = direct_limit(n_start, args.s3());
    let kernel = Kernel::new(args.s1(), args.s3(), params.order);
    let pm = neg_power_table(args.s1(), big_m);
    let pn = neg_power_table(args.s2(), n_start);
    let pk = neg_power_table(args.s3(), big_m + n_start);
    let mut near = CompensatedComplex::new();
    let mut abs = 0.0;
    for n in 1..=n_start {
        let row = dot(&pm[n + 1..=big_m], &pk[2 * n + 1..=big_m + n]) + kernel.far_row(n, big_m);
        let term = pn[n] * row;
        abs += term.norm();
        near.add(term);
    }
    let far = kernel.far_triangle(args.s2(), n_start)?;
    Ok((near.value() + far, abs + far.norm()))
}

fn mt_value(args: &ZetaArgs, params: &AcceleratedParams) -> Result<(Complex64, f64)> {
    let n_start = params.start;
    let big_m = direct_limit(n_start, args.s3());
    let k13 = Kernel::new(args.s1(), args.s3(), params.order);
    let k23 = Kernel::new(args.s2(), args.s3(), params.order);
    let pm = neg_power_table(args.s1(), big_m);
    let pn = neg_power_table(args.s2(), big_m);
    let pk = neg_power_table(args.s3(), big_m + n_start);
    let mut acc = CompensatedComplex::new();
    let mut abs = 0.0;
    // n ≤ N, every m
    for n in 1..=n_start {
        let row = dot(&pm[1..=big_m], &pk[n + 1..=big_m + n]) + k13.far_row(n, big_m);
        let term = pn[n] * row;
        abs += term.norm();
        acc.add(term);
    }
    // m ≤ N, n > N
    for m in 1..=n_start {
        let row = dot(&pn[n_start + 1..=big_m], &pk[n_start + 1 + m..=big_m + m]) + k23.far_row(m, big_m);
        let term = pm[m] * row;
        abs += term.norm();
        acc.add(term);
    }
    let upper = k13.far_triangle(args.s2(), n_start)?;
    let lower = k23.far_triangle(args.s1(), n_start)?;
    let diag = pow_neg_ln(std::f64::consts::LN_2, args.s3()) * dirichlet_tail(args.sum(), n_start)?.value;
    acc.add(upper);
    acc.add(lower);
    acc.add(diag);
    Ok((acc.value(), abs + upper.norm() + lower.norm() + diag.norm()))
}

fn accelerated(
    args: &ZetaArgs,
    eps: f64,
    base: AcceleratedParams,
    value: fn(&ZetaArgs, &AcceleratedParams) -> Result<(Complex64, f64)>,
) -> Result<ApproxValue> {
    if !(eps > 0.0) {
        return Err(ZetaError::domain("accelerated series", "eps > 0 required"));
    }
    let mut params = base;
    let mut best = None;
    for _ in 0..4 {
        let (a, _) = value(args, &params)?;
        let (b, abs) = value(args, &params.enlarged())?;
        let bound = (a - b).norm() + 32.0 * f64::EPSILON * abs;
        let approx = ApproxValue::heuristic(crate::kernel::ensure_finite(b, "accelerated series")?, bound)?;
        if bound <= eps {
            return Ok(approx);
        }
        best = Some(approx);
        params = AcceleratedParams { start: 2 * params.start, order: params.order };
    }
    Ok(best.expect("at least one pass"))
}

/// `ζ_AV` by Euler–Maclaurin acceleration, for the absolute-convergence
/// region when direct summation would need too many terms.
pub fn av2_accelerated(args: &ZetaArgs, eps: f64, params: Option<AcceleratedParams>) -> Result<ApproxValue> {
    check_av_region(args)?;
    accelerated(args, eps, params.unwrap_or_else(|| AcceleratedParams::for_args(args)), av_value)
}

/// `ζ_MT` by Euler–Maclaurin acceleration.
pub fn mt2_accelerated(args: &ZetaArgs, eps: f64, params: Option<AcceleratedParams>) -> Result<ApproxValue> {
    check_mt_region(args)?;
    accelerated(args, eps, params.unwrap_or_else(|| AcceleratedParams::for_args(args)), mt_value)
}
