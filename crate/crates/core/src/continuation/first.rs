//! The first approximation formula: a finite double sum over `n ≤ x`,
//! `n < m ≤ y`, plus boundary and tail corrections expressed through tail
//! integrals and a Dirichlet tail.

use serde::{Deserialize, Serialize};

use super::{guard_hyperplane, require};
use crate::approx::ApproxValue;
use crate::constants::Constants;
use crate::error::{Result, ZetaError};
use crate::kernel::power::{neg_power_table, pow_neg_ln};
use crate::kernel::{dirichlet_tail, tail_integral, QuadratureSpec};
use crate::series::ZetaArgs;
use crate::summation::{dot, CompensatedComplex, CompensatedSum};

/// Cut points `x ≤ y` and the admissibility constant `C > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct FirstApproxParams {
    x: f64,
    y: f64,
    c: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    x: f64,
    y: f64,
    c: f64,
}

impl TryFrom<RawParams> for FirstApproxParams {
    type Error = ZetaError;
    fn try_from(r: RawParams) -> Result<Self> {
        FirstApproxParams::new(r.x, r.y, r.c)
    }
}

impl From<FirstApproxParams> for RawParams {
    fn from(p: FirstApproxParams) -> Self {
        RawParams { x: p.x, y: p.y, c: p.c }
    }
}

impl FirstApproxParams {
    pub fn new(x: f64, y: f64, c: f64) -> Result<Self> {
        if !(x >= 1.0) || !x.is_finite() {
            return Err(ZetaError::domain("FirstApproxParams", format!("x ≥ 1 required, got {x}")));
        }
        if !(y >= x) || !y.is_finite() {
            return Err(ZetaError::domain("FirstApproxParams", format!("y ≥ x required, got y = {y}, x = {x}")));
        }
        if !(c > 1.0) || !c.is_finite() {
            return Err(ZetaError::domain("FirstApproxParams", format!("C > 1 required, got {c}")));
        }
        Ok(Self { x, y, c })
    }

    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> f64 {
        self.y
    }
    pub fn c(&self) -> f64 {
        self.c
    }

    /// `|t3| ≤ 2πx/C − |t1|`.
    pub fn admits(&self, args: &ZetaArgs) -> bool {
        args.t3().abs() <= self.admissible_t3(args.t1())
    }

    /// Largest `|t3|` admitted for the given `t1`.
    pub fn admissible_t3(&self, t1: f64) -> f64 {
        2.0 * std::f64::consts::PI * self.x / self.c - t1.abs()
    }
}

fn check(args: &ZetaArgs, p: &FirstApproxParams) -> Result<()> {
    let (s1, s2, s3) = (args.sigma1(), args.sigma2(), args.sigma3());
    let (t1, t3) = (args.t1(), args.t3());
    require(s1 >= 0.0, || format!("σ1 ≥ 0 (σ1 = {s1})"))?;
    require(s3 > 0.0, || format!("σ3 > 0 (σ3 = {s3})"))?;
    require(s3 > 2.0 - s1 - s2, || format!("σ3 > 2 − σ1 − σ2 (σ1 + σ2 + σ3 = {})", s1 + s2 + s3))?;
    require(!(t1 == 0.0 && t3 == 0.0), || "(t1, t3) ≠ (0, 0)".to_string())?;
    require(t1 * t3 >= 0.0, || format!("t1 and t3 of the same sign (t1 = {t1}, t3 = {t3})"))?;
    require(p.admits(args), || {
        format!("|t3| ≤ 2πx/C − |t1| (|t3| = {}, bound = {})", t3.abs(), p.admissible_t3(t1))
    })?;
    guard_hyperplane("s1 + s3 = 1", args.s1() + args.s3() - 1.0)
}

/// First approximation formula with the built-in constants.
pub fn av2_approx_first(args: &ZetaArgs, p: &FirstApproxParams, quad: &QuadratureSpec) -> Result<ApproxValue> {
    av2_approx_first_with(args, p, quad, &Constants::builtin())
}

/// ```text
/// ζ_AV ≈ Σ_{n≤x} Σ_{n<m≤y} m^{-s1} n^{-s2} (m+n)^{-s3}
///      + y^{1-s1}/(s1+s3−1) · Σ_{n≤x} n^{-s2} (y+n)^{-s3}
///      + s3/(s1+s3−1) · Σ_{n≤x} n^{1-s2} ∫_y^∞ u^{-s1}(u+n)^{-s3-1} du
///      + 2^{-s3}/(s1+s3−1) · Σ_{n>x} n^{1-s1-s2-s3}
///      + s3/(s1+s3−1) · Σ_{n>x} n^{1-s2} ∫_n^∞ u^{-s1}(u+n)^{-s3-1} du
/// ```
///
/// In the last term `u = n·v` gives `∫_n^∞ … = n^{-s1-s3} J` with
/// `J = ∫_1^∞ v^{-s1}(v+1)^{-s3-1} dv`, so it is an exact multiple of the
/// same Dirichlet tail as the fourth term.
///
/// The O-term is realised as `C_first · (y^{-σ1} Σ_{n≤x} n^{-σ2}(y+n)^{-σ3}
/// + 2^{-σ3} Σ_{n>x} n^{-σ1-σ2-σ3})`, the size of the first neglected
/// boundary corrections; for `y = x` it scales like `x^{-σ1-σ3}`,
/// `x^{-σ1-σ3} log x` or `x^{1-σ1-σ2-σ3}` as σ2 is above, at or below 1.
pub fn av2_approx_first_with(
    args: &ZetaArgs,
    p: &FirstApproxParams,
    quad: &QuadratureSpec,
    constants: &Constants,
) -> Result<ApproxValue> {
    check(args, p)?;
    let (s1, s2, s3) = (args.s1(), args.s2(), args.s3());
    let nx = p.x.floor() as usize;
    let ny = p.y.floor() as usize;
    let denom = s1 + s3 - 1.0;

    // (i)
    let pm = neg_power_table(s1, ny);
    let pn = neg_power_table(s2, nx);
    let pk = neg_power_table(s3, ny + nx);
    let mut main = CompensatedComplex::new();
    for n in 1..=nx.min(ny.saturating_sub(1)) {
        main.add(pn[n] * dot(&pm[n + 1..=ny], &pk[2 * n + 1..=ny + n]));
    }

    // (ii) and (iii)
    let ln_y = p.y.ln();
    let mut boundary = CompensatedComplex::new();
    let mut integrals = CompensatedComplex::new();
    let mut quad_err = 0.0;
    let mut shape_near = CompensatedSum::new();
    for (n, &pn_n) in pn.iter().enumerate().skip(1) {
        let nf = n as f64;
        let ln_yn = (p.y + nf).ln();
        boundary.add(pn_n * pow_neg_ln(ln_yn, s3));
        let ti = tail_integral(n as u64, p.y, s1, s3, quad)?;
        let weight = pow_neg_ln(nf.ln(), s2 - 1.0);
        integrals.add(weight * ti.value);
        quad_err += weight.norm() * ti.error_bound;
        shape_near.add((-(args.sigma2() * nf.ln()) - args.sigma3() * ln_yn).exp());
    }
    let boundary = pow_neg_ln(ln_y, s1 - 1.0) / denom * boundary.value();
    let coef3 = s3 / denom;
    let integrals = coef3 * integrals.value();
    quad_err *= coef3.norm();

    // (iv) and (v)
    let j = tail_integral(1, 1.0, s1, s3, quad)?;
    let two = pow_neg_ln(std::f64::consts::LN_2, s3);
    let z = dirichlet_tail(args.sum() - 1.0, nx)?;
    let coef45 = (two + s3 * j.value) / denom;
    let far = coef45 * z.value;
    let far_err = coef45.norm() * z.error_bound + (s3 / denom).norm() * j.error_bound * z.value.norm();

    let diag = dirichlet_tail(crate::kernel::c64(args.sigma_sum(), 0.0), nx)?;
    let shape = (-args.sigma1() * ln_y).exp() * shape_near.value()
        + 2f64.powf(-args.sigma3()) * (diag.value.re + diag.error_bound);

    let value = main.value() + boundary + integrals + far;
    ApproxValue::heuristic(
        crate::kernel::ensure_finite(value, "av2_approx_first")?,
        constants.first_approx * shape + quad_err + far_err,
    )
}
