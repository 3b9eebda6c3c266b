//! Mean-square integration plans and their admissibility along the path.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::regime::Target;
use crate::continuation::{check_mt_approx, check_second_approx};
use crate::error::{Result, ZetaError};
use crate::kernel::{ComplexValue, QuadratureSpec};
use crate::series::{check_av_region, check_mt_region, ZetaArgs};

/// How `ζ(s1, s2, σ3 + it)` is evaluated at each quadrature node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluator {
    /// Truncated series (absolute-convergence region only).
    Direct,
    /// The second approximation formula for AV, the square truncation for MT.
    SecondApprox,
}

impl Evaluator {
    pub fn as_str(self) -> &'static str {
        match self {
            Evaluator::Direct => "direct",
            Evaluator::SecondApprox => "second_approx",
        }
    }
}

impl std::str::FromStr for Evaluator {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "direct" => Ok(Evaluator::Direct),
            "second_approx" | "second-approx" => Ok(Evaluator::SecondApprox),
            _ => Err(format!("unknown evaluator {s:?} (expected direct or second_approx)")),
        }
    }
}

/// `I(T) = ∫_2^T |ζ(s1, s2, σ3 + it)|² dt` at each `T` in `t_samples`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPlan", into = "RawPlan")]
pub struct MeanSquarePlan {
    target: Target,
    s1: ComplexValue,
    s2: ComplexValue,
    sigma3: f64,
    t_samples: Vec<f64>,
    evaluator: Evaluator,
    quad: QuadratureSpec,
    eps: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlan {
    target: Target,
    s1_re: f64,
    #[serde(default)]
    s1_im: f64,
    s2_re: f64,
    #[serde(default)]
    s2_im: f64,
    sigma3: f64,
    t_samples: Vec<f64>,
    evaluator: Evaluator,
    #[serde(default)]
    quad: QuadratureSpec,
    eps: f64,
}

impl TryFrom<RawPlan> for MeanSquarePlan {
    type Error = ZetaError;
    fn try_from(r: RawPlan) -> Result<Self> {
        MeanSquarePlan::new(
            r.target,
            Complex64::new(r.s1_re, r.s1_im),
            Complex64::new(r.s2_re, r.s2_im),
            r.sigma3,
            r.t_samples,
            r.evaluator,
            r.quad,
            r.eps,
        )
    }
}

impl From<MeanSquarePlan> for RawPlan {
    fn from(p: MeanSquarePlan) -> Self {
        RawPlan {
            target: p.target,
            s1_re: p.s1.re,
            s1_im: p.s1.im,
            s2_re: p.s2.re,
            s2_im: p.s2.im,
            sigma3: p.sigma3,
            t_samples: p.t_samples,
            evaluator: p.evaluator,
            quad: p.quad,
            eps: p.eps,
        }
    }
}

impl MeanSquarePlan {
    /// Validates the sample ladder and tolerances. Admissibility of the
    /// evaluator along the path is checked by [`MeanSquarePlan::check_path`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        target: Target,
        s1: ComplexValue,
        s2: ComplexValue,
        sigma3: f64,
        t_samples: Vec<f64>,
        evaluator: Evaluator,
        quad: QuadratureSpec,
        eps: f64,
    ) -> Result<Self> {
        let finite = |z: Complex64| z.re.is_finite() && z.im.is_finite();
        if !finite(s1) || !finite(s2) || !sigma3.is_finite() {
            return Err(ZetaError::domain("MeanSquarePlan", "s1, s2 and σ3 must be finite"));
        }
        if t_samples.is_empty() {
            return Err(ZetaError::domain("MeanSquarePlan", "at least one T sample required"));
        }
        if !(t_samples[0] >= 2.0) || t_samples.iter().any(|t| !t.is_finite()) {
            return Err(ZetaError::domain("MeanSquarePlan", format!("T samples must be finite and ≥ 2, got {:?}", t_samples)));
        }
        if t_samples.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(ZetaError::domain("MeanSquarePlan", "T samples must be strictly increasing"));
        }
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(ZetaError::domain("MeanSquarePlan", format!("eps > 0 required, got {eps}")));
        }
        Ok(Self { target, s1, s2, sigma3, t_samples, evaluator, quad, eps })
    }

    pub fn target(&self) -> Target {
        self.target
    }
    pub fn s1(&self) -> ComplexValue {
        self.s1
    }
    pub fn s2(&self) -> ComplexValue {
        self.s2
    }
    pub fn sigma3(&self) -> f64 {
        self.sigma3
    }
    pub fn t_samples(&self) -> &[f64] {
        &self.t_samples
    }
    pub fn evaluator(&self) -> Evaluator {
        self.evaluator
    }
    pub fn quad(&self) -> &QuadratureSpec {
        &self.quad
    }
    pub fn eps(&self) -> f64 {
        self.eps
    }
    pub fn t_max(&self) -> f64 {
        *self.t_samples.last().expect("non-empty")
    }

    pub fn with_quad(&self, quad: QuadratureSpec) -> Self {
        Self { quad, ..self.clone() }
    }

    /// Arguments at `t3 = t`.
    pub fn args_at(&self, t: f64) -> Result<ZetaArgs> {
        ZetaArgs::new(self.s1, self.s2, Complex64::new(self.sigma3, t))
    }

    /// `a = max(1, |t1|)` for AV, `b = max(1, |t1|, |t2|)` for MT: the
    /// approximation cutoff is `⌊a·t3⌋`.
    pub fn cutoff_slope(&self) -> f64 {
        match self.target {
            Target::Av => self.s1.im.abs().max(1.0),
            Target::Mt => self.s1.im.abs().max(self.s2.im.abs()).max(1.0),
        }
    }

    /// Checks that the evaluator is admissible for every `t3 ∈ [2, max T]`
    /// and that the path keeps `standoff` away from the singular
    /// hyperplanes. Failures name the first offending `t3`.
    pub fn check_path(&self, standoff: f64) -> Result<()> {
        let t_lo = 2.0;
        let t_hi = self.t_max();
        let at_start = self.args_at(t_lo)?;
        // every hypothesis except the hyperplane distances is independent of t3
        let path_err = |t3: f64, e: ZetaError| ZetaError::Path { t3, reason: e.to_string() };
        let hyperplanes: &[(&str, Complex64)] = match (self.evaluator, self.target) {
            (Evaluator::Direct, Target::Av) => {
                check_av_region(&at_start).map_err(|e| path_err(t_lo, e))?;
                &[]
            }
            (Evaluator::Direct, Target::Mt) => {
                check_mt_region(&at_start).map_err(|e| path_err(t_lo, e))?;
                &[]
            }
            (Evaluator::SecondApprox, Target::Av) => {
                check_second_approx(&at_start).map_err(|e| path_err(t_lo, e))?;
                &[("s1 + s3 = 1", self.s1 - 1.0), ("s1 + s2 + s3 = 2", self.s1 + self.s2 - 2.0)]
            }
            (Evaluator::SecondApprox, Target::Mt) => {
                check_mt_approx(&at_start).map_err(|e| path_err(t_lo, e))?;
                &[
                    ("s1 + s3 = 1", self.s1 - 1.0),
                    ("s2 + s3 = 1", self.s2 - 1.0),
                    ("s1 + s2 + s3 = 2", self.s1 + self.s2 - 2.0),
                ]
            }
        };
        let mut first: Option<(f64, &str, f64)> = None;
        for &(name, offset) in hyperplanes {
            // distance |offset + σ3 + i t| along t ∈ [t_lo, t_hi]
            let re = offset.re + self.sigma3;
            if re.abs() >= standoff {
                continue;
            }
            let half_width = (standoff * standoff - re * re).sqrt();
            let centre = -offset.im;
            let (lo, hi) = (centre - half_width, centre + half_width);
            if hi <= t_lo || lo >= t_hi {
                continue;
            }
            let t = lo.max(t_lo);
            let dist = Complex64::new(re, offset.im + t).norm();
            if first.is_none_or(|f| t < f.0) {
                first = Some((t, name, dist));
            }
        }
        if let Some((t3, name, dist)) = first {
            return Err(ZetaError::Path {
                t3,
                reason: format!("within {dist:.3e} of the hyperplane {name} (standoff {standoff:e})"),
            });
        }
        Ok(())
    }
}
