//! `I(T) = ∫_2^T |ζ(s1, s2, σ3 + it)|² dt` and its comparison with
//! `ζ^[2](s1, s2, 2σ3)·T`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fit::residual_exponent_fit;
use super::grid::{node_spacing, PathGrid};
use super::plan::{Evaluator, MeanSquarePlan};
use super::regime::{classify_regime, RegimeClassification, Target};
use crate::approx::{ApproxValue, Rigor};
use crate::constants::Constants;
use crate::continuation::{av2_approx_second_with, mt2_approx_with, mt_approx_cutoff, second_approx_cutoff};
use crate::error::{Result, ZetaError};
use crate::series::{av2_direct, av2_direct_with, av2_sq, mt2_direct, mt2_direct_with, mt2_sq, SeriesOptions};
use crate::summation::CompensatedSum;

/// Everything needed to reproduce a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub crate_version: String,
    pub plan: MeanSquarePlan,
    pub constants: Constants,
    pub node_spacing: f64,
    pub panels: usize,
    pub nodes: usize,
    /// Largest truncation used by the evaluator on the path.
    pub evaluator_cutoff: usize,
    /// Double-series terms summed over all nodes.
    pub series_terms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanSquareReport {
    /// `(T, I(T))`.
    pub i_values: Vec<(f64, f64)>,
    pub zeta_sq_ref: f64,
    pub zeta_sq_ref_error: f64,
    /// `I(T)/T`.
    pub coefficient_estimates: Vec<f64>,
    /// `I(T) − ζ^[2]·T`.
    pub residuals: Vec<f64>,
    /// `∫_2^T (2|ζ|·e + e²)` with `e` the evaluator's error bound: how far
    /// `I(T)` can be from the mean square of the exact function.
    pub evaluation_budgets: Vec<f64>,
    pub evaluation_rigor: Rigor,
    pub fitted_exponent: Option<f64>,
    pub fitted_exponent_stderr: Option<f64>,
    pub fit_samples_dropped: usize,
    pub regime: RegimeClassification,
    pub run_manifest: RunManifest,
}

/// [`mean_square_with`] using the built-in constants.
pub fn mean_square(plan: &MeanSquarePlan) -> Result<MeanSquareReport> {
    mean_square_with(plan, &Constants::builtin())
}

/// Integrates `|ζ|²` along `t3 ∈ [2, max T]` with Gauss-type panels.
///
/// Panel breakpoints are the `T` samples and, for the approximation
/// evaluators, the points `t3 = j/a` where the cutoff `⌊a·t3⌋` jumps, so
/// every panel sees a smooth integrand. Nodes are evaluated in parallel
/// and summed in a fixed order, so the result does not depend on the
/// thread count.
pub fn mean_square_with(plan: &MeanSquarePlan, constants: &Constants) -> Result<MeanSquareReport> {
    plan.check_path(constants.hyperplane_standoff)?;
    let t_max = plan.t_max();
    let (cutoff, jumps) = match plan.evaluator() {
        Evaluator::Direct => {
            let args = plan.args_at(2.0)?;
            let opts = SeriesOptions::default();
            let eval = match plan.target() {
                Target::Av => av2_direct_with(&args, plan.eps(), &opts)?,
                Target::Mt => mt2_direct_with(&args, plan.eps(), &opts)?,
            };
            (eval.truncation.cutoff, Vec::new())
        }
        Evaluator::SecondApprox => {
            let slope = plan.cutoff_slope();
            let args = plan.args_at(t_max)?;
            let cutoff = match plan.target() {
                Target::Av => second_approx_cutoff(&args),
                Target::Mt => mt_approx_cutoff(&args),
            };
            let first = (2.0 * slope).floor() as usize + 1;
            let jumps: Vec<f64> = (first..=cutoff).map(|j| j as f64 / slope).collect();
            (cutoff, jumps)
        }
    };
    let h = node_spacing(cutoff);
    let grid = PathGrid::build(plan.t_samples(), &jumps, h, plan.quad())?;

    let values: Vec<ApproxValue> =
        grid.nodes.par_iter().map(|&t| evaluate(plan, constants, t)).collect::<Result<Vec<_>>>()?;

    let mut integral = CompensatedSum::new();
    let mut budget = CompensatedSum::new();
    let mut rigor = Rigor::Rigorous;
    let mut i_values = Vec::with_capacity(grid.ends.len());
    let mut budgets = Vec::with_capacity(grid.ends.len());
    let mut done = 0;
    for (&t_sample, &end) in plan.t_samples().iter().zip(&grid.ends) {
        for (v, &w) in values[done..end].iter().zip(&grid.weights[done..end]) {
            let modulus = v.value.norm();
            integral.add(w * modulus * modulus);
            budget.add(w * (2.0 * modulus * v.error_bound + v.error_bound * v.error_bound));
            rigor = rigor.and(v.rigor);
        }
        done = end;
        i_values.push((t_sample, integral.value()));
        budgets.push(budget.value());
    }

    let sigma = 2.0 * plan.sigma3();
    let reference = match plan.target() {
        Target::Av => av2_sq(plan.s1(), plan.s2(), sigma, plan.eps())?,
        Target::Mt => mt2_sq(plan.s1(), plan.s2(), sigma, plan.eps())?,
    };
    let zeta_sq_ref = reference.value.re;
    let coefficient_estimates = i_values.iter().map(|&(t, i)| i / t).collect();
    let residuals = i_values.iter().map(|&(t, i)| i - zeta_sq_ref * t).collect();
    let regime = classify_regime(plan.target(), plan.s1(), plan.s2(), plan.sigma3());

    let mut report = MeanSquareReport {
        i_values,
        zeta_sq_ref,
        zeta_sq_ref_error: reference.error_bound,
        coefficient_estimates,
        residuals,
        evaluation_budgets: budgets,
        evaluation_rigor: rigor,
        fitted_exponent: None,
        fitted_exponent_stderr: None,
        fit_samples_dropped: 0,
        regime,
        run_manifest: RunManifest {
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            plan: plan.clone(),
            constants: constants.clone(),
            node_spacing: h,
            panels: grid.panels,
            nodes: grid.nodes.len(),
            evaluator_cutoff: cutoff,
            series_terms: grid.nodes.iter().map(|&t| terms_at(plan, cutoff, t)).sum(),
        },
    };
    match residual_exponent_fit(&report) {
        Ok(fit) => {
            report.fitted_exponent = Some(fit.exponent);
            report.fitted_exponent_stderr = fit.stderr;
            report.fit_samples_dropped = fit.dropped;
        }
        Err(ZetaError::InsufficientData(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(report)
}

fn terms_at(plan: &MeanSquarePlan, direct_cutoff: usize, t: f64) -> u64 {
    let l = match plan.evaluator() {
        Evaluator::Direct => direct_cutoff,
        Evaluator::SecondApprox => (plan.cutoff_slope() * t).floor() as usize,
    } as u64;
    match plan.target() {
        Target::Av => l * l.saturating_sub(1) / 2,
        Target::Mt => l * l,
    }
}

impl MeanSquareReport {
    /// `T,I,I_over_T,zeta_sq_ref,residual` with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("T,I,I_over_T,zeta_sq_ref,residual\n");
        for (k, &(t, i)) in self.i_values.iter().enumerate() {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                t, i, self.coefficient_estimates[k], self.zeta_sq_ref, self.residuals[k]
            ));
        }
        out
    }
}

fn evaluate(plan: &MeanSquarePlan, constants: &Constants, t: f64) -> Result<ApproxValue> {
    let args = plan.args_at(t)?;
    let out = match (plan.evaluator(), plan.target()) {
        (Evaluator::Direct, Target::Av) => av2_direct(&args, plan.eps()),
        (Evaluator::Direct, Target::Mt) => mt2_direct(&args, plan.eps()),
        (Evaluator::SecondApprox, Target::Av) => av2_approx_second_with(&args, constants),
        (Evaluator::SecondApprox, Target::Mt) => mt2_approx_with(&args, constants),
    };
    out.map_err(|e| ZetaError::Path { t3: t, reason: e.to_string() })
}
