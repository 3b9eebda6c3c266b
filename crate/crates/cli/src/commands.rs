use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Result;
use dzeta::continuation::{av2_approx_first_with, av2_approx_second_with, mt2_approx_with, relation_check, FirstApproxParams, Route};
use dzeta::kernel::{zeta_continued, QuadratureSpec};
use dzeta::lab::{classify_regime, mean_square_with, mv_check, DirichletPoly, MeanSquarePlan, MeanSquareReport, Target};
use dzeta::series::{av2_direct, av2_sq, mt2_direct, mt2_sq};
use dzeta::{ApproxValue, ComplexValue, Constants, Rigor, ZetaArgs};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use toml::{Table, Value};

use crate::config::{to_table, Format, Section};
use crate::output::{csv_table, emit, json, real};
use crate::ConfigError;

/// Settings shared by every subcommand.
pub struct Context {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub constants: Constants,
}

impl Context {
    fn write(&self, text: &str) -> Result<()> {
        emit(self.out.as_deref(), text)
    }
}

const DEFAULT_EPS: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum EvalTarget {
    Av2Direct,
    Mt2Direct,
    Av2First,
    Av2Second,
    Mt2Approx,
    Av2Sq,
    Mt2Sq,
    Zeta,
}

impl EvalTarget {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalTarget::Av2Direct => "av2-direct",
            EvalTarget::Mt2Direct => "mt2-direct",
            EvalTarget::Av2First => "av2-first",
            EvalTarget::Av2Second => "av2-second",
            EvalTarget::Mt2Approx => "mt2-approx",
            EvalTarget::Av2Sq => "av2-sq",
            EvalTarget::Mt2Sq => "mt2-sq",
            EvalTarget::Zeta => "zeta",
        }
    }

    fn route(self) -> &'static str {
        match self {
            EvalTarget::Av2Direct | EvalTarget::Mt2Direct => "direct",
            EvalTarget::Av2First => "first",
            EvalTarget::Av2Second => "second",
            EvalTarget::Mt2Approx => "mt-approx",
            EvalTarget::Av2Sq | EvalTarget::Mt2Sq => "square",
            EvalTarget::Zeta => "euler-maclaurin",
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EvalSpec {
    target: EvalTarget,
    s1_re: Option<f64>,
    s1_im: Option<f64>,
    s2_re: Option<f64>,
    s2_im: Option<f64>,
    s3_re: Option<f64>,
    s3_im: Option<f64>,
    s_re: Option<f64>,
    s_im: Option<f64>,
    sigma: Option<f64>,
    eps: Option<f64>,
    x: Option<f64>,
    y: Option<f64>,
    c: Option<f64>,
    #[serde(default)]
    quad: QuadratureSpec,
}

impl EvalSpec {
    fn complex(&self, name: &str) -> Result<ComplexValue, ConfigError> {
        let (re, im) = match name {
            "s1" => (self.s1_re, self.s1_im),
            "s2" => (self.s2_re, self.s2_im),
            "s3" => (self.s3_re, self.s3_im),
            _ => (self.s_re, self.s_im),
        };
        let re = re.ok_or_else(|| ConfigError(format!("eval {} requires {name}", self.target.as_str())))?;
        Ok(ComplexValue::new(re, im.unwrap_or(0.0)))
    }

    fn real(&self, name: &str, v: Option<f64>) -> Result<f64, ConfigError> {
        v.ok_or_else(|| ConfigError(format!("eval {} requires {name}", self.target.as_str())))
    }

    fn args(&self) -> Result<ZetaArgs> {
        Ok(ZetaArgs::new(self.complex("s1")?, self.complex("s2")?, self.complex("s3")?)?)
    }
}

#[derive(Serialize)]
struct EvalRecord {
    target: &'static str,
    route: &'static str,
    value_re: f64,
    value_im: f64,
    error_bound: f64,
    rigor: Rigor,
    elapsed_ms: f64,
}

pub fn eval(ctx: &Context, section: Section) -> Result<()> {
    let spec: EvalSpec = section.parse()?;
    let eps = spec.eps.unwrap_or(DEFAULT_EPS);
    let k = &ctx.constants;
    let start = Instant::now();
    let v: ApproxValue = match spec.target {
        EvalTarget::Av2Direct => av2_direct(&spec.args()?, eps)?,
        EvalTarget::Mt2Direct => mt2_direct(&spec.args()?, eps)?,
        EvalTarget::Av2First => {
            let p = FirstApproxParams::new(spec.real("x", spec.x)?, spec.real("y", spec.y)?, spec.real("c", spec.c)?)?;
            av2_approx_first_with(&spec.args()?, &p, &spec.quad, k)?
        }
        EvalTarget::Av2Second => av2_approx_second_with(&spec.args()?, k)?,
        EvalTarget::Mt2Approx => mt2_approx_with(&spec.args()?, k)?,
        EvalTarget::Av2Sq => av2_sq(spec.complex("s1")?, spec.complex("s2")?, spec.real("sigma", spec.sigma)?, eps)?,
        EvalTarget::Mt2Sq => mt2_sq(spec.complex("s1")?, spec.complex("s2")?, spec.real("sigma", spec.sigma)?, eps)?,
        EvalTarget::Zeta => zeta_continued(spec.complex("s")?)?,
    };
    let rec = EvalRecord {
        target: spec.target.as_str(),
        route: spec.target.route(),
        value_re: v.value.re,
        value_im: v.value.im,
        error_bound: v.error_bound,
        rigor: v.rigor,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let text = match ctx.format {
        Format::Json => json(&rec)?,
        Format::Csv => csv_table(
            &["target", "route", "value_re", "value_im", "error_bound", "rigor", "elapsed_ms"],
            &[vec![
                rec.target.into(),
                rec.route.into(),
                real(rec.value_re),
                real(rec.value_im),
                real(rec.error_bound),
                rec.rigor.as_str().into(),
                real(rec.elapsed_ms),
            ]],
        )?,
    };
    ctx.write(&text)
}

/// Seeds a `quad` override with the library defaults.
pub fn quad_defaults() -> Table {
    to_table(&QuadratureSpec::default())
}

/// What the sidecar of a CSV mean-square run records.
#[derive(Serialize)]
struct Sidecar<'a> {
    regime: &'a dzeta::lab::RegimeClassification,
    fitted_exponent: Option<f64>,
    fitted_exponent_stderr: Option<f64>,
    fit_samples_dropped: usize,
    zeta_sq_ref: f64,
    zeta_sq_ref_error: f64,
    evaluation_rigor: Rigor,
    run_manifest: &'a dzeta::lab::RunManifest,
}

impl<'a> From<&'a MeanSquareReport> for Sidecar<'a> {
    fn from(r: &'a MeanSquareReport) -> Self {
        Sidecar {
            regime: &r.regime,
            fitted_exponent: r.fitted_exponent,
            fitted_exponent_stderr: r.fitted_exponent_stderr,
            fit_samples_dropped: r.fit_samples_dropped,
            zeta_sq_ref: r.zeta_sq_ref,
            zeta_sq_ref_error: r.zeta_sq_ref_error,
            evaluation_rigor: r.evaluation_rigor,
            run_manifest: &r.run_manifest,
        }
    }
}

/// `run.csv` → `run.meta.json`.
pub fn default_sidecar(out: &Path) -> PathBuf {
    out.with_extension("meta.json")
}

pub fn mean_square(ctx: &Context, section: Section, sidecar: Option<PathBuf>) -> Result<()> {
    let plan: MeanSquarePlan = section.parse()?;
    let report = mean_square_with(&plan, &ctx.constants)?;
    match ctx.format {
        Format::Json => ctx.write(&json(&report)?),
        Format::Csv => {
            ctx.write(&report.to_csv())?;
            let sidecar = sidecar.or_else(|| ctx.out.as_deref().map(default_sidecar));
            match sidecar {
                Some(p) => emit(Some(&p), &json(&Sidecar::from(&report))?),
                None => Ok(()),
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegimeSpec {
    target: Target,
    s1_re: f64,
    #[serde(default)]
    s1_im: f64,
    s2_re: f64,
    #[serde(default)]
    s2_im: f64,
    sigma3: f64,
}

pub fn regime(ctx: &Context, section: Section) -> Result<()> {
    let spec: RegimeSpec = section.parse()?;
    let r = classify_regime(
        spec.target,
        ComplexValue::new(spec.s1_re, spec.s1_im),
        ComplexValue::new(spec.s2_re, spec.s2_im),
        spec.sigma3,
    );
    let text = match ctx.format {
        Format::Json => json(&r)?,
        Format::Csv => {
            let alternates = r.alternates.iter().map(|t| t.as_str()).collect::<Vec<_>>().join(";");
            let rows: Vec<Vec<String>> = r
                .checks
                .iter()
                .map(|c| {
                    vec![
                        r.target.as_str().into(),
                        r.theorem.as_str().into(),
                        real(r.error_exponent),
                        r.log_power.to_string(),
                        alternates.clone(),
                        c.theorem.as_str().into(),
                        c.inequality.clone(),
                        real(c.margin),
                        c.holds.to_string(),
                    ]
                })
                .collect();
            csv_table(
                &["target", "theorem", "error_exponent", "log_power", "alternates", "check_theorem", "inequality", "margin", "holds"],
                &rows,
            )?
        }
    };
    ctx.write(&text)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationSpec {
    #[serde(default = "default_eps")]
    eps: f64,
    #[serde(default = "default_route")]
    route: Route,
    points: Vec<ZetaArgs>,
}

fn default_eps() -> f64 {
    DEFAULT_EPS
}

fn default_route() -> Route {
    Route::Direct
}

#[derive(Serialize)]
struct RelationRow {
    point: ZetaArgs,
    route: Route,
    residual_re: f64,
    residual_im: f64,
    residual_abs: f64,
    budget: f64,
    rigor: Rigor,
    pass: bool,
}

/// Puts the three flag values, if any were given, in as the only point.
pub fn relation_point(section: &mut Section, s: [Option<ComplexValue>; 3]) {
    if s.iter().all(Option::is_none) {
        return;
    }
    let mut point = Table::new();
    for (name, z) in ["s1", "s2", "s3"].iter().zip(s) {
        if let Some(z) = z {
            point.insert(format!("{name}_re"), Value::Float(z.re));
            point.insert(format!("{name}_im"), Value::Float(z.im));
        }
    }
    section.table_mut().insert("points".into(), Value::Array(vec![Value::Table(point)]));
}

pub fn relation(ctx: &Context, section: Section) -> Result<()> {
    let spec: RelationSpec = section.parse()?;
    if spec.points.is_empty() {
        return Err(ConfigError("relation check needs at least one point".into()).into());
    }
    let mut rows = Vec::with_capacity(spec.points.len());
    for point in spec.points {
        let check = relation_check(&point, spec.eps, spec.route)?;
        rows.push(RelationRow {
            point,
            route: spec.route,
            residual_re: check.residual.re,
            residual_im: check.residual.im,
            residual_abs: check.residual.norm(),
            budget: check.budget,
            rigor: check.rigor,
            pass: check.passes(),
        });
    }
    let text = match ctx.format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let p = &r.point;
                    let mut row: Vec<String> =
                        [p.s1(), p.s2(), p.s3()].iter().flat_map(|z| [real(z.re), real(z.im)]).collect();
                    row.extend([
                        r.route.as_str().into(),
                        real(r.residual_re),
                        real(r.residual_im),
                        real(r.residual_abs),
                        real(r.budget),
                        r.rigor.as_str().into(),
                        r.pass.to_string(),
                    ]);
                    row
                })
                .collect();
            csv_table(
                &[
                    "s1_re", "s1_im", "s2_re", "s2_im", "s3_re", "s3_im", "route", "residual_re", "residual_im",
                    "residual_abs", "budget", "rigor", "pass",
                ],
                &body,
            )?
        }
    };
    ctx.write(&text)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RandomPolys {
    count: usize,
    seed: u64,
    #[serde(default = "default_max_len")]
    max_len: usize,
    #[serde(default = "default_max_n")]
    max_n: u64,
}

fn default_max_len() -> usize {
    20
}

fn default_max_n() -> u64 {
    100
}

impl RandomPolys {
    /// Distinct sorted indices in `1..=max_n`, coefficients uniform in
    /// `[−1, 1]²`.
    fn generate(&self) -> Result<Vec<DirichletPoly>> {
        if self.max_n == 0 || self.max_len == 0 {
            return Err(ConfigError("random polynomials need max_len ≥ 1 and max_n ≥ 1".into()).into());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let longest = self.max_len.min(self.max_n as usize);
        (0..self.count)
            .map(|_| {
                let len = rng.gen_range(1..=longest);
                let mut idx: Vec<u64> =
                    rand::seq::index::sample(&mut rng, self.max_n as usize, len).into_iter().map(|i| i as u64 + 1).collect();
                idx.sort_unstable();
                let terms =
                    idx.into_iter().map(|n| (n, ComplexValue::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))).collect();
                Ok(DirichletPoly::new(terms)?)
            })
            .collect()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MvSpec {
    t_end: f64,
    #[serde(default)]
    polys: Vec<DirichletPoly>,
    random: Option<RandomPolys>,
    #[serde(default)]
    quad: QuadratureSpec,
}

/// `n:re` or `n:re:im`.
pub fn parse_term(text: &str) -> Result<(u64, ComplexValue), String> {
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let bad = |e: &dyn std::fmt::Display| format!("{text:?}: {e}");
    match parts[..] {
        [n, re] | [n, re, _] => {
            let n = n.parse::<u64>().map_err(|e| bad(&e))?;
            let re = re.parse::<f64>().map_err(|e| bad(&e))?;
            let im = parts.get(2).map(|p| p.parse::<f64>()).transpose().map_err(|e| bad(&e))?.unwrap_or(0.0);
            Ok((n, ComplexValue::new(re, im)))
        }
        _ => Err(format!("{text:?}: expected n:re or n:re:im")),
    }
}

/// Flag polynomials replace any listed in the file.
pub fn mv_polys(section: &mut Section, terms: &[(u64, ComplexValue)], empty: bool) {
    let mut polys = Vec::new();
    if !terms.is_empty() {
        let poly: Vec<Value> = terms
            .iter()
            .map(|&(n, a)| {
                let mut t = Table::new();
                t.insert("n".into(), Value::Integer(n as i64));
                t.insert("a_re".into(), Value::Float(a.re));
                t.insert("a_im".into(), Value::Float(a.im));
                Value::Table(t)
            })
            .collect();
        polys.push(Value::Array(poly));
    }
    if empty {
        polys.push(Value::Array(Vec::new()));
    }
    if !polys.is_empty() {
        section.table_mut().insert("polys".into(), Value::Array(polys));
    }
}

#[derive(Serialize)]
struct MvRow {
    poly: usize,
    terms: usize,
    t_end: f64,
    lhs: f64,
    main: f64,
    budget: f64,
    kappa: f64,
    ratio: f64,
    pass: bool,
}

pub fn mv_test(ctx: &Context, section: Section) -> Result<()> {
    let spec: MvSpec = section.parse()?;
    let mut polys = spec.polys;
    if let Some(r) = &spec.random {
        polys.extend(r.generate()?);
    }
    if polys.is_empty() {
        return Err(ConfigError("no polynomials: give --term, --empty, --random or [mv_test] polys".into()).into());
    }
    let kappa = ctx.constants.mv_kappa;
    let mut rows = Vec::with_capacity(polys.len());
    for (k, poly) in polys.iter().enumerate() {
        let m = mv_check(poly, spec.t_end, &spec.quad)?;
        rows.push(MvRow {
            poly: k,
            terms: poly.terms().len(),
            t_end: spec.t_end,
            lhs: m.lhs,
            main: m.main,
            budget: m.budget,
            kappa,
            ratio: m.ratio(),
            pass: m.passes(kappa),
        });
    }
    let text = match ctx.format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.poly.to_string(),
                        r.terms.to_string(),
                        real(r.t_end),
                        real(r.lhs),
                        real(r.main),
                        real(r.budget),
                        real(r.kappa),
                        real(r.ratio),
                        r.pass.to_string(),
                    ]
                })
                .collect();
            csv_table(&["poly", "terms", "t_end", "lhs", "main", "budget", "kappa", "ratio", "pass"], &body)?
        }
    };
    ctx.write(&text)
}
