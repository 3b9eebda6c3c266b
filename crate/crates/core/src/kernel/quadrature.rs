//! Panel quadrature rules on `[-1, 1]` and their user-facing settings.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ZetaError};

/// Default cap on `panels × nodes_per_panel`.
pub const DEFAULT_HARD_CAP: usize = 10_000_000;

/// Base rule applied on every panel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureRule {
    CompositeSimpson,
    GaussLegendrePanels,
    DoubleExponentialTail,
}

impl QuadratureRule {
    pub fn as_str(self) -> &'static str {
        match self {
            QuadratureRule::CompositeSimpson => "composite-simpson",
            QuadratureRule::GaussLegendrePanels => "gauss-legendre-panels",
            QuadratureRule::DoubleExponentialTail => "double-exponential-tail",
        }
    }

    /// Phase change (radians) one panel may absorb while the rule stays
    /// accurate to roughly double precision with `nodes` nodes.
    pub(crate) fn phase_per_panel(self, nodes: usize) -> f64 {
        let n = nodes as f64;
        match self {
            QuadratureRule::GaussLegendrePanels => (0.35 * n).clamp(0.5, 4.0),
            QuadratureRule::DoubleExponentialTail => (0.15 * n).clamp(0.25, 2.0),
            QuadratureRule::CompositeSimpson => (0.02 * n).clamp(0.005, 0.5),
        }
    }
}

/// How an integral is discretised.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct QuadratureSpec {
    rule: QuadratureRule,
    panels: usize,
    nodes_per_panel: usize,
    abs_tol: f64,
    hard_cap: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    rule: QuadratureRule,
    panels: usize,
    nodes_per_panel: usize,
    abs_tol: f64,
    #[serde(default = "default_cap")]
    hard_cap: usize,
}

fn default_cap() -> usize {
    DEFAULT_HARD_CAP
}

impl TryFrom<RawSpec> for QuadratureSpec {
    type Error = ZetaError;

    fn try_from(raw: RawSpec) -> Result<Self> {
        QuadratureSpec::with_cap(raw.rule, raw.panels, raw.nodes_per_panel, raw.abs_tol, raw.hard_cap)
    }
}

impl From<QuadratureSpec> for RawSpec {
    fn from(q: QuadratureSpec) -> Self {
        RawSpec {
            rule: q.rule,
            panels: q.panels,
            nodes_per_panel: q.nodes_per_panel,
            abs_tol: q.abs_tol,
            hard_cap: q.hard_cap,
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rule: QuadratureRule::GaussLegendrePanels,
            panels: 16,
            nodes_per_panel: 12,
            abs_tol: 1e-12,
            hard_cap: DEFAULT_HARD_CAP,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rule: QuadratureRule, panels: usize, nodes_per_panel: usize, abs_tol: f64) -> Result<Self> {
        Self::with_cap(rule, panels, nodes_per_panel, abs_tol, DEFAULT_HARD_CAP)
    }

    pub fn with_cap(
        rule: QuadratureRule,
        panels: usize,
        nodes_per_panel: usize,
        abs_tol: f64,
        hard_cap: usize,
    ) -> Result<Self> {
        if panels == 0 || nodes_per_panel == 0 {
            return Err(ZetaError::Quadrature("panels and nodes_per_panel must be positive".into()));
        }
        if !(abs_tol > 0.0) || !abs_tol.is_finite() {
            return Err(ZetaError::Quadrature(format!("abs_tol must be positive and finite, got {abs_tol}")));
        }
        if rule == QuadratureRule::GaussLegendrePanels && nodes_per_panel > 128 {
            return Err(ZetaError::Quadrature("gauss-legendre-panels supports at most 128 nodes".into()));
        }
        let spec = Self { rule, panels, nodes_per_panel, abs_tol, hard_cap };
        spec.check_budget(panels)?;
        Ok(spec)
    }

    pub fn rule(&self) -> QuadratureRule {
        self.rule
    }
    pub fn panels(&self) -> usize {
        self.panels
    }
    pub fn nodes_per_panel(&self) -> usize {
        self.nodes_per_panel
    }
    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }
    pub fn hard_cap(&self) -> usize {
        self.hard_cap
    }

    /// Same spec with a different panel count.
    pub fn with_panels(&self, panels: usize) -> Result<Self> {
        Self::with_cap(self.rule, panels, self.nodes_per_panel, self.abs_tol, self.hard_cap)
    }

    /// Same spec with a different tolerance.
    pub fn with_abs_tol(&self, abs_tol: f64) -> Result<Self> {
        Self::with_cap(self.rule, self.panels, self.nodes_per_panel, abs_tol, self.hard_cap)
    }

    /// Errors if `panels` panels of this rule would exceed the node cap.
    pub fn check_budget(&self, panels: usize) -> Result<()> {
        match panels.checked_mul(self.nodes_per_panel) {
            Some(n) if n <= self.hard_cap => Ok(()),
            _ => Err(ZetaError::Quadrature(format!(
                "{panels} panels × {} nodes exceeds the cap of {} nodes",
                self.nodes_per_panel, self.hard_cap
            ))),
        }
    }

    pub fn panel_rule(&self) -> PanelRule {
        PanelRule::for_rule(self.rule, self.nodes_per_panel)
    }
}

/// Nodes and weights of one panel on the reference interval `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct PanelRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl PanelRule {
    pub fn for_rule(rule: QuadratureRule, n: usize) -> Self {
        match rule {
            QuadratureRule::GaussLegendrePanels => Self::gauss_legendre(n),
            QuadratureRule::CompositeSimpson => Self::simpson(n),
            QuadratureRule::DoubleExponentialTail => Self::tanh_sinh(n),
        }
    }

    /// `n`-point Gauss–Legendre rule; nodes by Newton iteration on `P_n`.
    pub fn gauss_legendre(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Composite Simpson with `n` nodes (rounded up to an odd count).
    pub fn simpson(n: usize) -> Self {
        let n = if n < 3 { 3 } else if n.is_multiple_of(2) { n + 1 } else { n };
        let h = 2.0 / (n - 1) as f64;
        let nodes = (0..n).map(|i| -1.0 + h * i as f64).collect();
        let weights = (0..n)
            .map(|i| {
                let c = if i == 0 || i == n - 1 {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                c * h / 3.0
            })
            .collect();
        Self { nodes, weights }
    }

    /// Tanh-sinh rule with `n` nodes (rounded up to odd), step `h = 6.4/(n−1)`.
    pub fn tanh_sinh(n: usize) -> Self {
        let n = if n < 3 { 3 } else if n.is_multiple_of(2) { n + 1 } else { n };
        let half = (n / 2) as i64;
        let h = 3.2 / half as f64;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let hp = std::f64::consts::FRAC_PI_2;
        for k in -half..=half {
            let t = h * k as f64;
            let u = hp * t.sinh();
            let x = u.tanh();
            let w = h * hp * t.cosh() / (u.cosh() * u.cosh());
            nodes.push(x);
            weights.push(w);
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node positions and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (mid + half * x, half * w))
    }

    /// `∫_a^b f` on a single panel.
    pub fn integrate<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, mut f: F) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.mapped(a, b) {
            acc += f(x) * w;
        }
        acc
    }

    /// `∫_a^b f` over `panels` equal panels. Also returns `∫ |f|` for
    /// rounding allowances.
    pub fn integrate_panels<F: FnMut(f64) -> Complex64>(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        mut f: F,
    ) -> (Complex64, f64) {
        let width = (b - a) / panels as f64;
        let mut total = crate::summation::CompensatedComplex::new();
        let mut abs = 0.0;
        for p in 0..panels {
            let lo = a + width * p as f64;
            let hi = if p + 1 == panels { b } else { lo + width };
            let mut acc = Complex64::new(0.0, 0.0);
            for (x, w) in self.mapped(lo, hi) {
                let v = f(x);
                acc += v * w;
                abs += v.norm() * w.abs();
            }
            total.add(acc);
        }
        (total.value(), abs)
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_exact(rule: &PanelRule, degree: i32) -> f64 {
        let got: f64 = rule.mapped(-1.0, 1.0).map(|(x, w)| w * x.powi(degree)).sum();
        let exact = if degree % 2 == 1 { 0.0 } else { 2.0 / (degree + 1) as f64 };
        (got - exact).abs()
    }

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        for n in [1usize, 2, 5, 10, 20, 40] {
            let rule = PanelRule::gauss_legendre(n);
            for d in 0..(2 * n as i32) {
                assert!(poly_exact(&rule, d) < 1e-14, "n = {n}, degree = {d}");
            }
        }
    }

    #[test]
    fn rules_integrate_smooth_functions() {
        let f = |x: f64| Complex64::new(x.exp(), (3.0 * x).cos());
        let exact = Complex64::new(1f64.exp() - (-1f64).exp(), 2.0 * 3f64.sin() / 3.0);
        for (rule, nodes, panels, tol) in [
            (QuadratureRule::GaussLegendrePanels, 21, 2, 1e-14),
            (QuadratureRule::DoubleExponentialTail, 41, 2, 1e-12),
            (QuadratureRule::CompositeSimpson, 21, 20, 1e-8),
        ] {
            let pr = PanelRule::for_rule(rule, nodes);
            let (v, _) = pr.integrate_panels(0.0, 1.0, panels, f);
            let (w, _) = pr.integrate_panels(-1.0, 0.0, panels, f);
            assert!((v + w - exact).norm() < tol, "{rule:?}: {}", (v + w - exact).norm());
        }
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(QuadratureRule::GaussLegendrePanels, 0, 10, 1e-10).is_err());
        assert!(QuadratureSpec::new(QuadratureRule::GaussLegendrePanels, 10, 10, 0.0).is_err());
        assert!(QuadratureSpec::new(QuadratureRule::CompositeSimpson, 2_000_000, 10, 1e-10).is_err());
        let q = QuadratureSpec::default();
        assert!(q.check_budget(1_000_000).is_err());
        assert!(q.check_budget(1000).is_ok());
    }

    #[test]
    fn serde_round_trip_validates() {
        let q = QuadratureSpec::default();
        let text = toml::to_string(&q).unwrap();
        let back: QuadratureSpec = toml::from_str(&text).unwrap();
        assert_eq!(q, back);
        let bad = "rule = \"composite-simpson\"\npanels = 0\nnodes_per_panel = 3\nabs_tol = 1e-9\n";
        assert!(toml::from_str::<QuadratureSpec>(bad).is_err());
    }
}
