//! Which mean-square theorem governs a parameter point, and the error term
//! it predicts for `I(T) − ζ^[2]·T`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::kernel::ComplexValue;

/// Equalities such as `σ1+σ2+σ3 = 2` are tested to this tolerance.
pub const REGIME_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "AV")]
    Av,
    #[serde(rename = "MT")]
    Mt,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::Av => "AV",
            Target::Mt => "MT",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Target {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "AV" => Ok(Target::Av),
            "MT" => Ok(Target::Mt),
            _ => Err(format!("unknown target {s:?} (expected AV or MT)")),
        }
    }
}

/// Mean-square regimes. `T1_2_a` etc. name the theorem and its case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    #[serde(rename = "T1_1")]
    T1_1,
    #[serde(rename = "T1_2_a")]
    T1_2A,
    #[serde(rename = "T1_2_b")]
    T1_2B,
    #[serde(rename = "T1_3_a")]
    T1_3A,
    #[serde(rename = "T1_3_b")]
    T1_3B,
    #[serde(rename = "T1_3_c")]
    T1_3C,
    #[serde(rename = "T1_4_a")]
    T1_4A,
    #[serde(rename = "T1_4_b")]
    T1_4B,
    #[serde(rename = "none")]
    None,
}

impl Theorem {
    pub const ALL: [Theorem; 9] = [
        Theorem::T1_1,
        Theorem::T1_2A,
        Theorem::T1_2B,
        Theorem::T1_3A,
        Theorem::T1_3B,
        Theorem::T1_3C,
        Theorem::T1_4A,
        Theorem::T1_4B,
        Theorem::None,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::T1_1 => "T1_1",
            Theorem::T1_2A => "T1_2_a",
            Theorem::T1_2B => "T1_2_b",
            Theorem::T1_3A => "T1_3_a",
            Theorem::T1_3B => "T1_3_b",
            Theorem::T1_3C => "T1_3_c",
            Theorem::T1_4A => "T1_4_a",
            Theorem::T1_4B => "T1_4_b",
            Theorem::None => "none",
        }
    }

    /// True for the `(T log T)^{1/2}` cases, where `log_power = 1` sits
    /// inside the square root.
    pub fn is_root_form(self) -> bool {
        matches!(self, Theorem::T1_3C | Theorem::T1_4B)
    }

    /// Which double zeta-function the theorem is about.
    pub fn target(self) -> Option<Target> {
        match self {
            Theorem::T1_4A | Theorem::T1_4B => Some(Target::Mt),
            Theorem::None => None,
            _ => Some(Target::Av),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One hypothesis evaluated at a point. `margin` is positive (or zero for
/// non-strict inequalities) exactly when the hypothesis holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub theorem: Theorem,
    pub inequality: String,
    pub margin: f64,
    pub holds: bool,
}

/// The predicted error term `O(T^{error_exponent} (log T)^{β})`, where
/// `β = log_power` except for the root forms, where `β = log_power / 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeClassification {
    pub theorem: Theorem,
    pub error_exponent: f64,
    pub log_power: u32,
    pub target: Target,
    /// Other theorems whose hypotheses also hold at the point.
    pub alternates: Vec<Theorem>,
    /// Every hypothesis of every theorem about `target`.
    pub checks: Vec<InequalityCheck>,
}

impl RegimeClassification {
    /// Exponent of `log T` in the predicted error term.
    pub fn log_exponent(&self) -> f64 {
        if self.theorem.is_root_form() {
            0.5 * self.log_power as f64
        } else {
            self.log_power as f64
        }
    }
}

struct Point {
    s1: f64,
    s2: f64,
    s3: f64,
    t1: f64,
    t2: f64,
}

enum Rel {
    Gt,
    Ge,
    Le,
    Lt,
    Eq,
}

struct Checker<'a> {
    theorem: Theorem,
    out: &'a mut Vec<InequalityCheck>,
    all: bool,
}

impl Checker<'_> {
    fn check(&mut self, label: &str, lhs: f64, rel: Rel, rhs: f64) -> &mut Self {
        let d = lhs - rhs;
        let (margin, holds) = match rel {
            Rel::Gt => (d, d > REGIME_TOL),
            Rel::Ge => (d, d >= -REGIME_TOL),
            Rel::Le => (-d, d <= REGIME_TOL),
            Rel::Lt => (-d, d < -REGIME_TOL),
            Rel::Eq => (-d.abs(), d.abs() <= REGIME_TOL),
        };
        self.all &= holds;
        self.out.push(InequalityCheck { theorem: self.theorem, inequality: label.to_string(), margin, holds });
        self
    }
}

fn hypotheses(theorem: Theorem, p: &Point, out: &mut Vec<InequalityCheck>) -> bool {
    let sum = p.s1 + p.s2 + p.s3;
    let s13 = p.s1 + p.s3;
    let s23 = p.s2 + p.s3;
    let mut c = Checker { theorem, out, all: true };
    match theorem {
        Theorem::T1_1 => {
            c.check("σ1 + σ3 > 1", s13, Rel::Gt, 1.0).check("σ1 + σ2 + σ3 > 2", sum, Rel::Gt, 2.0);
        }
        Theorem::T1_2A | Theorem::T1_2B => {
            c.check("σ1 ≥ 0", p.s1, Rel::Ge, 0.0)
                .check("σ3 > 0", p.s3, Rel::Gt, 0.0)
                .check("t1 ≥ 0", p.t1, Rel::Ge, 0.0)
                .check("σ1 + σ3 > 1/2", s13, Rel::Gt, 0.5)
                .check("σ1 + σ3 ≤ 1", s13, Rel::Le, 1.0)
                .check("σ1 + σ2 + σ3 > 2", sum, Rel::Gt, 2.0);
            if theorem == Theorem::T1_2A {
                c.check("σ1 + σ3 ≤ 3/4", s13, Rel::Le, 0.75);
            } else {
                c.check("σ1 + σ3 > 3/4", s13, Rel::Gt, 0.75);
            }
        }
        Theorem::T1_3A | Theorem::T1_3B | Theorem::T1_3C => {
            c.check("σ1 ≥ 0", p.s1, Rel::Ge, 0.0)
                .check("σ3 > 0", p.s3, Rel::Gt, 0.0)
                .check("t1 ≥ 0", p.t1, Rel::Ge, 0.0)
                .check("σ1 + σ3 > 1/2", s13, Rel::Gt, 0.5)
                .check("σ1 + σ2 + σ3 > 3/2", sum, Rel::Gt, 1.5)
                .check("σ1 + σ2 + σ3 ≤ 2", sum, Rel::Le, 2.0);
            match theorem {
                Theorem::T1_3A => {
                    c.check("σ2 ≥ 1/2 + σ1 + σ3", p.s2, Rel::Ge, 0.5 + s13);
                }
                Theorem::T1_3B => {
                    c.check("σ2 < 1/2 + σ1 + σ3", p.s2, Rel::Lt, 0.5 + s13)
                        .check("σ1 + σ2 + σ3 < 2", sum, Rel::Lt, 2.0);
                }
                _ => {
                    c.check("σ2 < 1/2 + σ1 + σ3", p.s2, Rel::Lt, 0.5 + s13)
                        .check("σ1 + σ2 + σ3 = 2", sum, Rel::Eq, 2.0);
                }
            }
        }
        Theorem::T1_4A | Theorem::T1_4B => {
            c.check("σ1 ≥ 0", p.s1, Rel::Ge, 0.0)
                .check("σ2 ≥ 0", p.s2, Rel::Ge, 0.0)
                .check("σ3 > 0", p.s3, Rel::Gt, 0.0)
                .check("t1 ≥ 0", p.t1, Rel::Ge, 0.0)
                .check("t2 ≥ 0", p.t2, Rel::Ge, 0.0)
                .check("σ1 + σ3 ≤ 1", s13, Rel::Le, 1.0)
                .check("σ2 + σ3 ≤ 1", s23, Rel::Le, 1.0)
                .check("σ1 + σ2 + σ3 > 3/2", sum, Rel::Gt, 1.5);
            if theorem == Theorem::T1_4A {
                c.check("σ1 + σ2 + σ3 < 2", sum, Rel::Lt, 2.0);
            } else {
                c.check("σ1 + σ2 + σ3 = 2", sum, Rel::Eq, 2.0);
            }
        }
        Theorem::None => {}
    }
    c.all
}

fn prediction(theorem: Theorem, p: &Point) -> (f64, u32) {
    let sum = p.s1 + p.s2 + p.s3;
    let s13 = p.s1 + p.s3;
    match theorem {
        Theorem::T1_1 | Theorem::None => (0.0, 0),
        Theorem::T1_2A | Theorem::T1_3A => (2.0 - 2.0 * s13, 1),
        Theorem::T1_2B => (0.5, 0),
        Theorem::T1_3B | Theorem::T1_4A => (2.5 - sum, 0),
        Theorem::T1_3C | Theorem::T1_4B => (0.5, 1),
    }
}

/// Hypotheses of `theorem` at a point, each with its margin.
pub fn regime_hypotheses(theorem: Theorem, s1: ComplexValue, s2: ComplexValue, sigma3: f64) -> (bool, Vec<InequalityCheck>) {
    let p = Point { s1: s1.re, s2: s2.re, s3: sigma3, t1: s1.im, t2: s2.im };
    let mut out = Vec::new();
    let holds = theorem != Theorem::None && hypotheses(theorem, &p, &mut out);
    (holds, out)
}

/// The theorem governing `∫_2^T |ζ(s1, s2, σ3 + it)|² dt`.
///
/// Among all theorems whose hypotheses hold, the one with the smallest
/// predicted error wins (exponent first, then log power); the others are
/// listed as alternates. The conditions on `t3` (`t3 ≥ 2`, hyperplane
/// avoidance along the path) are properties of an integration plan and are
/// checked there. The Mordell–Tornheim function has a regime only in the
/// domain of the fourth theorem.
pub fn classify_regime(target: Target, s1: ComplexValue, s2: ComplexValue, sigma3: f64) -> RegimeClassification {
    let p = Point { s1: s1.re, s2: s2.re, s3: sigma3, t1: s1.im, t2: s2.im };
    let mut checks = Vec::new();
    let mut holding: Vec<(Theorem, f64, u32)> = Vec::new();
    for th in Theorem::ALL {
        if th.target() != Some(target) {
            continue;
        }
        if hypotheses(th, &p, &mut checks) {
            let (e, l) = prediction(th, &p);
            holding.push((th, e, l));
        }
    }
    holding.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.2.cmp(&b.2)));
    match holding.first() {
        Some(&(theorem, error_exponent, log_power)) => RegimeClassification {
            theorem,
            error_exponent,
            log_power,
            target,
            alternates: holding[1..].iter().map(|h| h.0).collect(),
            checks,
        },
        None => RegimeClassification {
            theorem: Theorem::None,
            error_exponent: 0.0,
            log_power: 0,
            target,
            alternates: Vec::new(),
            checks,
        },
    }
}
