//! The Montgomery–Vaughan mean value formula
//! `∫_0^T |Σ a_n n^{it}|² dt = Σ |a_n|² (T + O(n))` as a numeric check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{node_spacing, PathGrid};
use crate::error::{Result, ZetaError};
use crate::kernel::QuadratureSpec;
use crate::summation::CompensatedSum;

/// `Σ a_n n^{it}` over finitely many `n`, strictly increasing.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<RawTerm>", into = "Vec<RawTerm>")]
pub struct DirichletPoly {
    terms: Vec<(u64, Complex64)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    n: u64,
    a_re: f64,
    #[serde(default)]
    a_im: f64,
}

impl TryFrom<Vec<RawTerm>> for DirichletPoly {
    type Error = ZetaError;
    fn try_from(raw: Vec<RawTerm>) -> Result<Self> {
        DirichletPoly::new(raw.into_iter().map(|t| (t.n, Complex64::new(t.a_re, t.a_im))).collect())
    }
}

impl From<DirichletPoly> for Vec<RawTerm> {
    fn from(p: DirichletPoly) -> Self {
        p.terms.into_iter().map(|(n, a)| RawTerm { n, a_re: a.re, a_im: a.im }).collect()
    }
}

impl DirichletPoly {
    pub fn new(terms: Vec<(u64, Complex64)>) -> Result<Self> {
        if terms.iter().any(|&(n, a)| n == 0 || !a.re.is_finite() || !a.im.is_finite()) {
            return Err(ZetaError::domain("DirichletPoly", "indices must be ≥ 1 and coefficients finite"));
        }
        if terms.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(ZetaError::domain("DirichletPoly", "indices must be strictly increasing"));
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(u64, Complex64)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ a_n n^{it}`.
    pub fn eval(&self, t: f64) -> Complex64 {
        self.terms.iter().map(|&(n, a)| a * Complex64::from_polar(1.0, t * (n as f64).ln())).sum()
    }

    /// `Σ |a_n|²`.
    pub fn diagonal(&self) -> f64 {
        self.terms.iter().map(|t| t.1.norm_sqr()).sum()
    }

    /// `Σ n |a_n|²`.
    pub fn weighted_diagonal(&self) -> f64 {
        self.terms.iter().map(|&(n, a)| n as f64 * a.norm_sqr()).sum()
    }
}

/// `lhs = ∫_2^T |P|²`, `main = T·Σ|a_n|²`, `budget = Σ n|a_n|²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MvCheck {
    pub lhs: f64,
    pub main: f64,
    pub budget: f64,
}

impl MvCheck {
    /// `|lhs − main| ≤ κ·budget`.
    pub fn passes(&self, kappa: f64) -> bool {
        (self.lhs - self.main).abs() <= kappa * self.budget
    }

    /// `|lhs − main| / budget` (zero for the empty polynomial).
    pub fn ratio(&self) -> f64 {
        if self.budget == 0.0 {
            0.0
        } else {
            (self.lhs - self.main).abs() / self.budget
        }
    }
}

/// The diagonal `Σ|a_n|²·(T − 2)` is integrated exactly and only the
/// oscillating remainder `|P|² − Σ|a_n|²` by quadrature, so a single term
/// gives `lhs = |a|²·(T − 2)` with no quadrature error at all.
pub fn mv_check(poly: &DirichletPoly, t_end: f64, quad: &QuadratureSpec) -> Result<MvCheck> {
    if !(t_end > 2.0) || !t_end.is_finite() {
        return Err(ZetaError::domain("mv_check", format!("T > 2 required, got {t_end}")));
    }
    if poly.is_empty() {
        return Ok(MvCheck { lhs: 0.0, main: 0.0, budget: 0.0 });
    }
    let diag = poly.diagonal();
    let mut lhs = CompensatedSum::new();
    lhs.add(diag * (t_end - 2.0));
    if poly.terms.len() > 1 {
        let top = poly.terms.last().expect("non-empty").0 as usize;
        let grid = PathGrid::build(&[t_end], &[], node_spacing(top), quad)?;
        for (&t, &w) in grid.nodes.iter().zip(&grid.weights) {
            lhs.add(w * (poly.eval(t).norm_sqr() - diag));
        }
    }
    Ok(MvCheck { lhs: lhs.value(), main: t_end * diag, budget: poly.weighted_diagonal() })
}
