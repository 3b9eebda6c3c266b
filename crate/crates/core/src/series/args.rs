use serde::{Deserialize, Serialize};

use crate::error::{Result, ZetaError};
use crate::kernel::{c64, ComplexValue};

/// The triple `(s1, s2, s3)` at which a double zeta-function is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawArgs", into = "RawArgs")]
pub struct ZetaArgs {
    s1: ComplexValue,
    s2: ComplexValue,
    s3: ComplexValue,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArgs {
    s1_re: f64,
    #[serde(default)]
    s1_im: f64,
    s2_re: f64,
    #[serde(default)]
    s2_im: f64,
    s3_re: f64,
    #[serde(default)]
    s3_im: f64,
}

impl TryFrom<RawArgs> for ZetaArgs {
    type Error = ZetaError;
    fn try_from(r: RawArgs) -> Result<Self> {
        ZetaArgs::new(c64(r.s1_re, r.s1_im), c64(r.s2_re, r.s2_im), c64(r.s3_re, r.s3_im))
    }
}

impl From<ZetaArgs> for RawArgs {
    fn from(a: ZetaArgs) -> Self {
        RawArgs {
            s1_re: a.s1.re,
            s1_im: a.s1.im,
            s2_re: a.s2.re,
            s2_im: a.s2.im,
            s3_re: a.s3.re,
            s3_im: a.s3.im,
        }
    }
}

impl ZetaArgs {
    pub fn new(s1: ComplexValue, s2: ComplexValue, s3: ComplexValue) -> Result<Self> {
        for (name, s) in [("s1", s1), ("s2", s2), ("s3", s3)] {
            if !s.re.is_finite() || !s.im.is_finite() {
                return Err(ZetaError::domain("ZetaArgs", format!("{name} must be finite, got {s}")));
            }
        }
        Ok(Self { s1, s2, s3 })
    }

    /// All three arguments real.
    pub fn real(s1: f64, s2: f64, s3: f64) -> Result<Self> {
        Self::new(c64(s1, 0.0), c64(s2, 0.0), c64(s3, 0.0))
    }

    pub fn s1(&self) -> ComplexValue {
        self.s1
    }
    pub fn s2(&self) -> ComplexValue {
        self.s2
    }
    pub fn s3(&self) -> ComplexValue {
        self.s3
    }
    pub fn sigma1(&self) -> f64 {
        self.s1.re
    }
    pub fn sigma2(&self) -> f64 {
        self.s2.re
    }
    pub fn sigma3(&self) -> f64 {
        self.s3.re
    }
    pub fn t1(&self) -> f64 {
        self.s1.im
    }
    pub fn t2(&self) -> f64 {
        self.s2.im
    }
    pub fn t3(&self) -> f64 {
        self.s3.im
    }

    /// `σ1 + σ2 + σ3`.
    pub fn sigma_sum(&self) -> f64 {
        self.s1.re + self.s2.re + self.s3.re
    }

    pub fn sum(&self) -> ComplexValue {
        self.s1 + self.s2 + self.s3
    }

    pub fn conj(&self) -> Self {
        Self { s1: self.s1.conj(), s2: self.s2.conj(), s3: self.s3.conj() }
    }

    /// `(s2, s1, s3)`.
    pub fn swapped(&self) -> Self {
        Self { s1: self.s2, s2: self.s1, s3: self.s3 }
    }

    /// Same `s1, s2` with `s3` replaced.
    pub fn with_s3(&self, s3: ComplexValue) -> Result<Self> {
        Self::new(self.s1, self.s2, s3)
    }

    pub(crate) fn is_real(&self) -> bool {
        self.s1.im == 0.0 && self.s2.im == 0.0 && self.s3.im == 0.0
    }

    pub(crate) fn abs_sum(&self) -> f64 {
        self.s1.norm() + self.s2.norm() + self.s3.norm()
    }
}

impl std::fmt::Display for ZetaArgs {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.s1, self.s2, self.s3)
    }
}

/// Where a series was cut off and why.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    /// Largest outer index summed.
    pub cutoff: usize,
    pub requested_eps: f64,
}

impl Truncation {
    pub fn new(cutoff: usize, requested_eps: f64) -> Result<Self> {
        if cutoff < 2 {
            return Err(ZetaError::domain("Truncation", "cutoff ≥ 2 required"));
        }
        if !(requested_eps > 0.0) {
            return Err(ZetaError::domain("Truncation", "eps > 0 required"));
        }
        Ok(Self { cutoff, requested_eps })
    }
}
