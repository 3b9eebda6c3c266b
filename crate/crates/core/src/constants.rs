//! Versioned heuristic constants.
//!
//! The O-terms of the approximation formulas carry constants that are not
//! known numerically. They are fitted by a calibration sweep, frozen in
//! `constants.toml` and embedded at build time; a different file can be
//! loaded at run time. Reports record the version and SHA-256 of the file
//! that produced them.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Result, ZetaError};

const BUILTIN: &str = include_str!("../constants.toml");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantsFile {
    version: u32,
    first_approx: f64,
    second_approx: f64,
    mt_approx: f64,
    mv_kappa: f64,
    hyperplane_standoff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub version: u32,
    /// Multiplies the first approximation formula's O-term.
    pub first_approx: f64,
    /// Multiplies the second approximation formula's O-term.
    pub second_approx: f64,
    /// Multiplies the Mordell–Tornheim approximation's O-term.
    pub mt_approx: f64,
    /// `|lhs − T·Σ|a_n|²| ≤ κ·Σ n|a_n|²` in the mean value check.
    pub mv_kappa: f64,
    /// Minimum distance of an integration path from a singular hyperplane.
    pub hyperplane_standoff: f64,
    /// Hex SHA-256 of the file text.
    pub sha256: String,
}

impl Constants {
    /// The constants compiled into the library.
    pub fn builtin() -> Self {
        Self::from_toml_str(BUILTIN).expect("embedded constants.toml is valid")
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: ConstantsFile = toml::from_str(text).map_err(|e| ZetaError::Constants(e.to_string()))?;
        for (name, v) in [
            ("first_approx", raw.first_approx),
            ("second_approx", raw.second_approx),
            ("mt_approx", raw.mt_approx),
            ("mv_kappa", raw.mv_kappa),
            ("hyperplane_standoff", raw.hyperplane_standoff),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(ZetaError::Constants(format!("{name} must be positive and finite, got {v}")));
            }
        }
        let sha256 = Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
        Ok(Self {
            version: raw.version,
            first_approx: raw.first_approx,
            second_approx: raw.second_approx,
            mt_approx: raw.mt_approx,
            mv_kappa: raw.mv_kappa,
            hyperplane_standoff: raw.hyperplane_standoff,
            sha256,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ZetaError::Constants(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::builtin()
    }
}
