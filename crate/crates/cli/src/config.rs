//! Run configuration: a JSON document with angles in degrees.

use std::fs;
use std::path::{Path, PathBuf};

use compliant_core::case_ii::TOL_ACC;
use compliant_core::pipeline::SolvedCase;
use compliant_core::{
    free_pose, AcceptanceFilter, AnalysisOptions, CaseSelection, Error as CoreError, MechanismParams, O2Choice, Point2,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("cannot parse {path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },

    #[error("invalid `{field}`: {reason}")]
    Validation { field: String, reason: String },
}

impl From<CoreError> for ConfigError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParameter { field, reason } => ConfigError::Validation { field: field.into(), reason },
            CoreError::UnsupportedFreeLengthPattern { .. } => {
                ConfigError::Validation { field: "free_lengths".into(), reason: e.to_string() }
            }
            other => ConfigError::Validation { field: "mechanism".into(), reason: other.to_string() },
        }
    }
}

/// Mechanism data; lengths in meters, stiffness in N/m, angles in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MechanismConfig {
    pub p_m: [f64; 2],
    pub alpha_deg: f64,
    pub p_a1_in1: [f64; 2],
    pub p_a2_in2: [f64; 2],
    pub p_p_in2: [f64; 2],
    pub p_o1: [f64; 2],
    pub phi1_deg: f64,
    pub k: [f64; 3],
    pub free_lengths: [f64; 3],
}

impl MechanismConfig {
    pub fn to_params(&self) -> MechanismParams {
        let p = |v: [f64; 2]| Point2::new(v[0], v[1]);
        MechanismParams {
            p_m: p(self.p_m),
            alpha: self.alpha_deg.to_radians(),
            p_a1_in1: p(self.p_a1_in1),
            p_a2_in2: p(self.p_a2_in2),
            p_p_in2: p(self.p_p_in2),
            p_o1: p(self.p_o1),
            phi1: self.phi1_deg.to_radians(),
            k: self.k,
            free_lengths: self.free_lengths,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CaseArg {
    #[default]
    Auto,
    #[serde(alias = "zero-free-lengths")]
    Zero,
    OneNonzero,
}

impl From<CaseArg> for CaseSelection {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Auto => CaseSelection::Auto,
            CaseArg::Zero => CaseSelection::ZeroFreeLengths,
            CaseArg::OneNonzero => CaseSelection::OneNonzero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
}

fn default_formats() -> Vec<Format> {
    vec![Format::Json, Format::Csv, Format::Svg]
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mechanism: MechanismConfig,
    #[serde(default)]
    pub case: CaseArg,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_formats")]
    pub formats: Vec<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_acc: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter: Option<AcceptanceFilter>,
    /// Free-pose O2 candidate by index; the higher one when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub o2_candidate: Option<usize>,
}

impl RunConfig {
    pub fn params(&self) -> MechanismParams {
        self.mechanism.to_params()
    }

    pub fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            case: self.case.into(),
            tol_acc: self.tol_acc.unwrap_or(TOL_ACC),
            filter: self.filter.unwrap_or_default(),
            o2_choice: self.o2_candidate.map_or(O2Choice::HigherY, O2Choice::Index),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let params = self.params();
        params.validate()?;
        if let Some(t) = self.tol_acc {
            if !(t.is_finite() && t > 0.0) {
                return Err(ConfigError::Validation {
                    field: "tol_acc".into(),
                    reason: format!("{t} must be positive"),
                });
            }
        }
        if self.formats.is_empty() {
            return Err(ConfigError::Validation { field: "formats".into(), reason: "at least one format".into() });
        }
        // a pattern neither solver handles only passes when the free pose can
        // still decide that there is no contact
        if self.case == CaseArg::Auto {
            if let Err(e) = SolvedCase::detect(params.free_lengths) {
                if free_pose(&params).is_err() {
                    return Err(e.into());
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<RunConfig, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Reads, parses and validates a configuration file.
pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
    let config = RunConfig::from_json(&text).map_err(|source| ConfigError::Parse { path: path.into(), source })?;
    config.validate()?;
    Ok(config)
}
