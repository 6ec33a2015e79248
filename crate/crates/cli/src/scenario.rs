//! Scenario files and built-in presets.
//!
//! Scenario files are TOML with the schema
//!
//! ```toml
//! [[scenarios]]
//! id = "example"
//! omega_field = 2.0e9      # rad/s (angular frequency)
//! omega_detector = 2.0e9   # rad/s
//! coupling = 250.0         # rad/s
//! q_convention = "arctan"  # optional; "arctan" (default) or "arctanh"
//!
//! [scenarios.sweep]
//! a_min = 1.0e16           # m/s^2
//! a_max = 1.0e18
//! points = 25
//! spacing = "log"          # "log" or "linear"
//! ```
//!
//! All frequencies are angular (rad/s): a "2.0 GHz" microwave transition is
//! `2.0e9`, giving the 3.14 ns cycle period.

use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

use unruh_berry::detector::DetectorConfig;
use unruh_berry::phases::SqueezingConvention;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {message}")]
    Parse { path: String, message: String },
    #[error("{key}: {message}")]
    Validation { key: String, message: String },
    #[error("scenario list is empty")]
    Empty,
}

/// Squeezing-parameter convention carried by scenarios and output metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum QConvention {
    #[default]
    Arctan,
    Arctanh,
}

impl From<QConvention> for SqueezingConvention {
    fn from(value: QConvention) -> Self {
        match value {
            QConvention::Arctan => SqueezingConvention::Arctan,
            QConvention::Arctanh => SqueezingConvention::Arctanh,
        }
    }
}

impl std::fmt::Display for QConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Arctan => write!(f, "arctan"),
            Self::Arctanh => write!(f, "arctanh"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub a_min: f64,
    pub a_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

/// One validated sweep scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub id: String,
    pub detector: DetectorConfig,
    pub sweep: SweepSpec,
    pub q_convention: QConvention,
}

#[derive(Debug, Deserialize)]
struct ScenarioFile {
    scenarios: Vec<RawScenario>,
}

#[derive(Debug, Deserialize)]
struct RawScenario {
    id: String,
    omega_field: f64,
    omega_detector: f64,
    coupling: f64,
    sweep: RawSweep,
    #[serde(default)]
    q_convention: QConvention,
}

#[derive(Debug, Deserialize)]
struct RawSweep {
    a_min: f64,
    a_max: f64,
    points: usize,
    spacing: Spacing,
}

fn validate(raw: RawScenario, index: usize) -> Result<Scenario, ScenarioError> {
    let key = |field: &str| format!("scenarios[{index}].{field}");
    let detector = DetectorConfig::new(raw.omega_field, raw.omega_detector, raw.coupling)
        .map_err(|e| ScenarioError::Validation {
            key: key("omega_field/omega_detector/coupling"),
            message: e.to_string(),
        })?;
    if !(raw.sweep.a_min > 0.0) {
        return Err(ScenarioError::Validation {
            key: key("sweep.a_min"),
            message: format!("must be positive, got {:e}", raw.sweep.a_min),
        });
    }
    if raw.sweep.a_max <= raw.sweep.a_min {
        return Err(ScenarioError::Validation {
            key: key("sweep.a_max"),
            message: format!(
                "must exceed sweep.a_min = {:e}, got {:e}",
                raw.sweep.a_min, raw.sweep.a_max
            ),
        });
    }
    if raw.sweep.points < 2 {
        return Err(ScenarioError::Validation {
            key: key("sweep.points"),
            message: format!("must be at least 2, got {}", raw.sweep.points),
        });
    }
    Ok(Scenario {
        id: raw.id,
        detector,
        sweep: SweepSpec {
            a_min: raw.sweep.a_min,
            a_max: raw.sweep.a_max,
            points: raw.sweep.points,
            spacing: raw.sweep.spacing,
        },
        q_convention: raw.q_convention,
    })
}

/// Load and validate a scenario file.
pub fn load_scenarios(path: &Path) -> Result<Vec<Scenario>, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file: ScenarioFile = toml::from_str(&text).map_err(|e| ScenarioError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    if file.scenarios.is_empty() {
        return Err(ScenarioError::Empty);
    }
    file.scenarios
        .into_iter()
        .enumerate()
        .map(|(i, raw)| validate(raw, i))
        .collect()
}

/// The built-in microwave-regime preset: three resonant 2.0e9 rad/s
/// scenarios with couplings 34, 100, and 250 rad/s, swept over
/// [1e16, 1e18] m/s².
pub fn fig2_presets() -> Vec<Scenario> {
    [(1, 34.0), (2, 100.0), (3, 250.0)]
        .into_iter()
        .map(|(n, coupling)| Scenario {
            id: format!("fig2-{n}"),
            detector: DetectorConfig::new(2.0e9, 2.0e9, coupling)
                .expect("preset configs are valid"),
            sweep: SweepSpec {
                a_min: 1.0e16,
                a_max: 1.0e18,
                points: 25,
                spacing: Spacing::Log,
            },
            q_convention: QConvention::Arctan,
        })
        .collect()
}
