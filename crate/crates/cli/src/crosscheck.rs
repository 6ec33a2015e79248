//! Closed-form vs Fock-engine comparison harness.

use serde::Serialize;
use thiserror::Error;

use unruh_berry::constants::PhysicalConstants;
use unruh_berry::diagonalizer::{fit_decomposition, DiagonalizerError};
use unruh_berry::oracle::{
    branch_phase_run, circular_distance, mixed_state_phase, thermal_weights,
    ConvergenceCertificate, FockOracleConfig, OracleError,
};
use unruh_berry::phases::{
    g_factor, gamma_accelerated, gamma_inertial, squeezing_q_with, PhaseError,
};

use crate::scenario::Scenario;
use crate::sweep::sweep_accelerations;

/// Relative tolerance on the pure (ground-loop vs γ_I) comparison, with
/// [`PURE_ABS_FLOOR`] as the denominator floor.
pub const PURE_REL_TOL: f64 = 1e-4;
pub const PURE_ABS_FLOOR: f64 = 1e-12;
/// Absolute tolerance (radians) on the mixed-phase comparison.
pub const MIXED_ABS_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CrosscheckError {
    #[error("scenario {id}: decomposition failed: {source}")]
    Diagonalizer {
        id: String,
        source: DiagonalizerError,
    },
    #[error("scenario {id}: {source}")]
    Phase { id: String, source: PhaseError },
    #[error("scenario {id}: oracle failed: {source}")]
    Oracle { id: String, source: OracleError },
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckSample {
    pub acceleration: f64,
    pub q: f64,
    pub gamma_accelerated_closed: f64,
    pub mixed_phase_oracle: f64,
    /// Circular distance between the two, radians.
    pub mixed_abs_dev: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateSummary {
    pub grid_points: usize,
    pub cutoff: usize,
    pub tolerance: f64,
    pub grid_delta: f64,
    pub cutoff_tail_mass: f64,
    pub pass: bool,
}

impl From<&ConvergenceCertificate> for CertificateSummary {
    fn from(c: &ConvergenceCertificate) -> Self {
        Self {
            grid_points: c.grid_points,
            cutoff: c.cutoff,
            tolerance: c.tolerance,
            grid_delta: c.grid_delta,
            cutoff_tail_mass: c.cutoff_tail_mass,
            pass: c.pass,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckReport {
    pub scenario_id: String,
    pub gamma_inertial_closed: f64,
    pub ground_phase_oracle: f64,
    /// |ground loop − γ_I| / max(|γ_I|, 1e-12).
    pub pure_rel_dev: f64,
    pub pure_pass: bool,
    pub samples: Vec<CrosscheckSample>,
    pub max_mixed_abs_dev: f64,
    pub mixed_pass: bool,
    pub certificate: CertificateSummary,
    pub pass: bool,
}

/// Compare the closed forms against the Fock engine over a scenario's sweep.
///
/// The oracle's branch phases do not depend on the acceleration (only the
/// thermal weights do), so one eigensolve sweep per scenario serves every
/// sample.
pub fn run_crosscheck(
    scenario: &Scenario,
    oracle_cfg: &FockOracleConfig,
) -> Result<CrosscheckReport, CrosscheckError> {
    let constants = PhysicalConstants::codata();
    let id = scenario.id.clone();
    let decomposition =
        fit_decomposition(&scenario.detector).map_err(|source| CrosscheckError::Diagonalizer {
            id: id.clone(),
            source,
        })?;
    let gamma_i = gamma_inertial(&decomposition).map_err(|source| CrosscheckError::Phase {
        id: id.clone(),
        source,
    })?;
    let g = g_factor(&decomposition).map_err(|source| CrosscheckError::Phase {
        id: id.clone(),
        source,
    })?;

    let run = branch_phase_run(&scenario.detector, oracle_cfg.thermal_levels, oracle_cfg)
        .map_err(|source| CrosscheckError::Oracle {
            id: id.clone(),
            source,
        })?;
    let ground_phase_oracle = run.phases[0];
    let pure_rel_dev =
        circular_distance(ground_phase_oracle, gamma_i) / gamma_i.abs().max(PURE_ABS_FLOOR);
    let pure_pass = pure_rel_dev < PURE_REL_TOL;

    let mut samples = Vec::new();
    let mut max_mixed_abs_dev = 0.0f64;
    for acceleration in sweep_accelerations(&scenario.sweep) {
        let q = squeezing_q_with(
            scenario.q_convention.into(),
            scenario.detector.omega_field(),
            acceleration,
            &constants,
        )
        .map_err(|source| CrosscheckError::Phase {
            id: id.clone(),
            source,
        })?;
        let weights =
            thermal_weights(q, oracle_cfg.thermal_levels).map_err(|source| {
                CrosscheckError::Oracle {
                    id: id.clone(),
                    source,
                }
            })?;
        let mixed_phase_oracle =
            mixed_state_phase(&run.phases, &weights).map_err(|source| CrosscheckError::Oracle {
                id: id.clone(),
                source,
            })?;
        let closed =
            gamma_accelerated(gamma_i, q, g).map_err(|source| CrosscheckError::Phase {
                id: id.clone(),
                source,
            })?;
        let mixed_abs_dev = circular_distance(mixed_phase_oracle, closed);
        max_mixed_abs_dev = max_mixed_abs_dev.max(mixed_abs_dev);
        samples.push(CrosscheckSample {
            acceleration,
            q,
            gamma_accelerated_closed: closed,
            mixed_phase_oracle,
            mixed_abs_dev,
        });
    }
    let mixed_pass = max_mixed_abs_dev < MIXED_ABS_TOL;
    let certificate = CertificateSummary::from(&run.certificate);
    let pass = pure_pass && mixed_pass && certificate.pass;
    Ok(CrosscheckReport {
        scenario_id: id,
        gamma_inertial_closed: gamma_i,
        ground_phase_oracle,
        pure_rel_dev,
        pure_pass,
        samples,
        max_mixed_abs_dev,
        mixed_pass,
        certificate,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{QConvention, Scenario, Spacing, SweepSpec};
    use unruh_berry::detector::DetectorConfig;

    fn zero_coupling_scenario() -> Scenario {
        Scenario {
            id: "uncoupled".into(),
            detector: DetectorConfig::new(2.0e9, 2.0e9, 0.0).unwrap(),
            sweep: SweepSpec {
                a_min: 1.0e16,
                a_max: 1.0e18,
                points: 4,
                spacing: Spacing::Log,
            },
            q_convention: QConvention::Arctan,
        }
    }

    #[test]
    fn zero_coupling_deviations_vanish() {
        let oc = FockOracleConfig {
            cutoff: 8,
            grid_points: 32,
            thermal_levels: 6,
            tolerance: 1e-10,
        };
        let report = run_crosscheck(&zero_coupling_scenario(), &oc).unwrap();
        assert!(report.pass, "{report:?}");
        assert!(report.pure_rel_dev < 1e-12);
        assert!(report.max_mixed_abs_dev < 1e-12);
        assert_eq!(report.samples.len(), 4);
    }

    #[test]
    fn coarse_grid_fails_certificate_not_silently() {
        // detuned strong dressing on a deliberately minimal grid
        let scenario = Scenario {
            id: "coarse".into(),
            detector: DetectorConfig::new(2.0e9, 1.4e9, 1.0e6).unwrap(),
            sweep: SweepSpec {
                a_min: 1.0e17,
                a_max: 1.0e18,
                points: 2,
                spacing: Spacing::Log,
            },
            q_convention: QConvention::Arctan,
        };
        let oc = FockOracleConfig {
            cutoff: 8,
            grid_points: 16,
            thermal_levels: 4,
            tolerance: 1e-12,
        };
        let report = run_crosscheck(&scenario, &oc).unwrap();
        assert!(!report.certificate.pass);
        assert!(!report.pass);
    }
}
