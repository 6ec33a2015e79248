//! Acceleration sweeps over scenarios.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use unruh_berry::constants::PhysicalConstants;
use unruh_berry::detector::{cycle_period, unruh_temperature, WEAK_COUPLING_BOUND};
use unruh_berry::diagonalizer::{fit_decomposition, DiagonalizerError};
use unruh_berry::phases::{compute_phases, PhaseError};

use crate::scenario::{Scenario, Spacing, SweepSpec};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(
        "scenario {id}: coupling ratio {ratio:e} exceeds the closed-form bound {bound:e}; \
         use the Fock engine for stronger couplings"
    )]
    WeakCouplingExceeded { id: String, ratio: f64, bound: f64 },
    #[error("scenario {id}: decomposition failed: {source}")]
    Diagonalizer {
        id: String,
        source: DiagonalizerError,
    },
    #[error("scenario {id}: {source}")]
    Phase { id: String, source: PhaseError },
}

/// One emitted record; fields in the canonical column order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SweepRow {
    pub scenario_id: String,
    pub acceleration: f64,
    pub unruh_temperature: f64,
    pub q: f64,
    #[serde(rename = "G")]
    pub g: f64,
    pub gamma_inertial: f64,
    pub gamma_accelerated: f64,
    pub delta_per_cycle: f64,
    pub visibility: f64,
    /// `ceil(π/|δ|)` as an integer-valued float; 0 marks an unreachable
    /// target (δ = 0 exactly).
    pub cycles_to_pi: f64,
    pub time_to_pi: f64,
}

/// Column names, in emission order.
pub const COLUMNS: [&str; 11] = [
    "scenario_id",
    "acceleration",
    "unruh_temperature",
    "q",
    "G",
    "gamma_inertial",
    "gamma_accelerated",
    "delta_per_cycle",
    "visibility",
    "cycles_to_pi",
    "time_to_pi",
];

/// The acceleration samples of a sweep, ascending.
pub fn sweep_accelerations(sweep: &SweepSpec) -> Vec<f64> {
    let n = sweep.points;
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            match sweep.spacing {
                Spacing::Linear => sweep.a_min + t * (sweep.a_max - sweep.a_min),
                Spacing::Log => sweep.a_min * (sweep.a_max / sweep.a_min).powf(t),
            }
        })
        .collect()
}

/// Run the closed-form pipeline over a scenario: one decomposition fit, one
/// row per acceleration sample, ordered by acceleration.
pub fn run_sweep(scenario: &Scenario) -> Result<Vec<SweepRow>, SweepError> {
    let constants = PhysicalConstants::codata();
    let detector = &scenario.detector;
    if !detector.is_weak_coupling() {
        return Err(SweepError::WeakCouplingExceeded {
            id: scenario.id.clone(),
            ratio: detector.coupling_ratio(),
            bound: WEAK_COUPLING_BOUND,
        });
    }
    let decomposition = fit_decomposition(detector).map_err(|source| SweepError::Diagonalizer {
        id: scenario.id.clone(),
        source,
    })?;
    let period = cycle_period(detector.omega_field()).expect("validated frequency");

    sweep_accelerations(&scenario.sweep)
        .into_iter()
        .map(|a| {
            let phases = compute_phases(
                &decomposition,
                detector.omega_field(),
                a,
                &constants,
                scenario.q_convention.into(),
            )
            .map_err(|source| SweepError::Phase {
                id: scenario.id.clone(),
                source,
            })?;
            let delta_abs = phases.delta_per_cycle.abs();
            let cycles_to_pi = if delta_abs > 0.0 {
                (std::f64::consts::PI / delta_abs).ceil()
            } else {
                0.0
            };
            Ok(SweepRow {
                scenario_id: scenario.id.clone(),
                acceleration: a,
                unruh_temperature: unruh_temperature(a, &constants)
                    .expect("sweep accelerations are nonnegative"),
                q: phases.q,
                g: phases.g_factor,
                gamma_inertial: phases.gamma_inertial,
                gamma_accelerated: phases.gamma_accelerated,
                delta_per_cycle: phases.delta_per_cycle,
                visibility: phases.visibility,
                cycles_to_pi,
                time_to_pi: cycles_to_pi * period,
            })
        })
        .collect()
}
