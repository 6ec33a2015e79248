//! Independent truncated-Fock-space engine.
//!
//! Everything here recomputes the physics from scratch: the Hamiltonian is
//! built as a dense Hermitian matrix in the two-mode number basis, adiabatic
//! eigenstate loops are tracked around the φ cycle by overlap continuity, and
//! geometric phases come out of gauge-invariant Pancharatnam (Wilson-loop)
//! overlap products. Thermal weighting of branch phases yields the
//! accelerated-detector ensemble phase. None of the closed forms in
//! [`crate::phases`] or the fitted decomposition enter, which is what makes
//! the comparison between the two routes meaningful.

mod branch;
mod certificate;
mod eigen;
mod fock;
mod gaussian;
mod thermal;
mod wilson;

pub use branch::{
    adiabatic_branch, adiabatic_branches, branch_phase_linearity, circular_distance,
    BranchLinearity,
};
pub use certificate::ConvergenceCertificate;
pub use eigen::hermitian_eigen_lowest;
pub use fock::{build_fock_hamiltonian, fock_dimension, fock_index, StateVector};
pub use gaussian::{decomposition_ground_fidelity, decomposition_ground_state, ground_fidelity};
pub use thermal::{mixed_state_phase, thermal_weights, ThermalWeights, TRUNCATION_MASS_BOUND};
pub use wilson::{branch_berry_phase, spin_half_loop, wilson_loop_phase};

use thiserror::Error;

use crate::detector::DetectorConfig;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("invalid oracle configuration: {0}")]
    Config(String),
    #[error("branch index {branch} does not fit below the cutoff {cutoff}")]
    BranchOutOfRange { branch: usize, cutoff: usize },
    #[error("could not identify an eigenstate for branch {branch} at phi = 0")]
    BranchIdentification { branch: usize },
    #[error(
        "phi grid too coarse: adjacent-sample overlap {overlap} fell below 0.5; \
         increase grid_points"
    )]
    GridTooCoarse { overlap: f64 },
    #[error("branch tracking collision: branches {first} and {second} selected the same state")]
    BranchCollision { first: usize, second: usize },
    #[error(
        "branch {branch} is degenerate beyond numerical resolution (gap {gap:e}); \
         its loop phase is not defined"
    )]
    UnresolvedDegeneracy { branch: usize, gap: f64 },
    #[error("vanishing adjacent overlap in the loop product (|overlap| = {magnitude:e})")]
    SingularLoop { magnitude: f64 },
    #[error("phase and weight lists have different lengths ({phases} vs {weights})")]
    LengthMismatch { phases: usize, weights: usize },
    #[error(
        "thermal truncation mass {mass:e} exceeds {bound:e}; increase thermal_levels"
    )]
    TruncationMassTooLarge { mass: f64, bound: f64 },
    #[error("ensemble phase undefined: the weighted sum has vanishing modulus")]
    UndefinedPhase,
    #[error("LAPACK eigensolver failed with info = {info}")]
    Eigensolver { info: i32 },
    #[error("state vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
}

/// Discretization settings for the Fock engine.
///
/// `cutoff` is the largest occupation per mode (total dimension
/// `(cutoff+1)²`); `grid_points` is the number of φ samples on `[0, 2π)`
/// (loops carry one extra tracked state at 2π); `thermal_levels` is the
/// highest field level kept in the thermal sum; `tolerance` is the
/// convergence target certified with every phase run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockOracleConfig {
    pub cutoff: usize,
    pub grid_points: usize,
    pub thermal_levels: usize,
    pub tolerance: f64,
}

impl Default for FockOracleConfig {
    fn default() -> Self {
        Self {
            cutoff: 16,
            grid_points: 256,
            thermal_levels: 12,
            tolerance: 1e-8,
        }
    }
}

impl FockOracleConfig {
    pub fn validate(&self) -> Result<(), OracleError> {
        if self.cutoff < 4 {
            return Err(OracleError::Config(format!(
                "cutoff must be at least 4, got {}",
                self.cutoff
            )));
        }
        if self.grid_points < 16 {
            return Err(OracleError::Config(format!(
                "grid_points must be at least 16, got {}",
                self.grid_points
            )));
        }
        if self.grid_points % 2 != 0 {
            return Err(OracleError::Config(format!(
                "grid_points must be even for the grid-refinement certificate, got {}",
                self.grid_points
            )));
        }
        if self.thermal_levels < 1 {
            return Err(OracleError::Config(format!(
                "thermal_levels must be at least 1, got {}",
                self.thermal_levels
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(OracleError::Config(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Branch phases `γ̃_0..γ̃_max` (principal branch) with their convergence
/// certificate.
#[derive(Debug, Clone)]
pub struct BranchPhaseRun {
    pub phases: Vec<f64>,
    pub certificate: ConvergenceCertificate,
}

/// Track branches `0..=max_branch` around the loop and return their
/// Pancharatnam phases, traversed in the physical worldline direction.
pub fn branch_phase_run(
    config: &DetectorConfig,
    max_branch: usize,
    oracle_cfg: &FockOracleConfig,
) -> Result<BranchPhaseRun, OracleError> {
    let branches: Vec<usize> = (0..=max_branch).collect();
    let loops = adiabatic_branches(config, &branches, oracle_cfg)?;
    let phases = loops
        .iter()
        .map(|states| branch_berry_phase(states))
        .collect::<Result<Vec<_>, _>>()?;
    let certificate = certificate::certify(&loops, oracle_cfg)?;
    Ok(BranchPhaseRun {
        phases,
        certificate,
    })
}
