//! Convergence certificates for phase runs.

use super::fock::StateVector;
use super::wilson::branch_berry_phase;
use super::{FockOracleConfig, OracleError};
use crate::phases::wrap_principal;

/// Discretization evidence attached to every set of reported phases.
///
/// Loop phases converge at the exact 1/K² rate in the grid, so the change a
/// further doubling K → 2K would produce is bounded by a quarter of the
/// measured K/2 → K change (`grid_delta`). Cutoff sensitivity is bounded by
/// the probability mass the tracked states leave in the top occupation shells
/// (`cutoff_tail_mass`): doubling the cutoff can only move amplitudes of that
/// size.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceCertificate {
    pub grid_points: usize,
    pub cutoff: usize,
    pub tolerance: f64,
    /// Predicted |phase(2K) − phase(K)|, maximized over branches.
    pub grid_delta: f64,
    /// Largest top-shell probability mass over all tracked states.
    pub cutoff_tail_mass: f64,
    pub pass: bool,
}

/// Certify a set of branch loops produced on the config's grid.
pub(crate) fn certify(
    loops: &[Vec<StateVector>],
    oracle_cfg: &FockOracleConfig,
) -> Result<ConvergenceCertificate, OracleError> {
    let mut grid_delta = 0.0f64;
    let mut cutoff_tail_mass = 0.0f64;
    for states in loops {
        let full = branch_berry_phase(states)?;
        // even-index subsample is the same loop on half the grid
        let half: Vec<StateVector> = states.iter().step_by(2).cloned().collect();
        let coarse = branch_berry_phase(&half)?;
        // |phase(K) − phase(K/2)| = 3c/K²  ⇒  |phase(2K) − phase(K)| = c·(3/4)/K²
        grid_delta = grid_delta.max(wrap_principal(full - coarse).abs() / 4.0);
        for s in states {
            cutoff_tail_mass =
                cutoff_tail_mass.max(s.shell_mass(oracle_cfg.cutoff, oracle_cfg.cutoff.max(1) - 1));
        }
    }
    let pass = grid_delta <= oracle_cfg.tolerance && cutoff_tail_mass <= oracle_cfg.tolerance;
    Ok(ConvergenceCertificate {
        grid_points: oracle_cfg.grid_points,
        cutoff: oracle_cfg.cutoff,
        tolerance: oracle_cfg.tolerance,
        grid_delta,
        cutoff_tail_mass,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{adiabatic_branches, branch_phase_run};
    use super::*;
    use crate::detector::DetectorConfig;

    #[test]
    fn certificate_passes_at_default_scale() {
        let c = DetectorConfig::new(2.0, 2.0, 2e-4).unwrap();
        let oc = FockOracleConfig {
            cutoff: 8,
            grid_points: 64,
            thermal_levels: 4,
            tolerance: 1e-8,
        };
        let run = branch_phase_run(&c, 2, &oc).unwrap();
        assert!(run.certificate.pass, "certificate: {:?}", run.certificate);
        assert_eq!(run.phases.len(), 3);
    }

    #[test]
    fn coarse_grid_fails_certificate() {
        // strongly dressed loop on a minimal grid: the grid-refinement bound
        // must exceed a tight tolerance
        let c = DetectorConfig::new(2.0, 1.0, 0.3).unwrap();
        let oc = FockOracleConfig {
            cutoff: 10,
            grid_points: 16,
            thermal_levels: 2,
            tolerance: 1e-10,
        };
        let run = branch_phase_run(&c, 0, &oc).unwrap();
        assert!(!run.certificate.pass, "certificate: {:?}", run.certificate);
        assert!(run.certificate.grid_delta > 1e-10);
    }

    #[test]
    fn grid_delta_bound_is_honest() {
        // the certificate's predicted K → 2K change bounds the measured one
        let c = DetectorConfig::new(2.0, 1.0, 0.25).unwrap();
        let phase_at = |k: usize| {
            let oc = FockOracleConfig {
                cutoff: 10,
                grid_points: k,
                thermal_levels: 2,
                tolerance: 1e-8,
            };
            let loops = adiabatic_branches(&c, &[0], &oc).unwrap();
            (
                branch_berry_phase(&loops[0]).unwrap(),
                certify(&loops, &oc).unwrap(),
            )
        };
        let (p64, cert64) = phase_at(64);
        let (p128, _) = phase_at(128);
        let measured = (p128 - p64).abs();
        assert!(
            cert64.grid_delta >= 0.9 * measured,
            "predicted {:e} vs measured {measured:e}",
            cert64.grid_delta
        );
        // and the prediction is tight, not a wild overestimate
        assert!(cert64.grid_delta <= 2.0 * measured);
    }
}
