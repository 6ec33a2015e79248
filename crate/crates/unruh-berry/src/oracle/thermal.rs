//! Thermal weights of the accelerated ensemble and the mixed-state phase.

use num_complex::Complex64;

use super::OracleError;

/// Cap on the probability mass dropped by truncating the thermal sum.
pub const TRUNCATION_MASS_BOUND: f64 = 1e-12;

/// Geometric thermal distribution `p_n = tanh^{2n}(q)/cosh²(q)` over field
/// levels `n = 0..=n_max`, with the exactly-summed tail mass.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalWeights {
    pub probabilities: Vec<f64>,
    pub truncation_mass: f64,
}

/// Thermal weights of the mode seen by a detector with squeezing parameter
/// `q`. Errors when the dropped tail exceeds [`TRUNCATION_MASS_BOUND`].
pub fn thermal_weights(q: f64, n_max: usize) -> Result<ThermalWeights, OracleError> {
    if !(q >= 0.0) {
        return Err(OracleError::Config(format!(
            "squeezing parameter must be nonnegative, got {q}"
        )));
    }
    let t = q.tanh() * q.tanh();
    let p0 = 1.0 / (q.cosh() * q.cosh());
    let probabilities: Vec<f64> = (0..=n_max).map(|n| p0 * t.powi(n as i32)).collect();
    // (1 - tanh²q)·cosh²q = 1, so the tail sums exactly to tanh^{2(n_max+1)}q
    let truncation_mass = t.powi(n_max as i32 + 1);
    if truncation_mass > TRUNCATION_MASS_BOUND {
        return Err(OracleError::TruncationMassTooLarge {
            mass: truncation_mass,
            bound: TRUNCATION_MASS_BOUND,
        });
    }
    Ok(ThermalWeights {
        probabilities,
        truncation_mass,
    })
}

/// Interferometric mixed-state geometric phase `Arg Σ_n p_n e^{iγ_n}` of a
/// diagonal ensemble with per-branch phases `γ_n`.
pub fn mixed_state_phase(
    branch_phases: &[f64],
    weights: &ThermalWeights,
) -> Result<f64, OracleError> {
    if branch_phases.len() != weights.probabilities.len() {
        return Err(OracleError::LengthMismatch {
            phases: branch_phases.len(),
            weights: weights.probabilities.len(),
        });
    }
    let sum: Complex64 = branch_phases
        .iter()
        .zip(weights.probabilities.iter())
        .map(|(&g, &p)| Complex64::from_polar(p, g))
        .sum();
    if sum.norm() < 1e-12 {
        return Err(OracleError::UndefinedPhase);
    }
    Ok(sum.arg())
}
