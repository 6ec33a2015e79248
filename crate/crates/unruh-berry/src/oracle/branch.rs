//! Adiabatic eigenstate tracking around the φ loop.

use std::f64::consts::TAU;

use super::eigen::hermitian_eigen_lowest;
use super::fock::{build_fock_hamiltonian, fock_dimension, StateVector};
use super::wilson::branch_berry_phase;
use super::{FockOracleConfig, OracleError};
use crate::detector::DetectorConfig;
use crate::phases::wrap_principal;

/// States needed so every total-quanta manifold up to `max_branch + 1` is
/// fully contained in the computed subset (manifold t holds t+1 states).
fn required_state_count(max_branch: usize, cutoff: usize) -> usize {
    let top = max_branch + 2;
    let count = (top + 1) * (top + 2) / 2;
    count.min(fock_dimension(cutoff))
}

/// Identify the branch-`n` eigenstate at φ = 0: the highest-energy state
/// among those with `round(⟨n̂_a + n̂_b⟩) = n`.
///
/// This matches the projective preparation of the thermal ensemble: the
/// component with `n` field quanta and the detector in its ground state is
/// the top of its total-quanta manifold whenever the dressed field frequency
/// is the larger one (the domain in which the ensemble phase is defined).
fn identify_branch(
    branch: usize,
    energies: &[f64],
    states: &[StateVector],
    cutoff: usize,
) -> Result<usize, OracleError> {
    let mut best: Option<usize> = None;
    for (j, state) in states.iter().enumerate() {
        let manifold = state.mean_total_occupation(cutoff).round() as usize;
        if manifold == branch {
            match best {
                Some(b) if energies[b] >= energies[j] => {}
                _ => best = Some(j),
            }
        }
    }
    best.ok_or(OracleError::BranchIdentification { branch })
}

/// Track eigenvector loops for the requested branches over the grid
/// `φ_k = 2πk/K`, `k = 0..=K`. Each loop has `K+1` states whose first and
/// last entries sit at φ = 0 and φ = 2π; tracking uses maximal overlap with
/// the previous sample and the continuity gauge (adjacent overlaps made real
/// positive). Requested branches count field quanta of the prepared ensemble,
/// branch 0 being the dressed ground state.
pub fn adiabatic_branches(
    config: &DetectorConfig,
    branches: &[usize],
    oracle_cfg: &FockOracleConfig,
) -> Result<Vec<Vec<StateVector>>, OracleError> {
    oracle_cfg.validate()?;
    let cutoff = oracle_cfg.cutoff;
    let grid = oracle_cfg.grid_points;
    let max_branch = *branches.iter().max().ok_or_else(|| {
        OracleError::Config("at least one branch index is required".into())
    })?;
    if max_branch + 2 > cutoff {
        return Err(OracleError::BranchOutOfRange {
            branch: max_branch,
            cutoff,
        });
    }

    // Uncoupled: |n, 0⟩ are exact eigenstates at every φ and the loops are
    // constant; avoids the exactly degenerate manifolds of the resonant case.
    if config.coupling() == 0.0 {
        let states: Vec<Vec<StateVector>> = branches
            .iter()
            .map(|&n| vec![StateVector::basis(n, 0, cutoff); grid + 1])
            .collect();
        return Ok(states);
    }

    let count = required_state_count(max_branch, cutoff);
    let h0 = build_fock_hamiltonian(config, 0.0, cutoff);
    let (energies, eigvecs) = hermitian_eigen_lowest(&h0, count)?;
    let states0: Vec<StateVector> = eigvecs
        .into_iter()
        .map(StateVector::from_unnormalized)
        .collect();

    let spectral_scale = energies.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let resolution = 1e3 * f64::EPSILON * spectral_scale.max(f64::MIN_POSITIVE);

    let mut chosen: Vec<usize> = Vec::with_capacity(branches.len());
    for &branch in branches {
        let j = identify_branch(branch, &energies, &states0, cutoff)?;
        if let Some(pos) = chosen.iter().position(|&other| other == j) {
            return Err(OracleError::BranchCollision {
                first: branches[pos],
                second: branch,
            });
        }
        // states indistinguishable at numerical resolution have no defined
        // loop phase of their own
        for (k, &e) in energies.iter().enumerate() {
            if k != j && (e - energies[j]).abs() < resolution {
                return Err(OracleError::UnresolvedDegeneracy {
                    branch,
                    gap: (e - energies[j]).abs(),
                });
            }
        }
        chosen.push(j);
    }

    let mut loops: Vec<Vec<StateVector>> = chosen
        .iter()
        .map(|&j| {
            let mut s = states0[j].clone();
            let reference = s.dominant_index();
            s.fix_gauge_at(reference);
            vec![s]
        })
        .collect();

    for k in 1..=grid {
        let phi = TAU * k as f64 / grid as f64;
        let h = build_fock_hamiltonian(config, phi, cutoff);
        let (_, eigvecs) = hermitian_eigen_lowest(&h, count)?;
        let candidates: Vec<StateVector> = eigvecs
            .into_iter()
            .map(StateVector::from_unnormalized)
            .collect();

        let mut picks: Vec<usize> = Vec::with_capacity(loops.len());
        for (b, states) in loops.iter_mut().enumerate() {
            let prev = states.last().expect("loop is nonempty");
            let mut best_j = 0usize;
            let mut best_mag = -1.0f64;
            for (j, cand) in candidates.iter().enumerate() {
                let mag = prev.overlap(cand).norm();
                if mag > best_mag {
                    best_mag = mag;
                    best_j = j;
                }
            }
            if best_mag < 0.5 {
                return Err(OracleError::GridTooCoarse { overlap: best_mag });
            }
            if let Some(pos) = picks.iter().position(|&other| other == best_j) {
                return Err(OracleError::BranchCollision {
                    first: branches[pos],
                    second: branches[b],
                });
            }
            picks.push(best_j);
            let mut next = candidates[best_j].clone();
            let ov = prev.overlap(&next);
            next.scale_phase((ov / ov.norm()).conj()); // continuity gauge
            states.push(next);
        }
    }
    Ok(loops)
}

/// Single-branch wrapper around [`adiabatic_branches`].
pub fn adiabatic_branch(
    config: &DetectorConfig,
    branch: usize,
    oracle_cfg: &FockOracleConfig,
) -> Result<Vec<StateVector>, OracleError> {
    Ok(adiabatic_branches(config, &[branch], oracle_cfg)?.remove(0))
}

/// Least-squares structure of the branch phases `γ̃_n` against n.
///
/// Loop phases are principal-valued, so the slope is estimated circularly
/// (successive differences averaged on the unit circle) before the phases are
/// unwrapped onto a line; `slope` is therefore congruent mod 2π to the
/// continuum slope. `fit_residual` is the largest absolute residual of the
/// unwrapped fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchLinearity {
    pub slope: f64,
    pub intercept: f64,
    pub fit_residual: f64,
}

/// Fit `γ̃_n ≈ intercept + slope·n` for branches `0..=max_branch`.
pub fn branch_phase_linearity(
    config: &DetectorConfig,
    max_branch: usize,
    oracle_cfg: &FockOracleConfig,
) -> Result<BranchLinearity, OracleError> {
    let branches: Vec<usize> = (0..=max_branch).collect();
    let loops = adiabatic_branches(config, &branches, oracle_cfg)?;
    let phases: Vec<f64> = loops
        .iter()
        .map(|states| branch_berry_phase(states))
        .collect::<Result<Vec<_>, _>>()?;

    // circular slope estimate from successive differences
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for w in phases.windows(2) {
        acc += num_complex::Complex64::from_polar(1.0, w[1] - w[0]);
    }
    if acc.norm() < 1e-12 {
        return Err(OracleError::UndefinedPhase);
    }
    let slope0 = acc.arg();

    // unwrap onto the predicted line, then ordinary least squares
    let mut unwrapped = Vec::with_capacity(phases.len());
    let mut prev = phases[0];
    unwrapped.push(prev);
    for (n, &g) in phases.iter().enumerate().skip(1) {
        let _ = n;
        let predicted = prev + slope0;
        let y = g + TAU * ((predicted - g) / TAU).round();
        unwrapped.push(y);
        prev = y;
    }
    let count = unwrapped.len() as f64;
    let mean_n = (unwrapped.len() - 1) as f64 / 2.0;
    let mean_y = unwrapped.iter().sum::<f64>() / count;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (n, &y) in unwrapped.iter().enumerate() {
        let dx = n as f64 - mean_n;
        sxx += dx * dx;
        sxy += dx * (y - mean_y);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { slope0 };
    let intercept = mean_y - slope * mean_n;
    let fit_residual = unwrapped
        .iter()
        .enumerate()
        .map(|(n, &y)| (y - intercept - slope * n as f64).abs())
        .fold(0.0f64, f64::max);
    Ok(BranchLinearity {
        slope: wrap_principal(slope),
        intercept,
        fit_residual,
    })
}

/// Distance between two angles compared as values mod 2π.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    wrap_principal(a - b).abs()
}
