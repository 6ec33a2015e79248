//! Closed-form geometric phases and experiment-planning arithmetic.
//!
//! For one cycle of the loop angle the dressed ground state of an inertial
//! detector acquires
//!
//! ```text
//! γ_I = 2π · [ω̃_a sin²v sinh(2(C-v)) + ω̃_b sinh(2v) sinh²(C-v)]
//!           / [ω̃_a sinh(2(C-v)) + ω̃_b sinh(2v)],      C = ½ ln(ω̃_a/ω̃_b),
//! ```
//!
//! valid on the domain `ω̃_a/ω̃_b > e^{2v}`. A uniformly accelerated detector
//! sees the mode thermally populated with two-mode squeezing parameter
//! `q = arctan(e^{-πΩ_a c/a})`, and its ensemble phase picks up a correction
//! controlled by the detector factor `G`:
//!
//! ```text
//! γ_a = γ_I - Arg(cosh²q - e^{2πiG} sinh²q),       δ = γ_I - γ_a.
//! ```
//!
//! All angles are reported on the principal branch (−π, π]; multi-cycle
//! accumulation is tracked separately, unwrapped, by [`accumulated_phase`].
//! Planning helpers use |δ| — the interferometric observable is the magnitude
//! of the relative phase, and it accumulates independently of the sign of the
//! acceleration.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use thiserror::Error;

use crate::constants::PhysicalConstants;
use crate::diagonalizer::NormalModeDecomposition;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PhaseError {
    #[error(
        "frequency-ratio constraint violated: omega_a/omega_b = {ratio} \
         must exceed e^(2v) = {bound}"
    )]
    ConstraintViolated { ratio: f64, bound: f64 },
    #[error("squeezing parameter must be nonnegative, got {0}")]
    NegativeSqueezing(f64),
    #[error("angular frequency must be positive, got {0:e} rad/s")]
    NonPositiveFrequency(f64),
    #[error("target phase must be positive, got {0}")]
    NonPositiveTarget(f64),
    #[error("phase difference per cycle is zero; the target is unreachable")]
    UnreachableTarget,
    #[error("per-cycle phase difference must be positive, got {0:e}")]
    NonPositiveDelta(f64),
    #[error("cycle count must be at least 1, got {0}")]
    CycleCountTooSmall(f64),
}

/// Which inverse-trigonometric reading of the squeezing parameter is used.
///
/// `Arctan` is the printed form `q = arctan(e^{-πΩc/a})`; `Arctanh` is the
/// two-mode-squeezing convention `tanh q = e^{-πΩc/a}` common in the Unruh
/// literature. Within the sweep domain of interest they differ by less than
/// 1e-4 relative; outputs carry the convention label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SqueezingConvention {
    #[default]
    Arctan,
    Arctanh,
}

impl std::fmt::Display for SqueezingConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Arctan => write!(f, "arctan"),
            Self::Arctanh => write!(f, "arctanh"),
        }
    }
}

/// Per-cycle phase data at one acceleration.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseResult {
    pub q: f64,
    pub g_factor: f64,
    pub gamma_inertial: f64,
    pub gamma_accelerated: f64,
    pub delta_per_cycle: f64,
    pub visibility: f64,
    pub convention: SqueezingConvention,
}

/// Reduce an angle to the principal branch (−π, π].
pub fn wrap_principal(x: f64) -> f64 {
    let mut y = x % TAU;
    if y > PI {
        y -= TAU;
    } else if y <= -PI {
        y += TAU;
    }
    y
}

fn check_ratio_domain(d: &NormalModeDecomposition) -> Result<(), PhaseError> {
    let ratio = d.omega_a_dressed / d.omega_b_dressed;
    let bound = (2.0 * d.v).exp();
    if ratio <= bound {
        return Err(PhaseError::ConstraintViolated { ratio, bound });
    }
    Ok(())
}

/// Inertial-detector geometric phase per cycle, on the principal branch.
///
/// Identical for all inertial trajectories: no velocity enters. The `v = 0`
/// (uncoupled) limit is handled exactly and returns 0.
pub fn gamma_inertial(d: &NormalModeDecomposition) -> Result<f64, PhaseError> {
    if d.v == 0.0 {
        return Ok(0.0);
    }
    check_ratio_domain(d)?;
    let c = d.log_frequency_ratio();
    let (wa, wb, v) = (d.omega_a_dressed, d.omega_b_dressed, d.v);
    let num = wa * v.sin().powi(2) * (2.0 * (c - v)).sinh() + wb * (2.0 * v).sinh() * (c - v).sinh().powi(2);
    let den = wa * (2.0 * (c - v)).sinh() + wb * (2.0 * v).sinh();
    Ok(wrap_principal(TAU * num / den))
}

/// Detector factor `G` entering the accelerated correction. Dimensionless;
/// only its value mod 1 matters downstream.
pub fn g_factor(d: &NormalModeDecomposition) -> Result<f64, PhaseError> {
    if d.v == 0.0 {
        return Ok(0.0);
    }
    check_ratio_domain(d)?;
    let c = d.log_frequency_ratio();
    let (wa, wb, v) = (d.omega_a_dressed, d.omega_b_dressed, d.v);
    let num = wb * (2.0 * v).sinh() * (2.0 * (c - v)).cosh();
    let den = wa * (2.0 * (c - v)).sinh() + wb * (2.0 * v).sinh();
    Ok(num / den)
}

/// Two-mode squeezing parameter of the thermally populated mode,
/// `q = arctan(e^{-πΩ_a c/a})`, in the printed arctan convention.
///
/// The `a → 0` limit is taken (0), not evaluated; the sign of the
/// acceleration is irrelevant.
pub fn squeezing_q(
    omega_field: f64,
    acceleration: f64,
    k: &PhysicalConstants,
) -> Result<f64, PhaseError> {
    squeezing_q_with(
        SqueezingConvention::Arctan,
        omega_field,
        acceleration,
        k,
    )
}

/// [`squeezing_q`] with an explicit convention choice.
pub fn squeezing_q_with(
    convention: SqueezingConvention,
    omega_field: f64,
    acceleration: f64,
    k: &PhysicalConstants,
) -> Result<f64, PhaseError> {
    if !(omega_field > 0.0) {
        return Err(PhaseError::NonPositiveFrequency(omega_field));
    }
    let a = acceleration.abs();
    if a == 0.0 {
        return Ok(0.0);
    }
    let x = (-PI * omega_field * k.c() / a).exp();
    Ok(match convention {
        SqueezingConvention::Arctan => x.atan(),
        SqueezingConvention::Arctanh => x.atanh(),
    })
}

/// Accelerated-detector ensemble phase
/// `γ_a = γ_I − Arg(cosh²q − e^{2πiG} sinh²q)`, principal branch.
pub fn gamma_accelerated(gamma_i: f64, q: f64, g: f64) -> Result<f64, PhaseError> {
    if !(q >= 0.0) {
        return Err(PhaseError::NegativeSqueezing(q));
    }
    Ok(wrap_principal(gamma_i - accelerated_arg(q, g)))
}

/// `Arg(cosh²q − e^{2πiG} sinh²q)`: the per-cycle dephasing, evaluated
/// directly.
///
/// This equals `γ_I − γ_a` exactly, but the subtraction of the two phases
/// loses everything below the ulp of `γ_I` (~1e-17·γ_I); sweeps over weak
/// accelerations need the direct form, which is accurate down to subnormal
/// `δ`.
pub fn dephasing_arg(q: f64, g: f64) -> Result<f64, PhaseError> {
    if !(q >= 0.0) {
        return Err(PhaseError::NegativeSqueezing(q));
    }
    Ok(accelerated_arg(q, g))
}

fn accelerated_arg(q: f64, g: f64) -> f64 {
    let (ch, sh) = (q.cosh(), q.sinh());
    let z = Complex64::new(ch * ch, 0.0)
        - Complex64::from_polar(1.0, TAU * g) * Complex64::new(sh * sh, 0.0);
    z.arg()
}

/// Per-cycle inertial/accelerated phase difference `δ = γ_I − γ_a`, principal
/// branch. Negative values occur for some `(q, G)`; planning uses |δ|.
pub fn delta_per_cycle(gamma_i: f64, gamma_a: f64) -> f64 {
    wrap_principal(gamma_i - gamma_a)
}

/// Interference visibility `V = 1/cosh q ∈ (0.707, 1]` on `q ∈ [0, π/4]`.
pub fn visibility(q: f64) -> Result<f64, PhaseError> {
    if !(q >= 0.0) {
        return Err(PhaseError::NegativeSqueezing(q));
    }
    Ok(1.0 / q.cosh())
}

/// Number of cycles needed to accumulate `target` radians at `delta` radians
/// per cycle: `ceil(target/delta)`.
///
/// Returned as an integer-valued f64: for resonance-suppressed δ the count
/// exceeds any integer type. Accumulation is unwrapped and independent of the
/// acceleration sign, so pass `|δ|`.
pub fn cycles_to_target(delta: f64, target: f64) -> Result<f64, PhaseError> {
    if delta == 0.0 {
        return Err(PhaseError::UnreachableTarget);
    }
    if !(delta > 0.0) {
        return Err(PhaseError::NonPositiveDelta(delta));
    }
    if !(target > 0.0) {
        return Err(PhaseError::NonPositiveTarget(target));
    }
    Ok((target / delta).ceil())
}

/// Proper-time duration of `cycles` cycles: `cycles · 2π/Ω_a`.
pub fn time_to_target(cycles: f64, omega_field: f64) -> Result<f64, PhaseError> {
    if !(cycles >= 1.0) {
        return Err(PhaseError::CycleCountTooSmall(cycles));
    }
    if !(omega_field > 0.0) {
        return Err(PhaseError::NonPositiveFrequency(omega_field));
    }
    Ok(cycles * TAU / omega_field)
}

/// Unwrapped phase accumulated over `cycles` cycles (no mod-2π reduction).
pub fn accumulated_phase(delta: f64, cycles: f64) -> f64 {
    delta * cycles
}

/// Assemble the full per-cycle phase picture for one decomposition and one
/// acceleration.
pub fn compute_phases(
    d: &NormalModeDecomposition,
    omega_field: f64,
    acceleration: f64,
    k: &PhysicalConstants,
    convention: SqueezingConvention,
) -> Result<PhaseResult, PhaseError> {
    let gamma_i = gamma_inertial(d)?;
    let g = g_factor(d)?;
    let q = squeezing_q_with(convention, omega_field, acceleration, k)?;
    let gamma_a = gamma_accelerated(gamma_i, q, g)?;
    Ok(PhaseResult {
        q,
        g_factor: g,
        gamma_inertial: gamma_i,
        gamma_accelerated: gamma_a,
        // δ = γ_I − γ_a analytically, but the direct Arg form survives where
        // the subtraction would round to zero
        delta_per_cycle: dephasing_arg(q, g)?,
        visibility: visibility(q)?,
        convention,
    })
}
