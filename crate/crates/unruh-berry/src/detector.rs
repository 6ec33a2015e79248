//! Detector configuration, trajectories, and kinematic/thermodynamic helpers.

use thiserror::Error;

use crate::constants::PhysicalConstants;

/// Largest coupling ratio λ/Ω_a admitted by the closed-form pipeline.
///
/// Above this the sudden/adiabatic premises behind the closed forms degrade;
/// stronger couplings are still accepted by the Fock engine, which flags them.
pub const WEAK_COUPLING_BOUND: f64 = 1e-3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("omega_field must be positive, got {0:e} rad/s")]
    NonPositiveFieldFrequency(f64),
    #[error("omega_detector must be positive, got {0:e} rad/s")]
    NonPositiveDetectorFrequency(f64),
    #[error("coupling must be nonnegative, got {0:e} rad/s")]
    NegativeCoupling(f64),
    #[error(
        "unstable configuration: omega_field*omega_detector = {product:e} \
         must exceed 4*coupling^2 = {bound:e}"
    )]
    Unstable { product: f64, bound: f64 },
}

/// A harmonic detector of frequency `Ω_b` coupled with strength `λ` to a
/// single field mode of frequency `Ω_a`; all angular frequencies in rad/s.
///
/// Construction enforces `Ω_a > 0`, `Ω_b > 0`, `λ ≥ 0` and the
/// positive-definiteness bound `Ω_a Ω_b > 4λ²` of the quadrature form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorConfig {
    omega_field: f64,
    omega_detector: f64,
    coupling: f64,
}

impl DetectorConfig {
    pub fn new(omega_field: f64, omega_detector: f64, coupling: f64) -> Result<Self, ConfigError> {
        if !(omega_field > 0.0) || !omega_field.is_finite() {
            return Err(ConfigError::NonPositiveFieldFrequency(omega_field));
        }
        if !(omega_detector > 0.0) || !omega_detector.is_finite() {
            return Err(ConfigError::NonPositiveDetectorFrequency(omega_detector));
        }
        if !(coupling >= 0.0) || !coupling.is_finite() {
            return Err(ConfigError::NegativeCoupling(coupling));
        }
        let product = omega_field * omega_detector;
        let bound = 4.0 * coupling * coupling;
        if product <= bound {
            return Err(ConfigError::Unstable { product, bound });
        }
        Ok(Self {
            omega_field,
            omega_detector,
            coupling,
        })
    }

    /// Field-mode angular frequency Ω_a (rad/s).
    pub fn omega_field(&self) -> f64 {
        self.omega_field
    }

    /// Detector angular frequency Ω_b (rad/s).
    pub fn omega_detector(&self) -> f64 {
        self.omega_detector
    }

    /// Coupling λ (rad/s).
    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// λ/Ω_a.
    pub fn coupling_ratio(&self) -> f64 {
        self.coupling / self.omega_field
    }

    /// Whether the closed-form pipeline admits this configuration.
    pub fn is_weak_coupling(&self) -> bool {
        self.coupling_ratio() <= WEAK_COUPLING_BOUND
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrajectoryError {
    #[error("proper acceleration must be positive, got {0:e} m/s^2")]
    NonPositiveAcceleration(f64),
}

/// Worldline of the detector: inertial, or uniformly accelerated with proper
/// acceleration `a` (m/s²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Trajectory {
    Inertial,
    UniformAcceleration { proper_acceleration: f64 },
}

impl Trajectory {
    pub fn uniform(proper_acceleration: f64) -> Result<Self, TrajectoryError> {
        if !(proper_acceleration > 0.0) || !proper_acceleration.is_finite() {
            return Err(TrajectoryError::NonPositiveAcceleration(proper_acceleration));
        }
        Ok(Self::UniformAcceleration {
            proper_acceleration,
        })
    }

    /// Proper acceleration in m/s²; zero for the inertial branch.
    pub fn proper_acceleration(&self) -> f64 {
        match self {
            Self::Inertial => 0.0,
            Self::UniformAcceleration {
                proper_acceleration,
            } => *proper_acceleration,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KinematicsError {
    #[error("acceleration must be nonnegative, got {0:e} m/s^2")]
    NegativeAcceleration(f64),
    #[error("angular frequency must be positive, got {0:e} rad/s")]
    NonPositiveFrequency(f64),
    #[error("proper time must be nonnegative, got {0:e} s")]
    NegativeProperTime(f64),
}

/// Unruh temperature `T_U = ħa/(2πck_B)` in kelvin; zero acceleration maps to
/// zero temperature.
pub fn unruh_temperature(a: f64, k: &PhysicalConstants) -> Result<f64, KinematicsError> {
    if !(a >= 0.0) || !a.is_finite() {
        return Err(KinematicsError::NegativeAcceleration(a));
    }
    Ok(k.hbar() * a / (2.0 * std::f64::consts::PI * k.c() * k.k_b()))
}

/// Proper-time duration `2π/Ω_a` of one closed loop of the field-operator
/// phase.
pub fn cycle_period(omega_field: f64) -> Result<f64, KinematicsError> {
    if !(omega_field > 0.0) || !omega_field.is_finite() {
        return Err(KinematicsError::NonPositiveFrequency(omega_field));
    }
    Ok(2.0 * std::f64::consts::PI / omega_field)
}

/// Lab-frame speed, as a fraction of c, of a uniformly accelerated worldline
/// after proper time `tau`: `v/c = tanh(aτ/c)`.
pub fn speed_after_proper_time(
    a: f64,
    tau: f64,
    k: &PhysicalConstants,
) -> Result<f64, KinematicsError> {
    if !(a >= 0.0) || !a.is_finite() {
        return Err(KinematicsError::NegativeAcceleration(a));
    }
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(KinematicsError::NegativeProperTime(tau));
    }
    Ok((a * tau / k.c()).tanh())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> PhysicalConstants {
        PhysicalConstants::codata()
    }

    #[test]
    fn unruh_temperature_values() {
        assert_eq!(unruh_temperature(0.0, &k()).unwrap(), 0.0);
        // recomputed by hand from the CODATA constants
        let t = unruh_temperature(4.5e17, &k()).unwrap();
        assert!((t - 1.8247560852353534e-3).abs() / t < 1e-12);
        let t = unruh_temperature(1e17, &k()).unwrap();
        assert!((t - 4.055013522745229e-4).abs() / t < 1e-12);
        assert!(unruh_temperature(-1.0, &k()).is_err());
    }

    #[test]
    fn unruh_temperature_linear_in_a() {
        let t1 = unruh_temperature(3.7e16, &k()).unwrap();
        let t2 = unruh_temperature(7.4e16, &k()).unwrap();
        assert_eq!(t2, 2.0 * t1);
    }

    #[test]
    fn cycle_period_values() {
        let p = cycle_period(2.0e9).unwrap();
        assert!((p - 3.141592653589793e-9).abs() / p < 1e-15);
        let p = cycle_period(2.0 * std::f64::consts::PI).unwrap();
        assert!((p - 1.0).abs() < 1e-15);
        let p = cycle_period(2.0e6).unwrap();
        assert!((p - 3.141592653589793e-6).abs() / p < 1e-15);
        assert!(cycle_period(0.0).is_err());
        assert!(cycle_period(-2.0e9).is_err());
    }

    #[test]
    fn cycle_period_times_omega_is_2pi() {
        for omega in [1.0, 2.0e9, 7.3e5, 1e-3] {
            let p = cycle_period(omega).unwrap();
            assert!((p * omega - 2.0 * std::f64::consts::PI).abs() < 1e-15 * 2.0 * std::f64::consts::PI);
        }
    }

    #[test]
    fn speed_values() {
        assert_eq!(speed_after_proper_time(1e17, 0.0, &k()).unwrap(), 0.0);
        let v = speed_after_proper_time(1e17, 5e-10, &k()).unwrap();
        assert!((v - 0.16525264512358104).abs() < 1e-12);
        assert!((0.14..=0.17).contains(&v));
        // tanh asymptote: approached from below, saturating in f64 well
        // before any overflow
        let v = speed_after_proper_time(5e9, 1.0, &k()).unwrap();
        assert!(v < 1.0 && v > 0.999_999);
        let v = speed_after_proper_time(1e20, 1.0, &k()).unwrap();
        assert!(v <= 1.0);
        assert!(speed_after_proper_time(-1.0, 1.0, &k()).is_err());
        assert!(speed_after_proper_time(1.0, -1.0, &k()).is_err());
    }

    #[test]
    fn speed_strictly_increasing_bounded() {
        let mut prev = -1.0;
        for i in 0..50 {
            let tau = 1e-11 * (i as f64 + 1.0);
            let v = speed_after_proper_time(3e17, tau, &k()).unwrap();
            assert!(v > prev);
            assert!(v < 1.0);
            prev = v;
        }
    }

    #[test]
    fn config_validation() {
        assert!(DetectorConfig::new(2e9, 2e9, 250.0).is_ok());
        assert!(matches!(
            DetectorConfig::new(0.0, 2e9, 0.0),
            Err(ConfigError::NonPositiveFieldFrequency(_))
        ));
        assert!(matches!(
            DetectorConfig::new(2e9, -1.0, 0.0),
            Err(ConfigError::NonPositiveDetectorFrequency(_))
        ));
        assert!(matches!(
            DetectorConfig::new(2e9, 2e9, -1.0),
            Err(ConfigError::NegativeCoupling(_))
        ));
        // stability bound: 1*1 <= 4*0.51^2
        assert!(matches!(
            DetectorConfig::new(1.0, 1.0, 0.51),
            Err(ConfigError::Unstable { .. })
        ));
        // boundary itself is rejected
        assert!(DetectorConfig::new(1.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn weak_coupling_guard() {
        assert!(DetectorConfig::new(2e9, 2e9, 2e6).unwrap().is_weak_coupling());
        assert!(!DetectorConfig::new(2e9, 2e9, 2.1e6).unwrap().is_weak_coupling());
    }

    #[test]
    fn trajectory_accessors() {
        assert_eq!(Trajectory::Inertial.proper_acceleration(), 0.0);
        let t = Trajectory::uniform(4.5e17).unwrap();
        assert_eq!(t.proper_acceleration(), 4.5e17);
        assert!(Trajectory::uniform(0.0).is_err());
        assert!(Trajectory::uniform(-1.0).is_err());
    }
}
