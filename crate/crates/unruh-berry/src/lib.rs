//! Berry phases of a harmonic detector coupled to a single field mode.
//!
//! A pointlike harmonic oscillator (frequency `Ω_b`) coupled to one mode of a
//! massless scalar field (frequency `Ω_a`) picks up a geometric phase as the
//! field-operator phase `φ` winds through a cycle along the detector's
//! worldline. For a uniformly accelerated detector the field mode is thermally
//! populated at the Unruh temperature, and the cycle-averaged geometric phase
//! shifts relative to the inertial case. This crate computes both:
//!
//! * closed forms for the inertial phase `γ_I`, the detector factor `G`, the
//!   squeezing parameter `q(a)`, the accelerated phase `γ_a`, the per-cycle
//!   difference `δ`, and the interferometric visibility ([`phases`]), fed by a
//!   numerically recovered normal-mode decomposition of the quadratic
//!   Hamiltonian ([`diagonalizer`]);
//! * an independent numerical engine on a truncated two-mode Fock space that
//!   recomputes every phase from dense eigensolves and gauge-invariant
//!   Pancharatnam (Wilson-loop) products ([`oracle`]).
//!
//! The two routes share nothing but the Hamiltonian, so agreement between them
//! is a genuine cross-check. The companion `unruh-berry` CLI drives
//! acceleration sweeps and crosschecks from scenario files.
//!
//! ```
//! use unruh_berry::constants::PhysicalConstants;
//! use unruh_berry::detector::{unruh_temperature, DetectorConfig};
//!
//! let k = PhysicalConstants::codata();
//! let t = unruh_temperature(4.5e17, &k).unwrap();
//! assert!((t - 1.8248e-3).abs() < 1e-6); // kelvin
//!
//! let config = DetectorConfig::new(2.0e9, 2.0e9, 250.0).unwrap();
//! assert!(config.is_weak_coupling());
//! ```

pub mod book;
pub mod constants;
pub mod detector;
pub mod diagonalizer;
pub mod oracle;
pub mod phases;

pub use constants::PhysicalConstants;
pub use detector::{DetectorConfig, Trajectory};
pub use diagonalizer::NormalModeDecomposition;
pub use oracle::FockOracleConfig;
pub use phases::PhaseResult;
