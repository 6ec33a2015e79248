//! Fock-space images of the decomposition operators and fidelity checks.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use super::eigen::hermitian_eigen_lowest;
use super::fock::{build_fock_hamiltonian, fock_dimension, fock_index, StateVector};
use super::OracleError;
use crate::detector::DetectorConfig;
use crate::diagonalizer::NormalModeDecomposition;

/// `a†² − a²` on the field mode (anti-Hermitian).
fn field_squeeze_generator(cutoff: usize) -> Array2<Complex64> {
    let dim = fock_dimension(cutoff);
    let mut g = Array2::<Complex64>::zeros((dim, dim));
    for n in 0..=cutoff {
        for m in 0..=cutoff {
            let from = fock_index(n, m, cutoff);
            if n + 2 <= cutoff {
                let amp = (((n + 1) * (n + 2)) as f64).sqrt();
                g[(fock_index(n + 2, m, cutoff), from)] += Complex64::new(amp, 0.0);
            }
            if n >= 2 {
                let amp = ((n * (n - 1)) as f64).sqrt();
                g[(fock_index(n - 2, m, cutoff), from)] -= Complex64::new(amp, 0.0);
            }
        }
    }
    g
}

/// `b†² − b²` on the detector mode.
fn detector_squeeze_generator(cutoff: usize) -> Array2<Complex64> {
    let dim = fock_dimension(cutoff);
    let mut g = Array2::<Complex64>::zeros((dim, dim));
    for n in 0..=cutoff {
        for m in 0..=cutoff {
            let from = fock_index(n, m, cutoff);
            if m + 2 <= cutoff {
                let amp = (((m + 1) * (m + 2)) as f64).sqrt();
                g[(fock_index(n, m + 2, cutoff), from)] += Complex64::new(amp, 0.0);
            }
            if m >= 2 {
                let amp = ((m * (m - 1)) as f64).sqrt();
                g[(fock_index(n, m - 2, cutoff), from)] -= Complex64::new(amp, 0.0);
            }
        }
    }
    g
}

/// `a†b − ab†`, the mode-mixer generator.
fn mixer_generator(cutoff: usize) -> Array2<Complex64> {
    let dim = fock_dimension(cutoff);
    let mut g = Array2::<Complex64>::zeros((dim, dim));
    for n in 0..=cutoff {
        for m in 0..=cutoff {
            let from = fock_index(n, m, cutoff);
            if n + 1 <= cutoff && m >= 1 {
                let amp = (((n + 1) * m) as f64).sqrt();
                g[(fock_index(n + 1, m - 1, cutoff), from)] += Complex64::new(amp, 0.0);
            }
            if n >= 1 && m + 1 <= cutoff {
                let amp = ((n * (m + 1)) as f64).sqrt();
                g[(fock_index(n - 1, m + 1, cutoff), from)] -= Complex64::new(amp, 0.0);
            }
        }
    }
    g
}

/// Apply `exp(t·G)` to `v` for anti-Hermitian `G`, via the eigendecomposition
/// of the Hermitian matrix `iG`.
fn apply_exponential(
    generator: &Array2<Complex64>,
    t: f64,
    v: &Array1<Complex64>,
) -> Result<Array1<Complex64>, OracleError> {
    let herm = generator.mapv(|g| Complex64::new(0.0, 1.0) * g);
    let n = herm.nrows();
    let (theta, basis) = hermitian_eigen_lowest(&herm, n)?;
    // exp(tG) = exp(-i t (iG)) = Σ_k e^{-i t θ_k} |k⟩⟨k|
    let mut out = Array1::<Complex64>::zeros(n);
    for (k, vec) in basis.iter().enumerate() {
        let coeff: Complex64 = vec.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
        let phase = Complex64::from_polar(1.0, -t * theta[k]);
        out.iter_mut()
            .zip(vec.iter())
            .for_each(|(o, &c)| *o += phase * coeff * c);
    }
    Ok(out)
}

/// The Gaussian ground state implied by a fitted decomposition:
/// `Ŝ_b†(p) D†(s) S_b†(v) S_a†(u) |0,0⟩`, built by exponentiating the
/// truncated generators. Cutoff leakage is exponentially small at weak
/// coupling and removed by renormalization.
pub fn decomposition_ground_state(
    d: &NormalModeDecomposition,
    cutoff: usize,
) -> Result<StateVector, OracleError> {
    let dim = fock_dimension(cutoff);
    let mut v = Array1::<Complex64>::zeros(dim);
    v[fock_index(0, 0, cutoff)] = Complex64::new(1.0, 0.0);

    // S_a = exp[u/2 (a†²−a²)]        → S_a† : t = -u/2 on a†²−a²
    // S_b = exp[v/2 (b²−b†²)]        → S_b† : t = +v/2 on b†²−b²
    // D   = exp[s (a†b−ab†)]         → D†   : t = -s
    // Ŝ_b = exp[p (b†²−b²)]          → Ŝ_b† : t = -p
    if d.u != 0.0 {
        v = apply_exponential(&field_squeeze_generator(cutoff), -0.5 * d.u, &v)?;
    }
    if d.v != 0.0 {
        v = apply_exponential(&detector_squeeze_generator(cutoff), 0.5 * d.v, &v)?;
    }
    if d.s != 0.0 {
        v = apply_exponential(&mixer_generator(cutoff), -d.s, &v)?;
    }
    if d.p != 0.0 {
        v = apply_exponential(&detector_squeeze_generator(cutoff), -d.p, &v)?;
    }
    Ok(StateVector::from_unnormalized(v))
}

/// `|⟨0,0|ψ_ground(φ=0)⟩|²`: how close the bare vacuum sits to the dressed
/// ground state (the sudden-switching survival probability).
pub fn ground_fidelity(config: &DetectorConfig, cutoff: usize) -> Result<f64, OracleError> {
    let h = build_fock_hamiltonian(config, 0.0, cutoff);
    let (_, vecs) = hermitian_eigen_lowest(&h, 1)?;
    Ok(vecs[0][fock_index(0, 0, cutoff)].norm_sqr())
}

/// `|⟨ψ_ground|g_decomposition⟩|²`: direct fidelity between the numerically
/// exact ground state and the Gaussian state implied by the fit.
pub fn decomposition_ground_fidelity(
    d: &NormalModeDecomposition,
    config: &DetectorConfig,
    cutoff: usize,
) -> Result<f64, OracleError> {
    let h = build_fock_hamiltonian(config, 0.0, cutoff);
    let (_, vecs) = hermitian_eigen_lowest(&h, 1)?;
    let exact = StateVector::from_unnormalized(vecs.into_iter().next().unwrap());
    let implied = decomposition_ground_state(d, cutoff)?;
    Ok(exact.overlap(&implied).norm_sqr())
}
