//! Truncated two-mode number basis and the dense Hamiltonian.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use super::OracleError;
use crate::detector::DetectorConfig;

/// Total dimension `(cutoff+1)²` of the truncated two-mode space.
pub fn fock_dimension(cutoff: usize) -> usize {
    (cutoff + 1) * (cutoff + 1)
}

/// Index of `|n_field, m_detector⟩`, row-major in the field index.
pub fn fock_index(n: usize, m: usize, cutoff: usize) -> usize {
    debug_assert!(n <= cutoff && m <= cutoff);
    n * (cutoff + 1) + m
}

/// Matrix of `Ω_a a†a + Ω_b b†b + λ(b+b†)(a†e^{iφ} + a e^{-iφ})` in the
/// truncated number basis. Hermitian by construction.
pub fn build_fock_hamiltonian(
    config: &DetectorConfig,
    phi: f64,
    cutoff: usize,
) -> Array2<Complex64> {
    let dim = fock_dimension(cutoff);
    let (oa, ob, lam) = (
        config.omega_field(),
        config.omega_detector(),
        config.coupling(),
    );
    let e_plus = Complex64::from_polar(lam, phi); // λ e^{+iφ}, multiplies a†
    let e_minus = e_plus.conj();
    let mut h = Array2::<Complex64>::zeros((dim, dim));

    for n in 0..=cutoff {
        for m in 0..=cutoff {
            let from = fock_index(n, m, cutoff);
            h[(from, from)] = Complex64::new(oa * n as f64 + ob * m as f64, 0.0);
            let (nf, mf) = (n as f64, m as f64);
            // a† b  (field up, detector down)
            if n < cutoff && m > 0 {
                let to = fock_index(n + 1, m - 1, cutoff);
                h[(to, from)] += e_plus * ((nf + 1.0) * mf).sqrt();
            }
            // a† b†  (both up)
            if n < cutoff && m < cutoff {
                let to = fock_index(n + 1, m + 1, cutoff);
                h[(to, from)] += e_plus * ((nf + 1.0) * (mf + 1.0)).sqrt();
            }
            // a b  (both down)
            if n > 0 && m > 0 {
                let to = fock_index(n - 1, m - 1, cutoff);
                h[(to, from)] += e_minus * (nf * mf).sqrt();
            }
            // a b†  (field down, detector up)
            if n > 0 && m < cutoff {
                let to = fock_index(n - 1, m + 1, cutoff);
                h[(to, from)] += e_minus * (nf * (mf + 1.0)).sqrt();
            }
        }
    }
    h
}

/// A normalized state on the truncated space (or any finite-dimensional ray
/// fed to the loop-phase routines); amplitudes ordered as [`fock_index`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Array1<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes that are already unit-norm (within 1e-12).
    pub fn new(amplitudes: Array1<Complex64>) -> Result<Self, OracleError> {
        let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(OracleError::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes and wraps.
    pub fn from_unnormalized(amplitudes: Array1<Complex64>) -> Self {
        let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        Self {
            amplitudes: amplitudes.mapv(|c| c / norm),
        }
    }

    /// Basis state `|n, m⟩`.
    pub fn basis(n: usize, m: usize, cutoff: usize) -> Self {
        let mut amplitudes = Array1::zeros(fock_dimension(cutoff));
        amplitudes[fock_index(n, m, cutoff)] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, i: usize) -> Complex64 {
        self.amplitudes[i]
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `⟨a†a⟩` on the field mode; requires the [`fock_index`] layout.
    pub fn mean_field_occupation(&self, cutoff: usize) -> f64 {
        self.occupation_weighted(cutoff, |n, _| n as f64)
    }

    /// `⟨a†a + b†b⟩`.
    pub fn mean_total_occupation(&self, cutoff: usize) -> f64 {
        self.occupation_weighted(cutoff, |n, m| (n + m) as f64)
    }

    /// Probability mass on shells with `n + m ≥ shell_min`.
    pub fn shell_mass(&self, cutoff: usize, shell_min: usize) -> f64 {
        let mut mass = 0.0;
        for n in 0..=cutoff {
            for m in 0..=cutoff {
                if n + m >= shell_min {
                    mass += self.amplitudes[fock_index(n, m, cutoff)].norm_sqr();
                }
            }
        }
        mass
    }

    fn occupation_weighted(&self, cutoff: usize, weight: impl Fn(usize, usize) -> f64) -> f64 {
        let mut acc = 0.0;
        for n in 0..=cutoff {
            for m in 0..=cutoff {
                acc += weight(n, m) * self.amplitudes[fock_index(n, m, cutoff)].norm_sqr();
            }
        }
        acc
    }

    /// Rotate the global phase so `amplitudes[reference]` is real positive.
    pub(crate) fn fix_gauge_at(&mut self, reference: usize) {
        let a = self.amplitudes[reference];
        if a.norm() > 0.0 {
            let phase = a / a.norm();
            self.amplitudes.mapv_inplace(|c| c * phase.conj());
        }
    }

    pub(crate) fn scale_phase(&mut self, phase: Complex64) {
        self.amplitudes.mapv_inplace(|c| c * phase);
    }

    /// Index of the largest-magnitude amplitude.
    pub(crate) fn dominant_index(&self) -> usize {
        let mut best = 0;
        let mut best_mag = -1.0;
        for (i, c) in self.amplitudes.iter().enumerate() {
            if c.norm_sqr() > best_mag {
                best_mag = c.norm_sqr();
                best = i;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(oa: f64, ob: f64, lam: f64) -> DetectorConfig {
        DetectorConfig::new(oa, ob, lam).unwrap()
    }

    #[test]
    fn uncoupled_hamiltonian_is_diagonal() {
        let h = build_fock_hamiltonian(&cfg(2.0, 1.0, 0.0), 0.9, 4);
        for n in 0..=4usize {
            for m in 0..=4usize {
                let i = fock_index(n, m, 4);
                assert_eq!(h[(i, i)], Complex64::new(2.0 * n as f64 + m as f64, 0.0));
            }
        }
        let off: f64 = h
            .indexed_iter()
            .filter(|((i, j), _)| i != j)
            .map(|(_, c)| c.norm())
            .sum();
        assert_eq!(off, 0.0);
    }

    #[test]
    fn single_ladder_matrix_element() {
        // ⟨1,0|H|0,1⟩ = λ e^{iφ} at any cutoff ≥ 1
        for cutoff in [4, 8] {
            for phi in [0.0, 0.7, 2.9] {
                let h = build_fock_hamiltonian(&cfg(2.0, 1.0, 0.3), phi, cutoff);
                let el = h[(fock_index(1, 0, cutoff), fock_index(0, 1, cutoff))];
                let expect = Complex64::from_polar(0.3, phi);
                assert!((el - expect).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let h = build_fock_hamiltonian(&cfg(2.0, 1.3, 0.2), 1.1, 5);
        for i in 0..h.nrows() {
            for j in 0..h.ncols() {
                assert!((h[(i, j)] - h[(j, i)].conj()).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn spectrum_phi_invariant() {
        use super::super::eigen::hermitian_eigen_lowest;
        let c = cfg(2.0, 1.3, 0.2);
        let h0 = build_fock_hamiltonian(&c, 0.0, 6);
        let (w0, _) = hermitian_eigen_lowest(&h0, h0.nrows()).unwrap();
        let scale = w0.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        let h1 = build_fock_hamiltonian(&c, 1.0, 6);
        let (w1, _) = hermitian_eigen_lowest(&h1, h1.nrows()).unwrap();
        for (a, b) in w0.iter().zip(w1.iter()) {
            assert!((a - b).abs() / scale < 1e-10);
        }
    }

    #[test]
    fn state_vector_norm_check() {
        let mut amps = Array1::<Complex64>::zeros(4);
        amps[0] = Complex64::new(0.5, 0.0);
        assert!(matches!(
            StateVector::new(amps.clone()),
            Err(OracleError::NotNormalized { .. })
        ));
        let s = StateVector::from_unnormalized(amps);
        assert!((s.overlap(&s).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn occupation_helpers() {
        let s = StateVector::basis(2, 1, 4);
        assert_eq!(s.mean_field_occupation(4), 2.0);
        assert_eq!(s.mean_total_occupation(4), 3.0);
        assert_eq!(s.shell_mass(4, 3), 1.0);
        assert_eq!(s.shell_mass(4, 4), 0.0);
    }
}
