//! Quadrature representation of the two-mode Hamiltonian and its normal-mode
//! decomposition.
//!
//! The Hamiltonian
//!
//! ```text
//! H = Ω_a a†a + Ω_b b†b + λ (b + b†)(a† e^{iφ} + a e^{-iφ})
//! ```
//!
//! is quadratic in the quadratures `x = (a+a†)/√2`, `p = -i(a-a†)/√2`
//! (ordering `(x_a, p_a, x_b, p_b)` throughout), so `H = ½ rᵀ M r + const`.
//! It is diagonalized by a product of Gaussian unitaries
//!
//! ```text
//! U = S_a(u) · S_b(v) · D_ab(s) · Ŝ_b(p) · R_a(φ)
//! ```
//!
//! (single-mode squeezers on each mode, a mode mixer, a second squeezer on
//! the detector mode, and the phase rotation that generates the φ-loop), with
//! `H = U† H₀(ω̃_a, ω̃_b) U`. The parameters `(u, v, s, p, ω̃_a, ω̃_b)` are
//! recovered numerically here by damped-Newton root finding on the symplectic
//! representation, seeded from first-order perturbation theory in λ/Ω. Only
//! three of them are independent: `u = C - v` with `C = ½ln(ω̃_a/ω̃_b)`, and
//! `s`, `p` are likewise functions of `(v, ω̃_a, ω̃_b)`.
//!
//! `D_ab = exp[s(a†b - ab†)]` acts as a beam-splitter-style mode mixer; the
//! name "two-mode displacement" is kept in the literature this follows.

use ndarray::Array2;
use ndarray_linalg::Eig;
use num_complex::Complex64;
use thiserror::Error;

use crate::detector::DetectorConfig;

/// Default convergence target for the reconstruction residual.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;
/// Newton iteration cap.
pub const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagonalizerError {
    #[error("quadratic form is not positive definite (min eigenvalue {min_eigenvalue:e}); \
             the configuration is dynamically unstable")]
    Unstable { min_eigenvalue: f64 },
    #[error("decomposition fit did not converge after {iterations} iterations; \
             best residual {best_residual:e}")]
    NonConvergence {
        iterations: usize,
        best_residual: f64,
    },
}

/// `H = ½ rᵀ M r + constant_offset` in the ordered quadrature basis
/// `(x_a, p_a, x_b, p_b)`, at loop angle `phase_angle`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    matrix: Array2<f64>,
    phase_angle: f64,
    constant_offset: f64,
}

impl QuadraticHamiltonian {
    /// Wraps an arbitrary symmetric 4×4 quadratic form. No definiteness check
    /// is performed; `symplectic_spectrum` reports instability.
    ///
    /// Panics if the matrix is not 4×4 or not symmetric to machine precision.
    pub fn from_matrix(matrix: Array2<f64>, phase_angle: f64, constant_offset: f64) -> Self {
        assert_eq!(matrix.dim(), (4, 4), "quadratic form must be 4x4");
        let scale = matrix.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
        for i in 0..4 {
            for j in 0..4 {
                assert!(
                    (matrix[(i, j)] - matrix[(j, i)]).abs() <= 1e-12 * scale,
                    "quadratic form must be symmetric"
                );
            }
        }
        Self {
            matrix,
            phase_angle,
            constant_offset,
        }
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.matrix
    }

    pub fn phase_angle(&self) -> f64 {
        self.phase_angle
    }

    /// `-(Ω_a + Ω_b)/2`, the operator-ordering constant of the quadrature
    /// rewrite (ħ = 1, rad/s units).
    pub fn constant_offset(&self) -> f64 {
        self.constant_offset
    }
}

/// Quadrature form of the Hamiltonian at loop angle `phi`.
///
/// At `φ = 0` the only coupling entry is `x_a`–`x_b` with coefficient `2λ`;
/// general `φ` rotates the `(x_a, p_a)` plane, turning the coupling row into
/// `2λ(cos φ, sin φ)`.
pub fn build_quadratic_form(config: &DetectorConfig, phi: f64) -> QuadraticHamiltonian {
    let (oa, ob, lam) = (
        config.omega_field(),
        config.omega_detector(),
        config.coupling(),
    );
    let mut m = Array2::<f64>::zeros((4, 4));
    m[(0, 0)] = oa;
    m[(1, 1)] = oa;
    m[(2, 2)] = ob;
    m[(3, 3)] = ob;
    let c = 2.0 * lam * phi.cos();
    let s = 2.0 * lam * phi.sin();
    m[(0, 2)] = c;
    m[(2, 0)] = c;
    m[(1, 2)] = s;
    m[(2, 1)] = s;
    QuadraticHamiltonian {
        matrix: m,
        phase_angle: phi,
        constant_offset: -(oa + ob) / 2.0,
    }
}

/// Symplectic form J on `(x_a, p_a, x_b, p_b)`.
fn symplectic_form() -> Array2<f64> {
    let mut j = Array2::<f64>::zeros((4, 4));
    j[(0, 1)] = 1.0;
    j[(1, 0)] = -1.0;
    j[(2, 3)] = 1.0;
    j[(3, 2)] = -1.0;
    j
}

/// Eigenvalues of a symmetric 4×4 matrix (Jacobi sweeps; layout-safe and
/// dependency-free for this size).
fn symmetric_eigenvalues_4(m: &Array2<f64>) -> [f64; 4] {
    let mut a = [[0.0f64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            a[i][j] = m[(i, j)];
        }
    }
    for _ in 0..64 {
        let mut off = 0.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-300 {
            break;
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if a[i][j].abs() < 1e-30 * (a[i][i].abs() + a[j][j].abs()).max(1e-300) {
                    continue;
                }
                let theta = 0.5 * (2.0 * a[i][j]).atan2(a[j][j] - a[i][i]);
                let (c, s) = (theta.cos(), theta.sin());
                for k in 0..4 {
                    let (aik, ajk) = (a[i][k], a[j][k]);
                    a[i][k] = c * aik - s * ajk;
                    a[j][k] = s * aik + c * ajk;
                }
                for k in 0..4 {
                    let (aki, akj) = (a[k][i], a[k][j]);
                    a[k][i] = c * aki - s * akj;
                    a[k][j] = s * aki + c * akj;
                }
            }
        }
    }
    let mut w = [a[0][0], a[1][1], a[2][2], a[3][3]];
    w.sort_by(|x, y| x.partial_cmp(y).unwrap());
    w
}

/// Normal-mode frequencies `(ω_+, ω_-)` with `ω_+ ≥ ω_-`: the symplectic
/// eigenvalues of the form, i.e. the positive imaginary parts of the spectrum
/// of `J·M`. Independent of the loop angle.
pub fn symplectic_spectrum(h: &QuadraticHamiltonian) -> Result<(f64, f64), DiagonalizerError> {
    let w = symmetric_eigenvalues_4(&h.matrix);
    if w[0] <= 0.0 {
        return Err(DiagonalizerError::Unstable {
            min_eigenvalue: w[0],
        });
    }
    let k = symplectic_form().dot(&h.matrix);
    let (eigs, _) = k
        .map(|&x| Complex64::new(x, 0.0))
        .eig()
        .expect("4x4 eigendecomposition");
    let mut pos: Vec<f64> = eigs.iter().filter(|z| z.im > 0.0).map(|z| z.im).collect();
    pos.sort_by(|a, b| b.partial_cmp(a).unwrap());
    debug_assert_eq!(pos.len(), 2);
    Ok((pos[0], pos[1]))
}

/// Fitted normal-mode data: dressed frequencies, the four operator
/// parameters, the reconstruction residual, and whether the phase-formula
/// domain condition `ω̃_a/ω̃_b > e^{2v}` holds.
///
/// Mode labels follow adiabatic continuity from λ = 0 (`ω̃_a` tracks `Ω_a`),
/// tie-broken toward the larger root at resonance, so `ω̃_a ≥ ω̃_b` whenever
/// `Ω_a ≥ Ω_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalModeDecomposition {
    pub omega_a_dressed: f64,
    pub omega_b_dressed: f64,
    pub u: f64,
    pub v: f64,
    pub s: f64,
    pub p: f64,
    pub residual: f64,
    /// `ω̃_a/ω̃_b > e^{2v}`; violations are reported, not silently accepted.
    pub ratio_constraint_ok: bool,
}

impl NormalModeDecomposition {
    /// The identity decomposition of an uncoupled configuration.
    pub fn identity(omega_field: f64, omega_detector: f64) -> Self {
        Self {
            omega_a_dressed: omega_field,
            omega_b_dressed: omega_detector,
            u: 0.0,
            v: 0.0,
            s: 0.0,
            p: 0.0,
            residual: 0.0,
            ratio_constraint_ok: omega_field / omega_detector > 1.0,
        }
    }

    /// `C = ½ ln(ω̃_a/ω̃_b)`.
    pub fn log_frequency_ratio(&self) -> f64 {
        0.5 * (self.omega_a_dressed / self.omega_b_dressed).ln()
    }

    /// Whether all four operator parameters vanish.
    pub fn is_identity(&self) -> bool {
        self.u == 0.0 && self.v == 0.0 && self.s == 0.0 && self.p == 0.0
    }
}

/// Matrix of `U† r U` on `(x_a, p_a, x_b, p_b)` for
/// `U = S_a(u) S_b(v) D_ab(s) Ŝ_b(p)` (the φ rotation excluded).
pub(crate) fn symplectic_transform(u: f64, v: f64, s: f64, p: f64) -> Array2<f64> {
    let (cs, sn) = (s.cos(), s.sin());
    let (eu, ev, ep) = (u.exp(), v.exp(), (2.0 * p).exp());
    let mut a = Array2::<f64>::zeros((4, 4));
    // rows: x_a, p_a, x_b, p_b after conjugation
    a[(0, 0)] = eu * cs;
    a[(0, 2)] = eu * ep * sn;
    a[(1, 1)] = cs / eu;
    a[(1, 3)] = sn / (eu * ep);
    a[(2, 0)] = -sn / ev;
    a[(2, 2)] = ep * cs / ev;
    a[(3, 1)] = -ev * sn;
    a[(3, 3)] = ev * cs / ep;
    a
}

/// Matrix of `R_a(φ)† r R_a(φ)`: a rotation of the `(x_a, p_a)` plane.
pub(crate) fn rotation_transform(phi: f64) -> Array2<f64> {
    let (c, s) = (phi.cos(), phi.sin());
    let mut r = Array2::<f64>::eye(4);
    r[(0, 0)] = c;
    r[(0, 1)] = s;
    r[(1, 0)] = -s;
    r[(1, 1)] = c;
    r
}

fn pullback(theta: &[f64; 6]) -> Array2<f64> {
    let [u, v, s, p, wa, wb] = *theta;
    let a = symplectic_transform(u, v, s, p);
    let m0 = Array2::from_diag(&ndarray::arr1(&[wa, wa, wb, wb]));
    a.t().dot(&m0).dot(&a)
}

/// Residual vector on the six independent entries of the symmetric form.
fn misfit(theta: &[f64; 6], target: &Array2<f64>) -> [f64; 6] {
    let m = pullback(theta);
    [
        m[(0, 0)] - target[(0, 0)],
        m[(1, 1)] - target[(1, 1)],
        m[(2, 2)] - target[(2, 2)],
        m[(3, 3)] - target[(3, 3)],
        m[(0, 2)] - target[(0, 2)],
        m[(1, 3)] - target[(1, 3)],
    ]
}

fn norm2(f: &[f64; 6]) -> f64 {
    f.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Solve the 6×6 system `J x = b` by Gaussian elimination with partial
/// pivoting. Returns None on a (numerically) singular Jacobian.
fn solve6(mut j: [[f64; 6]; 6], mut b: [f64; 6]) -> Option<[f64; 6]> {
    for col in 0..6 {
        let mut piv = col;
        for row in (col + 1)..6 {
            if j[row][col].abs() > j[piv][col].abs() {
                piv = row;
            }
        }
        if j[piv][col].abs() < 1e-300 {
            return None;
        }
        j.swap(col, piv);
        b.swap(col, piv);
        for row in (col + 1)..6 {
            let f = j[row][col] / j[col][col];
            for k in col..6 {
                j[row][k] -= f * j[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0f64; 6];
    for col in (0..6).rev() {
        let mut acc = b[col];
        for k in (col + 1)..6 {
            acc -= j[col][k] * x[k];
        }
        x[col] = acc / j[col][col];
    }
    Some(x)
}

/// Recovers `(u, v, s, p, ω̃_a, ω̃_b)` for a stable configuration by damped
/// Newton iteration on the symplectic representation, seeded from first-order
/// perturbation theory (degenerate-theory mixing angle for `s`, the
/// independently computed symplectic spectrum for the frequencies).
pub fn fit_decomposition(
    config: &DetectorConfig,
) -> Result<NormalModeDecomposition, DiagonalizerError> {
    let (oa, ob, lam) = (
        config.omega_field(),
        config.omega_detector(),
        config.coupling(),
    );
    if lam == 0.0 {
        return Ok(NormalModeDecomposition::identity(oa, ob));
    }

    // Work in units of Ω_a.
    let scale = oa;
    let (oa_h, ob_h, lam_h) = (1.0, ob / scale, lam / scale);
    let cfg_h = DetectorConfig::new(oa_h, ob_h, lam_h).expect("rescaled config stays valid");
    let target = build_quadratic_form(&cfg_h, 0.0);

    let (w_plus, w_minus) = symplectic_spectrum(&target)?;
    // continuity: mode a tracks Ω_a; larger root at resonance
    let (wa0, wb0) = if oa_h >= ob_h {
        (w_plus, w_minus)
    } else {
        (w_minus, w_plus)
    };
    // degenerate-perturbation-theory mixing angle, on the continuity branch
    let sigma = if wa0 >= wb0 { 1.0 } else { -1.0 };
    let s0 = 0.5
        * (sigma * 4.0 * lam_h * (oa_h * ob_h).sqrt()).atan2(sigma * (oa_h * oa_h - ob_h * ob_h));
    let mut theta = [0.0, 0.0, s0, 0.0, wa0, wb0];

    let target_m = target.matrix();
    let target_norm = target_m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut f = misfit(&theta, target_m);
    let mut best = (theta, norm2(&f));

    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        let fnorm = norm2(&f);
        if fnorm < 1e-14 * target_norm {
            break;
        }
        iterations += 1;

        // central-difference Jacobian
        let mut jac = [[0.0f64; 6]; 6];
        for (col, jcol) in (0..6).map(|c| (c, c)) {
            let h = 1e-7 * theta[col].abs().max(1.0);
            let mut tp = theta;
            tp[col] += h;
            let mut tm = theta;
            tm[col] -= h;
            let (fp, fm) = (misfit(&tp, target_m), misfit(&tm, target_m));
            for row in 0..6 {
                jac[row][jcol] = (fp[row] - fm[row]) / (2.0 * h);
            }
        }
        let neg_f = {
            let mut b = [0.0f64; 6];
            for i in 0..6 {
                b[i] = -f[i];
            }
            b
        };
        let Some(step) = solve6(jac, neg_f) else {
            break;
        };

        // damped update
        let mut factor = 1.0;
        let mut advanced = false;
        for _ in 0..40 {
            let mut trial = theta;
            for i in 0..6 {
                trial[i] += factor * step[i];
            }
            if trial[4] > 0.0 && trial[5] > 0.0 {
                let ft = misfit(&trial, target_m);
                if norm2(&ft) < fnorm {
                    theta = trial;
                    f = ft;
                    advanced = true;
                    break;
                }
            }
            factor *= 0.5;
        }
        if !advanced {
            break;
        }
        if norm2(&f) < best.1 {
            best = (theta, norm2(&f));
        }
    }

    let theta = if norm2(&f) <= best.1 { theta } else { best.0 };
    let decomposition = NormalModeDecomposition {
        omega_a_dressed: theta[4] * scale,
        omega_b_dressed: theta[5] * scale,
        u: theta[0],
        v: theta[1],
        s: theta[2],
        p: theta[3],
        residual: 0.0,
        ratio_constraint_ok: false,
    };
    let residual = reconstruct_residual(&decomposition, &build_quadratic_form(config, 0.0));
    if residual > RESIDUAL_TOLERANCE {
        return Err(DiagonalizerError::NonConvergence {
            iterations,
            best_residual: residual,
        });
    }
    let ratio_ok = decomposition.omega_a_dressed / decomposition.omega_b_dressed
        > (2.0 * decomposition.v).exp();
    Ok(NormalModeDecomposition {
        residual,
        ratio_constraint_ok: ratio_ok,
        ..decomposition
    })
}

/// Frobenius-relative error between the decomposition-implied quadratic form,
/// rotated to `h`'s loop angle, and `h` itself.
pub fn reconstruct_residual(d: &NormalModeDecomposition, h: &QuadraticHamiltonian) -> f64 {
    let a = symplectic_transform(d.u, d.v, d.s, d.p).dot(&rotation_transform(h.phase_angle()));
    let m0 = Array2::from_diag(&ndarray::arr1(&[
        d.omega_a_dressed,
        d.omega_b_dressed,
    ]
    .iter()
    .flat_map(|&w| [w, w])
    .collect::<Vec<_>>()));
    let m_fit = a.t().dot(&m0).dot(&a);
    let diff = &m_fit - h.matrix();
    let num = diff.iter().map(|x| x * x).sum::<f64>().sqrt();
    let den = h.matrix().iter().map(|x| x * x).sum::<f64>().sqrt();
    num / den
}
