//! Dense Hermitian eigensolves via LAPACK `zheevr`.
//!
//! Only the lowest part of the spectrum is ever needed (ground and low
//! branches), and `zheevr` with an index range skips the back-transformation
//! of the unwanted eigenvectors, which dominates the cost of a full solve.
//!
//! Layout note: an ndarray in standard (row-major) layout reinterpreted
//! column-major is the transpose, which for a Hermitian matrix is its complex
//! conjugate. Eigenvalues are unaffected; computed eigenvectors are the
//! conjugates of the true ones and are conjugated back before returning.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use std::os::raw::c_char;

use super::OracleError;

extern "C" {
    fn zheevr_(
        jobz: *const c_char,
        range: *const c_char,
        uplo: *const c_char,
        n: *const i32,
        a: *mut Complex64,
        lda: *const i32,
        vl: *const f64,
        vu: *const f64,
        il: *const i32,
        iu: *const i32,
        abstol: *const f64,
        m: *mut i32,
        w: *mut f64,
        z: *mut Complex64,
        ldz: *const i32,
        isuppz: *mut i32,
        work: *mut Complex64,
        lwork: *const i32,
        rwork: *mut f64,
        lrwork: *const i32,
        iwork: *mut i32,
        liwork: *const i32,
        info: *mut i32,
    );
}

/// Lowest `count` eigenpairs of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen_lowest(
    h: &Array2<Complex64>,
    count: usize,
) -> Result<(Vec<f64>, Vec<Array1<Complex64>>), OracleError> {
    let n = h.nrows();
    assert_eq!(h.ncols(), n, "matrix must be square");
    let count = count.min(n).max(1);

    let mut a: Vec<Complex64> = h.iter().cloned().collect();
    let nn = n as i32;
    let jobz = b'V' as c_char;
    let range = if count == n { b'A' } else { b'I' } as c_char;
    let uplo = b'L' as c_char;
    let (vl, vu) = (0.0f64, 0.0f64);
    let (il, iu) = (1i32, count as i32);
    let abstol = 0.0f64; // default tolerance
    let mut m_found = 0i32;
    let mut w = vec![0.0f64; n];
    let mut z = vec![Complex64::new(0.0, 0.0); n * count];
    let mut isuppz = vec![0i32; 2 * n.max(1)];
    let mut info = 0i32;

    // workspace query
    let mut work_q = [Complex64::new(0.0, 0.0)];
    let mut rwork_q = [0.0f64];
    let mut iwork_q = [0i32];
    let query = -1i32;
    unsafe {
        zheevr_(
            &jobz, &range, &uplo, &nn, a.as_mut_ptr(), &nn, &vl, &vu, &il, &iu, &abstol,
            &mut m_found, w.as_mut_ptr(), z.as_mut_ptr(), &nn, isuppz.as_mut_ptr(),
            work_q.as_mut_ptr(), &query, rwork_q.as_mut_ptr(), &query,
            iwork_q.as_mut_ptr(), &query, &mut info,
        );
    }
    if info != 0 {
        return Err(OracleError::Eigensolver { info });
    }
    let lwork = work_q[0].re as i32;
    let lrwork = rwork_q[0] as i32;
    let liwork = iwork_q[0];
    let mut work = vec![Complex64::new(0.0, 0.0); lwork.max(1) as usize];
    let mut rwork = vec![0.0f64; lrwork.max(1) as usize];
    let mut iwork = vec![0i32; liwork.max(1) as usize];

    unsafe {
        zheevr_(
            &jobz, &range, &uplo, &nn, a.as_mut_ptr(), &nn, &vl, &vu, &il, &iu, &abstol,
            &mut m_found, w.as_mut_ptr(), z.as_mut_ptr(), &nn, isuppz.as_mut_ptr(),
            work.as_mut_ptr(), &lwork, rwork.as_mut_ptr(), &lrwork,
            iwork.as_mut_ptr(), &liwork, &mut info,
        );
    }
    if info != 0 {
        return Err(OracleError::Eigensolver { info });
    }
    if m_found != count as i32 {
        return Err(OracleError::Eigensolver { info: -1 });
    }

    let vectors = (0..count)
        .map(|j| {
            Array1::from_iter(z[j * n..(j + 1) * n].iter().map(|c| c.conj()))
        })
        .collect();
    Ok((w[..count].to_vec(), vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn two_level_eigenpairs() {
        // σ_x: eigenvalues ∓1, eigenvectors (1, ∓1)/√2
        let h = array![
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
        ];
        let (w, v) = hermitian_eigen_lowest(&h, 2).unwrap();
        assert!((w[0] + 1.0).abs() < 1e-14);
        assert!((w[1] - 1.0).abs() < 1e-14);
        assert!((v[0][0].norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn complex_entries_eigenvector_residual() {
        // residual check catches any layout/conjugation mistake
        let h = array![
            [Complex64::new(1.0, 0.0), Complex64::new(0.2, 0.5), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.2, -0.5), Complex64::new(2.0, 0.0), Complex64::new(0.1, -0.3)],
            [Complex64::new(0.0, 0.0), Complex64::new(0.1, 0.3), Complex64::new(3.0, 0.0)]
        ];
        let (w, v) = hermitian_eigen_lowest(&h, 3).unwrap();
        for j in 0..3 {
            let hv = h.dot(&v[j]);
            let res: f64 = hv
                .iter()
                .zip(v[j].iter())
                .map(|(a, b)| (a - b * w[j]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-13, "residual {res:e} for eigenpair {j}");
        }
        assert!(w[0] <= w[1] && w[1] <= w[2]);
    }

    #[test]
    fn subset_matches_full() {
        let n = 12;
        let mut h = Array2::<Complex64>::zeros((n, n));
        for i in 0..n {
            h[(i, i)] = Complex64::new(i as f64 * 0.7, 0.0);
            if i + 1 < n {
                h[(i, i + 1)] = Complex64::new(0.2, 0.05);
                h[(i + 1, i)] = Complex64::new(0.2, -0.05);
            }
        }
        let (w_full, _) = hermitian_eigen_lowest(&h, n).unwrap();
        let (w_sub, v_sub) = hermitian_eigen_lowest(&h, 4).unwrap();
        for j in 0..4 {
            assert!((w_full[j] - w_sub[j]).abs() < 1e-12);
            let norm: f64 = v_sub[j].iter().map(|c| c.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }
}
