//! Cross-validation of the numerically fitted decomposition against an
//! independently derived closed-form solution of the same fit equations.
//!
//! The closed forms below were obtained by solving the symplectic pullback
//! equations by hand; they never enter the library. Agreement between the
//! two routes pins the fit, and the inverse map pins the claim that only
//! three parameters are independent.

use unruh_berry::detector::DetectorConfig;
use unruh_berry::diagonalizer::{
    build_quadratic_form, fit_decomposition, reconstruct_residual, symplectic_spectrum,
};

/// Hand-derived solution:
///   ω_{a,b}² = ((Ω_a²+Ω_b²) ± √((Ω_a²−Ω_b²)² + 16λ²Ω_aΩ_b))/2
///   u = ½ln(ω_a/Ω_a),  v = ½ln(Ω_a/ω_b),  p = ¼ln(Ω_a/Ω_b)
///   tan 2s = 4λ√(Ω_aΩ_b)/(Ω_a²−Ω_b²)  on the mode-a continuity branch
fn closed_form(oa: f64, ob: f64, lam: f64) -> (f64, f64, f64, f64, f64, f64) {
    let disc = ((oa * oa - ob * ob).powi(2) + 16.0 * lam * lam * oa * ob).sqrt();
    let hi = (0.5 * (oa * oa + ob * ob + disc)).sqrt();
    let lo = (0.5 * (oa * oa + ob * ob - disc)).sqrt();
    let (wa, wb) = if oa >= ob { (hi, lo) } else { (lo, hi) };
    let u = 0.5 * (wa / oa).ln();
    let v = 0.5 * (oa / wb).ln();
    let p = 0.25 * (oa / ob).ln();
    let sigma = if wa >= wb { 1.0 } else { -1.0 };
    let s = 0.5
        * (sigma * 4.0 * lam * (oa * ob).sqrt()).atan2(sigma * (oa * oa - ob * ob));
    (wa, wb, u, v, s, p)
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-9 * scale.abs().max(1.0) + 1e-12
}

#[test]
fn fit_matches_closed_form_across_regimes() {
    for (oa, ob, lam) in [
        (2.0e9, 2.0e9, 250.0),
        (2.0e9, 2.0e9, 34.0),
        (2.0, 1.0, 0.35),
        (2.0, 1.3, 0.05),
        (1.0, 2.0, 0.1),
        (5.0e5, 3.0e5, 20.0),
    ] {
        let config = DetectorConfig::new(oa, ob, lam).unwrap();
        let d = fit_decomposition(&config).unwrap();
        let (wa, wb, u, v, s, p) = closed_form(oa, ob, lam);
        assert!(close(d.omega_a_dressed, wa, wa), "wa at ({oa},{ob},{lam})");
        assert!(close(d.omega_b_dressed, wb, wb), "wb at ({oa},{ob},{lam})");
        assert!(close(d.u, u, 1.0), "u: {} vs {u} at ({oa},{ob},{lam})", d.u);
        assert!(close(d.v, v, 1.0), "v: {} vs {v} at ({oa},{ob},{lam})", d.v);
        assert!(close(d.s, s, 1.0), "s: {} vs {s} at ({oa},{ob},{lam})", d.s);
        assert!(close(d.p, p, 1.0), "p: {} vs {p} at ({oa},{ob},{lam})", d.p);
    }
}

#[test]
fn only_three_parameters_are_independent() {
    // (u, s, p) are functions of (v, ω̃_a, ω̃_b) alone:
    //   u = C − v
    //   Ω_a' = ω̃_b e^{2v},   Ω_b' = √(ω̃_a² + ω̃_b² − Ω_a'²)
    //   p = ¼ ln(Ω_a'/Ω_b'),  cos 2s = (Ω_a'² − Ω_b'²)/(ω̃_a² − ω̃_b²)
    for (oa, ob, lam) in [(2.0, 1.0, 0.35), (2.0, 1.3, 0.05), (3.0, 2.2, 0.4)] {
        let config = DetectorConfig::new(oa, ob, lam).unwrap();
        let d = fit_decomposition(&config).unwrap();
        let c = d.log_frequency_ratio();
        assert!((d.u - (c - d.v)).abs() < 1e-10, "u ≠ C − v at ({oa},{ob},{lam})");

        let (wa, wb) = (d.omega_a_dressed, d.omega_b_dressed);
        let oa_rec = wb * (2.0 * d.v).exp();
        let ob_rec = (wa * wa + wb * wb - oa_rec * oa_rec).sqrt();
        assert!((oa_rec - oa).abs() / oa < 1e-9);
        assert!((ob_rec - ob).abs() / ob < 1e-9);
        let p_rec = 0.25 * (oa_rec / ob_rec).ln();
        assert!((d.p - p_rec).abs() < 1e-10);
        let cos2s = (oa_rec * oa_rec - ob_rec * ob_rec) / (wa * wa - wb * wb);
        assert!(((2.0 * d.s).cos() - cos2s).abs() < 1e-9);
    }
}

#[test]
fn fit_self_consistency_with_spectrum_and_residual() {
    // dressed frequencies agree with the independent symplectic spectrum and
    // the reconstruction is tight at every loop angle
    let config = DetectorConfig::new(2.0e9, 2.0e9, 250.0).unwrap();
    let d = fit_decomposition(&config).unwrap();
    let (hi, lo) = symplectic_spectrum(&build_quadratic_form(&config, 0.0)).unwrap();
    assert!((d.omega_a_dressed - hi).abs() / hi < 1e-6);
    assert!((d.omega_b_dressed - lo).abs() / lo < 1e-6);
    assert!(d.residual < 1e-10);
    for phi in [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0] {
        let h = build_quadratic_form(&config, phi);
        assert!(reconstruct_residual(&d, &h) < 1e-10);
    }
}

#[test]
fn dressed_frequencies_straddle_bare_ones_at_resonance() {
    let config = DetectorConfig::new(2.0e9, 2.0e9, 100.0).unwrap();
    let d = fit_decomposition(&config).unwrap();
    assert!(d.omega_a_dressed > 2.0e9);
    assert!(d.omega_b_dressed < 2.0e9);
    // splitting ≈ 2λ
    let split = d.omega_a_dressed - d.omega_b_dressed;
    assert!((split - 200.0).abs() < 1e-3 * 200.0);
}
