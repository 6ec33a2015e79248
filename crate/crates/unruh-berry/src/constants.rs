//! Physical constants and unit conventions.
//!
//! All frequencies in this crate are angular (rad/s). A detector described as
//! "2.0 GHz" in the microwave regime enters as `Ω = 2.0e9 rad/s`, so one cycle
//! of the field-operator phase takes `2π/Ω ≈ 3.14 ns`.

/// CODATA values of the constants entering kinematics and the Unruh
/// temperature `T_U = ħa/(2πck_B)`.
///
/// The fields are fixed at construction; there is deliberately no way to
/// build this type with other values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    hbar: f64,
    c: f64,
    k_b: f64,
}

impl PhysicalConstants {
    /// Reduced Planck constant ħ = h/2π with h exact since the 2019 SI.
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Speed of light in vacuum (exact).
    pub const C: f64 = 2.997_924_58e8;
    /// Boltzmann constant (exact).
    pub const K_B: f64 = 1.380_649e-23;

    pub const fn codata() -> Self {
        Self {
            hbar: Self::HBAR,
            c: Self::C,
            k_b: Self::K_B,
        }
    }

    /// ħ in J·s.
    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// c in m/s.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// k_B in J/K.
    pub fn k_b(&self) -> f64 {
        self.k_b
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_strictly_positive() {
        let k = PhysicalConstants::codata();
        assert!(k.hbar() > 0.0);
        assert!(k.c() > 0.0);
        assert!(k.k_b() > 0.0);
    }

    #[test]
    fn hbar_is_h_over_2pi() {
        let h = 6.626_070_15e-34; // exact SI
        let k = PhysicalConstants::codata();
        assert!((k.hbar() - h / (2.0 * std::f64::consts::PI)).abs() / k.hbar() < 1e-9);
    }
}
