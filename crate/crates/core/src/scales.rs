//! Physical constants and the dimensionless parameterization of the
//! plate system.
//!
//! Public inputs are SI. Inside the Lifshitz machinery every frequency is
//! measured in units of the characteristic frequency `ω_c = c / 2a` and
//! every temperature in units of `T_eff = ħ ω_c / k_B`.

use std::f64::consts::PI;

use crate::error::{invalid, Result};

/// Boltzmann constant (J/K), exact SI value.
pub const K_B: f64 = 1.380_649e-23;
/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum (m/s), exact.
pub const C: f64 = 299_792_458.0;

/// ζ(2) = π²/6.
pub const ZETA2: f64 = PI * PI / 6.0;
/// ζ(3), Apéry's constant.
pub const ZETA3: f64 = 1.202_056_903_159_594_3;
/// ζ(4) = π⁴/90.
pub const ZETA4: f64 = PI * PI * PI * PI / 90.0;
/// ζ(5).
pub const ZETA5: f64 = 1.036_927_755_143_369_9;
/// ζ'(3), the derivative of the Riemann zeta function at 3.
pub const ZETA3_PRIME: f64 = -0.198_126_242_885_636_85;

/// The constant set used by every computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub k_b: f64,
    pub hbar: f64,
    pub c: f64,
    pub zeta2: f64,
    pub zeta3: f64,
    pub zeta5: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        k_b: K_B,
        hbar: HBAR,
        c: C,
        zeta2: ZETA2,
        zeta3: ZETA3,
        zeta5: ZETA5,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA
    }
}

/// Two plates at separation `a` (m) and temperature `T` (K).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateSystem {
    a: f64,
    temperature: f64,
    omega_c: f64,
    t_eff: f64,
}

impl PlateSystem {
    pub fn new(a: f64, temperature: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return invalid(format!("separation must be positive, got {a}"));
        }
        if !(temperature.is_finite() && temperature >= 0.0) {
            return invalid(format!("temperature must be non-negative, got {temperature}"));
        }
        let omega_c = C / (2.0 * a);
        Ok(Self {
            a,
            temperature,
            omega_c,
            t_eff: HBAR * omega_c / K_B,
        })
    }

    /// Separation (m).
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Temperature (K).
    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// Characteristic frequency `c / 2a` (rad/s).
    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    /// Effective temperature with `k_B T_eff = ħ c / 2a` (K).
    pub fn t_eff(&self) -> f64 {
        self.t_eff
    }

    /// `T / T_eff`.
    pub fn tau(&self) -> f64 {
        self.temperature / self.t_eff
    }

    /// Same separation, different temperature.
    pub fn with_temperature(&self, temperature: f64) -> Result<Self> {
        Self::new(self.a, temperature)
    }

    /// Matsubara frequency `ξ_l = 2π k_B T l / ħ` (rad/s).
    pub fn xi(&self, l: u64) -> f64 {
        2.0 * PI * K_B * self.temperature * l as f64 / HBAR
    }

    /// Dimensionless Matsubara frequency `ζ_l = ξ_l / ω_c = 2π l T / T_eff`.
    pub fn zeta(&self, l: u64) -> f64 {
        2.0 * PI * l as f64 * self.tau()
    }

    /// Spacing between consecutive dimensionless Matsubara frequencies.
    pub fn zeta_step(&self) -> f64 {
        2.0 * PI * self.tau()
    }
}

/// `ζ_l` for the given system.
pub fn zeta_l(sys: &PlateSystem, l: u64) -> f64 {
    sys.zeta(l)
}

/// Plasma-frequency derived scales of a metal at a given separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetalScales {
    /// Plasma frequency (rad/s).
    pub omega_p: f64,
    /// `ω_p / ω_c`.
    pub omega_p_tilde: f64,
    /// `1 / ω̃_p = λ_p / (4π a)`.
    pub alpha: f64,
    /// Plasma wavelength `2π c / ω_p` (m).
    pub lambda_p: f64,
    /// Skin depth `λ_p / 2π = c / ω_p` (m).
    pub delta0: f64,
}

impl MetalScales {
    pub fn new(omega_p: f64, sys: &PlateSystem) -> Result<Self> {
        if !(omega_p.is_finite() && omega_p > 0.0) {
            return invalid(format!("plasma frequency must be positive, got {omega_p}"));
        }
        let omega_p_tilde = omega_p / sys.omega_c();
        Ok(Self {
            omega_p,
            omega_p_tilde,
            alpha: 1.0 / omega_p_tilde,
            lambda_p: 2.0 * PI * C / omega_p,
            delta0: C / omega_p,
        })
    }

    /// `δ0 / a`, equal to `2α`.
    pub fn delta0_over_a(&self) -> f64 {
        2.0 * self.alpha
    }
}

pub fn make_plate_system(a: f64, temperature: f64) -> Result<PlateSystem> {
    PlateSystem::new(a, temperature)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta_series(s: i32) -> f64 {
        // sum small terms first
        (1..=1_000_000u64).rev().map(|k| (k as f64).powi(-s)).sum()
    }

    #[test]
    fn zeta_constants_match_series() {
        assert!((ZETA2 - PI * PI / 6.0).abs() < 1e-15);
        // truncated tail of Σ k^-3 beyond 1e6 is ~5e-13
        let z3 = zeta_series(3) + 0.5e-12;
        assert!((z3 - ZETA3).abs() / ZETA3 < 1e-12, "{z3}");
        let z5 = zeta_series(5);
        assert!((z5 - ZETA5).abs() / ZETA5 < 1e-12, "{z5}");
    }

    #[test]
    fn characteristic_scales_at_one_micron() {
        let sys = PlateSystem::new(1e-6, 300.0).unwrap();
        assert!((sys.omega_c() - 1.4990e14).abs() / 1.4990e14 < 1e-4);
        assert!((sys.t_eff() - 1145.0).abs() < 1.0, "{}", sys.t_eff());
        assert_eq!(sys.zeta(0), 0.0);
        let xi1 = sys.xi(1);
        assert!((xi1 - 2.46e14).abs() / 2.46e14 < 5e-3);
        assert!((sys.zeta(1) - 1.645).abs() < 2e-3, "{}", sys.zeta(1));
        assert!((sys.zeta(1) - xi1 / sys.omega_c()).abs() < 1e-12);
    }

    #[test]
    fn zeta_is_linear_in_l() {
        let sys = PlateSystem::new(0.7e-6, 42.0).unwrap();
        for l in [1u64, 3, 17, 1000] {
            assert_eq!(sys.zeta(2 * l), 2.0 * sys.zeta(l));
        }
    }

    #[test]
    fn doubling_separation_halves_scales() {
        let s1 = PlateSystem::new(1e-6, 10.0).unwrap();
        let s2 = PlateSystem::new(2e-6, 10.0).unwrap();
        assert!((s2.omega_c() * 2.0 - s1.omega_c()).abs() / s1.omega_c() < 1e-15);
        assert!((s2.t_eff() * 2.0 - s1.t_eff()).abs() / s1.t_eff() < 1e-15);
    }

    #[test]
    fn metal_scales_relations() {
        let sys = PlateSystem::new(1e-6, 300.0).unwrap();
        let m = MetalScales::new(1.37e16, &sys).unwrap();
        assert!((m.alpha * m.omega_p_tilde - 1.0).abs() < 1e-15);
        assert!((m.delta0 / sys.a() - m.delta0_over_a()).abs() < 1e-15);
        assert!((m.lambda_p / (4.0 * PI * sys.a()) - m.alpha).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(PlateSystem::new(0.0, 1.0).is_err());
        assert!(PlateSystem::new(-1e-6, 1.0).is_err());
        assert!(PlateSystem::new(1e-6, -1.0).is_err());
        assert!(PlateSystem::new(1e-6, 0.0).is_ok());
    }
}
