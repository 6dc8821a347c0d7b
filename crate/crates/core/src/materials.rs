//! Permittivity along the imaginary frequency axis and the temperature
//! dependence of the Drude relaxation parameter.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::quadrature;
use crate::scales::{HBAR, K_B};

/// Reference values for gold.
pub mod gold {
    /// Plasma frequency (rad/s).
    pub const OMEGA_P: f64 = 1.37e16;
    /// Debye temperature (K).
    pub const DEBYE_TEMPERATURE: f64 = 165.0;
    /// Relaxation parameter at room temperature (rad/s).
    pub const GAMMA_300K: f64 = 5.32e13;
    /// `γ(10 K) / ξ_1(10 K)`.
    pub const GAMMA_OVER_XI1_10K: f64 = 1.8e-3;
    /// Residual relaxation from impurities for a resistivity ratio of 10⁶ (rad/s).
    pub const GAMMA_RESIDUAL_IMPURE: f64 = 5.32e7;
}

/// `ξ_1(T) = 2π k_B T / ħ`.
pub fn first_matsubara_frequency(temperature: f64) -> f64 {
    2.0 * PI * K_B * temperature / HBAR
}

/// Temperature dependence of the relaxation parameter γ(T).
#[derive(Debug, Clone, PartialEq)]
pub enum RelaxationModel {
    /// γ independent of temperature (rad/s).
    Constant { gamma: f64 },
    /// γ = γ0 T², with γ0 in rad/(s·K²).
    QuadraticLaw { gamma0: f64 },
    /// Residual + electron-electron (T²) + Bloch–Grüneisen electron-phonon.
    Composite {
        gamma_res: f64,
        a_ee: f64,
        bg_amplitude: f64,
        debye_temperature: f64,
    },
    /// Measured (T, γ) nodes, sorted by T, γ > 0. Interpolated linearly in T
    /// and logarithmically in γ, clamped outside the node range.
    Table { nodes: Vec<(f64, f64)> },
}

impl RelaxationModel {
    /// Composite model for gold calibrated to γ(300 K) and γ(10 K)/ξ_1(10 K),
    /// no residual term.
    pub fn gold() -> Self {
        Self::gold_with_residual(0.0)
    }

    /// Composite gold model with a residual (impurity) relaxation term.
    pub fn gold_with_residual(gamma_res: f64) -> Self {
        Self::calibrated_composite(
            gamma_res,
            gold::DEBYE_TEMPERATURE,
            (300.0, gold::GAMMA_300K),
            (10.0, gold::GAMMA_OVER_XI1_10K * first_matsubara_frequency(10.0)),
        )
        .expect("gold anchors are consistent")
    }

    /// γ = γ0 T² for gold, matching the composite model's 10 K anchor.
    pub fn gold_quadratic() -> Self {
        RelaxationModel::QuadraticLaw {
            gamma0: gold_gamma0(),
        }
    }

    /// Solves for the T² and Bloch–Grüneisen amplitudes so that γ passes
    /// through both `(T, γ)` anchors.
    pub fn calibrated_composite(
        gamma_res: f64,
        debye_temperature: f64,
        high: (f64, f64),
        low: (f64, f64),
    ) -> Result<Self> {
        if !(debye_temperature > 0.0) || gamma_res < 0.0 {
            return invalid("composite model needs T_D > 0 and γ_res ≥ 0");
        }
        let bg_h = bloch_gruneisen(high.0 / debye_temperature);
        let bg_l = bloch_gruneisen(low.0 / debye_temperature);
        let (t2_h, t2_l) = (high.0 * high.0, low.0 * low.0);
        let (g_h, g_l) = (high.1 - gamma_res, low.1 - gamma_res);
        let det = bg_h * t2_l - bg_l * t2_h;
        if det == 0.0 {
            return invalid("degenerate calibration anchors");
        }
        let bg_amplitude = (g_h * t2_l - g_l * t2_h) / det;
        let a_ee = (bg_h * g_l - bg_l * g_h) / det;
        if !(bg_amplitude >= 0.0 && a_ee >= 0.0) {
            return invalid(format!(
                "calibration gives negative amplitudes (A_ee = {a_ee}, BG = {bg_amplitude})"
            ));
        }
        Ok(RelaxationModel::Composite {
            gamma_res,
            a_ee,
            bg_amplitude,
            debye_temperature,
        })
    }

    pub fn table(mut nodes: Vec<(f64, f64)>) -> Result<Self> {
        if nodes.is_empty() {
            return invalid("relaxation table is empty");
        }
        if nodes.iter().any(|&(t, g)| !(t >= 0.0 && g > 0.0 && g.is_finite())) {
            return invalid("relaxation table needs T ≥ 0 and finite γ > 0");
        }
        nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
        if nodes.windows(2).any(|w| w[0].0 == w[1].0) {
            return invalid("relaxation table has duplicate temperatures");
        }
        Ok(RelaxationModel::Table { nodes })
    }

    /// γ(T) in rad/s.
    pub fn gamma(&self, temperature: f64) -> Result<f64> {
        if !(temperature >= 0.0) {
            return invalid(format!("temperature must be non-negative, got {temperature}"));
        }
        let t = temperature;
        Ok(match self {
            RelaxationModel::Constant { gamma } => *gamma,
            RelaxationModel::QuadraticLaw { gamma0 } => gamma0 * t * t,
            RelaxationModel::Composite {
                gamma_res,
                a_ee,
                bg_amplitude,
                debye_temperature,
            } => gamma_res + a_ee * t * t + bg_amplitude * bloch_gruneisen(t / debye_temperature),
            RelaxationModel::Table { nodes } => table_lookup(nodes, t),
        })
    }
}

/// γ0 of the quadratic law calibrated to the gold 10 K anchor.
pub fn gold_gamma0() -> f64 {
    gold::GAMMA_OVER_XI1_10K * first_matsubara_frequency(10.0) / 100.0
}

pub fn gamma_of_t(model: &RelaxationModel, temperature: f64) -> Result<f64> {
    model.gamma(temperature)
}

fn table_lookup(nodes: &[(f64, f64)], t: f64) -> f64 {
    let first = nodes[0];
    let last = nodes[nodes.len() - 1];
    if t <= first.0 {
        return first.1;
    }
    if t >= last.0 {
        return last.1;
    }
    let i = nodes.partition_point(|n| n.0 <= t);
    let (t0, g0) = nodes[i - 1];
    let (t1, g1) = nodes[i];
    let w = (t - t0) / (t1 - t0);
    (g0.ln() * (1.0 - w) + g1.ln() * w).exp()
}

/// `J5(z) = ∫₀^z u⁵ eᵘ/(eᵘ−1)² du`; `J5(∞) = 5!·ζ(5)`.
pub fn bloch_gruneisen_integral(z: f64) -> f64 {
    if z <= 0.0 {
        return 0.0;
    }
    // beyond u ≈ 200 the integrand is below 1e-75
    let upper = z.min(200.0);
    let f = |u: f64| {
        let s = (0.5 * u).sinh();
        u.powi(5) / (4.0 * s * s)
    };
    let mut points = vec![0.0];
    for p in [2.0, 5.0, 10.0, 20.0, 40.0, 80.0] {
        if p < upper {
            points.push(p);
        }
    }
    points.push(upper);
    quadrature::integrate(f, &points, 1e-13, 0.0, 200).value
}

/// Reduced Bloch–Grüneisen function `B(x) = x⁵ J5(1/x)`, `x = T / T_D`.
/// Behaves as `124.4 x⁵` for x ≪ 1 and `x/4` for x ≫ 1.
pub fn bloch_gruneisen(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    x.powi(5) * bloch_gruneisen_integral(1.0 / x)
}

/// One Debye rotational relaxation term `C / (1 + ξ/ω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DebyeTerm {
    pub strength: f64,
    pub frequency: f64,
}

/// Dielectric response ε(iξ).
#[derive(Debug, Clone, PartialEq)]
pub enum PermittivityModel {
    Drude {
        omega_p: f64,
        relaxation: RelaxationModel,
    },
    Plasma {
        omega_p: f64,
    },
    ConstantEps {
        eps: f64,
    },
    PolarDebye {
        terms: Vec<DebyeTerm>,
    },
}

impl PermittivityModel {
    pub fn gold_drude() -> Self {
        PermittivityModel::Drude {
            omega_p: gold::OMEGA_P,
            relaxation: RelaxationModel::gold(),
        }
    }

    pub fn gold_plasma() -> Self {
        PermittivityModel::Plasma {
            omega_p: gold::OMEGA_P,
        }
    }

    /// Two-term polar dielectric with ε(0) = 100 and ε ≈ 7 in the infrared.
    pub fn polar_dielectric() -> Self {
        PermittivityModel::PolarDebye {
            terms: vec![
                DebyeTerm {
                    strength: 93.0,
                    frequency: 1e7,
                },
                DebyeTerm {
                    strength: 6.0,
                    frequency: 1e16,
                },
            ],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            PermittivityModel::Drude { omega_p, relaxation } => {
                check_omega_p(*omega_p)?;
                match relaxation {
                    RelaxationModel::Table { nodes } => {
                        RelaxationModel::table(nodes.clone())?;
                    }
                    RelaxationModel::Constant { gamma: g } | RelaxationModel::QuadraticLaw { gamma0: g } => {
                        if !(g.is_finite() && *g >= 0.0) {
                            return invalid("relaxation parameter must be finite and non-negative");
                        }
                    }
                    RelaxationModel::Composite { gamma_res, a_ee, bg_amplitude, debye_temperature } => {
                        if [*gamma_res, *a_ee, *bg_amplitude].iter().any(|v| !(v.is_finite() && *v >= 0.0))
                            || !(*debye_temperature > 0.0)
                        {
                            return invalid("composite relaxation needs non-negative amplitudes and T_D > 0");
                        }
                    }
                }
                Ok(())
            }
            PermittivityModel::Plasma { omega_p } => check_omega_p(*omega_p),
            PermittivityModel::ConstantEps { eps } => {
                if !(eps.is_finite() && *eps >= 1.0) {
                    return invalid(format!("constant permittivity must be finite and ≥ 1, got {eps}"));
                }
                Ok(())
            }
            PermittivityModel::PolarDebye { terms } => {
                if terms
                    .iter()
                    .any(|t| !(t.strength >= 0.0 && t.frequency > 0.0 && t.strength.is_finite()))
                {
                    return invalid("Debye terms need C ≥ 0 and ω > 0");
                }
                Ok(())
            }
        }
    }

    /// ε at ξ = 0 for dielectrics; `None` for metals where it diverges.
    pub fn static_eps(&self) -> Option<f64> {
        match self {
            PermittivityModel::Drude { .. } | PermittivityModel::Plasma { .. } => None,
            PermittivityModel::ConstantEps { eps } => Some(*eps),
            PermittivityModel::PolarDebye { terms } => {
                Some(1.0 + terms.iter().map(|t| t.strength).sum::<f64>())
            }
        }
    }

    /// The plasma frequency for metal variants.
    pub fn omega_p(&self) -> Option<f64> {
        match self {
            PermittivityModel::Drude { omega_p, .. } | PermittivityModel::Plasma { omega_p } => {
                Some(*omega_p)
            }
            _ => None,
        }
    }

    /// Relaxation rate at temperature `t` (0 for non-Drude variants).
    pub fn gamma(&self, t: f64) -> Result<f64> {
        match self {
            PermittivityModel::Drude { relaxation, .. } => relaxation.gamma(t),
            _ => Ok(0.0),
        }
    }

    /// ε(iξ) with an already evaluated relaxation rate.
    pub fn eps_with_gamma(&self, xi: f64, gamma: f64) -> Result<f64> {
        if !(xi >= 0.0) {
            return invalid(format!("imaginary frequency must be non-negative, got {xi}"));
        }
        match self {
            PermittivityModel::Drude { omega_p, .. } => {
                if xi == 0.0 {
                    return Err(Error::ZeroFrequency);
                }
                Ok(1.0 + omega_p * omega_p / (xi * (xi + gamma)))
            }
            PermittivityModel::Plasma { omega_p } => {
                if xi == 0.0 {
                    return Err(Error::ZeroFrequency);
                }
                let r = omega_p / xi;
                Ok(1.0 + r * r)
            }
            PermittivityModel::ConstantEps { eps } => Ok(*eps),
            PermittivityModel::PolarDebye { terms } => {
                Ok(1.0 + terms.iter().map(|t| t.strength / (1.0 + xi / t.frequency)).sum::<f64>())
            }
        }
    }

    /// ε(iξ) at temperature `t` (K).
    pub fn eps(&self, xi: f64, t: f64) -> Result<f64> {
        let gamma = self.gamma(t)?;
        self.eps_with_gamma(xi, gamma)
    }
}

fn check_omega_p(omega_p: f64) -> Result<()> {
    if !(omega_p.is_finite() && omega_p > 0.0) {
        return invalid(format!("plasma frequency must be positive, got {omega_p}"));
    }
    Ok(())
}

pub fn eps_imag_axis(model: &PermittivityModel, xi: f64, t: f64) -> Result<f64> {
    model.eps(xi, t)
}
