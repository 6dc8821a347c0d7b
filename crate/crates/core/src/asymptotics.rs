//! Low-temperature expansions for Drude and plasma metals, and the exact
//! sums and integrals they approximate.
//!
//! Notation: `τ = T/T_eff`, `Δ = 2πτ` (the Matsubara spacing in ζ),
//! `α = c/(2aω_p) = 1/ω̃_p`, `x = δ0/a = 2α`.
//!
//! The Drude free energy splits as
//! `F_D = F_p + (zero-mode TE term) + F_γ`, where to first order in `γ/ξ_l`
//!
//! ```text
//! F_γ = k_B T/(8π a²) Σ_{l≥1} (γ̃/ζ_l) ∫_{ζ_l}^∞ y dy [R∥/(eʸ − r∥²) + R⊥/(eʸ − r⊥²)]
//! ```
//!
//! and to first order in α as well
//!
//! ```text
//! F_γ = (γ/ω_p) k_B T/(4π a²) Σ_{l≥1} [ζ_l ∫_{ζ_l}^∞ dy/(eʸ−1) + ζ_l⁻¹ ∫_{ζ_l}^∞ y² dy/(eʸ−1)].
//! ```

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::lifshitz::{
    free_energy_prefactor, free_energy_t0, matsubara_sum, plasma_zero_mode_te_integral, semi_infinite_integral,
    QuadratureSpec, Term, ThermoResult,
};
use crate::materials::{first_matsubara_frequency, PermittivityModel};
use crate::reflection::{one_minus_r2_shift, reflect_from_eps, Coefficient, ReflectionPair, Reflector};
use crate::scales::{PlateSystem, C, HBAR, K_B, ZETA2, ZETA3, ZETA3_PRIME, ZETA5};
use crate::special::{bose_tail_0, bose_tail_2};
use crate::sum::Neumaier;

/// The small parameters an expansion was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionInput {
    /// `1/ω̃_p = δ0/(2a)`.
    pub alpha: f64,
    /// `T/T_eff`.
    pub tau: f64,
    pub gamma_over_omega_p: Option<f64>,
    /// `γ/ξ_1`, the expansion parameter of the first-order-in-γ results.
    pub gamma_over_xi1: Option<f64>,
    /// Coefficient of `γ = γ0 T²` when that law is in use (rad/(s·K²)).
    pub gamma0: Option<f64>,
}

impl ExpansionInput {
    pub fn new(sys: &PlateSystem, omega_p: f64) -> Self {
        Self {
            alpha: sys.omega_c() / omega_p,
            tau: sys.tau(),
            gamma_over_omega_p: None,
            gamma_over_xi1: None,
            gamma0: None,
        }
    }

    pub fn with_gamma(mut self, sys: &PlateSystem, omega_p: f64, gamma: f64) -> Self {
        self.gamma_over_omega_p = Some(gamma / omega_p);
        let xi1 = sys.xi(1);
        self.gamma_over_xi1 = (xi1 > 0.0).then(|| gamma / xi1);
        self
    }

    /// Departures from the regime where the expansions are meant to hold.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if !(self.alpha > 0.0 && self.alpha <= 0.1) {
            w.push(format!("alpha = {:.3e} outside (0, 0.1]", self.alpha));
        }
        if !(self.tau > 0.0 && self.tau <= 0.05) {
            w.push(format!("T/T_eff = {:.3e} outside (0, 0.05]", self.tau));
        }
        if let Some(r) = self.gamma_over_xi1 {
            if r > 0.1 {
                w.push(format!("gamma/xi_1 = {r:.3e} is not small"));
            }
        }
        w
    }
}

/// An asymptotic value together with its small parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expansion {
    pub value: f64,
    pub input: ExpansionInput,
}

fn check_metal(omega_p: f64) -> Result<()> {
    if !(omega_p > 0.0 && omega_p.is_finite()) {
        return invalid("plasma frequency must be positive and finite");
    }
    Ok(())
}

fn plasma_pair(zeta: f64, y: f64, alpha: f64) -> Result<ReflectionPair> {
    reflect_from_eps(1.0 + 1.0 / (alpha * alpha * zeta * zeta), zeta, y)
}

fn r_functions_from(zeta: f64, y: f64, alpha: f64, plasma: &ReflectionPair) -> (f64, f64) {
    let q = (alpha * alpha * y * y).sqrt().hypot(1.0);
    let r_par = plasma.r_par_sq().sqrt();
    let r_perp = plasma.r_perp_sq().sqrt();
    let z2 = zeta * zeta;
    let d = y + alpha * z2 * (alpha * y + q);
    let par = 2.0 * z2 * alpha * y * (1.0 + alpha * alpha * (2.0 * y * y - z2)) * r_par / (q * d * d);
    let e = alpha * y + q;
    let perp = 2.0 * alpha * y * r_perp / (q * e * e);
    (par, perp)
}

/// First-order response of the squared reflection coefficients to γ:
/// `r_D² = r_p² − (γ̃/ζ) R` for each polarization. Returns `(R∥, R⊥)`.
pub fn r_functions_full(zeta: f64, y: f64, alpha: f64) -> Result<(f64, f64)> {
    if !(zeta > 0.0 && y >= zeta && alpha > 0.0) {
        return invalid("R functions need 0 < zeta <= y and alpha > 0");
    }
    let plasma = plasma_pair(zeta, y, alpha)?;
    Ok(r_functions_from(zeta, y, alpha, &plasma))
}

/// The R functions to first order in α: `(2ζ²α/y, 2yα)`.
pub fn r_functions_first_order(zeta: f64, y: f64, alpha: f64) -> (f64, f64) {
    (2.0 * zeta * zeta * alpha / y, 2.0 * y * alpha)
}

/// `1 − r² e^{−y}` without cancellation.
#[inline]
fn one_minus_r2_exp(c: Coefficient, y: f64) -> f64 {
    c.one_minus_r2() - c.r2() * (-y).exp_m1()
}

/// Bound on `|∫_ζ^∞ y (R∥+R⊥)/(eʸ−1) dy|` given `R∥ + R⊥ ≤ 6α y (1 + αy)/y`.
fn gamma_integral_bound(zeta: f64, alpha: f64) -> f64 {
    let z = zeta;
    6.0 * alpha * (-z).exp() / -(-z).exp_m1()
        * ((z * z + 2.0 * z + 2.0) + alpha * (z * z * z + 3.0 * z * z + 6.0 * z + 6.0))
}

/// Relaxation contribution to the Drude free energy, first order in γ with
/// the full α dependence (J/m²), by quadrature.
pub fn f_gamma_first_order(sys: &PlateSystem, omega_p: f64, gamma: f64, spec: &QuadratureSpec) -> Result<ThermoResult> {
    check_metal(omega_p)?;
    spec.validate()?;
    if !(gamma >= 0.0) {
        return invalid("relaxation rate must be non-negative");
    }
    if !(sys.temperature() > 0.0) {
        return invalid("F_gamma needs T > 0");
    }
    let alpha = sys.omega_c() / omega_p;
    let gamma_tilde = gamma / sys.omega_c();
    let pre = free_energy_prefactor(sys);
    let rel = (0.1 * spec.rel_tol).max(5e-14);
    let sum = matsubara_sum(
        sys,
        1,
        spec,
        0.0,
        |l| {
            let zeta = sys.zeta(l);
            let g = |y: f64| {
                let Ok(p) = plasma_pair(zeta, y, alpha) else {
                    return f64::NAN;
                };
                let (rpar, rperp) = r_functions_from(zeta, y, alpha, &p);
                let e = (-y).exp();
                rpar * e / one_minus_r2_exp(p.par, y) + rperp * e / one_minus_r2_exp(p.perp, y)
            };
            let q = semi_infinite_integral(g, zeta, rel, 0.0, spec.max_subdivisions);
            let w = gamma_tilde / zeta;
            Ok(Term {
                value: w * q.value,
                error: w * q.abs_error,
                converged: q.converged,
            })
        },
        |zeta_last, step| {
            let z = zeta_last + step;
            gamma_tilde / z * gamma_integral_bound(z, alpha) / -(-0.9 * step).exp_m1()
        },
    )?;
    let value = pre * sum.total;
    Ok(ThermoResult::judge(
        value,
        pre * sum.error,
        sum.l_max,
        (spec.rel_tol * value.abs()).max(spec.abs_floor),
        sum.converged,
    ))
}

/// `F_D − (F_p + zero-mode TE term + F_γ)` with `F_γ` to first order in γ
/// (full α), computed term by term so that no large quantities cancel.
/// The Drude relaxation rate is the constant `gamma`.
pub fn first_order_residual(sys: &PlateSystem, omega_p: f64, gamma: f64, spec: &QuadratureSpec) -> Result<ThermoResult> {
    check_metal(omega_p)?;
    spec.validate()?;
    if !(gamma >= 0.0) {
        return invalid("relaxation rate must be non-negative");
    }
    if !(sys.temperature() > 0.0) {
        return invalid("residual needs T > 0");
    }
    let alpha = sys.omega_c() / omega_p;
    let wt = omega_p / sys.omega_c();
    let gamma_tilde = gamma / sys.omega_c();
    let pre = free_energy_prefactor(sys);
    // a second-order remainder of first-order quantities; its integrand is
    // good to about 1e-11 relative
    let rel = (0.1 * spec.rel_tol).max(1e-9);
    let sum = matsubara_sum(
        sys,
        1,
        spec,
        0.0,
        |l| {
            let zeta = sys.zeta(l);
            let eps_p = 1.0 + wt * wt / (zeta * zeta);
            let d_eps = -wt * wt * gamma_tilde / (zeta * zeta * (zeta + gamma_tilde));
            let w = gamma_tilde / zeta;
            let g = |y: f64| {
                let Ok(p) = plasma_pair(zeta, y, alpha) else {
                    return f64::NAN;
                };
                let (rpar, rperp) = r_functions_from(zeta, y, alpha, &p);
                let (du_par, du_perp) = one_minus_r2_shift(eps_p, d_eps, zeta, y);
                let e = (-y).exp();
                // ln(1 − r_D² e^{−y}) − ln(1 − r_p² e^{−y}) minus its first-order part
                let part = |pc: Coefficient, du: f64, r: f64| {
                    let den = one_minus_r2_exp(pc, y);
                    let x = du * e / den;
                    (x.ln_1p() - x) + (du - w * r) * e / den
                };
                part(p.par, du_par, rpar) + part(p.perp, du_perp, rperp)
            };
            Ok(semi_infinite_integral(g, zeta, rel, 0.0, spec.max_subdivisions).into())
        },
        |zeta_last, step| {
            // second order in γ̃/ζ times the first-order bound
            let z = zeta_last + step;
            let w = gamma_tilde / z;
            w * w * gamma_integral_bound(z, alpha) * 4.0 / -(-0.9 * step).exp_m1()
        },
    )?;
    let value = pre * sum.total;
    Ok(ThermoResult::judge(
        value,
        pre * sum.error,
        sum.l_max,
        (spec.rel_tol * value.abs()).max(spec.abs_floor),
        sum.converged,
    ))
}

/// Direct evaluation of `Σ_{l≥1} ζ_l ∫_{ζ_l}^∞ dy/(eʸ−1)`.
pub fn first_sum_exact(tau: f64) -> f64 {
    l_sum(tau, |z| z * bose_tail_0(z))
}

/// Direct evaluation of `Σ_{l≥1} ζ_l⁻¹ ∫_{ζ_l}^∞ y² dy/(eʸ−1)`.
pub fn second_sum_exact(tau: f64) -> f64 {
    l_sum(tau, |z| bose_tail_2(z) / z)
}

fn l_sum<F: Fn(f64) -> f64>(tau: f64, f: F) -> f64 {
    assert!(tau > 0.0, "tau must be positive");
    let step = 2.0 * PI * tau;
    let mut acc = Neumaier::default();
    let mut l = 1u64;
    loop {
        let z = step * l as f64;
        if z > 50.0 {
            return acc.total();
        }
        acc.add(f(z));
        l += 1;
    }
}

/// How the k-series of the two sums treat `e^{2πkτ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesForm {
    /// Evaluated as written.
    Exact,
    /// `e^{2πkτ}` replaced by `1 + 2πkτ` wherever it appears.
    Truncated,
}

/// First sum after exchanging the l and k sums:
/// `Δ Σ_k k⁻¹ [(e^{kΔ}−1)⁻¹ + (e^{kΔ}−1)⁻²]`, `Δ = 2πτ`.
pub fn first_sum_k_series(tau: f64, form: SeriesForm) -> f64 {
    let d = 2.0 * PI * tau;
    match form {
        SeriesForm::Exact => k_sum(d, |k, x| {
            let m = x.exp_m1();
            d / k * (1.0 / m + 1.0 / (m * m))
        }),
        // Δ Σ k⁻¹ (1/x + 1/x²) with x = kΔ
        SeriesForm::Truncated => ZETA2 + ZETA3 / d,
    }
}

/// Second sum after exchanging the l and k sums:
/// `Σ_k [Δ k⁻¹ e^{kΔ}/(e^{kΔ}−1)² + 2k⁻²/(e^{kΔ}−1) − 2k⁻³Δ⁻¹ ln(1 − e^{−kΔ})]`.
pub fn second_sum_k_series(tau: f64, form: SeriesForm) -> f64 {
    let d = 2.0 * PI * tau;
    match form {
        SeriesForm::Exact => k_sum(d, |k, x| {
            let m = x.exp_m1();
            d / k * (m + 1.0) / (m * m) + 2.0 / (k * k * m) - 2.0 / (k * k * k * d) * (-(-x).exp_m1()).ln()
        }),
        SeriesForm::Truncated => {
            // with e^x → 1 + x the summand is
            // 1/k² + 3/(k³Δ) − 2/(k³Δ)·[ln k + ln Δ − ln(1 + kΔ)]
            let log_sum = log1p_cubic_sum(d);
            ZETA2 + 3.0 * ZETA3 / d + 2.0 * ZETA3_PRIME / d - 2.0 * ZETA3 * d.ln() / d + 2.0 * log_sum / d
        }
    }
}

/// `Σ_{k≥1} ln(1 + kΔ)/k³`.
fn log1p_cubic_sum(d: f64) -> f64 {
    const K: u64 = 1_000_000;
    let mut acc = Neumaier::default();
    for k in (1..=K).rev() {
        let kf = k as f64;
        acc.add((kf * d).ln_1p() / (kf * kf * kf));
    }
    // ∫_{K+½}^∞ ln(1 + tΔ)/t³ dt for KΔ ≫ 1
    let t = K as f64 + 0.5;
    acc.add(((t * d).ln_1p() + 0.5) / (2.0 * t * t));
    acc.total()
}

fn k_sum<F: Fn(f64, f64) -> f64>(d: f64, term: F) -> f64 {
    let mut terms = Vec::new();
    let mut k = 1u64;
    loop {
        let x = d * k as f64;
        terms.push(term(k as f64, x));
        if x > 50.0 {
            break;
        }
        k += 1;
    }
    // smallest terms first
    let mut acc = Neumaier::default();
    for t in terms.iter().rev() {
        acc.add(*t);
    }
    acc.total()
}

/// Leading asymptotic form of the first sum: `ζ(3)/(2πτ) + ζ(2)`.
pub fn first_sum_closed_form(tau: f64) -> f64 {
    ZETA3 / (2.0 * PI * tau) + ZETA2
}

/// Leading asymptotic form of the second sum:
/// `−ζ(3)/(πτ) ln(2πτ) + 3ζ(3)/(2πτ) + 2ζ(2)`.
pub fn second_sum_closed_form(tau: f64) -> f64 {
    -ZETA3 / (PI * tau) * (2.0 * PI * tau).ln() + 3.0 * ZETA3 / (2.0 * PI * tau) + 2.0 * ZETA2
}

fn check_gamma_inputs(sys: &PlateSystem, omega_p: f64, gamma: f64) -> Result<()> {
    check_metal(omega_p)?;
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return invalid("relaxation rate must be non-negative");
    }
    if !(sys.temperature() > 0.0) {
        return invalid("relaxation contribution needs T > 0");
    }
    Ok(())
}

/// Relaxation contribution to first order in γ and α, with the two sums
/// evaluated exactly (J/m²).
pub fn f_gamma_exact(sys: &PlateSystem, omega_p: f64, gamma: f64) -> Result<Expansion> {
    check_gamma_inputs(sys, omega_p, gamma)?;
    let tau = sys.tau();
    let sums = first_sum_exact(tau) + second_sum_exact(tau);
    let value = gamma / omega_p * K_B * sys.temperature() / (4.0 * PI * sys.a() * sys.a()) * sums;
    Ok(Expansion {
        value,
        input: ExpansionInput::new(sys, omega_p).with_gamma(sys, omega_p, gamma),
    })
}

/// Leading low-temperature form of the relaxation contribution (J/m²):
/// `(γ/ω_p) k_B T_eff ζ(3)/(4π²a²) [−ln(2πτ) + 2 + 3π ζ(2)/ζ(3) τ]`.
pub fn f_gamma_asymptotic(sys: &PlateSystem, omega_p: f64, gamma: f64) -> Result<Expansion> {
    check_gamma_inputs(sys, omega_p, gamma)?;
    let tau = sys.tau();
    let bracket = -(2.0 * PI * tau).ln() + 2.0 + 3.0 * PI * ZETA2 / ZETA3 * tau;
    let value = gamma / omega_p * K_B * sys.t_eff() * ZETA3 / (4.0 * PI * PI * sys.a() * sys.a()) * bracket;
    Ok(Expansion {
        value,
        input: ExpansionInput::new(sys, omega_p).with_gamma(sys, omega_p, gamma),
    })
}

/// Thermal part of the plasma free energy at low temperature (J/m²):
/// `−ħcζ(3)/(16πa³) [(1 + 2x)τ³ − π³/(45ζ(3)) (1 + 4x)τ⁴]`.
pub fn plasma_thermal_correction_low_t(sys: &PlateSystem, omega_p: f64) -> Result<Expansion> {
    check_metal(omega_p)?;
    let input = ExpansionInput::new(sys, omega_p);
    let x = 2.0 * input.alpha;
    let tau = input.tau;
    let bracket = (1.0 + 2.0 * x) * tau.powi(3) - PI.powi(3) / (45.0 * ZETA3) * (1.0 + 4.0 * x) * tau.powi(4);
    let value = -HBAR * C * ZETA3 / (16.0 * PI * sys.a().powi(3)) * bracket;
    Ok(Expansion { value, input })
}

/// Plasma free energy at low temperature: the zero-temperature energy
/// (by quadrature) plus [`plasma_thermal_correction_low_t`].
pub fn plasma_free_energy_low_t(sys: &PlateSystem, omega_p: f64, spec: &QuadratureSpec) -> Result<Expansion> {
    let thermal = plasma_thermal_correction_low_t(sys, omega_p)?;
    let e0 = free_energy_t0(&Reflector::Permittivity(PermittivityModel::Plasma { omega_p }), sys, spec)?;
    Ok(Expansion {
        value: e0.value + thermal.value,
        input: thermal.input,
    })
}

/// Series in `x = δ0/a` for the zero-mode TE term in units of
/// `k_B T ζ(3)/(16π a²)`:
/// `1 − 4x + 12x² − 32x³(1 − ζ(5)/(16ζ(3))) + 80x⁴(1 − ζ(5)/(4ζ(3)))`.
pub fn linear_term_series(x: f64) -> f64 {
    let r = ZETA5 / ZETA3;
    1.0 - 4.0 * x + 12.0 * x * x - 32.0 * x.powi(3) * (1.0 - r / 16.0) + 80.0 * x.powi(4) * (1.0 - r / 4.0)
}

/// The same bracket by quadrature:
/// `−ζ(3)⁻¹ ∫₀^∞ y ln(1 − r⊥^(p)²(0, y) e^{−y}) dy` with `ω̃_p = 2/x`.
pub fn linear_term_quadrature(x: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return invalid("delta0/a must be positive");
    }
    Ok(-plasma_zero_mode_te_integral(2.0 / x, spec).value / ZETA3)
}

/// Temperature-independent Drude entropy term (J/(K·m²)) by quadrature:
/// `k_B/(16π a²) ∫₀^∞ y ln(1 − r⊥^(p)²(0, y) e^{−y}) dy`, always negative.
pub fn s0_drude(sys: &PlateSystem, omega_p: f64, spec: &QuadratureSpec) -> Result<ThermoResult> {
    check_metal(omega_p)?;
    spec.validate()?;
    let q = plasma_zero_mode_te_integral(omega_p / sys.omega_c(), spec);
    let pre = K_B / (16.0 * PI * sys.a() * sys.a());
    let value = pre * q.value;
    Ok(ThermoResult::judge(
        value,
        pre * q.abs_error,
        0,
        spec.rel_tol * value.abs(),
        q.converged,
    ))
}

/// [`s0_drude`] from the series in δ0/a.
pub fn s0_drude_series(sys: &PlateSystem, omega_p: f64) -> Result<Expansion> {
    check_metal(omega_p)?;
    let input = ExpansionInput::new(sys, omega_p);
    let value = -K_B * ZETA3 / (16.0 * PI * sys.a() * sys.a()) * linear_term_series(2.0 * input.alpha);
    Ok(Expansion { value, input })
}

/// Plasma entropy at low temperature (J/(K·m²)):
/// `3k_Bζ(3)/(8πa²) τ² {1 − 4π³/(135ζ(3)) τ + 2x [1 − 8π³/(135ζ(3)) τ]}`.
pub fn plasma_entropy_low_t(sys: &PlateSystem, omega_p: f64) -> Result<Expansion> {
    check_metal(omega_p)?;
    let input = ExpansionInput::new(sys, omega_p);
    let x = 2.0 * input.alpha;
    let tau = input.tau;
    let c = PI.powi(3) / (135.0 * ZETA3);
    let bracket = 1.0 - 4.0 * c * tau + 2.0 * x * (1.0 - 8.0 * c * tau);
    let value = 3.0 * K_B * ZETA3 / (8.0 * PI * sys.a() * sys.a()) * tau * tau * bracket;
    Ok(Expansion { value, input })
}

/// Relaxation contribution to the Drude entropy for `γ = γ0 T²` (J/(K·m²)):
/// `−k_Bζ(3)/(4π²a²) (γ/ω_p)(1/τ) [−2 ln(2πτ) + 3 + 9π ζ(2)/ζ(3) τ]`.
pub fn s_gamma_asymptotic(sys: &PlateSystem, omega_p: f64, gamma0: f64) -> Result<Expansion> {
    let t = sys.temperature();
    let gamma = gamma0 * t * t;
    check_gamma_inputs(sys, omega_p, gamma)?;
    let tau = sys.tau();
    let bracket = -2.0 * (2.0 * PI * tau).ln() + 3.0 + 9.0 * PI * ZETA2 / ZETA3 * tau;
    let value = -K_B * ZETA3 / (4.0 * PI * PI * sys.a() * sys.a()) * (gamma / omega_p) / tau * bracket;
    let mut input = ExpansionInput::new(sys, omega_p).with_gamma(sys, omega_p, gamma);
    input.gamma0 = Some(gamma0);
    Ok(Expansion { value, input })
}

/// Low-temperature Drude entropy for `γ = γ0 T²`: plasma part + zero-mode
/// constant + relaxation part.
pub fn drude_entropy_low_t(sys: &PlateSystem, omega_p: f64, gamma0: f64, spec: &QuadratureSpec) -> Result<Expansion> {
    let sp = plasma_entropy_low_t(sys, omega_p)?;
    let s0 = s0_drude(sys, omega_p, spec)?;
    let sg = s_gamma_asymptotic(sys, omega_p, gamma0)?;
    Ok(Expansion {
        value: sp.value + s0.value + sg.value,
        input: sg.input,
    })
}

/// Zero-temperature limit of the Drude entropy: the negative constant
/// [`s0_drude`], which depends on `a` and `ω_p`.
pub fn drude_entropy_limit(sys: &PlateSystem, omega_p: f64, spec: &QuadratureSpec) -> Result<ThermoResult> {
    s0_drude(sys, omega_p, spec)
}

/// Temperature at which a relaxation rate `gamma` equals the first
/// Matsubara frequency, `ħγ/(2πk_B)`. The first-order expansion in γ/ξ_l
/// needs `T` well above it.
pub fn regime_guard_temperature(gamma: f64) -> f64 {
    HBAR * gamma / (2.0 * PI * K_B)
}

/// `γ/ξ_1(T)`.
pub fn gamma_over_xi1(gamma: f64, temperature: f64) -> f64 {
    gamma / first_matsubara_frequency(temperature)
}
