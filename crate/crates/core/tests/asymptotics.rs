use std::f64::consts::PI;

use casimir_core::asymptotics::*;
use casimir_core::materials::{gold, gold_gamma0};
use casimir_core::reflection::reflect_from_eps;
use casimir_core::scales::{C, K_B, ZETA2, ZETA3, ZETA3_PRIME};
use casimir_core::{
    decomposed_free_energy_drude, entropy, free_energy, free_energy_t0, DerivativeSpec, PermittivityModel,
    PlateSystem, QuadratureSpec, Reflector, RelaxationModel,
};
use proptest::prelude::*;

const MICRON: f64 = 1e-6;
const WP: f64 = gold::OMEGA_P;

fn t_eff(a: f64) -> f64 {
    PlateSystem::new(a, 1.0).unwrap().t_eff()
}

fn at_tau(tau: f64) -> PlateSystem {
    PlateSystem::new(MICRON, tau * t_eff(MICRON)).unwrap()
}

fn rel(x: f64, y: f64) -> f64 {
    ((x - y) / y).abs()
}

/// `(r_p² − r_D²) / w` with `w = γ̃/ζ`, straight from the permittivities.
fn secant_r(zeta: f64, y: f64, alpha: f64, w: f64) -> (f64, f64) {
    let wt = 1.0 / alpha;
    let gt = w * zeta;
    let p = reflect_from_eps(1.0 + wt * wt / (zeta * zeta), zeta, y).unwrap();
    let d = reflect_from_eps(1.0 + wt * wt / (zeta * (zeta + gt)), zeta, y).unwrap();
    ((p.r_par_sq() - d.r_par_sq()) / w, (p.r_perp_sq() - d.r_perp_sq()) / w)
}

#[test]
fn r_functions_are_the_first_order_response() {
    for (zeta, y, alpha) in [(0.5, 1.0, 0.011), (2.0, 7.0, 0.05), (0.1, 0.3, 0.002)] {
        let (rp, rs) = r_functions_full(zeta, y, alpha).unwrap();
        let dev = |w: f64| {
            let (sp, ss) = secant_r(zeta, y, alpha, w);
            (rel(sp, rp), rel(ss, rs))
        };
        let (p4, s4) = dev(1e-4);
        let (p5, s5) = dev(1e-5);
        assert!(p4 < 1e-3 && s4 < 1e-3);
        let slope_p = (p4 / p5).log10();
        let slope_s = (s4 / s5).log10();
        assert!((slope_p - 1.0).abs() < 0.05, "{slope_p}");
        assert!((slope_s - 1.0).abs() < 0.05, "{slope_s}");
    }
}

#[test]
fn r_functions_reduce_at_small_alpha() {
    let (zeta, y) = (0.7, 2.0);
    let dev = |alpha: f64| {
        let (fp, fs) = r_functions_full(zeta, y, alpha).unwrap();
        let (sp, ss) = r_functions_first_order(zeta, y, alpha);
        rel(fp, sp).max(rel(fs, ss))
    };
    assert!(dev(1e-4) < 1e-3);
    assert!(dev(1e-5) < 0.2 * dev(1e-4));
}

#[test]
fn r_functions_reject_bad_domain() {
    assert!(r_functions_full(0.0, 1.0, 0.01).is_err());
    assert!(r_functions_full(2.0, 1.0, 0.01).is_err());
}

proptest! {
    #[test]
    fn r_functions_are_non_negative(zeta in 1e-3..50.0f64, extra in 0.0..50.0f64, alpha in 1e-4..0.1f64) {
        let (p, s) = r_functions_full(zeta, zeta + extra, alpha).unwrap();
        prop_assert!(p >= 0.0 && s >= 0.0);
    }
}

#[test]
fn plasma_low_temperature_free_energy() {
    let q = QuadratureSpec::with_rel_tol(1e-12);
    let plasma = Reflector::Permittivity(PermittivityModel::gold_plasma());
    let sys = PlateSystem::new(MICRON, 30.0).unwrap();
    let e = free_energy_t0(&plasma, &sys, &q).unwrap().value;
    let f = free_energy(&plasma, &sys, &q).unwrap().value;
    let thermal = plasma_thermal_correction_low_t(&sys, WP).unwrap().value;
    assert!(rel(thermal, f - e) < 5e-3);
    let whole = plasma_free_energy_low_t(&sys, WP, &q).unwrap().value;
    assert!(rel(whole, f) < 1e-6);
}

#[test]
fn plasma_thermal_part_scales_as_tau_cubed() {
    let q = QuadratureSpec::with_rel_tol(1e-12);
    let plasma = Reflector::Permittivity(PermittivityModel::gold_plasma());
    let s1 = at_tau(1e-3);
    let s2 = at_tau(2e-3);
    let e = free_energy_t0(&plasma, &s1, &q).unwrap().value;
    let f1 = free_energy(&plasma, &s1, &q).unwrap().value;
    let f2 = free_energy(&plasma, &s2, &q).unwrap().value;
    let ratio = (f2 - e) / (f1 - e);
    assert!((ratio / 8.0 - 1.0).abs() < 0.05, "{ratio}");
}

#[test]
fn linear_term_series_against_quadrature() {
    let q = QuadratureSpec::with_rel_tol(1e-12);
    assert_eq!(linear_term_series(0.0), 1.0);
    let x = C / (MICRON * WP);
    let s = linear_term_series(x);
    let d = linear_term_quadrature(x, &q).unwrap();
    assert!((s - d).abs() < 1e-4);
    assert!((s - 0.918).abs() < 1e-3);

    let x = C / (300e-9 * WP);
    let s = linear_term_series(x);
    let d = linear_term_quadrature(x, &q).unwrap();
    assert!((s - d).abs() < 0.01, "{s} vs {d}");
    assert!((d - 0.760).abs() < 0.01, "{d}");
}

#[test]
fn exchanged_sums_match_direct_sums() {
    for tau in [1e-2, 1e-3] {
        let a = first_sum_k_series(tau, SeriesForm::Exact);
        let b = first_sum_exact(tau);
        assert!(rel(a, b) < 1e-9, "first sum at {tau}: {a} vs {b}");
        let a = second_sum_k_series(tau, SeriesForm::Exact);
        let b = second_sum_exact(tau);
        assert!(rel(a, b) < 1e-9, "second sum at {tau}: {a} vs {b}");
    }
}

/// The two sums follow `ζ(3)/Δ` and `−2ζ(3)lnΔ/Δ + (3ζ(3) + 2ζ'(3))/Δ`
/// (Δ = 2πτ) to leading orders; the published closed forms differ by
/// terms that only decay logarithmically in relative size.
#[test]
fn leading_behaviour_of_the_sums() {
    for tau in [1e-3, 1e-4] {
        let d = 2.0 * PI * tau;
        let first = ZETA3 / d;
        assert!(rel(first, first_sum_exact(tau)) < 2.0 * d * d.ln().abs() / first * 10.0);
        let second = (-2.0 * ZETA3 * d.ln() + 3.0 * ZETA3 + 2.0 * ZETA3_PRIME) / d;
        assert!(rel(second, second_sum_exact(tau)) < 1e-4);
    }
    let closed_err = |tau: f64| rel(first_sum_closed_form(tau), first_sum_exact(tau));
    assert!(closed_err(1e-4) < closed_err(1e-3));
    let closed_err = |tau: f64| rel(second_sum_closed_form(tau), second_sum_exact(tau));
    assert!(closed_err(1e-4) < closed_err(1e-3));
    // the truncated k-series reproduces the first closed form
    assert!(rel(first_sum_k_series(1e-3, SeriesForm::Truncated), first_sum_closed_form(1e-3)) < 1e-9);
}

#[test]
fn relaxation_term_properties() {
    let sys = at_tau(1e-3);
    assert_eq!(f_gamma_exact(&sys, WP, 0.0).unwrap().value, 0.0);
    let gamma = gold_gamma0() * sys.temperature().powi(2);
    let err = |tau: f64| {
        let s = at_tau(tau);
        let g = gold_gamma0() * s.temperature().powi(2);
        rel(f_gamma_asymptotic(&s, WP, g).unwrap().value, f_gamma_exact(&s, WP, g).unwrap().value)
    };
    assert!(err(1e-4) < err(1e-3) && err(1e-3) < err(1e-2));
    for tau in [1e-4, 1e-3, 1e-2, 0.1] {
        let s = at_tau(tau);
        assert!(f_gamma_asymptotic(&s, WP, gamma).unwrap().value > 0.0);
    }
}

#[test]
fn first_order_term_approaches_small_alpha_sums() {
    let q = QuadratureSpec::with_rel_tol(1e-10);
    let sys = PlateSystem::new(MICRON, 30.0).unwrap();
    let gamma = 1e-3 * sys.xi(1);
    let gap = |wp: f64| {
        let full = f_gamma_first_order(&sys, wp, gamma, &q).unwrap();
        assert!(full.converged);
        rel(f_gamma_exact(&sys, wp, gamma).unwrap().value, full.value)
    };
    let coarse = gap(WP);
    let fine = gap(10.0 * WP);
    assert!(coarse < 0.2);
    assert!(fine < 0.15 * coarse, "{coarse} {fine}");
}

#[test]
fn relaxation_entropy_is_minus_the_temperature_derivative() {
    let sys = at_tau(1e-3);
    let t = sys.temperature();
    let g0 = gold_gamma0();
    let f = |t: f64| {
        let s = PlateSystem::new(MICRON, t).unwrap();
        f_gamma_asymptotic(&s, WP, g0 * t * t).unwrap().value
    };
    let h = 1e-3 * t;
    let numeric = -(f(t + h) - f(t - h)) / (2.0 * h);
    let s = s_gamma_asymptotic(&sys, WP, g0).unwrap().value;
    assert!(rel(s, numeric) < 1e-2);
    let doubled = s_gamma_asymptotic(&sys, WP, 2.0 * g0).unwrap().value;
    assert!(rel(doubled, 2.0 * s) < 1e-14);
    assert!(s_gamma_asymptotic(&at_tau(1e-7), WP, g0).unwrap().value.abs() < 1e-3 * s.abs());
}

#[test]
fn zero_temperature_drude_entropy() {
    let q = QuadratureSpec::with_rel_tol(1e-12);
    let sys = PlateSystem::new(MICRON, 10.0).unwrap();
    let s0 = s0_drude(&sys, WP, &q).unwrap().value;
    assert!((s0 + 3.03e-13).abs() < 0.01e-13);
    assert_eq!(drude_entropy_limit(&sys, WP, &q).unwrap().value, s0);
    assert!(rel(s0_drude_series(&sys, WP).unwrap().value, s0) < 1e-4);

    let unit = K_B * ZETA3 / (16.0 * PI * MICRON * MICRON);
    let ideal = s0_drude(&sys, 1e8 * WP, &q).unwrap().value;
    assert!(rel(ideal, -unit) < 1e-6);

    let half = PlateSystem::new(0.5 * MICRON, 10.0).unwrap();
    let scaled = s0_drude(&half, WP, &q).unwrap().value / linear_term_quadrature(C / (0.5 * MICRON * WP), &q).unwrap();
    let base = s0 / linear_term_quadrature(C / (MICRON * WP), &q).unwrap();
    assert!(rel(scaled, 4.0 * base) < 1e-9);

    for a in [0.2e-6, 0.5e-6, 3e-6] {
        let s = PlateSystem::new(a, 10.0).unwrap();
        assert!(s0_drude(&s, WP, &q).unwrap().value < 0.0);
    }
}

#[test]
fn plasma_entropy_low_temperature_form() {
    let s1 = plasma_entropy_low_t(&at_tau(1e-3), WP).unwrap().value;
    let s2 = plasma_entropy_low_t(&at_tau(2e-3), WP).unwrap().value;
    assert!(s1 > 0.0);
    assert!((s2 / s1 / 4.0 - 1.0).abs() < 0.02);
    assert!(plasma_entropy_low_t(&at_tau(1e-8), WP).unwrap().value < 1e-9 * s1);
}

#[test]
fn entropy_budget_matches_numerical_drude_entropy() {
    let q = QuadratureSpec::with_rel_tol(1e-12);
    let d = DerivativeSpec::default();
    let r = Reflector::Permittivity(PermittivityModel::Drude {
        omega_p: WP,
        relaxation: RelaxationModel::gold_quadratic(),
    });
    for tau in [6e-4, 1e-3, 2e-3, 5e-3] {
        let sys = at_tau(tau);
        let budget = drude_entropy_low_t(&sys, WP, gold_gamma0(), &q).unwrap().value;
        let numeric = entropy(&r, MICRON, sys.temperature(), &d, &q).unwrap().value;
        assert!(rel(budget, numeric) < 0.05, "tau {tau}: {budget} vs {numeric}");
    }
}

#[test]
fn first_order_residual_is_quadratic() {
    let q = QuadratureSpec::with_rel_tol(1e-12);
    let sys = PlateSystem::new(MICRON, 30.0).unwrap();
    let xi1 = sys.xi(1);
    let c = |r: f64| first_order_residual(&sys, WP, r * xi1, &q).unwrap().value / (r * r);
    assert!(rel(c(1e-3), c(5e-4)) < 0.05);
    let f = free_energy(&Reflector::Permittivity(PermittivityModel::gold_drude()), &sys, &q).unwrap();
    assert!(c(1e-3).abs() < f.value.abs());
}

/// With a constant γ the expansion parameter γ/ξ_1 grows as T drops. Below
/// `ħγ/(2πk_B)` the residual no longer follows its small-γ trend and the
/// first-order term misses a sizeable share of the relaxation contribution.
#[test]
fn regime_guard_with_constant_relaxation() {
    let q = QuadratureSpec::with_rel_tol(1e-10);
    let gamma = 2.0 * PI * K_B * 10.0 / casimir_core::scales::HBAR;
    assert!((regime_guard_temperature(gamma) - 10.0).abs() < 1e-9);

    let probe = |t: f64| {
        let sys = PlateSystem::new(MICRON, t).unwrap();
        let r = gamma_over_xi1(gamma, t);
        let small = 1e-4;
        let trend = first_order_residual(&sys, WP, small * sys.xi(1), &q).unwrap().value / (small * small);
        let res = first_order_residual(&sys, WP, gamma, &q).unwrap().value;
        let parts = decomposed_free_energy_drude(&sys, WP, &RelaxationModel::Constant { gamma }, &q).unwrap();
        (res / (trend * r * r), (res / parts.difference.value).abs())
    };
    let (above_trend, above_missed) = probe(300.0);
    let (below_trend, below_missed) = probe(2.0);
    assert!((above_trend - 1.0).abs() < 0.05, "{above_trend}");
    assert!((below_trend - 1.0).abs() > 0.3, "{below_trend}");
    assert!(above_missed < 0.02);
    assert!(below_missed > 0.1);

    let input = ExpansionInput::new(&PlateSystem::new(MICRON, 2.0).unwrap(), WP).with_gamma(
        &PlateSystem::new(MICRON, 2.0).unwrap(),
        WP,
        gamma,
    );
    assert!(input.warnings().iter().any(|w| w.contains("gamma/xi_1")));
}

#[test]
fn expansion_input_flags_large_parameters() {
    let hot = ExpansionInput::new(&at_tau(0.1), WP);
    assert!(!hot.warnings().is_empty());
    let cold = ExpansionInput::new(&at_tau(1e-3), WP);
    assert!(cold.warnings().is_empty());
    assert!(rel(cold.alpha, C / (2.0 * MICRON * WP)) < 1e-12);
    let _ = ZETA2;
}
