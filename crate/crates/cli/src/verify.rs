use std::f64::consts::PI;

use casimir_core::asymptotics::{
    f_gamma_asymptotic, f_gamma_exact, first_order_residual, first_sum_closed_form, first_sum_exact,
    gamma_over_xi1, linear_term_quadrature, plasma_entropy_low_t, regime_guard_temperature,
    second_sum_closed_form, second_sum_exact,
};
use casimir_core::lifshitz::summation_limit;
use casimir_core::materials::{gold, gold_gamma0};
use casimir_core::scales::{C, HBAR, K_B, ZETA3};
use casimir_core::{
    decomposed_free_energy_drude, entropy, free_energy, free_energy_t0, matsubara_integral, pressure,
    DerivativeSpec, PlateSystem, QuadratureSpec, Reflector, RelaxationModel,
};
use serde::Serialize;

use crate::config::{preset, RunConfig};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Finding,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// Where the expected value comes from.
    pub kind: &'static str,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub passed: usize,
    pub failed: usize,
    pub findings: usize,
    pub skipped: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<40} {:<20} {:>14} {:>14} {:<14} {}\n",
            "check", "source", "measured", "expected", "tolerance", "status"
        );
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Finding => "FINDING",
                Status::Skipped => "SKIPPED",
            };
            out.push_str(&format!(
                "{:<40} {:<20} {:>14.6e} {:>14.6e} {:<14} {}",
                c.name, c.kind, c.measured, c.expected, c.tolerance, status
            ));
            if !c.detail.is_empty() {
                out.push_str(&format!("  ({})", c.detail));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} findings, {} skipped\n",
            self.passed, self.failed, self.findings, self.skipped
        ));
        out
    }
}

const ORACLE: &str = "independent oracle";
const REFERENCE: &str = "published value";
const CLOSED: &str = "closed form";
const IDENTITY: &str = "identity";

fn within_rel(name: &'static str, kind: &'static str, measured: f64, expected: f64, tol: f64) -> Check {
    let dev = ((measured - expected) / expected).abs();
    Check {
        name,
        kind,
        measured,
        expected,
        tolerance: format!("rel {tol:.0e}"),
        status: if dev <= tol { Status::Pass } else { Status::Fail },
        detail: format!("relative deviation {dev:.2e}"),
    }
}

struct Ctx {
    zeta3: f64,
    q: QuadratureSpec,
    fine: QuadratureSpec,
    d: DerivativeSpec,
}

fn reflector(name: &str) -> Reflector {
    preset(name).expect("built-in preset").0
}

fn t_eff(a: f64) -> Result<f64, CliError> {
    Ok(PlateSystem::new(a, 1.0)?.t_eff())
}

/// Σ k⁻³ with an Euler–Maclaurin tail.
fn zeta3_by_summation() -> f64 {
    let n = 1000u32;
    let head: f64 = (1..=n).rev().map(|k| (k as f64).powi(-3)).sum();
    let nf = n as f64;
    head + 1.0 / (2.0 * nf * nf) - 1.0 / (2.0 * nf.powi(3)) + 1.0 / (4.0 * nf.powi(4))
}

fn constants(ctx: &Ctx) -> Result<Vec<Check>, CliError> {
    Ok(vec![within_rel("zeta(3) constant", ORACLE, ctx.zeta3, zeta3_by_summation(), 1e-12)])
}

fn ideal_metal(ctx: &Ctx) -> Result<Vec<Check>, CliError> {
    let a = 1e-6;
    let te = t_eff(a)?;
    let e0 = free_energy_t0(&Reflector::Ideal, &PlateSystem::new(a, 1.0)?, &ctx.q)?;
    let t = 20.0 * te;
    let p = pressure(&Reflector::Ideal, a, t, &ctx.d, &ctx.q)?;
    Ok(vec![
        within_rel("ideal metal, T = 0 energy", CLOSED, e0.value, -PI * PI * HBAR * C / (720.0 * a.powi(3)), 1e-6),
        within_rel(
            "ideal metal, high-T pressure",
            CLOSED,
            p.value,
            -K_B * t * ctx.zeta3 / (4.0 * PI * a.powi(3)),
            1e-3,
        ),
    ])
}

fn high_temperature(ctx: &Ctx) -> Result<Vec<Check>, CliError> {
    let a = 1e-6;
    let sys = PlateSystem::new(a, 20.0 * t_eff(a)?)?;
    let fd = free_energy(&reflector("gold-drude"), &sys, &ctx.q)?.value;
    let fi = free_energy(&Reflector::Ideal, &sys, &ctx.q)?.value;
    Ok(vec![within_rel("Drude/ideal at T = 20 T_eff", REFERENCE, fd / fi, 0.5, 0.01)])
}

fn constant_reflectivity(ctx: &Ctx) -> Result<Vec<Check>, CliError> {
    let a = 1e-6;
    let sys = PlateSystem::new(a, t_eff(a)? / (2.0 * PI))?;
    let mut worst: f64 = 0.0;
    for rho in [0.1, 0.5, 0.9] {
        let r = Reflector::Constant {
            r_par_sq: rho,
            r_perp_sq: rho,
        };
        for l in [0u64, 1, 5] {
            let z = sys.zeta(l);
            let series: f64 = -2.0
                * (1..=400)
                    .map(|k| {
                        let k = k as f64;
                        rho.powf(k) * (1.0 + k * z) * (-k * z).exp() / k.powi(3)
                    })
                    .sum::<f64>();
            let got = matsubara_integral(&r, &sys, l, &ctx.fine)?.value;
            worst = worst.max(((got - series) / series).abs());
        }
    }
    Ok(vec![Check {
        name: "constant-reflectivity integral",
        kind: ORACLE,
        measured: worst,
        expected: 0.0,
        tolerance: "abs 1e-12".into(),
        status: if worst <= 1e-12 { Status::Pass } else { Status::Fail },
        detail: "max relative error over 9 points".into(),
    }])
}

fn decomposition(ctx: &Ctx) -> Result<Vec<Check>, CliError> {
    let drude = reflector("gold-drude");
    let mut worst: f64 = 0.0;
    for (a, t) in [(0.5e-6, 20.0), (1e-6, 300.0), (2e-6, 77.0), (3e-6, 1100.0)] {
        let sys = PlateSystem::new(a, t)?;
        let direct = free_energy(&drude, &sys, &ctx.q)?;
        let parts = decomposed_free_energy_drude(&sys, gold::OMEGA_P, &RelaxationModel::gold(), &ctx.q)?;
        worst = worst.max((direct.value - parts.total.value).abs() / (4.0 * direct.tolerance));
    }
    Ok(vec![Check {
        name: "Drude decomposition identity",
        kind: IDENTITY,
        measured: worst,
        expected: 0.0,
        tolerance: "<= 1 (4 tol)".into(),
        status: if worst <= 1.0 { Status::Pass } else { Status::Fail },
        detail: "max |direct - parts| / 4 tol over 4 points".into(),
    }])
}

fn nernst(ctx: &Ctx) -> Result<Vec<Check>, CliError> {
    let a = 1e-6;
    let x = C / (a * gold::OMEGA_P);
    let bracket = linear_term_quadrature(x, &ctx.fine)?;
    let te = t_eff(a)?;
    let s_drude = entropy(&reflector("gold-drude-quadratic"), a, te / 500.0, &ctx.d, &ctx.fine)?.value;
    let s0 = -K_B * ctx.zeta3 / (16.0 * PI * a * a) * 0.918;

    let imp = reflector("gold-impedance");
    let mut min = f64::INFINITY;
    let mut s5 = 0.0;
    let mut s10 = 0.0;
    for t in [1.0, 2.0, 5.0, 10.0, 30.0, 100.0, 300.0] {
        let s = entropy(&imp, a, t, &ctx.d, &ctx.fine)?.value;
        min = min.min(s);
        if t == 5.0 {
            s5 = s;
        }
        if t == 10.0 {
            s10 = s;
        }
    }
    let mut checks = vec![
        Check {
            name: "zero-mode bracket, a = 1 um",
            kind: REFERENCE,
            measured: bracket,
            expected: 0.918,
            tolerance: "abs 1e-4".into(),
            status: if (bracket - 0.918).abs() <= 1e-4 { Status::Pass } else { Status::Fail },
            detail: String::new(),
        },
        within_rel("Drude entropy at T_eff/500", REFERENCE, s_drude, s0, 0.05),
    ];
    let ok = min > 0.0 && s5 < s10;
    checks.push(Check {
        name: "impedance entropy positive, vanishing",
        kind: REFERENCE,
        measured: min,
        expected: 0.0,
        tolerance: "> 0".into(),
        status: if ok { Status::Pass } else { Status::Fail },
        detail: format!("min over 1-300 K; S(5 K) = {s5:.3e}, S(10 K) = {s10:.3e}"),
    });
    Ok(checks)
}

fn gaps(ctx: &Ctx) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    for (a, mpa, name) in [
        (300e-9, 4.89, "impedance-Drude gap, 300 nm (mPa)"),
        (500e-9, 1.23, "impedance-Drude gap, 500 nm (mPa)"),
    ] {
        let pi = pressure(&reflector("gold-impedance"), a, 300.0, &ctx.d, &ctx.q)?.value;
        let pd = pressure(&reflector("gold-drude"), a, 300.0, &ctx.d, &ctx.q)?.value;
        checks.push(within_rel(name, REFERENCE, (pi - pd).abs() * 1e3, mpa, 0.3));
    }
    Ok(checks)
}

fn expansions(ctx: &Ctx) -> Result<Vec<Check>, CliError> {
    let a = 1e-6;
    let te = t_eff(a)?;
    let tau = 1e-3;
    let sys = PlateSystem::new(a, tau * te)?;
    let gamma = gold_gamma0() * sys.temperature().powi(2);

    let hot = PlateSystem::new(a, 30.0)?;
    let xi1 = hot.xi(1);
    let mut pts = Vec::new();
    for r in [1e-5, 1e-4, 1e-3] {
        let res = first_order_residual(&hot, gold::OMEGA_P, r * xi1, &ctx.fine)?;
        pts.push((r.ln(), res.value.abs().ln()));
    }
    let slope = (pts[2].1 - pts[0].1) / (pts[2].0 - pts[0].0);

    let plasma = reflector("gold-plasma");
    let s_num = entropy(&plasma, a, 30.0, &ctx.d, &ctx.fine)?.value;
    let s_low = plasma_entropy_low_t(&hot, gold::OMEGA_P)?.value;

    Ok(vec![
        within_rel("first sum closed form, tau = 1e-3", CLOSED, first_sum_closed_form(tau), first_sum_exact(tau), 5e-3),
        within_rel(
            "second sum closed form, tau = 1e-3",
            CLOSED,
            second_sum_closed_form(tau),
            second_sum_exact(tau),
            5e-3,
        ),
        within_rel(
            "relaxation term asymptote, tau = 1e-3",
            CLOSED,
            f_gamma_asymptotic(&sys, gold::OMEGA_P, gamma)?.value,
            f_gamma_exact(&sys, gold::OMEGA_P, gamma)?.value,
            1e-2,
        ),
        within_rel("low-T plasma entropy at 30 K", CLOSED, s_low, s_num, 3e-2),
        Check {
            name: "first-order residual slope",
            kind: ORACLE,
            measured: slope,
            expected: 2.0,
            tolerance: "abs 0.2".into(),
            status: if (slope - 2.0).abs() <= 0.2 { Status::Pass } else { Status::Fail },
            detail: "gamma/xi_1 from 1e-5 to 1e-3".into(),
        },
    ])
}

/// Counts steps of |P(T)| that rise or fall by more than their error bars.
fn trend(name: &str, ctx: &Ctx) -> Result<(usize, usize), CliError> {
    let r = reflector(name);
    let temps: Vec<f64> = (0..120).map(|i| 1200f64.powf(i as f64 / 119.0)).collect();
    let ps = casimir_core::parallel::map_slice(ctx.fine.execution, &temps, |&t| {
        pressure(&r, 1e-6, t, &ctx.d, &ctx.fine)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let mut up = 0;
    let mut down = 0;
    for w in ps.windows(2) {
        let d = w[1].value.abs() - w[0].value.abs();
        let noise = w[0].est_error + w[1].est_error;
        if d > noise {
            up += 1;
        } else if d < -noise {
            down += 1;
        }
    }
    Ok((up, down))
}

fn morphology(ctx: &Ctx, quick: bool) -> Result<Vec<Check>, CliError> {
    let cases: [(&'static str, &str, bool); 5] = [
        ("impedance |P(T)| monotone", "gold-impedance", true),
        ("Drude |P(T)| non-monotone", "gold-drude", false),
        ("eps = 7 |P(T)| monotone", "mica", true),
        ("polar |P(T)| monotone", "polar", true),
        ("eps = 100 |P(T)| non-monotone", "eps100", false),
    ];
    let mut checks = Vec::new();
    for (label, name, monotone) in cases {
        if quick {
            checks.push(Check {
                name: label,
                kind: REFERENCE,
                measured: f64::NAN,
                expected: f64::NAN,
                tolerance: "-".into(),
                status: Status::Skipped,
                detail: "quick mode".into(),
            });
            continue;
        }
        let (up, down) = trend(name, ctx)?;
        let ok = if monotone { down == 0 } else { down > 0 && up > 0 };
        checks.push(Check {
            name: label,
            kind: REFERENCE,
            measured: down as f64,
            expected: if monotone { 0.0 } else { 1.0 },
            tolerance: if monotone { "== 0".into() } else { ">= 1".into() },
            status: if ok { Status::Pass } else { Status::Fail },
            detail: format!("{up} rising and {down} falling steps, 1-1200 K"),
        });
    }
    Ok(checks)
}

/// With a constant γ, compares the first-order residual against its
/// small-γ trend below the temperature where γ reaches ξ_1.
fn regime_guard(ctx: &Ctx, gamma: f64) -> Result<Check, CliError> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(CliError::Config("constant_gamma must be positive".into()));
    }
    let a = 1e-6;
    let t_guard = regime_guard_temperature(gamma);
    let floor = 1.05 * summation_limit(&PlateSystem::new(a, 1.0)?);
    let t = (0.2 * t_guard).max(floor);
    let sys = PlateSystem::new(a, t)?;
    let q = ctx.q;
    let r = gamma_over_xi1(gamma, t);
    let small = 1e-4;
    let trend = first_order_residual(&sys, gold::OMEGA_P, small * sys.xi(1), &q)?.value / (small * small);
    let res = first_order_residual(&sys, gold::OMEGA_P, gamma, &q)?.value;
    let parts = decomposed_free_energy_drude(&sys, gold::OMEGA_P, &RelaxationModel::Constant { gamma }, &q)?;
    let ratio = res / (trend * r * r);
    let missed = (res / parts.difference.value).abs();
    Ok(Check {
        name: "constant-gamma regime guard",
        kind: ORACLE,
        measured: ratio,
        expected: 1.0,
        tolerance: "trend".into(),
        status: Status::Finding,
        detail: format!(
            "gamma reaches xi_1 at {t_guard:.3} K; at T = {t:.3} K gamma/xi_1 = {r:.3}, residual is {ratio:.3} of \
             its small-gamma trend and the first-order term misses {:.1}% of the relaxation contribution{}",
            100.0 * missed,
            if t > t_guard { " (guard lies below the summation limit)" } else { "" }
        ),
    })
}

pub fn run_verify(cfg: &RunConfig) -> Result<Report, CliError> {
    let q = cfg.tolerances.quadrature(QuadratureSpec::default().rel_tol);
    let fine = cfg.tolerances.quadrature(1e-12);
    let d = cfg.tolerances.derivative();
    q.validate()?;
    fine.validate()?;
    d.validate()?;
    let ctx = Ctx {
        zeta3: cfg.constants.zeta3.unwrap_or(ZETA3),
        q,
        fine,
        d,
    };
    let mut checks = Vec::new();
    checks.extend(constants(&ctx)?);
    checks.extend(ideal_metal(&ctx)?);
    checks.extend(high_temperature(&ctx)?);
    checks.extend(constant_reflectivity(&ctx)?);
    checks.extend(decomposition(&ctx)?);
    checks.extend(nernst(&ctx)?);
    checks.extend(gaps(&ctx)?);
    checks.extend(expansions(&ctx)?);
    checks.extend(morphology(&ctx, cfg.quick)?);
    if let Some(gamma) = cfg.constant_gamma {
        checks.push(regime_guard(&ctx, gamma)?);
    }
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    Ok(Report {
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        findings: count(Status::Finding),
        skipped: count(Status::Skipped),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta3_summation_is_accurate() {
        assert!((zeta3_by_summation() - ZETA3).abs() < 1e-14);
    }

    #[test]
    fn relative_check_flags_deviation() {
        assert_eq!(within_rel("x", IDENTITY, 1.001, 1.0, 1e-2).status, Status::Pass);
        assert_eq!(within_rel("x", IDENTITY, 1.1, 1.0, 1e-2).status, Status::Fail);
    }
}
