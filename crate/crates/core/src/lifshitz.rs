//! Matsubara sum over the Lifshitz integrals for two parallel plates.
//!
//! ```text
//! F(a, T) = k_B T / (8π a²) · Σ'_l ∫_{ζ_l}^∞ y dy [ln(1 − r∥² e^{−y}) + ln(1 − r⊥² e^{−y})]
//! ```
//!
//! The primed sum weights `l = 0` by one half. Each inner integral is
//! computed by adaptive Gauss–Kronrod quadrature on `[ζ_l, ζ_l + 40]`
//! (extended if needed) and closed with the bound
//! `|∫_Y^∞| ≤ 2 (Y + 1) e^{−Y} / (1 − e^{−Y})`, valid for any `0 ≤ r² ≤ 1`.
//! Terms are evaluated in parallel chunks and reduced in index order.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::materials::{PermittivityModel, RelaxationModel};
use crate::parallel::{map_range, map_slice, Execution};
use crate::quadrature::{integrate, QuadOutcome};
use crate::reflection::{plasma_zero_mode_te, Mode, Reflector};
use crate::scales::{PlateSystem, C, HBAR, K_B};
use crate::sum::Neumaier;

/// Direct summation is refused below `T_eff / 2000`.
pub const SUMMATION_LIMIT_FRACTION: f64 = 1.0 / 2000.0;

/// Per-term quadrature never asks for less than this relative error; the
/// Kronrod round-off floor sits at about 1.1e-14.
const TERM_REL_FLOOR: f64 = 5e-14;

/// Tolerances for the Lifshitz quadrature and summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    /// Absolute floor on the free energy error (J/m²).
    pub abs_floor: f64,
    /// Maximum number of Kronrod panels per integral.
    pub max_subdivisions: usize,
    pub execution: Execution,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_floor: 1e-25,
            max_subdivisions: 60,
            execution: Execution::Parallel,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn sequential(mut self) -> Self {
        self.execution = Execution::Sequential;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-3) {
            return invalid(format!("rel_tol must lie in (0, 1e-3], got {}", self.rel_tol));
        }
        if !(self.abs_floor >= 0.0) {
            return invalid("abs_floor must be non-negative");
        }
        if self.max_subdivisions < 10 {
            return invalid("max_subdivisions must be at least 10");
        }
        Ok(())
    }

    fn term_rel_tol(&self) -> f64 {
        (0.1 * self.rel_tol).max(TERM_REL_FLOOR)
    }
}

/// A free energy (J/m²), pressure (Pa) or entropy (J/(K·m²)) with
/// convergence metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoResult {
    pub value: f64,
    /// Highest Matsubara index included (0 for continuous-frequency results).
    pub l_max_used: u64,
    pub est_error: f64,
    pub converged: bool,
    /// The error bound `converged` was judged against.
    pub tolerance: f64,
}

impl ThermoResult {
    pub(crate) fn judge(value: f64, est_error: f64, l_max_used: u64, tolerance: f64, inner_ok: bool) -> Self {
        Self {
            value,
            l_max_used,
            est_error,
            converged: inner_ok && est_error <= tolerance,
            tolerance,
        }
    }
}

/// `k_B T / (8π a²)`.
pub fn free_energy_prefactor(sys: &PlateSystem) -> f64 {
    K_B * sys.temperature() / (8.0 * PI * sys.a() * sys.a())
}

/// Lowest temperature accepted by the direct Matsubara summation.
pub fn summation_limit(sys: &PlateSystem) -> f64 {
    sys.t_eff() * SUMMATION_LIMIT_FRACTION
}

/// Bound on `|∫_{y0}^∞ y [ln(1 − r∥²e^{−y}) + ln(1 − r⊥²e^{−y})] dy|`.
pub fn integral_tail_bound(y0: f64) -> f64 {
    if y0 <= 0.0 {
        return f64::INFINITY;
    }
    2.0 * (y0 + 1.0) * (-y0).exp() / -(-y0).exp_m1()
}

/// Bound on `Σ_{l > last} |I(ζ_l)|` for spacing `step`.
fn sum_tail_bound(zeta_last: f64, step: f64) -> f64 {
    let q = (-step).exp();
    let first = zeta_last + step;
    let pre = 2.0 * (-zeta_last).exp() / -(-first).exp_m1();
    pre * ((zeta_last + 1.0) * q / (1.0 - q) + step * q / ((1.0 - q) * (1.0 - q)))
}

fn breakpoints(zeta: f64, upper: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    if zeta == 0.0 {
        pts.extend_from_slice(&[1e-3, 1e-2, 0.1]);
    } else if zeta < 0.5 {
        for s in [1.0, 10.0, 100.0] {
            let t = s * zeta;
            if t < 0.5 {
                pts.push(t);
            }
        }
    }
    for t in [0.5, 2.0, 5.0, 10.0, 20.0] {
        if t > *pts.last().unwrap() && t < upper {
            pts.push(t);
        }
    }
    pts.push(upper);
    pts
}

/// `∫_{ζ}^∞ y g(y) dy` where `|g(y)| ≤ 2 e^{−y}/(1 − e^{−y})`, with the tail
/// beyond the integration range bounded analytically.
pub(crate) fn semi_infinite_integral<G: Fn(f64) -> f64>(
    g: G,
    zeta: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> QuadOutcome {
    let mut span = 40.0;
    let mut total = QuadOutcome {
        value: 0.0,
        abs_error: 0.0,
        converged: true,
        intervals: 0,
        evaluations: 0,
    };
    let mut lo = 0.0;
    let f = |t: f64| {
        let y = zeta + t;
        y * g(y)
    };
    loop {
        let pts = if lo == 0.0 {
            breakpoints(zeta, span)
        } else {
            vec![lo, span]
        };
        let part = integrate(f, &pts, rel_tol, abs_tol, max_subdivisions);
        total.value += part.value;
        total.abs_error += part.abs_error;
        total.converged &= part.converged;
        total.intervals += part.intervals;
        total.evaluations += part.evaluations;
        let tail = integral_tail_bound(zeta + span);
        let tol = (rel_tol * total.value.abs()).max(abs_tol);
        if tail <= 0.1 * tol || span >= 400.0 {
            total.abs_error += tail;
            return total;
        }
        lo = span;
        span *= 2.0;
    }
}

/// Inner integral of one mode.
pub(crate) fn mode_integral(mode: &Mode, zeta: f64, rel_tol: f64, abs_tol: f64, max_sub: usize) -> QuadOutcome {
    semi_infinite_integral(|y| mode.pair(y).log_sum(y), zeta, rel_tol, abs_tol, max_sub)
}

/// The dimensionless integral `∫_{ζ_l}^∞ y dy [ln(1 − r∥²e^{−y}) + ln(1 − r⊥²e^{−y})]`
/// for Matsubara index `l`. Always ≤ 0.
pub fn matsubara_integral(
    reflector: &Reflector,
    sys: &PlateSystem,
    l: u64,
    spec: &QuadratureSpec,
) -> Result<QuadOutcome> {
    spec.validate()?;
    let bound = reflector.bind(sys)?;
    let mode = bound.mode(l)?;
    Ok(mode_integral(&mode, sys.zeta(l), spec.term_rel_tol(), 0.0, spec.max_subdivisions))
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Term {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

impl From<QuadOutcome> for Term {
    fn from(q: QuadOutcome) -> Self {
        Term {
            value: q.value,
            error: q.abs_error,
            converged: q.converged,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SumOutcome {
    pub total: f64,
    pub error: f64,
    pub l_max: u64,
    pub converged: bool,
}

/// Σ'_{l ≥ start} term(l), weighting `l = 0` by one half. Stops once three
/// consecutive terms fall below `max(rel_tol·|partial|, abs_tol)` past
/// ζ_l = 30 and the remaining tail bound is below a tenth of that.
/// `tail(ζ_last, step)` bounds the sum of everything after `ζ_last`.
pub(crate) fn matsubara_sum<F, B>(
    sys: &PlateSystem,
    start: u64,
    spec: &QuadratureSpec,
    abs_tol: f64,
    term: F,
    tail: B,
) -> Result<SumOutcome>
where
    F: Fn(u64) -> Result<Term> + Sync + Send,
    B: Fn(f64, f64) -> f64,
{
    let step = sys.zeta_step();
    let rel = spec.rel_tol;
    // every term up to ζ = 30 is needed regardless of the stopping rule
    let mut next = start;
    let mut batch_end = start.max((30.0 / step).ceil() as u64 + 4);
    let mut acc = Neumaier::default();
    let mut error = 0.0;
    let mut converged = true;
    let mut small_run = 0;
    loop {
        let terms = map_range(spec.execution, next, batch_end, &term);
        for (i, t) in terms.into_iter().enumerate() {
            let l = next + i as u64;
            let t = t?;
            if !t.value.is_finite() {
                return Err(Error::NonFinite(format!("Matsubara term l = {l}")));
            }
            let w = if l == 0 { 0.5 } else { 1.0 };
            acc.add(w * t.value);
            error += w * t.error;
            converged &= t.converged;
            let partial = acc.total();
            let tol = (rel * partial.abs()).max(abs_tol);
            let zeta = sys.zeta(l);
            if zeta > 30.0 && (w * t.value).abs() < tol {
                small_run += 1;
            } else {
                small_run = 0;
            }
            if small_run >= 3 {
                let tb = tail(zeta, step);
                if tb <= 0.1 * tol {
                    return Ok(SumOutcome {
                        total: partial,
                        error: error + tb,
                        l_max: l,
                        converged,
                    });
                }
            }
        }
        next = batch_end;
        batch_end = next + 64;
        if sys.zeta(next) > 2000.0 {
            return Ok(SumOutcome {
                total: acc.total(),
                error: error + tail(sys.zeta(next - 1), step),
                l_max: next - 1,
                converged: false,
            });
        }
    }
}

fn check_summable(sys: &PlateSystem) -> Result<()> {
    if !(sys.temperature() > 0.0) {
        return invalid("free energy summation needs T > 0");
    }
    let limit = summation_limit(sys);
    if sys.temperature() < limit {
        return Err(Error::BelowSummationLimit {
            temperature: sys.temperature(),
            limit,
        });
    }
    Ok(())
}

/// Casimir free energy per unit area (J/m²).
pub fn free_energy(reflector: &Reflector, sys: &PlateSystem, spec: &QuadratureSpec) -> Result<ThermoResult> {
    spec.validate()?;
    check_summable(sys)?;
    let bound = reflector.bind(sys)?;
    let pre = free_energy_prefactor(sys);
    let abs_tol = spec.abs_floor / pre;
    let term_rel = spec.term_rel_tol();
    let sum = matsubara_sum(
        sys,
        0,
        spec,
        0.01 * abs_tol,
        |l| {
            let mode = bound.mode(l)?;
            Ok(mode_integral(&mode, sys.zeta(l), term_rel, 1e-3 * abs_tol, spec.max_subdivisions).into())
        },
        sum_tail_bound,
    )?;
    let value = pre * sum.total;
    let est = pre * sum.error;
    Ok(ThermoResult::judge(
        value,
        est,
        sum.l_max,
        (spec.rel_tol * value.abs()).max(spec.abs_floor),
        sum.converged,
    ))
}

const T0_SEGMENTS: [f64; 14] = [0.0, 0.02, 0.1, 0.3, 0.6, 1.0, 1.6, 2.5, 4.0, 6.0, 9.0, 14.0, 22.0, 36.0];
const T0_UPPER: f64 = 50.0;

/// Zero-temperature energy per unit area (J/m²):
/// `E(a) = ħc/(32π²a³) ∫₀^∞ dζ ∫_ζ^∞ y dy [ln(1 − r∥²e^{−y}) + ln(1 − r⊥²e^{−y})]`.
/// The temperature of `sys` only enters through γ(T) of Drude models.
pub fn free_energy_t0(reflector: &Reflector, sys: &PlateSystem, spec: &QuadratureSpec) -> Result<ThermoResult> {
    spec.validate()?;
    let bound = reflector.bind(sys)?;
    let pre = HBAR * C / (32.0 * PI * PI * sys.a().powi(3));
    let inner_rel = spec.term_rel_tol();
    let outer_rel = (0.5 * spec.rel_tol).max(TERM_REL_FLOOR);
    let abs_tol = spec.abs_floor / pre;
    let mut segments: Vec<(f64, f64)> = T0_SEGMENTS.windows(2).map(|w| (w[0], w[1])).collect();
    segments.push((*T0_SEGMENTS.last().unwrap(), T0_UPPER));
    let parts = map_slice(spec.execution, &segments, |&(lo, hi)| {
        let failure = std::sync::Mutex::new(None);
        let inner_err = std::sync::Mutex::new(0.0f64);
        let f = |zeta: f64| match bound.mode_at(zeta) {
            Ok(mode) => {
                let q = mode_integral(&mode, zeta, inner_rel, 1e-3 * abs_tol, spec.max_subdivisions);
                let mut e = inner_err.lock().unwrap();
                *e = e.max(q.abs_error);
                q.value
            }
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                0.0
            }
        };
        let out = integrate(f, &[lo, hi], outer_rel, 1e-3 * abs_tol, spec.max_subdivisions);
        let inner = *inner_err.lock().unwrap();
        match failure.into_inner().unwrap() {
            Some(e) => Err(e),
            None => Ok((out, inner * (hi - lo))),
        }
    });
    let mut acc = Neumaier::default();
    let mut err = 0.0;
    let mut ok = true;
    for p in parts {
        let (q, inner) = p?;
        acc.add(q.value);
        err += q.abs_error + inner;
        ok &= q.converged;
    }
    // ∫_Z^∞ of the per-mode bound 2(ζ+1)e^{−ζ}/(1−e^{−ζ})
    let tail = 2.0 * (T0_UPPER + 2.0) * (-T0_UPPER).exp() / -(-T0_UPPER).exp_m1();
    err += tail;
    let value = pre * acc.total();
    Ok(ThermoResult::judge(
        value,
        pre * err,
        0,
        (spec.rel_tol * value.abs()).max(spec.abs_floor),
        ok,
    ))
}

/// The Drude free energy split into the plasma free energy, the missing
/// TE zero-mode term and the Drude−plasma difference over `l ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeDecomposition {
    pub plasma: ThermoResult,
    /// `−k_B T/(16π a²) ∫₀^∞ y ln(1 − r⊥^(p)²(0, y) e^{−y}) dy`, positive.
    pub zero_mode_te: ThermoResult,
    /// `k_B T/(8π a²) Σ_{l≥1} ∫ y [ln(1 − r_D² e^{−y}) − ln(1 − r_p² e^{−y})]` over both polarizations.
    pub difference: ThermoResult,
    pub total: ThermoResult,
}

/// `∫₀^∞ y ln(1 − r⊥^(p)²(0, y) e^{−y}) dy` for the plasma TE zero mode.
pub fn plasma_zero_mode_te_integral(omega_p_tilde: f64, spec: &QuadratureSpec) -> QuadOutcome {
    semi_infinite_integral(
        |y| plasma_zero_mode_te(omega_p_tilde, y).log_factor(y),
        0.0,
        (0.01 * spec.rel_tol).max(TERM_REL_FLOOR),
        0.0,
        spec.max_subdivisions.max(100),
    )
}

/// `ln[(1 − r_D² e^{−y}) / (1 − r_p² e^{−y})]` for one polarization.
#[inline]
fn log_ratio(d: crate::reflection::Coefficient, p: crate::reflection::Coefficient, y: f64) -> f64 {
    let e = (-y).exp();
    let denom = p.one_minus_r2() - p.r2() * (-y).exp_m1();
    ((p.r2() - d.r2()) * e / denom).ln_1p()
}

/// Splits the Drude free energy into plasma, zero-mode and difference terms.
pub fn decomposed_free_energy_drude(
    sys: &PlateSystem,
    omega_p: f64,
    relaxation: &RelaxationModel,
    spec: &QuadratureSpec,
) -> Result<DrudeDecomposition> {
    spec.validate()?;
    check_summable(sys)?;
    let plasma_model = Reflector::Permittivity(PermittivityModel::Plasma { omega_p });
    let drude_model = Reflector::Permittivity(PermittivityModel::Drude {
        omega_p,
        relaxation: relaxation.clone(),
    });
    let plasma = free_energy(&plasma_model, sys, spec)?;
    let pre = free_energy_prefactor(sys);

    let wt = omega_p / sys.omega_c();
    let zq = plasma_zero_mode_te_integral(wt, spec);
    let zero_value = -0.5 * pre * zq.value;
    let zero_mode_te = ThermoResult::judge(
        zero_value,
        0.5 * pre * zq.abs_error,
        0,
        (spec.rel_tol * zero_value.abs()).max(spec.abs_floor),
        zq.converged,
    );

    let bd = drude_model.bind(sys)?;
    let bp = plasma_model.bind(sys)?;
    let abs_tol = (spec.rel_tol * plasma.value.abs()).max(spec.abs_floor) / pre;
    let term_rel = spec.term_rel_tol();
    let sum = matsubara_sum(
        sys,
        1,
        spec,
        0.1 * abs_tol,
        |l| {
            let (md, mp) = (bd.mode(l)?, bp.mode(l)?);
            let g = |y: f64| {
                let (d, p) = (md.pair(y), mp.pair(y));
                log_ratio(d.par, p.par, y) + log_ratio(d.perp, p.perp, y)
            };
            Ok(semi_infinite_integral(g, sys.zeta(l), term_rel, 1e-3 * abs_tol, spec.max_subdivisions).into())
        },
        sum_tail_bound,
    )?;
    let diff_value = pre * sum.total;
    let difference = ThermoResult::judge(
        diff_value,
        pre * sum.error,
        sum.l_max,
        (spec.rel_tol * plasma.value.abs()).max(spec.abs_floor),
        sum.converged,
    );
    let value = plasma.value + zero_mode_te.value + difference.value;
    let est = plasma.est_error + zero_mode_te.est_error + difference.est_error;
    let total = ThermoResult::judge(
        value,
        est,
        plasma.l_max_used.max(difference.l_max_used),
        (spec.rel_tol * value.abs()).max(spec.abs_floor),
        plasma.converged && zero_mode_te.converged && difference.converged,
    );
    Ok(DrudeDecomposition {
        plasma,
        zero_mode_te,
        difference,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scales::ZETA3;

    #[test]
    fn tail_bounds_dominate_ideal_metal() {
        // ideal metal: |∫_Y^∞ 2 y ln(1-e^{-y})| is the tightest case
        for y0 in [0.5, 2.0, 10.0, 30.0] {
            let exact: f64 = (1..200)
                .map(|k| {
                    let k = k as f64;
                    2.0 * (-k * y0).exp() * (y0 / k + 1.0 / (k * k))
                })
                .sum();
            assert!(integral_tail_bound(y0) >= exact, "{y0}");
        }
        let step = 0.1;
        let direct: f64 = (1..100_000).map(|j| integral_tail_bound(30.0 + j as f64 * step)).sum();
        assert!(sum_tail_bound(30.0, step) >= direct * (1.0 - 1e-12));
    }

    #[test]
    fn ideal_and_drude_zero_mode_integrals() {
        let sys = PlateSystem::new(1e-6, 300.0).unwrap();
        let spec = QuadratureSpec::with_rel_tol(1e-12);
        let ideal = matsubara_integral(&Reflector::Ideal, &sys, 0, &spec).unwrap();
        assert!((ideal.value + 2.0 * ZETA3).abs() < 1e-11 * 2.0 * ZETA3, "{ideal:?}");
        let drude = Reflector::Permittivity(PermittivityModel::gold_drude());
        let d = matsubara_integral(&drude, &sys, 0, &spec).unwrap();
        assert!((d.value + ZETA3).abs() < 1e-11 * ZETA3, "{d:?}");
        let zero = Reflector::Constant {
            r_par_sq: 0.0,
            r_perp_sq: 0.0,
        };
        assert_eq!(matsubara_integral(&zero, &sys, 3, &spec).unwrap().value, 0.0);
    }

    #[test]
    fn refuses_very_low_temperature() {
        let sys = PlateSystem::new(1e-6, 0.1).unwrap();
        let r = free_energy(&Reflector::Ideal, &sys, &QuadratureSpec::default());
        assert!(matches!(r, Err(Error::BelowSummationLimit { .. })));
        let sys0 = PlateSystem::new(1e-6, 0.0).unwrap();
        assert!(free_energy(&Reflector::Ideal, &sys0, &QuadratureSpec::default()).is_err());
    }

    #[test]
    fn quadrature_settings_validation() {
        assert!(QuadratureSpec::with_rel_tol(0.0).validate().is_err());
        assert!(QuadratureSpec::with_rel_tol(1e-2).validate().is_err());
        let s = QuadratureSpec {
            max_subdivisions: 5,
            ..QuadratureSpec::default()
        };
        assert!(s.validate().is_err());
        assert!(QuadratureSpec::default().validate().is_ok());
    }
}
