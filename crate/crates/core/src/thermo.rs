//! Pressure and entropy as numerical derivatives of the free energy.
//!
//! Both use central differences `D(h) = [F(x+h) − F(x−h)] / 2h`. With
//! Richardson extrapolation the reported value is
//! `[64 D(h/4) − 20 D(h/2) + D(h)] / 45`, accurate to O(h⁶); otherwise it is
//! `D(h)`. The error estimate adds the truncation estimate to the
//! propagated free-energy errors.

use crate::error::{invalid, Result};
use crate::lifshitz::{free_energy, QuadratureSpec, ThermoResult};
use crate::parallel::map_slice;
use crate::reflection::Reflector;
use crate::scales::PlateSystem;

/// Step control for numerical derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeSpec {
    /// Step relative to the differentiated variable.
    pub rel_step: f64,
    /// Smallest temperature step (K).
    pub min_step_temperature: f64,
    /// Smallest separation step (m).
    pub min_step_length: f64,
    pub richardson: bool,
}

impl Default for DerivativeSpec {
    fn default() -> Self {
        Self {
            rel_step: 1e-3,
            min_step_temperature: 0.05,
            min_step_length: 1e-10,
            richardson: true,
        }
    }
}

impl DerivativeSpec {
    pub fn validate(&self) -> Result<()> {
        if !(1e-5..=1e-2).contains(&self.rel_step) {
            return invalid(format!("rel_step must lie in [1e-5, 1e-2], got {}", self.rel_step));
        }
        if !(self.min_step_temperature > 0.0 && self.min_step_length > 0.0) {
            return invalid("minimum derivative steps must be positive");
        }
        Ok(())
    }

    /// Step used for a temperature derivative at `t`.
    pub fn temperature_step(&self, t: f64) -> f64 {
        (self.rel_step * t).max(self.min_step_temperature)
    }

    /// Step used for a separation derivative at `a`.
    pub fn length_step(&self, a: f64) -> f64 {
        (self.rel_step * a).max(self.min_step_length)
    }

    fn offsets(&self, h: f64) -> Vec<f64> {
        let mut steps = vec![h, 0.5 * h];
        if self.richardson {
            steps.push(0.25 * h);
        }
        steps.iter().flat_map(|&s| [s, -s]).collect()
    }
}

/// Differentiates samples taken at `x + offsets[i]` (pairs `+s, −s` for
/// `s = h, h/2[, h/4]`). Returns `(value, truncation, noise, noise_allowance)`.
fn combine(samples: &[ThermoResult], h: f64, richardson: bool) -> (f64, f64, f64, f64) {
    let d = |i: usize, s: f64| (samples[2 * i].value - samples[2 * i + 1].value) / (2.0 * s);
    let d1 = d(0, h);
    let d2 = d(1, 0.5 * h);
    // weight on each F(x ± s) of the reported value
    let (value, trunc, weights) = if richardson {
        let d4 = d(2, 0.25 * h);
        let r2 = (64.0 * d4 - 20.0 * d2 + d1) / 45.0;
        let r1b = (4.0 * d4 - d2) / 3.0;
        (r2, (r2 - r1b).abs(), vec![1.0 / (90.0 * h), 20.0 / (45.0 * h), 128.0 / (45.0 * h)])
    } else {
        (d1, 4.0 / 3.0 * (d1 - d2).abs(), vec![1.0 / (2.0 * h), 0.0])
    };
    let mut noise = 0.0;
    let mut allowance = 0.0;
    for (i, w) in weights.iter().enumerate() {
        for s in &samples[2 * i..2 * i + 2] {
            noise += w * s.est_error;
            allowance += w * s.tolerance;
        }
    }
    (value, trunc, noise, allowance)
}

/// Central derivative of `F` along one variable; `at(offset)` builds the
/// shifted plate system.
fn differentiate<S>(
    reflector: &Reflector,
    x: f64,
    h: f64,
    at: S,
    sign: f64,
    dspec: &DerivativeSpec,
    qspec: &QuadratureSpec,
) -> Result<ThermoResult>
where
    S: Fn(f64) -> Result<PlateSystem> + Sync + Send,
{
    let offsets = dspec.offsets(h);
    let samples = map_slice(qspec.execution, &offsets, |&o| {
        let sys = at(o)?;
        free_energy(reflector, &sys, qspec)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let (slope, trunc, noise, allowance) = combine(&samples, h, dspec.richardson);
    let value = sign * slope;
    let est = trunc + noise;
    let tolerance = (qspec.rel_tol / dspec.rel_step * value.abs() + allowance).max(qspec.abs_floor / x);
    let l_max = samples.iter().map(|s| s.l_max_used).max().unwrap_or(0);
    let inner_ok = samples.iter().all(|s| s.converged);
    Ok(ThermoResult::judge(value, est, l_max, tolerance, inner_ok))
}

/// Casimir pressure `P = −∂F/∂a` (Pa). Attraction gives `P < 0`.
pub fn pressure(
    reflector: &Reflector,
    a: f64,
    temperature: f64,
    dspec: &DerivativeSpec,
    qspec: &QuadratureSpec,
) -> Result<ThermoResult> {
    dspec.validate()?;
    qspec.validate()?;
    PlateSystem::new(a, temperature)?;
    let h = dspec.length_step(a);
    if h >= a {
        return invalid("separation step exceeds the separation");
    }
    differentiate(
        reflector,
        a,
        h,
        |o| PlateSystem::new(a + o, temperature),
        -1.0,
        dspec,
        qspec,
    )
}

/// Casimir entropy `S = −∂F/∂T` (J/(K·m²)). The relaxation parameter is
/// re-evaluated at every shifted temperature.
pub fn entropy(
    reflector: &Reflector,
    a: f64,
    temperature: f64,
    dspec: &DerivativeSpec,
    qspec: &QuadratureSpec,
) -> Result<ThermoResult> {
    dspec.validate()?;
    qspec.validate()?;
    PlateSystem::new(a, temperature)?;
    let h = dspec.temperature_step(temperature);
    if h >= temperature {
        return invalid(format!("temperature step {h} K does not fit below T = {temperature} K"));
    }
    differentiate(
        reflector,
        temperature,
        h,
        |o| PlateSystem::new(a, temperature + o),
        -1.0,
        dspec,
        qspec,
    )
}
