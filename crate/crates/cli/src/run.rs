use casimir_core::parallel::map_slice;
use casimir_core::{
    entropy, free_energy, pressure, DerivativeSpec, PlateSystem, QuadratureSpec, Reflector, ThermoResult,
};

use crate::config::{preset, Command, Quantity, RangeSpec, RunConfig};
use crate::table::{Series, Sweep};
use crate::CliError;

/// Figure presets resolve the curvature of |P(T)| cleanly at this tolerance.
const FIGURE_REL_TOL: f64 = 1e-12;
const FIGURE_RANGE: RangeSpec = RangeSpec::log(1.0, 1200.0, 120);

struct Numerics {
    q: QuadratureSpec,
    d: DerivativeSpec,
}

fn evaluate(
    reflector: &Reflector,
    quantity: Quantity,
    a: f64,
    t: f64,
    n: &Numerics,
) -> Result<ThermoResult, CliError> {
    let r = match quantity {
        Quantity::FreeEnergy => {
            let sys = PlateSystem::new(a, t)?;
            free_energy(reflector, &sys, &n.q)?
        }
        Quantity::Pressure => pressure(reflector, a, t, &n.d, &n.q)?,
        Quantity::Entropy => entropy(reflector, a, t, &n.d, &n.q)?,
    };
    if !r.value.is_finite() || !r.est_error.is_finite() {
        return Err(CliError::Numerical(format!(
            "non-finite {} at a = {a} m, T = {t} K",
            quantity.symbol()
        )));
    }
    Ok(r)
}

/// Evaluates one curve over `xs`, points in parallel, rows in index order.
fn curve(
    reflector: &Reflector,
    label: String,
    xs: &[f64],
    n: &Numerics,
    point: impl Fn(f64) -> (f64, f64) + Sync,
    quantity: Quantity,
) -> Result<Series, CliError> {
    let points = map_slice(n.q.execution, xs, |&x| {
        let (a, t) = point(x);
        evaluate(reflector, quantity, a, t, n)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    Ok(Series { label, points })
}

fn temperature_sweep(
    title: String,
    models: &[(Reflector, String)],
    quantity: Quantity,
    magnitude: bool,
    a: f64,
    range: &RangeSpec,
    n: &Numerics,
) -> Result<Sweep, CliError> {
    range.validate("t_range")?;
    let xs = range.grid();
    let series = models
        .iter()
        .map(|(r, label)| curve(r, label.clone(), &xs, n, |t| (a, t), quantity))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Sweep {
        x_name: "T",
        x_unit: "K",
        log_x: matches!(range.spacing, crate::config::Spacing::Log),
        x: xs,
        magnitude,
        symbol: quantity.symbol(),
        unit: quantity.unit(),
        title,
        series,
    })
}

fn presets(names: &[&str]) -> Vec<(Reflector, String)> {
    names
        .iter()
        .map(|n| {
            let (r, label) = preset(n).expect("built-in preset");
            (r, label.to_string())
        })
        .collect()
}

/// Runs a sweep or figure command.
pub fn run_sweep(cfg: &RunConfig, command: Command) -> Result<Sweep, CliError> {
    let figure = matches!(command, Command::Figure1 | Command::Figure2 | Command::Figure3);
    let n = Numerics {
        q: cfg
            .tolerances
            .quadrature(if figure { FIGURE_REL_TOL } else { QuadratureSpec::default().rel_tol }),
        d: cfg.tolerances.derivative(),
    };
    n.q.validate()?;
    n.d.validate()?;
    let a = cfg.separation()?;
    let t_range = cfg.t_range.unwrap_or(if figure {
        FIGURE_RANGE
    } else {
        RangeSpec::log(10.0, 1200.0, 60)
    });
    let a_um = a * 1e6;
    match command {
        Command::Figure1 => temperature_sweep(
            format!("Casimir pressure magnitude, Au, a = {a_um} um"),
            &presets(&["gold-impedance", "gold-drude"]),
            Quantity::Pressure,
            true,
            a,
            &t_range,
            &n,
        ),
        Command::Figure2 => temperature_sweep(
            format!("Casimir pressure magnitude, dielectrics, a = {a_um} um"),
            &presets(&["mica", "eps100", "polar"]),
            Quantity::Pressure,
            true,
            a,
            &t_range,
            &n,
        ),
        Command::Figure3 => temperature_sweep(
            format!("Casimir entropy, Au, a = {a_um} um"),
            &presets(&["gold-impedance", "gold-drude"]),
            Quantity::Entropy,
            false,
            a,
            &t_range,
            &n,
        ),
        Command::SweepT => {
            let quantity = cfg.quantity.unwrap_or_default();
            let model = material(cfg)?;
            temperature_sweep(
                format!("{} vs temperature, a = {a_um} um", quantity.symbol()),
                &[model],
                quantity,
                false,
                a,
                &t_range,
                &n,
            )
        }
        Command::SweepA => {
            let quantity = cfg.quantity.unwrap_or_default();
            let (reflector, label) = material(cfg)?;
            let t = cfg.temperature.unwrap_or(300.0);
            let range = cfg.a_range.unwrap_or(RangeSpec::log(0.3e-6, 3e-6, 40));
            range.validate("a_range")?;
            let xs = range.grid();
            let series = curve(&reflector, label, &xs, &n, |a| (a, t), quantity)?;
            Ok(Sweep {
                x_name: "a",
                x_unit: "m",
                log_x: matches!(range.spacing, crate::config::Spacing::Log),
                x: xs,
                magnitude: false,
                symbol: quantity.symbol(),
                unit: quantity.unit(),
                title: format!("{} vs separation, T = {t} K", quantity.symbol()),
                series: vec![series],
            })
        }
        Command::Verify => unreachable!("verify is not a sweep"),
    }
}

fn material(cfg: &RunConfig) -> Result<(Reflector, String), CliError> {
    match &cfg.material {
        Some(m) => m.resolve(),
        None => Ok(presets(&["gold-drude"]).remove(0)),
    }
}
