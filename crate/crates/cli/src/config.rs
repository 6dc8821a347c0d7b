use std::fs;
use std::path::{Path, PathBuf};

use casimir_core::materials::{gold, DebyeTerm};
use casimir_core::{
    DerivativeSpec, Execution, ImpedanceModel, PermittivityModel, QuadratureSpec, Reflector, RelaxationModel,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    #[value(name = "sweep-T")]
    #[serde(rename = "sweep-T")]
    SweepT,
    SweepA,
    Figure1,
    Figure2,
    Figure3,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    FreeEnergy,
    #[default]
    Pressure,
    Entropy,
}

impl Quantity {
    pub fn symbol(self) -> &'static str {
        match self {
            Quantity::FreeEnergy => "F",
            Quantity::Pressure => "P",
            Quantity::Entropy => "S",
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            Quantity::FreeEnergy => "J/m^2",
            Quantity::Pressure => "Pa",
            Quantity::Entropy => "J/(K m^2)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Svg,
    Both,
}

impl Format {
    pub fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }

    pub fn svg(self) -> bool {
        matches!(self, Format::Svg | Format::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spacing {
    Linear,
    #[default]
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl RangeSpec {
    pub const fn log(start: f64, stop: f64, points: usize) -> Self {
        Self {
            start,
            stop,
            points,
            spacing: Spacing::Log,
        }
    }

    pub fn validate(&self, what: &str) -> Result<(), CliError> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(CliError::Config(format!("{what}: need finite start < stop")));
        }
        if self.points < 2 {
            return Err(CliError::Config(format!("{what}: need at least 2 points")));
        }
        if self.start <= 0.0 {
            return Err(CliError::Config(format!("{what}: start must be positive")));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        let last = (n - 1) as f64;
        (0..n)
            .map(|i| {
                let f = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + (self.stop - self.start) * f,
                    Spacing::Log => self.start * (self.stop / self.start).powf(f),
                }
            })
            .collect()
    }
}

/// Numerical knobs; anything left out keeps the library default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub rel_tol: Option<f64>,
    pub abs_floor: Option<f64>,
    pub max_subdivisions: Option<usize>,
    pub rel_step: Option<f64>,
    pub richardson: Option<bool>,
    pub sequential: Option<bool>,
}

impl Tolerances {
    pub fn quadrature(&self, default_rel_tol: f64) -> QuadratureSpec {
        let mut q = QuadratureSpec::with_rel_tol(self.rel_tol.unwrap_or(default_rel_tol));
        if let Some(v) = self.abs_floor {
            q.abs_floor = v;
        }
        if let Some(v) = self.max_subdivisions {
            q.max_subdivisions = v;
        }
        if self.sequential == Some(true) {
            q.execution = Execution::Sequential;
        }
        q
    }

    pub fn derivative(&self) -> DerivativeSpec {
        let mut d = DerivativeSpec::default();
        if let Some(v) = self.rel_step {
            d.rel_step = v;
        }
        if let Some(v) = self.richardson {
            d.richardson = v;
        }
        d
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantOverrides {
    pub zeta3: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params", rename_all = "kebab-case")]
pub enum RelaxationSpec {
    Constant {
        gamma: f64,
    },
    Quadratic {
        gamma0: f64,
    },
    Composite {
        gamma_res: f64,
        a_ee: f64,
        bg_amplitude: f64,
        debye_temperature: f64,
    },
    /// The calibrated gold model with an optional residual term.
    Gold {
        #[serde(default)]
        gamma_res: f64,
    },
    Table {
        nodes: Vec<(f64, f64)>,
    },
}

impl RelaxationSpec {
    fn build(&self) -> Result<RelaxationModel, CliError> {
        Ok(match self {
            RelaxationSpec::Constant { gamma } => RelaxationModel::Constant { gamma: *gamma },
            RelaxationSpec::Quadratic { gamma0 } => RelaxationModel::QuadraticLaw { gamma0: *gamma0 },
            RelaxationSpec::Composite {
                gamma_res,
                a_ee,
                bg_amplitude,
                debye_temperature,
            } => RelaxationModel::Composite {
                gamma_res: *gamma_res,
                a_ee: *a_ee,
                bg_amplitude: *bg_amplitude,
                debye_temperature: *debye_temperature,
            },
            RelaxationSpec::Gold { gamma_res } => {
                if gamma_res.is_nan() || *gamma_res < 0.0 {
                    return Err(CliError::Config("gamma_res must be non-negative".into()));
                }
                RelaxationModel::gold_with_residual(*gamma_res)
            }
            RelaxationSpec::Table { nodes } => {
                RelaxationModel::table(nodes.clone()).map_err(|e| CliError::Config(e.to_string()))?
            }
        })
    }
}

fn gold_omega_p() -> f64 {
    gold::OMEGA_P
}

fn gold_relaxation() -> RelaxationSpec {
    RelaxationSpec::Gold { gamma_res: 0.0 }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DebyeSpec {
    pub strength: f64,
    pub frequency: f64,
}

/// A material as written in a JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum MaterialSpec {
    Drude {
        #[serde(default = "gold_omega_p")]
        omega_p: f64,
        #[serde(default = "gold_relaxation")]
        relaxation: RelaxationSpec,
    },
    Plasma {
        #[serde(default = "gold_omega_p")]
        omega_p: f64,
    },
    ConstantEps {
        eps: f64,
    },
    PolarDebye {
        debye_terms: Vec<DebyeSpec>,
    },
    ImpedanceInfrared {
        #[serde(default = "gold_omega_p")]
        omega_p: f64,
    },
    ImpedanceLeontovich {
        permittivity: Box<MaterialSpec>,
    },
    Ideal,
    ConstantReflectivity {
        r_par_sq: f64,
        r_perp_sq: f64,
    },
}

impl MaterialSpec {
    fn permittivity(&self) -> Result<PermittivityModel, CliError> {
        match self.build()? {
            Reflector::Permittivity(m) => Ok(m),
            _ => Err(CliError::Config("expected a permittivity model".into())),
        }
    }

    pub fn build(&self) -> Result<Reflector, CliError> {
        let r = match self {
            MaterialSpec::Drude { omega_p, relaxation } => Reflector::Permittivity(PermittivityModel::Drude {
                omega_p: *omega_p,
                relaxation: relaxation.build()?,
            }),
            MaterialSpec::Plasma { omega_p } => Reflector::Permittivity(PermittivityModel::Plasma { omega_p: *omega_p }),
            MaterialSpec::ConstantEps { eps } => Reflector::Permittivity(PermittivityModel::ConstantEps { eps: *eps }),
            MaterialSpec::PolarDebye { debye_terms } => Reflector::Permittivity(PermittivityModel::PolarDebye {
                terms: debye_terms
                    .iter()
                    .map(|t| DebyeTerm {
                        strength: t.strength,
                        frequency: t.frequency,
                    })
                    .collect(),
            }),
            MaterialSpec::ImpedanceInfrared { omega_p } => {
                Reflector::Impedance(ImpedanceModel::InfraredOptics { omega_p: *omega_p })
            }
            MaterialSpec::ImpedanceLeontovich { permittivity } => {
                Reflector::Impedance(ImpedanceModel::LeontovichFromEps(permittivity.permittivity()?))
            }
            MaterialSpec::Ideal => Reflector::Ideal,
            MaterialSpec::ConstantReflectivity { r_par_sq, r_perp_sq } => Reflector::Constant {
                r_par_sq: *r_par_sq,
                r_perp_sq: *r_perp_sq,
            },
        };
        r.validate().map_err(|e| CliError::Config(e.to_string()))?;
        Ok(r)
    }
}

pub const PRESETS: [&str; 8] = [
    "gold-drude",
    "gold-drude-quadratic",
    "gold-plasma",
    "gold-impedance",
    "mica",
    "eps100",
    "polar",
    "ideal",
];

pub fn preset(name: &str) -> Option<(Reflector, &'static str)> {
    Some(match name {
        "gold-drude" => (Reflector::Permittivity(PermittivityModel::gold_drude()), "Au Drude"),
        "gold-drude-quadratic" => (
            Reflector::Permittivity(PermittivityModel::Drude {
                omega_p: gold::OMEGA_P,
                relaxation: RelaxationModel::gold_quadratic(),
            }),
            "Au Drude (gamma0 T^2)",
        ),
        "gold-plasma" => (Reflector::Permittivity(PermittivityModel::gold_plasma()), "Au plasma"),
        "gold-impedance" => (Reflector::Impedance(ImpedanceModel::gold_infrared()), "Au impedance"),
        "mica" => (Reflector::Permittivity(PermittivityModel::ConstantEps { eps: 7.0 }), "eps = 7"),
        "eps100" => (Reflector::Permittivity(PermittivityModel::ConstantEps { eps: 100.0 }), "eps = 100"),
        "polar" => (Reflector::Permittivity(PermittivityModel::polar_dielectric()), "polar dielectric"),
        "ideal" => (Reflector::Ideal, "ideal metal"),
        _ => return None,
    })
}

/// Either a preset name or an inline material.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MaterialArg {
    Named(String),
    Inline(MaterialSpec),
}

impl MaterialArg {
    /// A `--material` value: a preset name, or a path to a JSON material.
    pub fn from_flag(s: &str) -> Result<Self, CliError> {
        if preset(s).is_some() {
            return Ok(MaterialArg::Named(s.to_string()));
        }
        let path = Path::new(s);
        if path.is_file() {
            let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{s}: {e}")))?;
            let spec: MaterialSpec =
                serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{s}: {e}")))?;
            return Ok(MaterialArg::Inline(spec));
        }
        Err(CliError::Usage(format!(
            "unknown material '{s}': not a preset ({}) or a readable file",
            PRESETS.join(", ")
        )))
    }

    pub fn resolve(&self) -> Result<(Reflector, String), CliError> {
        match self {
            MaterialArg::Named(name) => preset(name)
                .map(|(r, label)| (r, label.to_string()))
                .ok_or_else(|| CliError::Config(format!("unknown material preset '{name}'"))),
            MaterialArg::Inline(spec) => Ok((spec.build()?, "material".to_string())),
        }
    }
}

/// Everything a run needs. Loaded from JSON, then overridden by flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub material: Option<MaterialArg>,
    pub quantity: Option<Quantity>,
    /// Separation (m) for temperature sweeps and figures.
    pub a: Option<f64>,
    /// Temperature (K) for separation sweeps.
    pub temperature: Option<f64>,
    pub t_range: Option<RangeSpec>,
    pub a_range: Option<RangeSpec>,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub constants: ConstantOverrides,
    /// Constant relaxation rate (rad/s) for the verify regime-guard report.
    pub constant_gamma: Option<f64>,
    #[serde(default)]
    pub quick: bool,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn separation(&self) -> Result<f64, CliError> {
        let a = self.a.unwrap_or(1e-6);
        if !(a > 0.0 && a.is_finite()) {
            return Err(CliError::Config(format!("separation must be positive, got {a}")));
        }
        Ok(a)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }
}
