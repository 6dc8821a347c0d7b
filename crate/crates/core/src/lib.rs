//! Thermal Casimir free energy, pressure and entropy between two parallel
//! plates, from the Lifshitz formula in imaginary Matsubara frequencies.
//!
//! Lengths are in metres, temperatures in kelvin and frequencies in rad/s.
//! Free energies are per unit plate area (J/m²), pressures in Pa and
//! entropies in J/(K·m²).

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod asymptotics;
pub mod error;
pub mod lifshitz;
pub mod materials;
pub mod parallel;
pub mod quadrature;
pub mod reflection;
pub mod scales;
pub mod special;
pub mod sum;
pub mod thermo;

pub use error::{Error, Result};
pub use lifshitz::{
    decomposed_free_energy_drude, free_energy, free_energy_t0, matsubara_integral, DrudeDecomposition,
    QuadratureSpec, ThermoResult,
};
pub use materials::{PermittivityModel, RelaxationModel};
pub use parallel::Execution;
pub use reflection::{ImpedanceModel, Reflector};
pub use scales::{MetalScales, PhysicalConstants, PlateSystem};
pub use thermo::{entropy, pressure, DerivativeSpec};
