//! Squared reflection coefficients on the imaginary frequency axis, from a
//! permittivity or from a surface impedance.
//!
//! Coefficients are kept as the pair `(r², 1 − r²)` so that
//! `ln(1 − r² e^{−y})` keeps full relative precision when `r² → 1` and
//! `y → 0`, which is exactly where metals sit at low temperature.

use crate::error::{invalid, Error, Result};
use crate::materials::PermittivityModel;
use crate::scales::PlateSystem;

/// One squared reflection coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficient {
    r2: f64,
    one_minus_r2: f64,
}

impl Coefficient {
    pub const ZERO: Coefficient = Coefficient {
        r2: 0.0,
        one_minus_r2: 1.0,
    };
    pub const ONE: Coefficient = Coefficient {
        r2: 1.0,
        one_minus_r2: 0.0,
    };

    /// `r = (p − q)/(p + q)` for `p, q ≥ 0`, not both zero.
    pub fn from_ratio(p: f64, q: f64) -> Coefficient {
        let sum = p + q;
        let r = (p - q) / sum;
        Coefficient {
            r2: r * r,
            one_minus_r2: 4.0 * (p / sum) * (q / sum),
        }
    }

    /// A fixed squared coefficient `ρ ∈ [0, 1]`.
    pub fn constant(rho: f64) -> Coefficient {
        Coefficient {
            r2: rho,
            one_minus_r2: 1.0 - rho,
        }
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn one_minus_r2(&self) -> f64 {
        self.one_minus_r2
    }

    /// `ln(1 − r² e^{−y})`.
    #[inline]
    pub fn log_factor(&self, y: f64) -> f64 {
        let x = self.r2 * (-y).exp();
        if x < 0.5 {
            (-x).ln_1p()
        } else {
            (self.one_minus_r2 - self.r2 * (-y).exp_m1()).ln()
        }
    }
}

/// TM (`∥`) and TE (`⊥`) squared reflection coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair {
    pub par: Coefficient,
    pub perp: Coefficient,
}

impl ReflectionPair {
    pub fn new(par: Coefficient, perp: Coefficient) -> Self {
        Self { par, perp }
    }

    pub fn constant(r_par_sq: f64, r_perp_sq: f64) -> Self {
        Self::new(Coefficient::constant(r_par_sq), Coefficient::constant(r_perp_sq))
    }

    pub fn r_par_sq(&self) -> f64 {
        self.par.r2
    }

    pub fn r_perp_sq(&self) -> f64 {
        self.perp.r2
    }

    /// `ln(1 − r∥² e^{−y}) + ln(1 − r⊥² e^{−y})`.
    #[inline]
    pub fn log_sum(&self, y: f64) -> f64 {
        self.par.log_factor(y) + self.perp.log_factor(y)
    }
}

#[inline]
fn eps_pair(eps: f64, zeta: f64, y: f64) -> ReflectionPair {
    if zeta == 0.0 {
        return ReflectionPair::new(Coefficient::from_ratio(eps, 1.0), Coefficient::ZERO);
    }
    let s = ((eps - 1.0) * zeta * zeta + y * y).sqrt();
    ReflectionPair::new(
        Coefficient::from_ratio(y * eps, s),
        Coefficient::from_ratio(y, s),
    )
}

#[inline]
fn impedance_pair(z: f64, zeta: f64, y: f64) -> ReflectionPair {
    ReflectionPair::new(
        Coefficient::from_ratio(y, z * zeta),
        Coefficient::from_ratio(zeta, z * y),
    )
}

/// TE coefficient of the plasma model at ζ = 0:
/// `((y − √(ω̃_p² + y²)) / (y + √(ω̃_p² + y²)))²`.
pub fn plasma_zero_mode_te(omega_p_tilde: f64, y: f64) -> Coefficient {
    Coefficient::from_ratio(y, omega_p_tilde.hypot(y))
}

/// Zero-frequency rule for impedance boundary conditions with `Z(0) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ImpedanceZeroMode {
    /// Normal or anomalous skin effect: both coefficients equal one.
    SkinEffect,
    /// Infrared optics: TE coefficient `((ω̃_p − y)/(ω̃_p + y))²`.
    InfraredOptics { omega_p_tilde: f64 },
}

impl ImpedanceZeroMode {
    pub fn pair(&self, y: f64) -> ReflectionPair {
        match *self {
            ImpedanceZeroMode::SkinEffect => ReflectionPair::new(Coefficient::ONE, Coefficient::ONE),
            ImpedanceZeroMode::InfraredOptics { omega_p_tilde } => {
                ReflectionPair::new(Coefficient::ONE, Coefficient::from_ratio(omega_p_tilde, y))
            }
        }
    }
}

/// Reflection data of a single Matsubara mode as a function of `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    Fixed(ReflectionPair),
    Dielectric { eps: f64, zeta: f64 },
    Impedance { z: f64, zeta: f64 },
    /// Plasma model at ζ = 0: TM one, TE from the plasma zero-mode formula.
    PlasmaZero { omega_p_tilde: f64 },
    ImpedanceZero(ImpedanceZeroMode),
}

impl Mode {
    #[inline]
    pub fn pair(&self, y: f64) -> ReflectionPair {
        match *self {
            Mode::Fixed(p) => p,
            Mode::Dielectric { eps, zeta } => eps_pair(eps, zeta, y),
            Mode::Impedance { z, zeta } => impedance_pair(z, zeta, y),
            Mode::PlasmaZero { omega_p_tilde } => {
                ReflectionPair::new(Coefficient::ONE, plasma_zero_mode_te(omega_p_tilde, y))
            }
            Mode::ImpedanceZero(rule) => rule.pair(y),
        }
    }
}

/// Surface impedance `Z(iξ)`.
#[derive(Debug, Clone, PartialEq)]
pub enum ImpedanceModel {
    /// `Z = ζ / √(ω̃_p² + ζ²)`; the plasma frequency is stored in rad/s so
    /// the model can be re-evaluated at any separation.
    InfraredOptics { omega_p: f64 },
    /// Leontovich impedance `Z = 1/√ε(iξ)`.
    LeontovichFromEps(PermittivityModel),
}

impl ImpedanceModel {
    pub fn gold_infrared() -> Self {
        ImpedanceModel::InfraredOptics {
            omega_p: crate::materials::gold::OMEGA_P,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ImpedanceModel::InfraredOptics { omega_p } => {
                if !(omega_p.is_finite() && *omega_p > 0.0) {
                    return invalid(format!("plasma frequency must be positive, got {omega_p}"));
                }
                Ok(())
            }
            ImpedanceModel::LeontovichFromEps(m) => m.validate(),
        }
    }

    fn zero_mode(&self, sys: &PlateSystem) -> Mode {
        match self {
            ImpedanceModel::InfraredOptics { omega_p }
            | ImpedanceModel::LeontovichFromEps(PermittivityModel::Plasma { omega_p }) => {
                Mode::ImpedanceZero(ImpedanceZeroMode::InfraredOptics {
                    omega_p_tilde: omega_p / sys.omega_c(),
                })
            }
            ImpedanceModel::LeontovichFromEps(PermittivityModel::Drude { .. }) => {
                Mode::ImpedanceZero(ImpedanceZeroMode::SkinEffect)
            }
            // Z(0) = 1/√ε0 > 0 with ζ = 0 gives r∥² = r⊥² = 1 directly.
            ImpedanceModel::LeontovichFromEps(_) => Mode::Fixed(ReflectionPair::new(
                Coefficient::ONE,
                Coefficient::ONE,
            )),
        }
    }

    fn value(&self, sys: &PlateSystem, zeta: f64, gamma: f64) -> Result<f64> {
        match self {
            ImpedanceModel::InfraredOptics { omega_p } => {
                let wp = omega_p / sys.omega_c();
                Ok(zeta / wp.hypot(zeta))
            }
            ImpedanceModel::LeontovichFromEps(m) => {
                if zeta == 0.0 {
                    return Ok(m.static_eps().map_or(0.0, |e| 1.0 / e.sqrt()));
                }
                Ok(1.0 / m.eps_with_gamma(zeta * sys.omega_c(), gamma)?.sqrt())
            }
        }
    }

    fn gamma(&self, t: f64) -> Result<f64> {
        match self {
            ImpedanceModel::InfraredOptics { .. } => Ok(0.0),
            ImpedanceModel::LeontovichFromEps(m) => m.gamma(t),
        }
    }
}

/// Any source of reflection coefficients the Lifshitz engine can sum over.
#[derive(Debug, Clone, PartialEq)]
pub enum Reflector {
    /// Perfect conductor, `r∥² = r⊥² = 1` at every frequency.
    Ideal,
    /// Frequency-independent coefficients.
    Constant { r_par_sq: f64, r_perp_sq: f64 },
    Permittivity(PermittivityModel),
    Impedance(ImpedanceModel),
}

impl From<PermittivityModel> for Reflector {
    fn from(m: PermittivityModel) -> Self {
        Reflector::Permittivity(m)
    }
}

impl From<ImpedanceModel> for Reflector {
    fn from(m: ImpedanceModel) -> Self {
        Reflector::Impedance(m)
    }
}

impl Reflector {
    pub fn validate(&self) -> Result<()> {
        match self {
            Reflector::Ideal => Ok(()),
            Reflector::Constant { r_par_sq, r_perp_sq } => {
                if !((0.0..=1.0).contains(r_par_sq) && (0.0..=1.0).contains(r_perp_sq)) {
                    return invalid("constant reflection coefficients must lie in [0, 1]");
                }
                Ok(())
            }
            Reflector::Permittivity(m) => m.validate(),
            Reflector::Impedance(m) => m.validate(),
        }
    }

    /// Fixes the reflector to a plate system, evaluating γ(T) once.
    pub fn bind(&self, sys: &PlateSystem) -> Result<BoundReflector<'_>> {
        self.validate()?;
        let gamma = match self {
            Reflector::Permittivity(m) => m.gamma(sys.temperature())?,
            Reflector::Impedance(m) => m.gamma(sys.temperature())?,
            _ => 0.0,
        };
        Ok(BoundReflector {
            reflector: self,
            sys: *sys,
            gamma,
        })
    }
}

/// A reflector evaluated at a particular separation and temperature.
#[derive(Debug, Clone, Copy)]
pub struct BoundReflector<'a> {
    reflector: &'a Reflector,
    sys: PlateSystem,
    gamma: f64,
}

impl BoundReflector<'_> {
    pub fn system(&self) -> &PlateSystem {
        &self.sys
    }

    /// Relaxation rate used for this binding (rad/s).
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Mode data for Matsubara index `l`.
    pub fn mode(&self, l: u64) -> Result<Mode> {
        self.mode_at(self.sys.zeta(l))
    }

    /// Mode data at an arbitrary dimensionless frequency `ζ ≥ 0`; ζ = 0
    /// applies the analytic zero-frequency limit of the model.
    pub fn mode_at(&self, zeta: f64) -> Result<Mode> {
        if !(zeta >= 0.0 && zeta.is_finite()) {
            return invalid(format!("dimensionless frequency must be finite and ≥ 0, got {zeta}"));
        }
        let sys = &self.sys;
        Ok(match self.reflector {
            Reflector::Ideal => Mode::Fixed(ReflectionPair::new(Coefficient::ONE, Coefficient::ONE)),
            Reflector::Constant { r_par_sq, r_perp_sq } => {
                Mode::Fixed(ReflectionPair::constant(*r_par_sq, *r_perp_sq))
            }
            Reflector::Permittivity(m) => {
                if zeta == 0.0 {
                    match m {
                        PermittivityModel::Drude { .. } => Mode::Fixed(ReflectionPair::new(
                            Coefficient::ONE,
                            Coefficient::ZERO,
                        )),
                        PermittivityModel::Plasma { omega_p } => Mode::PlasmaZero {
                            omega_p_tilde: omega_p / sys.omega_c(),
                        },
                        _ => {
                            let eps0 = m.static_eps().expect("dielectric has a static permittivity");
                            Mode::Fixed(ReflectionPair::new(
                                Coefficient::from_ratio(eps0, 1.0),
                                Coefficient::ZERO,
                            ))
                        }
                    }
                } else {
                    let eps = m.eps_with_gamma(zeta * sys.omega_c(), self.gamma)?;
                    Mode::Dielectric { eps, zeta }
                }
            }
            Reflector::Impedance(m) => {
                if zeta == 0.0 {
                    m.zero_mode(sys)
                } else {
                    Mode::Impedance {
                        z: m.value(sys, zeta, self.gamma)?,
                        zeta,
                    }
                }
            }
        })
    }
}

fn check_y(zeta: f64, y: f64) -> Result<()> {
    if !(zeta >= 0.0) {
        return invalid(format!("ζ must be non-negative, got {zeta}"));
    }
    if !(y >= zeta) {
        return invalid(format!("y = {y} must not be below ζ = {zeta}"));
    }
    Ok(())
}

/// Coefficients from a permittivity value at `(ζ, y)`.
pub fn reflect_from_eps(eps: f64, zeta: f64, y: f64) -> Result<ReflectionPair> {
    check_y(zeta, y)?;
    if !(eps.is_finite() && eps >= 1.0) {
        return invalid(format!("permittivity must be finite and ≥ 1, got {eps}"));
    }
    Ok(eps_pair(eps, zeta, y))
}

/// Change in `(1 − r∥², 1 − r⊥²)` when the permittivity moves from `eps` to
/// `eps + d_eps` at fixed `(ζ, y)`, evaluated without subtracting the two
/// nearly equal coefficients.
pub fn one_minus_r2_shift(eps: f64, d_eps: f64, zeta: f64, y: f64) -> (f64, f64) {
    let z2 = zeta * zeta;
    let eps2 = eps + d_eps;
    let s1 = ((eps - 1.0) * z2 + y * y).sqrt();
    let s2 = ((eps2 - 1.0) * z2 + y * y).sqrt();
    let ds = d_eps * z2 / (s1 + s2);
    let (a1, a2) = (y + s1, y + s2);
    let perp = 4.0 * y * ds * (y * y - s1 * s2) / (a1 * a1 * a2 * a2);
    // TM: 1 − r² = 4ρ/(1 + ρ)² with ρ = yε/s
    let (r1, r2) = (y * eps / s1, y * eps2 / s2);
    let dr = y * d_eps * (s1 - eps * z2 / (s1 + s2)) / (s1 * s2);
    let (b1, b2) = (1.0 + r1, 1.0 + r2);
    let par = 4.0 * dr * (1.0 - r1 * r2) / (b1 * b1 * b2 * b2);
    (par, perp)
}

/// Coefficients of a permittivity model for Matsubara index `l`, using the
/// analytic zero-frequency limits at `l = 0`.
pub fn reflect_from_eps_model(
    model: &PermittivityModel,
    sys: &PlateSystem,
    l: u64,
    y: f64,
) -> Result<ReflectionPair> {
    check_y(sys.zeta(l), y)?;
    let r = Reflector::Permittivity(model.clone());
    Ok(r.bind(sys)?.mode(l)?.pair(y))
}

/// `Z(iξ_l)` of an impedance model; the temperature is taken from `sys`.
pub fn impedance_value(model: &ImpedanceModel, sys: &PlateSystem, l: u64) -> Result<f64> {
    model.validate()?;
    let gamma = model.gamma(sys.temperature())?;
    model.value(sys, sys.zeta(l), gamma)
}

/// Coefficients from an impedance value at `(ζ, y)`.
pub fn reflect_from_impedance(z: f64, zeta: f64, y: f64) -> Result<ReflectionPair> {
    check_y(zeta, y)?;
    if !(z >= 0.0 && z.is_finite()) {
        return invalid(format!("impedance must be finite and ≥ 0, got {z}"));
    }
    if zeta == 0.0 && z * y == 0.0 {
        return Err(Error::IndeterminateZeroMode);
    }
    Ok(impedance_pair(z, zeta, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{gold, RelaxationModel};
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn vacuum_reflects_nothing() {
        for (z, y) in [(0.0, 0.3), (1.0, 2.0), (5.0, 5.0)] {
            let p = reflect_from_eps(1.0, z, y).unwrap();
            assert_eq!(p.r_par_sq(), 0.0);
            assert_eq!(p.r_perp_sq(), 0.0);
        }
    }

    #[test]
    fn rejects_y_below_zeta() {
        assert!(reflect_from_eps(3.0, 2.0, 1.0).is_err());
        assert!(reflect_from_impedance(0.1, 2.0, 1.0).is_err());
    }

    #[test]
    fn zero_modes_per_model() {
        let sys = PlateSystem::new(1e-6, 300.0).unwrap();
        let wt = gold::OMEGA_P / sys.omega_c();
        for y in [1e-3, 0.5, 3.0, wt, 40.0] {
            let d = reflect_from_eps_model(&PermittivityModel::gold_drude(), &sys, 0, y).unwrap();
            assert_eq!((d.r_par_sq(), d.r_perp_sq()), (1.0, 0.0));
            let p = reflect_from_eps_model(&PermittivityModel::gold_plasma(), &sys, 0, y).unwrap();
            let s = (wt * wt + y * y).sqrt();
            let te = ((y - s) / (y + s)).powi(2);
            assert_eq!(p.r_par_sq(), 1.0);
            assert!(close(p.r_perp_sq(), te, 1e-12));
        }
        let p = reflect_from_eps_model(&PermittivityModel::gold_plasma(), &sys, 0, wt).unwrap();
        assert!((p.r_perp_sq() - 0.029437).abs() < 1e-6, "{}", p.r_perp_sq());
        let m = reflect_from_eps_model(&PermittivityModel::ConstantEps { eps: 7.0 }, &sys, 0, 2.0).unwrap();
        assert_eq!(m.r_par_sq(), 0.5625);
        assert_eq!(m.r_perp_sq(), 0.0);
    }

    #[test]
    fn impedance_values() {
        let sys = PlateSystem::new(1e-6, 300.0).unwrap();
        let ir = ImpedanceModel::gold_infrared();
        assert_eq!(impedance_value(&ir, &sys, 0).unwrap(), 0.0);
        let wt = gold::OMEGA_P / sys.omega_c();
        // temperature with ζ_1 = ω̃_p
        let t = sys.temperature() * wt / sys.zeta(1);
        let sys2 = sys.with_temperature(t).unwrap();
        let z = impedance_value(&ir, &sys2, 1).unwrap();
        assert!(close(z, std::f64::consts::FRAC_1_SQRT_2, 1e-12));
        let leo = ImpedanceModel::LeontovichFromEps(PermittivityModel::gold_plasma());
        for l in [1u64, 2, 7, 100] {
            let a = impedance_value(&ir, &sys, l).unwrap();
            let b = impedance_value(&leo, &sys, l).unwrap();
            assert!(close(a, b, 1e-13), "{a} {b}");
        }
        let leo_d = ImpedanceModel::LeontovichFromEps(PermittivityModel::ConstantEps { eps: 4.0 });
        assert_eq!(impedance_value(&leo_d, &sys, 0).unwrap(), 0.5);
    }

    #[test]
    fn impedance_zero_mode_rules() {
        let skin = ImpedanceZeroMode::SkinEffect.pair(0.7);
        assert_eq!((skin.r_par_sq(), skin.r_perp_sq()), (1.0, 1.0));
        let ir = ImpedanceZeroMode::InfraredOptics { omega_p_tilde: 90.0 }.pair(10.0);
        assert_eq!(ir.r_par_sq(), 1.0);
        assert!(close(ir.r_perp_sq(), (80.0f64 / 100.0).powi(2), 1e-14));
        let matched = reflect_from_impedance(1.0, 2.0, 2.0).unwrap();
        assert_eq!((matched.r_par_sq(), matched.r_perp_sq()), (0.0, 0.0));
        assert_eq!(reflect_from_impedance(0.0, 0.0, 1.0), Err(Error::IndeterminateZeroMode));
    }

    #[test]
    fn log_factor_precision_near_unit_reflectivity() {
        // 1 − r² e^{−y} for r² = 1 − 1e-12, y = 1e-9: exact value ≈ 1.001e-9
        let c = Coefficient::from_ratio(1.0, 1e-12 / 4.0);
        let exact = (c.one_minus_r2() + c.r2() * 1e-9 * (1.0 - 0.5e-9)).ln();
        assert!((c.log_factor(1e-9) - exact).abs() < 1e-12);
        assert_eq!(Coefficient::ONE.log_factor(2.0), (-(-2.0f64).exp()).ln_1p());
    }

    #[test]
    fn ideal_metal_limit() {
        let wp_tilde = 1e6;
        let sys = PlateSystem::new(1e-6, 300.0).unwrap();
        let omega_p = wp_tilde * sys.omega_c();
        let plasma = Reflector::Permittivity(PermittivityModel::Plasma { omega_p });
        let imp = Reflector::Impedance(ImpedanceModel::InfraredOptics { omega_p });
        for r in [plasma, imp] {
            let b = r.bind(&sys).unwrap();
            for l in [0u64, 1, 5, 20] {
                let z = sys.zeta(l);
                for y in [z.max(1e-3), z + 0.5, z + 10.0] {
                    let p = b.mode(l).unwrap().pair(y);
                    let bound = 10.0 * y.max(1.0) / wp_tilde;
                    assert!((1.0 - p.r_par_sq()) < bound && (1.0 - p.r_perp_sq()) < bound, "{r:?} {l} {y}");
                }
            }
        }
    }

    #[test]
    fn drude_approaches_plasma_off_zero_mode() {
        let sys = PlateSystem::new(1e-6, 300.0).unwrap();
        let xi1 = sys.xi(1);
        let drude = Reflector::Permittivity(PermittivityModel::Drude {
            omega_p: gold::OMEGA_P,
            relaxation: RelaxationModel::Constant { gamma: 1e-6 * xi1 },
        });
        let plasma = Reflector::Permittivity(PermittivityModel::gold_plasma());
        let (bd, bp) = (drude.bind(&sys).unwrap(), plasma.bind(&sys).unwrap());
        for l in 1..10u64 {
            let z = sys.zeta(l);
            for y in [z, z + 0.3, z + 4.0] {
                let d = bd.mode(l).unwrap().pair(y);
                let p = bp.mode(l).unwrap().pair(y);
                assert!(close(d.r_par_sq(), p.r_par_sq(), 1e-5));
                assert!(close(d.r_perp_sq(), p.r_perp_sq(), 1e-5));
            }
        }
    }

    #[test]
    fn impedance_and_permittivity_te_agree_to_first_order_in_alpha() {
        for a in [1e-6, 2e-6, 5e-6] {
            let sys = PlateSystem::new(a, 300.0).unwrap();
            let alpha = sys.omega_c() / gold::OMEGA_P;
            assert!(alpha <= 0.05);
            let p = Reflector::Permittivity(PermittivityModel::gold_plasma());
            let i = Reflector::Impedance(ImpedanceModel::gold_infrared());
            let (bp, bi) = (p.bind(&sys).unwrap(), i.bind(&sys).unwrap());
            for l in 1..8u64 {
                let z = sys.zeta(l);
                for y in [z, z + 1.0, z + 6.0] {
                    let rp = bp.mode(l).unwrap().pair(y).r_perp_sq();
                    let ri = bi.mode(l).unwrap().pair(y).r_perp_sq();
                    assert!((rp - ri).abs() / rp <= 5.0 * alpha, "a={a} l={l} y={y}");
                }
            }
        }
    }

    fn all_models() -> Vec<Reflector> {
        vec![
            Reflector::Ideal,
            Reflector::Permittivity(PermittivityModel::gold_drude()),
            Reflector::Permittivity(PermittivityModel::gold_plasma()),
            Reflector::Permittivity(PermittivityModel::ConstantEps { eps: 7.0 }),
            Reflector::Permittivity(PermittivityModel::ConstantEps { eps: 100.0 }),
            Reflector::Permittivity(PermittivityModel::polar_dielectric()),
            Reflector::Impedance(ImpedanceModel::gold_infrared()),
            Reflector::Impedance(ImpedanceModel::LeontovichFromEps(PermittivityModel::gold_drude())),
        ]
    }

    #[test]
    fn coefficients_bounded_on_grid() {
        let sys = PlateSystem::new(1e-6, 300.0).unwrap();
        for r in all_models() {
            let b = r.bind(&sys).unwrap();
            for l in 0..50u64 {
                let z = sys.zeta(l);
                let m = b.mode(l).unwrap();
                for k in 0..50 {
                    let y = z + 1e-3 + 0.8 * k as f64;
                    let p = m.pair(y);
                    for c in [p.par, p.perp] {
                        assert!((0.0..=1.0).contains(&c.r2()), "{r:?}");
                        assert!((c.r2() + c.one_minus_r2() - 1.0).abs() < 1e-12);
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn eps_coefficients_in_unit_interval(eps in 1.0f64..1e8, zeta in 0.0f64..50.0, dy in 0.0f64..50.0) {
            let p = reflect_from_eps(eps, zeta, zeta + dy + 1e-12).unwrap();
            prop_assert!((0.0..=1.0).contains(&p.r_par_sq()));
            prop_assert!((0.0..=1.0).contains(&p.r_perp_sq()));
        }

        #[test]
        fn impedance_coefficients_in_unit_interval(z in 0.0f64..1.0, zeta in 1e-9f64..50.0, dy in 0.0f64..50.0) {
            let p = reflect_from_impedance(z, zeta, zeta + dy).unwrap();
            prop_assert!((0.0..=1.0).contains(&p.r_par_sq()));
            prop_assert!((0.0..=1.0).contains(&p.r_perp_sq()));
        }
    }

    #[test]
    fn shift_matches_extended_precision() {
        // reference differences evaluated with 40-digit arithmetic
        let cases = [
            ((7.0, 0.5, 0.8, 1.3), (-0.015703602043238235, -0.0075628156658563383)),
            ((1e6, -3.0, 2.0, 2.5), (4.7846823955508355e-9, 7.4626157116636998e-9)),
            ((40.0, -1e-3, 0.1, 4.0), (2.2602730505540049e-6, 1.8365778624615545e-9)),
        ];
        for ((eps, d, z, y), (ep, es)) in cases {
            let (dp, ds) = one_minus_r2_shift(eps, d, z, y);
            assert!((dp - ep).abs() <= 1e-12 * ep.abs(), "{dp} {ep}");
            assert!((ds - es).abs() <= 1e-12 * es.abs(), "{ds} {es}");
        }
    }
}
