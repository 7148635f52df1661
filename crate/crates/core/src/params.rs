//! Dimensional parameters, validation, and the nondimensional groups.
//!
//! Units follow the clinical system throughout: cm, min, mmHg, mmol/mL.
//! Sieving coefficients are always derived as `S = 1 - sigma`, never stored.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("parameter `{field}` = {value}: {constraint}")]
    OutOfRange {
        field: &'static str,
        value: f64,
        constraint: &'static str,
    },
    #[error("nondimensionalization undefined: C_GD = C_GB = {0}")]
    DegenerateConcentrationScale(f64),
    #[error("time scale undefined: P_D = P_0 = {0}")]
    DegeneratePressureScale(f64),
    #[error("unknown parameter `{0}`")]
    UnknownField(String),
    #[error(
        "tissue and capillary reflection coefficients differ \
         (sigma_TG = {sigma_tg} vs sigma_G = {sigma_g}, \
         sigma_TA = {sigma_ta} vs sigma_A = {sigma_a}); the steady-state \
         solver requires equal sieving coefficients in tissue and capillary wall"
    )]
    ReflectionMismatch {
        sigma_tg: f64,
        sigma_g: f64,
        sigma_ta: f64,
        sigma_a: f64,
    },
}

/// All dimensional constants of the transport model.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterSet {
    /// Tissue hydraulic permeability, cm^2 min^-1 mmHg^-1.
    pub k: f64,
    /// Gas constant times temperature, mmHg mmol^-1 mL.
    pub rt: f64,
    /// Tissue layer width, cm.
    pub l: f64,
    /// Capillary-wall hydraulic permeability times area density, mL min^-1 mmHg^-1 g^-1.
    pub lp_a: f64,
    /// Lymphatic volumetric flux density, mL min^-1 cm^-3.
    pub q_l: f64,
    /// Glucose diffusivity in tissue, cm^2 min^-1.
    pub d_g: f64,
    /// Albumin diffusivity in tissue, cm^2 min^-1.
    pub d_a: f64,
    /// Capillary diffusive permeability for glucose, mL min^-1 g^-1.
    pub pg_a: f64,
    /// Capillary diffusive permeability for albumin, mL min^-1 g^-1.
    pub pa_a: f64,
    /// Staverman reflection coefficients in tissue (dimensionless).
    pub sigma_tg: f64,
    pub sigma_ta: f64,
    /// Staverman reflection coefficients in the capillary wall (dimensionless).
    pub sigma_g: f64,
    pub sigma_a: f64,
    /// Weighing factors (dimensionless, in (0, 1]).
    pub f_g: f64,
    pub f_a: f64,
    /// Blood and dialysate concentrations, mmol mL^-1.
    pub c_gb: f64,
    pub c_ab: f64,
    pub c_gd: f64,
    pub c_ad: f64,
    /// Blood / intraperitoneal / initial interstitial pressures, mmHg.
    pub p_b: f64,
    pub p_d: f64,
    pub p_0: f64,
    /// Fractional void volume bounds and reference (dimensionless).
    pub nu_min: f64,
    pub nu_max: f64,
    /// Stored for completeness; the quoted diffusivities already fold it in.
    pub nu_0: f64,
    /// Albumin-accessible fraction of the void volume (dimensionless).
    pub alpha: f64,
    /// Oncotic rescaling coefficient (dimensionless).
    pub gamma: f64,
    /// Peritoneal contact surface, cm^2.
    pub contact_area: f64,
}

pub const DEFAULT_CONTACT_AREA: f64 = 5000.0;

impl ParameterSet {
    /// The clinical reference value set used throughout the result checks.
    pub fn reference() -> Self {
        ParameterSet {
            k: 5.14e-5,
            rt: 1.8e4,
            l: 1.0,
            lp_a: 7.3e-5,
            q_l: 0.26e-4,
            d_g: 12.11e-5,
            d_a: 0.2e-5,
            pg_a: 3.4e-2,
            pa_a: 3e-4,
            sigma_tg: 0.001,
            sigma_ta: 0.25,
            sigma_g: 0.001,
            sigma_a: 0.25,
            f_g: 0.5,
            f_a: 0.5,
            c_gb: 6e-3,
            c_ab: 0.6e-3,
            c_gd: 180e-3,
            c_ad: 0.0,
            p_b: 15.0,
            p_d: 12.0,
            p_0: 0.0,
            nu_min: 0.17,
            nu_max: 0.35,
            nu_0: 0.17,
            alpha: 0.8,
            gamma: 1.0,
            contact_area: DEFAULT_CONTACT_AREA,
        }
    }

    // Sieving coefficients, always derived.
    pub fn s_g(&self) -> f64 {
        1.0 - self.sigma_g
    }
    pub fn s_a(&self) -> f64 {
        1.0 - self.sigma_a
    }
    pub fn s_tg(&self) -> f64 {
        1.0 - self.sigma_tg
    }
    pub fn s_ta(&self) -> f64 {
        1.0 - self.sigma_ta
    }

    /// True when the tissue reflection coefficients equal the capillary ones,
    /// the restriction all closed-form steady-state machinery relies on.
    pub fn restriction_holds(&self) -> bool {
        self.sigma_tg == self.sigma_g && self.sigma_ta == self.sigma_a
    }

    pub fn require_restriction(&self) -> Result<(), ParamError> {
        if self.restriction_holds() {
            Ok(())
        } else {
            Err(ParamError::ReflectionMismatch {
                sigma_tg: self.sigma_tg,
                sigma_g: self.sigma_g,
                sigma_ta: self.sigma_ta,
                sigma_a: self.sigma_a,
            })
        }
    }

    /// Check every range constraint; returns the set unchanged when valid.
    pub fn validate(self) -> Result<Self, ParamError> {
        fn positive(field: &'static str, value: f64) -> Result<(), ParamError> {
            if value.is_finite() && value > 0.0 {
                Ok(())
            } else {
                Err(ParamError::OutOfRange {
                    field,
                    value,
                    constraint: "must be strictly positive",
                })
            }
        }
        fn unit_interval(field: &'static str, value: f64) -> Result<(), ParamError> {
            if value.is_finite() && (0.0..=1.0).contains(&value) {
                Ok(())
            } else {
                Err(ParamError::OutOfRange {
                    field,
                    value,
                    constraint: "must lie in [0, 1]",
                })
            }
        }
        fn half_open_unit(field: &'static str, value: f64) -> Result<(), ParamError> {
            if value.is_finite() && value > 0.0 && value <= 1.0 {
                Ok(())
            } else {
                Err(ParamError::OutOfRange {
                    field,
                    value,
                    constraint: "must lie in (0, 1]",
                })
            }
        }

        positive("K", self.k)?;
        positive("RT", self.rt)?;
        positive("L", self.l)?;
        positive("Lp_a", self.lp_a)?;
        positive("D_G", self.d_g)?;
        positive("D_A", self.d_a)?;
        positive("pG_a", self.pg_a)?;
        positive("pA_a", self.pa_a)?;
        positive("contact_area", self.contact_area)?;
        if !(self.q_l.is_finite() && self.q_l >= 0.0) {
            return Err(ParamError::OutOfRange {
                field: "q_l",
                value: self.q_l,
                constraint: "must be nonnegative",
            });
        }
        unit_interval("sigma_TG", self.sigma_tg)?;
        unit_interval("sigma_TA", self.sigma_ta)?;
        unit_interval("sigma_G", self.sigma_g)?;
        unit_interval("sigma_A", self.sigma_a)?;
        half_open_unit("F_G", self.f_g)?;
        half_open_unit("F_A", self.f_a)?;
        half_open_unit("gamma", self.gamma)?;
        if !(self.alpha.is_finite() && self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(ParamError::OutOfRange {
                field: "alpha",
                value: self.alpha,
                constraint: "must lie in (0, 1)",
            });
        }
        if !(self.nu_min.is_finite() && self.nu_min > 0.0) {
            return Err(ParamError::OutOfRange {
                field: "nu_min",
                value: self.nu_min,
                constraint: "must be strictly positive",
            });
        }
        if !(self.nu_max.is_finite() && self.nu_max > self.nu_min && self.nu_max < 1.0) {
            return Err(ParamError::OutOfRange {
                field: "nu_max",
                value: self.nu_max,
                constraint: "must satisfy nu_min < nu_max < 1",
            });
        }
        for (field, value) in [
            ("C_GB", self.c_gb),
            ("C_AB", self.c_ab),
            ("C_GD", self.c_gd),
            ("C_AD", self.c_ad),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(ParamError::OutOfRange {
                    field,
                    value,
                    constraint: "must be a nonnegative concentration",
                });
            }
        }
        for (field, value) in [("P_B", self.p_b), ("P_D", self.p_d), ("P_0", self.p_0), ("nu_0", self.nu_0)] {
            if !value.is_finite() {
                return Err(ParamError::OutOfRange {
                    field,
                    value,
                    constraint: "must be finite",
                });
            }
        }
        if self.c_gd == self.c_gb {
            return Err(ParamError::DegenerateConcentrationScale(self.c_gb));
        }
        if self.p_d == self.p_0 {
            return Err(ParamError::DegeneratePressureScale(self.p_d));
        }
        Ok(self)
    }

    /// Difference of dialysate and blood glucose concentrations, the
    /// concentration scale of the nondimensionalization.
    pub fn concentration_scale(&self) -> f64 {
        self.c_gd - self.c_gb
    }

    pub fn nondimensionalize(&self) -> DimensionlessGroups {
        let dc = self.concentration_scale();
        let l2 = self.l * self.l;
        let t0 = l2 / (self.k * (self.p_d - self.p_0));
        let sigma1 = self.sigma_tg * self.k * self.rt * dc / l2;
        let sigma2 = self.sigma_ta * self.k * self.rt * self.gamma * dc / l2;
        DimensionlessGroups {
            sigma1,
            sigma2,
            d1: self.d_g / l2,
            d2: self.alpha * self.d_a / l2,
            b1: self.pg_a + self.q_l,
            b2: self.pa_a + self.q_l,
            u0: self.c_gb / dc,
            w0: self.c_ab / dc,
            p0: (self.p_b - self.p_0) / (self.p_d - self.p_0),
            t0,
            f1: self.s_g() * self.f_g - self.s_g(),
            f2: self.s_a() * self.f_a - self.s_a(),
            kappa1: self.pg_a + (1.0 - self.s_g() * self.f_g) * self.q_l,
            kappa2: self.pa_a + (1.0 - self.s_a() * self.f_a) * self.q_l,
            u01: self.sigma_g * (self.c_gb / dc) * self.q_l,
            w01: self.sigma_a * (self.c_ab / dc) * self.q_l,
        }
    }

    // Forward and inverse scalings for the dependent variables.

    pub fn dim_glucose(&self, u: f64) -> f64 {
        self.c_gb + u * self.concentration_scale()
    }
    pub fn dim_albumin(&self, w: f64) -> f64 {
        w * self.concentration_scale()
    }
    pub fn dim_pressure(&self, p: f64) -> f64 {
        self.p_0 + p * (self.p_d - self.p_0)
    }
    pub fn nondim_glucose(&self, c_g: f64) -> f64 {
        (c_g - self.c_gb) / self.concentration_scale()
    }
    pub fn nondim_albumin(&self, c_a: f64) -> f64 {
        c_a / self.concentration_scale()
    }
    pub fn nondim_pressure(&self, p: f64) -> f64 {
        (p - self.p_0) / (self.p_d - self.p_0)
    }

    /// Names accepted by [`ParameterSet::set_field`], in config-key form.
    pub const FIELD_NAMES: [&'static str; 28] = [
        "k", "rt", "l", "lp_a", "q_l", "d_g", "d_a", "pg_a", "pa_a", "sigma_tg", "sigma_ta",
        "sigma_g", "sigma_a", "f_g", "f_a", "c_gb", "c_ab", "c_gd", "c_ad", "p_b", "p_d", "p_0",
        "nu_min", "nu_max", "nu_0", "alpha", "gamma", "contact_area",
    ];

    /// Assign one field by config-key name. Used by CLI overrides and sweeps.
    ///
    /// Setting `sigma_g` / `sigma_a` also moves `sigma_tg` / `sigma_ta`
    /// when the pair was equal beforehand, so the equal-sieving restriction
    /// survives single-key overrides; assign the tissue value afterwards to
    /// diverge deliberately.
    pub fn set_field(&mut self, name: &str, value: f64) -> Result<(), ParamError> {
        match name {
            "sigma_g" if self.sigma_tg == self.sigma_g => self.sigma_tg = value,
            "sigma_a" if self.sigma_ta == self.sigma_a => self.sigma_ta = value,
            _ => {}
        }
        let slot = match name {
            "k" => &mut self.k,
            "rt" => &mut self.rt,
            "l" => &mut self.l,
            "lp_a" => &mut self.lp_a,
            "q_l" => &mut self.q_l,
            "d_g" => &mut self.d_g,
            "d_a" => &mut self.d_a,
            "pg_a" => &mut self.pg_a,
            "pa_a" => &mut self.pa_a,
            "sigma_tg" => &mut self.sigma_tg,
            "sigma_ta" => &mut self.sigma_ta,
            "sigma_g" => &mut self.sigma_g,
            "sigma_a" => &mut self.sigma_a,
            "f_g" => &mut self.f_g,
            "f_a" => &mut self.f_a,
            "c_gb" => &mut self.c_gb,
            "c_ab" => &mut self.c_ab,
            "c_gd" => &mut self.c_gd,
            "c_ad" => &mut self.c_ad,
            "p_b" => &mut self.p_b,
            "p_d" => &mut self.p_d,
            "p_0" => &mut self.p_0,
            "nu_min" => &mut self.nu_min,
            "nu_max" => &mut self.nu_max,
            "nu_0" => &mut self.nu_0,
            "alpha" => &mut self.alpha,
            "gamma" => &mut self.gamma,
            "contact_area" => &mut self.contact_area,
            _ => return Err(ParamError::UnknownField(name.to_string())),
        };
        *slot = value;
        Ok(())
    }

    pub fn get_field(&self, name: &str) -> Result<f64, ParamError> {
        Ok(match name {
            "k" => self.k,
            "rt" => self.rt,
            "l" => self.l,
            "lp_a" => self.lp_a,
            "q_l" => self.q_l,
            "d_g" => self.d_g,
            "d_a" => self.d_a,
            "pg_a" => self.pg_a,
            "pa_a" => self.pa_a,
            "sigma_tg" => self.sigma_tg,
            "sigma_ta" => self.sigma_ta,
            "sigma_g" => self.sigma_g,
            "sigma_a" => self.sigma_a,
            "f_g" => self.f_g,
            "f_a" => self.f_a,
            "c_gb" => self.c_gb,
            "c_ab" => self.c_ab,
            "c_gd" => self.c_gd,
            "c_ad" => self.c_ad,
            "p_b" => self.p_b,
            "p_d" => self.p_d,
            "p_0" => self.p_0,
            "nu_min" => self.nu_min,
            "nu_max" => self.nu_max,
            "nu_0" => self.nu_0,
            "alpha" => self.alpha,
            "gamma" => self.gamma,
            "contact_area" => self.contact_area,
            _ => return Err(ParamError::UnknownField(name.to_string())),
        })
    }
}

/// The derived nondimensional constants of the steady-state equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessGroups {
    pub sigma1: f64,
    pub sigma2: f64,
    pub d1: f64,
    pub d2: f64,
    pub b1: f64,
    pub b2: f64,
    pub u0: f64,
    pub w0: f64,
    pub p0: f64,
    pub t0: f64,
    pub f1: f64,
    pub f2: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub u01: f64,
    pub w01: f64,
}

/// The fractional void volume closure used by the steady-state solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VoidVolumeModel {
    /// nu(x) = nu_m, a constant.
    ConstantNu { nu_m: f64 },
    /// nu(x) = nu_max - (nu_max - nu_min) x, linear and decreasing.
    LinearNu { nu_max: f64, nu_min: f64 },
}

impl VoidVolumeModel {
    pub fn constant_from(params: &ParameterSet) -> Self {
        VoidVolumeModel::ConstantNu {
            nu_m: 0.5 * (params.nu_max + params.nu_min),
        }
    }

    pub fn linear_from(params: &ParameterSet) -> Self {
        VoidVolumeModel::LinearNu {
            nu_max: params.nu_max,
            nu_min: params.nu_min,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            VoidVolumeModel::ConstantNu { nu_m } => nu_m,
            VoidVolumeModel::LinearNu { nu_max, nu_min } => nu_max - (nu_max - nu_min) * x,
        }
    }

    /// Spatial derivative d(nu)/dx, constant in both closures.
    pub fn slope(&self) -> f64 {
        match *self {
            VoidVolumeModel::ConstantNu { .. } => 0.0,
            VoidVolumeModel::LinearNu { nu_max, nu_min } => -(nu_max - nu_min),
        }
    }

    pub fn validate_against(&self, params: &ParameterSet) -> Result<(), ParamError> {
        match *self {
            VoidVolumeModel::ConstantNu { nu_m } => {
                if nu_m < params.nu_min || nu_m > params.nu_max {
                    return Err(ParamError::OutOfRange {
                        field: "nu_m",
                        value: nu_m,
                        constraint: "must lie within [nu_min, nu_max]",
                    });
                }
            }
            VoidVolumeModel::LinearNu { nu_max, nu_min } => {
                if !(nu_min > 0.0 && nu_max > nu_min) {
                    return Err(ParamError::OutOfRange {
                        field: "nu_max",
                        value: nu_max,
                        constraint: "must satisfy 0 < nu_min < nu_max",
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_set_is_accepted() {
        assert!(ParameterSet::reference().validate().is_ok());
    }

    #[test]
    fn equal_concentrations_rejected() {
        let mut p = ParameterSet::reference();
        p.c_gd = p.c_gb;
        assert!(matches!(
            p.validate(),
            Err(ParamError::DegenerateConcentrationScale(_))
        ));
    }

    #[test]
    fn inverted_void_volume_bounds_rejected() {
        let mut p = ParameterSet::reference();
        p.nu_min = 0.4;
        p.nu_max = 0.35;
        assert!(matches!(p.validate(), Err(ParamError::OutOfRange { field: "nu_max", .. })));
    }

    #[test]
    fn equal_pressures_rejected() {
        let mut p = ParameterSet::reference();
        p.p_0 = p.p_d;
        assert!(matches!(p.validate(), Err(ParamError::DegeneratePressureScale(_))));
    }

    #[test]
    fn nondimensional_groups_reference_values() {
        let g = ParameterSet::reference().nondimensionalize();
        assert!((g.t0 - 1621.2710765239947).abs() < 1e-9);
        assert!((g.u0 - 0.03448275862068966).abs() < 1e-15);
        assert!((g.w0 - 0.0034482758620689655).abs() < 1e-16);
        assert_eq!(g.p0, 1.25);
        assert!((g.sigma1 - 1.609848e-4).abs() < 1e-12);
        assert!((g.f1 - (-0.4995)).abs() < 1e-12);
        assert!((g.kappa1 - 0.034013013).abs() < 1e-12);
    }

    #[test]
    fn zero_lymphatic_flux_kills_forcing_terms() {
        let mut p = ParameterSet::reference();
        p.q_l = 0.0;
        let g = p.nondimensionalize();
        assert_eq!(g.u01, 0.0);
        assert_eq!(g.w01, 0.0);
    }

    #[test]
    fn coupling_factors_vanish_under_restriction() {
        let p = ParameterSet::reference();
        let g = p.nondimensionalize();
        // u0 (S_G - S_TG) and w0 (S_A - S_TA) are exactly zero when the
        // sieving coefficients agree.
        assert_eq!(g.u0 * (p.s_g() - p.s_tg()), 0.0);
        assert_eq!(g.w0 * (p.s_a() - p.s_ta()), 0.0);
    }

    #[test]
    fn recomputation_is_bitwise_stable() {
        let p = ParameterSet::reference();
        assert_eq!(p.nondimensionalize(), p.nondimensionalize());
    }

    #[test]
    fn scaling_round_trip() {
        let p = ParameterSet::reference();
        for v in [0.0, 0.3, 1.0, 14.7] {
            assert!((p.dim_pressure(p.nondim_pressure(v)) - v).abs() <= 1e-14 * v.abs().max(1.0));
        }
        assert_eq!(p.dim_glucose(1.0), p.c_gd);
        assert_eq!(p.dim_albumin(p.nondimensionalize().w0), p.c_ab);
        assert_eq!(p.dim_pressure(p.nondimensionalize().p0), p.p_b);
    }

    #[test]
    fn set_field_rejects_unknown_names() {
        let mut p = ParameterSet::reference();
        assert!(matches!(p.set_field("foo", 1.0), Err(ParamError::UnknownField(_))));
        p.set_field("pa_a", 2e-4).unwrap();
        assert_eq!(p.pa_a, 2e-4);
        assert_eq!(p.get_field("pa_a").unwrap(), 2e-4);
    }

    #[test]
    fn capillary_sigma_override_carries_tissue_value_along() {
        let mut p = ParameterSet::reference();
        p.set_field("sigma_a", 0.0).unwrap();
        assert_eq!(p.sigma_ta, 0.0);
        assert!(p.restriction_holds());
        // Once deliberately diverged, overrides leave the tissue value alone.
        p.sigma_ta = 0.1;
        p.set_field("sigma_a", 0.2).unwrap();
        assert_eq!(p.sigma_ta, 0.1);
    }

    #[test]
    fn restriction_check() {
        let mut p = ParameterSet::reference();
        assert!(p.require_restriction().is_ok());
        p.sigma_tg = 0.002;
        assert!(matches!(p.require_restriction(), Err(ParamError::ReflectionMismatch { .. })));
    }

    #[test]
    fn linear_void_volume_stays_in_bounds() {
        let p = ParameterSet::reference();
        let nu = VoidVolumeModel::linear_from(&p);
        for i in 0..=100 {
            let x = i as f64 / 100.0;
            let v = nu.eval(x);
            assert!(v >= p.nu_min - 1e-15 && v <= p.nu_max + 1e-15);
        }
        assert_eq!(nu.eval(0.0), p.nu_max);
        assert_eq!(nu.eval(1.0), p.nu_min);
    }
}
