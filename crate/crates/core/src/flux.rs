//! Closed-form steady-state fluid flux profiles and the spatially uniform
//! steady state.
//!
//! With equal sieving in tissue and capillary wall, the steady fluid balance
//! decouples from the concentrations and `q_U` obeys
//!
//! ```text
//! (K / L^2) d/dx (nu(x) dq_U/dx) = Lp_a (q_U - q_l),
//! ```
//!
//! with `q_U(0)` fixed by the dialysate boundary and `j_U(1) = 0` at the
//! impermeable wall. Constant `nu` gives exponentials; linear `nu` gives
//! modified Bessel functions of a transformed coordinate.

use crate::bessel::{i0_scaled, i1_scaled, k0_scaled, k1_scaled};
use crate::params::{ParamError, ParameterSet, VoidVolumeModel};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FluxError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("void volume model {0:?} does not match the requested profile family")]
    ModelMismatch(VoidVolumeModel),
}

/// Fluid flux density from blood at the dialysate boundary,
/// `q_U(0) = Lp_a [P_B - P_D - RT sigma_G (C_GB - C_GD) - RT gamma sigma_A (C_AB - C_AD)]`.
///
/// The osmotic terms use the dialysate concentrations directly: at `x = 0`
/// the interstitium is equilibrated with the dialysis fluid.
pub fn boundary_flux_density(params: &ParameterSet) -> f64 {
    params.lp_a
        * (params.p_b
            - params.p_d
            - params.rt * params.sigma_g * (params.c_gb - params.c_gd)
            - params.rt * params.gamma * params.sigma_a * (params.c_ab - params.c_ad))
}

/// Analytic steady fluid flux profile for one void-volume closure.
///
/// `q_u(x)` is the volumetric source density from blood (mL min^-1 cm^-3)
/// and `j_u(x)` the fluid flux across the tissue (mL min^-1 cm^-2), with
/// `d j_U / dx = L (q_U - q_l)` in the nondimensional coordinate.
#[derive(Debug, Clone)]
pub enum FluxProfile {
    ConstantNu {
        c1: f64,
        c2: f64,
        lambda: f64,
        q_l: f64,
        l: f64,
    },
    LinearNu {
        /// Reported expansion coefficients of `q_U - q_l` in I0/K0; may
        /// under- or overflow for near-degenerate slopes, where evaluation
        /// goes through scaled ratios and never touches them.
        c1: f64,
        c2: f64,
        delta_star: f64,
        nu_star: f64,
        y0: f64,
        y1: f64,
        /// Amplitude `q_U(0) - q_l` and the scaled boundary factors
        /// `e^{y1} K1(y1)`, `e^{-y1} I1(y1)` and the scaled denominator.
        amplitude: f64,
        k1e_y1: f64,
        i1e_y1: f64,
        denom_scaled: f64,
        q_l: f64,
        l: f64,
    },
}

impl FluxProfile {
    /// Build the exponential profile for `nu(x) = nu_m`.
    pub fn constant_nu(params: &ParameterSet, model: &VoidVolumeModel) -> Result<Self, FluxError> {
        params.require_restriction()?;
        let nu_m = match *model {
            VoidVolumeModel::ConstantNu { nu_m } => nu_m,
            other => return Err(FluxError::ModelMismatch(other)),
        };
        model.validate_against(params)?;
        let q0 = boundary_flux_density(params);
        let lambda = (params.lp_a * params.l * params.l / (params.k * nu_m)).sqrt();
        let e2l = (2.0 * lambda).exp();
        let amplitude = q0 - params.q_l;
        Ok(FluxProfile::ConstantNu {
            c1: amplitude * e2l / (1.0 + e2l),
            c2: amplitude / (1.0 + e2l),
            lambda,
            q_l: params.q_l,
            l: params.l,
        })
    }

    /// Build the Bessel profile for `nu(x) = nu_max - (nu_max - nu_min) x`.
    pub fn linear_nu(params: &ParameterSet, model: &VoidVolumeModel) -> Result<Self, FluxError> {
        params.require_restriction()?;
        let (nu_max, nu_min) = match *model {
            VoidVolumeModel::LinearNu { nu_max, nu_min } => (nu_max, nu_min),
            other => return Err(FluxError::ModelMismatch(other)),
        };
        model.validate_against(params)?;
        let q0 = boundary_flux_density(params);
        let span = nu_max - nu_min;
        let delta_star = params.lp_a * params.l * params.l / (params.k * span);
        let nu_star = nu_max / span;
        let y0 = 2.0 * (delta_star * nu_star).sqrt();
        let y1 = 2.0 * (delta_star * (nu_star - 1.0)).sqrt();
        let k1e_y1 = k1_scaled(y1);
        let i1e_y1 = i1_scaled(y1);
        // Scaled form of I0(y0) K1(y1) + K0(y0) I1(y1): the common factor
        // e^{y0 - y1} is divided out, so this stays O(1) even when the raw
        // products overflow.
        let denom_scaled =
            i0_scaled(y0) * k1e_y1 + k0_scaled(y0) * i1e_y1 * (2.0 * (y1 - y0)).exp();
        let amplitude = q0 - params.q_l;
        Ok(FluxProfile::LinearNu {
            c1: amplitude * k1e_y1 * (-y0).exp() / denom_scaled,
            c2: amplitude * i1e_y1 * (2.0 * y1 - y0).exp() / denom_scaled,
            delta_star,
            nu_star,
            y0,
            y1,
            amplitude,
            k1e_y1,
            i1e_y1,
            denom_scaled,
            q_l: params.q_l,
            l: params.l,
        })
    }

    /// Build the profile family matching the given void-volume model.
    pub fn for_model(params: &ParameterSet, model: &VoidVolumeModel) -> Result<Self, FluxError> {
        match model {
            VoidVolumeModel::ConstantNu { .. } => Self::constant_nu(params, model),
            VoidVolumeModel::LinearNu { .. } => Self::linear_nu(params, model),
        }
    }

    /// Fluid flux density from blood, `q_U(x)`.
    pub fn q_u(&self, x: f64) -> f64 {
        match *self {
            FluxProfile::ConstantNu { c1, c2, lambda, q_l, .. } => {
                c1 * (-lambda * x).exp() + c2 * (lambda * x).exp() + q_l
            }
            FluxProfile::LinearNu {
                delta_star,
                nu_star,
                y0,
                y1,
                amplitude,
                k1e_y1,
                i1e_y1,
                denom_scaled,
                q_l,
                ..
            } => {
                let y = 2.0 * (delta_star * (nu_star - x)).sqrt();
                // (K1(y1) I0(y) + I1(y1) K0(y)) / denom, everything scaled;
                // both exponents are <= 0 on x in [0, 1].
                let term = k1e_y1 * i0_scaled(y) * (y - y0).exp()
                    + i1e_y1 * k0_scaled(y) * (2.0 * y1 - y - y0).exp();
                q_l + amplitude * term / denom_scaled
            }
        }
    }

    /// Fluid flux across the tissue, `j_U(x)`; negative values point toward
    /// the dialysate at `x = 0`.
    pub fn j_u(&self, x: f64) -> f64 {
        match *self {
            FluxProfile::ConstantNu { c1, c2, lambda, l, .. } => {
                (l / lambda) * (-c1 * (-lambda * x).exp() + c2 * (lambda * x).exp())
            }
            FluxProfile::LinearNu {
                delta_star,
                nu_star,
                y0,
                y1,
                amplitude,
                k1e_y1,
                i1e_y1,
                denom_scaled,
                l,
                ..
            } => {
                let y = 2.0 * (delta_star * (nu_star - x)).sqrt();
                let term = k1e_y1 * i1_scaled(y) * (y - y0).exp()
                    - i1e_y1 * k1_scaled(y) * (2.0 * y1 - y - y0).exp();
                -(l / delta_star.sqrt()) * (nu_star - x).sqrt() * amplitude * term / denom_scaled
            }
        }
    }

    /// Nondimensional decay rate (constant case) or `y0`/`y1` pair (linear).
    pub fn q_l(&self) -> f64 {
        match *self {
            FluxProfile::ConstantNu { q_l, .. } | FluxProfile::LinearNu { q_l, .. } => q_l,
        }
    }
}

/// The spatially uniform steady state: concentrations and pressure at which
/// capillary exchange exactly balances lymphatic drainage everywhere, so
/// `q_U = q_l` and all solute sources vanish.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyStateConstants {
    pub c_g: f64,
    pub c_a: f64,
    pub p: f64,
}

pub fn constant_steady_state(params: &ParameterSet) -> SteadyStateConstants {
    let s_g = params.s_g();
    let s_a = params.s_a();
    let den_g = params.pg_a + (1.0 - s_g * params.f_g) * params.q_l;
    let den_a = params.pa_a + (1.0 - s_a * params.f_a) * params.q_l;
    let c_g = (params.pg_a + s_g * (1.0 - params.f_g) * params.q_l) * params.c_gb / den_g;
    let c_a = (params.pa_a + s_a * (1.0 - params.f_a) * params.q_l) * params.c_ab / den_a;
    // Fluid balance q_U(C*, P*) = q_l solved for P*; the concentration gaps
    // C_B - C* reduce to sigma q_l C_B / den, hence the sigma^2 factors.
    let p = params.p_b
        - params.q_l
            * (1.0 / params.lp_a
                + params.rt * params.sigma_g * params.sigma_g * params.c_gb / den_g
                + params.rt * params.gamma * params.sigma_a * params.sigma_a * params.c_ab / den_a);
    SteadyStateConstants { c_g, c_a, p }
}

impl SteadyStateConstants {
    /// Residuals of the three dimensional steady balances at this state:
    /// `q_U - q_l` and the two net solute sources `q_S - q_l C_S`.
    pub fn residuals(&self, params: &ParameterSet) -> (f64, f64, f64) {
        let q_u = params.lp_a
            * (params.p_b
                - self.p
                - params.rt * params.sigma_g * (params.c_gb - self.c_g)
                - params.rt * params.gamma * params.sigma_a * (params.c_ab - self.c_a));
        let fluid = q_u - params.q_l;
        let q_g = params.pg_a * (params.c_gb - self.c_g)
            + params.s_g() * q_u * ((1.0 - params.f_g) * params.c_gb + params.f_g * self.c_g);
        let q_a = params.pa_a * (params.c_ab - self.c_a)
            + params.s_a() * q_u * ((1.0 - params.f_a) * params.c_ab + params.f_a * self.c_a);
        (
            fluid,
            q_g - params.q_l * self.c_g,
            q_a - params.q_l * self.c_a,
        )
    }
}
