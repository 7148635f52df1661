//! TOML configuration ingestion for parameter sets.
//!
//! The schema mirrors [`ParameterSet`] field-for-field with three
//! conveniences: `contact_area` defaults to 5000 cm^2, and the tissue
//! reflection coefficients `sigma_tg` / `sigma_ta` default to their
//! capillary counterparts (the equal-sieving restriction the solver
//! relies on). Unknown keys are rejected so typos cannot silently fall
//! back to defaults.

use crate::params::{ParamError, ParameterSet, DEFAULT_CONTACT_AREA};
use serde::Deserialize;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse config file `{path}`: {source}")]
    Parse {
        path: String,
        #[source]
        source: toml::de::Error,
    },
    #[error(transparent)]
    Invalid(#[from] ParamError),
    #[error("malformed override `{0}`, expected key=value with a numeric value")]
    BadOverride(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    k: f64,
    rt: f64,
    l: f64,
    lp_a: f64,
    q_l: f64,
    d_g: f64,
    d_a: f64,
    pg_a: f64,
    pa_a: f64,
    sigma_g: f64,
    sigma_a: f64,
    sigma_tg: Option<f64>,
    sigma_ta: Option<f64>,
    f_g: f64,
    f_a: f64,
    c_gb: f64,
    c_ab: f64,
    c_gd: f64,
    c_ad: f64,
    p_b: f64,
    p_d: f64,
    p_0: f64,
    nu_min: f64,
    nu_max: f64,
    nu_0: f64,
    alpha: f64,
    gamma: f64,
    contact_area: Option<f64>,
}

impl RawConfig {
    fn into_params(self) -> ParameterSet {
        ParameterSet {
            k: self.k,
            rt: self.rt,
            l: self.l,
            lp_a: self.lp_a,
            q_l: self.q_l,
            d_g: self.d_g,
            d_a: self.d_a,
            pg_a: self.pg_a,
            pa_a: self.pa_a,
            sigma_tg: self.sigma_tg.unwrap_or(self.sigma_g),
            sigma_ta: self.sigma_ta.unwrap_or(self.sigma_a),
            sigma_g: self.sigma_g,
            sigma_a: self.sigma_a,
            f_g: self.f_g,
            f_a: self.f_a,
            c_gb: self.c_gb,
            c_ab: self.c_ab,
            c_gd: self.c_gd,
            c_ad: self.c_ad,
            p_b: self.p_b,
            p_d: self.p_d,
            p_0: self.p_0,
            nu_min: self.nu_min,
            nu_max: self.nu_max,
            nu_0: self.nu_0,
            alpha: self.alpha,
            gamma: self.gamma,
            contact_area: self.contact_area.unwrap_or(DEFAULT_CONTACT_AREA),
        }
    }
}

/// Parse a TOML config string into a validated parameter set.
pub fn parse_config(text: &str, origin: &str) -> Result<ParameterSet, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|source| ConfigError::Parse {
        path: origin.to_string(),
        source,
    })?;
    Ok(raw.into_params().validate()?)
}

/// Load and validate a parameter set from a config file.
pub fn load_config(path: &Path) -> Result<ParameterSet, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text, &path.display().to_string())
}

/// Apply `key=value` overrides in order, then re-validate.
pub fn apply_overrides(
    params: ParameterSet,
    overrides: &[String],
) -> Result<ParameterSet, ConfigError> {
    let mut params = params;
    for entry in overrides {
        let (key, value) = entry
            .split_once('=')
            .ok_or_else(|| ConfigError::BadOverride(entry.clone()))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| ConfigError::BadOverride(entry.clone()))?;
        params.set_field(key.trim(), value)?;
    }
    Ok(params.validate()?)
}

/// The bundled reference configuration (clinical value set).
pub const REFERENCE_CONFIG: &str = include_str!("../config/reference.toml");
