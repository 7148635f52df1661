//! Artifact emission: profile CSV, summary JSON, sweep CSV.
//!
//! All numbers are written with Rust's shortest round-trip `f64` formatting,
//! so identical runs produce byte-identical artifacts and golden files can
//! be compared exactly. Any non-finite value in a numeric column is a hard
//! error; the only exception is the pair of reported flux expansion
//! coefficients, which may be unrepresentable in near-degenerate linear
//! cases and are then emitted as JSON nulls with a warning.

use crate::flux::FluxProfile;
use crate::profiles::{steady_residual_check, ResidualReport, SteadyStateSolution};
use serde::Serialize;
use std::io::Write;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("refusing to emit non-finite value in column `{column}` at row {row}")]
    NonFinite { column: &'static str, row: usize },
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

fn checked(column: &'static str, row: usize, value: f64) -> Result<f64, OutputError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(OutputError::NonFinite { column, row })
    }
}

/// Profile CSV, columns: x, u, w, p, C_G, C_A, P, q_U, j_U.
pub fn write_profiles_csv(
    solution: &SteadyStateSolution,
    mut out: impl Write,
) -> Result<(), OutputError> {
    writeln!(out, "x,u,w,p,C_G,C_A,P,q_U,j_U")?;
    for i in 0..solution.x.len() {
        let cols: [(&'static str, f64); 9] = [
            ("x", solution.x[i]),
            ("u", solution.u[i]),
            ("w", solution.w[i]),
            ("p", solution.p[i]),
            ("C_G", solution.c_g[i]),
            ("C_A", solution.c_a[i]),
            ("P", solution.p_dim[i]),
            ("q_U", solution.q_u[i]),
            ("j_U", solution.j_u[i]),
        ];
        let mut first = true;
        for (name, value) in cols {
            let v = checked(name, i, value)?;
            if first {
                write!(out, "{v}")?;
                first = false;
            } else {
                write!(out, ",{v}")?;
            }
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Flux-only CSV, columns: x, q_U, j_U (dimensional units).
pub fn write_flux_csv(
    x: &[f64],
    flux: &FluxProfile,
    mut out: impl Write,
) -> Result<(), OutputError> {
    writeln!(out, "x,q_U,j_U")?;
    for (i, &xi) in x.iter().enumerate() {
        let q = checked("q_U", i, flux.q_u(xi))?;
        let j = checked("j_U", i, flux.j_u(xi))?;
        writeln!(out, "{xi},{q},{j}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct SteadyResidualSummary {
    pub fluid: f64,
    pub glucose: f64,
    pub albumin: f64,
    pub fluid_scaled: f64,
    pub glucose_scaled: f64,
    pub albumin_scaled: f64,
}

impl From<ResidualReport> for SteadyResidualSummary {
    fn from(r: ResidualReport) -> Self {
        let (fluid_scaled, glucose_scaled, albumin_scaled) = r.scaled();
        SteadyResidualSummary {
            fluid: r.fluid,
            glucose: r.glucose,
            albumin: r.albumin,
            fluid_scaled,
            glucose_scaled,
            albumin_scaled,
        }
    }
}

/// Scalar summary of one solve, serialized as `summary.json`.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub case: &'static str,
    pub nodes: usize,
    /// Boundary fluid flux density q_U(0), mL min^-1 cm^-3.
    pub q0: f64,
    /// Constant-case decay rate; absent for the linear case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// Linear-case transform constants; absent for the constant case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_star: Option<f64>,
    /// Flux expansion coefficients; null when not representable in f64.
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub outflow_signed: f64,
    pub outflow_magnitude: f64,
    pub min_w: f64,
    pub min_w_at: f64,
    /// First grid point with u <= 0.02, if any.
    pub penetration_depth: Option<f64>,
    pub glucose_bvp_residual: f64,
    pub albumin_bvp_residual: f64,
    pub steady_residuals: SteadyResidualSummary,
    pub warnings: Vec<String>,
}

pub fn summarize(solution: &SteadyStateSolution) -> Summary {
    let (outflow_signed, outflow_magnitude) = solution.total_cavity_outflow();
    let (min_w, min_w_at) = solution.min_albumin();
    let finite = |v: f64| v.is_finite().then_some(v);
    let mut warnings = solution.warnings.clone();
    let (case, lambda, delta_star, nu_star, c1, c2) = match solution.flux {
        FluxProfile::ConstantNu { c1, c2, lambda, .. } => {
            ("constant-nu", Some(lambda), None, None, finite(c1), finite(c2))
        }
        FluxProfile::LinearNu { c1, c2, delta_star, nu_star, .. } => {
            ("linear-nu", None, Some(delta_star), Some(nu_star), finite(c1), finite(c2))
        }
    };
    if c1.is_none() || c2.is_none() {
        warnings.push(
            "flux expansion coefficients exceed f64 range; profile evaluation \
             is unaffected (scaled internally)"
                .into(),
        );
    }
    Summary {
        case,
        nodes: solution.x.len(),
        q0: solution.q_u[0],
        lambda,
        delta_star,
        nu_star,
        c1,
        c2,
        outflow_signed,
        outflow_magnitude,
        min_w,
        min_w_at,
        penetration_depth: solution.penetration_depth(0.02),
        glucose_bvp_residual: solution.diagnostics.glucose_bvp_residual,
        albumin_bvp_residual: solution.diagnostics.albumin_bvp_residual,
        steady_residuals: steady_residual_check(solution, &solution.params).into(),
        warnings,
    }
}

pub fn write_summary_json(summary: &Summary, mut out: impl Write) -> Result<(), OutputError> {
    for (name, value) in [
        ("q0", summary.q0),
        ("outflow_signed", summary.outflow_signed),
        ("outflow_magnitude", summary.outflow_magnitude),
        ("min_w", summary.min_w),
    ] {
        checked(name, 0, value)?;
    }
    let text = serde_json::to_string_pretty(summary)?;
    writeln!(out, "{text}")?;
    Ok(())
}

/// One row of a parameter sweep; failed points carry the error text and no
/// numeric payload.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub param: String,
    pub value: f64,
    pub outcome: Result<Summary, String>,
}

/// Sweep CSV, one row per parameter value, deterministic order.
pub fn write_sweep_csv(rows: &[SweepRow], mut out: impl Write) -> Result<(), OutputError> {
    writeln!(
        out,
        "param,value,outflow_signed,outflow_magnitude,min_w,penetration_depth,error"
    )?;
    for (i, row) in rows.iter().enumerate() {
        let value = checked("value", i, row.value)?;
        match &row.outcome {
            Ok(s) => {
                let depth = match s.penetration_depth {
                    Some(d) => format!("{d}"),
                    None => String::new(),
                };
                writeln!(
                    out,
                    "{},{value},{},{},{},{depth},",
                    row.param,
                    checked("outflow_signed", i, s.outflow_signed)?,
                    checked("outflow_magnitude", i, s.outflow_magnitude)?,
                    checked("min_w", i, s.min_w)?,
                )?;
            }
            Err(msg) => {
                writeln!(out, "{},{value},,,,,\"{}\"", row.param, msg.replace('"', "'"))?;
            }
        }
    }
    Ok(())
}

/// Debug table of modified Bessel values, columns: y, I0, I1, K0, K1.
pub fn write_bessel_table(
    ys: impl IntoIterator<Item = f64>,
    mut out: impl Write,
) -> Result<(), OutputError> {
    use crate::bessel::{i0, i1, k0, k1};
    writeln!(out, "y,I0,I1,K0,K1")?;
    for y in ys {
        let row: Result<Vec<f64>, _> = [i0(y), i1(y), k0(y), k1(y)].into_iter().collect();
        match row {
            Ok(v) => writeln!(out, "{y},{},{},{},{}", v[0], v[1], v[2], v[3])?,
            Err(e) => writeln!(out, "{y},,,,\"{e}\"")?,
        }
    }
    Ok(())
}
