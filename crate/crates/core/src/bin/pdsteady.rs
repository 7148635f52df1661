//! Command-line front end: solve steady states, emit plot-ready CSV/JSON,
//! sweep parameters, and run verification checks.

use clap::{Parser, Subcommand, ValueEnum};
use pdsteady::bvp::DEFAULT_NODES;
use pdsteady::config::{apply_overrides, load_config, parse_config, REFERENCE_CONFIG};
use pdsteady::flux::{constant_steady_state, FluxProfile};
use pdsteady::output::{
    summarize, write_bessel_table, write_flux_csv, write_profiles_csv, write_summary_json,
    write_sweep_csv, SweepRow,
};
use pdsteady::profiles::steady_residual_check;
use pdsteady::{solve_profiles, ParameterSet, VoidVolumeModel};
use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "pdsteady",
    version,
    about = "Steady-state fluid-glucose-albumin transport solver for peritoneal dialysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    /// Constant fractional void volume, nu_m = (nu_min + nu_max) / 2
    ConstantNu,
    /// Linear fractional void volume from nu_max at the cavity to nu_min
    LinearNu,
}

impl Case {
    fn model(self, params: &ParameterSet) -> VoidVolumeModel {
        match self {
            Case::ConstantNu => VoidVolumeModel::constant_from(params),
            Case::LinearNu => VoidVolumeModel::linear_from(params),
        }
    }
}

#[derive(clap::Args)]
struct ParamArgs {
    /// TOML parameter file; the bundled clinical reference set when omitted
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a parameter, e.g. --set pa_a=2e-4 (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl ParamArgs {
    fn load(&self) -> Result<ParameterSet, Box<dyn std::error::Error>> {
        let base = match &self.config {
            Some(path) => load_config(path)?,
            None => parse_config(REFERENCE_CONFIG, "<bundled>")?,
        };
        Ok(apply_overrides(base, &self.set)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve the full steady state and write profiles.csv + summary.json
    Solve {
        #[arg(long, value_enum)]
        case: Case,
        #[command(flatten)]
        params: ParamArgs,
        /// Number of grid nodes
        #[arg(long, default_value_t = DEFAULT_NODES)]
        grid: usize,
        /// Directory for output artifacts
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Print the closed-form fluid flux profile as CSV (x, q_U, j_U)
    Flux {
        #[arg(long, value_enum)]
        case: Case,
        #[command(flatten)]
        params: ParamArgs,
        /// Number of sample points
        #[arg(long, default_value_t = 201)]
        grid: usize,
    },
    /// Print the spatially uniform steady state (C_G*, C_A*, P*) as JSON
    SteadyConstant {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Sweep one parameter and write sweep.csv
    Sweep {
        #[arg(long, value_enum)]
        case: Case,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = DEFAULT_NODES)]
        grid: usize,
        /// Parameter to sweep (config key, e.g. pa_a)
        #[arg(long)]
        param: String,
        /// Explicit comma-separated values, e.g. 5e-4,3e-4,2e-4
        #[arg(long, conflicts_with_all = ["from", "to", "count"])]
        values: Option<String>,
        /// Uniform range start (requires --to and --count)
        #[arg(long, requires = "to", requires = "count")]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Solve, then verify against the dimensional steady-state system at two
    /// resolutions; prints a JSON residual report
    ResidualCheck {
        #[arg(long, value_enum)]
        case: Case,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = DEFAULT_NODES)]
        grid: usize,
    },
    /// Print a CSV table of modified Bessel functions I0, I1, K0, K1
    BesselTable {
        #[arg(long, default_value_t = 0.1)]
        from: f64,
        #[arg(long, default_value_t = 30.0)]
        to: f64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            let mut source = err.source();
            while let Some(cause) = source {
                eprintln!("  caused by: {cause}");
                source = cause.source();
            }
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), Box<dyn std::error::Error>> {
    match cli.command {
        Command::Solve { case, params, grid, out_dir } => {
            let params = params.load()?;
            let solution = solve_profiles(&params, case.model(&params), grid)?;
            for warning in &solution.warnings {
                eprintln!("warning: {warning}");
            }
            std::fs::create_dir_all(&out_dir)?;
            let profiles_path = out_dir.join("profiles.csv");
            write_profiles_csv(&solution, BufWriter::new(File::create(&profiles_path)?))?;
            let summary = summarize(&solution);
            let summary_path = out_dir.join("summary.json");
            write_summary_json(&summary, BufWriter::new(File::create(&summary_path)?))?;
            write_summary_json(&summary, std::io::stdout().lock())?;
            eprintln!("wrote {} and {}", profiles_path.display(), summary_path.display());
            Ok(())
        }
        Command::Flux { case, params, grid } => {
            let params = params.load()?;
            let flux = FluxProfile::for_model(&params, &case.model(&params))?;
            let x = pdsteady::bvp::uniform_grid(grid.max(2));
            write_flux_csv(&x, &flux, std::io::stdout().lock())?;
            Ok(())
        }
        Command::SteadyConstant { params } => {
            let params = params.load()?;
            let state = constant_steady_state(&params);
            let (fluid, glucose, albumin) = state.residuals(&params);
            let doc = serde_json::json!({
                "c_g_star": state.c_g,
                "c_a_star": state.c_a,
                "p_star": state.p,
                "residuals": { "fluid": fluid, "glucose": glucose, "albumin": albumin },
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(())
        }
        Command::Sweep { case, params: args, grid, param, values, from, to, count, out_dir } => {
            let base = args.load()?;
            let points = sweep_points(values.as_deref(), from, to, count)?;
            let mut rows = Vec::with_capacity(points.len());
            for value in points {
                let outcome = solve_sweep_point(&base, &param, value, case, grid);
                if let Ok(summary) = &outcome {
                    for warning in &summary.warnings {
                        eprintln!("warning: {param}={value}: {warning}");
                    }
                }
                rows.push(SweepRow { param: param.clone(), value, outcome });
            }
            std::fs::create_dir_all(&out_dir)?;
            let path = out_dir.join("sweep.csv");
            write_sweep_csv(&rows, BufWriter::new(File::create(&path)?))?;
            write_sweep_csv(&rows, std::io::stdout().lock())?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        Command::ResidualCheck { case, params, grid } => {
            let params = params.load()?;
            let model = case.model(&params);
            let coarse = solve_profiles(&params, model, grid)?;
            let fine = solve_profiles(&params, model, 2 * (grid - 1) + 1)?;
            let rc = steady_residual_check(&coarse, &params);
            let rf = steady_residual_check(&fine, &params);
            let doc = serde_json::json!({
                "nodes": [rc.nodes, rf.nodes],
                "fluid": [rc.fluid, rf.fluid],
                "glucose": [rc.glucose, rf.glucose],
                "albumin": [rc.albumin, rf.albumin],
                "shrink_factors": {
                    "fluid": rc.fluid / rf.fluid,
                    "glucose": rc.glucose / rf.glucose,
                    "albumin": rc.albumin / rf.albumin,
                },
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(())
        }
        Command::BesselTable { from, to, count } => {
            if !(from > 0.0 && to > from && count >= 2) {
                return Err("bessel-table requires 0 < from < to and count >= 2".into());
            }
            let step = (to - from) / (count - 1) as f64;
            let ys = (0..count).map(move |i| from + i as f64 * step);
            write_bessel_table(ys, std::io::stdout().lock())?;
            Ok(())
        }
    }
}

fn sweep_points(
    values: Option<&str>,
    from: Option<f64>,
    to: Option<f64>,
    count: Option<usize>,
) -> Result<Vec<f64>, Box<dyn std::error::Error>> {
    if let Some(list) = values {
        let parsed: Result<Vec<f64>, _> = list.split(',').map(|v| v.trim().parse()).collect();
        let parsed = parsed.map_err(|e| format!("cannot parse --values `{list}`: {e}"))?;
        if parsed.is_empty() {
            return Err("--values must contain at least one number".into());
        }
        return Ok(parsed);
    }
    match (from, to, count) {
        (Some(a), Some(b), Some(n)) if n >= 2 => {
            let step = (b - a) / (n - 1) as f64;
            Ok((0..n).map(|i| a + i as f64 * step).collect())
        }
        (Some(a), Some(_), Some(1)) => Ok(vec![a]),
        _ => Err("sweep needs either --values or --from/--to/--count".into()),
    }
}

fn solve_sweep_point(
    base: &ParameterSet,
    param: &str,
    value: f64,
    case: Case,
    grid: usize,
) -> Result<pdsteady::output::Summary, String> {
    let mut params = base.clone();
    params.set_field(param, value).map_err(|e| e.to_string())?;
    let params = params.validate().map_err(|e| e.to_string())?;
    let solution =
        solve_profiles(&params, case.model(&params), grid).map_err(|e| e.to_string())?;
    Ok(summarize(&solution))
}
