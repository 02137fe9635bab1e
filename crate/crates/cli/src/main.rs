//! `radbound`: generate bodies, verify them, reproduce the cut-the-tip
//! example, spot-check the comparison ODE and run seeded sweeps.
//!
//! Exit status: 0 all checks pass, 1 a check failed, 2 input error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use radbound::comparison::{integrate, ComparisonOutcome};
use radbound::verify::report::{sweep, write_csv};
use radbound::{
    generate_body, make_cutthetip, ode_compare, parse_body, verify_body, write_body, ComparisonProfile, Curvature,
    Error, Forcing, GenConfig, SolverOptions, VerificationReport, VerifyOptions,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "radbound", version, about = "Radius bounds for ball intersections with a base-angle bound")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random body file.
    Gen {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a body file.
    Verify {
        input: PathBuf,
        #[command(flatten)]
        check: CheckArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify the cut-the-tip body.
    Example {
        #[arg(long = "target-A", visible_alias = "A", default_value_t = 1.0)]
        target_a: f64,
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[command(flatten)]
        check: CheckArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Integrate f'' + κf = g and compare with the closed-form solution.
    Ode {
        #[arg(long, default_value_t = 0)]
        kappa: i64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        f0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        df0: f64,
        /// `c`, `poly:c0,c1,...` or `pwl:t0:g0,t1:g1,...`.
        #[arg(long, default_value = "1")]
        forcing: String,
        #[arg(long, default_value_t = 2.0)]
        horizon: f64,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate and verify a seeded batch.
    Sweep {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        check: CheckArgs,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    kappa: i64,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Ball count `k` or inclusive range `lo..hi`.
    #[arg(long, default_value = "2..4")]
    balls: String,
    /// Defaults to 0.3 times the maximum.
    #[arg(long)]
    radius_min: Option<f64>,
    /// Defaults to the model radius for `--target-A`.
    #[arg(long)]
    radius_max: Option<f64>,
    #[arg(long = "target-A", default_value_t = 1.0)]
    target_a: f64,
}

#[derive(Args)]
struct CheckArgs {
    /// Chain tolerance on lengths; rigidity uses five times this.
    #[arg(long, default_value_t = radbound::verify::CHAIN_TOL, allow_hyphen_values = true)]
    tol: f64,
    /// Boundary samples seeding the radius solver.
    #[arg(long, default_value_t = 400)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Report)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Report,
    Csv,
}

enum Failure {
    Input(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gen { gen, seed, out } => {
            let body = generate_body::<f64>(&gen.config()?, seed)?;
            emit(out.as_ref(), write_body(&body).as_bytes())
        }
        Command::Verify { input, check, seed } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
            let body = parse_body::<f64>(&text).map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
            let report = verify_body(&body, &check.options(seed))?;
            emit_reports(&check, std::slice::from_ref(&report))
        }
        Command::Example {
            target_a,
            a,
            eps,
            check,
            seed,
        } => {
            let body = make_cutthetip(target_a, a, eps)?;
            let report = verify_body(&body, &check.options(seed))?;
            emit_reports(&check, std::slice::from_ref(&report))
        }
        Command::Ode {
            kappa,
            f0,
            df0,
            forcing,
            horizon,
            steps,
            out,
        } => run_ode(kappa, f0, df0, &forcing, horizon, steps, out.as_ref()),
        Command::Sweep { gen, count, seed, check } => {
            let rows = sweep::<f64>(&gen.config()?, count, seed, &check.options(seed))?;
            let pass = rows.iter().all(|r| r.pass());
            match check.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_csv(&rows, &mut buf)?;
                    emit(check.out.as_ref(), &buf)?;
                }
                Format::Report => {
                    let reports: Vec<_> = rows.iter().map(|r| (r.seed, &r.report, &r.error)).collect();
                    let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
                    emit(check.out.as_ref(), format!("{text}\n").as_bytes())?;
                }
            }
            if pass {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

impl GenArgs {
    fn config(&self) -> Result<GenConfig, Failure> {
        let curvature = Curvature::from_kappa(self.kappa)?;
        let balls = parse_count_range(&self.balls)?;
        let mut cfg = GenConfig {
            balls,
            ..GenConfig::new(curvature, self.dim, self.target_a)
        };
        let max = match self.radius_max {
            Some(m) => m,
            None => cfg.space()?.model_radius(self.target_a).map_err(|e| {
                Failure::Input(format!("--radius-max is required here: {e}"))
            })?,
        };
        cfg.radius = (self.radius_min.unwrap_or(0.3 * max), max);
        Ok(cfg)
    }
}

fn parse_count_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Input(format!("--balls: expected `k` or `lo..hi`, got `{s}`"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?)),
        None => {
            let k = s.trim().parse().map_err(|_| bad())?;
            Ok((k, k))
        }
    }
}

impl CheckArgs {
    fn options(&self, seed: u64) -> VerifyOptions {
        VerifyOptions {
            solver: SolverOptions {
                samples: self.samples,
                seed,
                ..SolverOptions::default()
            },
            tol: self.tol,
            ..VerifyOptions::default()
        }
    }
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Input(format!("stdout: {e}"))),
    }
}

fn emit_reports(check: &CheckArgs, reports: &[VerificationReport<f64>]) -> Result<(), Failure> {
    let bytes = match check.format {
        Format::Report => {
            let mut s = reports.iter().map(|r| r.to_json()).collect::<Vec<_>>().join("\n");
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => {
            let rows: Vec<_> = reports
                .iter()
                .enumerate()
                .map(|(index, r)| radbound::verify::report::SweepRow {
                    index,
                    seed: r.seed,
                    kappa: r.body.kappa as u8,
                    dim: r.body.dim,
                    balls: r.body.balls.len(),
                    report: Some(r.clone()),
                    error: None,
                })
                .collect();
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            buf
        }
    };
    emit(check.out.as_ref(), &bytes)?;
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

#[derive(Serialize)]
struct OdeReport {
    kappa: i64,
    f0: f64,
    df0: f64,
    forcing: String,
    horizon: f64,
    steps: usize,
    outcome: Option<ComparisonOutcome<f64>>,
    error: Option<String>,
    pass: bool,
}

fn parse_forcing(s: &str) -> Result<Forcing<f64>, Failure> {
    let bad = |what: &str| Failure::Input(format!("--forcing: {what} in `{s}`"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad("bad number"));
    if let Some(rest) = s.strip_prefix("poly:") {
        let coeffs = rest.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
        Ok(Forcing::Polynomial(coeffs))
    } else if let Some(rest) = s.strip_prefix("pwl:") {
        let knots = rest
            .split(',')
            .map(|k| {
                let (t, g) = k.split_once(':').ok_or_else(|| bad("knot must be `t:g`"))?;
                Ok((num(t)?, num(g)?))
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        if knots.is_empty() || knots.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(bad("knots must be strictly increasing"));
        }
        Ok(Forcing::PiecewiseLinear(knots))
    } else {
        Ok(Forcing::constant(num(s)?))
    }
}

fn run_ode(
    kappa: i64,
    f0: f64,
    df0: f64,
    forcing: &str,
    horizon: f64,
    steps: usize,
    out: Option<&PathBuf>,
) -> Result<(), Failure> {
    let curvature = Curvature::from_kappa(kappa)?;
    let g = parse_forcing(forcing)?;
    if !(horizon > 0.0) || steps < 2 {
        return Err(Failure::Input("need horizon > 0 and steps >= 2".into()));
    }
    let samples = integrate(curvature, f0, df0, &g, horizon, steps);
    let result = ComparisonProfile::new(curvature, f0, df0, samples).and_then(|p| ode_compare(&p));
    let (outcome, error) = match result {
        Ok(o) => (Some(o), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let pass = outcome.is_some_and(|o| o.pass);
    let report = OdeReport {
        kappa,
        f0,
        df0,
        forcing: forcing.to_string(),
        horizon,
        steps,
        outcome,
        error: error.clone(),
        pass,
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    emit(out, format!("{text}\n").as_bytes())?;
    match (error, pass) {
        (Some(e), _) => Err(Failure::Input(e)),
        (None, true) => Ok(()),
        (None, false) => Err(Failure::Check),
    }
}
