//! Per-body verification reports and seeded batch sweeps.

use rand::RngCore;
use rayon::prelude::*;
use serde::Serialize;

use super::volume::{check_volume_bound, VolumeCheck, VolumeMethod};
use super::{chain_from_summary, check_profile, check_rigidity, ChainResult, RigidityFinding, CHAIN_TOL};
use crate::comparison::{ComparisonOutcome, RESIDUAL_TOL};
use crate::error::Result;
use crate::generate::{generate_body, GenConfig};
use crate::io::BodyDescriptor;
use crate::solver::{summarize, GeometrySummary, SolverOptions};
use crate::{Body, Scalar};

const LENS_NOTE: &str = "lens-space rigidity: not representable as a ball intersection, unchecked";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub solver: SolverOptions,
    /// Chain and rigidity tolerance on lengths.
    pub tol: f64,
    /// Geodesic subdivisions for the comparison profile.
    pub profile_steps: usize,
    /// Monte Carlo samples per sphere for the volume bound in `n ≥ 3`.
    pub volume_samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            solver: SolverOptions::default(),
            tol: CHAIN_TOL,
            profile_steps: 2000,
            volume_samples: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub chain: f64,
    pub rigidity_hausdorff: f64,
    pub profile_residual: f64,
    pub rad_gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileFinding<T> {
    pub pass: bool,
    pub outcome: Option<ComparisonOutcome<T>>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeFinding<T> {
    Checked(VolumeCheck<T>),
    Skipped(String),
}

/// Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport<T> {
    pub body: BodyDescriptor,
    pub seed: u64,
    pub boundary_samples: usize,
    pub tolerances: Tolerances,
    pub summary: GeometrySummary<T>,
    pub chain: ChainResult<T>,
    pub rigidity: RigidityFinding<T>,
    pub profile: ProfileFinding<T>,
    pub volume: VolumeFinding<T>,
    pub unchecked: Vec<String>,
    pub pass: bool,
}

impl<T: Scalar> VerificationReport<T> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs every applicable check on `body`.
pub fn verify_body<T: Scalar>(body: &Body<T>, opts: &VerifyOptions) -> Result<VerificationReport<T>> {
    let tol = T::lit(opts.tol);
    let seed = opts.solver.seed;
    let summary = summarize(body, &opts.solver)?;
    let chain = chain_from_summary(body.space(), &summary, tol)?;
    let rigidity = check_rigidity(body, &summary, tol, seed)?;
    let profile = match check_profile(body, &summary, opts.profile_steps) {
        Ok(o) => ProfileFinding {
            pass: o.pass,
            outcome: Some(o),
            error: None,
        },
        Err(e) => ProfileFinding {
            pass: false,
            outcome: None,
            error: Some(e.to_string()),
        },
    };
    let volume = volume_finding(body, opts, tol, seed)?;
    let mut unchecked = vec![];
    if !body.space().is_flat() {
        unchecked.push(LENS_NOTE.to_string());
    }
    let volume_ok = match &volume {
        VolumeFinding::Checked(v) => v.pass,
        VolumeFinding::Skipped(_) => true,
    };
    let pass = chain.pass && !rigidity.violated && profile.pass && volume_ok;
    Ok(VerificationReport {
        body: BodyDescriptor::from_body(body),
        seed,
        boundary_samples: opts.solver.samples,
        tolerances: Tolerances {
            chain: opts.tol,
            rigidity_hausdorff: 5.0 * opts.tol,
            profile_residual: RESIDUAL_TOL,
            rad_gap: opts.solver.rad_tol,
        },
        summary,
        chain,
        rigidity,
        profile,
        volume,
        unchecked,
        pass,
    })
}

fn volume_finding<T: Scalar>(body: &Body<T>, opts: &VerifyOptions, tol: T, seed: u64) -> Result<VolumeFinding<T>> {
    let sf = body.space();
    if !sf.is_flat() {
        return Ok(VolumeFinding::Skipped("volume bound is stated for kappa = 0 only".into()));
    }
    if body.base_angle_lower_bound() < T::one() - T::tol(1e-12) {
        return Ok(VolumeFinding::Skipped("base angle bound below 1".into()));
    }
    if sf.dim() > 2 && opts.volume_samples == 0 {
        return Ok(VolumeFinding::Skipped("Monte Carlo volume disabled".into()));
    }
    let method = VolumeMethod::auto(sf.dim(), opts.volume_samples);
    Ok(VolumeFinding::Checked(check_volume_bound(body, method, tol, seed)?))
}

/// One CSV row per body.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow<T> {
    pub index: usize,
    pub seed: u64,
    pub kappa: u8,
    pub dim: usize,
    pub balls: usize,
    pub report: Option<VerificationReport<T>>,
    pub error: Option<String>,
}

impl<T: Scalar> SweepRow<T> {
    pub fn pass(&self) -> bool {
        self.report.as_ref().is_some_and(|r| r.pass)
    }

    pub fn chain_pass(&self) -> bool {
        self.report.as_ref().is_some_and(|r| r.chain.pass)
    }
}

pub const CSV_HEADER: [&str; 17] = [
    "index",
    "seed",
    "kappa",
    "dim",
    "balls",
    "A",
    "a",
    "rad",
    "b",
    "bound_b",
    "model_R",
    "chain_pass",
    "rigid",
    "profile_pass",
    "volume_pass",
    "pass",
    "error",
];

/// Seed of body `index` in a batch driven by `seed`.
pub fn body_seed(seed: u64, index: usize) -> u64 {
    crate::body::stream(seed, (3u64 << 32) + index as u64).next_u64()
}

/// Generates and verifies `count` bodies in parallel; rows come back in
/// index order.
pub fn sweep<T: Scalar>(gen: &GenConfig, count: usize, seed: u64, opts: &VerifyOptions) -> Result<Vec<SweepRow<T>>> {
    gen.space()?;
    // Surface configuration errors once instead of per row.
    if count > 0 {
        generate_body::<T>(gen, body_seed(seed, 0))?;
    }
    Ok((0..count)
        .into_par_iter()
        .map(|index| {
            let s = body_seed(seed, index);
            let mut row = SweepRow {
                index,
                seed: s,
                kappa: gen.curvature.kappa(),
                dim: gen.dim,
                balls: 0,
                report: None,
                error: None,
            };
            let run = generate_body::<T>(gen, s).and_then(|body| {
                row.balls = body.balls().len();
                let o = VerifyOptions {
                    solver: SolverOptions { seed: s, ..opts.solver },
                    ..*opts
                };
                verify_body(&body, &o)
            });
            match run {
                Ok(r) => row.report = Some(r),
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect())
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Writes the header and one record per row.
pub fn write_csv<T: Scalar, W: std::io::Write>(rows: &[SweepRow<T>], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        let mut rec: Vec<String> = vec![
            row.index.to_string(),
            row.seed.to_string(),
            row.kappa.to_string(),
            row.dim.to_string(),
            row.balls.to_string(),
        ];
        match &row.report {
            Some(r) => {
                let s = &r.summary;
                rec.push(s.curvature_bound.to_string());
                for t in r.chain.terms {
                    rec.push(t.to_string());
                }
                rec.push(flag(r.chain.pass).into());
                rec.push(flag(r.rigidity.rigid).into());
                rec.push(flag(r.profile.pass).into());
                rec.push(match &r.volume {
                    VolumeFinding::Checked(v) => flag(v.pass).into(),
                    VolumeFinding::Skipped(_) => String::new(),
                });
                rec.push(flag(r.pass).into());
                rec.push(String::new());
            }
            None => {
                rec.extend(std::iter::repeat(String::new()).take(10));
                rec.push("false".into());
                rec.push(row.error.clone().unwrap_or_default());
            }
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
