//! `estimate`: box counting, ring ratios, collar areas and Hausdorff convergence.

use std::fmt::Write;
use std::path::PathBuf;

use clap::{Args, Subcommand};
use fractk::dimension::{
    collar_measure_series, dset_ring_check, family_boundary, fit_dimension, hausdorff_convergence, BoxCountSeries,
};
use fractk::thickness::boundary_samples;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{emit, to_json, CliError, FamilyArgs, Outcome};

#[derive(Subcommand)]
pub enum EstimateTarget {
    /// Box-counting dimension of `∂Γ_J` on grids of size `ξ^k`.
    Dimension(DimensionArgs),
    /// Ring ratios `#{edges in B(x,r)}·(ℓ/r)^d` over boundary centres.
    Ring(RingArgs),
    /// Collar areas against their closed forms.
    Collar(SeriesArgs),
    /// Hausdorff distance of each level's boundary to the deepest one.
    Convergence(SeriesArgs),
}

#[derive(Args)]
pub struct DimensionArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Level `J` of the boundary that is counted.
    #[arg(long)]
    level: u32,
    /// Inclusive exponent range `k1..k2`; defaults to `1..J`.
    #[arg(long)]
    scales: Option<String>,
    /// Fit every scale instead of dropping the coarsest and finest.
    #[arg(long)]
    keep_ends: bool,
    /// CSV of the counts; the fit goes to stdout. Without it the CSV goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct RingArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    level: u32,
    #[arg(long, default_value_t = 100)]
    centers: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SeriesArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Deepest level.
    #[arg(long)]
    level: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_scales(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Usage(format!("--scales must look like k1..k2 with k1 < k2, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b): (u32, u32) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a >= b {
        return Err(bad());
    }
    Ok((a, b))
}

#[derive(Serialize)]
struct RingOutput {
    family: fractk::prefractal::Family,
    level: u32,
    d: f64,
    radii: Vec<f64>,
    seed: u64,
    #[serde(flatten)]
    check: fractk::dimension::RingCheck,
}

pub fn run(target: EstimateTarget) -> Result<Outcome, CliError> {
    match target {
        EstimateTarget::Dimension(a) => {
            let family = a.family.family()?;
            let xi = family.xi()?;
            let (k1, k2) = match &a.scales {
                Some(s) => parse_scales(s)?,
                None => (1, a.level.max(2)),
            };
            let radii: Vec<f64> = (k1..=k2).map(|k| xi.powi(k as i32)).collect();
            let series = BoxCountSeries::measure(&family_boundary(&family, a.level)?, &radii)?;
            let drop = usize::from(!a.keep_ends);
            let fit = fit_dimension(&series, drop, drop)?;
            let mut csv = String::from("r,count,logr,logcount\n");
            for e in series.entries() {
                writeln!(csv, "{},{},{},{}", e.r, e.count, e.r.ln(), (e.count as f64).ln()).unwrap();
            }
            match a.out.as_deref() {
                Some(p) => {
                    emit(Some(p), &csv)?;
                    print!("{}", to_json(&fit)?);
                }
                None => {
                    print!("{csv}");
                    eprint!("{}", to_json(&fit)?);
                }
            }
        }
        EstimateTarget::Ring(a) => {
            let family = a.family.family()?;
            let xi = family.xi()?;
            if a.level < 4 {
                return Err(CliError::Usage("ring check needs --level of at least 4".into()));
            }
            let segs = family_boundary(&family, a.level)?;
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let centers = boundary_samples(&segs, a.centers, &mut rng);
            // Radii down to ξ^{J-3}, above the ξ^{J-2} resolution floor.
            let radii: Vec<f64> = (1..=a.level - 3).map(|k| xi.powi(k as i32)).collect();
            let d = family.dimension()?;
            let check = dset_ring_check(&segs, xi, d, &centers, &radii)?;
            let out = RingOutput { family, level: a.level, d, radii, seed: a.seed, check };
            emit(a.out.as_deref(), &to_json(&out)?)?;
        }
        EstimateTarget::Collar(a) => {
            let rows = collar_measure_series(&a.family.family()?, a.level)?;
            emit(a.out.as_deref(), &to_json(&rows)?)?;
        }
        EstimateTarget::Convergence(a) => {
            let rows = hausdorff_convergence(&a.family.family()?, a.level)?;
            emit(a.out.as_deref(), &to_json(&rows)?)?;
            if rows.iter().any(|r| !r.within) {
                return Ok(Outcome::Unsatisfied);
            }
        }
    }
    Ok(Outcome::Ok)
}
