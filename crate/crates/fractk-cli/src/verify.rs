//! `verify`: per-query witness reports for one family and level, or the full suite.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use fractk::geom::Tolerance;
use fractk::prefractal::{build, Family, Profile, ThicknessConstants};
use fractk::suite::{ball_section, regularity_section, run_suite, SuiteConfig, RNG_NAME};
use fractk::thickness::{check_cond1, cube_witness_reports, thickness_reports, ScanSummary, WitnessReport};
use serde::Serialize;

use crate::{emit, to_json, CliError, FamilyArgs, Outcome};

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    check: Check,
    #[command(flatten)]
    family: FamilyArgs,
    /// Prefractal level `j`. The suite ignores it.
    #[arg(long, default_value_t = 3)]
    level: u32,
    /// Stand-in level for the limit domain; defaults to `j + 2`, capped at 7 (classical) or 6 (square).
    #[arg(long)]
    fine_level: Option<u32>,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "proof")]
    profile: ProfileName,
    #[arg(long, default_value_t = Tolerance::DEFAULT_EPS)]
    tolerance: f64,
    /// Suite only: run both families instead of the selected one.
    #[arg(long)]
    all_families: bool,
    /// Suite only: the small smoke-test configuration.
    #[arg(long)]
    quick: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Check {
    /// E- and I-thickness queries against the stand-in level.
    Thickness,
    /// The collar condition and the interior and exterior cube constructions.
    Cond,
    /// Porosity of the boundary.
    Ball,
    /// Interior regularity of `Ω_j` and `Ω_{j+1}`.
    Interior,
    /// Every check for levels 1 to 5.
    Suite,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileName {
    Proof,
    Loose,
    Tight,
}

impl From<ProfileName> for Profile {
    fn from(p: ProfileName) -> Self {
        match p {
            ProfileName::Proof => Profile::Proof,
            ProfileName::Loose => Profile::Loose,
            ProfileName::Tight => Profile::Tight,
        }
    }
}

/// Everything that determines a report's bytes.
#[derive(Serialize)]
struct RunConfig {
    family: Family,
    level: u32,
    fine_level: u32,
    samples: usize,
    seed: u64,
    rng: &'static str,
    profile: Profile,
    tolerance: f64,
}

#[derive(Serialize)]
struct LabeledReport {
    section: &'static str,
    #[serde(flatten)]
    report: WitnessReport,
}

#[derive(Serialize)]
struct VerifyReport {
    check: Check,
    rng: &'static str,
    config: RunConfig,
    reports: Vec<LabeledReport>,
    summaries: BTreeMap<&'static str, serde_json::Value>,
    satisfied: bool,
}

fn fine_level(family: &Family, j: u32, over: Option<u32>) -> u32 {
    let cap = match family {
        Family::Classical { .. } => 7,
        Family::Square => 6,
    };
    over.unwrap_or((j + 2).min(cap)).max(j)
}

pub fn run(a: VerifyArgs) -> Result<Outcome, CliError> {
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let family = a.family.family()?;
    let profile = Profile::from(a.profile);
    if let Check::Suite = a.check {
        let families = if a.all_families {
            vec![Family::Classical { beta: a.family.beta }, Family::Square]
        } else {
            vec![family]
        };
        let base = if a.quick { SuiteConfig::quick(a.seed) } else { SuiteConfig::full(a.seed) };
        let cfg = SuiteConfig { families, profile, tolerance: a.tolerance, ..base };
        let report = run_suite(&cfg)?;
        emit(a.out.as_deref(), &to_json(&report)?)?;
        return Ok(if report.satisfied { Outcome::Ok } else { Outcome::Unsatisfied });
    }

    let j = a.level;
    let tol = Tolerance::new(a.tolerance)?;
    let k = ThicknessConstants::for_family(&family)?.with_profile(profile);
    let fine = fine_level(&family, j, a.fine_level);
    let config = RunConfig {
        family,
        level: j,
        fine_level: fine,
        samples: a.samples,
        seed: a.seed,
        rng: RNG_NAME,
        profile,
        tolerance: a.tolerance,
    };
    let mut reports = Vec::new();
    let mut summaries = BTreeMap::new();
    let mut satisfied = true;
    let mut add = |section: &'static str, rs: Vec<WitnessReport>, summaries: &mut BTreeMap<_, _>| {
        let s = ScanSummary::from_reports(j, &rs);
        satisfied &= s.all_satisfied();
        summaries.insert(section, serde_json::to_value(&s).expect("summary serialises"));
        reports.extend(rs.into_iter().map(|report| LabeledReport { section, report }));
    };
    // Distinct streams per section, as in the suite.
    let stream = |check: u64| a.seed ^ (check << 40) ^ j as u64;
    match a.check {
        Check::Thickness => {
            let (coarse, fine) = (build(&family, j)?, build(&family, fine)?);
            let e = thickness_reports(coarse.as_ref(), fine.as_ref(), &k, false, a.samples, stream(4), tol)?;
            add("e_thick", e, &mut summaries);
            let i = thickness_reports(coarse.as_ref(), fine.as_ref(), &k, true, a.samples, stream(5), tol)?;
            add("i_thick", i, &mut summaries);
        }
        Check::Cond => {
            let level = build(&family, j)?;
            let c1 = check_cond1(level.as_ref(), k.c, a.samples, stream(1))?;
            let c1_ok = c1.satisfied;
            summaries.insert("cond1", serde_json::to_value(&c1)?);
            let inner = cube_witness_reports(level.as_ref(), &k, false, a.samples, stream(2), tol)?;
            add("interior_cubes", inner, &mut summaries);
            let outer = cube_witness_reports(level.as_ref(), &k, true, a.samples, stream(3), tol)?;
            add("exterior_cubes", outer, &mut summaries);
            satisfied &= c1_ok;
        }
        Check::Ball | Check::Interior => {
            let cfg = SuiteConfig {
                seed: a.seed,
                families: vec![family],
                profile,
                tolerance: a.tolerance,
                ball_level: j,
                ball_centers: a.samples,
                regularity_levels: [j, j + 1],
                regularity_centers: a.samples,
                ..SuiteConfig::full(a.seed)
            };
            if let Check::Ball = a.check {
                let b = ball_section(&cfg, 0, &family)?;
                satisfied &= b.satisfied;
                summaries.insert("ball", serde_json::to_value(&b)?);
            } else {
                let r = regularity_section(&cfg, 0, &family)?;
                satisfied &= r.satisfied;
                summaries.insert("interior", serde_json::to_value(&r)?);
            }
        }
        Check::Suite => unreachable!("handled above"),
    }
    let report = VerifyReport { check: a.check, rng: RNG_NAME, config, reports, summaries, satisfied };
    emit(a.out.as_deref(), &to_json(&report)?)?;
    Ok(if report.satisfied { Outcome::Ok } else { Outcome::Unsatisfied })
}
