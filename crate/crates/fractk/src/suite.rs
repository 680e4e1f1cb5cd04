//! The verification suite: every finite-scale check for a list of families,
//! collected into one serialisable report. Sample points come from ChaCha8
//! streams keyed by the configured seed, so equal configurations give equal
//! reports.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_6;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dimension::family_boundary;
use crate::error::Result;
use crate::geom::{SegmentIndex, Tolerance};
use crate::prefractal::{build, domain, Family, Prefractal, Profile, ThicknessConstants};
use crate::thickness::{
    ball_condition_witness, boundary_samples, check_cond1, interior_regularity_scan, scan_cube_witnesses,
    scan_thickness, Cond1Report, ScanSummary,
};

/// Name of the sample generator recorded in every report.
pub const RNG_NAME: &str = "chacha8";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub families: Vec<Family>,
    /// Thickness checks run for `j = min_level..=max_level`; the constructions start at level 1.
    pub min_level: u32,
    pub max_level: u32,
    /// Collar points and boundary queries per level.
    pub samples: usize,
    pub profile: Profile,
    /// Stand-in level for the limit domain is `j + fine_offset`, capped per family.
    pub fine_offset: u32,
    pub classical_fine_cap: u32,
    pub square_fine_cap: u32,
    pub ball_level: u32,
    pub ball_centers: usize,
    /// Interior regularity is compared between these two levels.
    pub regularity_levels: [u32; 2],
    pub regularity_centers: usize,
    pub tolerance: f64,
}

impl SuiteConfig {
    /// The configuration behind the acceptance numbers.
    pub fn full(seed: u64) -> Self {
        SuiteConfig {
            seed,
            families: vec![Family::Classical { beta: FRAC_PI_6 }, Family::Square],
            min_level: 1,
            max_level: 5,
            samples: 1000,
            profile: Profile::Proof,
            fine_offset: 2,
            classical_fine_cap: 7,
            square_fine_cap: 6,
            ball_level: 5,
            ball_centers: 100,
            regularity_levels: [5, 6],
            regularity_centers: 100,
            tolerance: Tolerance::DEFAULT_EPS,
        }
    }

    /// A small configuration for smoke tests.
    pub fn quick(seed: u64) -> Self {
        SuiteConfig {
            max_level: 2,
            samples: 40,
            ball_level: 3,
            ball_centers: 10,
            regularity_levels: [4, 5],
            regularity_centers: 10,
            ..Self::full(seed)
        }
    }

    fn fine_level(&self, family: &Family, j: u32) -> u32 {
        let cap = match family {
            Family::Classical { .. } => self.classical_fine_cap,
            Family::Square => self.square_fine_cap,
        };
        (j + self.fine_offset).min(cap).max(j)
    }

    /// Independent stream seed for one check.
    fn stream(&self, family_idx: usize, check: u64, j: u32) -> u64 {
        self.seed ^ ((family_idx as u64) << 48) ^ (check << 40) ^ j as u64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallReport {
    pub level: u32,
    pub centers: usize,
    pub radii: Vec<f64>,
    pub min_eta: f64,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub levels: [u32; 2],
    pub cubes: usize,
    pub sides: Vec<f64>,
    pub min_ratio: [f64; 2],
    pub relative_change: f64,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: Family,
    pub constants: ThicknessConstants,
    pub cond1: Vec<Cond1Report>,
    pub interior_cubes: Vec<ScanSummary>,
    pub exterior_cubes: Vec<ScanSummary>,
    pub e_thick: Vec<ScanSummary>,
    pub i_thick: Vec<ScanSummary>,
    pub ball: BallReport,
    pub regularity: RegularityReport,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub rng: String,
    pub config: SuiteConfig,
    pub families: Vec<FamilyReport>,
    pub satisfied: bool,
}

/// Thickness-type checks of one family at levels `min_level..=max_level`.
pub struct ThicknessSection {
    pub cond1: Vec<Cond1Report>,
    pub interior_cubes: Vec<ScanSummary>,
    pub exterior_cubes: Vec<ScanSummary>,
    pub e_thick: Vec<ScanSummary>,
    pub i_thick: Vec<ScanSummary>,
}

pub fn thickness_section(cfg: &SuiteConfig, idx: usize, family: &Family) -> Result<ThicknessSection> {
    let k = ThicknessConstants::for_family(family)?.with_profile(cfg.profile);
    let tol = Tolerance::new(cfg.tolerance)?;
    let mut levels: BTreeMap<u32, Box<dyn Prefractal>> = BTreeMap::new();
    let mut out = ThicknessSection {
        cond1: vec![],
        interior_cubes: vec![],
        exterior_cubes: vec![],
        e_thick: vec![],
        i_thick: vec![],
    };
    for j in cfg.min_level..=cfg.max_level {
        let fine = cfg.fine_level(family, j);
        for l in [j, fine] {
            if !levels.contains_key(&l) {
                levels.insert(l, build(family, l)?);
            }
        }
        // Levels below j are no longer needed.
        levels.retain(|&l, _| l >= j);
        let (coarse, fine) = (levels[&j].as_ref(), levels[&fine].as_ref());
        out.cond1.push(check_cond1(coarse, k.c, cfg.samples, cfg.stream(idx, 1, j))?);
        out.interior_cubes.push(scan_cube_witnesses(coarse, &k, false, cfg.samples, cfg.stream(idx, 2, j), tol)?);
        out.exterior_cubes.push(scan_cube_witnesses(coarse, &k, true, cfg.samples, cfg.stream(idx, 3, j), tol)?);
        out.e_thick.push(scan_thickness(coarse, fine, &k, false, cfg.samples, cfg.stream(idx, 4, j), tol)?);
        out.i_thick.push(scan_thickness(coarse, fine, &k, true, cfg.samples, cfg.stream(idx, 5, j), tol)?);
    }
    Ok(out)
}

/// Ball condition at `cfg.ball_level`, radii `ξ` and `ξ³`.
pub fn ball_section(cfg: &SuiteConfig, idx: usize, family: &Family) -> Result<BallReport> {
    let xi = family.xi()?;
    let segs = family_boundary(family, cfg.ball_level)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.stream(idx, 6, cfg.ball_level));
    let centers = boundary_samples(&segs, cfg.ball_centers, &mut rng);
    let index = SegmentIndex::new(segs);
    let radii = vec![xi, xi.powi(3)];
    let mut min_eta = f64::INFINITY;
    for &x in &centers {
        for &r in &radii {
            min_eta = min_eta.min(ball_condition_witness(&index, x, r).0);
        }
    }
    Ok(BallReport { level: cfg.ball_level, centers: centers.len(), radii, min_eta, satisfied: min_eta > 0.0 })
}

/// Interior regularity on cubes centred at points of `∂Ω_2`, sides `ξ` and `ξ²`,
/// measured in `Ω_j` at both configured levels.
pub fn regularity_section(cfg: &SuiteConfig, idx: usize, family: &Family) -> Result<RegularityReport> {
    let xi = family.xi()?;
    let seed_segs = family_boundary(family, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.stream(idx, 7, 2));
    let centers = boundary_samples(&seed_segs, cfg.regularity_centers, &mut rng);
    let sides = vec![xi, xi * xi];
    let mut min_ratio = [0.0; 2];
    for (slot, &j) in min_ratio.iter_mut().zip(&cfg.regularity_levels) {
        *slot = interior_regularity_scan(domain(family, j)?.as_ref(), &centers, &sides)?;
    }
    let relative_change = (min_ratio[0] - min_ratio[1]).abs() / min_ratio[1];
    Ok(RegularityReport {
        levels: cfg.regularity_levels,
        cubes: centers.len() * sides.len(),
        sides,
        min_ratio,
        relative_change,
        satisfied: min_ratio[0] > 0.0 && min_ratio[1] > 0.0 && relative_change <= 0.1,
    })
}

pub fn run_family(cfg: &SuiteConfig, idx: usize, family: &Family) -> Result<FamilyReport> {
    let t = thickness_section(cfg, idx, family)?;
    let ball = ball_section(cfg, idx, family)?;
    let regularity = regularity_section(cfg, idx, family)?;
    let satisfied = t.cond1.iter().all(|r| r.satisfied)
        && [&t.interior_cubes, &t.exterior_cubes, &t.e_thick, &t.i_thick]
            .iter()
            .all(|v| v.iter().all(ScanSummary::all_satisfied))
        && ball.satisfied
        && regularity.satisfied;
    Ok(FamilyReport {
        family: *family,
        constants: ThicknessConstants::for_family(family)?.with_profile(cfg.profile),
        cond1: t.cond1,
        interior_cubes: t.interior_cubes,
        exterior_cubes: t.exterior_cubes,
        e_thick: t.e_thick,
        i_thick: t.i_thick,
        ball,
        regularity,
        satisfied,
    })
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let families = cfg
        .families
        .iter()
        .enumerate()
        .map(|(i, f)| run_family(cfg, i, f))
        .collect::<Result<Vec<_>>>()?;
    let satisfied = families.iter().all(|f| f.satisfied);
    Ok(SuiteReport { rng: RNG_NAME.into(), config: cfg.clone(), families, satisfied })
}
