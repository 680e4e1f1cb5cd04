//! Box counting, dimension fits, ring checks for the d-set property and
//! convergence of the prefractal boundaries.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{collar_area, ClassicalLevel, ClassicalParams};
use crate::error::{invalid, Error, Result};
use crate::geom::{hausdorff_distance, polygon_area, Point, Segment, SegmentIndex};
use crate::prefractal::Family;
use crate::square::{square_prefractal, QuarterKind};

const SNAP: f64 = 1e-9;

fn snapped_floor(u: f64) -> i64 {
    let r = u.round();
    if (u - r).abs() < SNAP {
        r as i64
    } else {
        u.floor() as i64
    }
}

/// Grid cells of pitch `r` met by one segment.
///
/// A cell counts when the segment passes through its open interior. A piece
/// lying on a grid line is assigned to the cell on its left, so the boundary
/// of a counter-clockwise polygon is counted in the cells it encloses.
fn segment_cells(s: &Segment, r: f64, out: &mut Vec<(i64, i64)>) {
    let (a, b) = (s.a / r, s.b / r);
    let d = b - a;
    let mut ts = vec![0.0, 1.0];
    for (lo, hi, p0, dp) in [(a.x.min(b.x), a.x.max(b.x), a.x, d.x), (a.y.min(b.y), a.y.max(b.y), a.y, d.y)] {
        if dp.abs() < SNAP {
            continue;
        }
        let mut g = lo.ceil();
        while g <= hi {
            let t = (g - p0) / dp;
            if t > 0.0 && t < 1.0 {
                ts.push(t);
            }
            g += 1.0;
        }
    }
    ts.sort_by(f64::total_cmp);
    for w in ts.windows(2) {
        if w[1] - w[0] < SNAP {
            continue;
        }
        let m = a + d * (0.5 * (w[0] + w[1]));
        let on_x = (m.x - m.x.round()).abs() < SNAP;
        let on_y = (m.y - m.y.round()).abs() < SNAP;
        let i = if on_x {
            // Vertical piece: left of an upward move is the lower index.
            m.x.round() as i64 - i64::from(d.y > 0.0)
        } else {
            snapped_floor(m.x)
        };
        let k = if on_y {
            m.y.round() as i64 - i64::from(d.x < 0.0)
        } else {
            snapped_floor(m.y)
        };
        out.push((i, k));
    }
}

/// Number of cells of the pitch-`r` grid anchored at the origin met by the segments.
pub fn box_count(segments: &[Segment], r: f64) -> Result<u64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(invalid(format!("grid size must be positive, got {r}")));
    }
    let mut cells: Vec<(i64, i64)> = segments
        .par_chunks(4096)
        .flat_map_iter(|chunk| {
            let mut v = Vec::new();
            for s in chunk {
                segment_cells(s, r, &mut v);
            }
            v
        })
        .collect();
    cells.par_sort_unstable();
    cells.dedup();
    Ok(cells.len() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxCountEntry {
    pub r: f64,
    pub count: u64,
}

/// Box counts at strictly decreasing grid sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxCountSeries {
    entries: Vec<BoxCountEntry>,
}

impl BoxCountSeries {
    pub fn new(entries: Vec<BoxCountEntry>) -> Result<Self> {
        if entries.windows(2).any(|w| w[1].r >= w[0].r) {
            return Err(invalid("grid sizes must be strictly decreasing"));
        }
        Ok(BoxCountSeries { entries })
    }

    /// Counts `segments` at each size in `radii` (given coarse to fine).
    pub fn measure(segments: &[Segment], radii: &[f64]) -> Result<Self> {
        let entries = radii.iter().map(|&r| Ok(BoxCountEntry { r, count: box_count(segments, r)? })).collect::<Result<_>>()?;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[BoxCountEntry] {
        &self.entries
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
    /// `(r_min, r_max)` of the entries used.
    pub range_used: (f64, f64),
}

/// Ordinary least squares `y ≈ slope·x + intercept`; also returns the RMS residual.
fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (xs.iter().zip(ys).map(|(x, y)| (y - slope * x - intercept).powi(2)).sum::<f64>() / n).sqrt();
    (slope, intercept, residual)
}

/// Least-squares slope of `ln count` against `ln(1/r)`, after dropping the
/// `drop_low` coarsest and `drop_high` finest entries.
pub fn fit_dimension(series: &BoxCountSeries, drop_low: usize, drop_high: usize) -> Result<DimensionFit> {
    let e = series.entries();
    if drop_low + drop_high + 3 > e.len() {
        return Err(Error::Empty(format!(
            "need at least 3 entries after dropping {drop_low}+{drop_high} of {}",
            e.len()
        )));
    }
    let used = &e[drop_low..e.len() - drop_high];
    if used.iter().any(|x| x.count == 0) {
        return Err(invalid("cannot fit a series with empty counts"));
    }
    let xs: Vec<f64> = used.iter().map(|x| -x.r.ln()).collect();
    let ys: Vec<f64> = used.iter().map(|x| (x.count as f64).ln()).collect();
    let (slope, intercept, residual) = least_squares(&xs, &ys);
    Ok(DimensionFit { slope, intercept, residual, range_used: (used[used.len() - 1].r, used[0].r) })
}

/// Empirical two-sided bounds of `H^d(B(γ, r) ∩ Γ) / r^d`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingCheck {
    pub c1_hat: f64,
    pub c2_hat: f64,
    pub queries: usize,
}

/// Approximates `H^d(B(γ, r) ∩ Γ)` by the number of level-`J` edges meeting
/// the closed disc times `len^d`, where `len = ξ^J` is the common edge length.
/// Radii must exceed `ξ^{J−2}` and be at most 1.
pub fn dset_ring_check(segments: &[Segment], xi: f64, d: f64, centers: &[Point], radii: &[f64]) -> Result<RingCheck> {
    if segments.is_empty() || centers.is_empty() || radii.is_empty() {
        return Err(Error::Empty("ring check needs segments, centres and radii".into()));
    }
    let len = segments[0].length();
    let floor = len / (xi * xi);
    if let Some(&r) = radii.iter().find(|&&r| !(r > floor * (1.0 + 1e-12) && r <= 1.0)) {
        return Err(Error::Precondition(format!("radius {r} is outside ({floor}, 1]")));
    }
    let index = SegmentIndex::new(segments.to_vec());
    let ratios: Vec<f64> = centers
        .par_iter()
        .flat_map_iter(|&c| {
            let index = &index;
            radii.iter().map(move |&r| index.within(c, r).len() as f64 * (len / r).powf(d))
        })
        .collect();
    Ok(RingCheck {
        c1_hat: ratios.iter().copied().fold(f64::INFINITY, f64::min),
        c2_hat: ratios.iter().copied().fold(0.0, f64::max),
        queries: ratios.len(),
    })
}

/// Level-`j` boundary used for dimension work: `∂Γ_j⁻` for the classical
/// family, `∂Γ_j` for the square one.
pub fn family_boundary(family: &Family, j: u32) -> Result<Vec<Segment>> {
    match family {
        Family::Classical { beta } => {
            let p = ClassicalParams::new(*beta)?;
            Ok(crate::classical::inner_prefractal(&p, j)?.segments())
        }
        Family::Square => Ok(square_prefractal(j)?.boundary_segments()),
    }
}

/// Constant `c` in `d_H(∂Γ_j, ∂Γ) ≤ cξ^j`.
pub fn convergence_constant(family: &Family) -> f64 {
    match family {
        Family::Classical { .. } => std::f64::consts::FRAC_1_SQRT_2,
        Family::Square => 1.0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub j: u32,
    pub value: f64,
    pub error_bound: f64,
    /// `cξ^j + cξ^{j_max}`; the second term pays for the stand-in.
    pub bound: f64,
    pub within: bool,
}

/// `d_H(∂Γ_j, ∂Γ_{j_max})` for `j = 0..=j_max`, sampled at spacing `ξ^{j_max}`.
pub fn hausdorff_convergence(family: &Family, j_max: u32) -> Result<Vec<ConvergenceRow>> {
    let xi = family.xi()?;
    let c = convergence_constant(family);
    let top = family_boundary(family, j_max)?;
    let spacing = xi.powi(j_max as i32);
    (0..=j_max)
        .map(|j| {
            let h = if j == j_max {
                crate::geom::HausdorffEstimate { value: 0.0, error_bound: 0.0 }
            } else {
                hausdorff_distance(&family_boundary(family, j)?, &top, spacing)?
            };
            let bound = c * xi.powi(j as i32) + c * spacing;
            Ok(ConvergenceRow { j, value: h.value, error_bound: h.error_bound, bound, within: h.value <= bound + h.error_bound })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollarRow {
    pub j: u32,
    pub area: f64,
    pub closed_form: f64,
    pub rel_err: f64,
}

/// Geometric collar areas against their closed forms, `j = 0..=j_max`.
pub fn collar_measure_series(family: &Family, j_max: u32) -> Result<Vec<CollarRow>> {
    (0..=j_max)
        .map(|j| {
            let (area, closed_form) = match family {
                Family::Classical { beta } => {
                    let p = ClassicalParams::new(*beta)?;
                    let lvl = ClassicalLevel::new(p, j)?;
                    (polygon_area(lvl.outer.polygon()) - polygon_area(lvl.inner.polygon()), collar_area(&p, j))
                }
                Family::Square => {
                    let lvl = square_prefractal(j)?;
                    (lvl.region(QuarterKind::Collar).area(), 2f64.powi(1 - j as i32))
                }
            };
            Ok(CollarRow { j, area, closed_form, rel_err: (area - closed_form).abs() / closed_form })
        })
        .collect()
}
