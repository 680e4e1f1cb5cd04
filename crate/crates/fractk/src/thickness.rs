//! Level-by-level checks of the cube conditions behind thickness, the ball
//! condition and interior regularity.
//!
//! Every ratio is reported relative to `ξ^j`. Bounds are compared with a
//! relative slack of `1e-9` so that constructions which meet a bound with
//! equality (the interior cube side, for instance) are not rejected by
//! rounding.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    segments_intersect, square_inside_region, AxisSquare, Complement, Disc, Point, Region,
    Segment, SegmentIndex, Tolerance,
};
use crate::prefractal::{Prefractal, ThicknessConstants};

const SLACK: f64 = 1e-9;

fn at_least(v: f64, lo: f64) -> bool {
    v >= lo * (1.0 - SLACK) - SLACK * f64::EPSILON
}

fn at_most(v: f64, hi: f64) -> bool {
    v <= hi * (1.0 + SLACK) + 1e-15
}

/// The input of a witness search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Query {
    Point(Point),
    Cube(AxisSquare),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    Cube(AxisSquare),
    Disc(Disc),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// The construction from the proof.
    Construction,
    /// The lattice search after the construction failed.
    Search,
    /// Nothing found.
    None,
}

/// Outcome of one witness query.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub query: Query,
    pub witness: Option<Witness>,
    pub method: Method,
    /// Realised ratios, each divided by `ξ^j`.
    pub realized: BTreeMap<String, f64>,
    /// Declared `[lo, hi]` interval per realised ratio.
    pub bounds: BTreeMap<String, [f64; 2]>,
    pub satisfied: bool,
}

impl WitnessReport {
    fn unsatisfied(query: Query) -> Self {
        WitnessReport {
            query,
            witness: None,
            method: Method::None,
            realized: BTreeMap::new(),
            bounds: BTreeMap::new(),
            satisfied: false,
        }
    }

    /// True when every realised ratio lies in its declared interval.
    pub fn within_bounds(&self) -> bool {
        self.bounds.iter().all(|(k, [lo, hi])| {
            self.realized.get(k).is_some_and(|&v| at_least(v, *lo) && at_most(v, *hi))
        })
    }
}

/// Distance from a square to a boundary, with the nearest boundary point.
/// Returns `(0, p)` if the boundary meets the square.
pub fn closest_boundary_point(q: &AxisSquare, index: &SegmentIndex) -> Option<(f64, Point)> {
    let d = q.edges().iter().filter_map(|e| index.min_dist_to_segment(e)).fold(f64::INFINITY, f64::min);
    if !d.is_finite() {
        return None;
    }
    let segs = index.segments();
    let mut best: Option<(f64, Point)> = None;
    let mut offer = |dist: f64, p: Point| {
        if best.is_none_or(|(b, _)| dist < b) {
            best = Some((dist, p));
        }
    };
    for id in index.candidates_in_box(&q.bbox().expand(d + 1e-12)) {
        let s = &segs[id];
        for e in q.edges() {
            if segments_intersect(s, &e) {
                offer(0.0, s.closest_point(e.closest_point(s.a)));
            }
        }
        offer(q.dist_to_point(s.a), s.a);
        offer(q.dist_to_point(s.b), s.b);
        for c in q.corners() {
            let p = s.closest_point(c);
            offer(q.dist_to_point(p), p);
        }
    }
    best
}

/// Distance from a square to a region boundary (0 if they meet).
fn dist_to_boundary(q: &AxisSquare, index: &SegmentIndex) -> f64 {
    let (lo, hi) = (q.min_corner, q.max_corner());
    let segs = index.segments();
    let mut inside = false;
    index.for_each_in_box(&q.bbox(), |id| {
        let m = segs[id].midpoint();
        if m.x >= lo.x && m.x <= hi.x && m.y >= lo.y && m.y <= hi.y {
            inside = true;
        }
    });
    if inside {
        return 0.0;
    }
    q.edges().iter().filter_map(|e| index.min_dist_to_segment(e)).fold(f64::INFINITY, f64::min)
}

/// Bounds on `(l(Q), dist(Q, ∂), dist(Q, x))`, as multiples of `ξ^j`.
#[derive(Clone, Copy, Debug)]
struct CubeBounds {
    l: [f64; 2],
    dist_lo: f64,
    dist_hi: f64,
}

fn evaluate(q: &AxisSquare, x: Point, region: &dyn Region, scale: f64, b: &CubeBounds, tol: Tolerance) -> WitnessReport {
    let contained = square_inside_region(q, region, tol);
    let l = q.side / scale;
    let db = dist_to_boundary(q, region.boundary()) / scale;
    let dq = q.dist_to_point(x) / scale;
    let realized = BTreeMap::from([
        ("l".to_string(), l),
        ("dist_boundary".to_string(), db),
        ("dist_query".to_string(), dq),
        ("contained".to_string(), if contained { 1.0 } else { 0.0 }),
    ]);
    let bounds = BTreeMap::from([
        ("l".to_string(), b.l),
        ("dist_boundary".to_string(), [b.dist_lo, f64::INFINITY]),
        ("dist_query".to_string(), [0.0, b.dist_hi]),
        ("contained".to_string(), [1.0, 1.0]),
    ]);
    let mut r = WitnessReport {
        query: Query::Point(x),
        witness: Some(Witness::Cube(*q)),
        method: Method::Construction,
        realized,
        bounds,
        satisfied: false,
    };
    r.satisfied = r.within_bounds() && at_most(db, dq);
    r
}

/// Lattice search: centres on the `ξ^j/16` lattice within reach of `x`,
/// scanned in lexicographic order, three side candidates each.
fn search(x: Point, region: &dyn Region, scale: f64, b: &CubeBounds, tol: Tolerance) -> Option<WitnessReport> {
    let h = scale / 16.0;
    let sides = [b.l[0], 0.5 * (b.l[0] + b.l[1]), b.l[1]].map(|s| s * scale);
    let reach = b.dist_hi * scale + sides[2];
    let (a0, a1) = (((x.x - reach) / h).floor() as i64, ((x.x + reach) / h).ceil() as i64);
    let (b0, b1) = (((x.y - reach) / h).floor() as i64, ((x.y + reach) / h).ceil() as i64);
    for a in a0..=a1 {
        for bb in b0..=b1 {
            let c = Point::new(a as f64 * h, bb as f64 * h);
            for &s in &sides {
                let Ok(q) = AxisSquare::centered(c, s) else { continue };
                if !at_most(q.dist_to_point(x) / scale, b.dist_hi) {
                    continue;
                }
                let mut r = evaluate(&q, x, region, scale, b, tol);
                if r.satisfied {
                    r.method = Method::Search;
                    return Some(r);
                }
            }
        }
    }
    None
}

fn cube_witness(
    x: Point,
    candidate: Option<AxisSquare>,
    region: &dyn Region,
    scale: f64,
    b: CubeBounds,
    tol: Tolerance,
) -> WitnessReport {
    if let Some(q) = candidate {
        let r = evaluate(&q, x, region, scale, &b, tol);
        if r.satisfied {
            return r;
        }
    }
    search(x, region, scale, &b, tol).unwrap_or_else(|| WitnessReport::unsatisfied(Query::Point(x)))
}

fn require_on_boundary(x: Point, region: &dyn Region, tol: Tolerance, what: &str) -> Result<()> {
    let d = region.boundary().dist_to_point(x);
    if d > tol.eps {
        return Err(Error::Precondition(format!("query point is {d:e} away from {what}")));
    }
    Ok(())
}

/// Interior cube for `x⁻ ∈ ∂Γ_j⁻`, checked against `c1m..c4m`.
pub fn inner_cube_witness(
    level: &dyn Prefractal,
    x: Point,
    k: &ThicknessConstants,
    tol: Tolerance,
) -> Result<WitnessReport> {
    require_on_boundary(x, level.inner(), tol, "the inner boundary")?;
    let scale = level.xi().powi(level.level() as i32);
    let b = CubeBounds { l: [k.c1m, k.c2m], dist_lo: k.c3m, dist_hi: k.c4m };
    Ok(cube_witness(x, level.inner_candidate(x), level.inner(), scale, b, tol))
}

/// Exterior cube for `x⁺ ∈ ∂Γ_j⁺`, checked against `c1p..c4p`.
pub fn exterior_cube_witness(
    level: &dyn Prefractal,
    x: Point,
    k: &ThicknessConstants,
    tol: Tolerance,
) -> Result<WitnessReport> {
    require_on_boundary(x, level.outer(), tol, "the outer boundary")?;
    let scale = level.xi().powi(level.level() as i32);
    let b = CubeBounds { l: [k.c1p, k.c2p], dist_lo: k.c3p, dist_hi: k.c4p };
    let ext = Complement(level.outer());
    Ok(cube_witness(x, level.exterior_candidate(x), &ext, scale, b, tol))
}

/// The constants `c1..c4` a query cube must satisfy in the thickness definitions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

/// Which side the query cube is on.
#[derive(Clone, Copy, PartialEq)]
enum Side {
    Interior,
    Exterior,
}

/// Shared body of the two thickness queries. The limit domain is replaced by
/// a finer level `J`: interior cubes are measured against `∂Γ_J⁻`, exterior
/// cubes against `∂Γ_J⁺`; both distances are lower bounds for the distance to
/// the limit boundary because `Γ_J⁻ ⊂ Γ⁻ ⊂ Γ_J⁺`.
fn thick_query(
    coarse: &dyn Prefractal,
    fine: &dyn Prefractal,
    q: &AxisSquare,
    qc: &QueryConstants,
    k: &ThicknessConstants,
    side: Side,
    tol: Tolerance,
) -> Result<WitnessReport> {
    if fine.level() < coarse.level() {
        return Err(Error::Precondition("stand-in level must not be coarser than the query level".into()));
    }
    let scale = coarse.xi().powi(coarse.level() as i32);
    let fine_ext = Complement(fine.outer());
    let (home, other): (&dyn Region, &dyn Region) = match side {
        Side::Interior => (fine.inner(), &fine_ext),
        Side::Exterior => (&fine_ext, fine.inner()),
    };
    if !square_inside_region(q, home, tol) {
        return Err(Error::Precondition("query cube is not contained in its side of the domain".into()));
    }
    let l = q.side / scale;
    let (dist, x) = closest_boundary_point(q, home.boundary())
        .ok_or_else(|| Error::Precondition("domain boundary is empty".into()))?;
    let dist = dist / scale;
    if !(at_least(l, qc.c1) && at_most(l, qc.c2) && at_least(dist, qc.c3) && at_most(dist, qc.c4)) {
        return Err(Error::Precondition(format!(
            "query cube has l/ξ^j = {l}, dist/ξ^j = {dist}; outside the declared constants"
        )));
    }
    // Jump to the level-j boundary on the other side and build the partner cube there.
    let (target, partner, (c5, c6, c7, c4x)) = match side {
        Side::Interior => (coarse.outer(), Side::Exterior, (k.c1p, k.c2p, k.c3p, k.c4p)),
        Side::Exterior => (coarse.inner(), Side::Interior, (k.c1m, k.c2m, k.c3m, k.c4m)),
    };
    let (_, id) = target.boundary().nearest(x).ok_or_else(|| Error::Precondition("empty level boundary".into()))?;
    let xj = target.boundary().segments()[id].closest_point(x);
    let inner = match partner {
        Side::Exterior => exterior_cube_witness(coarse, xj, k, tol)?,
        Side::Interior => inner_cube_witness(coarse, xj, k, tol)?,
    };
    let query = Query::Cube(*q);
    let Some(Witness::Cube(w)) = inner.witness.filter(|_| inner.satisfied) else {
        return Ok(WitnessReport::unsatisfied(query));
    };
    let contained = square_inside_region(&w, other, tol);
    let r5 = w.side / scale;
    let r7 = dist_to_boundary(&w, other.boundary()) / scale;
    let r8 = w.dist_to_square(q) / scale;
    let jump = x.dist(xj) / scale;
    let realized = BTreeMap::from([
        ("c5".to_string(), r5),
        ("c7".to_string(), r7),
        ("c8".to_string(), r8),
        ("jump".to_string(), jump),
        ("query_l".to_string(), l),
        ("query_dist".to_string(), dist),
        ("contained".to_string(), if contained { 1.0 } else { 0.0 }),
    ]);
    let bounds = BTreeMap::from([
        ("c5".to_string(), [c5, c6]),
        ("c7".to_string(), [c7, f64::INFINITY]),
        ("c8".to_string(), [0.0, qc.c4 + k.c + c4x]),
        ("jump".to_string(), [0.0, k.c]),
        ("contained".to_string(), [1.0, 1.0]),
    ]);
    let mut r = WitnessReport { query, witness: Some(Witness::Cube(w)), method: inner.method, realized, bounds, satisfied: false };
    r.satisfied = r.within_bounds() && at_most(r7, r8);
    Ok(r)
}

/// Exterior partner for an interior cube `Qⁱ ⊂ Γ_J⁻`, following the proof:
/// nearest boundary point `x`, jump to `x⁺ ∈ ∂Γ_j⁺`, exterior cube at `x⁺`.
/// The realised `c8` is checked against `c4 + c + c4⁺`.
pub fn ethick_witness(
    coarse: &dyn Prefractal,
    fine: &dyn Prefractal,
    qi: &AxisSquare,
    qc: &QueryConstants,
    k: &ThicknessConstants,
    tol: Tolerance,
) -> Result<WitnessReport> {
    thick_query(coarse, fine, qi, qc, k, Side::Interior, tol)
}

/// Interior partner for an exterior cube `Qᵉ ⊂ (Γ_J⁺)ᶜ`; `c8 ≤ c4 + c + c4⁻`.
pub fn ithick_witness(
    coarse: &dyn Prefractal,
    fine: &dyn Prefractal,
    qe: &AxisSquare,
    qc: &QueryConstants,
    k: &ThicknessConstants,
    tol: Tolerance,
) -> Result<WitnessReport> {
    thick_query(coarse, fine, qe, qc, k, Side::Exterior, tol)
}

/// Summary of the collar condition at one level.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cond1Report {
    pub level: u32,
    pub c: f64,
    pub cells_sampled: usize,
    pub points: usize,
    /// `max dist(x, ∂Γ_j⁻)/ξ^j` over the samples.
    pub max_inner_ratio: f64,
    /// `max dist(x, ∂Γ_j⁺)/ξ^j` over the samples.
    pub max_outer_ratio: f64,
    pub satisfied: bool,
}

const GRID: usize = 7;

/// Vertices plus a `grid × grid` interior grid of a convex cell: affine for
/// quadrilaterals, a collapsed square for triangles.
fn cell_points(cell: &[Point], grid: usize) -> Vec<Point> {
    let mut pts = cell.to_vec();
    let t = |i: usize| (i as f64 + 0.5) / grid as f64;
    for a in 0..grid {
        for b in 0..grid {
            let (u, v) = (t(a), t(b));
            let p = match cell.len() {
                3 => cell[0] + ((cell[1] - cell[0]) * (1.0 - v) + (cell[2] - cell[0]) * v) * u,
                _ => cell[0] + (cell[1] - cell[0]) * u + (cell[3] - cell[0]) * v,
            };
            pts.push(p);
        }
    }
    pts
}

/// Picks `n` distinct indices out of `0..len` (all of them if `n >= len`), sorted.
fn pick(len: usize, n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    if n >= len {
        return (0..len).collect();
    }
    let mut v = rand::seq::index::sample(rng, len, n).into_vec();
    v.sort_unstable();
    v
}

/// Checks `dist(x, ∂Γ_j^±) ≤ cξ^j` on points of `Δ_j`.
pub fn check_cond1(level: &dyn Prefractal, c: f64, samples: usize, seed: u64) -> Result<Cond1Report> {
    if samples == 0 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let cells = level.collar_cells();
    if cells.is_empty() {
        return Err(Error::Empty("collar has no cells".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen = pick(cells.len(), samples, &mut rng);
    // Few cells at coarse levels: refine the grid so that at least `samples` points are tested.
    let grid = GRID.max((samples as f64 / chosen.len() as f64).sqrt().ceil() as usize);
    let scale = level.xi().powi(level.level() as i32);
    let (bi, bo) = (level.inner().boundary(), level.outer().boundary());
    let per_cell: Vec<(usize, f64, f64)> = chosen
        .par_iter()
        .map(|&i| {
            let pts = cell_points(&cells[i], grid);
            let mi = pts.iter().map(|&p| bi.dist_to_point(p)).fold(0.0, f64::max);
            let mo = pts.iter().map(|&p| bo.dist_to_point(p)).fold(0.0, f64::max);
            (pts.len(), mi, mo)
        })
        .collect();
    let points = per_cell.iter().map(|t| t.0).sum();
    let max_inner_ratio = per_cell.iter().map(|t| t.1).fold(0.0, f64::max) / scale;
    let max_outer_ratio = per_cell.iter().map(|t| t.2).fold(0.0, f64::max) / scale;
    Ok(Cond1Report {
        level: level.level(),
        c,
        cells_sampled: chosen.len(),
        points,
        max_inner_ratio,
        max_outer_ratio,
        satisfied: at_most(max_inner_ratio, c) && at_most(max_outer_ratio, c),
    })
}

/// Uniform random points on a segment set (segment chosen by index, then position).
pub fn boundary_samples(segs: &[Segment], n: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    if segs.is_empty() {
        return Vec::new();
    }
    (0..n)
        .map(|_| {
            let s = &segs[rng.gen_range(0..segs.len())];
            s.a.lerp(s.b, rng.gen::<f64>())
        })
        .collect()
}

/// Aggregate of many witness queries at one level.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub level: u32,
    pub queries: usize,
    pub satisfied: usize,
    pub by_construction: usize,
    pub by_search: usize,
    pub realized_min: BTreeMap<String, f64>,
    pub realized_max: BTreeMap<String, f64>,
    /// Up to ten failing reports, in query order.
    pub failures: Vec<WitnessReport>,
}

impl ScanSummary {
    pub fn all_satisfied(&self) -> bool {
        self.queries > 0 && self.satisfied == self.queries
    }

    pub fn from_reports(level: u32, reports: &[WitnessReport]) -> Self {
        let mut s = ScanSummary {
            level,
            queries: reports.len(),
            satisfied: 0,
            by_construction: 0,
            by_search: 0,
            realized_min: BTreeMap::new(),
            realized_max: BTreeMap::new(),
            failures: Vec::new(),
        };
        for r in reports {
            if r.satisfied {
                s.satisfied += 1;
            } else if s.failures.len() < 10 {
                s.failures.push(r.clone());
            }
            match r.method {
                Method::Construction => s.by_construction += 1,
                Method::Search => s.by_search += 1,
                Method::None => {}
            }
            for (k, &v) in &r.realized {
                let lo = s.realized_min.entry(k.clone()).or_insert(v);
                *lo = lo.min(v);
                let hi = s.realized_max.entry(k.clone()).or_insert(v);
                *hi = hi.max(v);
            }
        }
        s
    }
}

/// Interior (`exterior = false`) or exterior cube witnesses at `n` random
/// boundary points.
pub fn scan_cube_witnesses(
    level: &dyn Prefractal,
    k: &ThicknessConstants,
    exterior: bool,
    n: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<ScanSummary> {
    let reports = cube_witness_reports(level, k, exterior, n, seed, tol)?;
    Ok(ScanSummary::from_reports(level.level(), &reports))
}

/// The individual reports behind [`scan_cube_witnesses`], in sample order.
pub fn cube_witness_reports(
    level: &dyn Prefractal,
    k: &ThicknessConstants,
    exterior: bool,
    n: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<Vec<WitnessReport>> {
    let region = if exterior { level.outer() } else { level.inner() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = boundary_samples(region.boundary().segments(), n, &mut rng);
    if pts.is_empty() {
        return Err(Error::Empty("boundary is empty".into()));
    }
    pts.par_iter()
        .map(|&x| {
            if exterior {
                exterior_cube_witness(level, x, k, tol)
            } else {
                inner_cube_witness(level, x, k, tol)
            }
        })
        .collect()
}

/// Runs E-thickness (`exterior_queries = false`: interior query cubes) or
/// I-thickness queries. Query cubes are the level-`j` witnesses at `n` random
/// points of `∂Γ_j^∓`; they satisfy the definition with
/// `(c1, c2, c3, c4) = (c1^∓, c2^∓, c3^∓, c4^∓ + c)` against the stand-in level.
pub fn scan_thickness(
    coarse: &dyn Prefractal,
    fine: &dyn Prefractal,
    k: &ThicknessConstants,
    exterior_queries: bool,
    n: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<ScanSummary> {
    let reports = thickness_reports(coarse, fine, k, exterior_queries, n, seed, tol)?;
    Ok(ScanSummary::from_reports(coarse.level(), &reports))
}

/// The individual reports behind [`scan_thickness`], in sample order.
pub fn thickness_reports(
    coarse: &dyn Prefractal,
    fine: &dyn Prefractal,
    k: &ThicknessConstants,
    exterior_queries: bool,
    n: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<Vec<WitnessReport>> {
    let base = scan_inputs(coarse, k, exterior_queries, n, seed, tol)?;
    let qc = if exterior_queries {
        QueryConstants { c1: k.c1p, c2: k.c2p, c3: k.c3p, c4: k.c4p + k.c }
    } else {
        QueryConstants { c1: k.c1m, c2: k.c2m, c3: k.c3m, c4: k.c4m + k.c }
    };
    base.par_iter()
        .map(|q| {
            if exterior_queries {
                ithick_witness(coarse, fine, q, &qc, k, tol)
            } else {
                ethick_witness(coarse, fine, q, &qc, k, tol)
            }
        })
        .collect()
}

fn scan_inputs(
    level: &dyn Prefractal,
    k: &ThicknessConstants,
    exterior: bool,
    n: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<Vec<AxisSquare>> {
    let region = if exterior { level.outer() } else { level.inner() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = boundary_samples(region.boundary().segments(), n, &mut rng);
    let mut out = Vec::with_capacity(pts.len());
    for x in pts {
        let r = if exterior { exterior_cube_witness(level, x, k, tol)? } else { inner_cube_witness(level, x, k, tol)? };
        if let (true, Some(Witness::Cube(q))) = (r.satisfied, r.witness) {
            out.push(q);
        }
    }
    Ok(out)
}

/// Best porosity witness: the largest `η` on the grid `x + (i,k)·r/32`,
/// `|i|,|k| ≤ 32`, such that `B(y, ηr) ⊂ B(x, r)` and `dist(B(y, ηr), S) ≥ ηr`.
/// Ties resolve to the first grid point in lexicographic order.
pub fn ball_condition_witness(boundary: &SegmentIndex, x: Point, r: f64) -> (f64, Disc) {
    const STEPS: i32 = 32;
    let h = r / STEPS as f64;
    let mut best = (0.0, x);
    for i in -STEPS..=STEPS {
        for k in -STEPS..=STEPS {
            let y = x + Point::new(i as f64 * h, k as f64 * h);
            let room = (r - y.dist(x)) / r;
            if room <= best.0 {
                continue;
            }
            let eta = room.min(boundary.dist_to_point(y) / (2.0 * r));
            if eta > best.0 {
                best = (eta, y);
            }
        }
    }
    let radius = (best.0 * r).max(f64::MIN_POSITIVE);
    (best.0, Disc { center: best.1, radius })
}

/// `min |Ω ∩ Q(x, ℓ/2)| / ℓ²` over sample points and side lengths.
pub fn interior_regularity_scan(region: &dyn Region, samples: &[Point], sides: &[f64]) -> Result<f64> {
    if sides.iter().any(|&s| !(s > 0.0 && s <= 1.0)) {
        return Err(Error::InvalidInput("cube sides must lie in (0, 1]".into()));
    }
    if samples.is_empty() || sides.is_empty() {
        return Err(Error::Empty("need sample points and sides".into()));
    }
    let ratios: Vec<f64> = samples
        .par_iter()
        .flat_map_iter(|&x| {
            sides.iter().map(move |&s| {
                let q = AxisSquare::centered(x, s).expect("positive side");
                region.area_in_square(&q) / q.area()
            })
        })
        .collect();
    Ok(ratios.into_iter().fold(f64::INFINITY, f64::min))
}

/// Re-derives every distance of a satisfied cube report from raw geometry.
/// Returns the largest discrepancy against the stored ratios.
pub fn revalidate(report: &WitnessReport, region: &dyn Region, scale: f64) -> Option<f64> {
    let (Query::Point(x), Some(Witness::Cube(q))) = (report.query, report.witness) else {
        return None;
    };
    let segs = region.boundary().segments();
    // Brute force, independent of the index.
    let db = segs
        .iter()
        .map(|s| {
            q.edges().iter().map(|e| crate::geom::dist_segment_segment(e, s)).fold(f64::INFINITY, f64::min)
        })
        .fold(f64::INFINITY, f64::min);
    let dq = {
        let c = q.center();
        let h = q.side / 2.0;
        let dx = ((x.x - c.x).abs() - h).max(0.0);
        let dy = ((x.y - c.y).abs() - h).max(0.0);
        dx.hypot(dy)
    };
    let diffs = [
        (report.realized.get("l")? - q.side / scale).abs(),
        (report.realized.get("dist_boundary")? - db / scale).abs(),
        (report.realized.get("dist_query")? - dq / scale).abs(),
    ];
    Some(diffs.into_iter().fold(0.0, f64::max))
}
