//! The square snowflake.
//!
//! `Γ_j` is a polyomino of `16^j` cells of side `ℓ_j = 4^{-j}` whose boundary
//! comes from an eight-edge replacement rule. All bookkeeping is done on the
//! integer grid of pitch `ℓ_j`. Each cell is split by its diagonals into four
//! quarter triangles; the tilted squares of the collar and of `Γ_j⁻` are unions
//! of two quarters facing each other across a cell edge, which makes the
//! regions `Γ_j⁻ = Γ_j ∖ Δ_j`, `Γ_j⁺ = Γ_j ∪ Δ_j` and `Δ_j` exact quarter sets.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{convex_intersection_area, AxisSquare, Location, Point, Polygon, Region, Segment, SegmentIndex, Tolerance};
use crate::ifs::SimilarityMap;
use crate::DEFAULT_EDGE_CAP;

/// Horizontal replacement rule in units of the new edge length, as offsets
/// along the edge direction and its left normal.
const RULE: [(i64, i64); 9] = [(0, 0), (1, 0), (1, 1), (2, 1), (2, 0), (2, -1), (3, -1), (3, 0), (4, 0)];

/// Bitset of grid cells `(i, k)` over a rectangle.
#[derive(Clone, Debug)]
pub struct CellGrid {
    i0: i64,
    k0: i64,
    w: usize,
    h: usize,
    bits: Vec<u64>,
}

impl CellGrid {
    fn empty(i0: i64, k0: i64, w: usize, h: usize) -> Self {
        CellGrid { i0, k0, w, h, bits: vec![0; (w * h).div_ceil(64)] }
    }

    fn set(&mut self, i: i64, k: i64) {
        let idx = (k - self.k0) as usize * self.w + (i - self.i0) as usize;
        self.bits[idx / 64] |= 1 << (idx % 64);
    }

    #[inline]
    pub fn contains(&self, i: i64, k: i64) -> bool {
        let (di, dk) = (i - self.i0, k - self.k0);
        if di < 0 || dk < 0 || di as usize >= self.w || dk as usize >= self.h {
            return false;
        }
        let idx = dk as usize * self.w + di as usize;
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().map(|b| b.count_ones() as u64).sum()
    }

    /// `(i_min, k_min, i_end, k_end)`, half-open.
    pub fn bounds(&self) -> (i64, i64, i64, i64) {
        (self.i0, self.k0, self.i0 + self.w as i64, self.k0 + self.h as i64)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (0..self.h as i64)
            .flat_map(move |dk| (0..self.w as i64).map(move |di| (self.i0 + di, self.k0 + dk)))
            .filter(move |&(i, k)| self.contains(i, k))
    }
}

/// Quarter triangle `d` of cell `(i, k)`: 0 = south, 1 = east, 2 = north, 3 = west.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quarter {
    pub i: i64,
    pub k: i64,
    pub d: u8,
}

impl Quarter {
    /// The quarter on the other side of this quarter's cell edge.
    pub fn across(&self) -> Quarter {
        let (i, k) = match self.d {
            0 => (self.i, self.k - 1),
            1 => (self.i + 1, self.k),
            2 => (self.i, self.k + 1),
            _ => (self.i - 1, self.k),
        };
        Quarter { i, k, d: (self.d + 2) % 4 }
    }

    fn corner(i: i64, k: i64, c: u8) -> (i64, i64) {
        match c % 4 {
            0 => (i, k),
            1 => (i + 1, k),
            2 => (i + 1, k + 1),
            _ => (i, k + 1),
        }
    }

    /// Vertices in doubled grid units (so the cell centre is integral), counter-clockwise.
    pub fn vertices2(&self) -> [(i64, i64); 3] {
        let a = Self::corner(self.i, self.k, self.d);
        let b = Self::corner(self.i, self.k, self.d + 1);
        [(2 * a.0, 2 * a.1), (2 * b.0, 2 * b.1), (2 * self.i + 1, 2 * self.k + 1)]
    }

    /// Midpoint of the cell edge, in doubled grid units: the centre of the
    /// tilted square this quarter belongs to.
    pub fn edge_midpoint2(&self) -> (i64, i64) {
        let v = self.vertices2();
        ((v[0].0 + v[1].0) / 2, (v[0].1 + v[1].1) / 2)
    }
}

/// Which quarter set a [`QuarterRegion`] represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuarterKind {
    /// `Γ_j` itself.
    Prefractal,
    /// `Γ_j⁻ = Γ_j ∖ Δ_j`.
    Inner,
    /// `Γ_j⁺ = Γ_j ∪ Δ_j`.
    Outer,
    /// `Δ_j`.
    Collar,
}

impl QuarterKind {
    #[inline]
    fn member(self, cell: bool, across: bool) -> bool {
        match self {
            QuarterKind::Prefractal => cell,
            QuarterKind::Inner => cell && across,
            QuarterKind::Outer => cell || across,
            QuarterKind::Collar => cell != across,
        }
    }
}

/// The square with diagonal `E_{j,k}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TiltedSquare {
    pub diagonal: Segment,
}

impl TiltedSquare {
    /// Counter-clockwise vertices: the diagonal endpoints and the two points
    /// at half-diagonal offset along the normal.
    pub fn vertices(&self) -> [Point; 4] {
        let (a, b) = (self.diagonal.a, self.diagonal.b);
        let m = a.midpoint(b);
        let n = (b - a).perp() * 0.5;
        [a, m - n, b, m + n]
    }

    pub fn area(&self) -> f64 {
        0.5 * self.diagonal.length().powi(2)
    }
}

/// Level `j` of the square snowflake.
#[derive(Clone, Debug)]
pub struct SquareLevel {
    pub j: u32,
    /// Grid cells per unit length, `4^j`.
    pub n: i64,
    verts: Vec<(i64, i64)>,
    cells: Arc<CellGrid>,
}

/// Builds `∂Γ_j` by the replacement rule and fills `Γ_j` by scanlines.
pub fn square_prefractal(j: u32) -> Result<SquareLevel> {
    let edges = 4u128 << (3 * j.min(40));
    if edges > DEFAULT_EDGE_CAP {
        return Err(Error::CapExceeded { requested: edges, cap: DEFAULT_EDGE_CAP });
    }
    let mut verts: Vec<(i64, i64)> = vec![(0, 0), (1, 0), (1, 1), (0, 1)];
    for _ in 0..j {
        let m = verts.len();
        let mut next = Vec::with_capacity(8 * m);
        for idx in 0..m {
            let (a, b) = (verts[idx], verts[(idx + 1) % m]);
            let (ux, uy) = (b.0 - a.0, b.1 - a.1);
            let (nx, ny) = (-uy, ux);
            let base = (4 * a.0, 4 * a.1);
            for &(s, t) in &RULE[..8] {
                next.push((base.0 + s * ux + t * nx, base.1 + s * uy + t * ny));
            }
        }
        verts = next;
    }
    let cells = Arc::new(fill_cells(&verts));
    Ok(SquareLevel { j, n: 4i64.pow(j), verts, cells })
}

fn fill_cells(verts: &[(i64, i64)]) -> CellGrid {
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
    for &(x, y) in verts {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    let mut grid = CellGrid::empty(xmin, ymin, (xmax - xmin) as usize, (ymax - ymin) as usize);
    let mut rows: Vec<Vec<i64>> = vec![Vec::new(); grid.h];
    let m = verts.len();
    for idx in 0..m {
        let (a, b) = (verts[idx], verts[(idx + 1) % m]);
        if a.0 == b.0 {
            for y in a.1.min(b.1)..a.1.max(b.1) {
                rows[(y - ymin) as usize].push(a.0);
            }
        }
    }
    for (r, xs) in rows.iter_mut().enumerate() {
        xs.sort_unstable();
        for pair in xs.chunks_exact(2) {
            for x in pair[0]..pair[1] {
                grid.set(x, ymin + r as i64);
            }
        }
    }
    grid
}

impl SquareLevel {
    pub fn ell(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn cells(&self) -> &CellGrid {
        &self.cells
    }

    pub fn edge_count(&self) -> usize {
        self.verts.len()
    }

    /// Boundary vertices in grid units, counter-clockwise from `(0,0)`.
    pub fn boundary_grid_vertices(&self) -> &[(i64, i64)] {
        &self.verts
    }

    fn to_point(&self, v: (i64, i64)) -> Point {
        Point::new(v.0 as f64 / self.n as f64, v.1 as f64 / self.n as f64)
    }

    /// `∂Γ_j` as a polygon; collinear vertices are kept so every edge has length `ℓ_j`.
    pub fn boundary_polygon(&self) -> Polygon {
        Polygon::new(self.verts.iter().map(|&v| self.to_point(v)).collect(), Tolerance::default())
            .expect("square prefractal boundary is a valid polygon")
    }

    pub fn boundary_segments(&self) -> Vec<Segment> {
        let m = self.verts.len();
        (0..m).map(|i| Segment::raw(self.to_point(self.verts[i]), self.to_point(self.verts[(i + 1) % m]))).collect()
    }

    /// Exact area from the integer shoelace.
    pub fn area(&self) -> f64 {
        let m = self.verts.len();
        let mut acc: i128 = 0;
        for i in 0..m {
            let (a, b) = (self.verts[i], self.verts[(i + 1) % m]);
            acc += a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        }
        acc as f64 / 2.0 / (self.n as f64 * self.n as f64)
    }

    /// One tilted square per boundary edge.
    pub fn tilted(&self) -> Vec<TiltedSquare> {
        self.boundary_segments().into_iter().map(|diagonal| TiltedSquare { diagonal }).collect()
    }

    pub fn region(&self, kind: QuarterKind) -> QuarterRegion {
        QuarterRegion { cells: Arc::clone(&self.cells), n: self.n, kind, boundary: OnceLock::new(), pyramid: OnceLock::new() }
    }
}

/// Tilted squares of `Δ_j` and their total area.
pub fn collar(j: u32) -> Result<(Vec<TiltedSquare>, f64)> {
    let lvl = square_prefractal(j)?;
    let t = lvl.tilted();
    let area = t.iter().map(TiltedSquare::area).sum();
    Ok((t, area))
}

/// `(Γ_j⁻, Γ_j⁺)`.
pub fn inner_outer(j: u32) -> Result<(QuarterRegion, QuarterRegion)> {
    let lvl = square_prefractal(j)?;
    Ok((lvl.region(QuarterKind::Inner), lvl.region(QuarterKind::Outer)))
}

pub fn square_ifs() -> [SimilarityMap; 8] {
    let x = 0.25;
    let m = |angle: f64, sx: f64, sy: f64| SimilarityMap { ratio: x, angle, shift: Point::new(sx, sy) };
    [
        m(0.0, 0.0, 0.0),
        m(FRAC_PI_2, x, 0.0),
        m(0.0, x, x),
        m(-FRAC_PI_2, 2.0 * x, x),
        m(-FRAC_PI_2, 2.0 * x, 0.0),
        m(0.0, 2.0 * x, -x),
        m(FRAC_PI_2, 3.0 * x, -x),
        m(0.0, 3.0 * x, 0.0),
    ]
}

/// Checks that the translates `Γ_j + (k₁,k₂)`, `k ∈ {-1,0,1}²`, have disjoint
/// cell sets and cover every cell of the unit square exactly once.
pub fn tiling_check(j: u32) -> Result<bool> {
    if j > 3 {
        return Err(Error::Precondition(format!("tiling check supports j <= 3, got {j}")));
    }
    let lvl = square_prefractal(j)?;
    let n = lvl.n;
    let cells = lvl.cells();
    let covers = |i: i64, k: i64| -> usize {
        let mut c = 0;
        for k1 in -1..=1 {
            for k2 in -1..=1 {
                if cells.contains(i - k1 * n, k - k2 * n) {
                    c += 1;
                }
            }
        }
        c
    };
    // Disjointness: no cell of any translate is shared with another translate.
    for (i, k) in cells.iter() {
        for k1 in -1..=1 {
            for k2 in -1..=1 {
                if covers(i + k1 * n, k + k2 * n) != 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok((0..n).all(|i| (0..n).all(|k| covers(i, k) == 1)))
}

/// Exposed edge of a quarter region with the quarters on either side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuarterEdge {
    pub inside: Quarter,
    pub outside: Quarter,
}

#[derive(Debug)]
struct Boundary {
    index: SegmentIndex,
    meta: Vec<QuarterEdge>,
}

/// Cell-count pyramid: level 0 stores quarter counts per 8×8 block of cells.
#[derive(Debug)]
struct Pyramid {
    i0: i64,
    k0: i64,
    levels: Vec<(usize, usize, Vec<u32>)>,
}

const BLOCK: i64 = 8;

/// A union of quarter triangles at one level.
#[derive(Debug)]
pub struct QuarterRegion {
    cells: Arc<CellGrid>,
    n: i64,
    kind: QuarterKind,
    boundary: OnceLock<Boundary>,
    pyramid: OnceLock<Pyramid>,
}

impl QuarterRegion {
    pub fn kind(&self) -> QuarterKind {
        self.kind
    }

    pub fn ell(&self) -> f64 {
        1.0 / self.n as f64
    }

    #[inline]
    pub fn contains_quarter(&self, q: Quarter) -> bool {
        let a = q.across();
        self.kind.member(self.cells.contains(q.i, q.k), self.cells.contains(a.i, a.k))
    }

    fn quarter_count(&self, i: i64, k: i64) -> u32 {
        let c = self.cells.contains(i, k);
        let nb = [
            self.cells.contains(i, k - 1),
            self.cells.contains(i + 1, k),
            self.cells.contains(i, k + 1),
            self.cells.contains(i - 1, k),
        ];
        nb.iter().filter(|&&a| self.kind.member(c, a)).count() as u32
    }

    /// Cell range that can hold member quarters, half-open.
    fn span(&self) -> (i64, i64, i64, i64) {
        let (a, b, c, d) = self.cells.bounds();
        (a - 1, b - 1, c + 1, d + 1)
    }

    /// Quarter containing `p` (ties on diagonals and cell edges resolved arbitrarily).
    pub fn quarter_at(&self, p: Point) -> Quarter {
        let (u, v) = (p.x * self.n as f64, p.y * self.n as f64);
        let (i, k) = (u.floor(), v.floor());
        let (fu, fv) = (u - i, v - k);
        let (a, b) = (fv - fu, fv + fu - 1.0);
        let d = match (a < 0.0, b < 0.0) {
            (true, true) => 0,
            (true, false) => 1,
            (false, false) => 2,
            (false, true) => 3,
        };
        Quarter { i: i as i64, k: k as i64, d }
    }

    /// Membership of the quarter containing `p`, with no boundary band.
    pub fn contains_point(&self, p: Point) -> bool {
        self.contains_quarter(self.quarter_at(p))
    }

    fn point2(&self, v: (i64, i64)) -> Point {
        let s = 2.0 * self.n as f64;
        Point::new(v.0 as f64 / s, v.1 as f64 / s)
    }

    /// Real-coordinate vertices of a quarter.
    pub fn quarter_vertices(&self, q: Quarter) -> [Point; 3] {
        q.vertices2().map(|v| self.point2(v))
    }

    /// Centre of the tilted square holding quarter `q`.
    pub fn tilted_center(&self, q: Quarter) -> Point {
        self.point2(q.edge_midpoint2())
    }

    /// Cells next to an edge of `∂Γ_j`, in row-major order; no other cell can
    /// hold an exposed quarter edge.
    fn frontier(&self) -> Vec<(i64, i64)> {
        let (i0, k0, i1, k1) = self.span();
        let mut keys = Vec::new();
        for k in k0..k1 {
            for i in i0..i1 {
                let c = self.cells.contains(i, k);
                if self.cells.contains(i + 1, k) != c {
                    keys.extend([(k, i), (k, i + 1)]);
                }
                if self.cells.contains(i, k + 1) != c {
                    keys.extend([(k, i), (k + 1, i)]);
                }
            }
        }
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().map(|(k, i)| (i, k)).collect()
    }

    fn build_boundary(&self) -> Boundary {
        let mut segs = Vec::new();
        let mut meta = Vec::new();
        for (i, k) in self.frontier() {
            for d in 0..4u8 {
                let q = Quarter { i, k, d };
                if !self.contains_quarter(q) {
                    continue;
                }
                let v = q.vertices2();
                let others = [q.across(), Quarter { i, k, d: (d + 1) % 4 }, Quarter { i, k, d: (d + 3) % 4 }];
                for (e, o) in others.into_iter().enumerate() {
                    if !self.contains_quarter(o) {
                        segs.push(Segment::raw(self.point2(v[e]), self.point2(v[(e + 1) % 3])));
                        meta.push(QuarterEdge { inside: q, outside: o });
                    }
                }
            }
        }
        Boundary { index: SegmentIndex::new(segs), meta }
    }

    fn boundary_data(&self) -> &Boundary {
        self.boundary.get_or_init(|| self.build_boundary())
    }

    /// Quarter pair on either side of boundary segment `id`.
    pub fn edge_meta(&self, id: usize) -> QuarterEdge {
        self.boundary_data().meta[id]
    }

    /// Points where the boundary meets itself (more than two exposed edges
    /// share an endpoint), in real coordinates, sorted.
    pub fn touch_points(&self) -> Vec<Point> {
        let s = 2.0 * self.n as f64;
        let key = |p: Point| ((p.x * s).round() as i64, (p.y * s).round() as i64);
        let mut deg: HashMap<(i64, i64), u32> = HashMap::new();
        for seg in self.boundary_data().index.segments() {
            *deg.entry(key(seg.a)).or_default() += 1;
            *deg.entry(key(seg.b)).or_default() += 1;
        }
        let mut pts: Vec<(i64, i64)> = deg.into_iter().filter(|&(_, c)| c > 2).map(|(k, _)| k).collect();
        pts.sort_unstable();
        pts.into_iter().map(|v| self.point2(v)).collect()
    }

    /// Number of member quarters.
    pub fn quarter_total(&self) -> u64 {
        let (i0, k0, i1, k1) = self.span();
        let mut t = 0u64;
        for k in k0..k1 {
            for i in i0..i1 {
                t += self.quarter_count(i, k) as u64;
            }
        }
        t
    }

    /// Member quarters in row-major cell order.
    pub fn quarters(&self) -> Vec<Quarter> {
        let (i0, k0, i1, k1) = self.span();
        let mut out = Vec::new();
        for k in k0..k1 {
            for i in i0..i1 {
                out.extend((0..4u8).map(|d| Quarter { i, k, d }).filter(|&q| self.contains_quarter(q)));
            }
        }
        out
    }

    /// Exact area: member quarters times `ℓ²/4`.
    pub fn area(&self) -> f64 {
        self.quarter_total() as f64 * 0.25 / (self.n as f64 * self.n as f64)
    }

    fn build_pyramid(&self) -> Pyramid {
        let (i0, k0, i1, k1) = self.span();
        let w = ((i1 - i0) as usize).div_ceil(BLOCK as usize);
        let h = ((k1 - k0) as usize).div_ceil(BLOCK as usize);
        let mut base = vec![0u32; w * h];
        for k in k0..k1 {
            let bk = ((k - k0) / BLOCK) as usize;
            for i in i0..i1 {
                let c = self.quarter_count(i, k);
                if c > 0 {
                    base[bk * w + ((i - i0) / BLOCK) as usize] += c;
                }
            }
        }
        let mut levels = vec![(w, h, base)];
        while {
            let (w, h, _) = &levels[levels.len() - 1];
            *w > 1 || *h > 1
        } {
            let (w, h, prev) = &levels[levels.len() - 1];
            let (nw, nh) = (w.div_ceil(2), h.div_ceil(2));
            let mut next = vec![0u32; nw * nh];
            for y in 0..*h {
                for x in 0..*w {
                    next[(y / 2) * nw + x / 2] += prev[y * w + x];
                }
            }
            levels.push((nw, nh, next));
        }
        Pyramid { i0, k0, levels }
    }

    fn pyramid(&self) -> &Pyramid {
        self.pyramid.get_or_init(|| self.build_pyramid())
    }

    /// Area of the region inside `[x0,x1]×[y0,y1]`, coordinates in cell units.
    fn area_in_rect_cells(&self, q: (f64, f64, f64, f64)) -> f64 {
        let py = self.pyramid();
        let top = py.levels.len() - 1;
        let mut acc = 0.0;
        self.visit(py, top, 0, 0, q, &mut acc);
        acc
    }

    fn visit(&self, py: &Pyramid, lvl: usize, bx: usize, by: usize, q: (f64, f64, f64, f64), acc: &mut f64) {
        let (w, h, counts) = &py.levels[lvl];
        if bx >= *w || by >= *h {
            return;
        }
        let cnt = counts[by * w + bx];
        if cnt == 0 {
            return;
        }
        let side = BLOCK << lvl;
        let x0 = (py.i0 + bx as i64 * side) as f64;
        let y0 = (py.k0 + by as i64 * side) as f64;
        let (x1, y1) = (x0 + side as f64, y0 + side as f64);
        let ox = q.2.min(x1) - q.0.max(x0);
        let oy = q.3.min(y1) - q.1.max(y0);
        if ox <= 0.0 || oy <= 0.0 {
            return;
        }
        if q.0 <= x0 && q.1 <= y0 && q.2 >= x1 && q.3 >= y1 {
            *acc += cnt as f64 * 0.25;
            return;
        }
        if cnt as i64 == 4 * side * side {
            *acc += ox * oy;
            return;
        }
        if lvl == 0 {
            let window = [Point::new(q.0, q.1), Point::new(q.2, q.1), Point::new(q.2, q.3), Point::new(q.0, q.3)];
            let (ci0, ck0) = (x0 as i64, y0 as i64);
            for k in ck0.max(q.1.floor() as i64)..(ck0 + side).min(q.3.ceil() as i64) {
                for i in ci0.max(q.0.floor() as i64)..(ci0 + side).min(q.2.ceil() as i64) {
                    let c = self.quarter_count(i, k);
                    if c == 0 {
                        continue;
                    }
                    let (fx, fy) = (i as f64, k as f64);
                    if q.0 <= fx && q.1 <= fy && q.2 >= fx + 1.0 && q.3 >= fy + 1.0 {
                        *acc += c as f64 * 0.25;
                        continue;
                    }
                    for d in 0..4u8 {
                        let qq = Quarter { i, k, d };
                        if self.contains_quarter(qq) {
                            let tri = qq.vertices2().map(|v| Point::new(v.0 as f64 / 2.0, v.1 as f64 / 2.0));
                            *acc += convex_intersection_area(&tri, &window);
                        }
                    }
                }
            }
            return;
        }
        for dy in 0..2 {
            for dx in 0..2 {
                self.visit(py, lvl - 1, 2 * bx + dx, 2 * by + dy, q, acc);
            }
        }
    }
}

impl Region for QuarterRegion {
    fn locate(&self, p: Point, tol: Tolerance) -> Location {
        if self.boundary_data().index.dist_to_point(p) <= tol.eps {
            return Location::Boundary;
        }
        if self.contains_point(p) {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    fn boundary(&self) -> &SegmentIndex {
        &self.boundary_data().index
    }

    fn area_in_square(&self, q: &AxisSquare) -> f64 {
        let n = self.n as f64;
        let (lo, hi) = (q.min_corner, q.max_corner());
        self.area_in_rect_cells((lo.x * n, lo.y * n, hi.x * n, hi.y * n)) / (n * n)
    }
}

/// Exact refinement test `a ⊂ b` for quarter regions at any two levels: the
/// finer grid is enumerated and each of its quarters, being contained in a
/// single quarter of the coarser grid, is judged by its centroid.
pub fn quarter_subset(a: &QuarterRegion, b: &QuarterRegion) -> bool {
    let fine = if a.n >= b.n { a } else { b };
    let (i0, k0, i1, k1) = fine.span();
    let s = fine.n as f64;
    for k in k0..k1 {
        for i in i0..i1 {
            for d in 0..4u8 {
                let q = Quarter { i, k, d };
                let v = q.vertices2();
                let c = Point::new(
                    (v[0].0 + v[1].0 + v[2].0) as f64 / (6.0 * s),
                    (v[0].1 + v[1].1 + v[2].1) as f64 / (6.0 * s),
                );
                let in_a = if std::ptr::eq(fine, a) { a.contains_quarter(q) } else { a.contains_point(c) };
                if in_a {
                    let in_b = if std::ptr::eq(fine, b) { b.contains_quarter(q) } else { b.contains_point(c) };
                    if !in_b {
                        return false;
                    }
                }
            }
        }
    }
    true
}
