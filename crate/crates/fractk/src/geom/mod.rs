//! Planar geometry with explicit tolerances.

mod clip;
mod hausdorff;
mod index;
mod region;

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub use clip::{clip_convex, clip_polygon_to_square, convex_intersection_area, shoelace};
pub use hausdorff::{hausdorff_distance, HausdorffEstimate};
pub use index::SegmentIndex;
pub use region::{square_inside_region, Complement, PolygonRegion, Region};

/// Absolute geometric tolerance used by every predicate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(invalid(format!("tolerance must be positive and finite, got {eps}")));
        }
        Ok(Self { eps })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { eps: Self::DEFAULT_EPS }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    pub fn midpoint(self, o: Point) -> Point {
        Point::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Div<f64> for Point {
    type Output = Point;
    fn div(self, k: f64) -> Point {
        Point::new(self.x / k, self.y / k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn of_points<I: IntoIterator<Item = Point>>(pts: I) -> Option<BBox> {
        let mut it = pts.into_iter();
        let first = it.next()?;
        let mut b = BBox { min: first, max: first };
        for p in it {
            b.include(p);
        }
        Some(b)
    }

    pub fn include(&mut self, p: Point) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn expand(self, r: f64) -> BBox {
        BBox { min: self.min - Point::new(r, r), max: self.max + Point::new(r, r) }
    }

    pub fn intersects(&self, o: &BBox) -> bool {
        self.min.x <= o.max.x && o.min.x <= self.max.x && self.min.y <= o.max.y && o.min.y <= self.max.y
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    /// Checked constructor: endpoints must be finite and farther apart than `tol.eps`.
    pub fn new(a: Point, b: Point, tol: Tolerance) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(invalid("segment endpoints must be finite"));
        }
        if a.dist(b) <= tol.eps {
            return Err(Error::Degenerate("segment endpoints coincide".into()));
        }
        Ok(Segment { a, b })
    }

    /// Unchecked constructor for internally generated edges.
    pub const fn raw(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn midpoint(&self) -> Point {
        self.a.midpoint(self.b)
    }

    pub fn bbox(&self) -> BBox {
        BBox {
            min: Point::new(self.a.x.min(self.b.x), self.a.y.min(self.b.y)),
            max: Point::new(self.a.x.max(self.b.x), self.a.y.max(self.b.y)),
        }
    }

    pub fn reversed(&self) -> Segment {
        Segment::raw(self.b, self.a)
    }

    /// Closest point of the segment to `p`.
    pub fn closest_point(&self, p: Point) -> Point {
        let d = self.b - self.a;
        let len2 = d.dot(d);
        if len2 == 0.0 {
            return self.a;
        }
        let t = ((p - self.a).dot(d) / len2).clamp(0.0, 1.0);
        self.a + d * t
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Closed, simple, counter-clockwise vertex loop.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonJson", into = "PolygonJson")]
pub struct Polygon {
    vertices: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct PolygonJson {
    vertices: Vec<Point>,
    closed: bool,
}

impl TryFrom<PolygonJson> for Polygon {
    type Error = Error;
    fn try_from(j: PolygonJson) -> Result<Self> {
        if !j.closed {
            return Err(invalid("polygon JSON must have \"closed\": true"));
        }
        Polygon::new(j.vertices, Tolerance::default())
    }
}

impl From<Polygon> for PolygonJson {
    fn from(p: Polygon) -> Self {
        PolygonJson { vertices: p.vertices, closed: true }
    }
}

impl Polygon {
    /// Builds a polygon, dropping consecutive duplicates (within `tol`) and
    /// reversing clockwise input. Simplicity is not checked here; see
    /// [`Polygon::is_simple`].
    pub fn new(vertices: Vec<Point>, tol: Tolerance) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(invalid("polygon vertices must be finite"));
        }
        let mut vs: Vec<Point> = Vec::with_capacity(vertices.len());
        for p in vertices {
            if vs.last().map_or(true, |q: &Point| q.dist(p) > tol.eps) {
                vs.push(p);
            }
        }
        while vs.len() > 1 && vs[0].dist(vs[vs.len() - 1]) <= tol.eps {
            vs.pop();
        }
        if vs.len() < 3 {
            return Err(Error::Degenerate(format!("polygon needs at least 3 distinct vertices, got {}", vs.len())));
        }
        let a = shoelace(&vs);
        if a.abs() <= tol.eps * tol.eps {
            return Err(Error::Degenerate("polygon has zero area".into()));
        }
        if a < 0.0 {
            vs.reverse();
        }
        Ok(Polygon { vertices: vs })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    /// Number of edges, equal to the number of vertices.
    pub fn edge_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge(&self, i: usize) -> Segment {
        let n = self.vertices.len();
        Segment::raw(self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = Segment> + '_ {
        (0..self.vertices.len()).map(move |i| self.edge(i))
    }

    pub fn segments(&self) -> Vec<Segment> {
        self.edges().collect()
    }

    pub fn signed_area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn bbox(&self) -> BBox {
        BBox::of_points(self.vertices.iter().copied()).expect("polygon has vertices")
    }

    pub fn map(&self, f: impl Fn(Point) -> Point, tol: Tolerance) -> Result<Polygon> {
        Polygon::new(self.vertices.iter().map(|&p| f(p)).collect(), tol)
    }

    pub fn centroid(&self) -> Point {
        let n = self.vertices.len();
        let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let w = p.cross(q);
            a2 += w;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
        Point::new(cx / (3.0 * a2), cy / (3.0 * a2))
    }

    /// True when no two non-adjacent edges come within `tol.eps` of each other
    /// and no adjacent pair folds back onto itself.
    pub fn is_simple(&self, tol: Tolerance) -> bool {
        let n = self.vertices.len();
        let segs = self.segments();
        let index = SegmentIndex::new(segs.clone());
        for i in 0..n {
            let s = segs[i];
            for j in index.candidates_in_box(&s.bbox().expand(tol.eps)) {
                if j <= i {
                    continue;
                }
                let t = segs[j];
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // The shared vertex is the only allowed contact.
                    let (far_s, far_t) = if j == i + 1 { (s.a, t.b) } else { (s.b, t.a) };
                    if dist_point_segment(far_t, &s) <= tol.eps || dist_point_segment(far_s, &t) <= tol.eps {
                        return false;
                    }
                } else if dist_segment_segment(&s, &t) <= tol.eps {
                    return false;
                }
            }
        }
        true
    }
}

/// Shoelace area of a simple polygon; positive for counter-clockwise order.
pub fn polygon_area(p: &Polygon) -> f64 {
    p.signed_area()
}

/// Ray-crossing classification with an `eps`-wide boundary band.
pub fn point_in_polygon(p: Point, poly: &Polygon, tol: Tolerance) -> Location {
    if poly.edges().any(|e| dist_point_segment(p, &e) <= tol.eps) {
        return Location::Boundary;
    }
    if crossing_parity(p, poly.edges()) {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Parity of crossings of the rightward horizontal ray from `p`.
pub(crate) fn crossing_parity(p: Point, edges: impl Iterator<Item = Segment>) -> bool {
    let mut inside = false;
    for e in edges {
        let (a, b) = (e.a, e.b);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    inside
}

pub fn dist_point_segment(p: Point, s: &Segment) -> f64 {
    p.dist(s.closest_point(p))
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(p: Point, s: &Segment) -> bool {
    let bb = s.bbox();
    p.x >= bb.min.x && p.x <= bb.max.x && p.y >= bb.min.y && p.y <= bb.max.y
}

/// Closed-segment intersection test.
pub fn segments_intersect(s: &Segment, t: &Segment) -> bool {
    let d1 = orient(t.a, t.b, s.a);
    let d2 = orient(t.a, t.b, s.b);
    let d3 = orient(s.a, s.b, t.a);
    let d4 = orient(s.a, s.b, t.b);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(s.a, t))
        || (d2 == 0.0 && on_segment(s.b, t))
        || (d3 == 0.0 && on_segment(t.a, s))
        || (d4 == 0.0 && on_segment(t.b, s))
}

pub fn dist_segment_segment(s: &Segment, t: &Segment) -> f64 {
    if segments_intersect(s, t) {
        return 0.0;
    }
    dist_point_segment(s.a, t)
        .min(dist_point_segment(s.b, t))
        .min(dist_point_segment(t.a, s))
        .min(dist_point_segment(t.b, s))
}

/// Minimum distance between two segment collections.
pub fn dist_polyline_polyline(a: &[Segment], b: &[Segment]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty("polyline distance needs two non-empty inputs".into()));
    }
    if a.len().saturating_mul(b.len()) <= 4096 {
        let mut best = f64::INFINITY;
        for s in a {
            for t in b {
                best = best.min(dist_segment_segment(s, t));
            }
        }
        return Ok(best);
    }
    let index = SegmentIndex::new(b.to_vec());
    Ok(a.iter().map(|s| index.min_dist_to_segment(s).unwrap_or(f64::INFINITY)).fold(f64::INFINITY, f64::min))
}

/// Axis-aligned square `[min, min + side]²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisSquare {
    pub min_corner: Point,
    pub side: f64,
}

impl AxisSquare {
    pub fn new(min_corner: Point, side: f64) -> Result<Self> {
        if !min_corner.is_finite() || !(side.is_finite() && side > 0.0) {
            return Err(invalid(format!("axis square needs a finite corner and positive side, got side {side}")));
        }
        Ok(AxisSquare { min_corner, side })
    }

    pub fn centered(center: Point, side: f64) -> Result<Self> {
        Self::new(center - Point::new(side / 2.0, side / 2.0), side)
    }

    pub fn center(&self) -> Point {
        self.min_corner + Point::new(self.side / 2.0, self.side / 2.0)
    }

    pub fn max_corner(&self) -> Point {
        self.min_corner + Point::new(self.side, self.side)
    }

    pub fn area(&self) -> f64 {
        self.side * self.side
    }

    /// Corners in counter-clockwise order starting at the minimum corner.
    pub fn corners(&self) -> [Point; 4] {
        let (a, s) = (self.min_corner, self.side);
        [a, a + Point::new(s, 0.0), a + Point::new(s, s), a + Point::new(0.0, s)]
    }

    pub fn edges(&self) -> [Segment; 4] {
        let c = self.corners();
        [Segment::raw(c[0], c[1]), Segment::raw(c[1], c[2]), Segment::raw(c[2], c[3]), Segment::raw(c[3], c[0])]
    }

    pub fn bbox(&self) -> BBox {
        BBox { min: self.min_corner, max: self.max_corner() }
    }

    pub fn translate(&self, v: Point) -> AxisSquare {
        AxisSquare { min_corner: self.min_corner + v, side: self.side }
    }

    /// Distance from `p` to the closed square (0 inside).
    pub fn dist_to_point(&self, p: Point) -> f64 {
        let hi = self.max_corner();
        let dx = (self.min_corner.x - p.x).max(0.0).max(p.x - hi.x);
        let dy = (self.min_corner.y - p.y).max(0.0).max(p.y - hi.y);
        dx.hypot(dy)
    }

    /// Distance between two closed squares (0 when they meet).
    pub fn dist_to_square(&self, o: &AxisSquare) -> f64 {
        let (a_hi, b_hi) = (self.max_corner(), o.max_corner());
        let dx = (o.min_corner.x - a_hi.x).max(self.min_corner.x - b_hi.x).max(0.0);
        let dy = (o.min_corner.y - a_hi.y).max(self.min_corner.y - b_hi.y).max(0.0);
        dx.hypot(dy)
    }

    pub fn to_polygon(&self) -> Polygon {
        Polygon { vertices: self.corners().to_vec() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disc {
    pub center: Point,
    pub radius: f64,
}

impl Disc {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !center.is_finite() || !(radius.is_finite() && radius > 0.0) {
            return Err(invalid(format!("disc needs a finite center and positive radius, got {radius}")));
        }
        Ok(Disc { center, radius })
    }
}
