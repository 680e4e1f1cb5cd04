//! The β-parametrised classical snowflake.
//!
//! `Γ_j⁻` grows from the equilateral triangle by adding, on the middle of
//! every edge, an isosceles triangle with apex angle 2β; `Γ_j⁺` shrinks from a
//! hexagon by carving the same shape inward. Edge ratio is
//! `ξ = 1/(2(1+sin β))`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geom::{Point, Polygon, PolygonRegion, Segment, Tolerance};
use crate::ifs::SimilarityMap;
use crate::DEFAULT_EDGE_CAP;

/// Snowflake parameter; ξ is always derived from β.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamsJson", into = "ParamsJson")]
pub struct ClassicalParams {
    beta: f64,
}

#[derive(Serialize, Deserialize)]
struct ParamsJson {
    beta: f64,
}

impl TryFrom<ParamsJson> for ClassicalParams {
    type Error = Error;
    fn try_from(p: ParamsJson) -> Result<Self> {
        ClassicalParams::new(p.beta)
    }
}

impl From<ClassicalParams> for ParamsJson {
    fn from(p: ClassicalParams) -> Self {
        ParamsJson { beta: p.beta }
    }
}

pub fn xi_of_beta(beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < FRAC_PI_2) {
        return Err(invalid(format!("beta must lie in (0, pi/2), got {beta}")));
    }
    Ok(1.0 / (2.0 * (1.0 + beta.sin())))
}

impl ClassicalParams {
    pub fn new(beta: f64) -> Result<Self> {
        xi_of_beta(beta)?;
        Ok(ClassicalParams { beta })
    }

    /// The standard Koch snowflake, β = π/6, ξ = 1/3.
    pub fn koch() -> Self {
        ClassicalParams { beta: FRAC_PI_6 }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn xi(&self) -> f64 {
        1.0 / (2.0 * (1.0 + self.beta.sin()))
    }

    /// Height of the level-1 bump over a unit edge, `√(ξ − ¼)`.
    pub fn bump_height(&self) -> f64 {
        (self.xi() - 0.25).sqrt()
    }

    /// Inradius factor `ρ_β = sin β · tan(π/4 − β/2)` of a triangle with legs 1 and apex angle 2β.
    pub fn rho(&self) -> f64 {
        self.beta.sin() * (std::f64::consts::FRAC_PI_4 - self.beta / 2.0).tan()
    }
}

pub fn classical_dimension(p: &ClassicalParams) -> f64 {
    -(4f64.ln()) / p.xi().ln()
}

/// Closed form `|Δ_j| = (3/2)(2ξ)^{2j} √(ξ − ¼)`.
pub fn collar_area(p: &ClassicalParams, j: u32) -> f64 {
    let xi = p.xi();
    1.5 * (2.0 * xi).powi(2 * j as i32) * p.bump_height()
}

pub fn classical_ifs(p: &ClassicalParams) -> [SimilarityMap; 4] {
    let (xi, b) = (p.xi(), p.beta);
    [
        SimilarityMap { ratio: xi, angle: 0.0, shift: Point::ORIGIN },
        SimilarityMap { ratio: xi, angle: FRAC_PI_2 - b, shift: Point::new(xi, 0.0) },
        SimilarityMap { ratio: xi, angle: b - FRAC_PI_2, shift: Point::new(1.0 - xi - xi * b.sin(), xi * b.cos()) },
        SimilarityMap { ratio: xi, angle: 0.0, shift: Point::new(1.0 - xi, 0.0) },
    ]
}

fn check_cap(edges: u128) -> Result<()> {
    if edges > DEFAULT_EDGE_CAP {
        return Err(Error::CapExceeded { requested: edges, cap: DEFAULT_EDGE_CAP });
    }
    Ok(())
}

/// Level-`j` leg over `[(0,0),(1,0)]` with every bump on the left (above).
/// Returns `4^j + 1` points.
pub fn leg(p: &ClassicalParams, j: u32) -> Vec<Point> {
    let xi = p.xi();
    let h = p.bump_height();
    let mut pts = vec![Point::ORIGIN, Point::new(1.0, 0.0)];
    for _ in 0..j {
        let mut next = Vec::with_capacity(4 * (pts.len() - 1) + 1);
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let d = b - a;
            next.push(a);
            next.push(a + d * xi);
            next.push(a.midpoint(b) + d.perp() * h);
            next.push(a + d * (1.0 - xi));
        }
        next.push(*pts.last().unwrap());
        pts = next;
    }
    pts
}

/// Similarity of the plane taking `(0,0) ↦ a` and `(1,0) ↦ b`.
fn place(a: Point, b: Point) -> impl Fn(Point) -> Point {
    let d = b - a;
    move |p: Point| a + Point::new(d.x * p.x - d.y * p.y, d.y * p.x + d.x * p.y)
}

fn base_triangle() -> [Point; 3] {
    [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, 0.5 * 3f64.sqrt())]
}

fn hexagon(p: &ClassicalParams) -> Vec<Point> {
    let t = base_triangle();
    let h = p.bump_height();
    let mut out = Vec::with_capacity(6);
    for k in 0..3 {
        let (a, b) = (t[k], t[(k + 1) % 3]);
        out.push(a);
        // Outward normal of a counter-clockwise edge is on its right.
        out.push(a.midpoint(b) - (b - a).perp() * h);
    }
    out
}

/// Vertex loop of `Γ_j⁻`: each counter-clockwise edge `a → b` of the base
/// triangle carries the leg placed from `b` to `a` and traversed backwards,
/// which puts every bump outside.
fn inner_vertices(p: &ClassicalParams, j: u32) -> Vec<Point> {
    let l = leg(p, j);
    let t = base_triangle();
    let mut out = Vec::with_capacity(3 * (l.len() - 1));
    for k in 0..3 {
        let (a, b) = (t[k], t[(k + 1) % 3]);
        let f = place(b, a);
        out.extend(l[1..].iter().rev().map(|&q| f(q)));
    }
    out
}

/// Vertex loop of `Γ_j⁺`: the leg placed directly on each hexagon edge, so
/// every carved triangle points inside.
fn outer_vertices(p: &ClassicalParams, j: u32) -> Vec<Point> {
    let l = leg(p, j);
    let hx = hexagon(p);
    let mut out = Vec::with_capacity(6 * (l.len() - 1));
    for k in 0..6 {
        let f = place(hx[k], hx[(k + 1) % 6]);
        out.extend(l[..l.len() - 1].iter().map(|&q| f(q)));
    }
    out
}

pub fn inner_prefractal(p: &ClassicalParams, j: u32) -> Result<Polygon> {
    check_cap(3u128 << (2 * j.min(60)))?;
    Polygon::new(inner_vertices(p, j), Tolerance::default())
}

pub fn outer_prefractal(p: &ClassicalParams, j: u32) -> Result<Polygon> {
    check_cap(6u128 << (2 * j.min(60)))?;
    Polygon::new(outer_vertices(p, j), Tolerance::default())
}

/// Both prefractals of one level, with their boundary indices.
#[derive(Clone, Debug)]
pub struct ClassicalLevel {
    pub params: ClassicalParams,
    pub j: u32,
    pub inner: PolygonRegion,
    pub outer: PolygonRegion,
    pub edge_length_inner: f64,
    pub edge_length_outer: f64,
}

impl ClassicalLevel {
    pub fn new(params: ClassicalParams, j: u32) -> Result<Self> {
        let inner = PolygonRegion::new(inner_prefractal(&params, j)?);
        let outer = PolygonRegion::new(outer_prefractal(&params, j)?);
        let xi = params.xi();
        Ok(ClassicalLevel {
            params,
            j,
            inner,
            outer,
            edge_length_inner: xi.powi(j as i32),
            edge_length_outer: xi.powf(j as f64 + 0.5),
        })
    }

    /// Applies a rigid motion to both polygons.
    pub fn transformed(&self, f: impl Fn(Point) -> Point) -> Result<Self> {
        let tol = Tolerance::default();
        Ok(ClassicalLevel {
            inner: PolygonRegion::new(self.inner.polygon().map(&f, tol)?),
            outer: PolygonRegion::new(self.outer.polygon().map(&f, tol)?),
            ..self.clone()
        })
    }

    /// Triangle `T` with `Δ_j = ∪ T`: base on an inner edge, apex outward at
    /// height `ξ^j √(ξ − ¼)`. Vertices are counter-clockwise.
    pub fn collar_triangles(&self) -> Vec<[Point; 3]> {
        let h = self.params.bump_height();
        self.inner
            .polygon()
            .edges()
            .map(|e| {
                let apex = e.midpoint() - (e.b - e.a).perp() * h;
                [e.b, e.a, apex]
            })
            .collect()
    }

    /// The level-`j` triangle grown on inner group `g` (edges `4g..4g+3`).
    pub fn inner_group_triangle(&self, g: usize) -> [Point; 3] {
        group_triangle(self.inner.polygon(), g)
    }

    /// The level-`j` triangle carved from outer group `g`.
    pub fn outer_group_triangle(&self, g: usize) -> [Point; 3] {
        group_triangle(self.outer.polygon(), g)
    }

    /// Bottom leg of `Γ_j⁻` (bumps pointing down), as segments from `(0,0)` to `(1,0)`.
    pub fn inner_bottom_leg(&self) -> Vec<Segment> {
        let n = self.inner.polygon().edge_count() / 3;
        (0..n).map(|k| self.inner.polygon().edge(k)).collect()
    }
}

fn group_triangle(poly: &Polygon, g: usize) -> [Point; 3] {
    let v = poly.vertices();
    let n = v.len();
    [v[(4 * g + 1) % n], v[(4 * g + 2) % n], v[(4 * g + 3) % n]]
}

/// Incentre of a triangle.
pub fn incenter(t: &[Point; 3]) -> Point {
    let a = t[1].dist(t[2]);
    let b = t[2].dist(t[0]);
    let c = t[0].dist(t[1]);
    (t[0] * a + t[1] * b + t[2] * c) / (a + b + c)
}
