//! Planar similarities and iterated function systems acting on segment sets.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geom::{convex_intersection_area, shoelace, Point, Segment};

/// `p ↦ shift + R(angle)·(ratio·p)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimilarityMap {
    pub ratio: f64,
    pub angle: f64,
    pub shift: Point,
}

impl SimilarityMap {
    pub fn new(ratio: f64, angle: f64, shift: Point) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) || !angle.is_finite() || !shift.is_finite() {
            return Err(invalid(format!("similarity needs ratio in (0,1) and finite data, got ratio {ratio}")));
        }
        Ok(SimilarityMap { ratio, angle, shift })
    }

    pub fn apply(&self, p: Point) -> Point {
        self.shift + (p * self.ratio).rotate(self.angle)
    }

    pub fn apply_segment(&self, s: &Segment) -> Segment {
        Segment::raw(self.apply(s.a), self.apply(s.b))
    }
}

/// Applies `S ↦ ∪ᵢ ψᵢ(S)` `j` times to `seed`.
///
/// Output order is map-major at the outermost level, so when the seed is a
/// directed polyline and every map preserves orientation the result is again
/// a directed polyline.
pub fn ifs_iterate(maps: &[SimilarityMap], seed: &[Segment], j: u32, cap: u128) -> Result<Vec<Segment>> {
    let requested = (maps.len() as u128)
        .checked_pow(j)
        .and_then(|m| m.checked_mul(seed.len() as u128))
        .unwrap_or(u128::MAX);
    if requested > cap {
        return Err(Error::CapExceeded { requested, cap });
    }
    let mut cur = seed.to_vec();
    for _ in 0..j {
        let mut next = Vec::with_capacity(cur.len() * maps.len());
        for m in maps {
            next.extend(cur.iter().map(|s| m.apply_segment(s)));
        }
        cur = next;
    }
    Ok(cur)
}

/// Result of checking the open set condition for a convex candidate set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpenSetCheck {
    /// Largest pairwise intersection area of the images.
    pub max_overlap: f64,
    /// Largest area of an image lying outside the candidate set.
    pub max_escape: f64,
}

impl OpenSetCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.max_overlap < tol && self.max_escape < tol
    }
}

/// Measures how far the images `ψᵢ(O)` of a convex CCW polygon `O` are from
/// being pairwise disjoint and contained in `O`.
pub fn open_set_check(maps: &[SimilarityMap], o: &[Point]) -> OpenSetCheck {
    let images: Vec<Vec<Point>> = maps.iter().map(|m| o.iter().map(|&p| m.apply(p)).collect()).collect();
    let mut max_overlap: f64 = 0.0;
    for i in 0..images.len() {
        for k in i + 1..images.len() {
            max_overlap = max_overlap.max(convex_intersection_area(&images[i], &images[k]));
        }
    }
    let max_escape = images
        .iter()
        .map(|im| (shoelace(im) - convex_intersection_area(im, o)).max(0.0))
        .fold(0.0, f64::max);
    OpenSetCheck { max_overlap, max_escape }
}
