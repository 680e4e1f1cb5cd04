use serde::{Deserialize, Serialize};

use super::{Point, Segment, SegmentIndex};
use crate::error::{invalid, Error, Result};

/// Sampled Hausdorff distance; the true value lies within `error_bound` of `value`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HausdorffEstimate {
    pub value: f64,
    pub error_bound: f64,
}

/// Sample points along every segment with spacing at most `spacing`.
/// Returns the points and the largest spacing actually used.
fn sample(segs: &[Segment], spacing: f64) -> (Vec<Point>, f64) {
    let mut pts = Vec::new();
    let mut used: f64 = 0.0;
    for s in segs {
        let len = s.length();
        let k = ((len / spacing).ceil() as usize).max(1);
        used = used.max(len / k as f64);
        pts.extend((0..=k).map(|i| s.a.lerp(s.b, i as f64 / k as f64)));
    }
    (pts, used)
}

fn directed(pts: &[Point], to: &SegmentIndex) -> f64 {
    pts.iter().map(|&p| to.dist_to_point(p)).fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between two segment sets.
///
/// Each side is sampled at spacing at most `spacing` and the samples are
/// measured exactly against the other set, so the estimate undershoots the
/// true value by at most half the sample spacing.
pub fn hausdorff_distance(a: &[Segment], b: &[Segment], spacing: f64) -> Result<HausdorffEstimate> {
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(invalid(format!("spacing must be positive, got {spacing}")));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty("Hausdorff distance needs two non-empty inputs".into()));
    }
    let (pa, ha) = sample(a, spacing);
    let (pb, hb) = sample(b, spacing);
    let ia = SegmentIndex::new(a.to_vec());
    let ib = SegmentIndex::new(b.to_vec());
    let value = directed(&pa, &ib).max(directed(&pb, &ia));
    Ok(HausdorffEstimate { value, error_bound: 0.5 * ha.max(hb) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{AxisSquare, Point};
    use proptest::prelude::*;

    fn square(half: f64) -> Vec<Segment> {
        AxisSquare::centered(Point::ORIGIN, 2.0 * half).unwrap().edges().to_vec()
    }

    #[test]
    fn identical_sets() {
        let a = square(0.5);
        let h = hausdorff_distance(&a, &a, 0.01).unwrap();
        assert_eq!(h.value, 0.0);
        assert!(h.error_bound <= 0.005);
    }

    #[test]
    fn nested_squares() {
        // Sides 1 and 1 + 2δ: the exact value is δ√2, attained at the corners.
        let delta = 0.1;
        let h = hausdorff_distance(&square(0.5), &square(0.5 + delta), 0.01).unwrap();
        assert!(h.value >= delta - h.error_bound && h.value <= delta * 2f64.sqrt() + h.error_bound);
        assert!((h.value - delta * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(hausdorff_distance(&[], &square(1.0), 0.1).is_err());
        assert!(hausdorff_distance(&square(1.0), &square(1.0), 0.0).is_err());
    }

    fn polyline(pts: &[(f64, f64)]) -> Vec<Segment> {
        pts.windows(2).map(|w| Segment::raw(Point::new(w[0].0, w[0].1), Point::new(w[1].0, w[1].1))).collect()
    }

    proptest! {
        #[test]
        fn symmetric_and_triangle_inequality(
            a in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..6),
            b in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..6),
            c in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..6),
        ) {
            let (a, b, c) = (polyline(&a), polyline(&b), polyline(&c));
            let h = 0.02;
            let ab = hausdorff_distance(&a, &b, h).unwrap();
            let ba = hausdorff_distance(&b, &a, h).unwrap();
            prop_assert_eq!(ab.value, ba.value);
            let bc = hausdorff_distance(&b, &c, h).unwrap();
            let ac = hausdorff_distance(&a, &c, h).unwrap();
            let slack = 2.0 * ab.error_bound.max(bc.error_bound).max(ac.error_bound);
            prop_assert!(ac.value <= ab.value + bc.value + slack);
        }
    }
}
