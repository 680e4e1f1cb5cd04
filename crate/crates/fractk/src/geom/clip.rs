use super::{AxisSquare, Point, Polygon};

/// Signed shoelace area of a vertex loop, positive when counter-clockwise.
///
/// Coordinates are taken relative to the first vertex so the result does not
/// degrade under large translations.
pub fn shoelace(vs: &[Point]) -> f64 {
    if vs.len() < 3 {
        return 0.0;
    }
    let o = vs[0];
    let mut acc = 0.0;
    for w in vs[1..].windows(2) {
        acc += (w[0] - o).cross(w[1] - o);
    }
    0.5 * acc
}

/// Sutherland–Hodgman clipping of `subject` against a convex,
/// counter-clockwise `window`.
pub fn clip_convex(subject: &[Point], window: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = subject.to_vec();
    let m = window.len();
    for i in 0..m {
        if out.is_empty() {
            break;
        }
        let (a, b) = (window[i], window[(i + 1) % m]);
        let d = b - a;
        let side = |p: Point| d.cross(p - a);
        let input = std::mem::take(&mut out);
        let n = input.len();
        for k in 0..n {
            let cur = input[k];
            let prev = input[(k + n - 1) % n];
            let (sc, sp) = (side(cur), side(prev));
            if sc >= 0.0 {
                if sp < 0.0 {
                    out.push(prev.lerp(cur, sp / (sp - sc)));
                }
                out.push(cur);
            } else if sp >= 0.0 {
                out.push(prev.lerp(cur, sp / (sp - sc)));
            }
        }
    }
    out
}

/// Area of `P ∩ Q`.
pub fn clip_polygon_to_square(p: &Polygon, q: &AxisSquare) -> f64 {
    let bb = p.bbox();
    if !bb.intersects(&q.bbox()) {
        return 0.0;
    }
    shoelace(&clip_convex(p.vertices(), &q.corners())).max(0.0)
}

/// Intersection area of two convex counter-clockwise polygons.
pub fn convex_intersection_area(a: &[Point], b: &[Point]) -> f64 {
    shoelace(&clip_convex(a, b)).max(0.0)
}
