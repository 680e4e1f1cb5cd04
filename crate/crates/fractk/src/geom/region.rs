use super::{clip_polygon_to_square, crossing_parity, AxisSquare, BBox, Location, Point, Polygon, SegmentIndex, Tolerance};

/// A planar region that can classify points, report its boundary and measure
/// its overlap with axis squares.
pub trait Region: Sync {
    fn locate(&self, p: Point, tol: Tolerance) -> Location;
    fn boundary(&self) -> &SegmentIndex;
    fn area_in_square(&self, q: &AxisSquare) -> f64;
}

/// A polygon with a prebuilt boundary index.
#[derive(Clone, Debug)]
pub struct PolygonRegion {
    polygon: Polygon,
    index: SegmentIndex,
}

impl PolygonRegion {
    pub fn new(polygon: Polygon) -> Self {
        let index = SegmentIndex::new(polygon.segments());
        PolygonRegion { polygon, index }
    }

    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }
}

impl Region for PolygonRegion {
    fn locate(&self, p: Point, tol: Tolerance) -> Location {
        if self.index.dist_to_point(p) <= tol.eps {
            return Location::Boundary;
        }
        let bb = self.polygon.bbox();
        if p.x > bb.max.x || p.y > bb.max.y || p.x < bb.min.x || p.y < bb.min.y {
            return Location::Outside;
        }
        let ray = BBox { min: p, max: Point::new(bb.max.x, p.y) };
        let ids = self.index.candidates_in_box(&ray);
        let segs = self.index.segments();
        if crossing_parity(p, ids.into_iter().map(|i| segs[i])) {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    fn boundary(&self) -> &SegmentIndex {
        &self.index
    }

    fn area_in_square(&self, q: &AxisSquare) -> f64 {
        clip_polygon_to_square(&self.polygon, q)
    }
}

/// The open complement of a region.
#[derive(Clone, Copy, Debug)]
pub struct Complement<'a, R: ?Sized>(pub &'a R);

impl<R: Region + ?Sized> Region for Complement<'_, R> {
    fn locate(&self, p: Point, tol: Tolerance) -> Location {
        match self.0.locate(p, tol) {
            Location::Inside => Location::Outside,
            Location::Outside => Location::Inside,
            Location::Boundary => Location::Boundary,
        }
    }

    fn boundary(&self) -> &SegmentIndex {
        self.0.boundary()
    }

    fn area_in_square(&self, q: &AxisSquare) -> f64 {
        (q.area() - self.0.area_in_square(q)).max(0.0)
    }
}

/// True iff all four corners of `q` are Inside and no boundary segment of the
/// region meets `q` (neither crossing its edges nor lying inside it).
pub fn square_inside_region(q: &AxisSquare, region: &dyn Region, tol: Tolerance) -> bool {
    if !q.corners().iter().all(|&c| region.locate(c, tol) == Location::Inside) {
        return false;
    }
    let index = region.boundary();
    for e in q.edges() {
        if index.min_dist_to_segment(&e).is_some_and(|d| d <= tol.eps) {
            return false;
        }
    }
    // With the edges clear, any boundary piece inside q lies wholly inside it.
    let segs = index.segments();
    let (lo, hi) = (q.min_corner, q.max_corner());
    let mut island = false;
    index.for_each_in_box(&q.bbox(), |id| {
        let m = segs[id].midpoint();
        if m.x > lo.x && m.x < hi.x && m.y > lo.y && m.y < hi.y {
            island = true;
        }
    });
    !island
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> PolygonRegion {
        PolygonRegion::new(
            Polygon::new(
                vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, 0.5 * 3f64.sqrt())],
                Tolerance::default(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn locate_matches_polygon_predicate() {
        let t = triangle();
        let tol = Tolerance::default();
        for k in 0..400 {
            let p = Point::new(-0.2 + 1.4 * (k % 20) as f64 / 19.0, -0.2 + 1.3 * (k / 20) as f64 / 19.0);
            assert_eq!(t.locate(p, tol), super::super::point_in_polygon(p, t.polygon(), tol), "{p:?}");
        }
    }

    #[test]
    fn squares_in_triangle() {
        let t = triangle();
        let tol = Tolerance::default();
        let c = t.polygon().centroid();
        assert!(square_inside_region(&AxisSquare::centered(c, 0.01).unwrap(), &t, tol));
        assert!(!square_inside_region(&AxisSquare::centered(Point::new(0.5, 0.0), 0.1).unwrap(), &t, tol));
        let ext = Complement(&t);
        assert!(square_inside_region(&AxisSquare::centered(Point::new(0.5, -0.2), 0.1).unwrap(), &ext, tol));
        // A square swallowing the whole triangle has all corners outside but
        // the triangle as an island.
        assert!(!square_inside_region(&AxisSquare::new(Point::new(-1.0, -1.0), 3.0).unwrap(), &ext, tol));
    }
}
