use super::{dist_point_segment, dist_segment_segment, BBox, Point, Segment};

/// Uniform-grid bucket index over a segment soup.
///
/// Every segment is registered in each grid cell its bounding box touches, so
/// a segment within distance `r` of a query is always found in the cells of
/// the query window expanded by `r`.
#[derive(Clone, Debug)]
pub struct SegmentIndex {
    segments: Vec<Segment>,
    origin: Point,
    cell: f64,
    nx: usize,
    ny: usize,
    offsets: Vec<u32>,
    ids: Vec<u32>,
}

impl SegmentIndex {
    pub fn new(segments: Vec<Segment>) -> Self {
        let Some(bb) = BBox::of_points(segments.iter().flat_map(|s| [s.a, s.b])) else {
            return SegmentIndex { segments, origin: Point::ORIGIN, cell: 1.0, nx: 0, ny: 0, offsets: vec![0], ids: vec![] };
        };
        let n = segments.len();
        let extent = bb.width().max(bb.height()).max(1e-12);
        let mean_len = segments.iter().map(Segment::length).sum::<f64>() / n as f64;
        let cell = mean_len.max(extent / (2.0 * n as f64).sqrt()).max(extent / 4096.0);
        let nx = ((bb.width() / cell).floor() as usize + 1).min(1 << 14);
        let ny = ((bb.height() / cell).floor() as usize + 1).min(1 << 14);
        let mut idx = SegmentIndex { segments, origin: bb.min, cell, nx, ny, offsets: vec![], ids: vec![] };
        let mut counts = vec![0u32; nx * ny + 1];
        for s in &idx.segments {
            let (i0, i1, k0, k1) = idx.cell_range(&s.bbox());
            for k in k0..=k1 {
                for i in i0..=i1 {
                    counts[k * nx + i + 1] += 1;
                }
            }
        }
        for c in 1..counts.len() {
            counts[c] += counts[c - 1];
        }
        let mut fill = counts.clone();
        let mut ids = vec![0u32; counts[nx * ny] as usize];
        for (id, s) in idx.segments.iter().enumerate() {
            let (i0, i1, k0, k1) = idx.cell_range(&s.bbox());
            for k in k0..=k1 {
                for i in i0..=i1 {
                    let c = k * nx + i;
                    ids[fill[c] as usize] = id as u32;
                    fill[c] += 1;
                }
            }
        }
        idx.offsets = counts;
        idx.ids = ids;
        idx
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    fn clamp_cell(&self, v: f64, n: usize) -> usize {
        if v <= 0.0 {
            0
        } else {
            (v as usize).min(n - 1)
        }
    }

    /// Inclusive cell ranges covered by `bb`, clamped to the grid.
    fn cell_range(&self, bb: &BBox) -> (usize, usize, usize, usize) {
        let i0 = self.clamp_cell((bb.min.x - self.origin.x) / self.cell, self.nx);
        let i1 = self.clamp_cell((bb.max.x - self.origin.x) / self.cell, self.nx);
        let k0 = self.clamp_cell((bb.min.y - self.origin.y) / self.cell, self.ny);
        let k1 = self.clamp_cell((bb.max.y - self.origin.y) / self.cell, self.ny);
        (i0, i1, k0, k1)
    }

    fn grid_box(&self) -> BBox {
        BBox {
            min: self.origin,
            max: self.origin + Point::new(self.nx as f64 * self.cell, self.ny as f64 * self.cell),
        }
    }

    /// Calls `f` for every segment registered in a cell meeting `bb`.
    /// Segments spanning several cells may be reported more than once.
    pub fn for_each_in_box(&self, bb: &BBox, mut f: impl FnMut(usize)) {
        if self.segments.is_empty() || !bb.intersects(&self.grid_box()) {
            return;
        }
        let (i0, i1, k0, k1) = self.cell_range(bb);
        for k in k0..=k1 {
            for i in i0..=i1 {
                let c = k * self.nx + i;
                for &id in &self.ids[self.offsets[c] as usize..self.offsets[c + 1] as usize] {
                    f(id as usize);
                }
            }
        }
    }

    /// Sorted, de-duplicated ids of segments whose cells meet `bb`.
    pub fn candidates_in_box(&self, bb: &BBox) -> Vec<usize> {
        let mut out = Vec::new();
        self.for_each_in_box(bb, |id| out.push(id));
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Generic expanding-window minimisation of a distance-like function.
    fn minimise(&self, base: BBox, dist: impl Fn(&Segment) -> f64) -> Option<(f64, usize)> {
        if self.segments.is_empty() {
            return None;
        }
        let grid = self.grid_box();
        let gap_x = (grid.min.x - base.max.x).max(base.min.x - grid.max.x).max(0.0);
        let gap_y = (grid.min.y - base.max.y).max(base.min.y - grid.max.y).max(0.0);
        let mut r = self.cell.max(gap_x.hypot(gap_y) + self.cell);
        loop {
            let window = base.expand(r);
            let mut best: Option<(f64, usize)> = None;
            self.for_each_in_box(&window, |id| {
                let d = dist(&self.segments[id]);
                if best.map_or(true, |(bd, bi)| d < bd || (d == bd && id < bi)) {
                    best = Some((d, id));
                }
            });
            let covers = window.min.x <= grid.min.x
                && window.min.y <= grid.min.y
                && window.max.x >= grid.max.x
                && window.max.y >= grid.max.y;
            if let Some((d, _)) = best {
                if d <= r || covers {
                    return best;
                }
            } else if covers {
                return None;
            }
            r *= 2.0;
        }
    }

    /// Distance from `p` to the nearest segment and that segment's index.
    /// Ties resolve to the lowest index.
    pub fn nearest(&self, p: Point) -> Option<(f64, usize)> {
        self.minimise(BBox { min: p, max: p }, |s| dist_point_segment(p, s))
    }

    pub fn dist_to_point(&self, p: Point) -> f64 {
        self.nearest(p).map_or(f64::INFINITY, |(d, _)| d)
    }

    pub fn min_dist_to_segment(&self, s: &Segment) -> Option<f64> {
        self.minimise(s.bbox(), |t| dist_segment_segment(s, t)).map(|(d, _)| d)
    }

    /// Indices of segments within distance `r` of `p` (closed), sorted.
    pub fn within(&self, p: Point, r: f64) -> Vec<usize> {
        let mut v = self.candidates_in_box(&BBox { min: p, max: p }.expand(r));
        v.retain(|&id| dist_point_segment(p, &self.segments[id]) <= r);
        v
    }
}
