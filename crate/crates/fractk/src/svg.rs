//! Minimal SVG rendering of polygons and polylines.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geom::{BBox, Point};

/// One `<path>` element. Layers are drawn in the order given.
#[derive(Clone, Debug)]
pub struct Layer {
    pub class: String,
    pub stroke: String,
    pub fill: String,
    pub closed: bool,
    pub rings: Vec<Vec<Point>>,
}

impl Layer {
    pub fn polygon(class: &str, stroke: &str, vertices: Vec<Point>) -> Self {
        Layer { class: class.into(), stroke: stroke.into(), fill: "none".into(), closed: true, rings: vec![vertices] }
    }

    /// Number of straight pieces drawn by this layer.
    pub fn segment_count(&self) -> usize {
        self.rings
            .iter()
            .map(|r| if self.closed { r.len() } else { r.len().saturating_sub(1) })
            .sum()
    }
}

/// Renders the layers with a view box fitted to their extent plus a 5% margin.
/// The y axis is flipped so that the picture has the usual orientation.
pub fn render_svg(layers: &[Layer]) -> Result<String> {
    let bbox = BBox::of_points(layers.iter().flat_map(|l| l.rings.iter().flatten().copied()))
        .ok_or_else(|| Error::Empty("nothing to draw".into()))?;
    let span = bbox.width().max(bbox.height());
    if !(span > 0.0) {
        return Err(Error::Degenerate("geometry has zero extent".into()));
    }
    let margin = 0.05 * span;
    let (x0, y0) = (bbox.min.x - margin, -bbox.max.y - margin);
    let (w, h) = (bbox.width() + 2.0 * margin, bbox.height() + 2.0 * margin);
    let stroke_width = span / 800.0;

    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0} {y0} {w} {h}">"#).unwrap();
    for layer in layers {
        let mut d = String::new();
        for ring in layer.rings.iter().filter(|r| !r.is_empty()) {
            for (i, p) in ring.iter().enumerate() {
                let cmd = if i == 0 { 'M' } else { 'L' };
                write!(d, "{cmd}{} {} ", p.x, 0.0 - p.y).unwrap();
            }
            if layer.closed {
                d.push_str("Z ");
            }
        }
        writeln!(
            out,
            r#"<path class="{}" fill="{}" stroke="{}" stroke-width="{stroke_width}" d="{}"/>"#,
            layer.class,
            layer.fill,
            layer.stroke,
            d.trim_end()
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
