//! `generate` and `export`.

use std::f64::consts::FRAC_PI_6;
use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use fractk::classical::{ClassicalLevel, ClassicalParams};
use fractk::geom::{Point, Region};
use fractk::square::{collar, inner_outer, square_prefractal, QuarterRegion};
use fractk::svg::{render_svg, Layer};
use serde::Serialize;

use crate::{emit, is_svg, to_json, CliError, FamilyArgs, FamilyName, Outcome};

#[derive(Subcommand)]
pub enum GenerateTarget {
    /// The β-family snowflake.
    Classical(ClassicalArgs),
    /// The square snowflake.
    Square(SquareArgs),
}

#[derive(Args)]
pub struct ClassicalArgs {
    #[arg(long, default_value_t = FRAC_PI_6, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long)]
    level: u32,
    #[arg(long, value_enum, default_value = "inner")]
    which: ClassicalWhich,
    /// Output file; `.svg` renders, anything else is JSON. Stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassicalWhich {
    Inner,
    Outer,
    Collar,
}

#[derive(Args)]
pub struct SquareArgs {
    #[arg(long)]
    level: u32,
    #[arg(long, value_enum, default_value = "boundary")]
    which: SquareWhich,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SquareWhich {
    /// `∂Γ_j` as a polygon.
    Boundary,
    /// `Γ_j⁻` as quarter triangles.
    Inner,
    /// `Γ_j⁺` as quarter triangles.
    Outer,
    /// The tilted squares of the collar, as polygons.
    Collar,
    /// The grid cells of `Γ_j`.
    Cells,
}

#[derive(Subcommand)]
pub enum ExportTarget {
    Svg(SvgArgs),
}

#[derive(Args)]
pub struct SvgArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    level: u32,
    #[arg(long, value_enum, default_value = "inner")]
    which: SvgWhich,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum SvgWhich {
    Inner,
    Outer,
    /// Outer prefractal first, inner drawn on top.
    Overlay,
    Collar,
}

#[derive(Serialize)]
struct PolygonJson {
    vertices: Vec<[f64; 2]>,
    closed: bool,
}

impl PolygonJson {
    fn new(pts: &[Point]) -> Self {
        PolygonJson { vertices: pts.iter().map(|p| [p.x, p.y]).collect(), closed: true }
    }
}

#[derive(Serialize)]
struct CellsJson {
    resolution: f64,
    cells: Vec<[i64; 2]>,
}

#[derive(Serialize)]
struct QuartersJson {
    resolution: f64,
    /// `[i, k, d]` with `d` = 0 south, 1 east, 2 north, 3 west.
    quarters: Vec<[i64; 3]>,
}

fn quarters_json(r: &QuarterRegion) -> QuartersJson {
    QuartersJson { resolution: r.ell(), quarters: r.quarters().iter().map(|q| [q.i, q.k, q.d as i64]).collect() }
}

fn quarter_rings(r: &QuarterRegion) -> Vec<Vec<Point>> {
    r.quarters().iter().map(|&q| r.quarter_vertices(q).to_vec()).collect()
}

/// Boundary of a region as two-point rings, for open-path drawing.
fn boundary_layer(class: &str, stroke: &str, r: &dyn Region) -> Layer {
    let rings = r.boundary().segments().iter().map(|s| vec![s.a, s.b]).collect();
    Layer { class: class.into(), stroke: stroke.into(), fill: "none".into(), closed: false, rings }
}

fn rings_layer(class: &str, stroke: &str, rings: Vec<Vec<Point>>) -> Layer {
    Layer { class: class.into(), stroke: stroke.into(), fill: "none".into(), closed: true, rings }
}

pub fn generate(target: GenerateTarget) -> Result<Outcome, CliError> {
    match target {
        GenerateTarget::Classical(a) => {
            let lvl = ClassicalLevel::new(ClassicalParams::new(a.beta)?, a.level)?;
            let out = a.out.as_deref();
            if is_svg(a.out.as_ref()) {
                let layer = match a.which {
                    ClassicalWhich::Inner => Layer::polygon("inner", "black", lvl.inner.polygon().vertices().to_vec()),
                    ClassicalWhich::Outer => Layer::polygon("outer", "red", lvl.outer.polygon().vertices().to_vec()),
                    ClassicalWhich::Collar => rings_layer("collar", "blue", classical_collar(&lvl)),
                };
                emit(out, &render_svg(&[layer])?)?;
            } else {
                let json = match a.which {
                    ClassicalWhich::Inner => to_json(&PolygonJson::new(lvl.inner.polygon().vertices()))?,
                    ClassicalWhich::Outer => to_json(&PolygonJson::new(lvl.outer.polygon().vertices()))?,
                    ClassicalWhich::Collar => {
                        to_json(&classical_collar(&lvl).iter().map(|t| PolygonJson::new(t)).collect::<Vec<_>>())?
                    }
                };
                emit(out, &json)?;
            }
        }
        GenerateTarget::Square(a) => {
            let out = a.out.as_deref();
            let lvl = square_prefractal(a.level)?;
            if is_svg(a.out.as_ref()) {
                let layer = match a.which {
                    SquareWhich::Boundary => Layer::polygon("boundary", "black", lvl.boundary_polygon().into_vertices()),
                    SquareWhich::Inner => rings_layer("inner", "black", quarter_rings(&inner_outer(a.level)?.0)),
                    SquareWhich::Outer => rings_layer("outer", "red", quarter_rings(&inner_outer(a.level)?.1)),
                    SquareWhich::Collar => rings_layer("collar", "blue", square_collar(a.level)?),
                    SquareWhich::Cells => {
                        let ell = lvl.ell();
                        let rings = lvl
                            .cells()
                            .iter()
                            .map(|(i, k)| {
                                let (x, y) = (i as f64 * ell, k as f64 * ell);
                                vec![
                                    Point::new(x, y),
                                    Point::new(x + ell, y),
                                    Point::new(x + ell, y + ell),
                                    Point::new(x, y + ell),
                                ]
                            })
                            .collect();
                        rings_layer("cells", "gray", rings)
                    }
                };
                emit(out, &render_svg(&[layer])?)?;
            } else {
                let json = match a.which {
                    SquareWhich::Boundary => to_json(&PolygonJson::new(lvl.boundary_polygon().vertices()))?,
                    SquareWhich::Inner => to_json(&quarters_json(&inner_outer(a.level)?.0))?,
                    SquareWhich::Outer => to_json(&quarters_json(&inner_outer(a.level)?.1))?,
                    SquareWhich::Collar => {
                        to_json(&square_collar(a.level)?.iter().map(|t| PolygonJson::new(t)).collect::<Vec<_>>())?
                    }
                    SquareWhich::Cells => to_json(&CellsJson {
                        resolution: lvl.ell(),
                        cells: lvl.cells().iter().map(|(i, k)| [i, k]).collect(),
                    })?,
                };
                emit(out, &json)?;
            }
        }
    }
    Ok(Outcome::Ok)
}

fn classical_collar(lvl: &ClassicalLevel) -> Vec<Vec<Point>> {
    lvl.collar_triangles().iter().map(|t| t.to_vec()).collect()
}

fn square_collar(j: u32) -> Result<Vec<Vec<Point>>, CliError> {
    Ok(collar(j)?.0.iter().map(|t| t.vertices().to_vec()).collect())
}

pub fn export(target: ExportTarget) -> Result<Outcome, CliError> {
    let ExportTarget::Svg(a) = target;
    let j = a.level;
    let layers = match a.family.family {
        FamilyName::Classical => {
            let lvl = ClassicalLevel::new(ClassicalParams::new(a.family.beta)?, j)?;
            let inner = || Layer::polygon("inner", "black", lvl.inner.polygon().vertices().to_vec());
            let outer = || Layer::polygon("outer", "red", lvl.outer.polygon().vertices().to_vec());
            match a.which {
                SvgWhich::Inner => vec![inner()],
                SvgWhich::Outer => vec![outer()],
                SvgWhich::Overlay => vec![outer(), inner()],
                SvgWhich::Collar => vec![rings_layer("collar", "blue", classical_collar(&lvl))],
            }
        }
        FamilyName::Square => {
            let (inner, outer) = inner_outer(j)?;
            match a.which {
                SvgWhich::Inner => vec![boundary_layer("inner", "black", &inner)],
                SvgWhich::Outer => vec![boundary_layer("outer", "red", &outer)],
                SvgWhich::Overlay => vec![boundary_layer("outer", "red", &outer), boundary_layer("inner", "black", &inner)],
                SvgWhich::Collar => vec![rings_layer("collar", "blue", square_collar(j)?)],
            }
        }
    };
    emit(Some(&a.out), &render_svg(&layers)?)?;
    Ok(Outcome::Ok)
}
