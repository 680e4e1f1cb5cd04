//! A common view of the two snowflake families for the thickness checks.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::classical::{incenter, ClassicalLevel, ClassicalParams};
use crate::error::Result;
use crate::geom::{AxisSquare, Point, Region};
use crate::square::{square_prefractal, QuarterKind, QuarterRegion, SquareLevel};

/// Which snowflake.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Classical { beta: f64 },
    Square,
}

impl Family {
    pub fn xi(&self) -> Result<f64> {
        match self {
            Family::Classical { beta } => Ok(ClassicalParams::new(*beta)?.xi()),
            Family::Square => Ok(0.25),
        }
    }

    /// Similarity dimension of the limit boundary.
    pub fn dimension(&self) -> Result<f64> {
        match self {
            Family::Classical { beta } => Ok(crate::classical::classical_dimension(&ClassicalParams::new(*beta)?)),
            Family::Square => Ok(1.5),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Classical { .. } => "classical",
            Family::Square => "square",
        }
    }
}

/// Constant sets for the three sufficient conditions: `c` for the collar
/// condition, `c1m..c4m` for interior cubes and `c1p..c4p` for exterior cubes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThicknessConstants {
    pub c: f64,
    pub c1m: f64,
    pub c2m: f64,
    pub c3m: f64,
    pub c4m: f64,
    pub c1p: f64,
    pub c2p: f64,
    pub c3p: f64,
    pub c4p: f64,
}

/// How far a constant set is moved from the values in the proofs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// The values from the constructions.
    Proof,
    /// Lower bounds halved, upper bounds doubled.
    Loose,
    /// Lower bounds doubled, upper bounds halved.
    Tight,
}

impl ThicknessConstants {
    pub fn classical(p: &ClassicalParams) -> Self {
        let rho = p.rho();
        let (c1, c3, c4) = (rho / SQRT_2, rho / 2.0, 2.0);
        let s = p.xi().sqrt();
        ThicknessConstants { c: 0.5, c1m: c1, c2m: c1, c3m: c3, c4m: c4, c1p: s * c1, c2p: s * c1, c3p: s * c3, c4p: s * c4 }
    }

    pub fn square() -> Self {
        let (c1, c3, c4) = (0.25, 0.25 / SQRT_2, 0.375);
        ThicknessConstants { c: 1.0, c1m: c1, c2m: c1, c3m: c3, c4m: c4, c1p: c1, c2p: c1, c3p: c3, c4p: c4 }
    }

    pub fn for_family(f: &Family) -> Result<Self> {
        Ok(match f {
            Family::Classical { beta } => Self::classical(&ClassicalParams::new(*beta)?),
            Family::Square => Self::square(),
        })
    }

    pub fn with_profile(self, profile: Profile) -> Self {
        let (lo, hi) = match profile {
            Profile::Proof => return self,
            Profile::Loose => (0.5, 2.0),
            Profile::Tight => (2.0, 0.5),
        };
        ThicknessConstants {
            c: self.c * hi,
            c1m: self.c1m * lo,
            c2m: self.c2m * hi,
            c3m: self.c3m * lo,
            c4m: self.c4m * hi,
            c1p: self.c1p * lo,
            c2p: self.c2p * hi,
            c3p: self.c3p * lo,
            c4p: self.c4p * hi,
        }
    }
}

/// One level of a snowflake: inner and outer prefractal, collar pieces and
/// the cube constructions used in the sufficient conditions.
pub trait Prefractal: Sync {
    fn family(&self) -> Family;
    fn xi(&self) -> f64;
    fn level(&self) -> u32;
    /// `Γ_j⁻`.
    fn inner(&self) -> &dyn Region;
    /// `Γ_j⁺`.
    fn outer(&self) -> &dyn Region;
    /// Convex counter-clockwise pieces whose union is `Δ_j`.
    fn collar_cells(&self) -> Vec<Vec<Point>>;
    /// Proof construction of an interior cube for `x ∈ ∂Γ_j⁻`.
    fn inner_candidate(&self, x: Point) -> Option<AxisSquare>;
    /// Proof construction of an exterior cube for `x ∈ ∂Γ_j⁺`.
    fn exterior_candidate(&self, x: Point) -> Option<AxisSquare>;
    fn constants(&self) -> ThicknessConstants;
}

impl Prefractal for ClassicalLevel {
    fn family(&self) -> Family {
        Family::Classical { beta: self.params.beta() }
    }

    fn xi(&self) -> f64 {
        self.params.xi()
    }

    fn level(&self) -> u32 {
        self.j
    }

    fn inner(&self) -> &dyn Region {
        &self.inner
    }

    fn outer(&self) -> &dyn Region {
        &self.outer
    }

    fn collar_cells(&self) -> Vec<Vec<Point>> {
        self.collar_triangles().into_iter().map(|t| t.to_vec()).collect()
    }

    fn inner_candidate(&self, x: Point) -> Option<AxisSquare> {
        let rho = self.params.rho();
        if self.j == 0 {
            let t = self.inner.polygon().vertices();
            let c = incenter(&[t[0], t[1], t[2]]);
            return AxisSquare::centered(c, rho / SQRT_2).ok();
        }
        let (_, id) = self.inner.boundary().nearest(x)?;
        let t = self.inner_group_triangle(id / 4);
        AxisSquare::centered(incenter(&t), rho * self.edge_length_inner / SQRT_2).ok()
    }

    fn exterior_candidate(&self, x: Point) -> Option<AxisSquare> {
        // The hexagon has no carved triangles; level 0 is left to the search.
        if self.j == 0 {
            return None;
        }
        let (_, id) = self.outer.boundary().nearest(x)?;
        let t = self.outer_group_triangle(id / 4);
        AxisSquare::centered(incenter(&t), self.params.rho() * self.edge_length_outer / SQRT_2).ok()
    }

    fn constants(&self) -> ThicknessConstants {
        ThicknessConstants::classical(&self.params)
    }
}

/// `Γ_j⁻` and `Γ_j⁺` of the square snowflake.
#[derive(Debug)]
pub struct SquarePair {
    pub level: SquareLevel,
    pub inner: QuarterRegion,
    pub outer: QuarterRegion,
}

impl SquarePair {
    pub fn new(j: u32) -> Result<Self> {
        let level = square_prefractal(j)?;
        let inner = level.region(QuarterKind::Inner);
        let outer = level.region(QuarterKind::Outer);
        Ok(SquarePair { level, inner, outer })
    }

    fn ell(&self) -> f64 {
        self.level.ell()
    }
}

impl Prefractal for SquarePair {
    fn family(&self) -> Family {
        Family::Square
    }

    fn xi(&self) -> f64 {
        0.25
    }

    fn level(&self) -> u32 {
        self.level.j
    }

    fn inner(&self) -> &dyn Region {
        &self.inner
    }

    fn outer(&self) -> &dyn Region {
        &self.outer
    }

    fn collar_cells(&self) -> Vec<Vec<Point>> {
        self.level.tilted().into_iter().map(|t| t.vertices().to_vec()).collect()
    }

    fn inner_candidate(&self, x: Point) -> Option<AxisSquare> {
        let (_, id) = self.inner.boundary().nearest(x)?;
        let q = self.inner.edge_meta(id).inside;
        AxisSquare::centered(self.inner.tilted_center(q), self.ell() / 4.0).ok()
    }

    fn exterior_candidate(&self, x: Point) -> Option<AxisSquare> {
        let (_, id) = self.outer.boundary().nearest(x)?;
        let q = self.outer.edge_meta(id).outside;
        AxisSquare::centered(self.outer.tilted_center(q), self.ell() / 4.0).ok()
    }

    fn constants(&self) -> ThicknessConstants {
        ThicknessConstants::square()
    }
}

/// The prefractal domain `Ω_j`: `Γ_j⁻` for the classical family, `Γ_j` for the square one.
pub fn domain(family: &Family, j: u32) -> Result<Box<dyn Region>> {
    Ok(match family {
        Family::Classical { beta } => Box::new(ClassicalLevel::new(ClassicalParams::new(*beta)?, j)?.inner),
        Family::Square => Box::new(square_prefractal(j)?.region(QuarterKind::Prefractal)),
    })
}

/// Builds level `j` of either family.
pub fn build(family: &Family, j: u32) -> Result<Box<dyn Prefractal>> {
    Ok(match family {
        Family::Classical { beta } => Box::new(ClassicalLevel::new(ClassicalParams::new(*beta)?, j)?),
        Family::Square => Box::new(SquarePair::new(j)?),
    })
}
