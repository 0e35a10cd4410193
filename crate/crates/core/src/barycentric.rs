//! Per-point area evaluation, screen and eye-corrected barycentrics, and the
//! inside/outside sign test.

use crate::error::Error;
use crate::triangle::TriangleSetup;

/// Doubled signed areas of the three subtriangles at a query point.
///
/// Depending on the producing operation these are either plain screen-space
/// areas (their sum is constant over the plane and equals the triangle's total
/// doubled signed area) or the `w`-premultiplied variant used by the corrected
/// barycentrics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Areas {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Areas {
    /// Fixed-order sum `(a0 + a1) + a2`.
    ///
    /// Every consumer of an area sum goes through this method so that the
    /// corrected-barycentric denominator and the derivative denominator are
    /// bit-identical when computed from the same `Areas` value.
    #[inline]
    pub fn sum(&self) -> f64 {
        (self.a0 + self.a1) + self.a2
    }
}

/// Barycentric weights. For points inside the triangle all three are
/// nonnegative; they always sum to 1 up to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Barycentrics {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
}

impl Barycentrics {
    pub fn as_array(&self) -> [f64; 3] {
        [self.b0, self.b1, self.b2]
    }
}

/// Coverage classification of a point against a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    Inside,
    OnEdge,
    Outside,
}

/// Plain doubled signed areas at `(x, y)`, one per edge function.
pub fn areas_at(setup: &TriangleSetup, x: f64, y: f64) -> Areas {
    Areas {
        a0: setup.edges[0].eval(x, y),
        a1: setup.edges[1].eval(x, y),
        a2: setup.edges[2].eval(x, y),
    }
}

/// `w`-premultiplied doubled signed areas at `(x, y)`, evaluated from the nine
/// setup terms. Componentwise this equals [`areas_at`] scaled by
/// `setup.wprod`.
pub fn premultiplied_areas_at(setup: &TriangleSetup, x: f64, y: f64) -> Areas {
    let t = &setup.terms;
    Areas {
        a0: t[0] * x + t[1] * y + t[2],
        a1: t[3] * x + t[4] * y + t[5],
        a2: t[6] * x + t[7] * y + t[8],
    }
}

const DENOMINATOR_FLOOR: f64 = 1e-300;

/// Screen-space barycentrics: each area divided by the area sum.
pub fn screen_barycentrics(areas: &Areas) -> Result<Barycentrics, Error> {
    divide_by_sum(areas)
}

/// Eye-space-corrected barycentrics from premultiplied areas.
///
/// Dividing the `w`-premultiplied areas by their sum undoes the perspective
/// divide, so the resulting weights interpolate linearly in eye space.
pub fn corrected_barycentrics(premultiplied: &Areas) -> Result<Barycentrics, Error> {
    divide_by_sum(premultiplied)
}

fn divide_by_sum(areas: &Areas) -> Result<Barycentrics, Error> {
    let sum = areas.sum();
    if sum.abs() < DENOMINATOR_FLOOR {
        return Err(Error::ZeroDenominator);
    }
    Ok(Barycentrics {
        b0: areas.a0 / sum,
        b1: areas.a1 / sum,
        b2: areas.a2 / sum,
    })
}

/// Classifies a point from its signed areas.
///
/// Areas are multiplied by the triangle's orientation sign so both windings
/// classify identically: all positive means inside, any negative means the
/// point is outside the edge opposite that vertex, and a zero with no
/// negatives means exactly on an edge. Works on plain and premultiplied areas
/// alike since the `w` products are positive.
pub fn coverage(setup: &TriangleSetup, areas: &Areas) -> Coverage {
    let s = setup.orientation;
    let (a0, a1, a2) = (s * areas.a0, s * areas.a1, s * areas.a2);
    if a0 < 0.0 || a1 < 0.0 || a2 < 0.0 {
        Coverage::Outside
    } else if a0 == 0.0 || a1 == 0.0 || a2 == 0.0 {
        Coverage::OnEdge
    } else {
        Coverage::Inside
    }
}
