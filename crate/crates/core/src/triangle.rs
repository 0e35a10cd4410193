//! Vertex and triangle domain types plus the per-triangle setup computation.
//!
//! A triangle's three edge functions are affine forms `alpha*x + beta*y + gamma`
//! whose values are doubled signed areas of the subtriangles spanned by a query
//! point and two vertices. Setup additionally premultiplies each edge's
//! coefficients by the product of the opposite two vertices' eye-space `w`
//! values, producing the nine terms the per-pixel loop consumes.

use crate::error::Error;

/// A vertex in perspective space with its eye-space depth and attributes.
///
/// `x`, `y` are screen pixel coordinates after the perspective divide, `w` is
/// the eye-space depth the divide used (must be positive; clipping happens
/// upstream). `u`, `v` are texture coordinates and `r`, `g`, `b` color
/// channels, all defined in world space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertex {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub u: f64,
    pub v: f64,
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl Vertex {
    #[allow(clippy::too_many_arguments)]
    pub fn new(x: f64, y: f64, w: f64, u: f64, v: f64, r: f64, g: f64, b: f64) -> Vertex {
        Vertex { x, y, w, u, v, r, g, b }
    }

    /// Positional constructor for tests and geometry-only call sites.
    pub fn at(x: f64, y: f64, w: f64) -> Vertex {
        Vertex::new(x, y, w, 0.0, 0.0, 0.0, 0.0, 0.0)
    }
}

/// Coefficients of one edge function, `area(x, y) = alpha*x + beta*y + gamma`.
///
/// Edge `i` is the edge opposite vertex `i`; its value at a point is the
/// doubled signed area of the triangle formed by the point and the other two
/// vertices. Signed values are stored (no magnitudes) so the value's sign
/// doubles as the inside/outside test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl EdgeCoefficients {
    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.alpha * x + self.beta * y + self.gamma
    }
}

/// Edge coefficients for all three edges, in opposite-vertex order.
///
/// `alpha0 = y1 - y2`, `beta0 = x2 - x1`, `gamma0 = x1*y2 - x2*y1`, and the
/// other two edges follow by cyclic permutation of the vertex indices.
pub fn edge_coefficients(v0: &Vertex, v1: &Vertex, v2: &Vertex) -> [EdgeCoefficients; 3] {
    let edge = |a: &Vertex, b: &Vertex| EdgeCoefficients {
        alpha: a.y - b.y,
        beta: b.x - a.x,
        gamma: a.x * b.y - b.x * a.y,
    };
    [edge(v1, v2), edge(v2, v0), edge(v0, v1)]
}

/// Per-triangle precomputation consumed by the rasterizer.
///
/// `wprod[i]` is the product of the two `w` values opposite vertex `i`:
/// `(w1*w2, w2*w0, w0*w1)`. `terms[3*i + k]` is `wprod[i]` times edge `i`'s
/// `k`-th coefficient (alpha, beta, gamma), stored exactly as those products.
/// `orientation` is the sign of the total doubled signed area, `+1.0` or
/// `-1.0`; both windings are accepted and the coverage test multiplies through
/// by this sign.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleSetup {
    pub vertices: [Vertex; 3],
    pub edges: [EdgeCoefficients; 3],
    pub wprod: [f64; 3],
    pub terms: [f64; 9],
    pub orientation: f64,
}

impl TriangleSetup {
    /// Builds the setup, rejecting non-positive `w` and degenerate triangles.
    ///
    /// Degeneracy is scale-aware: the total doubled signed area must reach
    /// `1e-12 * max(1, extent^2)` where `extent` is the larger bounding-box
    /// side.
    pub fn new(v0: Vertex, v1: Vertex, v2: Vertex) -> Result<TriangleSetup, Error> {
        for (index, v) in [v0, v1, v2].iter().enumerate() {
            if v.w <= 0.0 || v.w.is_nan() {
                return Err(Error::NonPositiveW { index, w: v.w });
            }
        }

        let edges = edge_coefficients(&v0, &v1, &v2);
        let area2 = signed_area2(&v0, &v1, &v2);

        let xs = [v0.x, v1.x, v2.x];
        let ys = [v0.y, v1.y, v2.y];
        let extent = (max3(xs) - min3(xs)).max(max3(ys) - min3(ys));
        let threshold = 1e-12 * (extent * extent).max(1.0);
        if area2.abs() < threshold {
            return Err(Error::DegenerateTriangle { area2 });
        }

        let wprod = [v1.w * v2.w, v2.w * v0.w, v0.w * v1.w];
        let mut terms = [0.0; 9];
        for i in 0..3 {
            terms[3 * i] = wprod[i] * edges[i].alpha;
            terms[3 * i + 1] = wprod[i] * edges[i].beta;
            terms[3 * i + 2] = wprod[i] * edges[i].gamma;
        }

        Ok(TriangleSetup {
            vertices: [v0, v1, v2],
            edges,
            wprod,
            terms,
            orientation: if area2 > 0.0 { 1.0 } else { -1.0 },
        })
    }

    /// Total doubled signed area from the cross-product form.
    ///
    /// Agrees with the gamma sum of the three edges (and with the sum of the
    /// three edge functions at any point) up to rounding; the cross-product
    /// form negates exactly under a vertex swap.
    pub fn total_area2(&self) -> f64 {
        let [v0, v1, v2] = &self.vertices;
        signed_area2(v0, v1, v2)
    }

    /// Eye-space depths of the three vertices.
    pub fn ws(&self) -> [f64; 3] {
        [self.vertices[0].w, self.vertices[1].w, self.vertices[2].w]
    }
}

fn signed_area2(v0: &Vertex, v1: &Vertex, v2: &Vertex) -> f64 {
    (v1.x - v0.x) * (v2.y - v0.y) - (v2.x - v0.x) * (v1.y - v0.y)
}

fn max3(v: [f64; 3]) -> f64 {
    v[0].max(v[1]).max(v[2])
}

fn min3(v: [f64; 3]) -> f64 {
    v[0].min(v[1]).min(v[2])
}
