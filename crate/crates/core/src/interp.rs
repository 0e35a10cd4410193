//! Attribute interpolation: plain linear (screen-space, kept as a comparison
//! mode), rational linear (hyperbolic), and the corrected-barycentric linear
//! form that matches it.

use crate::barycentric::Barycentrics;
use crate::error::Error;
use crate::triangle::Vertex;

/// The interpolated attribute channels: texture coordinates and color.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttributeVector {
    pub u: f64,
    pub v: f64,
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl AttributeVector {
    pub fn new(u: f64, v: f64, r: f64, g: f64, b: f64) -> AttributeVector {
        AttributeVector { u, v, r, g, b }
    }

    pub fn from_vertex(vertex: &Vertex) -> AttributeVector {
        AttributeVector::new(vertex.u, vertex.v, vertex.r, vertex.g, vertex.b)
    }

    fn from_fn(mut f: impl FnMut(fn(&AttributeVector) -> f64) -> f64) -> AttributeVector {
        AttributeVector {
            u: f(|a| a.u),
            v: f(|a| a.v),
            r: f(|a| a.r),
            g: f(|a| a.g),
            b: f(|a| a.b),
        }
    }
}

/// Weighted sum of the three vertex attribute vectors.
///
/// With screen-space barycentrics this is the naive interpolation that ignores
/// perspective; with eye-corrected barycentrics it is perspective-correct.
pub fn interpolate_linear(bary: &Barycentrics, attrs: &[AttributeVector; 3]) -> AttributeVector {
    AttributeVector::from_fn(|get| {
        bary.b0 * get(&attrs[0]) + bary.b1 * get(&attrs[1]) + bary.b2 * get(&attrs[2])
    })
}

/// Rational-linear (hyperbolic) interpolation from screen barycentrics.
///
/// Evaluated in the product form `sum(b_i * wjk * a_i) / sum(b_i * wjk)` where
/// `wjk` is the product of the other two vertices' `w`; this avoids the three
/// per-vertex divisions of the reciprocal form while computing the same value.
pub fn interpolate_rational(
    bary_screen: &Barycentrics,
    w: [f64; 3],
    attrs: &[AttributeVector; 3],
) -> Result<AttributeVector, Error> {
    let c = [
        bary_screen.b0 * (w[1] * w[2]),
        bary_screen.b1 * (w[2] * w[0]),
        bary_screen.b2 * (w[0] * w[1]),
    ];
    let den = c[0] + c[1] + c[2];
    if den.abs() < 1e-300 {
        return Err(Error::ZeroDenominator);
    }
    Ok(AttributeVector::from_fn(|get| {
        (c[0] * get(&attrs[0]) + c[1] * get(&attrs[1]) + c[2] * get(&attrs[2])) / den
    }))
}

/// Eye-space depth at the pixel: the corrected-barycentric weighted sum of the
/// vertex `w` values. This is what the depth buffer stores and tests.
pub fn interpolate_depth(bary_corrected: &Barycentrics, w: [f64; 3]) -> f64 {
    bary_corrected.b0 * w[0] + bary_corrected.b1 * w[1] + bary_corrected.b2 * w[2]
}
