//! Analytic partial derivatives of the corrected texture-coordinate
//! interpolants, pixel-spacing-scaled total differentials, and MIP level
//! selection.
//!
//! The chain rule applied to the corrected interpolant gives, for example,
//!
//! ```text
//! du/dx = [t_a0*(u0 - u) + t_a1*(u1 - u) + t_a2*(u2 - u)] / D
//! ```
//!
//! where `t_a*` are the premultiplied alpha terms from setup, `u` is the
//! corrected interpolant at the point, and `D` is the premultiplied area sum —
//! the very same denominator the corrected barycentrics divide by.

use crate::barycentric::premultiplied_areas_at;
use crate::error::Error;
use crate::interp::AttributeVector;
use crate::triangle::TriangleSetup;

/// Texture-coordinate derivatives at a pixel.
///
/// `du_dx` .. `dv_dy` are the four partials in texture units per pixel. `du`
/// and `dv` are the spacing-scaled totals `S*(du_dx + du_dy)` and
/// `S*(dv_dx + dv_dy)`; they stay zero until a total-differential operation
/// fills them in.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Differentials {
    pub du_dx: f64,
    pub du_dy: f64,
    pub dv_dx: f64,
    pub dv_dy: f64,
    pub du: f64,
    pub dv: f64,
}

/// The four partials of the corrected (u, v) interpolants at `(x, y)`.
///
/// `interpolated` must be the corrected interpolant value at the same point.
/// The `du`/`dv` totals are left zero.
pub fn partials_at(
    setup: &TriangleSetup,
    x: f64,
    y: f64,
    interpolated: &AttributeVector,
) -> Result<Differentials, Error> {
    let areas = premultiplied_areas_at(setup, x, y);
    let d = areas.sum();
    if d.abs() < 1e-300 {
        return Err(Error::ZeroDenominator);
    }
    let t = &setup.terms;
    let vs = &setup.vertices;
    let du = [vs[0].u - interpolated.u, vs[1].u - interpolated.u, vs[2].u - interpolated.u];
    let dv = [vs[0].v - interpolated.v, vs[1].v - interpolated.v, vs[2].v - interpolated.v];
    Ok(Differentials {
        du_dx: (t[0] * du[0] + t[3] * du[1] + t[6] * du[2]) / d,
        du_dy: (t[1] * du[0] + t[4] * du[1] + t[7] * du[2]) / d,
        dv_dx: (t[0] * dv[0] + t[3] * dv[1] + t[6] * dv[2]) / d,
        dv_dy: (t[1] * dv[0] + t[4] * dv[1] + t[7] * dv[2]) / d,
        du: 0.0,
        dv: 0.0,
    })
}

/// Fills the totals from already-computed partials: `du = S*(du_dx + du_dy)`.
pub fn total_differentials(partials: &Differentials, spacing: f64) -> Differentials {
    Differentials {
        du: spacing * (partials.du_dx + partials.du_dy),
        dv: spacing * (partials.dv_dx + partials.dv_dy),
        ..*partials
    }
}

/// Partials and totals at `(x, y)` with the totals evaluated in the factored
/// single-fraction form: the alpha and beta terms of each edge are summed
/// before multiplying by the attribute deltas, so each total costs one
/// division. Algebraically identical to [`partials_at`] followed by
/// [`total_differentials`]; kept as a second route for cross-checking.
pub fn differentials_at(
    setup: &TriangleSetup,
    x: f64,
    y: f64,
    interpolated: &AttributeVector,
    spacing: f64,
) -> Result<Differentials, Error> {
    let areas = premultiplied_areas_at(setup, x, y);
    let d = areas.sum();
    if d.abs() < 1e-300 {
        return Err(Error::ZeroDenominator);
    }
    let t = &setup.terms;
    let vs = &setup.vertices;
    let du = [vs[0].u - interpolated.u, vs[1].u - interpolated.u, vs[2].u - interpolated.u];
    let dv = [vs[0].v - interpolated.v, vs[1].v - interpolated.v, vs[2].v - interpolated.v];
    let ab = [t[0] + t[1], t[3] + t[4], t[6] + t[7]];
    Ok(Differentials {
        du_dx: (t[0] * du[0] + t[3] * du[1] + t[6] * du[2]) / d,
        du_dy: (t[1] * du[0] + t[4] * du[1] + t[7] * du[2]) / d,
        dv_dx: (t[0] * dv[0] + t[3] * dv[1] + t[6] * dv[2]) / d,
        dv_dy: (t[1] * dv[0] + t[4] * dv[1] + t[7] * dv[2]) / d,
        du: spacing * ((ab[0] * du[0] + ab[1] * du[1] + ab[2] * du[2]) / d),
        dv: spacing * ((ab[0] * dv[0] + ab[1] * dv[1] + ab[2] * dv[2]) / d),
    })
}

/// MIP level from the totals: `log2(max(|du|*width, |dv|*height))`, clamped to
/// `[0, max_level]` where `max_level = floor(log2(max(width, height)))`.
/// Returns a fractional level; sampling truncates toward the finer level.
pub fn mip_level(diff: &Differentials, tex_width: u32, tex_height: u32) -> f64 {
    let max_level = tex_width.max(tex_height).max(1).ilog2() as f64;
    let footprint = (diff.du.abs() * tex_width as f64).max(diff.dv.abs() * tex_height as f64);
    if footprint <= 1.0 {
        0.0
    } else {
        footprint.log2().min(max_level)
    }
}
