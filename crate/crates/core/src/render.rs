//! Scene-level render driver: builds triangle setups, wires the texture and
//! color shader, and optionally tracks the deviation of the shaded texture
//! coordinates from the rational-linear route.

use crate::differential::mip_level;
use crate::error::Error;
use crate::interp::{interpolate_rational, AttributeVector};
use crate::raster::{rasterize, Arith, Framebuffer, Mode, RasterStats};
use crate::scene::Scene;
use crate::texture::MipPyramid;
use crate::triangle::TriangleSetup;
use crate::{areas_at, screen_barycentrics};

/// Maximum per-pixel gap between the shaded (u, v) and the rational-linear
/// evaluation of the same pixel — an independent algebraic route to the same
/// quantity in correct mode, and the reference the naive mode is measured
/// against.
#[derive(Debug, Clone, Copy, Default)]
pub struct UvDeviation {
    pub max_du: f64,
    pub max_dv: f64,
}

/// Renders every triangle of the scene. When a pyramid is supplied the shader
/// modulates the vertex color by the bilinear texture sample at the MIP level
/// chosen from the pixel's differentials; otherwise it shades the vertex
/// color.
pub fn render_scene(
    scene: &Scene,
    pyramid: Option<&MipPyramid>,
    mode: Mode,
    arith: Arith,
) -> Result<(Framebuffer, RasterStats), Error> {
    let (fb, stats, _) = render_impl(scene, pyramid, mode, arith, false)?;
    Ok((fb, stats))
}

/// [`render_scene`] plus the per-pixel (u, v) deviation report.
pub fn render_scene_report(
    scene: &Scene,
    pyramid: Option<&MipPyramid>,
    mode: Mode,
    arith: Arith,
) -> Result<(Framebuffer, RasterStats, UvDeviation), Error> {
    render_impl(scene, pyramid, mode, arith, true)
}

fn render_impl(
    scene: &Scene,
    pyramid: Option<&MipPyramid>,
    mode: Mode,
    arith: Arith,
    report: bool,
) -> Result<(Framebuffer, RasterStats, UvDeviation), Error> {
    let mut fb = Framebuffer::new(scene.width, scene.height);
    let mut stats = RasterStats::default();
    let mut first = true;
    let mut deviation = UvDeviation::default();

    for tri in &scene.triangles {
        let setup = TriangleSetup::new(tri[0], tri[1], tri[2])?;
        let ws = setup.ws();
        let attrs = [
            AttributeVector::from_vertex(&tri[0]),
            AttributeVector::from_vertex(&tri[1]),
            AttributeVector::from_vertex(&tri[2]),
        ];
        let base_dims = pyramid.map(|p| p.base_dimensions());

        let mut shader = |f: &crate::raster::Fragment| {
            if report {
                // Rational-linear route from plain screen areas, independent
                // of the corrected-barycentric pipeline that produced f.attrs.
                let plain = areas_at(&setup, f.px, f.py);
                if let Ok(sb) = screen_barycentrics(&plain) {
                    if let Ok(oracle) = interpolate_rational(&sb, ws, &attrs) {
                        deviation.max_du = deviation.max_du.max((f.attrs.u - oracle.u).abs());
                        deviation.max_dv = deviation.max_dv.max((f.attrs.v - oracle.v).abs());
                    }
                }
            }
            match (pyramid, base_dims) {
                (Some(p), Some((w, h))) => {
                    let level = mip_level(&f.diff, w as u32, h as u32);
                    let t = p.sample(f.attrs.u, f.attrs.v, level);
                    [t[0] * f.attrs.r, t[1] * f.attrs.g, t[2] * f.attrs.b]
                }
                _ => [f.attrs.r, f.attrs.g, f.attrs.b],
            }
        };
        let tri_stats = rasterize(&setup, mode, arith, scene.spacing, &mut fb, &mut shader)?;
        if first {
            stats = tri_stats;
            first = false;
        } else {
            stats.merge(&tri_stats);
        }
    }
    Ok((fb, stats, deviation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::parse_scene;
    use crate::texture::{build_pyramid, Image};

    const QUAD: &str = "\
framebuffer 64 64
tri
v 8 8 1 0 0 1 1 1
v 56 8 1 1 0 1 1 1
v 20 56 4 1 1 1 1 1
tri
v 8 8 1 0 0 1 1 1
v 20 56 4 1 1 1 1 1
v 8 56 4 0 1 1 1 1
";

    #[test]
    fn correct_mode_matches_rational_route() {
        let scene = parse_scene(QUAD).unwrap();
        let (_, stats, dev) =
            render_scene_report(&scene, None, Mode::Correct, Arith::Float).unwrap();
        assert!(stats.shaded_pixels > 500);
        assert!(dev.max_du <= 1e-12, "max_du = {}", dev.max_du);
        assert!(dev.max_dv <= 1e-12, "max_dv = {}", dev.max_dv);
    }

    #[test]
    fn naive_mode_departs_from_rational_route() {
        let scene = parse_scene(QUAD).unwrap();
        let (_, _, dev) = render_scene_report(&scene, None, Mode::Naive, Arith::Float).unwrap();
        assert!(dev.max_du > 0.05, "max_du = {}", dev.max_du);
    }

    #[test]
    fn naive_and_correct_images_differ_under_perspective() {
        let mut scene = parse_scene(QUAD).unwrap();
        // Color the quad by texture coordinate so interpolation differences
        // show up in the image.
        for tri in scene.triangles.iter_mut() {
            for v in tri.iter_mut() {
                v.r = v.u;
                v.g = v.v;
                v.b = 0.5;
            }
        }
        let (correct, _) = render_scene(&scene, None, Mode::Correct, Arith::Float).unwrap();
        let (naive, _) = render_scene(&scene, None, Mode::Naive, Arith::Float).unwrap();
        assert_ne!(correct.to_rgb8(), naive.to_rgb8());
    }

    #[test]
    fn textured_render_modulates_samples() {
        let scene = parse_scene(QUAD).unwrap();
        let tex = Image::from_fn(8, 8, |x, y| {
            let v = ((x + y) % 2) as f64;
            [v, v, v]
        })
        .unwrap();
        let pyramid = build_pyramid(tex).unwrap();
        let (fb, stats) = render_scene(&scene, Some(&pyramid), Mode::Correct, Arith::Float).unwrap();
        assert!(stats.shaded_pixels > 500);
        // Both dark and light texels must appear.
        let rgb = fb.to_rgb8();
        assert!(rgb.iter().any(|&c| c > 200));
        let mut covered_dark = false;
        for y in 0..64 {
            for x in 0..64 {
                let c = fb.color_at(x, y);
                if fb.depth_at(x, y).is_finite() && c[0] < 0.2 {
                    covered_dark = true;
                }
            }
        }
        assert!(covered_dark);
    }

    #[test]
    fn fixed_arith_renders_close_to_float() {
        let scene = parse_scene(QUAD).unwrap();
        let (float_fb, _) = render_scene(&scene, None, Mode::Correct, Arith::Float).unwrap();
        let (fixed_fb, _) = render_scene(&scene, None, Mode::Correct, Arith::Fixed).unwrap();
        // Flat white quad: coverage may differ along edges by snapping, but
        // where both shaded, colors agree.
        let mut both = 0;
        for y in 0..64 {
            for x in 0..64 {
                if float_fb.depth_at(x, y).is_finite() && fixed_fb.depth_at(x, y).is_finite() {
                    both += 1;
                    let a = float_fb.color_at(x, y);
                    let b = fixed_fb.color_at(x, y);
                    for c in 0..3 {
                        assert!((a[c] - b[c]).abs() < 1e-6);
                    }
                }
            }
        }
        assert!(both > 500);
    }
}
