//! Scan conversion over the triangle's bounding box with incremental
//! premultiplied-area updates, depth buffering, and arithmetic-operation
//! instrumentation.
//!
//! Traversal is row-major: the three premultiplied edge functions are
//! evaluated directly at the first pixel of each row, then updated along +x by
//! adding the premultiplied alpha terms. With the two additions of the
//! denominator sum, one reciprocal, and three multiplies, producing the
//! corrected barycentrics at a delta-path pixel costs exactly five additions,
//! one reciprocal, and three multiplications — the instrumented counters
//! verify this at run time rather than assuming it.
//!
//! Pixel `(i, j)` samples at the half-integer center `(i + 0.5, j + 0.5)`.
//! Pixels whose center lands exactly on an edge follow the top-left fill rule
//! so triangles sharing an edge shade each such pixel exactly once. The depth
//! test keeps the smaller interpolated eye-space depth and runs before
//! shading.

use crate::barycentric::{premultiplied_areas_at, Areas, Barycentrics};
use crate::differential::{differentials_at, Differentials};
use crate::error::Error;
use crate::fixedpoint::FixedSetup;
use crate::interp::{interpolate_depth, interpolate_linear, AttributeVector};
use crate::triangle::TriangleSetup;

/// Which barycentrics drive attribute interpolation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Screen-space barycentrics: the deliberately wrong comparison mode.
    Naive,
    /// Eye-space-corrected barycentrics.
    Correct,
}

/// Which arithmetic produces the premultiplied areas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arith {
    Float,
    Fixed,
}

/// Arithmetic operations counted in the barycentric inner loop.
///
/// The counter's scope is the production of corrected barycentrics from the
/// premultiplied areas: area updates, the denominator sum, the reciprocal, and
/// the final three multiplies. Attribute interpolation, coverage sign tests,
/// and shading are outside that scope and never counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpCounter {
    pub additions: u64,
    pub multiplications: u64,
    pub reciprocals: u64,
}

impl OpCounter {
    #[inline]
    fn fadd(&mut self, a: f64, b: f64) -> f64 {
        self.additions += 1;
        a + b
    }

    #[inline]
    fn fmul(&mut self, a: f64, b: f64) -> f64 {
        self.multiplications += 1;
        a * b
    }

    #[inline]
    fn frecip(&mut self, a: f64) -> f64 {
        self.reciprocals += 1;
        1.0 / a
    }

    #[inline]
    fn iadd(&mut self, a: i64, b: i64) -> i64 {
        self.additions += 1;
        a + b
    }

    #[inline]
    fn imul(&mut self, a: i64, b: i64) -> i64 {
        self.multiplications += 1;
        a * b
    }

    fn minus(&self, earlier: &OpCounter) -> OpCounter {
        OpCounter {
            additions: self.additions - earlier.additions,
            multiplications: self.multiplications - earlier.multiplications,
            reciprocals: self.reciprocals - earlier.reciprocals,
        }
    }

    fn accumulate(&mut self, other: &OpCounter) {
        self.additions += other.additions;
        self.multiplications += other.multiplications;
        self.reciprocals += other.reciprocals;
    }
}

/// Everything the per-pixel shader sees.
#[derive(Debug, Clone, Copy)]
pub struct Fragment {
    pub x: usize,
    pub y: usize,
    /// Pixel-center coordinates.
    pub px: f64,
    pub py: f64,
    /// Barycentrics used for attribute interpolation (mode-dependent).
    pub bary: Barycentrics,
    /// Interpolated attributes (mode-dependent).
    pub attrs: AttributeVector,
    /// Interpolated eye-space depth (always from corrected barycentrics).
    pub depth: f64,
    /// Texture-coordinate differentials of the corrected interpolant,
    /// spacing-scaled totals included.
    pub diff: Differentials,
}

/// Color and depth storage. Depth holds eye-space `w`, initialized to
/// infinity; color channels stay in [0, 1] after shading.
#[derive(Debug, Clone, PartialEq)]
pub struct Framebuffer {
    width: usize,
    height: usize,
    color: Vec<[f64; 3]>,
    depth: Vec<f64>,
}

impl Framebuffer {
    pub fn new(width: usize, height: usize) -> Framebuffer {
        Framebuffer {
            width,
            height,
            color: vec![[0.0; 3]; width * height],
            depth: vec![f64::INFINITY; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn color_at(&self, x: usize, y: usize) -> [f64; 3] {
        self.color[y * self.width + x]
    }

    pub fn depth_at(&self, x: usize, y: usize) -> f64 {
        self.depth[y * self.width + x]
    }

    /// 8-bit quantization, `round(channel * 255)` clamped.
    pub fn to_rgb8(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.color.len() * 3);
        for px in &self.color {
            for &c in px {
                out.push((c * 255.0).round().clamp(0.0, 255.0) as u8);
            }
        }
        out
    }

    /// The whole framebuffer as a single band.
    pub fn as_band(&mut self) -> FramebufferBand<'_> {
        FramebufferBand {
            y_start: 0,
            width: self.width,
            color: &mut self.color,
            depth: &mut self.depth,
        }
    }

    /// Splits the framebuffer into `count` disjoint horizontal bands. Bands
    /// own their rows exclusively, so they may be rasterized concurrently;
    /// row-anchored traversal makes the result bit-identical to sequential
    /// rasterization.
    pub fn bands_mut(&mut self, count: usize) -> Vec<FramebufferBand<'_>> {
        let count = count.max(1).min(self.height.max(1));
        let rows_per = self.height.div_ceil(count);
        let mut bands = Vec::new();
        let mut color_rest: &mut [[f64; 3]] = &mut self.color;
        let mut depth_rest: &mut [f64] = &mut self.depth;
        let mut y = 0;
        while y < self.height {
            let rows = rows_per.min(self.height - y);
            let (c, cr) = color_rest.split_at_mut(rows * self.width);
            let (d, dr) = depth_rest.split_at_mut(rows * self.width);
            color_rest = cr;
            depth_rest = dr;
            bands.push(FramebufferBand { y_start: y, width: self.width, color: c, depth: d });
            y += rows;
        }
        bands
    }
}

/// A contiguous run of framebuffer rows owned exclusively by one rasterization
/// call.
#[derive(Debug)]
pub struct FramebufferBand<'a> {
    y_start: usize,
    width: usize,
    color: &'a mut [[f64; 3]],
    depth: &'a mut [f64],
}

impl FramebufferBand<'_> {
    pub fn y_start(&self) -> usize {
        self.y_start
    }

    pub fn rows(&self) -> usize {
        self.color.len().checked_div(self.width).unwrap_or(0)
    }

    #[inline]
    fn index(&self, x: usize, y: usize) -> usize {
        (y - self.y_start) * self.width + x
    }
}

/// Per-call rasterization summary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RasterStats {
    /// Pixels that passed coverage, fill rule, and depth test and were shaded.
    pub shaded_pixels: u64,
    /// Covered pixels whose areas came from the direct row-start evaluation.
    pub row_anchor_pixels: u64,
    /// Covered pixels whose areas came from a delta step.
    pub delta_bary_pixels: u64,
    /// Inner-loop cost observed at the first delta-path pixel.
    pub per_delta_pixel: OpCounter,
    /// True when every delta-path pixel cost exactly `per_delta_pixel`.
    pub delta_uniform: bool,
    /// All counted inner-loop operations, row starts included.
    pub total: OpCounter,
}

impl RasterStats {
    fn new() -> RasterStats {
        RasterStats { delta_uniform: true, ..RasterStats::default() }
    }

    /// Combines summaries from band-parallel runs.
    pub fn merge(&mut self, other: &RasterStats) {
        if other.delta_bary_pixels > 0 {
            if self.delta_bary_pixels == 0 {
                self.per_delta_pixel = other.per_delta_pixel;
            } else if self.per_delta_pixel != other.per_delta_pixel {
                self.delta_uniform = false;
            }
        }
        self.delta_uniform &= other.delta_uniform;
        self.shaded_pixels += other.shaded_pixels;
        self.row_anchor_pixels += other.row_anchor_pixels;
        self.delta_bary_pixels += other.delta_bary_pixels;
        self.total.accumulate(&other.total);
    }
}

/// Accepts a pixel lying exactly on one or more edges iff every such edge is
/// a top or left edge of this triangle.
///
/// With the orientation sign folded in, the gradient of an edge function
/// points into the triangle's interior. A left edge has interior toward +x
/// (adjusted alpha positive); a top edge is horizontal with interior toward
/// +y (adjusted alpha zero, adjusted beta positive). Two triangles sharing an
/// edge see opposite adjusted gradients, so exactly one of them owns each
/// pixel on the shared line.
fn top_left_accepts_f(setup: &TriangleSetup, areas: &Areas) -> bool {
    let s = setup.orientation;
    for (i, &a) in [areas.a0, areas.a1, areas.a2].iter().enumerate() {
        if s * a == 0.0 {
            let alpha = s * setup.edges[i].alpha;
            let beta = s * setup.edges[i].beta;
            let top_or_left = alpha > 0.0 || (alpha == 0.0 && beta > 0.0);
            if !top_or_left {
                return false;
            }
        }
    }
    true
}

fn top_left_accepts_i(fsetup: &FixedSetup, areas: &[i64; 3]) -> bool {
    let s = fsetup.orientation;
    for (i, &area) in areas.iter().enumerate() {
        if area == 0 {
            let alpha = s * fsetup.terms[3 * i].mantissa.signum();
            let beta = s * fsetup.terms[3 * i + 1].mantissa.signum();
            let top_or_left = alpha > 0 || (alpha == 0 && beta > 0);
            if !top_or_left {
                return false;
            }
        }
    }
    true
}

fn covered_f(setup: &TriangleSetup, areas: &Areas) -> bool {
    let s = setup.orientation;
    let (a0, a1, a2) = (s * areas.a0, s * areas.a1, s * areas.a2);
    if a0 < 0.0 || a1 < 0.0 || a2 < 0.0 {
        return false;
    }
    if a0 == 0.0 || a1 == 0.0 || a2 == 0.0 {
        return top_left_accepts_f(setup, areas);
    }
    true
}

fn covered_i(fsetup: &FixedSetup, areas: &[i64; 3]) -> bool {
    let s = fsetup.orientation;
    let (a0, a1, a2) = (s * areas[0], s * areas[1], s * areas[2]);
    if a0 < 0 || a1 < 0 || a2 < 0 {
        return false;
    }
    if a0 == 0 || a1 == 0 || a2 == 0 {
        return top_left_accepts_i(fsetup, areas);
    }
    true
}

/// Rasterizes one triangle into the framebuffer.
///
/// The shader runs once per covered pixel that survives the depth test and
/// returns the color to store; channels are clamped to [0, 1] on write.
/// Fully clipped triangles shade zero pixels and are not an error. In fixed
/// arithmetic the integer setup itself can reject (overflow budget,
/// degenerate after coordinate snapping), which surfaces here.
pub fn rasterize<F>(
    setup: &TriangleSetup,
    mode: Mode,
    arith: Arith,
    spacing: f64,
    fb: &mut Framebuffer,
    shader: &mut F,
) -> Result<RasterStats, Error>
where
    F: FnMut(&Fragment) -> [f64; 3],
{
    let mut band = fb.as_band();
    rasterize_band(setup, mode, arith, spacing, &mut band, shader)
}

/// Band-restricted variant of [`rasterize`]; disjoint bands may run on
/// independent threads and produce bit-identical results.
pub fn rasterize_band<F>(
    setup: &TriangleSetup,
    mode: Mode,
    arith: Arith,
    spacing: f64,
    band: &mut FramebufferBand<'_>,
    shader: &mut F,
) -> Result<RasterStats, Error>
where
    F: FnMut(&Fragment) -> [f64; 3],
{
    let mut stats = RasterStats::new();
    let Some((x_range, y_range)) = clipped_pixel_range(setup, band) else {
        return Ok(stats);
    };

    let attrs = [
        AttributeVector::from_vertex(&setup.vertices[0]),
        AttributeVector::from_vertex(&setup.vertices[1]),
        AttributeVector::from_vertex(&setup.vertices[2]),
    ];
    let ws = setup.ws();

    let fixed = match arith {
        Arith::Fixed => Some(FixedSetup::new(setup, false)?),
        Arith::Float => None,
    };

    for y in y_range.clone() {
        let py = y as f64 + 0.5;

        // Row anchor: direct evaluation of the premultiplied areas; delta
        // steps take over for the rest of the row.
        let mut f_areas = Areas { a0: 0.0, a1: 0.0, a2: 0.0 };
        let mut i_areas = [0i64; 3];
        match &fixed {
            None => {
                let px0 = x_range.start as f64 + 0.5;
                f_areas = counted_direct_areas(setup, px0, py, &mut stats.total);
            }
            Some(fs) => {
                i_areas = counted_direct_areas_i(fs, x_range.start as i64, y as i64, &mut stats.total)?;
                // Each accumulator is linear in x, so validating the far end
                // of the row bounds every delta-stepped value in between
                // against the declared capacity.
                fs.areas_at_pixel(x_range.end as i64 - 1, y as i64)?;
            }
        }

        // The naive comparison mode needs plain screen-space areas as well;
        // they ride along uncounted, outside the instrumented scope.
        let mut plain = crate::barycentric::areas_at(setup, x_range.start as f64 + 0.5, py);

        for x in x_range.clone() {
            let is_anchor = x == x_range.start;
            let ops_before = stats.total;

            if !is_anchor {
                match &fixed {
                    None => {
                        f_areas.a0 = stats.total.fadd(f_areas.a0, setup.terms[0]);
                        f_areas.a1 = stats.total.fadd(f_areas.a1, setup.terms[3]);
                        f_areas.a2 = stats.total.fadd(f_areas.a2, setup.terms[6]);
                    }
                    Some(fs) => {
                        let steps = fs.x_steps();
                        i_areas[0] = stats.total.iadd(i_areas[0], steps[0]);
                        i_areas[1] = stats.total.iadd(i_areas[1], steps[1]);
                        i_areas[2] = stats.total.iadd(i_areas[2], steps[2]);
                    }
                }
                if mode == Mode::Naive {
                    plain.a0 += setup.edges[0].alpha;
                    plain.a1 += setup.edges[1].alpha;
                    plain.a2 += setup.edges[2].alpha;
                }
            }

            let covered = match &fixed {
                None => covered_f(setup, &f_areas),
                Some(fs) => covered_i(fs, &i_areas),
            };
            if !covered {
                continue;
            }

            // Corrected barycentrics: denominator sum, reciprocal, three
            // multiplies — all counted.
            let bary = match &fixed {
                None => {
                    let partial = stats.total.fadd(f_areas.a0, f_areas.a1);
                    let d = stats.total.fadd(partial, f_areas.a2);
                    let inv = stats.total.frecip(d);
                    Barycentrics {
                        b0: stats.total.fmul(f_areas.a0, inv),
                        b1: stats.total.fmul(f_areas.a1, inv),
                        b2: stats.total.fmul(f_areas.a2, inv),
                    }
                }
                Some(_) => {
                    let partial = stats.total.iadd(i_areas[0], i_areas[1]);
                    let d = stats.total.iadd(partial, i_areas[2]);
                    if d == 0 {
                        // Possible only when extreme depth ratios quantize a
                        // product mantissa to zero and the pixel center sits
                        // exactly on a snapped vertex; no weight information.
                        continue;
                    }
                    let inv = stats.total.frecip(d as f64);
                    Barycentrics {
                        b0: stats.total.fmul(i_areas[0] as f64, inv),
                        b1: stats.total.fmul(i_areas[1] as f64, inv),
                        b2: stats.total.fmul(i_areas[2] as f64, inv),
                    }
                }
            };

            let pixel_ops = stats.total.minus(&ops_before);
            if is_anchor {
                stats.row_anchor_pixels += 1;
            } else {
                if stats.delta_bary_pixels == 0 {
                    stats.per_delta_pixel = pixel_ops;
                } else if pixel_ops != stats.per_delta_pixel {
                    stats.delta_uniform = false;
                }
                stats.delta_bary_pixels += 1;
            }

            let depth = interpolate_depth(&bary, ws);
            let idx = band.index(x, y);
            if depth >= band.depth[idx] {
                continue;
            }

            let px = x as f64 + 0.5;
            let corrected_attrs = interpolate_linear(&bary, &attrs);
            let (shade_bary, shade_attrs) = match mode {
                Mode::Correct => (bary, corrected_attrs),
                Mode::Naive => {
                    let nb = crate::barycentric::screen_barycentrics(&plain)?;
                    (nb, interpolate_linear(&nb, &attrs))
                }
            };
            // Derivative selection always uses the corrected interpolant.
            let diff = differentials_at(setup, px, py, &corrected_attrs, spacing)?;

            let fragment = Fragment {
                x,
                y,
                px,
                py,
                bary: shade_bary,
                attrs: shade_attrs,
                depth,
                diff,
            };
            let rgb = shader(&fragment);
            band.color[idx] = [
                rgb[0].clamp(0.0, 1.0),
                rgb[1].clamp(0.0, 1.0),
                rgb[2].clamp(0.0, 1.0),
            ];
            band.depth[idx] = depth;
            stats.shaded_pixels += 1;
        }
    }
    Ok(stats)
}

fn counted_direct_areas(setup: &TriangleSetup, x: f64, y: f64, ops: &mut OpCounter) -> Areas {
    let t = &setup.terms;
    let eval = |ops: &mut OpCounter, ta: f64, tb: f64, tc: f64| {
        let xv = ops.fmul(ta, x);
        let yv = ops.fmul(tb, y);
        let xy = ops.fadd(xv, yv);
        ops.fadd(xy, tc)
    };
    Areas {
        a0: eval(ops, t[0], t[1], t[2]),
        a1: eval(ops, t[3], t[4], t[5]),
        a2: eval(ops, t[6], t[7], t[8]),
    }
}

fn counted_direct_areas_i(
    fs: &FixedSetup,
    px: i64,
    py: i64,
    ops: &mut OpCounter,
) -> Result<[i64; 3], Error> {
    // Capacity-checked reference evaluation first, then the counted replay of
    // the same products and sums.
    let checked = fs.areas_at_pixel(px, py)?;
    let m = px - fs.anchor.0;
    let n = py - fs.anchor.1;
    let mut out = [0i64; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let a = ops.imul(m, fs.terms[3 * i].mantissa);
        let b = ops.imul(n, fs.terms[3 * i + 1].mantissa);
        let ab = ops.iadd(a, b);
        *slot = ops.iadd(ab, fs.terms[3 * i + 2].mantissa);
        debug_assert_eq!(*slot, checked[i]);
    }
    Ok(out)
}

fn clipped_pixel_range(
    setup: &TriangleSetup,
    band: &FramebufferBand<'_>,
) -> Option<(std::ops::Range<usize>, std::ops::Range<usize>)> {
    let xs = [setup.vertices[0].x, setup.vertices[1].x, setup.vertices[2].x];
    let ys = [setup.vertices[0].y, setup.vertices[1].y, setup.vertices[2].y];
    let min_x = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_x = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min_y = ys.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_y = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    // Centers at i + 0.5: the first candidate column is ceil(min - 0.5).
    let x_lo = ((min_x - 0.5).ceil() as i64).max(0);
    let x_hi = ((max_x - 0.5).floor() as i64).min(band.width as i64 - 1);
    let y_lo = ((min_y - 0.5).ceil() as i64).max(band.y_start as i64);
    let y_hi = ((max_y - 0.5).floor() as i64).min((band.y_start + band.rows()) as i64 - 1);
    if x_lo > x_hi || y_lo > y_hi {
        return None;
    }
    Some((x_lo as usize..x_hi as usize + 1, y_lo as usize..y_hi as usize + 1))
}

/// Pixel rectangle for the incremental-equivalence walk.
#[derive(Debug, Clone, Copy)]
pub struct PixelRect {
    pub x0: i64,
    pub y0: i64,
    pub width: usize,
    pub height: usize,
}

/// Deviation summary from [`incremental_equivalence_check`].
#[derive(Debug, Clone, Copy)]
pub struct DeviationReport {
    /// Maximum componentwise |incremental - direct| over the region.
    pub max_abs_deviation: f64,
    /// Maximum |direct| value seen, for relative bounds.
    pub max_abs_value: f64,
}

/// Walks the region serpentine-fashion with delta updates only — +x across a
/// row, one +y step, then -x back — comparing the accumulators against direct
/// evaluation at every pixel. One anchor for the whole region makes this a
/// strictly harsher test than the per-row anchoring the rasterizer uses.
/// Integer arithmetic must come back exactly zero; float accumulates rounding
/// drift only.
pub fn incremental_equivalence_check(
    setup: &TriangleSetup,
    region: PixelRect,
    arith: Arith,
) -> Result<DeviationReport, Error> {
    let mut report = DeviationReport { max_abs_deviation: 0.0, max_abs_value: 0.0 };
    if region.width == 0 || region.height == 0 {
        return Ok(report);
    }
    match arith {
        Arith::Float => {
            let at = |px: i64, py: i64| {
                premultiplied_areas_at(setup, px as f64 + 0.5, py as f64 + 0.5)
            };
            let start = at(region.x0, region.y0);
            let mut acc = [start.a0, start.a1, start.a2];
            let x_step = [setup.terms[0], setup.terms[3], setup.terms[6]];
            let y_step = [setup.terms[1], setup.terms[4], setup.terms[7]];
            for row in 0..region.height as i64 {
                let py = region.y0 + row;
                let leftward = row % 2 == 1;
                for col in 0..region.width as i64 {
                    let px = if leftward {
                        region.x0 + region.width as i64 - 1 - col
                    } else {
                        region.x0 + col
                    };
                    let direct = at(px, py);
                    for (a, d) in acc.iter().zip([direct.a0, direct.a1, direct.a2]) {
                        report.max_abs_deviation = report.max_abs_deviation.max((a - d).abs());
                        report.max_abs_value = report.max_abs_value.max(d.abs());
                    }
                    let last_in_row = col == region.width as i64 - 1;
                    if !last_in_row {
                        for (a, s) in acc.iter_mut().zip(x_step) {
                            if leftward {
                                *a -= s;
                            } else {
                                *a += s;
                            }
                        }
                    } else if row != region.height as i64 - 1 {
                        for (a, s) in acc.iter_mut().zip(y_step) {
                            *a += s;
                        }
                    }
                }
            }
        }
        Arith::Fixed => {
            let fs = FixedSetup::new(setup, false)?;
            let mut acc = fs.areas_at_pixel(region.x0, region.y0)?;
            let x_step = fs.x_steps();
            let y_step = fs.y_steps();
            for row in 0..region.height as i64 {
                let py = region.y0 + row;
                let leftward = row % 2 == 1;
                for col in 0..region.width as i64 {
                    let px = if leftward {
                        region.x0 + region.width as i64 - 1 - col
                    } else {
                        region.x0 + col
                    };
                    let direct = fs.areas_at_pixel(px, py)?;
                    for (a, d) in acc.iter().zip(direct) {
                        report.max_abs_deviation =
                            report.max_abs_deviation.max((a - d).unsigned_abs() as f64);
                        report.max_abs_value = report.max_abs_value.max(d.unsigned_abs() as f64);
                    }
                    let last_in_row = col == region.width as i64 - 1;
                    if !last_in_row {
                        for (a, s) in acc.iter_mut().zip(x_step) {
                            if leftward {
                                *a -= s;
                            } else {
                                *a += s;
                            }
                        }
                    } else if row != region.height as i64 - 1 {
                        for (a, s) in acc.iter_mut().zip(y_step) {
                            *a += s;
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Performs one canonical delta step at the given pixel — area updates from
/// the previous pixel, denominator sum, reciprocal, multiplies — and returns
/// the observed operation counts. The previous pixel's areas are taken as
/// given, matching the steady state of the inner loop.
pub fn count_inner_loop_ops(setup: &TriangleSetup, pixel_x: i64, pixel_y: i64) -> OpCounter {
    let mut ops = OpCounter::default();
    let prev =
        premultiplied_areas_at(setup, (pixel_x - 1) as f64 + 0.5, pixel_y as f64 + 0.5);
    let a0 = ops.fadd(prev.a0, setup.terms[0]);
    let a1 = ops.fadd(prev.a1, setup.terms[3]);
    let a2 = ops.fadd(prev.a2, setup.terms[6]);
    let partial = ops.fadd(a0, a1);
    let d = ops.fadd(partial, a2);
    let inv = ops.frecip(d);
    let _bary = (ops.fmul(a0, inv), ops.fmul(a1, inv), ops.fmul(a2, inv));
    ops
}
