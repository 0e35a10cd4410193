//! Block-normalized integer evaluation of the corrected barycentrics.
//!
//! Eye-space depths quantize to 15-bit integers, their pairwise products (up
//! to 30 bits) block-normalize back to 15-bit mantissas under one shared
//! shift, and the shift itself is discarded: the products appear in both the
//! numerator and the denominator of the corrected-barycentric ratio, so a
//! common scale factor cancels. Edge functions are then evaluated in pure
//! integer arithmetic, anchored at the triangle's bounding-box corner so the
//! per-pixel accumulators stay inside a declared 48-bit capacity, and the
//! final division happens once in floating point.
//!
//! An optional second block normalization squeezes the nine premultiplied
//! terms themselves to 15-bit mantissas. It is off by default: one shared
//! shift across terms whose magnitudes differ by the triangle's pixel extent
//! costs the smaller step terms most of their mantissa bits, and the resulting
//! barycentric error grows with triangle size. The flag exists to study
//! exactly that trade.

use crate::barycentric::Barycentrics;
use crate::error::Error;
use crate::triangle::TriangleSetup;

/// Bits of a quantized eye-space depth; the largest maps to `2^15 - 1`.
pub const W_BITS: u32 = 15;

/// Block-normalization target for the depth products and (when enabled) the
/// nine premultiplied terms.
pub const MANTISSA_BITS: u32 = 15;

/// Power-of-two subpixel factor for snapped vertex coordinates.
pub const SUBPIXEL_BITS: u32 = 6;

/// Accumulator capacity: any per-pixel integer value must stay below `2^47`
/// in magnitude (a 48-bit signed budget). Violations are checked, not
/// wrapped.
pub const ACCUMULATOR_BITS: u32 = 47;

/// Pixel offsets from the anchor must stay within this many bits.
pub const COORD_BITS: u32 = 14;

const ACC_LIMIT: i64 = 1 << ACCUMULATOR_BITS;

/// A block-normalized integer: a signed mantissa and the bit budget it was
/// declared under (`|mantissa| < 2^declared_bits`). The shared block exponent
/// is discarded by callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedTerm {
    pub mantissa: i64,
    pub declared_bits: u32,
}

/// Maps three eye-space depths to 15-bit integers: `round(w / max(w) * 32767)`
/// with a floor of 1 so no depth quantizes to zero weight.
pub fn quantize_w(w: [f64; 3]) -> Result<[i64; 3], Error> {
    for (index, &wi) in w.iter().enumerate() {
        if wi <= 0.0 || wi.is_nan() {
            return Err(Error::NonPositiveW { index, w: wi });
        }
    }
    let max = w[0].max(w[1]).max(w[2]);
    let full = ((1i64 << W_BITS) - 1) as f64;
    Ok([
        ((w[0] / max * full).round() as i64).max(1),
        ((w[1] / max * full).round() as i64).max(1),
        ((w[2] / max * full).round() as i64).max(1),
    ])
}

/// Shifts a group of integers by one common exponent so the largest magnitude
/// lands in `[2^(target_bits-1), 2^target_bits)`. Right shifts round to
/// nearest, ties to even; a negative returned shift means the group was
/// shifted left. The shift is returned for test visibility; callers discard
/// it.
pub fn block_normalize(values: &[i64], target_bits: u32) -> Result<(Vec<FixedTerm>, i32), Error> {
    let max_abs = values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
    if max_abs == 0 {
        return Err(Error::AllZero);
    }
    let bit_len = 64 - max_abs.leading_zeros();
    let mut shift = bit_len as i32 - target_bits as i32;
    loop {
        let mantissas: Vec<i64> = values.iter().map(|&v| apply_shift(v, shift)).collect();
        let m_max = mantissas.iter().map(|m| m.unsigned_abs()).max().unwrap();
        // Rounding the maximum up to exactly 2^target needs one more shift.
        if m_max < (1u64 << target_bits) {
            let terms = mantissas
                .into_iter()
                .map(|mantissa| FixedTerm { mantissa, declared_bits: target_bits })
                .collect();
            return Ok((terms, shift));
        }
        shift += 1;
    }
}

fn apply_shift(v: i64, shift: i32) -> i64 {
    if shift > 0 {
        shift_right_round_even(v, shift as u32)
    } else if shift < 0 {
        v << (-shift) as u32
    } else {
        v
    }
}

/// Divide by `2^k` rounding to nearest, ties to even.
fn shift_right_round_even(v: i64, k: u32) -> i64 {
    let div = 1i64 << k;
    let q = v.div_euclid(div);
    let r = v.rem_euclid(div);
    let half = div >> 1;
    if r > half || (r == half && (q & 1) != 0) {
        q + 1
    } else {
        q
    }
}

/// Integer per-triangle state for the fixed evaluation path.
///
/// Vertex coordinates snap to `2^subpixel_bits` subpixels and all edge
/// functions are expressed relative to the anchor pixel's center, so
/// `terms[3i + 0]` is edge `i`'s change per +x pixel step, `terms[3i + 1]` its
/// change per +y pixel step, and `terms[3i + 2]` its value at the anchor — each
/// premultiplied by the block-normalized depth-product mantissa of the
/// opposite vertex pair.
#[derive(Debug, Clone)]
pub struct FixedSetup {
    pub wprod: [FixedTerm; 3],
    pub terms: [FixedTerm; 9],
    pub subpixel_bits: u32,
    /// Anchor pixel indices (bounding-box corner).
    pub anchor: (i64, i64),
    /// Sign of the snapped triangle's doubled area, +1 or -1.
    pub orientation: i64,
    /// Whether the nine terms went through the second block normalization.
    pub second_normalized: bool,
}

impl FixedSetup {
    pub fn new(setup: &TriangleSetup, second_normalize: bool) -> Result<FixedSetup, Error> {
        let ws = setup.ws();
        let q = quantize_w(ws)?;
        let raw_wprod = [q[1] * q[2], q[2] * q[0], q[0] * q[1]];
        let (wprod_vec, _discarded) = block_normalize(&raw_wprod, MANTISSA_BITS)?;
        let wprod: [FixedTerm; 3] = [wprod_vec[0], wprod_vec[1], wprod_vec[2]];

        let scale = (1i64 << SUBPIXEL_BITS) as f64;
        let snap = |c: f64| (c * scale).round() as i64;
        let xs = [snap(setup.vertices[0].x), snap(setup.vertices[1].x), snap(setup.vertices[2].x)];
        let ys = [snap(setup.vertices[0].y), snap(setup.vertices[1].y), snap(setup.vertices[2].y)];

        // Integer edge coefficients in subpixel units, opposite-vertex order.
        let mut alpha = [0i64; 3];
        let mut beta = [0i64; 3];
        let mut gamma = [0i64; 3];
        for i in 0..3 {
            let j = (i + 1) % 3;
            let k = (i + 2) % 3;
            alpha[i] = ys[j] - ys[k];
            beta[i] = xs[k] - xs[j];
            gamma[i] = xs[j] * ys[k] - xs[k] * ys[j];
        }
        let area2 = gamma[0] + gamma[1] + gamma[2];
        if area2 == 0 {
            return Err(Error::DegenerateTriangle { area2: 0.0 });
        }

        // Anchor at the bounding-box corner pixel; its center in subpixels.
        let anchor_px = (
            div_floor(*xs.iter().min().unwrap(), 1 << SUBPIXEL_BITS),
            div_floor(*ys.iter().min().unwrap(), 1 << SUBPIXEL_BITS),
        );
        let cx = anchor_px.0 * (1 << SUBPIXEL_BITS) + (1 << (SUBPIXEL_BITS - 1));
        let cy = anchor_px.1 * (1 << SUBPIXEL_BITS) + (1 << (SUBPIXEL_BITS - 1));

        let mut wide = [0i128; 9];
        for i in 0..3 {
            let w = wprod[i].mantissa as i128;
            let anchor_area = alpha[i] as i128 * cx as i128 + beta[i] as i128 * cy as i128 + gamma[i] as i128;
            wide[3 * i] = w * ((alpha[i] as i128) << SUBPIXEL_BITS);
            wide[3 * i + 1] = w * ((beta[i] as i128) << SUBPIXEL_BITS);
            wide[3 * i + 2] = w * anchor_area;
        }

        let terms: [FixedTerm; 9] = if second_normalize {
            let narrow: Vec<i64> = wide
                .iter()
                .map(|&t| i64::try_from(t).map_err(|_| Error::Overflow { what: "premultiplied term" }))
                .collect::<Result<_, _>>()?;
            let (v, _discarded) = block_normalize(&narrow, MANTISSA_BITS)?;
            v.try_into().unwrap()
        } else {
            let mut out = [FixedTerm { mantissa: 0, declared_bits: ACCUMULATOR_BITS }; 9];
            for (slot, &t) in out.iter_mut().zip(wide.iter()) {
                if t.unsigned_abs() >= ACC_LIMIT as u128 {
                    return Err(Error::Overflow { what: "premultiplied term" });
                }
                slot.mantissa = t as i64;
            }
            out
        };

        Ok(FixedSetup {
            wprod,
            terms,
            subpixel_bits: SUBPIXEL_BITS,
            anchor: anchor_px,
            orientation: if area2 > 0 { 1 } else { -1 },
            second_normalized: second_normalize,
        })
    }

    /// Per-x-step deltas of the three premultiplied edge functions.
    pub fn x_steps(&self) -> [i64; 3] {
        [self.terms[0].mantissa, self.terms[3].mantissa, self.terms[6].mantissa]
    }

    /// Per-y-step deltas of the three premultiplied edge functions.
    pub fn y_steps(&self) -> [i64; 3] {
        [self.terms[1].mantissa, self.terms[4].mantissa, self.terms[7].mantissa]
    }

    /// Direct integer evaluation of the premultiplied areas at a pixel,
    /// capacity-checked against the 48-bit accumulator budget.
    pub fn areas_at_pixel(&self, px: i64, py: i64) -> Result<[i64; 3], Error> {
        let m = px - self.anchor.0;
        let n = py - self.anchor.1;
        if m.unsigned_abs() > 1 << COORD_BITS || n.unsigned_abs() > 1 << COORD_BITS {
            return Err(Error::Overflow { what: "pixel offset" });
        }
        let mut out = [0i64; 3];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = checked_acc(m.checked_mul(self.terms[3 * i].mantissa), "x-step product")?;
            let b = checked_acc(n.checked_mul(self.terms[3 * i + 1].mantissa), "y-step product")?;
            let s = checked_acc(a.checked_add(b), "area accumulator")?;
            *slot = checked_acc(s.checked_add(self.terms[3 * i + 2].mantissa), "area accumulator")?;
        }
        Ok(out)
    }
}

fn checked_acc(v: Option<i64>, what: &'static str) -> Result<i64, Error> {
    match v {
        Some(v) if v.unsigned_abs() < ACC_LIMIT as u64 => Ok(v),
        _ => Err(Error::Overflow { what }),
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// Corrected barycentrics from the integer path: wide-integer premultiplied
/// areas at the pixel center, one floating reciprocal, three multiplies.
pub fn fixed_corrected_barycentrics(
    fsetup: &FixedSetup,
    px: i64,
    py: i64,
) -> Result<Barycentrics, Error> {
    let areas = fsetup.areas_at_pixel(px, py)?;
    let d = areas[0]
        .checked_add(areas[1])
        .and_then(|s| s.checked_add(areas[2]))
        .ok_or(Error::Overflow { what: "denominator" })?;
    if d == 0 {
        return Err(Error::ZeroDenominator);
    }
    let inv = 1.0 / d as f64;
    Ok(Barycentrics {
        b0: areas[0] as f64 * inv,
        b1: areas[1] as f64 * inv,
        b2: areas[2] as f64 * inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barycentric::{areas_at, screen_barycentrics};
    use crate::triangle::Vertex;

    #[test]
    fn quantize_maps_max_to_full_scale() {
        assert_eq!(quantize_w([1.0, 2.0, 4.0]).unwrap(), [8192, 16384, 32767]);
        assert_eq!(quantize_w([3.5, 3.5, 3.5]).unwrap(), [32767, 32767, 32767]);
        // Tiny depths clamp to 1 instead of quantizing to zero weight.
        assert_eq!(quantize_w([1.0, 1.0, (1u64 << 20) as f64]).unwrap(), [1, 1, 32767]);
        assert!(matches!(
            quantize_w([1.0, 0.0, 2.0]),
            Err(Error::NonPositiveW { index: 1, .. })
        ));
    }

    #[test]
    fn block_normalize_examples() {
        let (m, shift) = block_normalize(&[1 << 29, 1 << 28, 1 << 27], 15).unwrap();
        assert_eq!(shift, 15);
        assert_eq!(
            m.iter().map(|t| t.mantissa).collect::<Vec<_>>(),
            vec![16384, 8192, 4096]
        );
        for t in &m {
            assert_eq!(t.declared_bits, 15);
            assert!(t.mantissa.unsigned_abs() < 1 << 15);
        }

        let (m, shift) = block_normalize(&[20000, -300, 7], 15).unwrap();
        assert_eq!(shift, 0);
        assert_eq!(m.iter().map(|t| t.mantissa).collect::<Vec<_>>(), vec![20000, -300, 7]);

        let (m, shift) = block_normalize(&[1, 0, 0], 15).unwrap();
        assert_eq!(shift, -14);
        assert_eq!(m.iter().map(|t| t.mantissa).collect::<Vec<_>>(), vec![16384, 0, 0]);

        assert_eq!(block_normalize(&[0, 0], 15), Err(Error::AllZero));
    }

    #[test]
    fn block_normalize_handles_rounding_carry() {
        // 65535/2 rounds to 32768 which would overflow 15 bits; the shift
        // grows by one instead.
        let (m, shift) = block_normalize(&[65535], 15).unwrap();
        assert_eq!(shift, 2);
        assert_eq!(m[0].mantissa, 16384);
    }

    #[test]
    fn ties_round_to_even() {
        assert_eq!(shift_right_round_even(3, 1), 2);
        assert_eq!(shift_right_round_even(5, 1), 2);
        assert_eq!(shift_right_round_even(-3, 1), -2);
        assert_eq!(shift_right_round_even(-5, 1), -2);
        assert_eq!(shift_right_round_even(7, 2), 2);
    }

    fn snap_exact_setup(w: [f64; 3]) -> TriangleSetup {
        // Vertices on half-integer pixels are exact at the subpixel scale, so
        // the integer path sees exactly the same geometry as the float path.
        TriangleSetup::new(
            Vertex::at(0.5, 0.5, w[0]),
            Vertex::at(48.5, 0.5, w[1]),
            Vertex::at(0.5, 48.5, w[2]),
        )
        .unwrap()
    }

    #[test]
    fn equal_w_matches_screen_barycentrics() {
        let s = snap_exact_setup([2.0, 2.0, 2.0]);
        let f = FixedSetup::new(&s, false).unwrap();
        for (px, py) in [(5, 9), (16, 16), (1, 40), (30, 2)] {
            let got = fixed_corrected_barycentrics(&f, px, py).unwrap();
            let x = px as f64 + 0.5;
            let y = py as f64 + 0.5;
            let want = screen_barycentrics(&areas_at(&s, x, y)).unwrap();
            let tol = 2f64.powi(-12);
            assert!((got.b0 - want.b0).abs() <= tol);
            assert!((got.b1 - want.b1).abs() <= tol);
            assert!((got.b2 - want.b2).abs() <= tol);
            assert!((got.b0 + got.b1 + got.b2 - 1.0).abs() <= tol);
        }
    }

    #[test]
    fn centroid_weights_for_spread_depths() {
        // Centroid of this triangle is the center of pixel (16, 16); with
        // depths (1, 2, 4) the corrected weights are (4/7, 2/7, 1/7).
        let s = snap_exact_setup([1.0, 2.0, 4.0]);
        let f = FixedSetup::new(&s, false).unwrap();
        let got = fixed_corrected_barycentrics(&f, 16, 16).unwrap();
        let tol = 2f64.powi(-12);
        assert!((got.b0 - 4.0 / 7.0).abs() <= tol);
        assert!((got.b1 - 2.0 / 7.0).abs() <= tol);
        assert!((got.b2 - 1.0 / 7.0).abs() <= tol);
    }

    #[test]
    fn common_w_scale_changes_no_output_bit() {
        let base = snap_exact_setup([1.3, 2.6, 3.9]);
        let f_base = FixedSetup::new(&base, false).unwrap();
        for scale in [0.25, 2.0, 1024.0] {
            let [v0, v1, v2] = base.vertices;
            let scaled = TriangleSetup::new(
                Vertex { w: v0.w * scale, ..v0 },
                Vertex { w: v1.w * scale, ..v1 },
                Vertex { w: v2.w * scale, ..v2 },
            )
            .unwrap();
            let f_scaled = FixedSetup::new(&scaled, false).unwrap();
            for (px, py) in [(4, 4), (16, 16), (2, 33)] {
                let a = fixed_corrected_barycentrics(&f_base, px, py).unwrap();
                let b = fixed_corrected_barycentrics(&f_scaled, px, py).unwrap();
                assert_eq!(a.b0.to_bits(), b.b0.to_bits());
                assert_eq!(a.b1.to_bits(), b.b1.to_bits());
                assert_eq!(a.b2.to_bits(), b.b2.to_bits());
            }
        }
    }

    #[test]
    fn wprod_mantissas_share_one_block() {
        let s = snap_exact_setup([1.0, 3.7, 9.2]);
        let f = FixedSetup::new(&s, false).unwrap();
        // Maximal normalization: the largest mantissa uses the top bit.
        let m_max = f.wprod.iter().map(|t| t.mantissa.unsigned_abs()).max().unwrap();
        assert!((1 << (MANTISSA_BITS - 1)..1 << MANTISSA_BITS).contains(&m_max));
        // One shared shift preserves the cross-product ratios.
        let q = quantize_w(s.ws()).unwrap();
        let raw = [q[1] * q[2], q[2] * q[0], q[0] * q[1]];
        for i in 0..3 {
            for j in 0..3 {
                let got = f.wprod[i].mantissa as f64 / f.wprod[j].mantissa as f64;
                let want = raw[i] as f64 / raw[j] as f64;
                assert!((got - want).abs() <= 1e-3 * want.abs());
            }
        }
    }

    #[test]
    fn second_normalization_squeezes_terms_to_target() {
        let s = snap_exact_setup([1.0, 2.0, 4.0]);
        let f = FixedSetup::new(&s, true).unwrap();
        assert!(f.second_normalized);
        let m_max = f.terms.iter().map(|t| t.mantissa.unsigned_abs()).max().unwrap();
        assert!((1 << (MANTISSA_BITS - 1)..1 << MANTISSA_BITS).contains(&m_max));
        for t in &f.terms {
            assert_eq!(t.declared_bits, MANTISSA_BITS);
        }
        // The weights it produces still sum to one.
        let b = fixed_corrected_barycentrics(&f, 16, 16).unwrap();
        assert!((b.b0 + b.b1 + b.b2 - 1.0).abs() <= 2f64.powi(-12));
    }

    #[test]
    fn pixel_offsets_beyond_budget_are_rejected() {
        let s = snap_exact_setup([1.0, 1.0, 1.0]);
        let f = FixedSetup::new(&s, false).unwrap();
        assert!(matches!(
            f.areas_at_pixel(1 << 15, 0),
            Err(Error::Overflow { .. })
        ));
    }
}
