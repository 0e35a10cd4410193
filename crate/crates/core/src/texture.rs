//! MIP pyramid construction and level-based bilinear sampling.

use crate::error::Error;

/// An RGB texel grid with channels in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    texels: Vec<[f64; 3]>,
}

impl Image {
    pub fn new(width: usize, height: usize, texels: Vec<[f64; 3]>) -> Result<Image, Error> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        assert_eq!(texels.len(), width * height, "texel count must match dimensions");
        Ok(Image { width, height, texels })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> [f64; 3]) -> Result<Image, Error> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        let mut texels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                texels.push(f(x, y));
            }
        }
        Ok(Image { width, height, texels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn texel(&self, x: usize, y: usize) -> [f64; 3] {
        self.texels[y * self.width + x]
    }

    pub fn mean(&self) -> [f64; 3] {
        let mut acc = [0.0; 3];
        for t in &self.texels {
            for c in 0..3 {
                acc[c] += t[c];
            }
        }
        let n = self.texels.len() as f64;
        [acc[0] / n, acc[1] / n, acc[2] / n]
    }
}

/// Box-filtered image pyramid: level 0 at full resolution, each level half the
/// previous width and height (floor, minimum 1), down to 1x1.
#[derive(Debug, Clone)]
pub struct MipPyramid {
    levels: Vec<Image>,
}

/// Builds the pyramid. Even dimensions halve by plain 2x2 box means; odd
/// dimensions use area-weighted averaging so every level preserves the image
/// mean.
pub fn build_pyramid(image: Image) -> Result<MipPyramid, Error> {
    let mut levels = vec![image];
    while levels.last().unwrap().width() > 1 || levels.last().unwrap().height() > 1 {
        let next = downsample(levels.last().unwrap());
        levels.push(next);
    }
    Ok(MipPyramid { levels })
}

fn downsample(src: &Image) -> Image {
    let dw = (src.width / 2).max(1);
    let dh = (src.height / 2).max(1);
    let rx = src.width as f64 / dw as f64;
    let ry = src.height as f64 / dh as f64;
    Image::from_fn(dw, dh, |dx, dy| {
        let x_span = (dx as f64 * rx, (dx + 1) as f64 * rx);
        let y_span = (dy as f64 * ry, (dy + 1) as f64 * ry);
        let mut acc = [0.0; 3];
        let mut weight = 0.0;
        let x0 = x_span.0.floor() as usize;
        let x1 = (x_span.1.ceil() as usize).min(src.width);
        let y0 = y_span.0.floor() as usize;
        let y1 = (y_span.1.ceil() as usize).min(src.height);
        for sy in y0..y1 {
            let wy = overlap(sy, y_span);
            for sx in x0..x1 {
                let wxy = overlap(sx, x_span) * wy;
                let t = src.texel(sx, sy);
                for c in 0..3 {
                    acc[c] += wxy * t[c];
                }
                weight += wxy;
            }
        }
        [acc[0] / weight, acc[1] / weight, acc[2] / weight]
    })
    .expect("downsampled dimensions are at least 1x1")
}

fn overlap(cell: usize, span: (f64, f64)) -> f64 {
    let lo = (cell as f64).max(span.0);
    let hi = ((cell + 1) as f64).min(span.1);
    (hi - lo).max(0.0)
}

impl MipPyramid {
    pub fn levels(&self) -> &[Image] {
        &self.levels
    }

    pub fn level(&self, index: usize) -> &Image {
        &self.levels[index]
    }

    /// Dimensions of the full-resolution level.
    pub fn base_dimensions(&self) -> (usize, usize) {
        (self.levels[0].width(), self.levels[0].height())
    }

    /// Bilinear sample at the truncated level. `u`, `v` outside [0, 1] clamp,
    /// texel addressing clamps to the edge, and a fractional `level` truncates
    /// toward the finer level.
    pub fn sample(&self, u: f64, v: f64, level: f64) -> [f64; 3] {
        let li = (level.max(0.0) as usize).min(self.levels.len() - 1);
        let img = &self.levels[li];
        let (w, h) = (img.width(), img.height());
        let tx = u.clamp(0.0, 1.0) * w as f64 - 0.5;
        let ty = v.clamp(0.0, 1.0) * h as f64 - 0.5;
        let x0 = tx.floor();
        let y0 = ty.floor();
        let fx = tx - x0;
        let fy = ty - y0;
        let clamp_x = |x: f64| (x.max(0.0) as usize).min(w - 1);
        let clamp_y = |y: f64| (y.max(0.0) as usize).min(h - 1);
        let t00 = img.texel(clamp_x(x0), clamp_y(y0));
        let t10 = img.texel(clamp_x(x0 + 1.0), clamp_y(y0));
        let t01 = img.texel(clamp_x(x0), clamp_y(y0 + 1.0));
        let t11 = img.texel(clamp_x(x0 + 1.0), clamp_y(y0 + 1.0));
        let mut out = [0.0; 3];
        for c in 0..3 {
            let top = t00[c] + fx * (t10[c] - t00[c]);
            let bottom = t01[c] + fx * (t11[c] - t01[c]);
            out[c] = top + fy * (bottom - top);
        }
        out
    }
}
