//! Scene builders shared by the benchmark targets.

use baryrast_core::{Scene, Vertex};

/// A perspective quad (two triangles, 4:1 depth contrast) filling most of a
/// square framebuffer of the given size.
pub fn perspective_quad_scene(size: usize) -> Scene {
    let s = size as f64;
    let near_y = s * 0.125;
    let far_y = s * 0.875;
    let v = |x: f64, y: f64, w: f64, u: f64, vv: f64| Vertex::new(x, y, w, u, vv, u, vv, 0.5);
    let p00 = v(s * 0.125, near_y, 1.0, 0.0, 0.0);
    let p10 = v(s * 0.875, near_y, 1.0, 1.0, 0.0);
    let p11 = v(s * 0.3125, far_y, 4.0, 1.0, 1.0);
    let p01 = v(s * 0.125, far_y, 4.0, 0.0, 1.0);
    Scene {
        width: size,
        height: size,
        spacing: 1.0,
        texture: None,
        triangles: vec![[p00, p10, p11], [p00, p11, p01]],
    }
}
