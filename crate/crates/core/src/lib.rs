//! Software triangle rasterizer built around eye-space-corrected barycentric
//! interpolation.
//!
//! Screen-space edge functions give doubled signed subtriangle areas per pixel;
//! reweighting those areas by products of the opposite vertices' eye-space `w`
//! values yields barycentric coordinates that interpolate linearly in eye space,
//! which makes texture and color interpolation perspective-correct. The per-pixel
//! work reduces to incremental delta updates of three premultiplied edge
//! functions plus one reciprocal and three multiplies.
//!
//! Crate layout:
//!
//! - [`triangle`] — vertex/edge types and the per-triangle setup (edge
//!   coefficients and the nine `w`-premultiplied terms)
//! - [`barycentric`] — per-point area evaluation, screen and corrected
//!   barycentrics, inside/outside classification
//! - [`interp`] — linear, rational-linear, and depth interpolation
//! - [`differential`] — analytic texture-coordinate derivatives and MIP level
//!   selection
//! - [`raster`] — scan conversion with incremental updates, depth buffering,
//!   and arithmetic-operation instrumentation
//! - [`fixedpoint`] — block-normalized integer evaluation path
//! - [`texture`] — MIP pyramid construction and bilinear sampling
//! - [`scene`], [`ppm`], [`render`] — scene parsing, image I/O, and the
//!   framebuffer-level render driver

pub mod barycentric;
pub mod differential;
pub mod error;
pub mod fixedpoint;
pub mod interp;
pub mod ppm;
pub mod raster;
pub mod render;
pub mod scene;
pub mod texture;
pub mod triangle;

pub use barycentric::{
    areas_at, corrected_barycentrics, coverage, premultiplied_areas_at, screen_barycentrics,
    Areas, Barycentrics, Coverage,
};
pub use differential::{
    differentials_at, mip_level, partials_at, total_differentials, Differentials,
};
pub use error::Error;
pub use fixedpoint::{
    block_normalize, fixed_corrected_barycentrics, quantize_w, FixedSetup, FixedTerm,
};
pub use interp::{
    interpolate_depth, interpolate_linear, interpolate_rational, AttributeVector,
};
pub use ppm::{compare_images, read_ppm, write_ppm, CompareReport, Ppm};
pub use raster::{
    count_inner_loop_ops, incremental_equivalence_check, rasterize, rasterize_band, Arith,
    DeviationReport, Fragment, Framebuffer, FramebufferBand, Mode, OpCounter, PixelRect,
    RasterStats,
};
pub use render::{render_scene, render_scene_report, UvDeviation};
pub use scene::{parse_scene, Scene};
pub use texture::{build_pyramid, Image, MipPyramid};
pub use triangle::{edge_coefficients, EdgeCoefficients, TriangleSetup, Vertex};
