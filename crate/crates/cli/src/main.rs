//! Rendering and comparison CLI.
//!
//! Subcommands: `render` rasterizes a scene file to a PPM image, `compare`
//! prints channel-difference metrics between two PPM files, `selftest` runs
//! the identity and gradient property suites. Exit codes: 0 success, 1
//! runtime failure, 2 usage error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use baryrast_core as core;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "baryrast", version, about = "Perspective-correct software triangle rasterizer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render a scene file to a PPM image.
    Render {
        /// Scene file path.
        #[arg(long)]
        scene: PathBuf,
        /// Interpolation mode.
        #[arg(long, value_enum, default_value_t = ModeArg::Correct)]
        mode: ModeArg,
        /// Arithmetic path for the barycentric inner loop.
        #[arg(long, value_enum, default_value_t = ArithArg::Float)]
        arith: ArithArg,
        /// Pixel spacing override for the texture differentials.
        #[arg(long, value_parser = parse_positive)]
        spacing: Option<f64>,
        /// Texture override (PPM); replaces the scene's texture directive.
        #[arg(long)]
        texture: Option<PathBuf>,
        /// Output PPM path; omit to render without writing an image.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also report the maximum (u, v) deviation from the rational-linear
        /// evaluation at every shaded pixel.
        #[arg(long)]
        report: bool,
    },
    /// Print difference metrics between two PPM images.
    Compare { a: PathBuf, b: PathBuf },
    /// Run the interpolation-identity and gradient property suites.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Naive,
    Correct,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArithArg {
    Float,
    Fixed,
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("value must be positive, got {v}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Render { scene, mode, arith, spacing, texture, out, report } => {
            run_render(&scene, mode, arith, spacing, texture.as_deref(), out.as_deref(), report)
        }
        Command::Compare { a, b } => run_compare(&a, &b),
        Command::Selftest => selftest::run(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_render(
    scene_path: &Path,
    mode: ModeArg,
    arith: ArithArg,
    spacing: Option<f64>,
    texture_override: Option<&Path>,
    out: Option<&Path>,
    report: bool,
) -> Result<(), String> {
    let text = std::fs::read_to_string(scene_path)
        .map_err(|e| format!("cannot read {}: {e}", scene_path.display()))?;
    let mut scene = core::parse_scene(&text).map_err(|e| e.to_string())?;
    if let Some(s) = spacing {
        scene.spacing = s;
    }

    let pyramid = match (texture_override, scene.texture.as_deref()) {
        (Some(path), _) => Some(load_pyramid(path)?),
        (None, Some(rel)) => {
            // Paths in the scene file resolve relative to the scene file.
            let base = scene_path.parent().unwrap_or(Path::new("."));
            Some(load_pyramid(&base.join(rel))?)
        }
        (None, None) => None,
    };

    let mode = match mode {
        ModeArg::Naive => core::Mode::Naive,
        ModeArg::Correct => core::Mode::Correct,
    };
    let arith = match arith {
        ArithArg::Float => core::Arith::Float,
        ArithArg::Fixed => core::Arith::Fixed,
    };

    let mut summary = String::new();
    let fb = if report {
        let (fb, stats, dev) = core::render_scene_report(&scene, pyramid.as_ref(), mode, arith)
            .map_err(|e| e.to_string())?;
        write_stats(&mut summary, &stats);
        let _ = writeln!(summary, "report_max_du={:e}", dev.max_du);
        let _ = writeln!(summary, "report_max_dv={:e}", dev.max_dv);
        fb
    } else {
        let (fb, stats) = core::render_scene(&scene, pyramid.as_ref(), mode, arith)
            .map_err(|e| e.to_string())?;
        write_stats(&mut summary, &stats);
        fb
    };
    print!("{summary}");

    if let Some(path) = out {
        std::fs::write(path, core::write_ppm(&fb))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(())
}

fn write_stats(out: &mut String, stats: &core::RasterStats) {
    let _ = writeln!(out, "shaded_pixels={}", stats.shaded_pixels);
    let _ = writeln!(out, "row_anchor_pixels={}", stats.row_anchor_pixels);
    let _ = writeln!(out, "delta_bary_pixels={}", stats.delta_bary_pixels);
    let _ = writeln!(
        out,
        "per_delta_pixel_ops=additions:{},reciprocals:{},multiplications:{}",
        stats.per_delta_pixel.additions,
        stats.per_delta_pixel.reciprocals,
        stats.per_delta_pixel.multiplications
    );
    let _ = writeln!(out, "delta_uniform={}", stats.delta_uniform);
    let _ = writeln!(
        out,
        "total_ops=additions:{},reciprocals:{},multiplications:{}",
        stats.total.additions, stats.total.reciprocals, stats.total.multiplications
    );
}

fn load_pyramid(path: &Path) -> Result<core::MipPyramid, String> {
    let bytes =
        std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let ppm = core::read_ppm(&bytes).map_err(|e| e.to_string())?;
    let image = ppm.to_image().map_err(|e| e.to_string())?;
    core::build_pyramid(image).map_err(|e| e.to_string())
}

fn run_compare(a: &Path, b: &Path) -> Result<(), String> {
    let read = |p: &Path| -> Result<core::Ppm, String> {
        let bytes = std::fs::read(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
        core::read_ppm(&bytes).map_err(|e| e.to_string())
    };
    let report = core::compare_images(&read(a)?, &read(b)?).map_err(|e| e.to_string())?;
    println!("max={}", report.max_abs);
    println!("mean={}", report.mean_abs);
    println!("count={}", report.differing_pixels);
    Ok(())
}

mod selftest {
    use baryrast_core as core;
    use core::{
        areas_at, corrected_barycentrics, differentials_at, interpolate_linear,
        interpolate_rational, premultiplied_areas_at, screen_barycentrics, AttributeVector,
        TriangleSetup, Vertex,
    };
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    pub fn run() -> Result<(), String> {
        let mut failed = false;
        for (name, ok) in [
            ("identity_rational_vs_corrected", identity_suite()),
            ("partition_of_unity", partition_suite()),
            ("gradient_finite_difference", gradient_suite()),
        ] {
            println!("{name}: {}", if ok { "pass" } else { "fail" });
            failed |= !ok;
        }
        if failed {
            Err("selftest failed".into())
        } else {
            Ok(())
        }
    }

    fn random_setup(rng: &mut StdRng) -> TriangleSetup {
        loop {
            let mut v = || {
                Vertex::new(
                    rng.gen_range(2.0..250.0),
                    rng.gen_range(2.0..250.0),
                    rng.gen_range(1.0..16.0),
                    rng.gen(),
                    rng.gen(),
                    rng.gen(),
                    rng.gen(),
                    rng.gen(),
                )
            };
            if let Ok(s) = TriangleSetup::new(v(), v(), v()) {
                if s.total_area2().abs() > 100.0 {
                    return s;
                }
            }
        }
    }

    fn interior_point(s: &TriangleSetup, rng: &mut StdRng) -> (f64, f64) {
        let raw = [
            rng.gen_range(0.05..1.0),
            rng.gen_range(0.05..1.0),
            rng.gen_range(0.05..1.0),
        ];
        let sum: f64 = raw.iter().sum();
        (
            raw.iter().zip(&s.vertices).map(|(t, v)| t / sum * v.x).sum(),
            raw.iter().zip(&s.vertices).map(|(t, v)| t / sum * v.y).sum(),
        )
    }

    fn attrs_of(s: &TriangleSetup) -> [AttributeVector; 3] {
        [
            AttributeVector::from_vertex(&s.vertices[0]),
            AttributeVector::from_vertex(&s.vertices[1]),
            AttributeVector::from_vertex(&s.vertices[2]),
        ]
    }

    fn identity_suite() -> bool {
        let mut rng = StdRng::seed_from_u64(0x1D_5E1F);
        for _ in 0..100_000 {
            let s = random_setup(&mut rng);
            let (x, y) = interior_point(&s, &mut rng);
            let attrs = attrs_of(&s);
            let Ok(sb) = screen_barycentrics(&areas_at(&s, x, y)) else { return false };
            let Ok(rational) = interpolate_rational(&sb, s.ws(), &attrs) else { return false };
            let Ok(cb) = corrected_barycentrics(&premultiplied_areas_at(&s, x, y)) else {
                return false;
            };
            let corrected = interpolate_linear(&cb, &attrs);
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
            if !(close(rational.u, corrected.u) && close(rational.v, corrected.v)) {
                return false;
            }
        }
        true
    }

    fn partition_suite() -> bool {
        let mut rng = StdRng::seed_from_u64(0x2D_5E1F);
        for _ in 0..100_000 {
            let s = random_setup(&mut rng);
            let (x, y) = interior_point(&s, &mut rng);
            let Ok(sb) = screen_barycentrics(&areas_at(&s, x, y)) else { return false };
            let Ok(cb) = corrected_barycentrics(&premultiplied_areas_at(&s, x, y)) else {
                return false;
            };
            if (sb.b0 + sb.b1 + sb.b2 - 1.0).abs() > 1e-12 {
                return false;
            }
            if (cb.b0 + cb.b1 + cb.b2 - 1.0).abs() > 1e-12 {
                return false;
            }
        }
        true
    }

    fn gradient_suite() -> bool {
        let mut rng = StdRng::seed_from_u64(0x3D_5E1F);
        let h = 1e-3;
        for _ in 0..1000 {
            let s = random_setup(&mut rng);
            let (x, y) = interior_point(&s, &mut rng);
            let attrs = attrs_of(&s);
            let value_at = |px: f64, py: f64| {
                let b = corrected_barycentrics(&premultiplied_areas_at(&s, px, py)).unwrap();
                interpolate_linear(&b, &attrs)
            };
            let at = value_at(x, y);
            let Ok(d) = differentials_at(&s, x, y, &at, 1.0) else { return false };
            let fd = [
                (value_at(x + h, y).u - value_at(x - h, y).u) / (2.0 * h),
                (value_at(x, y + h).u - value_at(x, y - h).u) / (2.0 * h),
                (value_at(x + h, y).v - value_at(x - h, y).v) / (2.0 * h),
                (value_at(x, y + h).v - value_at(x, y - h).v) / (2.0 * h),
            ];
            for (ana, num) in [d.du_dx, d.du_dy, d.dv_dx, d.dv_dy].into_iter().zip(fd) {
                let tol = (1e-5 * ana.abs().max(num.abs())).max(1e-8);
                if (ana - num).abs() > tol {
                    return false;
                }
            }
        }
        true
    }
}
