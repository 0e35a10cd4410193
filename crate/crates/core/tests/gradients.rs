//! Finite-difference checks of the analytic texture-coordinate derivatives,
//! with depth spreads up to 16:1, plus the same check driven through a color
//! channel.

use baryrast_core::{
    corrected_barycentrics, interpolate_linear, partials_at, premultiplied_areas_at,
    total_differentials, AttributeVector, TriangleSetup, Vertex,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const H: f64 = 1e-3;

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

fn corrected_at(s: &TriangleSetup, attrs: &[AttributeVector; 3], x: f64, y: f64) -> AttributeVector {
    let b = corrected_barycentrics(&premultiplied_areas_at(s, x, y)).unwrap();
    interpolate_linear(&b, attrs)
}

fn assert_close(analytic: f64, numeric: f64, what: &str) {
    let tol = (1e-5 * analytic.abs().max(numeric.abs())).max(1e-8);
    assert!(
        (analytic - numeric).abs() <= tol,
        "{what}: analytic {analytic} vs finite difference {numeric}"
    );
}

#[test]
fn partials_match_central_differences() {
    let mut rng = StdRng::seed_from_u64(0x64AD);
    for _ in 0..1000 {
        let s = random_setup(&mut rng);
        let attrs = [
            AttributeVector::from_vertex(&s.vertices[0]),
            AttributeVector::from_vertex(&s.vertices[1]),
            AttributeVector::from_vertex(&s.vertices[2]),
        ];
        let (x, y) = interior_point(&s, &mut rng);
        let at = corrected_at(&s, &attrs, x, y);
        let p = partials_at(&s, x, y, &at).unwrap();

        let du_dx = (corrected_at(&s, &attrs, x + H, y).u - corrected_at(&s, &attrs, x - H, y).u)
            / (2.0 * H);
        let du_dy = (corrected_at(&s, &attrs, x, y + H).u - corrected_at(&s, &attrs, x, y - H).u)
            / (2.0 * H);
        let dv_dx = (corrected_at(&s, &attrs, x + H, y).v - corrected_at(&s, &attrs, x - H, y).v)
            / (2.0 * H);
        let dv_dy = (corrected_at(&s, &attrs, x, y + H).v - corrected_at(&s, &attrs, x, y - H).v)
            / (2.0 * H);

        assert_close(p.du_dx, du_dx, "du/dx");
        assert_close(p.du_dy, du_dy, "du/dy");
        assert_close(p.dv_dx, dv_dx, "dv/dx");
        assert_close(p.dv_dy, dv_dy, "dv/dy");
    }
}

#[test]
fn color_channel_passes_the_same_gradient_check() {
    // The derivative machinery reads the u and v slots; feeding it the red
    // channel in the u slot checks the color analogy with the same oracle.
    let mut rng = StdRng::seed_from_u64(0x64AE);
    for _ in 0..300 {
        let s = random_setup(&mut rng);
        let attrs: [AttributeVector; 3] = std::array::from_fn(|i| {
            let v = &s.vertices[i];
            AttributeVector::new(v.r, v.g, 0.0, 0.0, 0.0)
        });
        let (x, y) = interior_point(&s, &mut rng);
        let at = corrected_at(&s, &attrs, x, y);
        // partials_at reads vertex u/v, so rebuild the setup with color in
        // those slots.
        let recolored: Vec<Vertex> = s
            .vertices
            .iter()
            .map(|v| Vertex::new(v.x, v.y, v.w, v.r, v.g, 0.0, 0.0, 0.0))
            .collect();
        let rs = TriangleSetup::new(recolored[0], recolored[1], recolored[2]).unwrap();
        let p = partials_at(&rs, x, y, &at).unwrap();
        let dr_dx = (corrected_at(&s, &attrs, x + H, y).u - corrected_at(&s, &attrs, x - H, y).u)
            / (2.0 * H);
        assert_close(p.du_dx, dr_dx, "dr/dx");
    }
}

#[test]
fn totals_agree_between_factored_and_summed_routes() {
    let mut rng = StdRng::seed_from_u64(0x64AF);
    for _ in 0..1000 {
        let s = random_setup(&mut rng);
        let attrs = [
            AttributeVector::from_vertex(&s.vertices[0]),
            AttributeVector::from_vertex(&s.vertices[1]),
            AttributeVector::from_vertex(&s.vertices[2]),
        ];
        let (x, y) = interior_point(&s, &mut rng);
        let spacing = rng.gen_range(0.25..4.0);
        let at = corrected_at(&s, &attrs, x, y);
        let factored = baryrast_core::differentials_at(&s, x, y, &at, spacing).unwrap();
        let summed = total_differentials(&partials_at(&s, x, y, &at).unwrap(), spacing);
        let u_scale = spacing * (summed.du_dx.abs() + summed.du_dy.abs());
        let v_scale = spacing * (summed.dv_dx.abs() + summed.dv_dy.abs());
        assert!((factored.du - summed.du).abs() <= 1e-12 * u_scale.max(1e-12));
        assert!((factored.dv - summed.dv).abs() <= 1e-12 * v_scale.max(1e-12));
    }
}
