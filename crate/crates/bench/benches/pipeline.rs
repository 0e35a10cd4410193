use std::hint::black_box;

use baryrast_bench::perspective_quad_scene;
use baryrast_core::{
    build_pyramid, count_inner_loop_ops, premultiplied_areas_at, render_scene, Arith, Image, Mode,
    TriangleSetup, Vertex,
};
use criterion::{criterion_group, criterion_main, Criterion};

fn demo_setup() -> TriangleSetup {
    TriangleSetup::new(
        Vertex::new(10.0, 12.0, 1.0, 0.0, 0.0, 0.9, 0.1, 0.2),
        Vertex::new(220.0, 40.0, 2.5, 1.0, 0.0, 0.1, 0.8, 0.3),
        Vertex::new(60.0, 200.0, 4.0, 0.0, 1.0, 0.2, 0.3, 0.9),
    )
    .unwrap()
}

fn bench_setup(c: &mut Criterion) {
    let v0 = Vertex::new(10.0, 12.0, 1.0, 0.0, 0.0, 0.9, 0.1, 0.2);
    let v1 = Vertex::new(220.0, 40.0, 2.5, 1.0, 0.0, 0.1, 0.8, 0.3);
    let v2 = Vertex::new(60.0, 200.0, 4.0, 0.0, 1.0, 0.2, 0.3, 0.9);
    c.bench_function("triangle_setup", |b| {
        b.iter(|| TriangleSetup::new(black_box(v0), black_box(v1), black_box(v2)).unwrap())
    });
}

fn bench_inner_loop(c: &mut Criterion) {
    let setup = demo_setup();
    c.bench_function("delta_step_barycentrics", |b| {
        b.iter(|| count_inner_loop_ops(black_box(&setup), black_box(80), black_box(90)))
    });
    c.bench_function("direct_area_evaluation", |b| {
        b.iter(|| premultiplied_areas_at(black_box(&setup), black_box(80.5), black_box(90.5)))
    });
}

fn bench_render(c: &mut Criterion) {
    let scene = perspective_quad_scene(256);
    c.bench_function("render_256_correct_float", |b| {
        b.iter(|| render_scene(black_box(&scene), None, Mode::Correct, Arith::Float).unwrap())
    });
    c.bench_function("render_256_naive_float", |b| {
        b.iter(|| render_scene(black_box(&scene), None, Mode::Naive, Arith::Float).unwrap())
    });
    c.bench_function("render_256_correct_fixed", |b| {
        b.iter(|| render_scene(black_box(&scene), None, Mode::Correct, Arith::Fixed).unwrap())
    });
}

fn bench_pyramid(c: &mut Criterion) {
    let image = Image::from_fn(256, 256, |x, y| {
        let v = (((x ^ y) & 15) as f64) / 15.0;
        [v, 1.0 - v, 0.5]
    })
    .unwrap();
    c.bench_function("build_pyramid_256", |b| {
        b.iter(|| build_pyramid(black_box(image.clone())).unwrap())
    });
}

criterion_group!(benches, bench_setup, bench_inner_loop, bench_render, bench_pyramid);
criterion_main!(benches);
