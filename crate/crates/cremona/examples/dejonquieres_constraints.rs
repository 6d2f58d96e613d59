//! Solve for a de Jonquières transformation with prescribed behavior: move
//! one point to another along a line through the center while fixing a
//! list of other points, then certify the closed-form inverse.
//!
//! Run with: cargo run --release -p cremona --example dejonquieres_constraints

use cremona::dejonquieres::dj_solve_escalating;
use cremona::projective::{ProjectivePoint, Sampler};

fn pt(coords: &[i64]) -> ProjectivePoint {
    ProjectivePoint::from_ints(coords).unwrap()
}

fn main() {
    let vertex = pt(&[1, 0, 0]);
    let moves = vec![(pt(&[0, 1, 1]), pt(&[2, 1, 1]))];
    let fixed = vec![pt(&[1, 1, 2]), pt(&[3, 2, 1])];

    let mut sampler = Sampler::new(7);
    let dj = dj_solve_escalating(&vertex, &moves, &fixed, 2, 10, &mut sampler).unwrap();

    println!("degree {} map centered at {:?}", dj.degree(), vertex.coords());
    println!("  F0 = {}", dj.f0());
    println!("  G0 = {}", dj.g0());
    println!("  F  = {}", dj.f());
    println!("  G  = {}", dj.g());
    println!("  determinant F0*G - F*G0 = {}", dj.determinant());

    let show = |p: &ProjectivePoint| {
        p.coords()
            .iter()
            .map(cremona::scalar::format_rat)
            .collect::<Vec<_>>()
            .join(":")
    };
    let forward = dj.forward();
    for (from, to) in &moves {
        let image = forward.apply(from).unwrap();
        println!("\nmoves [{}] -> [{}]", show(from), show(&image));
        assert_eq!(&image, to);
    }
    for f in &fixed {
        assert_eq!(&forward.apply(f).unwrap(), f);
        println!("fixes [{}]", show(f));
    }

    let cert = dj.certificate().unwrap();
    println!(
        "\ninverse certified: deg Phi = {} = {}^2 - 1",
        cert.phi.degree(),
        dj.degree()
    );
}
