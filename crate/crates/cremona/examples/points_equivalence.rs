//! Carry five labelled points of the plane onto five other points with a
//! chain of de Jonquières maps, then re-verify the emitted chain.
//!
//! Run with: cargo run --release -p cremona --example points_equivalence

use cremona::equivalence::{points_equivalence, SearchOptions};
use cremona::projective::{ProjectivePoint, Sampler};

fn pt(coords: &[i64]) -> ProjectivePoint {
    ProjectivePoint::from_ints(coords).unwrap()
}

fn main() {
    let z = vec![
        pt(&[1, 0, 0]),
        pt(&[0, 1, 0]),
        pt(&[0, 0, 1]),
        pt(&[1, 1, 1]),
        pt(&[1, 2, 3]),
    ];
    let z_prime = vec![
        pt(&[1, 1, 2]),
        pt(&[2, 1, 1]),
        pt(&[1, 3, 1]),
        pt(&[5, 1, 4]),
        pt(&[1, 7, 2]),
    ];

    let mut sampler = Sampler::new(42);
    let chain = points_equivalence(&z, &z_prime, &mut sampler, &SearchOptions::default()).unwrap();

    println!("chain of {} steps:", chain.steps.len());
    for (i, step) in chain.steps.iter().enumerate() {
        println!(
            "  step {i}: {} of degree {}, deg Phi = {}",
            step.kind.tag(),
            step.forward.degree(),
            step.certificate.phi.degree()
        );
    }

    for (a, b) in z.iter().zip(z_prime.iter()) {
        let image = chain.apply(a).unwrap();
        assert_eq!(&image, b);
        let back = chain.apply_inverse(b).unwrap();
        assert_eq!(&back, a);
    }
    println!("\nevery point maps to its target exactly and round-trips back");

    chain.verify().unwrap();
    println!("independent chain verification passed");
}
