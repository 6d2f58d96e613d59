//! Exact linear systems of monoids containing the twisted cubic: dimension
//! table and a seeded member avoiding the cone over the curve.
//!
//! Run with: cargo run --release -p cremona --example monoid_systems

use cremona::interpolation::{
    cone_parametrization, monoid_system, nonzero_on_component, pick_cone_avoiding,
    system_dimension, twisted_cubic,
};
use cremona::projective::{ProjectivePoint, Sampler};
use cremona::ratmap::ParamScheme;

fn main() {
    let z = ParamScheme::new(vec![twisted_cubic()]).unwrap();
    let vertex = ProjectivePoint::from_ints(&[0, 1, 0, 0]).unwrap();

    println!("monoids with vertex [0,1,0,0] containing the twisted cubic:");
    for d in 2..=5 {
        let sys = monoid_system(&z, &vertex, d).unwrap();
        println!("  degree {d}: projective dimension {}", system_dimension(&sys));
    }

    let sys = monoid_system(&z, &vertex, 3).unwrap();
    let mut sampler = Sampler::new(17);
    let member = pick_cone_avoiding(&sys, &z, &mut sampler).unwrap();
    println!("\nseeded cubic monoid member:\n  {member}");

    // the member contains the curve but not the cone over it
    let cone = cone_parametrization(&vertex, &z.components[0]);
    let mut check = Sampler::new(18);
    assert!(nonzero_on_component(&member, &cone, &mut check));
    println!("member avoids the cone over the curve from the vertex");
}
