//! Build the quadro-quadric Cremona transformation of P^3 with base locus
//! a point plus a conic, inspect the linear system of quadrics through the
//! base locus, and certify the inverse.
//!
//! Run with: cargo run --release -p cremona --example quadro_quadric

use cremona::dejonquieres::quadro_quadric;
use cremona::poly::HomogeneousForm;
use cremona::projective::{span, ProjectivePoint};
use cremona::ratmap::verify_inverse_pair;

fn main() {
    let p = ProjectivePoint::from_ints(&[1, 0, 0, 0]).unwrap();
    let h = span(&[
        ProjectivePoint::from_ints(&[0, 1, 0, 0]).unwrap(),
        ProjectivePoint::from_ints(&[0, 0, 1, 0]).unwrap(),
        ProjectivePoint::from_ints(&[0, 0, 0, 1]).unwrap(),
    ])
    .unwrap();
    // the conic x1 x2 - x3^2 in the hyperplane's own coordinates
    let x = |i| HomogeneousForm::variable(3, i);
    let q = x(0).mul(&x(1)).unwrap().sub(&x(2).pow(2)).unwrap();

    let qq = quadro_quadric(&p, &h, &q).unwrap();
    println!("quadrics through the base locus:");
    for f in &qq.system_basis {
        println!("  {f}");
    }
    let forward = qq.map.forward();
    println!("\nmap: {:?}", forward.tuple().forms().iter().map(|f| f.to_string()).collect::<Vec<_>>());

    let inverse = qq.map.inverse().forward();
    let cert = verify_inverse_pair(&forward, &inverse).unwrap();
    println!("\nfundamental polynomial: {}", cert.phi);
    println!(
        "degree law: deg Phi = {} = {}*{} - 1",
        cert.phi.degree(),
        cert.delta,
        cert.delta_prime
    );
}
