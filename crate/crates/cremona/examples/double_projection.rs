//! Double projection of a bi-vertex monoid: the Cremona map of P^2 cut out
//! by projecting the quadric x0 x1 + x2 x3 from its two vertices.
//!
//! Run with: cargo run --release -p cremona --example double_projection

use cremona::monoid::BiVertexMonoid;
use cremona::poly::HomogeneousForm;
use cremona::projective::ProjectivePoint;

fn main() {
    let x = |i| HomogeneousForm::variable(4, i);
    let eq = x(0)
        .mul(&x(1))
        .unwrap()
        .add(&x(2).mul(&x(3)).unwrap())
        .unwrap();
    let p1 = ProjectivePoint::from_ints(&[0, 0, 0, 1]).unwrap();
    let p2 = ProjectivePoint::from_ints(&[0, 0, 1, 0]).unwrap();

    let w = BiVertexMonoid::from_equation(&eq, &p1, &p2).unwrap();
    let (f_d, g_dm1, f_dm1, f_dm2) = w.parts();
    println!("bi-vertex normal form of degree {}:", w.degree());
    println!("  F_d   = {f_d}");
    println!("  G_d-1 = {g_dm1}");
    println!("  F_d-1 = {f_dm1}");
    println!("  F_d-2 = {f_dm2}");

    let dj = w.double_projection().unwrap();
    let forward = dj.forward();
    println!(
        "\ndouble projection on P^2: {:?}",
        forward.tuple().forms().iter().map(|f| f.to_string()).collect::<Vec<_>>()
    );

    let cert = dj.certificate().unwrap();
    println!(
        "de Jonquières of degree {}, inverse certified with deg Phi = {}",
        dj.degree(),
        cert.phi.degree()
    );
}
