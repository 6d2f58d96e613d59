//! Map a monoid hypersurface onto a hyperplane with one de Jonquières
//! transformation built from a companion monoid of one degree less.
//!
//! Run with: cargo run --release -p cremona --example linearize_monoid

use cremona::monoid::{monoid_linearize, Monoid};
use cremona::poly::HomogeneousForm;
use cremona::projective::ProjectivePoint;

fn main() {
    let x = |i| HomogeneousForm::variable(3, i);
    let vertex = ProjectivePoint::from_ints(&[1, 0, 0]).unwrap();

    // X: the conic x0 x1 - x2^2; Y: the hyperplane x0 (degree 1, same vertex)
    let eq_x = x(0).mul(&x(1)).unwrap().sub(&x(2).pow(2)).unwrap();
    let mx = Monoid::from_equation(&eq_x, &vertex).unwrap();
    let my = Monoid::from_equation(&x(0), &vertex).unwrap();

    let dj = monoid_linearize(&mx, &my).unwrap();
    let forward = dj.forward();
    println!(
        "linearizing map: {:?}",
        forward.tuple().forms().iter().map(|f| f.to_string()).collect::<Vec<_>>()
    );

    // the image of X lies in the hyperplane (y0 = 0): pulling the first
    // output coordinate back through the stereographic inverse of X gives
    // the zero polynomial
    let (_, inv) = mx.stereographic();
    let pulled = forward.tuple().forms()[0].substitute(inv.tuple()).unwrap();
    assert!(pulled.is_zero());
    println!("first coordinate pulls back to 0 on X: the image is the hyperplane");

    let cert = dj.certificate().unwrap();
    println!("inverse certified, deg Phi = {}", cert.phi.degree());
}
