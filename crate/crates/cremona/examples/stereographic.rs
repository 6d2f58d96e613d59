//! Stereographic projection of a monoid hypersurface from its vertex and
//! the explicit inverse tuple; checks the defining polynomial identities.
//!
//! Run with: cargo run --release -p cremona --example stereographic

use cremona::monoid::Monoid;
use cremona::poly::HomogeneousForm;
use cremona::projective::ProjectivePoint;
use cremona::ratmap::{map_compose, maps_projectively_equal, RationalMap};

fn main() {
    // the quadric cone-free monoid x0 x1 - x2^2 with vertex [1,0,0]
    let x = |i| HomogeneousForm::variable(3, i);
    let eq = x(0).mul(&x(1)).unwrap().sub(&x(2).pow(2)).unwrap();
    let vertex = ProjectivePoint::from_ints(&[1, 0, 0]).unwrap();

    let m = Monoid::from_equation(&eq, &vertex).unwrap();
    println!("monoid of degree {}: F_low = {}, F_high = {}", m.degree(), m.f_low(), m.f_high());

    let (proj, inv) = m.stereographic();
    println!("projection: {:?}", proj.tuple().forms().iter().map(|f| f.to_string()).collect::<Vec<_>>());
    println!("inverse:    {:?}", inv.tuple().forms().iter().map(|f| f.to_string()).collect::<Vec<_>>());

    // the inverse lands on the monoid: eq(inv) is the zero polynomial
    let pulled = eq.substitute(inv.tuple()).unwrap();
    assert!(pulled.is_zero());
    println!("\nequation . inverse = 0 identically");

    // proj . inv is the identity of the hyperplane
    let comp = map_compose(&proj, &inv).unwrap();
    assert!(maps_projectively_equal(&comp, &RationalMap::identity(1)).unwrap());
    println!("projection . inverse = identity (projectively)");
    println!("degree of the inverse tuple = {}", inv.degree());
}
