//! Cremona equivalence between the twisted cubic and a line in P^3 through
//! the double-projection pipeline, with per-step certificates and exact
//! sample verification.
//!
//! Run with: cargo run --release -p cremona --example pipeline_cubic_to_line

use cremona::equivalence::{pipeline_equivalence, SearchOptions};
use cremona::poly::{FormTuple, HomogeneousForm};
use cremona::projective::Sampler;
use cremona::ratmap::{ParamScheme, SchemeComponent};
use cremona::scalar::rat_int;

fn main() {
    let u = HomogeneousForm::variable(2, 0);
    let v = HomogeneousForm::variable(2, 1);
    let cubic = FormTuple::new(vec![
        u.pow(3),
        u.pow(2).mul(&v).unwrap(),
        u.mul(&v.pow(2)).unwrap(),
        v.pow(3),
    ])
    .unwrap();
    let line = FormTuple::new(vec![
        u.clone(),
        v.clone(),
        HomogeneousForm::zero(2, 1),
        HomogeneousForm::zero(2, 1),
    ])
    .unwrap();
    let x = ParamScheme::new(vec![SchemeComponent::new(cubic.clone())]).unwrap();
    let y = ParamScheme::new(vec![SchemeComponent::new(line)]).unwrap();

    let mut sampler = Sampler::new(2026);
    let opts = SearchOptions {
        samples: 10,
        ..Default::default()
    };
    let chain = pipeline_equivalence(&x, &y, &mut sampler, &opts).unwrap();

    println!("chain of {} steps:", chain.steps.len());
    for (i, step) in chain.steps.iter().enumerate() {
        println!(
            "  step {i}: {} of degree {}, deg Phi = {}",
            step.kind.tag(),
            step.forward.degree(),
            step.certificate.phi.degree()
        );
    }

    // walk one cubic point through the whole chain
    let params = vec![rat_int(2), rat_int(1)];
    let start = SchemeComponent::new(cubic).eval(&params).unwrap();
    let image = chain.apply(&start).unwrap();
    println!(
        "\n[2:1] on the cubic: {:?} maps to {:?}",
        start.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        image.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>()
    );

    chain.verify().unwrap();
    println!("independent chain verification passed");
}
