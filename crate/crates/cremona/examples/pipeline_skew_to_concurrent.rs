//! Cremona equivalence between two skew lines and two concurrent lines in
//! P^3: the reducible flagship of the double-projection pipeline.
//!
//! Run with: cargo run --release -p cremona --example pipeline_skew_to_concurrent

use cremona::equivalence::{pipeline_equivalence, SearchOptions};
use cremona::poly::{FormTuple, HomogeneousForm};
use cremona::projective::Sampler;
use cremona::ratmap::{ParamScheme, SchemeComponent};

fn main() {
    let u = HomogeneousForm::variable(2, 0);
    let v = HomogeneousForm::variable(2, 1);
    let zero = || HomogeneousForm::zero(2, 1);

    // skew: {x2 = x3 = 0} and {x0 = x1 = 0}
    let l1 = FormTuple::new(vec![u.clone(), v.clone(), zero(), zero()]).unwrap();
    let l2 = FormTuple::new(vec![zero(), zero(), u.clone(), v.clone()]).unwrap();
    // concurrent: both through [1,0,0,0]
    let m1 = FormTuple::new(vec![u.clone(), v.clone(), v.clone(), zero()]).unwrap();
    let m2 = FormTuple::new(vec![u.clone(), zero(), v.clone(), v.clone()]).unwrap();

    let x = ParamScheme::new(vec![
        SchemeComponent::new(l1),
        SchemeComponent::new(l2),
    ])
    .unwrap();
    let y = ParamScheme::new(vec![
        SchemeComponent::new(m1),
        SchemeComponent::new(m2),
    ])
    .unwrap();

    let mut sampler = Sampler::new(777);
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

    chain.verify().unwrap();
    println!("\nboth components verified on exact samples; chain re-verified");
}
