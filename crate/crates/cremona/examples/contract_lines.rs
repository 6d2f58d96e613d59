//! Contract three concurrent lines of P^3 to three distinct points with a
//! single quadro-quadric transformation.
//!
//! Run with: cargo run --release -p cremona --example contract_lines

use cremona::chain::FinalClaim;
use cremona::equivalence::{contract_union, SearchOptions};
use cremona::poly::{FormTuple, HomogeneousForm};
use cremona::projective::{ProjectivePoint, Sampler};
use cremona::ratmap::{image_rank, ParamScheme, SchemeComponent};

fn line_through(a: &ProjectivePoint, b: &ProjectivePoint) -> FormTuple {
    FormTuple::new(
        (0..=a.dim())
            .map(|coord| {
                HomogeneousForm::from_terms(
                    2,
                    1,
                    vec![
                        (vec![1, 0], a.coords()[coord].clone()),
                        (vec![0, 1], b.coords()[coord].clone()),
                    ],
                )
                .unwrap()
            })
            .collect(),
    )
    .unwrap()
}

fn main() {
    let apex = ProjectivePoint::from_ints(&[1, 0, 0, 0]).unwrap();
    let dirs = [
        ProjectivePoint::from_ints(&[0, 1, 0, 0]).unwrap(),
        ProjectivePoint::from_ints(&[0, 0, 1, 0]).unwrap(),
        ProjectivePoint::from_ints(&[0, 0, 0, 1]).unwrap(),
    ];
    let z = ParamScheme::new(
        dirs.iter()
            .map(|d| SchemeComponent::new(line_through(&apex, d)))
            .collect(),
    )
    .unwrap();

    let mut sampler = Sampler::new(3);
    let opts = SearchOptions {
        samples: 10,
        ..Default::default()
    };
    let chain = contract_union(&z, &mut sampler, &opts).unwrap();

    println!("chain of {} steps", chain.steps.len());
    let last = chain.steps.last().unwrap();
    for (i, claim) in last.component_claims.iter().enumerate() {
        println!(
            "  component {i}: image rank {}",
            image_rank(&claim.after).unwrap()
        );
    }
    if let FinalClaim::Contraction { points } = &chain.final_claim {
        println!("\ncontracted to {} distinct points:", points.len());
        for p in points {
            println!(
                "  {:?}",
                p.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>()
            );
        }
    }
    chain.verify().unwrap();
    println!("\nindependent chain verification passed");
}
