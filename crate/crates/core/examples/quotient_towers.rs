// Riemann–Hurwitz on toric pairs: a quotient with a quasi-reflection, the
// quotient law for one valuation, and a two-step tower.

use std::error::Error;

use toric_mld::arith::{format_vec, qvec, rat};
use toric_mld::cones::Cone;
use toric_mld::lattice::Lattice;
use toric_mld::pairs::ToricPair;
use toric_mld::quotients::{log_quotient, quotient_ld_check, quotient_tower, TorusSubgroup};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let plane = ToricPair::without_boundary(Cone::orthant(2));

    let f = TorusSubgroup::cyclic(2, &[1, 0])?;
    let q = log_quotient(&plane, &f)?;
    let rays: Vec<String> = q.cone().rays().iter().map(|v| format_vec(v)).collect();
    println!("A^2 / 1/2(1,0): rays {}, boundary {}", rays.join(" "), format_vec(q.boundary()));
    println!("  mld {}", q.mld()?.value);

    let f = TorusSubgroup::cyclic(5, &[1, 2])?;
    let check = quotient_ld_check(&plane, &f, &qvec(&[1, 2]))?;
    println!("E_(1,2): upstairs {} downstairs {} r {}", check.upstairs, check.downstairs, check.ramification);

    let chain = vec![
        Lattice::standard(2),
        Lattice::cyclic_overlattice(2, &[1, 1])?,
        Lattice::cyclic_overlattice(4, &[1, 1])?,
    ];
    let tower = quotient_tower(&chain, &plane)?;
    for stage in &tower.stages {
        println!("  stage mld {} index {}", stage.mld, stage.cartier_index);
    }
    assert_eq!(tower.stages.last().map(|s| s.mld.clone()), Some(rat(1, 2)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
