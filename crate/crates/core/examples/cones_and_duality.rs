// Cones, duals, Hilbert bases and a star subdivision in a non-standard
// lattice.

use std::error::Error;

use toric_mld::arith::{format_vec, qvec, rat, QVec};
use toric_mld::cones::Cone;
use toric_mld::lattice::Lattice;

fn show(vs: &[QVec]) -> String {
    vs.iter().map(|v| format_vec(v)).collect::<Vec<_>>().join(" ")
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // the A1 cone: (1,0), (1,2) in Z^2
    let a1 = Cone::from_int_rays(Lattice::standard(2), &[&[1, 0], &[1, 2]])?;
    let dual = a1.dual_cone()?;
    println!("rays {}", show(a1.rays()));
    println!("dual rays {}", show(dual.rays()));
    let hb = dual.hilbert_basis(10_000)?;
    println!("invariant monomials {}", show(&hb));
    assert_eq!(hb.len(), 3);

    // the same orthant read in Z^2 + Z(1/3, 1/3)
    let n = Lattice::cyclic_overlattice(3, &[1, 1])?;
    let sigma = Cone::orthant(2).in_lattice(n)?;
    let v = vec![rat(1, 3), rat(1, 3)];
    let fan = sigma.star_subdivision(&v)?;
    for c in fan.cones() {
        println!("subdivided cone {}", show(c.rays()));
    }
    assert!(fan.support_contains(&qvec(&[5, 1])));

    let square = Cone::from_int_rays(Lattice::standard(3), &[&[1, 0, 1], &[0, 1, 1], &[1, 1, 1], &[0, 0, 1]])?;
    println!("facets over the unit square {}", show(square.facet_normals()));
    assert!(!square.is_simplicial());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
