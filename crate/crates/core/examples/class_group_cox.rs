use std::error::Error;

use toric_mld::arith::int;
use toric_mld::cones::Cone;
use toric_mld::lattice::Lattice;
use toric_mld::pairs::class_group;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let a1 = Cone::from_int_rays(Lattice::standard(2), &[&[1, 0], &[1, 2]])?;
    let cl = class_group(&a1);
    println!("Cl(A1) = Z^{} + {}", cl.free_rank, cl.torsion);
    for (i, d) in cl.degrees.iter().enumerate() {
        println!("  deg x{} = {:?} / {:?}", i + 1, d.free, d.torsion);
    }

    // cone over the square with vertices (±1, 0), (0, ±1)
    let square = Cone::from_int_rays(Lattice::standard(3), &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]])?;
    let cl = class_group(&square);
    println!("Cl(square) = Z^{} + {} with {} variables", cl.free_rank, cl.torsion, cl.num_variables);
    assert_eq!((cl.free_rank, cl.num_variables), (1, 4));
    // the character (0, 0, 1) pairs to 1 with every ray, so x1 x2 x3 x4 has class 0
    assert!(cl.is_trivial_class(&[int(1), int(1), int(1), int(1)]));
    assert!(!cl.is_trivial_class(&[int(1), int(0), int(0), int(0)]));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
