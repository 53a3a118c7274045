use std::error::Error;

use toric_mld::arith::rat;
use toric_mld::automorphisms::{element_order, fan_automorphisms, group_closure, jordan_report, OuterToricElement};
use toric_mld::cones::Cone;

/// Aut of the orthant, the outer-toric group generated by a swap with a
/// torsion twist, and its normal abelian subgroup.
pub fn run_example() -> Result<(), Box<dyn Error>> {
    let orthant = Cone::orthant(3);
    let auts = fan_automorphisms(&orthant)?;
    let orders: Vec<usize> = auts.iter().map(element_order).collect::<Result<_, _>>()?;
    println!("|Aut| = {}, orders {:?}", auts.len(), orders);

    let plane = Cone::orthant(2);
    let swap = fan_automorphisms(&plane)?.into_iter().find(|g| !g.is_identity()).expect("swap");
    let x = OuterToricElement::new(plane.lattice(), &swap, &[rat(1, 5), rat(2, 5)])?;
    let y = OuterToricElement::torsion(plane.lattice(), &[rat(0, 1), rat(1, 3)])?;
    let group = group_closure(2, &[x, y], 10_000)?;
    let report = jordan_report(&group, &plane)?;
    println!(
        "|G| = {}, |A| = {} {:?}, index {}",
        report.group_order, report.a_order, report.a_invariant_factors, report.index
    );
    assert!(report.holds(2));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
