use std::error::Error;

use toric_mld::arith::{format_vec, rat};
use toric_mld::cones::Cone;
use toric_mld::lattice::Lattice;
use toric_mld::pairs::ToricPair;
use toric_mld::quotients::cyclic_quotient;

/// mld, witness and Cartier index for a few cyclic quotients and one pair
/// with boundary.
pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (r, w) in [(3u64, [1i64, 1]), (5, [1, 2]), (7, [1, 6]), (7, [2, 3])] {
        let pair = cyclic_quotient(r, &w)?;
        let mld = pair.mld()?;
        println!(
            "1/{r}({}, {}): mld {} at {}, index {}",
            w[0],
            w[1],
            mld.value,
            format_vec(&mld.witness),
            pair.cartier_index()?
        );
    }
    assert_eq!(cyclic_quotient(3, &[1, 1])?.mld()?.value, rat(2, 3));

    let cone = Cone::from_int_rays(Lattice::standard(2), &[&[1, 0], &[0, 1]])?;
    let pair = ToricPair::new(cone, vec![rat(1, 2), rat(2, 3)])?;
    let mld = pair.mld()?;
    println!("A^2 with boundary (1/2, 2/3): mld {}", mld.value);
    assert_eq!(mld.value, rat(5, 6));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
