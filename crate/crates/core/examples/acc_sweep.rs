// A small sweep of surface cyclic quotients: spectrum in a window, Cartier
// indices per window, and CSV output.

use std::error::Error;

use toric_mld::arith::rat;
use toric_mld::explorer::{emit_records, enumerate_cyclic, index_table, spectrum, Format, MldRecord, Window};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let records: Vec<MldRecord> = enumerate_cyclic(2, 40, None, true, 1000)?.collect();
    println!("{} records up to r = 40", records.len());

    let window: Window = "1/2:1".parse()?;
    let report = spectrum(&records, &window, 20, 40);
    println!(
        "{} values in {} at r <= 20, {} at r <= 40, stabilized: {}",
        report.values_r1.len(),
        window,
        report.values_r2.len(),
        report.stabilized
    );

    let windows = [Window::closed(rat(1, 1), rat(1, 1)), Window::half_open(rat(1, 2), rat(1, 1))];
    for row in index_table(&records, &windows, 20, 40) {
        println!("{}: indices {:?} (grew: {})", row.window, row.indices_r2, row.grew);
    }

    let mut csv = Vec::new();
    emit_records(&records[..5], Format::Csv, &mut csv)?;
    print!("{}", String::from_utf8(csv)?);
    for rec in &records[..20] {
        rec.verify()?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
