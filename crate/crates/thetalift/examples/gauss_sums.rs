//! Gauss sums of discriminant forms and Milgram's formula.
//!
//! Run with `cargo run --example gauss_sums`.

use thetalift::arith::{gauss_sum, milgram_holds};
use thetalift::corpus;

fn main() -> thetalift::Result<()> {
    for name in ["A1", "A1(-1)", "A2", "D4", "D5", "E8", "U(3)", "A2+A1(-1)"] {
        let l = corpus::lattice(name)?;
        let d = l.discriminant_form();
        let (bp, bm) = l.signature();
        let g = gauss_sum(&d);
        println!(
            "{name:>10}  sig ({bp},{bm})  |D| = {:<3} G = {:<28} Milgram: {}",
            d.order(),
            g.to_string(),
            if milgram_holds(&d) { "ok" } else { "FAILS" }
        );
    }
    Ok(())
}
