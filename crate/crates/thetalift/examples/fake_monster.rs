//! Low-height terms of the product for `1/Δ` on `II₂,₂₆`.
//!
//! Only terms of small height are computed; the Weyl vector is the cusp
//! vector itself and every exponent that appears is isotropic.

use num_traits::Zero;
use thetalift::arith::{int, Q};
use thetalift::corpus;
use thetalift::products::{product_expansion, singular_weight_support};

fn main() -> thetalift::Result<()> {
    let d = corpus::fake_monster_datum(&int(3))?;
    let mut h = vec![Q::zero(); 26];
    h[0] = int(2);
    h[1] = int(1);
    let s = product_expansion(&d, &h, &int(3), None)?;
    println!("{} terms up to height 3", s.len());
    for t in s.terms().iter().take(12) {
        let nz: Vec<String> = t
            .exponent
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| format!("{x}·b{i}"))
            .collect();
        println!("  height {:<3} {:>6}  at {}", t.height.to_string(), t.coefficient.to_string(), nz.join(" + "));
    }
    println!("non-isotropic exponents: {}", singular_weight_support(&s, &d)?.len());
    Ok(())
}
