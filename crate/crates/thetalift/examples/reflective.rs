//! Reflective certificates for the bundled Lorentzian examples.

use thetalift::arith::int;
use thetalift::corpus;
use thetalift::hyperbolic::{reflective_certificate, Convention};

fn main() -> thetalift::Result<()> {
    let p = int(2);
    let examples = [
        ("II1,9 with E4²/Δ", corpus::ii_1_9_e4sq(&p)?),
        ("II1,25 with 1/Δ", corpus::ii_1_25_leech(&p)?),
        ("I1,19 even with Θ(D6)/Δ", corpus::i_1_19_theta_d6(&p)?),
    ];
    for (label, ex) in examples {
        let r = reflective_certificate(&ex.frame, &ex.form, &ex.generic_witness(), Convention::default())?;
        println!("{label:<26} ρ² = {:<6} {}", r.norm.to_string(), r.class.as_str());
        for f in &r.failures {
            println!("    {f}");
        }
    }
    Ok(())
}
