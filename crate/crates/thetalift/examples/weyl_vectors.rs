//! Weyl vectors of the even unimodular Lorentzian lattices II₁,₈ₖ₊₁ for
//! the standard inputs, and of II₁,₁ with a constant form.

use thetalift::arith::int;
use thetalift::corpus::{self, HyperbolicExample};
use thetalift::hyperbolic::{weyl_vector, Convention};

fn show(label: &str, ex: HyperbolicExample) -> thetalift::Result<()> {
    let w = weyl_vector(&ex.frame, &ex.form, &ex.generic_witness(), Convention::default())?;
    let rho: Vec<String> = w.to_m().iter().map(ToString::to_string).collect();
    println!("{label:<22} ρ² = {:<6} ρ = ({})", w.norm().to_string(), rho.join(", "));
    Ok(())
}

fn main() -> thetalift::Result<()> {
    let p = int(2);
    show("II1,9   E4²/Δ", corpus::ii_1_9_e4sq(&p)?)?;
    show("II1,17  E4/Δ", corpus::ii_1_17_e4(&p)?)?;
    show("II1,25  1/Δ (Leech)", corpus::ii_1_25_leech(&p)?)?;
    show("II1,25  1/Δ (E8³)", corpus::ii_1_25_e8cubed(&p)?)?;
    show("II1,1   F = 1", corpus::ii_1_1_constant()?)?;

    // The boundary convention matters only when F has a constant term
    // paired with the cusp.
    let ex = corpus::ii_1_25_leech(&p)?;
    let excluded = weyl_vector(&ex.frame, &ex.form, &ex.generic_witness(), Convention::BoundaryExcluded)?;
    println!("Leech model with boundary terms excluded: ρ = 0 is {}", excluded.is_zero());
    Ok(())
}
