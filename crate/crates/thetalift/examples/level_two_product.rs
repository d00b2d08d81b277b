//! The level 2 product on `II₁,₉ ⊕ II₁,₁(2)`: weight, constant, a divisor
//! and the expansion along a null ray, compared with `η(τ)¹⁶/η(2τ)⁸`.

use num_traits::Zero;
use thetalift::arith::{int, q, Q};
use thetalift::corpus;
use thetalift::products::{lift_weight, product_expansion, ray_coefficients, scalar_constant, zero_orders};
use thetalift::qseries::eta;

fn main() -> thetalift::Result<()> {
    let d = corpus::level_two_datum(&int(3))?;
    let (w, singular) = lift_weight(&d)?;
    let (c, _) = scalar_constant(&d)?;
    println!("weight {w} (singular: {singular}), constant {c}");

    let mut lam = vec![Q::zero(); 12];
    lam[10] = q(1, 2);
    lam[11] = q(-1, 2);
    println!("order along the norm −1 divisor: {}", zero_orders(d.form(), &lam)?);

    let mut h = vec![Q::zero(); 10];
    h[0] = int(1);
    h[1] = int(6);
    let mut ray = vec![Q::zero(); 10];
    ray[1] = int(1);
    let s = product_expansion(&d, &h, &int(5), Some(&ray))?;
    let got: Vec<String> = ray_coefficients(&s, &ray)?.iter().map(ToString::to_string).collect();
    println!("ray coefficients: {}", got.join(", "));

    let oracle = eta(1, &int(6)).pow(16)?.mul(&eta(2, &int(6)).pow(-8)?);
    println!("η¹⁶/η(2τ)⁸     = {oracle}");
    Ok(())
}
