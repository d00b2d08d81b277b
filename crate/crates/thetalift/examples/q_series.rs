//! Exact q-expansions: Eisenstein series, Δ, j and eta quotients.

use thetalift::arith::int;
use thetalift::cli::expr::evaluate;
use thetalift::qseries::{delta, eisenstein, eta, j_invariant};

fn main() -> thetalift::Result<()> {
    let p = int(6);
    println!("E4  = {}", eisenstein(4, &p)?);
    println!("E6  = {}", eisenstein(6, &p)?);
    println!("Δ   = {}", delta(&p));
    println!("j   = {}", j_invariant(&int(3)));

    let e4 = eisenstein(4, &p)?;
    let e6 = eisenstein(6, &p)?;
    let lhs = e4.pow(3)?.sub(&e6.pow(2)?);
    println!("E4³ − E6² = 1728Δ: {}", lhs.agrees_with(&delta(&p).scale(&int(1728))));

    let quotient = eta(1, &p).pow(16)?.mul(&eta(2, &p).pow(-8)?);
    println!("η¹⁶/η(2τ)⁸ = {quotient}");

    // The same series through the expression parser used by `series-eval`.
    println!("64Δ/E4² = {}", evaluate("64*Delta/E4^2", &int(5))?);
    Ok(())
}
