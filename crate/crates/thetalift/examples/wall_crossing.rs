//! Crossing a wall on the toy lattice `U ⊕ A₁(−1)`.
//!
//! The two witnesses `±1/2` pick the chambers on either side of the wall
//! orthogonal to the `A₁` root. The Weyl vectors differ by the wall
//! crossing term, and the piecewise linear function agrees at any point
//! whichever chamber it is evaluated from.

use thetalift::arith::{int, q, Q};
use thetalift::corpus;
use thetalift::hyperbolic::{phi_eval_hyperbolic, wall_crossing_delta, weyl_vector, Convention};

fn main() -> thetalift::Result<()> {
    let ex = corpus::toy_u_plus_a1()?;
    let plus = weyl_vector(&ex.frame, &ex.form, &[q(1, 2)], Convention::default())?;
    let minus = weyl_vector(&ex.frame, &ex.form, &[q(-1, 2)], Convention::default())?;
    println!("ρ(+) = {:?}", plus.to_m().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("ρ(−) = {:?}", minus.to_m().iter().map(ToString::to_string).collect::<Vec<_>>());

    let side = ex.frame.compose(&[q(1, 1000)], &int(1), &int(1000));
    let delta = wall_crossing_delta(&ex.form, &[0, 0, 1], &side)?;
    println!("crossing term = {:?}", delta.iter().map(ToString::to_string).collect::<Vec<_>>());

    let v: Vec<Q> = [7, 2, -3].iter().zip([1, 3, 7]).map(|(x, c)| int(*x) + q(c, 997)).collect();
    let (a, va) = phi_eval_hyperbolic(&plus, &ex.form, &v)?;
    let (b, vb) = phi_eval_hyperbolic(&minus, &ex.form, &v)?;
    println!("Φ(v) from either chamber: {va} and {vb}; same chamber vector: {}", a.to_m() == b.to_m());
    Ok(())
}
