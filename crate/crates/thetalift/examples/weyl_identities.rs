//! Identities satisfied by Weyl vectors: the divisibility of the constant
//! term, vector systems and the theta-lift expression for `(ρ, λ)`.

use thetalift::arith::{int, q, Q};
use thetalift::corpus;
use thetalift::hyperbolic::{
    congruence_check, phi_eval_hyperbolic, vector_system_check, weyl_inner_product, weyl_vector, Convention,
};
use thetalift::weilrep::reduce_to_smaller;

fn main() -> thetalift::Result<()> {
    let p = int(2);
    for (label, ex) in [("E8(-1)^3", corpus::ii_1_25_e8cubed(&p)?), ("Leech(-1)", corpus::ii_1_25_leech(&p)?)] {
        let r = congruence_check(&reduce_to_smaller(&ex.form, &ex.frame)?)?;
        println!("{label:<10} constant {} with N = {}: {}", r.constant, r.ideal, r.divisible);
    }
    let r = congruence_check(&corpus::a1_congruence_form())?;
    println!("A1(-1)     constant {} with N = {}: {}", r.constant, r.ideal, r.divisible);

    for (label, ex) in [("E8(-1)", corpus::ii_1_9_e4sq(&p)?), ("Leech(-1)", corpus::ii_1_25_leech(&p)?)] {
        let v = vector_system_check(&reduce_to_smaller(&ex.form, &ex.frame)?)?;
        println!("{label:<10} vector system of index {}: {}", v.index, v.holds);
    }

    let ex = corpus::ii_1_9_e4sq(&p)?;
    let w = weyl_vector(&ex.frame, &ex.form, &ex.generic_witness(), Convention::default())?;
    let eps = [1234, 5678, 9012, 3457, 7891, 2345, 6789, 1357, 2468, 9753];
    for lam in [[1i64, 1, 0, 0, 0, 0, 0, 0, 0, 0], [2, 1, 1, 0, 0, 0, 0, 0, 0, 0]] {
        let v: Vec<Q> = lam.iter().zip(eps).map(|(x, e)| int(*x) + q(e, 1_000_003)).collect();
        let (chamber, _) = phi_eval_hyperbolic(&w, &ex.form, &v)?;
        let lq: Vec<Q> = lam.iter().map(|&x| int(x)).collect();
        let from_rho = ex.frame.lattice().inner(&chamber.to_m(), &lq);
        println!("λ = {lam:?}: (ρ, λ) = {from_rho}, theta constant term = {}", weyl_inner_product(&ex.form, &lam)?);
    }
    Ok(())
}
