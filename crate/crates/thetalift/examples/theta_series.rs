//! Theta series of definite lattices and their cosets.

use num_traits::Zero;
use thetalift::arith::{int, Q};
use thetalift::lattice::{a_n, e8, leech, DiscriminantForm};
use thetalift::qseries::eisenstein;

fn main() -> thetalift::Result<()> {
    let p = int(6);
    let theta = e8().theta_series(&vec![Q::zero(); 8], &p)?;
    println!("Θ(E8) = {theta}");
    println!("equals E4 through q^5: {}", theta == eisenstein(4, &p)?);

    let a2 = a_n(2);
    for (g, t) in a2.class_theta_series(&int(3))? {
        println!("Θ(A2 + [{}]) = {t}", DiscriminantForm::element_label(&g));
    }

    println!("Leech shells up to norm 4 (this enumerates 196560 vectors):");
    for (norm, count) in leech().norm_counts(&vec![Q::zero(); 24], &int(2))? {
        println!("  norm {norm}: {count}");
    }
    Ok(())
}
