//! Hurwitz class numbers and the two components of `G₁`.

use thetalift::qseries::{hurwitz_class_numbers, zagier_g, zagier_g1};

fn main() {
    let table = hurwitz_class_numbers(24);
    for (n, h) in table.values.iter().enumerate() {
        if !num_traits::Zero::is_zero(h) {
            println!("H({n:>2}) = {h}");
        }
    }
    println!("G  = {}", zagier_g(13));
    let g1 = zagier_g1(3);
    for (g, f) in g1.components() {
        println!("G₁[{}] = {f}", thetalift::lattice::DiscriminantForm::element_label(g));
    }
}
