//! The Weil representation of a small discriminant form, written out.

use thetalift::corpus;
use thetalift::lattice::DiscriminantForm;
use thetalift::weilrep::WeilRepresentation;

fn main() -> thetalift::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "A2".to_string());
    let l = corpus::lattice(&name)?;
    let rep = WeilRepresentation::build(&l.discriminant_form());
    let labels: Vec<String> = rep.elements.iter().map(DiscriminantForm::element_label).collect();
    println!("{name}: dimension {}, entries in Q(ζ_{})", rep.dimension(), rep.field_order());
    for (label, t) in labels.iter().zip(&rep.t) {
        println!("  T e[{label}] = {t} · e[{label}]");
    }
    for (j, lj) in labels.iter().enumerate() {
        let image: Vec<String> = labels
            .iter()
            .enumerate()
            .map(|(i, li)| format!("({}) e[{li}]", rep.s[i][j]))
            .collect();
        println!("  S e[{lj}] = {}", image.join(" + "));
    }
    let r = rep.check_relations();
    println!("S² = Z: {}, (ST)³ = Z: {}, Z⁴ = 1: {}", r.s_squared_is_z, r.st_cubed_is_z, r.z_fourth_is_identity);
    println!("unitary: {}, symmetric: {}", r.unitary, r.s_symmetric);
    Ok(())
}
