//! Lifting a plus-space coefficient stream to a weight 4 form and
//! comparing with `64Δ/E₄²`.

use thetalift::corpus;
use thetalift::shimura::{binomial_vanishing, shimura_lift, verify_eta_quotient, ShimuraInput};

fn main() -> thetalift::Result<()> {
    let (coeffs, trunc) = corpus::shimura_stream();
    let input = ShimuraInput::new(2, coeffs, trunc)?;
    let prec = input.max_precision();
    let lift = shimura_lift(&input, prec)?;
    println!("lift  = {lift}");
    let check = verify_eta_quotient(&lift, prec)?;
    let expected: Vec<String> = check.expected.iter().map(ToString::to_string).collect();
    println!("64Δ/E4² = [{}]  equal: {}", expected.join(", "), check.equal);

    if let Err(e) = shimura_lift(&input, prec + 1) {
        println!("one more term: {e}");
    }

    let (l, r) = binomial_vanishing(5, 1, 2);
    println!("binomial identity at (5, 1, 2): {l} = {r}");
    Ok(())
}
