//! Runs the bundled regression checks, optionally filtered by id prefix:
//! `cargo run --release --example regressions -- weyl`.

fn main() {
    let filter = std::env::args().nth(1);
    let results = thetalift::cli::regress::run(filter.as_deref());
    for r in &results {
        println!("{} {:<28} {}", if r.passed { "pass" } else { "FAIL" }, r.id, r.detail);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        std::process::exit(1);
    }
}
