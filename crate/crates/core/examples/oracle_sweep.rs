//! Exhaustive three-way check of `J_∞` over commutative systems on four points.

use pimsner_lab::sweep::commutative_sweep;

fn main() -> pimsner_lab::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let report = commutative_sweep(n)?;
    println!(
        "{} systems × ideals = {} cases, {} mismatches",
        report.systems,
        report.cases,
        report.mismatches.len()
    );
    for m in report.mismatches.iter().take(10) {
        println!("  {m}");
    }
    Ok(())
}
