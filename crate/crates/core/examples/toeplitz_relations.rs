//! Toeplitz axioms and coisometry for the Fock pair, plus a corrupted control.

use pimsner_lab::fock::{coisometric_check, toeplitz_check};
use pimsner_lab::{fock_rep, BlockAlgebra, Endomorphism};

fn main() -> pimsner_lab::Result<()> {
    let a = BlockAlgebra::new(&[2, 2])?;
    let delta = Endomorphism::new(&a, vec![vec![0, 1], vec![0, 1]])?;
    let pair = fock_rep(&delta, 3)?.toeplitz_pair();

    let report = toeplitz_check(&pair);
    println!("Fock pair, levels ≤ 2: {report:?}");

    for ideal in a.enumerate_ideals()? {
        let co = coisometric_check(&pair, &ideal)?;
        println!("coisometric on {ideal:<6} residual {:.3e}", co.residual);
    }

    let bad = pair.with_pi_unit(0, -pair.pi_units()[0].clone());
    println!("π negated on one unit: worst {:?}", toeplitz_check(&bad).worst());
    Ok(())
}
