//! Toeplitz pairs ↔ covariant pairs via `U = ψ(δ(1))*` and `ψ(x) = U*π(x)`.

use pimsner_lab::fock::{
    associated_ideal, coisometric_check, covariance_check, covariant_from_toeplitz, round_trip, toeplitz_from_covariant,
};
use pimsner_lab::{fock_rep, BlockAlgebra, CovariantPair, Endomorphism};

fn main() -> pimsner_lab::Result<()> {
    let a = BlockAlgebra::new(&[1, 1])?;
    let swap = Endomorphism::new(&a, vec![vec![0, 1], vec![1, 0]])?;

    let fock = fock_rep(&swap, 3)?.toeplitz_pair();
    let cov = covariant_from_toeplitz(&fock)?;
    println!("Fock pair → U: {:?}", covariance_check(&cov));
    println!("associated ideal of the Fock pair: {}", associated_ideal(&cov, 1e-8));
    println!("round trip: {:?}", round_trip(&fock)?);

    let unitary = CovariantPair::unitary(&swap)?;
    println!("unitary pair: {:?}", covariance_check(&unitary));
    let j = associated_ideal(&unitary, 1e-8);
    println!("associated ideal of the unitary pair: {j}");
    let induced = toeplitz_from_covariant(&unitary)?;
    println!(
        "induced pair coisometric on {j}: {:?}",
        coisometric_check(&induced, &j)?
    );
    Ok(())
}
