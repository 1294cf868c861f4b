//! Truncated Fock representation: level dimensions, creation operators, isometry.

use pimsner_lab::algebra::operator_norm;
use pimsner_lab::{fock_rep, BlockAlgebra, Endomorphism};

fn main() -> pimsner_lab::Result<()> {
    let a = BlockAlgebra::new(&[1, 2])?;
    let delta = Endomorphism::new(&a, vec![vec![1, 0], vec![2, 0]])?;
    let rep = fock_rep(&delta, 4)?;

    println!("dim H_n for n = 0..=4: {:?}", rep.level_dims());
    let oracle: Vec<usize> = (0..=4).map(|n| delta.iterate(n).unit_ranks().iter().sum()).collect();
    println!("rank δ^n(1):           {oracle:?}");
    println!("module basis of E:     {:?}", rep.module().basis_labels());

    let t = rep.creation(&delta.unit_image())?;
    println!("‖T(δ(1))‖ = {:.12}", operator_norm(&t));
    println!("isometry residual      {:.1e}", rep.isometry_residual());
    println!("annihilation residual  {:.1e}", rep.annihilation_residual());
    Ok(())
}
