//! The 0/1 shape of `E = δ(1)A` and the lattice operations the reduction uses.

use pimsner_lab::{BlockAlgebra, CorrespondenceShape, Endomorphism};

fn main() -> pimsner_lab::Result<()> {
    let a = BlockAlgebra::new(&[1, 2])?;
    let delta = Endomorphism::new(&a, vec![vec![1, 0], vec![2, 0]])?;
    let shape = CorrespondenceShape::from_dynamics(&delta);

    println!("shape rows: {:?}", shape.act());
    println!("ker φ = {}", shape.left_kernel());
    println!("J(E) = {}", shape.j_of_e());
    println!("(ker φ)^⊥ ∩ J(E) = {}", shape.suggested_ideal());

    for ideal in a.enumerate_ideals()? {
        println!(
            "I = {ideal:<6} acts into it: {:<6} invariant: {}",
            shape.acts_into(&ideal)?.to_string(),
            shape.is_invariant(&ideal)?
        );
    }
    Ok(())
}
