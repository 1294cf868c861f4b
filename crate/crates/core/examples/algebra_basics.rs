//! Block algebras, their ideal lattice, quotients and direct sums.

use pimsner_lab::{direct_sum, quotient, BlockAlgebra};

fn main() -> pimsner_lab::Result<()> {
    let a = BlockAlgebra::new(&[1, 2, 1])?;
    println!("A = {a}, acting on C^{}", a.total_dim());

    let i = a.ideal([0, 1])?;
    println!("I = {i}, I^⊥ = {}, hull(I) = {:?}", i.ortho_complement(), i.hull());
    println!("ideals of A: {}", a.enumerate_ideals()?.len());

    let q = quotient(&a, &i)?;
    println!("A/I = {} (blocks kept: {:?})", q.target(), q.index_map());

    let sum = direct_sum(&a, q.target());
    println!("A ⊕ A/I = {}", sum.algebra());
    Ok(())
}
