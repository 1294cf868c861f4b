//! The ideal chain `J_n`, its limit and the reduced system.

use pimsner_lab::{reduce_system, BlockAlgebra, DynSystem, Endomorphism};

fn show(label: &str, dims: &[usize], mult: Vec<Vec<usize>>, ideal: &[usize]) -> pimsner_lab::Result<()> {
    let a = BlockAlgebra::new(dims)?;
    let delta = Endomorphism::new(&a, mult)?;
    let system = DynSystem::new(delta, a.ideal(ideal.iter().copied())?)?;
    let r = reduce_system(&system)?;
    let chain: Vec<String> = r.chain().iter().map(ToString::to_string).collect();
    println!("{label}");
    println!("  chain      {}", chain.join(" ⊆ "));
    println!(
        "  J_∞        {}  (stable after {} steps)",
        r.j_infinity(),
        r.stabilized_at()
    );
    println!(
        "  reduced    {} with mult {:?}, ideal {}",
        r.reduced_algebra(),
        r.reduced_endo().mult(),
        r.reduced_ideal()
    );
    println!("  degenerate {}", r.is_degenerate());
    Ok(())
}

fn main() -> pimsner_lab::Result<()> {
    show(
        "shift δ(a) = (a2, 0), J = A",
        &[1, 1],
        vec![vec![0, 1], vec![0, 0]],
        &[0, 1],
    )?;
    show("(1,2) fixture, J = A", &[1, 2], vec![vec![1, 0], vec![2, 0]], &[0, 1])?;
    show("swap, J = A", &[1, 1], vec![vec![0, 1], vec![1, 0]], &[0, 1])?;
    show(
        "three points, f = (2, 3, -), J = {1,2}",
        &[1, 1, 1],
        vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]],
        &[0, 1],
    )?;
    Ok(())
}
