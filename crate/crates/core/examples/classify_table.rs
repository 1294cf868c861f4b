//! Which rows of the crossed-product table a system falls under.

use pimsner_lab::dynamics::TABLE_ROWS;
use pimsner_lab::{classify, BlockAlgebra, DynSystem, Endomorphism};

type Fixture = (&'static str, &'static [usize], Vec<Vec<usize>>, &'static [usize]);

fn main() -> pimsner_lab::Result<()> {
    let fixtures: [Fixture; 5] = [
        ("swap, J = A", &[1, 1], vec![vec![0, 1], vec![1, 0]], &[0, 1]),
        (
            "δ(a) = (a1, a1), J = (ker δ)^⊥",
            &[1, 1],
            vec![vec![1, 0], vec![1, 0]],
            &[0],
        ),
        ("(1,2) fixture, J = {1}", &[1, 2], vec![vec![1, 0], vec![2, 0]], &[0]),
        ("shift, J = {0}", &[1, 1], vec![vec![0, 1], vec![0, 0]], &[]),
        ("δ(a) = (a1, a1), J = A", &[1, 1], vec![vec![1, 0], vec![1, 0]], &[0, 1]),
    ];
    for (label, dims, mult, ideal) in fixtures {
        let a = BlockAlgebra::new(dims)?;
        let system = DynSystem::new(Endomorphism::new(&a, mult)?, a.ideal(ideal.iter().copied())?)?;
        let c = classify(&system);
        println!("{label}: rows {:?}", c.rows);
        for r in &c.rows {
            println!("    {r}. {}", TABLE_ROWS[usize::from(*r) - 1]);
        }
    }
    Ok(())
}
