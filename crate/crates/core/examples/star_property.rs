//! The (*)-inequality through the amplified pair on `H^{2L+1}`.

use pimsner_lab::fock::{covariant_from_toeplitz, Amplification};
use pimsner_lab::{fock_rep, AlgebraElement, BlockAlgebra, Endomorphism};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> pimsner_lab::Result<()> {
    let a = BlockAlgebra::new(&[1, 2])?;
    let delta = Endomorphism::new(&a, vec![vec![1, 0], vec![2, 0]])?;
    let cov = covariant_from_toeplitz(&fock_rep(&delta, 2)?.toeplitz_pair())?;
    let amp = Amplification::new(&cov, 2)?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = f64::INFINITY;
    for _ in 0..100 {
        let coeffs: Vec<Vec<AlgebraElement>> = (0..3)
            .map(|_| (0..3).map(|_| a.random_element(&mut rng)).collect())
            .collect();
        let r = amp.check(&coeffs)?;
        assert!(r.holds);
        worst = worst.min(r.margin);
    }
    println!("100 families of degree 2, width 2: smallest margin {worst:.3e}");

    let diagonal: Vec<Vec<AlgebraElement>> = (0..3)
        .map(|m| {
            (0..3)
                .map(|n| {
                    if m == n {
                        a.random_element(&mut rng)
                    } else {
                        a.zero_element()
                    }
                })
                .collect()
        })
        .collect();
    let r = amp.check(&diagonal)?;
    println!("diagonal family: lhs {:.6} rhs {:.6}", r.lhs, r.rhs);
    Ok(())
}
