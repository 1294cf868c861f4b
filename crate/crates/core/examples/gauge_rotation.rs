//! `ψ ↦ zψ` leaves every Toeplitz residual where it was.

use pimsner_lab::fock::{gauge_rotate, toeplitz_check};
use pimsner_lab::{fock_rep, BlockAlgebra, Endomorphism, C64};

fn main() -> pimsner_lab::Result<()> {
    let a = BlockAlgebra::new(&[2, 2])?;
    let delta = Endomorphism::new(&a, vec![vec![0, 1], vec![0, 1]])?;
    let pair = fock_rep(&delta, 3)?.toeplitz_pair();
    let base = toeplitz_check(&pair);
    for k in 0..8 {
        let z = C64::from_polar(1.0, f64::from(k) * std::f64::consts::FRAC_PI_4);
        let r = toeplitz_check(&gauge_rotate(&pair, z)?);
        println!(
            "z = {z:.3}: max residual {:.3e} (unrotated {:.3e})",
            r.max(),
            base.max()
        );
    }
    println!("z = 1.1 rejected: {}", gauge_rotate(&pair, C64::new(1.1, 0.0)).is_err());
    Ok(())
}
