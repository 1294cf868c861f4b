//! The canonical system `(A_J, δ_J)` with `ker δ_J = 0 ⊕ A/J`.

use pimsner_lab::{canonical_system, BlockAlgebra, DynSystem, Endomorphism};

fn main() -> pimsner_lab::Result<()> {
    let a = BlockAlgebra::new(&[1, 2])?;
    let delta = Endomorphism::new(&a, vec![vec![1, 0], vec![2, 0]])?;

    for support in [vec![0], vec![0, 1], vec![]] {
        let system = DynSystem::new(delta.clone(), a.ideal(support)?)?;
        let ext = canonical_system(&system)?;
        let cert = ext.certificate();
        println!("J = {}", system.ideal());
        println!(
            "  after reduction   {} with J = {}",
            ext.system().algebra(),
            ext.system().ideal()
        );
        println!(
            "  A_J               {} with mult {:?}",
            ext.ext_algebra(),
            ext.ext_endo().mult()
        );
        println!("  ker δ_J           {}", ext.ext_endo().kernel());
        println!(
            "  certificate       injective {}, intertwining {:.1e}, kernel = second summand {}",
            cert.embed_injective, cert.intertwining_residual, cert.kernel_is_second_summand
        );
    }
    Ok(())
}
