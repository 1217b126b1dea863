//! Schur products, Schatten norms and the adjoint identity.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schurlab::lattice::Lattice;
use schurlab::schatten::{schatten_norm, schur_adjoint_check, schur_apply, SchattenExponent};
use schurlab::symbol::{MatrixOperator, SymbolGrid};

fn main() -> schurlab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let l = Lattice::cyclic(12)?;
    let m = SymbolGrid::random(&l, &mut rng)?;
    let a = MatrixOperator::random(&l, &mut rng)?;
    let b = MatrixOperator::random(&l, &mut rng)?;

    for p in ["1", "1.5", "2", "4", "inf"] {
        let p: SchattenExponent = p.parse()?;
        let before = schatten_norm(&a, p)?;
        let after = schatten_norm(&schur_apply(&m, &a)?, p)?;
        println!(
            "p = {:<4} ‖A‖ = {before:>9.4}  ‖S_M(A)‖ = {after:>9.4}",
            p.to_string()
        );
    }
    println!(
        "adjoint identity defect {:.2e}",
        schur_adjoint_check(&m, &a, &b)?
    );
    Ok(())
}
