//! Twisted multipliers: intertwining identities and the module bounds.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schurlab::field::{pi_embed, MatrixField};
use schurlab::lattice::Lattice;
use schurlab::schatten::schur_apply;
use schurlab::symbol::{MatrixOperator, SymbolGrid};
use schurlab::twist::{
    column_square_bound_check, l2_bound_check, twisted_apply, verify_intertwining,
    TwistedMultiplier,
};

fn main() -> schurlab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let l = Lattice::cyclic(16)?;
    let m = SymbolGrid::random(&l, &mut rng)?;
    let a = MatrixOperator::random(&l, &mut rng)?;

    let t = TwistedMultiplier::column(&m)?;
    let lhs = twisted_apply(&t, &pi_embed(&a, &l)?)?;
    let rhs = pi_embed(&schur_apply(&m, &a)?, &l)?;
    println!("column view distance {:.2e}", lhs.max_distance(&rhs)?);

    let r = verify_intertwining(&m, &a)?;
    println!(
        "residuals: column {:.2e} row {:.2e} (scale {:.2})",
        r.column, r.row, r.scale
    );

    let f = MatrixField::random(&l, &l, &mut rng)?;
    let l2 = l2_bound_check(&t, &f)?;
    let col = column_square_bound_check(&t, &f)?;
    println!(
        "L2 bound {:.4} <= {:.4}: {}",
        l2.lhs,
        l2.rhs,
        l2.holds(1e-9)
    );
    println!(
        "column square bound {:.4} <= {:.4}: {}",
        col.lhs,
        col.rhs,
        col.holds(1e-9)
    );
    Ok(())
}
