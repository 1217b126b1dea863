//! Solve the p = ∞ problem and inspect the factorization witness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schurlab::estimate::{op_norm_infty_ascent, op_norm_infty_haagerup};
use schurlab::lattice::Lattice;
use schurlab::linalg::C64;
use schurlab::symbol::SymbolGrid;

fn main() -> schurlab::Result<()> {
    let l = Lattice::cyclic(8)?;
    let a: Vec<C64> = (0..8).map(|i| C64::from(1.0 + i as f64 / 4.0)).collect();
    let b: Vec<C64> = (0..8).map(|i| C64::new(0.5, i as f64 / 8.0)).collect();
    let rank_one = SymbolGrid::rank_one(&l, &a, &b)?;
    let sol = op_norm_infty_haagerup(&rank_one, 1e-6)?;
    println!(
        "rank one: [{:.6}, {:.6}] after {} steps, sup|a| sup|b| = {:.6}",
        sol.lower,
        sol.estimate.value,
        sol.history.len(),
        2.75 * C64::new(0.5, 0.875).norm()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = SymbolGrid::random(&l, &mut rng)?;
    let sol = op_norm_infty_haagerup(&m, 1e-6)?;
    let ascent = op_norm_infty_ascent(&m, 16, 200, 3)?;
    println!(
        "random: bracket [{:.6}, {:.6}], converged {}, ascent {:.6}",
        sol.lower, sol.estimate.value, sol.converged, ascent.value
    );
    let w = &sol.witness;
    println!(
        "witness: {} vectors of dimension {}, bound {:.6}, residual {:.1e}",
        w.row_vectors.len(),
        w.dimension,
        w.bound,
        w.residual
    );
    Ok(())
}
