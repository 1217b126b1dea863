//! Row and column matrix BMO seminorms on Z_N.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schurlab::bmo::{bmo_norm, BallFamily};
use schurlab::lattice::Lattice;
use schurlab::linalg::C64;
use schurlab::schatten::{schatten_norm, SchattenExponent};
use schurlab::symbol::MatrixOperator;

fn main() -> schurlab::Result<()> {
    let l = Lattice::cyclic(16)?;
    let balls = BallFamily::standard(&l)?;
    println!("{} balls", balls.len());

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = MatrixOperator::random(&l, &mut rng)?;
    let n = bmo_norm(&a, &balls)?;
    let op = schatten_norm(&a, SchattenExponent::Infinity)?;
    println!(
        "random: bmo_r {:.4} bmo_c {:.4} ‖A‖ {:.4}",
        n.bmo_r, n.bmo_c, op
    );

    let diag = MatrixOperator::from_fn(&l, "diag", |x, y| {
        C64::from(if x == y { x as f64 } else { 0.0 })
    })?;
    println!("diagonal: bmo {}", bmo_norm(&diag, &balls)?.bmo);

    let unit = MatrixOperator::matrix_unit(&l, 0, 3)?;
    let u = bmo_norm(&unit, &balls)?;
    println!(
        "matrix unit e_03: bmo_r {:.4} bmo_c {:.4}",
        u.bmo_r, u.bmo_c
    );
    Ok(())
}
