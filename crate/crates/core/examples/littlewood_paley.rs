//! Dyadic partitions, matrix decompositions and square functions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schurlab::lattice::Lattice;
use schurlab::lp::{
    lp_decompose, overlap_count, partition_sum_check, rc_split_upper, reconstruction_residual,
    square_function_norm, symbol_partition, PartitionFamily, PartitionKind,
};
use schurlab::schatten::{schatten_norm, SchattenExponent};
use schurlab::symbol::MatrixOperator;

fn main() -> schurlab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let l = Lattice::integer(16)?;
    let a = MatrixOperator::random(&l, &mut rng)?;

    for kind in [PartitionKind::ToeplitzAnnuli, PartitionKind::Corona] {
        let family = PartitionFamily::covering(kind, &l)?;
        let samples: Vec<Vec<f64>> = (0..200).map(|i| vec![0.05 * (i + 1) as f64]).collect();
        let check = partition_sum_check(&family, &samples);
        let parts = symbol_partition(&family, &l)?;
        let pieces = lp_decompose(&a, &parts)?;
        let (residual, uncovered) = reconstruction_residual(&a, &pieces, &family)?;
        println!(
            "{:?} j = {}..={}: deviation {:.1e}, overlap {}, residual {:.1e}, {uncovered} uncovered pairs",
            family.kind,
            family.j_min,
            family.j_max,
            check.max_deviation,
            overlap_count(&parts),
            residual
        );
        for p in [2.0, 4.0] {
            let p = SchattenExponent::new(p)?;
            println!(
                "  p = {}: ‖A‖ {:.3}, square function {:.3}",
                p.value(),
                schatten_norm(&a, p)?,
                square_function_norm(&pieces, p)?
            );
        }
        let split = rc_split_upper(&pieces, SchattenExponent::new(1.5)?, 2)?;
        println!(
            "  p = 1.5: row/column split {:.3} (row only {:.3})",
            split.value, split.row_only
        );
    }
    Ok(())
}
