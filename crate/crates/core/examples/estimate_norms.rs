//! Lower bounds for ‖S_M : S_p → S_p‖ on a divided difference symbol.

use schurlab::catalogue::ScalarFn;
use schurlab::estimate::{op_norm_lower_bound, op_norm_lower_bound_amplified, op_norm_p2};
use schurlab::lattice::Lattice;
use schurlab::schatten::SchattenExponent;
use schurlab::symbol::{central_slope, divided_difference};

fn main() -> schurlab::Result<()> {
    let l = Lattice::sampled(16, 0.25)?;
    let f = |x: f64| ScalarFn::Abs.eval(x);
    let m = divided_difference(&l, f, central_slope(f, l.spacing()))?;

    println!("p = 2 exact: {:.6}", op_norm_p2(&m).value);
    for p in [1.2, 1.5, 3.0, 4.0, 8.0] {
        let p = SchattenExponent::new(p)?;
        let est = op_norm_lower_bound(&m, p, 8, 100, 1)?;
        let constant = p.theorem_constant().unwrap_or(f64::NAN);
        println!(
            "p = {:<4} lower bound {:.6}  ratio to p²/(p-1) {:.4}",
            p.value(),
            est.value,
            est.value / constant
        );
    }
    let amplified = op_norm_lower_bound_amplified(&m, SchattenExponent::new(4.0)?, 2, 4, 60, 1)?;
    println!("p = 4 with 2x2 amplification: {:.6}", amplified.value);
    Ok(())
}
