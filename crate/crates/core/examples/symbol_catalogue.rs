//! Build the named symbol families on a sampled box and print their size.

use schurlab::catalogue::ScalarFn;
use schurlab::lattice::Lattice;
use schurlab::linalg::C64;
use schurlab::lp::psi0;
use schurlab::symbol::{
    alpha_divided_difference, central_slope, corona_symbol, divided_difference, row_col_symbols,
    toeplitz_symbol,
};

fn main() -> schurlab::Result<()> {
    let l = Lattice::sampled(16, 0.25)?;
    let h = l.spacing();
    println!("{} points, spacing {h}", l.len());

    for f in ScalarFn::ALL {
        let g = move |x: f64| f.eval(x);
        let m = divided_difference(&l, g, central_slope(g, h))?;
        println!("divided difference of {f:<12} sup|M| = {:.4}", m.sup_abs());
    }

    let m = alpha_divided_difference(&l, |x| ScalarFn::SqrtAbs.eval(x), 0.5)?;
    println!(
        "alpha divided difference of sqrt_abs sup|M| = {:.4}",
        m.sup_abs()
    );

    let t = toeplitz_symbol(&l, |d| C64::from((-d[0].abs()).exp()))?;
    println!("toeplitz exp(-|t|) M(0, 1) = {:.4}", t.get(0, 1).re);

    for j in -2..=1 {
        let c = corona_symbol(&l, psi0, j)?;
        println!("corona j = {j:>2} sup|M| = {:.4}", c.sup_abs());
    }

    let (mr, mc) = row_col_symbols(&t)?;
    println!(
        "row view {} and column view {} on {} points",
        mr.label(),
        mc.label(),
        mr.len()
    );
    Ok(())
}
