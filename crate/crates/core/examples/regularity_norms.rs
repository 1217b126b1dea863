//! HMS, HMS_Δ and Sobolev HMS norms, plus a Hölder modulus fit.

use schurlab::catalogue::ScalarFn;
use schurlab::hms::{
    hms_delta_norm, hms_norm, hms_sobolev_scales, holder_modulus, SobolevParams, Variable,
};
use schurlab::lattice::Lattice;
use schurlab::linalg::C64;
use schurlab::symbol::{alpha_divided_difference, toeplitz_symbol};

fn main() -> schurlab::Result<()> {
    let l = Lattice::sampled(96, 1.0 / 16.0)?;
    let m = toeplitz_symbol(&l, |t| C64::from(t[0].sin()))?;
    let hms = hms_norm(&m)?;
    for t in &hms.terms {
        println!(
            "γ = {:?}: x {:.4} y {:.4} term {:.4}",
            t.gamma.exponents(),
            t.x_part,
            t.y_part,
            t.value
        );
    }
    println!("HMS total {:.4}", hms.total);

    for s in hms_sobolev_scales(&m, SobolevParams::default_for(1), -1..=1)? {
        println!(
            "scale {:>2}: x windows {:.4}, y windows {:.4}",
            s.j, s.x_windows, s.y_windows
        );
    }

    let z = Lattice::cyclic(16)?;
    let d = toeplitz_symbol(&z, |t| C64::from(ScalarFn::Sign.eval(t[0])))?;
    println!(
        "HMS_Δ of sign(j - k) on Z_16: {:.4}",
        hms_delta_norm(&d)?.total
    );

    let fine = Lattice::sampled(256, 1.0 / 64.0)?;
    let a = alpha_divided_difference(&fine, |x| x.abs().sqrt(), 0.5)?;
    for k in [1, 2, 4, 8] {
        let s = k as f64 * fine.spacing();
        println!(
            "ω({s:.4}) = {:.5}",
            holder_modulus(&a, 2.0, 0, s, Variable::X)?
        );
    }
    Ok(())
}
