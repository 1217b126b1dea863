//! Save and reload symbols in the binary and JSON layouts.

use schurlab::catalogue::ScalarFn;
use schurlab::io::{load_symbol, symbol_from_json, symbol_to_bytes, symbol_to_json, write_bytes};
use schurlab::lattice::Lattice;
use schurlab::symbol::{central_slope, divided_difference};

fn main() -> schurlab::Result<()> {
    let l = Lattice::sampled(4, 0.5)?;
    let f = |x: f64| ScalarFn::Softplus.eval(x);
    let m = divided_difference(&l, f, central_slope(f, l.spacing()))?.relabel("softplus");

    let bytes = symbol_to_bytes(&m);
    println!(
        "binary: {} bytes, magic {:?}",
        bytes.len(),
        std::str::from_utf8(&bytes[..4]).unwrap_or("?")
    );
    let path = std::env::temp_dir().join("schurlab_softplus.bin");
    write_bytes(&path, &bytes)?;
    let back = load_symbol(&path)?;
    println!(
        "reloaded {} from {}: equal = {}",
        back.label(),
        path.display(),
        back == m
    );

    let json = symbol_to_json(&m);
    println!(
        "json: {} characters, equal = {}",
        json.len(),
        symbol_from_json(&json)? == m
    );
    Ok(())
}
