//! Run a small divided-difference sweep and print the report as CSV.

use schurlab::sweep::{run_sweep, ExperimentConfig};

fn main() -> schurlab::Result<()> {
    let config = ExperimentConfig::from_json(
        r#"{
            "family": "divided_difference",
            "family_params": {"f": "abs,sin"},
            "p_list": [1.5, 2, 4, "inf"],
            "sizes": [{"N": 8, "h": 0.5}, {"N": 16, "h": 0.25}],
            "estimator": {"restarts": 4, "iterations": 50, "seed": 1},
            "norms": ["hms"]
        }"#,
    )?;
    let report = run_sweep(&config)?;
    print!("{}", report.to_csv());
    Ok(())
}
