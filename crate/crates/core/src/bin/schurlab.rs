use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use schurlab::bmo::{bmo_norm, BallFamily};
use schurlab::estimate::{
    op_norm_infty_ascent, op_norm_infty_haagerup, op_norm_lower_bound,
    op_norm_lower_bound_amplified, op_norm_p2,
};
use schurlab::field::MatrixField;
use schurlab::hms::{hms_delta_norm, hms_norm_with, hms_sobolev_norm, SobolevParams, Stencil};
use schurlab::io::{load_operator, load_symbol};
use schurlab::lattice::Lattice;
use schurlab::lp::{
    lp_decompose, overlap_count, partition_sum_check, rc_split_upper, reconstruction_residual,
    square_function_norm, symbol_partition, PartitionFamily, PartitionKind,
};
use schurlab::schatten::SchattenExponent;
use schurlab::sweep::{emit_report, run_sweep, ExperimentConfig, ReportFormat};
use schurlab::symbol::{MatrixOperator, SymbolGrid};
use schurlab::twist::{
    column_square_bound_check, l2_bound_check, verify_intertwining, TwistedMultiplier,
};
use schurlab::{Error, Result};

const HAAGERUP_POINTS: usize = 65;

#[derive(Parser)]
#[command(
    name = "schurlab",
    version,
    about = "Schur multiplier experiments on finite grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON experiment config (sweep) or symbol source (norm, hms, haagerup).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed for random inputs and estimator restarts (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum StencilArg {
    Central,
    Forward,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Annuli,
    Corona,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate ‖S_M : S_p → S_p‖ for one symbol.
    Norm {
        #[arg(long)]
        symbol: Option<PathBuf>,
        /// Comma-separated exponents ("inf" allowed); defaults to the config's p_list.
        #[arg(long, value_delimiter = ',')]
        p: Vec<String>,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 200)]
        iterations: usize,
        #[arg(long, default_value_t = 1)]
        amplify: usize,
    },
    /// Regularity norms of a symbol.
    Hms {
        #[arg(long)]
        symbol: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "central")]
        stencil: StencilArg,
        /// Also compute HMS_Δ (integer or cyclic lattices).
        #[arg(long)]
        delta: bool,
        /// Sobolev scale range "j_min,j_max".
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        sobolev_scales: Option<Vec<i32>>,
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        #[arg(long)]
        sigma: Option<f64>,
    },
    /// Matrix BMO seminorms over the standard ball family on Z_N.
    Bmo {
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// N for a random matrix on Z_N.
        #[arg(long, default_value_t = 16)]
        size: usize,
    },
    /// Check the intertwining identities and the twisted multiplier bounds.
    TwistVerify {
        #[arg(long)]
        symbol: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        size: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Littlewood-Paley decomposition of a matrix on {-N..N}.
    Lp {
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        size: usize,
        #[arg(long, value_enum, default_value = "corona")]
        kind: KindArg,
        #[arg(long, default_value = "4")]
        p: String,
        #[arg(long, default_value_t = 4)]
        sweeps: usize,
    },
    /// Run an experiment config and write the report.
    Sweep,
    /// Solve the p = ∞ factorization problem.
    Haagerup {
        #[arg(long)]
        symbol: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn symbols(cli: &Cli, path: &Option<PathBuf>) -> Result<Vec<(String, SymbolGrid)>> {
    match (path, &cli.config) {
        (Some(p), _) => Ok(vec![(p.display().to_string(), load_symbol(p)?)]),
        (None, Some(c)) => Ok(ExperimentConfig::load(c)?
            .symbols()?
            .into_iter()
            .map(|s| {
                let params: Vec<String> =
                    s.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                (
                    format!("N={};h={};{}", s.size.n, s.size.h, params.join(";")),
                    s.symbol,
                )
            })
            .collect()),
        (None, None) => Err(invalid("give --symbol or --config")),
    }
}

fn rng(cli: &Cli) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cli.seed.unwrap_or(0))
}

fn json_only(cli: &Cli) -> Result<()> {
    match cli.format {
        Format::Json => Ok(()),
        Format::Csv => Err(invalid("CSV output is only available for sweep")),
    }
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io {
            path: p.clone(),
            source: e,
        }),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Io {
                path: PathBuf::from("<stdout>"),
                source: e,
            }),
            _ => Ok(()),
        },
    }
}

fn parse_p(s: &str) -> Result<SchattenExponent> {
    s.parse()
}

fn norm_cmd(
    cli: &Cli,
    symbol: &Option<PathBuf>,
    p: &[String],
    restarts: usize,
    iterations: usize,
    amplify: usize,
) -> Result<Value> {
    let config = cli
        .config
        .as_deref()
        .map(ExperimentConfig::load)
        .transpose()?;
    let ps: Vec<SchattenExponent> = if p.is_empty() {
        config
            .as_ref()
            .map(|c| c.p_list.clone())
            .ok_or_else(|| invalid("give --p or a config with p_list"))?
    } else {
        p.iter().map(|s| parse_p(s)).collect::<Result<_>>()?
    };
    let (restarts, iterations, seed, amplify) = match (&config, symbol) {
        (Some(c), None) => (
            c.estimator.restarts,
            c.estimator.iterations,
            cli.seed.unwrap_or(c.estimator.seed),
            c.estimator.amplification,
        ),
        _ => (restarts, iterations, cli.seed.unwrap_or(0), amplify),
    };
    let mut rows = Vec::new();
    for (source, m) in symbols(cli, symbol)? {
        for &p in &ps {
            let est = match p {
                SchattenExponent::Infinity if m.len() <= HAAGERUP_POINTS => {
                    op_norm_infty_haagerup(&m, 1e-6)?.estimate
                }
                SchattenExponent::Infinity => op_norm_infty_ascent(&m, restarts, iterations, seed)?,
                SchattenExponent::Finite(2.0) => op_norm_p2(&m),
                _ if amplify > 1 => {
                    op_norm_lower_bound_amplified(&m, p, amplify, restarts, iterations, seed)?
                }
                _ => op_norm_lower_bound(&m, p, restarts, iterations, seed)?,
            };
            rows.push(json!({ "source": source, "label": m.label(), "estimate": est }));
        }
    }
    Ok(Value::Array(rows))
}

fn hms_cmd(
    cli: &Cli,
    symbol: &Option<PathBuf>,
    stencil: StencilArg,
    delta: bool,
    scales: &Option<Vec<i32>>,
    q: f64,
    sigma: Option<f64>,
) -> Result<Value> {
    let stencil = match stencil {
        StencilArg::Central => Stencil::Central,
        StencilArg::Forward => Stencil::Forward,
    };
    let mut rows = Vec::new();
    for (source, m) in symbols(cli, symbol)? {
        let mut row =
            json!({ "source": source, "label": m.label(), "hms": hms_norm_with(&m, stencil)? });
        if delta {
            row["hms_delta"] = serde_json::to_value(hms_delta_norm(&m)?).expect("JSON");
        }
        if let Some(s) = scales {
            if s.len() != 2 || s[0] > s[1] {
                return Err(invalid("--sobolev-scales takes j_min,j_max"));
            }
            let n = m.lattice().dimension();
            let params = SobolevParams::new(q, sigma.unwrap_or(schurlab::hms::default_sigma(n)))?;
            row["hms_sobolev"] = json!(hms_sobolev_norm(&m, params, s[0]..=s[1])?);
        }
        rows.push(row);
    }
    Ok(Value::Array(rows))
}

fn matrix_or_random(
    cli: &Cli,
    matrix: &Option<PathBuf>,
    lattice: Lattice,
) -> Result<MatrixOperator> {
    match matrix {
        Some(p) => load_operator(p),
        None => MatrixOperator::random(&lattice, &mut rng(cli)),
    }
}

fn bmo_cmd(cli: &Cli, matrix: &Option<PathBuf>, size: usize) -> Result<Value> {
    let a = matrix_or_random(cli, matrix, Lattice::cyclic(size)?)?;
    let family = BallFamily::standard(a.lattice())?;
    let norms = bmo_norm(&a, &family)?;
    Ok(json!({ "label": a.label(), "balls": family.len(), "bmo": norms }))
}

fn twist_cmd(cli: &Cli, symbol: &Option<PathBuf>, size: usize, trials: usize) -> Result<Value> {
    let mut rng = rng(cli);
    let m = match symbol {
        Some(p) => load_symbol(p)?,
        None => SymbolGrid::random(&Lattice::cyclic(size)?, &mut rng)?,
    };
    let l = m.lattice().clone();
    let (tc, tr) = (TwistedMultiplier::column(&m)?, TwistedMultiplier::row(&m)?);
    let (mut worst, mut violations) = (0.0f64, 0usize);
    for _ in 0..trials {
        let a = MatrixOperator::random(&l, &mut rng)?;
        let r = verify_intertwining(&m, &a)?;
        worst = worst.max(r.max() / r.scale);
        let f = MatrixField::random(&l, &l, &mut rng)?;
        for check in [
            l2_bound_check(&tc, &f)?,
            l2_bound_check(&tr, &f)?,
            column_square_bound_check(&tc, &f)?,
        ] {
            violations += usize::from(!check.holds(1e-9));
        }
    }
    Ok(json!({
        "label": m.label(),
        "N": l.len(),
        "trials": trials,
        "max_relative_residual": worst,
        "bound_violations": violations,
    }))
}

fn lp_cmd(
    cli: &Cli,
    matrix: &Option<PathBuf>,
    size: usize,
    kind: KindArg,
    p: &str,
    sweeps: usize,
) -> Result<Value> {
    let a = matrix_or_random(cli, matrix, Lattice::integer(size)?)?;
    let lattice = a.lattice().clone();
    let kind = match kind {
        KindArg::Annuli => PartitionKind::ToeplitzAnnuli,
        KindArg::Corona => PartitionKind::Corona,
    };
    let family = PartitionFamily::covering(kind, &lattice)?;
    let samples: Vec<Vec<f64>> = (0..=400)
        .map(|i| {
            vec![2f64.powf(
                family.j_min as f64 + (family.j_max - family.j_min) as f64 * i as f64 / 400.0,
            )]
        })
        .collect();
    let check = partition_sum_check(&family, &samples);
    let parts = symbol_partition(&family, &lattice)?;
    let pieces = lp_decompose(&a, &parts)?;
    let (residual, uncovered) = reconstruction_residual(&a, &pieces, &family)?;
    let p = parse_p(p)?;
    let mut out = json!({
        "label": a.label(),
        "kind": format!("{:?}", family.kind),
        "scales": [family.j_min, family.j_max],
        "partition_check": check,
        "overlap": overlap_count(&parts),
        "residual": residual,
        "uncovered_pairs": uncovered,
        "p": p,
    });
    if p.value() >= 2.0 {
        out["square_function"] = json!(square_function_norm(&pieces, p)?);
    } else {
        out["rc_split_upper"] =
            serde_json::to_value(rc_split_upper(&pieces, p, sweeps)?).expect("JSON");
    }
    Ok(out)
}

fn sweep_cmd(cli: &Cli) -> Result<()> {
    let path = cli
        .config
        .as_deref()
        .ok_or_else(|| invalid("sweep needs --config"))?;
    let mut config = ExperimentConfig::load(path)?;
    if let Some(s) = cli.seed {
        config.estimator.seed = s;
    }
    let report = run_sweep(&config)?;
    let format = match cli.format {
        Format::Csv => ReportFormat::Csv,
        Format::Json => ReportFormat::Json,
    };
    match &cli.out {
        Some(out) => emit_report(&report, format, out),
        None => write_out(
            &None,
            &match format {
                ReportFormat::Csv => report.to_csv(),
                ReportFormat::Json => report.to_json(),
            },
        ),
    }
}

fn haagerup_cmd(cli: &Cli, symbol: &Option<PathBuf>, tolerance: f64) -> Result<Value> {
    let mut rows = Vec::new();
    for (source, m) in symbols(cli, symbol)? {
        let sol = op_norm_infty_haagerup(&m, tolerance)?;
        rows.push(json!({ "source": source, "label": m.label(), "solution": sol }));
    }
    Ok(Value::Array(rows))
}

fn run(cli: &Cli) -> Result<()> {
    if let Command::Sweep = cli.command {
        return sweep_cmd(cli);
    }
    json_only(cli)?;
    let value = match &cli.command {
        Command::Sweep => unreachable!(),
        Command::Norm {
            symbol,
            p,
            restarts,
            iterations,
            amplify,
        } => norm_cmd(cli, symbol, p, *restarts, *iterations, *amplify),
        Command::Hms {
            symbol,
            stencil,
            delta,
            sobolev_scales,
            q,
            sigma,
        } => hms_cmd(cli, symbol, *stencil, *delta, sobolev_scales, *q, *sigma),
        Command::Bmo { matrix, size } => bmo_cmd(cli, matrix, *size),
        Command::TwistVerify {
            symbol,
            size,
            trials,
        } => twist_cmd(cli, symbol, *size, *trials),
        Command::Lp {
            matrix,
            size,
            kind,
            p,
            sweeps,
        } => lp_cmd(cli, matrix, *size, *kind, p, *sweeps),
        Command::Haagerup { symbol, tolerance } => haagerup_cmd(cli, symbol, *tolerance),
    }?;
    write_out(
        &cli.out,
        &serde_json::to_string_pretty(&value).expect("JSON"),
    )
}

fn exit_code(e: &Error) -> u8 {
    if e.is_numerical() {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| invalid(format!("thread pool: {e}")))
            .and_then(|pool| pool.install(|| run(&cli))),
        None => run(&cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
