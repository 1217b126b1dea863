//! Estimators for the Schur multiplier norm `‖S_M : S_p → S_p‖`.

mod haagerup;

use faer::Mat;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{self, C64};
use crate::schatten::{duality_map, schatten_norm_of, SchattenExponent};
use crate::symbol::SymbolGrid;

pub use haagerup::{op_norm_infty_haagerup, FactorizationWitness, HaagerupSolution, HaagerupStep};

pub const DEFAULT_RESTARTS: usize = 32;
pub const DEFAULT_ITERATIONS: usize = 200;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Relative improvement below which an ascent run stops early.
const ASCENT_STALL: f64 = 1e-12;

/// Largest amplified symbol (point count times level) accepted by [`amplify`].
pub const AMPLIFY_LIMIT: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    Exact,
    LowerBound,
    SdpCertified,
}

/// A value for `‖S_M : S_p → S_p‖` together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub kind: EstimateKind,
    pub p: SchattenExponent,
    pub amplification_level: usize,
    pub trials: usize,
    pub seed: u64,
}

/// `‖S_M : S_2 → S_2‖ = sup |M|`.
pub fn op_norm_p2(m: &SymbolGrid) -> NormEstimate {
    NormEstimate {
        value: linalg::max_abs(m.values()),
        kind: EstimateKind::Exact,
        p: SchattenExponent::Finite(2.0),
        amplification_level: 1,
        trials: 0,
        seed: 0,
    }
}

/// Result of one ascent run: the best ratio found and the unit-norm input attaining it.
struct Ascent {
    value: f64,
    input: Mat<C64>,
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

fn normalized(a: Mat<C64>, p: SchattenExponent) -> Result<Option<Mat<C64>>> {
    let n = schatten_norm_of(a.as_ref(), p, "ascent start")?;
    if n == 0.0 || !n.is_finite() {
        return Ok(None);
    }
    Ok(Some(linalg::scale(a.as_ref(), 1.0 / n)))
}

/// Deterministic start for restart `k`: the matrix unit at an argmax of `|M|`,
/// then `M̄` itself, then complex Gaussian matrices from an independent stream.
fn start(m: &SymbolGrid, p: SchattenExponent, seed: u64, k: usize) -> Result<Mat<C64>> {
    let n = m.len();
    if k == 0 {
        let (x, y, _) = linalg::argmax_abs(m.values());
        let mut e = Mat::zeros(n, n);
        e[(x, y)] = linalg::ONE;
        return Ok(e);
    }
    if k == 1 {
        if let Some(a) = normalized(linalg::conj(m.values()), p)? {
            return Ok(a);
        }
    }
    let mut rng = restart_rng(seed, k);
    let g = linalg::random_gaussian(n, n, &mut rng);
    Ok(normalized(g, p)?.unwrap_or_else(|| Mat::zeros(n, n)))
}

/// Run the duality-map ascent `A ← Φ_{p'}(S_{M̄}(Φ_p(S_M(A))))` from a unit-norm start.
fn ascend(
    m: &SymbolGrid,
    mbar: &Mat<C64>,
    p: SchattenExponent,
    mut a: Mat<C64>,
    iterations: usize,
) -> Result<Ascent> {
    let context = m.label();
    let mut x = linalg::hadamard(m.values(), a.as_ref());
    let mut value = schatten_norm_of(x.as_ref(), p, context)?;
    let mut best = Ascent {
        value,
        input: a.clone(),
    };
    for _ in 0..iterations {
        let b = duality_map(x.as_ref(), p, context)?;
        let y = linalg::hadamard(mbar.as_ref(), b.as_ref());
        let next = duality_map(y.as_ref(), p.dual(), context)?;
        if linalg::frobenius(next.as_ref()) == 0.0 {
            break;
        }
        a = next;
        x = linalg::hadamard(m.values(), a.as_ref());
        let previous = value;
        value = schatten_norm_of(x.as_ref(), p, context)?;
        if value > best.value {
            best = Ascent {
                value,
                input: a.clone(),
            };
        }
        if value - previous <= ASCENT_STALL * previous.max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Ok(best)
}

fn search(
    m: &SymbolGrid,
    p: SchattenExponent,
    restarts: usize,
    iterations: usize,
    seed: u64,
    extra_start: Option<Mat<C64>>,
) -> Result<Ascent> {
    let mbar = linalg::conj(m.values());
    let runs: Vec<Result<Ascent>> = (0..restarts.max(1))
        .into_par_iter()
        .map(|k| ascend(m, &mbar, p, start(m, p, seed, k)?, iterations))
        .collect();
    let mut best: Option<Ascent> = None;
    let extra = extra_start
        .map(|a| ascend(m, &mbar, p, a, iterations))
        .into_iter();
    for run in extra.chain(runs) {
        let run = run?;
        if best.as_ref().is_none_or(|b| run.value > b.value) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one restart"))
}

/// Lower bound for `‖S_M : S_p → S_p‖`, `1 <= p < ∞`, by restarted duality-map ascent.
///
/// Restart 0 starts at the matrix unit on an argmax of `|M|`, so the result is
/// always at least `sup |M|`, and at `p = 2` equals it. Restarts are seeded
/// from independent streams of `seed`, so the value is the same for any
/// thread count, and adding restarts never lowers it.
pub fn op_norm_lower_bound(
    m: &SymbolGrid,
    p: SchattenExponent,
    restarts: usize,
    iterations: usize,
    seed: u64,
) -> Result<NormEstimate> {
    if p.is_infinite() {
        return Err(Error::Redirect(
            "p = inf is solved by op_norm_infty_haagerup (or op_norm_infty_ascent for a lower bound)"
                .into(),
        ));
    }
    let best = search(m, p, restarts, iterations, seed, None)?;
    Ok(NormEstimate {
        value: best.value,
        kind: EstimateKind::LowerBound,
        p,
        amplification_level: 1,
        trials: restarts.max(1),
        seed,
    })
}

/// Ascent lower bound at `p = ∞` (operator norm to operator norm).
pub fn op_norm_infty_ascent(
    m: &SymbolGrid,
    restarts: usize,
    iterations: usize,
    seed: u64,
) -> Result<NormEstimate> {
    let p = SchattenExponent::Infinity;
    let best = search(m, p, restarts, iterations, seed, None)?;
    Ok(NormEstimate {
        value: best.value,
        kind: EstimateKind::LowerBound,
        p,
        amplification_level: 1,
        trials: restarts.max(1),
        seed,
    })
}

/// `M ⊗ 1_level`: the symbol on the product index set `(x, a)`, `a < level`,
/// ordered `x * level + a`, constant on `level × level` blocks.
///
/// The product set is carried by a cyclic lattice of the right size; only the
/// point count is meaningful on the result.
pub fn amplify(m: &SymbolGrid, level: usize) -> Result<SymbolGrid> {
    if level == 0 {
        return Err(Error::InvalidArgument(
            "amplification level must be positive".into(),
        ));
    }
    if level == 1 {
        return Ok(m.clone());
    }
    let n = m.len();
    if n * level > AMPLIFY_LIMIT {
        return Err(Error::SizeGuard(format!(
            "amplified size {} exceeds {AMPLIFY_LIMIT}",
            n * level
        )));
    }
    let lattice = Lattice::cyclic(n * level)?;
    SymbolGrid::from_fn(&lattice, format!("{}(x){level}", m.label()), |i, j| {
        m.get(i / level, j / level)
    })
}

/// Lower bound for the `level`-amplified norm, a lower bound for the cb norm.
///
/// The best level-1 input, embedded as `A ⊗ E_11`, is one of the starts, so
/// the amplified value never falls below the level-1 value.
pub fn op_norm_lower_bound_amplified(
    m: &SymbolGrid,
    p: SchattenExponent,
    level: usize,
    restarts: usize,
    iterations: usize,
    seed: u64,
) -> Result<NormEstimate> {
    if p.is_infinite() {
        return Err(Error::Redirect(
            "p = inf is solved by op_norm_infty_haagerup".into(),
        ));
    }
    let big = amplify(m, level)?;
    let base = search(m, p, restarts, iterations, seed, None)?;
    let n = m.len();
    let embedded = Mat::from_fn(n * level, n * level, |i, j| {
        if i % level == 0 && j % level == 0 {
            base.input[(i / level, j / level)]
        } else {
            linalg::ZERO
        }
    });
    let best = search(&big, p, restarts, iterations, seed, Some(embedded))?;
    Ok(NormEstimate {
        value: best.value.max(base.value),
        kind: EstimateKind::LowerBound,
        p,
        amplification_level: level,
        trials: restarts.max(1),
        seed,
    })
}
