//! `‖S_M : S_∞ → S_∞‖` through the Grothendieck–Haagerup factorization
//! `M(x, y) = ⟨u_x, w_y⟩`.
//!
//! The value is the minimal `t` with `[[R, M], [M*, C]] ⪰ 0`, `diag R, diag C <= t`.
//! Its dual is the concave maximization of
//! `g(α, β) = ‖D_α^{1/2} M D_β^{1/2}‖_{S_1}` over pairs of probability vectors,
//! solved by the diagonal-scaling fixed point `α_x ← |K*|_xx / g`,
//! `β_y ← |K|_yy / g` with `K = D_α^{1/2} M D_β^{1/2}`. Every iterate gives a
//! certified lower bound `g` and an exact factorization whose bound is an upper bound.

use serde::{Deserialize, Serialize};

use super::{EstimateKind, NormEstimate};
use crate::error::{Error, Result};
use crate::linalg::{self, C64, ZERO};
use crate::schatten::SchattenExponent;
use crate::symbol::SymbolGrid;

/// Iteration cap for the scaling fixed point.
pub const ITERATION_CAP: usize = 5000;

/// Smallest relative weight kept on a row or column.
const WEIGHT_FLOOR: f64 = 1e-12;

/// Vectors with `⟨u_x, w_y⟩ = M(x, y)`; `⟨u, w⟩ = Σ u_l conj(w_l)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorizationWitness {
    pub dimension: usize,
    pub row_vectors: Vec<Vec<C64>>,
    pub col_vectors: Vec<Vec<C64>>,
    /// `sup ‖u_x‖ · sup ‖w_y‖`.
    pub bound: f64,
    /// `max |⟨u_x, w_y⟩ - M(x, y)|`.
    pub residual: f64,
}

/// The bracket after one scaling step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HaagerupStep {
    pub iteration: usize,
    /// `g(α, β)` at this step.
    pub dual_value: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HaagerupSolution {
    /// Certified upper bound (the witness bound).
    pub estimate: NormEstimate,
    pub witness: FactorizationWitness,
    /// Certified lower bound `max(sup |M|, max g)`.
    pub lower: f64,
    /// Row and column weights `α`, `β` attaining `lower`.
    pub row_weights: Vec<f64>,
    pub col_weights: Vec<f64>,
    /// True when the bracket closed to within the tolerance.
    pub converged: bool,
    pub history: Vec<HaagerupStep>,
}

fn inner(u: &[C64], w: &[C64]) -> C64 {
    u.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

fn norm_sq(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Turn approximate factor vectors into an exact factorization: the defect
/// `E = M - ⟨u, w⟩` is absorbed by `u'_x = (u_x, E_x / ε)`, `w'_y = (w_y, ε e_y)`
/// with `ε` chosen to minimize the bound.
fn exact_witness(
    mut rows: Vec<Vec<C64>>,
    mut cols: Vec<Vec<C64>>,
    m: &SymbolGrid,
) -> FactorizationWitness {
    let k = m.len();
    let defect: Vec<Vec<C64>> = (0..k)
        .map(|x| {
            (0..k)
                .map(|y| m.get(x, y) - inner(&rows[x], &cols[y]))
                .collect()
        })
        .collect();
    let row_sq: Vec<f64> = rows.iter().map(|v| norm_sq(v)).collect();
    let max_col = cols.iter().map(|v| norm_sq(v)).fold(0.0, f64::max);
    let defect_sq: Vec<f64> = defect.iter().map(|v| norm_sq(v)).collect();
    if defect_sq.iter().any(|&d| d > 0.0) {
        let bound_at = |eps: f64| -> f64 {
            let u = (0..k)
                .map(|x| row_sq[x] + defect_sq[x] / (eps * eps))
                .fold(0.0, f64::max);
            u * (max_col + eps * eps)
        };
        let (mut eps, mut best) = (1.0, f64::INFINITY);
        for i in -160..=40 {
            let e = 10f64.powf(i as f64 / 10.0);
            if bound_at(e) < best {
                best = bound_at(e);
                eps = e;
            }
        }
        let (mut a, mut b) = (eps / 10f64.powf(0.1), eps * 10f64.powf(0.1));
        for _ in 0..60 {
            let (c, d) = (a + 0.382 * (b - a), a + 0.618 * (b - a));
            if bound_at(c) < bound_at(d) {
                b = d;
            } else {
                a = c;
            }
        }
        let e = 0.5 * (a + b);
        if bound_at(e) < best {
            eps = e;
        }
        for (x, v) in rows.iter_mut().enumerate() {
            v.extend(defect[x].iter().map(|d| d / eps));
        }
        for (y, v) in cols.iter_mut().enumerate() {
            v.extend((0..k).map(|j| if j == y { C64::from(eps) } else { ZERO }));
        }
    }
    let bound = rows.iter().map(|v| norm_sq(v)).fold(0.0, f64::max).sqrt()
        * cols.iter().map(|v| norm_sq(v)).fold(0.0, f64::max).sqrt();
    let mut residual = 0.0f64;
    for (x, u) in rows.iter().enumerate() {
        for (y, w) in cols.iter().enumerate() {
            residual = residual.max((inner(u, w) - m.get(x, y)).norm());
        }
    }
    FactorizationWitness {
        dimension: rows.first().map_or(0, Vec::len),
        row_vectors: rows,
        col_vectors: cols,
        bound,
        residual,
    }
}

/// Trivial factorization: `u_x` = row `x` of `M`, `w_y = e_y`, or the transpose.
fn trivial_witness(m: &SymbolGrid) -> FactorizationWitness {
    let k = m.len();
    let unit = |i: usize| -> Vec<C64> {
        (0..k)
            .map(|j| if i == j { linalg::ONE } else { ZERO })
            .collect()
    };
    let row_l2 = (0..k)
        .map(|x| (0..k).map(|y| m.get(x, y).norm_sqr()).sum::<f64>())
        .fold(0.0, f64::max);
    let col_l2 = (0..k)
        .map(|y| (0..k).map(|x| m.get(x, y).norm_sqr()).sum::<f64>())
        .fold(0.0, f64::max);
    let (rows, cols) = if row_l2 <= col_l2 {
        (
            (0..k)
                .map(|x| (0..k).map(|y| m.get(x, y)).collect())
                .collect(),
            (0..k).map(unit).collect(),
        )
    } else {
        (
            (0..k).map(unit).collect(),
            (0..k)
                .map(|y| (0..k).map(|x| m.get(x, y).conj()).collect())
                .collect(),
        )
    };
    exact_witness(rows, cols, m)
}

fn normalize_weights(d: &[f64], g: f64) -> Vec<f64> {
    let mut w: Vec<f64> = d.iter().map(|v| (v / g).max(WEIGHT_FLOOR)).collect();
    let total = linalg::pairwise_sum(&w);
    w.iter_mut().for_each(|v| *v /= total);
    w
}

/// Minimal `t` such that `[[R, M], [M*, C]]` is PSD with `diag R, diag C <= t`.
///
/// The reported value is the bound of an exact factorization witness, hence a
/// certified upper bound; `lower` is certified by the dual. `converged`
/// records whether the bracket closed within `tolerance`.
pub fn op_norm_infty_haagerup(m: &SymbolGrid, tolerance: f64) -> Result<HaagerupSolution> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tolerance} must be positive"
        )));
    }
    let context = m.label().to_string();
    let k = m.len();
    let estimate = |value: f64, trials: usize| NormEstimate {
        value,
        kind: EstimateKind::SdpCertified,
        p: SchattenExponent::Infinity,
        amplification_level: 1,
        trials,
        seed: 0,
    };
    let mut witness = trivial_witness(m);
    let mut upper = witness.bound;
    let mut lower = m.sup_abs();
    let uniform = vec![1.0 / k as f64; k];
    let (mut alpha, mut beta) = (uniform.clone(), uniform);
    let (mut best_alpha, mut best_beta) = (alpha.clone(), beta.clone());
    let mut history = Vec::new();
    if lower == 0.0 {
        return Ok(HaagerupSolution {
            estimate: estimate(0.0, 0),
            witness,
            lower: 0.0,
            row_weights: best_alpha,
            col_weights: best_beta,
            converged: true,
            history,
        });
    }

    for iteration in 1..=ITERATION_CAP {
        if upper - lower <= tolerance {
            break;
        }
        let ra: Vec<f64> = alpha.iter().map(|v| v.sqrt()).collect();
        let rb: Vec<f64> = beta.iter().map(|v| v.sqrt()).collect();
        let kmat = faer::Mat::from_fn(k, k, |x, y| m.get(x, y) * (ra[x] * rb[y]));
        let svd = linalg::svd(kmat.as_ref(), &context)?;
        let g = linalg::pairwise_sum(&svd.s);
        let r = svd.s.len();
        let dx: Vec<f64> = (0..k)
            .map(|x| (0..r).map(|l| svd.u[(x, l)].norm_sqr() * svd.s[l]).sum())
            .collect();
        let dy: Vec<f64> = (0..k)
            .map(|y| (0..r).map(|l| svd.v[(y, l)].norm_sqr() * svd.s[l]).sum())
            .collect();
        if g > lower {
            lower = g;
            best_alpha.clone_from(&alpha);
            best_beta.clone_from(&beta);
        }
        let root: Vec<f64> = svd.s.iter().map(|s| s.sqrt()).collect();
        let rows = (0..k)
            .map(|x| (0..r).map(|l| svd.u[(x, l)] * (root[l] / ra[x])).collect())
            .collect();
        let cols = (0..k)
            .map(|y| (0..r).map(|l| svd.v[(y, l)] * (root[l] / rb[y])).collect())
            .collect();
        let candidate = exact_witness(rows, cols, m);
        if candidate.bound < upper {
            upper = candidate.bound;
            witness = candidate;
        }
        history.push(HaagerupStep {
            iteration,
            dual_value: g,
            lower,
            upper,
        });
        if g == 0.0 {
            break;
        }
        alpha = normalize_weights(&dx, g);
        beta = normalize_weights(&dy, g);
    }
    let converged = upper - lower <= tolerance;
    Ok(HaagerupSolution {
        estimate: estimate(upper, history.len()),
        witness,
        lower,
        row_weights: best_alpha,
        col_weights: best_beta,
        converged,
        history,
    })
}
