//! Sobolev norms of dyadic symbol windows on a padded torus.

use std::cell::RefCell;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use super::Variable;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, Topology};
use crate::linalg::{self, C64, ZERO};
use crate::lp::psi0;
use crate::symbol::SymbolGrid;

/// Period of the padded torus along each axis.
pub const TORUS_PERIOD: f64 = 8.0;

const SUPPORT_RADIUS: f64 = 2.5;
const LEAKAGE_LIMIT: f64 = 1e-8;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plans(len: usize) -> (std::sync::Arc<dyn Fft<f64>>, std::sync::Arc<dyn Fft<f64>>) {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        (p.plan_fft_forward(len), p.plan_fft_inverse(len))
    })
}

/// `(q, σ)` of the Bessel-potential space `W_{qσ}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SobolevParams {
    pub q: f64,
    pub sigma: f64,
}

impl SobolevParams {
    pub fn new(q: f64, sigma: f64) -> Result<Self> {
        if !(q >= 2.0 && q.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "Sobolev exponent q = {q} must be >= 2"
            )));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "smoothness sigma = {sigma} must be positive"
            )));
        }
        Ok(SobolevParams { q, sigma })
    }

    /// `q = 2` and `σ = n/2 + 1/2`.
    pub fn default_for(dimension: usize) -> Self {
        SobolevParams {
            q: 2.0,
            sigma: default_sigma(dimension),
        }
    }
}

/// `n/2 + 1/2`.
pub fn default_sigma(dimension: usize) -> f64 {
    dimension as f64 / 2.0 + 0.5
}

/// Samples of a function on the torus `[-4, 4)^n` with `L` points per axis;
/// point `m` sits at `(m - L/2) · 8/L`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusGrid {
    dimension: usize,
    points: usize,
    values: Vec<C64>,
}

impl TorusGrid {
    pub fn new(dimension: usize, points: usize, values: Vec<C64>) -> Result<Self> {
        if !(1..=2).contains(&dimension) {
            return Err(Error::SizeGuard(format!(
                "torus dimension {dimension} not supported"
            )));
        }
        if points < 2 || !points.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "torus needs an even number of points per axis, got {points}"
            )));
        }
        if values.len() != points.pow(dimension as u32) {
            return Err(Error::InvalidArgument(format!(
                "torus of {points}^{dimension} points given {} values",
                values.len()
            )));
        }
        Ok(TorusGrid {
            dimension,
            points,
            values,
        })
    }

    /// Sample `f` at every torus point (coordinates passed as a slice of length `n`).
    pub fn from_fn(dimension: usize, points: usize, f: impl Fn(&[f64]) -> C64) -> Result<Self> {
        let d = Self::step_for(points);
        let coord = |m: usize| (m as f64 - (points / 2) as f64) * d;
        let values = match dimension {
            1 => (0..points).map(|m| f(&[coord(m)])).collect(),
            _ => (0..points * points)
                .map(|k| f(&[coord(k / points), coord(k % points)]))
                .collect(),
        };
        Self::new(dimension, points, values)
    }

    fn step_for(points: usize) -> f64 {
        TORUS_PERIOD / points as f64
    }

    pub fn step(&self) -> f64 {
        Self::step_for(self.points)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    fn coordinate(&self, m: usize) -> f64 {
        (m as f64 - (self.points / 2) as f64) * self.step()
    }

    /// `∫ |g|` over the part of the torus outside `[-2.5, 2.5]^n`.
    pub fn leakage(&self) -> f64 {
        let l = self.points;
        let cell = self.step().powi(self.dimension as i32);
        let mut mass = Vec::new();
        for (k, v) in self.values.iter().enumerate() {
            let outside = match self.dimension {
                1 => self.coordinate(k).abs() > SUPPORT_RADIUS,
                _ => {
                    self.coordinate(k / l).abs() > SUPPORT_RADIUS
                        || self.coordinate(k % l).abs() > SUPPORT_RADIUS
                }
            };
            if outside {
                mass.push(v.norm() * cell);
            }
        }
        linalg::pairwise_sum(&mass)
    }

    /// Angular frequency of DFT bin `k`.
    fn frequency(&self, k: usize) -> f64 {
        let l = self.points as i64;
        let signed = if (k as i64) <= l / 2 {
            k as i64
        } else {
            k as i64 - l
        };
        2.0 * std::f64::consts::PI * signed as f64 / TORUS_PERIOD
    }

    /// Unnormalised forward DFT (rows then columns in two dimensions).
    pub fn spectrum(&self) -> Vec<C64> {
        let mut data = self.values.clone();
        transform(&mut data, self.points, self.dimension, true);
        data
    }
}

fn transform(data: &mut [C64], l: usize, dimension: usize, forward: bool) {
    let (fwd, inv) = plans(l);
    let plan = if forward { fwd } else { inv };
    if dimension == 1 {
        plan.process(data);
        return;
    }
    for row in data.chunks_mut(l) {
        plan.process(row);
    }
    let mut column = vec![ZERO; l];
    for c in 0..l {
        for r in 0..l {
            column[r] = data[r * l + c];
        }
        plan.process(&mut column);
        for r in 0..l {
            data[r * l + c] = column[r];
        }
    }
}

/// `‖(1 - Δ)^{σ/2} g‖_{L_q}`: Bessel multiplier `(1 + |ξ|²)^{σ/2}` applied by DFT on
/// the torus, followed by a Riemann sum for the `L_q` norm.
pub fn sobolev_window_norm(g: &TorusGrid, params: SobolevParams) -> Result<f64> {
    let mass = g.leakage();
    if mass > LEAKAGE_LIMIT {
        return Err(Error::SupportLeakage { mass });
    }
    let l = g.points;
    let mut data = g.spectrum();
    for (k, v) in data.iter_mut().enumerate() {
        let xi2 = match g.dimension {
            1 => g.frequency(k).powi(2),
            _ => g.frequency(k / l).powi(2) + g.frequency(k % l).powi(2),
        };
        *v *= (1.0 + xi2).powf(params.sigma / 2.0);
    }
    transform(&mut data, l, g.dimension, false);
    let total = data.len() as f64;
    let cell = g.step().powi(g.dimension as i32);
    let moduli: Vec<f64> = data.iter().map(|v| v.norm() / total).collect();
    let top = moduli.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return Ok(0.0);
    }
    let terms: Vec<f64> = moduli
        .iter()
        .map(|m| (m / top).powf(params.q) * cell)
        .collect();
    Ok(top * linalg::pairwise_sum(&terms).powf(1.0 / params.q))
}

/// Dyadic scale `j` resolved on the native grid: torus size and window reach.
struct Scale {
    points: usize,
    half: i64,
}

fn scale(lattice: &Lattice, j: i32) -> Result<Scale> {
    let exact = TORUS_PERIOD * 2f64.powi(j) / lattice.spacing();
    let points = exact.round();
    if (exact - points).abs() > 1e-9 * exact.max(1.0)
        || points < 4.0
        || !(points as usize).is_multiple_of(4)
    {
        return Err(Error::Unresolvable(format!(
            "scale 2^{j} needs window spacing 2^{}·h; the period-8 torus would hold {exact} points",
            -j
        )));
    }
    let points = points as usize;
    let half = (points / 4) as i64;
    if half > lattice.half_width() as i64 {
        return Err(Error::Unresolvable(format!(
            "scale 2^{j}: window reaches {half} steps but the grid half-width is {}",
            lattice.half_width()
        )));
    }
    Ok(Scale { points, half })
}

/// Window offsets `m'` with `|m'|_∞ <= half`, with their torus position and `ψ(m' d)`.
fn window_offsets(dimension: usize, sc: &Scale, d: f64) -> Vec<([i64; 2], usize, f64)> {
    let l = sc.points as i64;
    let centre = l / 2;
    let mut out = Vec::new();
    let range = -sc.half..=sc.half;
    match dimension {
        1 => {
            for a in range {
                let w = psi0((a as f64 * d).abs());
                if w != 0.0 {
                    out.push(([a, 0], (centre + a) as usize, w));
                }
            }
        }
        _ => {
            for a in range.clone() {
                for b in range.clone() {
                    let w = psi0((a as f64 * d).hypot(b as f64 * d));
                    if w != 0.0 {
                        out.push(([a, b], ((centre + a) * l + centre + b) as usize, w));
                    }
                }
            }
        }
    }
    out
}

fn usable_bases(lattice: &Lattice, reach: i64) -> Vec<usize> {
    let limit = lattice.half_width() as i64 - reach;
    (0..lattice.len())
        .filter(|&i| {
            let p = lattice.point(i);
            p[..lattice.dimension()].iter().all(|c| c.abs() <= limit)
        })
        .collect()
}

fn require_box(m: &SymbolGrid) -> Result<()> {
    match m.lattice().topology() {
        Topology::Cyclic => Err(Error::InvalidArgument(
            "Sobolev windows need an integer lattice or sampled box".into(),
        )),
        _ => Ok(()),
    }
}

/// Per-scale suprema of the two window families.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SobolevScale {
    pub j: i32,
    /// `sup_y ‖ψ(· - y) M(2^j ·, 2^j y)‖_{W_{qσ}}`.
    pub x_windows: f64,
    /// `sup_x ‖ψ(x - ·) M(2^j x, 2^j ·)‖_{W_{qσ}}`.
    pub y_windows: f64,
}

/// `⌊M⌋_{HMS_{qσ}} = sup_j sup_{x,y} ‖ψ(·-y) M(2^j·, 2^j y)‖_{W_{qσ}} + ‖ψ(x-·) M(2^j x, 2^j·)‖_{W_{qσ}}`.
///
/// Scale `j` is evaluated with window spacing `2^{-j} h`, so the rescaled symbol
/// is read off the grid without interpolation; the period-8 torus must then
/// hold an integer number of points (a multiple of 4). Suprema run over base
/// points whose whole window fits in the grid.
pub fn hms_sobolev_norm(
    m: &SymbolGrid,
    params: SobolevParams,
    j_range: RangeInclusive<i32>,
) -> Result<f64> {
    let scales = hms_sobolev_scales(m, params, j_range)?;
    Ok(scales
        .iter()
        .map(|s| s.x_windows + s.y_windows)
        .fold(0.0, f64::max))
}

/// The per-scale pieces of [`hms_sobolev_norm`].
pub fn hms_sobolev_scales(
    m: &SymbolGrid,
    params: SobolevParams,
    j_range: RangeInclusive<i32>,
) -> Result<Vec<SobolevScale>> {
    require_box(m)?;
    let lattice = m.lattice();
    let n = lattice.dimension();
    let mut out = Vec::new();
    for j in j_range {
        let sc = scale(lattice, j)?;
        let d = 2f64.powi(-j) * lattice.spacing();
        let offsets = window_offsets(n, &sc, d);
        let bases = usable_bases(lattice, sc.half);
        let window = |base: usize, variable: Variable| -> Result<f64> {
            let b = lattice.point(base);
            let mut values = vec![ZERO; sc.points.pow(n as u32)];
            for (off, slot, w) in &offsets {
                let moved = lattice
                    .index_of([b[0] + off[0], b[1] + off[1]])
                    .expect("window inside grid");
                let v = match variable {
                    Variable::X => m.get(moved, base),
                    Variable::Y => m.get(base, moved),
                };
                values[*slot] = v * *w;
            }
            sobolev_window_norm(&TorusGrid::new(n, sc.points, values)?, params)
        };
        let sup = |variable: Variable| -> Result<f64> {
            let norms: Vec<Result<f64>> = bases.par_iter().map(|&b| window(b, variable)).collect();
            let mut best = 0.0f64;
            for v in norms {
                best = best.max(v?);
            }
            Ok(best)
        };
        out.push(SobolevScale {
            j,
            x_windows: sup(Variable::X)?,
            y_windows: sup(Variable::Y)?,
        });
    }
    Ok(out)
}

/// Hölder modulus `ω(s) = sup ‖Ψ_{M,j}(· + s, y) - Ψ_{M,j}(·, y)‖_{L_q}` over the
/// frozen variable (`variable = X` shifts `x` with `y` frozen; `Y` the reverse),
/// where `Ψ_{M,j}(x, y) = ψ(x - y) M(2^j x, 2^j y)`. One dimension only; `s`
/// must be a multiple of the window spacing `2^{-j} h`.
pub fn holder_modulus(m: &SymbolGrid, q: f64, j: i32, s: f64, variable: Variable) -> Result<f64> {
    require_box(m)?;
    let lattice = m.lattice();
    if lattice.dimension() != 1 {
        return Err(Error::InvalidArgument(
            "Hölder moduli are one-dimensional".into(),
        ));
    }
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "exponent q = {q} must be >= 1"
        )));
    }
    let d = 2f64.powi(-j) * lattice.spacing();
    let steps = s / d;
    let k = steps.round();
    if (steps - k).abs() > 1e-9 * steps.abs().max(1.0) {
        return Err(Error::InvalidArgument(format!(
            "shift {s} is not a multiple of the window spacing {d}"
        )));
    }
    let k = k as i64;
    if k == 0 {
        return Ok(0.0);
    }
    let half = (2.0 / d + 1e-9).floor() as i64;
    let reach = half + k.abs();
    let bases = usable_bases(lattice, reach);
    if bases.is_empty() {
        return Err(Error::Unresolvable(format!(
            "shifted window of reach {reach} steps does not fit a grid of half-width {}",
            lattice.half_width()
        )));
    }
    let (lo, hi) = (-half - k.max(0), half - k.min(0));
    let modulus = |base: usize| -> f64 {
        let b = lattice.point(base)[0];
        let psi_at = |o: i64| -> C64 {
            if o.abs() > half {
                return ZERO;
            }
            let w = psi0((o as f64 * d).abs());
            if w == 0.0 {
                return ZERO;
            }
            let moved = lattice.index_of([b + o, 0]).expect("window inside grid");
            let v = match variable {
                Variable::X => m.get(moved, base),
                Variable::Y => m.get(base, moved),
            };
            v * w
        };
        let terms: Vec<f64> = (lo..=hi)
            .map(|o| (psi_at(o + k) - psi_at(o)).norm().powf(q) * d)
            .collect();
        linalg::pairwise_sum(&terms).powf(1.0 / q)
    };
    let values: Vec<f64> = bases.par_iter().map(|&b| modulus(b)).collect();
    Ok(values.into_iter().fold(0.0, f64::max))
}
