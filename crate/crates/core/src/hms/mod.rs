//! Regularity functionals of symbols: the HMS norm with finite-difference
//! derivatives, its discrete analogue `HMS_Δ`, the Sobolev HMS norm and the
//! Hölder moduli of the dyadic windows.

mod sobolev;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{hms_order, Lattice, MultiIndex, Topology};
use crate::linalg::{C64, ZERO};
use crate::symbol::SymbolGrid;

pub use sobolev::{
    default_sigma, hms_sobolev_norm, hms_sobolev_scales, holder_modulus, sobolev_window_norm,
    SobolevParams, SobolevScale, TorusGrid, TORUS_PERIOD,
};

/// Which argument of `M(x, y)` a derivative acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variable {
    X,
    Y,
}

/// First-order difference used for derivatives.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stencil {
    /// `(f(x + h) - f(x - h)) / 2h`.
    #[default]
    Central,
    /// `(f(x + h) - f(x)) / h`.
    Forward,
}

/// One multi-index worth of the HMS sum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HmsTerm {
    pub gamma: MultiIndex,
    /// `sup |x - y|^{|γ|} |∂_x^γ M|`.
    pub x_part: f64,
    /// `sup |x - y|^{|γ|} |∂_y^γ M|`.
    pub y_part: f64,
    /// `sup |x - y|^{|γ|} (|∂_x^γ M| + |∂_y^γ M|)`; for `γ = 0` this is `sup |M|`.
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HmsBreakdown {
    pub total: f64,
    pub terms: Vec<HmsTerm>,
}

impl HmsBreakdown {
    fn from_terms(terms: Vec<HmsTerm>) -> Self {
        HmsBreakdown {
            total: terms.iter().map(|t| t.value).sum(),
            terms,
        }
    }
}

/// Values on pairs with a validity mask, flattened as `x * len + y`.
struct Field {
    values: Vec<C64>,
    valid: Vec<bool>,
}

impl Field {
    fn of(m: &SymbolGrid) -> Field {
        let n = m.len();
        let mut values = Vec::with_capacity(n * n);
        let mut valid = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                values.push(m.get(x, y));
                valid.push(m.is_valid(x, y));
            }
        }
        Field { values, valid }
    }
}

/// Index of the neighbour `point ± e_axis`, or `None` off the lattice.
fn neighbour(lattice: &Lattice, index: usize, axis: usize, step: i64) -> Option<usize> {
    let mut p = lattice.point(index);
    p[axis] += step;
    lattice.index_of(p)
}

/// One first-order difference along `axis` of the chosen variable.
fn difference_once(
    lattice: &Lattice,
    field: &Field,
    variable: Variable,
    axis: usize,
    stencil: Stencil,
) -> Field {
    let n = lattice.len();
    let h = lattice.spacing();
    let mut values = vec![ZERO; n * n];
    let mut valid = vec![false; n * n];
    let at = |x: usize, y: usize| x * n + y;
    for x in 0..n {
        for y in 0..n {
            let moving = if variable == Variable::X { x } else { y };
            let place = |i: usize| {
                if variable == Variable::X {
                    at(i, y)
                } else {
                    at(x, i)
                }
            };
            let (ahead, behind, width) = match stencil {
                Stencil::Central => (
                    neighbour(lattice, moving, axis, 1),
                    neighbour(lattice, moving, axis, -1),
                    2.0 * h,
                ),
                Stencil::Forward => (neighbour(lattice, moving, axis, 1), Some(moving), h),
            };
            if let (Some(a), Some(b)) = (ahead, behind) {
                let (ka, kb) = (place(a), place(b));
                if field.valid[ka] && field.valid[kb] {
                    values[at(x, y)] = (field.values[ka] - field.values[kb]) / width;
                    valid[at(x, y)] = true;
                }
            }
        }
    }
    Field { values, valid }
}

fn derivative_field(
    m: &SymbolGrid,
    gamma: &MultiIndex,
    variable: Variable,
    stencil: Stencil,
) -> Result<Field> {
    let lattice = m.lattice();
    if gamma.dimension() != lattice.dimension() {
        return Err(Error::InvalidArgument(format!(
            "multi-index {:?} has dimension {}, lattice has {}",
            gamma.exponents(),
            gamma.dimension(),
            lattice.dimension()
        )));
    }
    let reach = match stencil {
        Stencil::Central => 2,
        Stencil::Forward => 1,
    };
    if gamma
        .exponents()
        .iter()
        .any(|&g| g * reach >= lattice.side())
    {
        return Err(Error::InvalidArgument(format!(
            "difference order {:?} exceeds lattice width {}",
            gamma.exponents(),
            lattice.side()
        )));
    }
    let mut field = Field::of(m);
    for (axis, &count) in gamma.exponents().iter().enumerate() {
        for _ in 0..count {
            field = difference_once(lattice, &field, variable, axis, stencil);
        }
    }
    Ok(field)
}

/// Iterated forward differences `Δ^γ` of `M` in one variable.
///
/// On cyclic lattices the differences wrap around; on finite boxes the valid
/// region shrinks by `γ_s` along each axis and the rest is masked out.
pub fn discrete_derivative(
    m: &SymbolGrid,
    gamma: &MultiIndex,
    variable: Variable,
) -> Result<SymbolGrid> {
    if m.lattice().topology() == Topology::SampledBox {
        return Err(Error::InvalidArgument(
            "discrete derivatives live on integer or cyclic lattices".into(),
        ));
    }
    finite_derivative(m, gamma, variable, Stencil::Forward)
}

/// Iterated finite-difference derivative of `M` with the given stencil.
pub fn finite_derivative(
    m: &SymbolGrid,
    gamma: &MultiIndex,
    variable: Variable,
    stencil: Stencil,
) -> Result<SymbolGrid> {
    let lattice = m.lattice();
    let n = lattice.len();
    let field = derivative_field(m, gamma, variable, stencil)?;
    let label = format!("d{variable:?}^{:?} {}", gamma.exponents(), m.label());
    let out = SymbolGrid::from_fn(lattice, label, |x, y| field.values[x * n + y])?;
    Ok(out.with_mask(field.valid))
}

fn hms_sum(m: &SymbolGrid, stencil: Stencil) -> Result<HmsBreakdown> {
    let lattice = m.lattice();
    let n = lattice.len();
    let order = hms_order(lattice.dimension());
    let mut terms = Vec::new();
    for gamma in MultiIndex::up_to(lattice.dimension(), order) {
        if gamma.order() == 0 {
            let sup = m.sup_abs();
            terms.push(HmsTerm {
                gamma,
                x_part: sup,
                y_part: sup,
                value: sup,
            });
            continue;
        }
        let dx = derivative_field(m, &gamma, Variable::X, stencil)?;
        let dy = derivative_field(m, &gamma, Variable::Y, stencil)?;
        let (mut x_part, mut y_part, mut value) = (0.0f64, 0.0f64, 0.0f64);
        for x in 0..n {
            for y in 0..n {
                let k = x * n + y;
                if !(dx.valid[k] && dy.valid[k]) {
                    continue;
                }
                let w = lattice.distance(x, y).powi(gamma.order() as i32);
                let (a, b) = (w * dx.values[k].norm(), w * dy.values[k].norm());
                x_part = x_part.max(a);
                y_part = y_part.max(b);
                value = value.max(a + b);
            }
        }
        terms.push(HmsTerm {
            gamma,
            x_part,
            y_part,
            value,
        });
    }
    Ok(HmsBreakdown::from_terms(terms))
}

/// `|||M|||_HMS = Σ_{|γ| <= [n/2]+1} sup |x - y|^{|γ|} (|∂_x^γ M| + |∂_y^γ M|)`,
/// derivatives by iterated central differences at the lattice spacing,
/// suprema over the points where the stencil fits. The `γ = 0` term is `sup |M|`.
pub fn hms_norm(m: &SymbolGrid) -> Result<HmsBreakdown> {
    hms_norm_with(m, Stencil::Central)
}

/// [`hms_norm`] with an explicit stencil.
pub fn hms_norm_with(m: &SymbolGrid, stencil: Stencil) -> Result<HmsBreakdown> {
    let lattice = m.lattice();
    let need = lattice.dimension() / 2 + 2;
    if lattice.half_width() < need {
        return Err(Error::InvalidArgument(format!(
            "grid too small for the stencil: N = {} < {need}",
            lattice.half_width()
        )));
    }
    hms_sum(m, stencil)
}

/// `|||M|||_{HMS_Δ}`: the HMS sum with forward differences `Δ` on an integer or
/// cyclic lattice, `|j - k|` measured in the lattice metric.
pub fn hms_delta_norm(m: &SymbolGrid) -> Result<HmsBreakdown> {
    if m.lattice().topology() == Topology::SampledBox {
        return Err(Error::InvalidArgument(
            "HMS_Δ lives on integer or cyclic lattices".into(),
        ));
    }
    hms_sum(m, Stencil::Forward)
}
