//! Symbols `M(x, y)` sampled on lattice pairs, dense operators, and the symbol families.

use faer::{Mat, MatRef};
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::{Lattice, Point};
use crate::linalg::{self, C64, ZERO};

fn check_finite(values: MatRef<'_, C64>, label: &str) -> Result<()> {
    match linalg::all_finite(values) {
        None => Ok(()),
        Some((i, j, v)) => Err(Error::NonFinite {
            location: format!("{label}[{i}, {j}]"),
            value: v.to_string(),
        }),
    }
}

/// A complex symbol on pairs of lattice points.
///
/// An optional validity mask marks entries that carry no information
/// (reindexed points that fell off a finite lattice, or differences that ran
/// past the edge); suprema skip them.
#[derive(Clone, Debug)]
pub struct SymbolGrid {
    lattice: Lattice,
    values: Mat<C64>,
    label: String,
    valid: Option<Vec<bool>>,
}

impl PartialEq for SymbolGrid {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice
            && self.label == other.label
            && self.valid == other.valid
            && self.values == other.values
    }
}

impl SymbolGrid {
    pub fn new(lattice: Lattice, values: Mat<C64>, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        let n = lattice.len();
        if values.nrows() != n || values.ncols() != n {
            return Err(Error::LatticeMismatch(format!(
                "symbol {label}: values are {}x{}, lattice has {n} points",
                values.nrows(),
                values.ncols()
            )));
        }
        check_finite(values.as_ref(), &label)?;
        Ok(SymbolGrid {
            lattice,
            values,
            label,
            valid: None,
        })
    }

    pub(crate) fn with_mask(mut self, valid: Vec<bool>) -> Self {
        self.valid = if valid.iter().all(|&v| v) {
            None
        } else {
            Some(valid)
        };
        self
    }

    /// `M(x, y) = f(x, y)` over point indices.
    pub fn from_fn(
        lattice: &Lattice,
        label: impl Into<String>,
        f: impl Fn(usize, usize) -> C64,
    ) -> Result<Self> {
        let n = lattice.len();
        Self::new(lattice.clone(), Mat::from_fn(n, n, f), label)
    }

    pub fn constant(lattice: &Lattice, c: C64) -> Result<Self> {
        Self::from_fn(lattice, format!("constant({c})"), |_, _| c)
    }

    /// `M(x, y) = a(x) b(y)`.
    pub fn rank_one(lattice: &Lattice, a: &[C64], b: &[C64]) -> Result<Self> {
        let n = lattice.len();
        if a.len() != n || b.len() != n {
            return Err(Error::LatticeMismatch(format!(
                "rank-one factors of length {} and {} on {n} points",
                a.len(),
                b.len()
            )));
        }
        Self::from_fn(lattice, "rank_one", |x, y| a[x] * b[y])
    }

    /// Independent standard complex Gaussian entries.
    pub fn random<R: Rng + ?Sized>(lattice: &Lattice, rng: &mut R) -> Result<Self> {
        let n = lattice.len();
        Self::new(
            lattice.clone(),
            linalg::random_gaussian(n, n, rng),
            "random",
        )
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn values(&self) -> MatRef<'_, C64> {
        self.values.as_ref()
    }

    pub fn into_values(self) -> Mat<C64> {
        self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn len(&self) -> usize {
        self.values.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, x: usize, y: usize) -> C64 {
        self.values[(x, y)]
    }

    pub fn is_valid(&self, x: usize, y: usize) -> bool {
        match &self.valid {
            None => true,
            Some(mask) => mask[x * self.len() + y],
        }
    }

    pub fn mask(&self) -> Option<&[bool]> {
        self.valid.as_deref()
    }

    /// Number of masked-out entries.
    pub fn invalid_count(&self) -> usize {
        self.valid
            .as_ref()
            .map_or(0, |m| m.iter().filter(|&&v| !v).count())
    }

    /// `sup |M|` over valid entries.
    pub fn sup_abs(&self) -> f64 {
        let n = self.len();
        let mut best = 0.0f64;
        for x in 0..n {
            for y in 0..n {
                if self.is_valid(x, y) {
                    best = best.max(self.values[(x, y)].norm());
                }
            }
        }
        best
    }

    /// Entrywise conjugate `M̄`.
    pub fn conj(&self) -> SymbolGrid {
        SymbolGrid {
            lattice: self.lattice.clone(),
            values: linalg::conj(self.values.as_ref()),
            label: format!("conj({})", self.label),
            valid: self.valid.clone(),
        }
    }

    /// Entrywise product `M ∘ N`.
    pub fn hadamard(&self, other: &SymbolGrid) -> Result<SymbolGrid> {
        self.lattice.ensure_same(&other.lattice, "symbol product")?;
        let valid = match (&self.valid, &other.valid) {
            (None, None) => None,
            (a, b) => {
                let n = self.len() * self.len();
                Some(
                    (0..n)
                        .map(|k| a.as_ref().is_none_or(|m| m[k]) && b.as_ref().is_none_or(|m| m[k]))
                        .collect(),
                )
            }
        };
        Ok(SymbolGrid {
            lattice: self.lattice.clone(),
            values: linalg::hadamard(self.values.as_ref(), other.values.as_ref()),
            label: format!("{}*{}", self.label, other.label),
            valid,
        })
    }
}

/// A dense complex matrix indexed by lattice points.
#[derive(Clone, Debug)]
pub struct MatrixOperator {
    lattice: Lattice,
    entries: Mat<C64>,
    label: String,
}

impl PartialEq for MatrixOperator {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.label == other.label && self.entries == other.entries
    }
}

impl MatrixOperator {
    pub fn new(lattice: Lattice, entries: Mat<C64>, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        let n = lattice.len();
        if entries.nrows() != n || entries.ncols() != n {
            return Err(Error::LatticeMismatch(format!(
                "operator {label}: entries are {}x{}, lattice has {n} points",
                entries.nrows(),
                entries.ncols()
            )));
        }
        check_finite(entries.as_ref(), &label)?;
        Ok(MatrixOperator {
            lattice,
            entries,
            label,
        })
    }

    pub fn from_fn(
        lattice: &Lattice,
        label: impl Into<String>,
        f: impl Fn(usize, usize) -> C64,
    ) -> Result<Self> {
        let n = lattice.len();
        Self::new(lattice.clone(), Mat::from_fn(n, n, f), label)
    }

    pub fn random<R: Rng + ?Sized>(lattice: &Lattice, rng: &mut R) -> Result<Self> {
        let n = lattice.len();
        Self::new(
            lattice.clone(),
            linalg::random_gaussian(n, n, rng),
            "random",
        )
    }

    pub fn identity(lattice: &Lattice) -> Result<Self> {
        Self::from_fn(
            lattice,
            "identity",
            |i, j| if i == j { linalg::ONE } else { ZERO },
        )
    }

    /// The matrix unit `E_{x y}`.
    pub fn matrix_unit(lattice: &Lattice, x: usize, y: usize) -> Result<Self> {
        Self::from_fn(lattice, format!("E[{x},{y}]"), |i, j| {
            if i == x && j == y {
                linalg::ONE
            } else {
                ZERO
            }
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn entries(&self) -> MatRef<'_, C64> {
        self.entries.as_ref()
    }

    pub fn into_entries(self) -> Mat<C64> {
        self.entries
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.entries.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn adjoint(&self) -> MatrixOperator {
        MatrixOperator {
            lattice: self.lattice.clone(),
            entries: linalg::adjoint(self.entries.as_ref()),
            label: format!("{}*", self.label),
        }
    }

    pub fn frobenius(&self) -> f64 {
        linalg::frobenius(self.entries.as_ref())
    }
}

/// `M(x, y) = m(x - y)`, with the wrapped difference on cyclic lattices.
/// `m` receives the real difference vector (length `n`).
pub fn toeplitz_symbol(lattice: &Lattice, m: impl Fn(&[f64]) -> C64) -> Result<SymbolGrid> {
    let n = lattice.len();
    let dim = lattice.dimension();
    let mut values = Mat::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            let d = lattice.difference(x, y);
            let v = m(&d[..dim]);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFinite {
                    location: format!("toeplitz m at difference {:?}", &d[..dim]),
                    value: v.to_string(),
                });
            }
            values[(x, y)] = v;
        }
    }
    SymbolGrid::new(lattice.clone(), values, "toeplitz")
}

fn require_one_dimensional(lattice: &Lattice, what: &str) -> Result<()> {
    if lattice.dimension() == 1 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{what} needs a one-dimensional lattice"
        )))
    }
}

/// Symmetric difference quotient `(f(x + h) - f(x - h)) / 2h`, the default diagonal
/// for divided differences.
pub fn central_slope(f: impl Fn(f64) -> f64, h: f64) -> impl Fn(f64) -> f64 {
    move |x| (f(x + h) - f(x - h)) / (2.0 * h)
}

/// `M_f(x, y) = (f(x) - f(y)) / (x - y)` off the diagonal, `f'(x)` on it.
pub fn divided_difference(
    lattice: &Lattice,
    f: impl Fn(f64) -> f64,
    f_prime_on_diagonal: impl Fn(f64) -> f64,
) -> Result<SymbolGrid> {
    require_one_dimensional(lattice, "divided difference")?;
    let n = lattice.len();
    let xs: Vec<f64> = (0..n).map(|i| lattice.coords(i)[0]).collect();
    let fx: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let values = Mat::from_fn(n, n, |i, j| {
        if i == j {
            C64::from(f_prime_on_diagonal(xs[i]))
        } else {
            C64::from((fx[i] - fx[j]) / (xs[i] - xs[j]))
        }
    });
    SymbolGrid::new(lattice.clone(), values, "divided_difference")
}

/// `M(x, y) = (f(x) - f(y)) / |x - y|^α` off the diagonal, 0 on it.
pub fn alpha_divided_difference(
    lattice: &Lattice,
    f: impl Fn(f64) -> f64,
    alpha: f64,
) -> Result<SymbolGrid> {
    require_one_dimensional(lattice, "alpha divided difference")?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha {alpha} must lie in (0, 1)"
        )));
    }
    let n = lattice.len();
    let xs: Vec<f64> = (0..n).map(|i| lattice.coords(i)[0]).collect();
    let fx: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let values = Mat::from_fn(n, n, |i, j| {
        if i == j {
            ZERO
        } else {
            C64::from((fx[i] - fx[j]) / (xs[i] - xs[j]).abs().powf(alpha))
        }
    });
    SymbolGrid::new(lattice.clone(), values, "alpha_divided_difference")
}

/// `Ψ_j(x, y) = ψ0(2^j (|x|² + |y|²)^{1/2})`.
pub fn corona_symbol(lattice: &Lattice, psi0: impl Fn(f64) -> f64, j: i32) -> Result<SymbolGrid> {
    let n = lattice.len();
    let scale = 2f64.powi(j);
    let r: Vec<f64> = (0..n).map(|i| lattice.radius(i)).collect();
    let values = Mat::from_fn(n, n, |x, y| C64::from(psi0(scale * r[x].hypot(r[y]))));
    SymbolGrid::new(lattice.clone(), values, format!("corona[{j}]"))
}

fn reindexed(
    m: &SymbolGrid,
    label: String,
    source: impl Fn(Point, Point) -> (Point, Point),
) -> Result<SymbolGrid> {
    let lattice = m.lattice();
    let n = lattice.len();
    let mut values = Mat::zeros(n, n);
    let mut valid = vec![true; n * n];
    for x in 0..n {
        for y in 0..n {
            let (a, b) = source(lattice.point(x), lattice.point(y));
            match (lattice.index_of(a), lattice.index_of(b)) {
                (Some(a), Some(b)) if m.is_valid(a, b) => values[(x, y)] = m.get(a, b),
                _ => valid[x * n + y] = false,
            }
        }
    }
    Ok(SymbolGrid::new(lattice.clone(), values, label)?.with_mask(valid))
}

/// The row and column views `M_r(x, y) = M(y - x, y)` and `M_c(x, y) = M(x, x - y)`.
///
/// On cyclic lattices this is a bijective reindexing. On finite boxes the
/// points that leave the lattice are filled with 0 and masked out.
pub fn row_col_symbols(m: &SymbolGrid) -> Result<(SymbolGrid, SymbolGrid)> {
    let sub = |a: Point, b: Point| [a[0] - b[0], a[1] - b[1]];
    let mr = reindexed(m, format!("{}_r", m.label()), |x, y| (sub(y, x), y))?;
    let mc = reindexed(m, format!("{}_c", m.label()), |x, y| (x, sub(x, y)))?;
    Ok((mr, mc))
}

/// Inverse of [`row_col_symbols`] on cyclic lattices: recover `M` from `M_r` or `M_c`.
pub fn from_row_view(mr: &SymbolGrid) -> Result<SymbolGrid> {
    // M(a, b) = M_r(b - a, b)
    reindexed(mr, "from_row".into(), |a, b| {
        ([b[0] - a[0], b[1] - a[1]], b)
    })
}

pub fn from_column_view(mc: &SymbolGrid) -> Result<SymbolGrid> {
    // M(a, b) = M_c(a, a - b)
    reindexed(mc, "from_column".into(), |a, b| {
        (a, [a[0] - b[0], a[1] - b[1]])
    })
}
