//! Twisted Fourier multipliers on matrix-valued functions over `Z_N`.

use std::cell::RefCell;

use faer::Mat;
use rustfft::{num_complex::Complex, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{pi_embed, sigma_embed, MatrixField};
use crate::lattice::Lattice;
use crate::linalg::{self, C64};
use crate::schatten::schur_apply;
use crate::symbol::{row_col_symbols, MatrixOperator, SymbolGrid};

/// Largest cyclic group on which twisted multipliers are evaluated.
pub const TWIST_MAX_ORDER: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolView {
    /// `M_r(ξ, y)`: the multiplier on entry `(x, y)` depends on the column `y`.
    Row,
    /// `M_c(x, ξ)`: the multiplier on entry `(x, y)` depends on the row `x`.
    Column,
}

/// A twisted multiplier `T̃` given by one view of a Schur symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedMultiplier {
    view: SymbolView,
    symbol: SymbolGrid,
}

fn check_lattice(l: &Lattice) -> Result<()> {
    if !l.is_cyclic() || l.dimension() != 1 {
        return Err(Error::InvalidArgument(
            "twisted multipliers need a one-dimensional cyclic lattice".into(),
        ));
    }
    if l.len() > TWIST_MAX_ORDER {
        return Err(Error::SizeGuard(format!(
            "twisted multipliers are limited to N <= {TWIST_MAX_ORDER}"
        )));
    }
    Ok(())
}

impl TwistedMultiplier {
    /// Build directly from a view symbol (`M_r` or `M_c`).
    pub fn new(view: SymbolView, symbol: SymbolGrid) -> Result<Self> {
        check_lattice(symbol.lattice())?;
        Ok(TwistedMultiplier { view, symbol })
    }

    /// The column view `M_c(x, ξ) = M(x, x - ξ)` of a Schur symbol.
    pub fn column(m: &SymbolGrid) -> Result<Self> {
        check_lattice(m.lattice())?;
        let (_, mc) = row_col_symbols(m)?;
        Self::new(SymbolView::Column, mc)
    }

    /// The row view `M_r(ξ, y) = M(y - ξ, y)` of a Schur symbol.
    pub fn row(m: &SymbolGrid) -> Result<Self> {
        check_lattice(m.lattice())?;
        let (mr, _) = row_col_symbols(m)?;
        Self::new(SymbolView::Row, mr)
    }

    pub fn view(&self) -> SymbolView {
        self.view
    }

    pub fn symbol(&self) -> &SymbolGrid {
        &self.symbol
    }

    fn multiplier(&self, x: usize, y: usize, xi: usize) -> C64 {
        match self.view {
            SymbolView::Column => self.symbol.get(x, xi),
            SymbolView::Row => self.symbol.get(xi, y),
        }
    }
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// `T̃f(z)_{xy} = (1/N) Σ_ξ m(ξ) f̂_{xy}(ξ) e^{2πiξz/N}` with `f̂(ξ) = Σ_z f(z) e^{-2πiξz/N}`
/// and `m` the row or column view symbol.
pub fn twisted_apply(t: &TwistedMultiplier, f: &MatrixField) -> Result<MatrixField> {
    let l = f.lattice();
    check_lattice(l)?;
    l.ensure_same(t.symbol.lattice(), "twisted multiplier")?;
    f.operator_lattice()
        .ensure_same(t.symbol.lattice(), "twisted multiplier")?;
    let order = l.len();
    let n = f.operator_lattice().len();
    let (fwd, inv) = PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        (p.plan_fft_forward(order), p.plan_fft_inverse(order))
    });
    let mut out = vec![Mat::<C64>::zeros(n, n); order];
    let mut buf = vec![Complex::new(0.0, 0.0); order];
    let inv_n = 1.0 / order as f64;
    for x in 0..n {
        for y in 0..n {
            for (z, b) in buf.iter_mut().enumerate() {
                *b = f.at(z)[(x, y)];
            }
            fwd.process(&mut buf);
            for (xi, b) in buf.iter_mut().enumerate() {
                *b *= t.multiplier(x, y, xi);
            }
            inv.process(&mut buf);
            for (z, b) in buf.iter().enumerate() {
                out[z][(x, y)] = *b * inv_n;
            }
        }
    }
    MatrixField::new(l.clone(), f.operator_lattice().clone(), out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntertwiningResidual {
    /// `max_z ‖T̃_{M_c}(π(A))(z) - π(S_M A)(z)‖_F`.
    pub column: f64,
    /// `max_ξ ‖T̃_{M_r}(σ(A))(ξ) - σ(S_M A)(ξ)‖_F`.
    pub row: f64,
    /// `‖A‖_F · sup|M|`.
    pub scale: f64,
}

impl IntertwiningResidual {
    pub fn max(&self) -> f64 {
        self.column.max(self.row)
    }
}

/// Residuals of `T̃_{M_c} ∘ π = π ∘ S_M` and `T̃_{M_r} ∘ σ = σ ∘ S_M`.
pub fn verify_intertwining(m: &SymbolGrid, a: &MatrixOperator) -> Result<IntertwiningResidual> {
    let l = m.lattice();
    check_lattice(l)?;
    let sa = schur_apply(m, a)?;
    let column = twisted_apply(&TwistedMultiplier::column(m)?, &pi_embed(a, l)?)?
        .max_distance(&pi_embed(&sa, l)?)?;
    let row = twisted_apply(&TwistedMultiplier::row(m)?, &sigma_embed(a, l)?)?
        .max_distance(&sigma_embed(&sa, l)?)?;
    Ok(IntertwiningResidual {
        column,
        row,
        scale: a.frobenius() * m.sup_abs(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl BoundCheck {
    pub fn holds(&self, rel: f64) -> bool {
        self.lhs <= self.rhs * (1.0 + rel) + rel
    }
}

/// `‖T̃ f‖_{L2} ≤ sup|m| ‖f‖_{L2}` with `‖f‖_{L2}² = avg_z ‖f(z)‖_F²`.
pub fn l2_bound_check(t: &TwistedMultiplier, f: &MatrixField) -> Result<BoundCheck> {
    let g = twisted_apply(t, f)?;
    Ok(BoundCheck {
        lhs: g.l2_norm(),
        rhs: t.symbol.sup_abs() * f.l2_norm(),
    })
}

/// `‖(Σ_z |T̃_{M_c} f(z)|²)^{1/2}‖_{S_∞} ≤ sup|M_c| ‖(Σ_z |f(z)|²)^{1/2}‖_{S_∞}` with `|X|² = X*X`.
pub fn column_square_bound_check(t: &TwistedMultiplier, f: &MatrixField) -> Result<BoundCheck> {
    if t.view != SymbolView::Column {
        return Err(Error::InvalidArgument(
            "the column square function bound needs the column view".into(),
        ));
    }
    let g = twisted_apply(t, f)?;
    let lhs = linalg::lambda_max(g.column_square_sum().as_ref(), "twisted square function")?;
    let rhs = linalg::lambda_max(f.column_square_sum().as_ref(), "square function")?;
    Ok(BoundCheck {
        lhs: lhs.max(0.0).sqrt(),
        rhs: t.symbol.sup_abs() * rhs.max(0.0).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::toeplitz_symbol;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sign_symbol(l: &Lattice) -> SymbolGrid {
        toeplitz_symbol(l, |t| C64::from(if t[0] >= 0.0 { 1.0 } else { -1.0 })).unwrap()
    }

    #[test]
    fn intertwining_on_random_symbols() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [4, 7, 16, 32] {
            let l = Lattice::cyclic(n).unwrap();
            let m = SymbolGrid::random(&l, &mut rng).unwrap();
            let a = MatrixOperator::random(&l, &mut rng).unwrap();
            let r = verify_intertwining(&m, &a).unwrap();
            assert!(r.max() <= 1e-10 * r.scale, "{n}: {r:?}");
        }
        let l = Lattice::cyclic(16).unwrap();
        let a = MatrixOperator::random(&l, &mut rng).unwrap();
        let r = verify_intertwining(&sign_symbol(&l), &a).unwrap();
        assert!(r.max() <= 1e-10 * r.scale);
    }

    #[test]
    fn identity_symbol_is_identity() {
        let l = Lattice::cyclic(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = MatrixField::random(&l, &l, &mut rng).unwrap();
        let one = SymbolGrid::constant(&l, linalg::ONE).unwrap();
        for t in [
            TwistedMultiplier::column(&one).unwrap(),
            TwistedMultiplier::row(&one).unwrap(),
        ] {
            let g = twisted_apply(&t, &f).unwrap();
            assert!(g.max_distance(&f).unwrap() < 1e-12);
        }
    }

    #[test]
    fn module_maps() {
        let l = Lattice::cyclic(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = SymbolGrid::random(&l, &mut rng).unwrap();
        let f = MatrixField::random(&l, &l, &mut rng).unwrap();
        let b = linalg::random_gaussian(8, 8, &mut rng);
        let tc = TwistedMultiplier::column(&m).unwrap();
        let lhs = twisted_apply(&tc, &f.right_multiply(b.as_ref())).unwrap();
        let rhs = twisted_apply(&tc, &f).unwrap().right_multiply(b.as_ref());
        assert!(lhs.max_distance(&rhs).unwrap() < 1e-10);
        let tr = TwistedMultiplier::row(&m).unwrap();
        let lhs = twisted_apply(&tr, &f.left_multiply(b.as_ref())).unwrap();
        let rhs = twisted_apply(&tr, &f).unwrap().left_multiply(b.as_ref());
        assert!(lhs.max_distance(&rhs).unwrap() < 1e-10);
    }

    #[test]
    fn guards() {
        let big = Lattice::cyclic(33).unwrap();
        let m = SymbolGrid::constant(&big, linalg::ONE).unwrap();
        assert!(matches!(
            TwistedMultiplier::column(&m),
            Err(Error::SizeGuard(_))
        ));
        let boxed = Lattice::integer(3).unwrap();
        let m = SymbolGrid::constant(&boxed, linalg::ONE).unwrap();
        assert!(TwistedMultiplier::row(&m).is_err());
        let rc = Lattice::cyclic(8).unwrap();
        let t = TwistedMultiplier::row(&SymbolGrid::constant(&rc, linalg::ONE).unwrap()).unwrap();
        let f = MatrixField::constant(&rc, &MatrixOperator::identity(&rc).unwrap()).unwrap();
        assert!(column_square_bound_check(&t, &f).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn bounds_hold(seed in 0u64..1000, n in 2usize..=16) {
            let l = Lattice::cyclic(n).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = SymbolGrid::random(&l, &mut rng).unwrap();
            let f = MatrixField::random(&l, &l, &mut rng).unwrap();
            let tc = TwistedMultiplier::column(&m).unwrap();
            let tr = TwistedMultiplier::row(&m).unwrap();
            prop_assert!(l2_bound_check(&tc, &f).unwrap().holds(1e-10));
            prop_assert!(l2_bound_check(&tr, &f).unwrap().holds(1e-10));
            prop_assert!(column_square_bound_check(&tc, &f).unwrap().holds(1e-10));
        }
    }
}
