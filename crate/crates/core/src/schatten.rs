//! Schatten norms, Schur multipliers and the Schatten duality map.

use std::fmt;
use std::str::FromStr;

use faer::{Mat, MatRef};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, C64};
use crate::symbol::{MatrixOperator, SymbolGrid};

/// A Schatten exponent `p ∈ [1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SchattenExponent {
    Finite(f64),
    Infinity,
}

impl SchattenExponent {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            Ok(SchattenExponent::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(SchattenExponent::Finite(p))
        } else {
            Err(Error::InvalidArgument(format!(
                "Schatten exponent {p} must be >= 1"
            )))
        }
    }

    /// The value as a float (`f64::INFINITY` for `∞`).
    pub fn value(self) -> f64 {
        match self {
            SchattenExponent::Finite(p) => p,
            SchattenExponent::Infinity => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, SchattenExponent::Infinity)
    }

    /// Conjugate exponent `p'` with `1/p + 1/p' = 1`.
    pub fn dual(self) -> SchattenExponent {
        match self {
            SchattenExponent::Infinity => SchattenExponent::Finite(1.0),
            SchattenExponent::Finite(1.0) => SchattenExponent::Infinity,
            SchattenExponent::Finite(p) => SchattenExponent::Finite(p / (p - 1.0)),
        }
    }

    /// `p² / (p - 1)`, the size of the constant in the multiplier theorem.
    pub fn theorem_constant(self) -> Option<f64> {
        match self {
            SchattenExponent::Finite(p) if p > 1.0 => Some(p * p / (p - 1.0)),
            _ => None,
        }
    }
}

impl fmt::Display for SchattenExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchattenExponent::Finite(p) => write!(f, "{p}"),
            SchattenExponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for SchattenExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(SchattenExponent::Infinity),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad Schatten exponent {s:?}")))?;
                SchattenExponent::new(p)
            }
        }
    }
}

impl Serialize for SchattenExponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SchattenExponent::Finite(p) => serializer.serialize_f64(*p),
            SchattenExponent::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for SchattenExponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(deserializer)? {
            Raw::Num(p) => SchattenExponent::new(p),
            Raw::Text(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// `(Σ s_i^p)^{1/p}` or `max s_i`, from singular values.
pub fn norm_from_singular_values(s: &[f64], p: SchattenExponent) -> f64 {
    match p {
        SchattenExponent::Infinity => s.iter().copied().fold(0.0, f64::max),
        SchattenExponent::Finite(p) => {
            let smax = s.iter().copied().fold(0.0, f64::max);
            if smax == 0.0 {
                return 0.0;
            }
            let terms: Vec<f64> = s.iter().map(|v| (v / smax).powf(p)).collect();
            smax * linalg::pairwise_sum(&terms).powf(1.0 / p)
        }
    }
}

/// Schatten `p`-norm of a raw matrix.
pub fn schatten_norm_of(a: MatRef<'_, C64>, p: SchattenExponent, context: &str) -> Result<f64> {
    if p == SchattenExponent::Finite(2.0) {
        return Ok(linalg::frobenius(a));
    }
    let s = linalg::singular_values(a, context)?;
    Ok(norm_from_singular_values(&s, p))
}

/// Schatten `p`-norm `‖A‖_{S_p}` from the full SVD.
pub fn schatten_norm(a: &MatrixOperator, p: SchattenExponent) -> Result<f64> {
    let s = linalg::singular_values(a.entries(), a.label())?;
    Ok(norm_from_singular_values(&s, p))
}

/// `S_M(A) = M ∘ A`.
pub fn schur_apply(m: &SymbolGrid, a: &MatrixOperator) -> Result<MatrixOperator> {
    m.lattice().ensure_same(a.lattice(), "schur_apply")?;
    MatrixOperator::new(
        a.lattice().clone(),
        linalg::hadamard(m.values(), a.entries()),
        format!("S[{}]({})", m.label(), a.label()),
    )
}

/// `|tr(S_M(A) B*) - tr(A S_{M̄}(B)*)|`, which vanishes because `S_M* = S_{M̄}`.
pub fn schur_adjoint_check(m: &SymbolGrid, a: &MatrixOperator, b: &MatrixOperator) -> Result<f64> {
    m.lattice()
        .ensure_same(a.lattice(), "schur_adjoint_check")?;
    m.lattice()
        .ensure_same(b.lattice(), "schur_adjoint_check")?;
    let sa = linalg::hadamard(m.values(), a.entries());
    let smb = linalg::hadamard(linalg::conj(m.values()).as_ref(), b.entries());
    let lhs = linalg::trace_ab_adjoint(sa.as_ref(), b.entries());
    let rhs = linalg::trace_ab_adjoint(a.entries(), smb.as_ref());
    Ok((lhs - rhs).norm())
}

/// Schatten duality map `Φ_p(X) = U diag((s/‖X‖_p)^{p-1}) V*`.
///
/// The result has `‖Φ_p(X)‖_{p'} = 1` and `tr(X Φ_p(X)*) = ‖X‖_p` when `X ≠ 0`.
/// `p = 1` keeps the partial isometry onto nonzero singular directions and
/// `p = ∞` keeps the top singular pair.
pub fn duality_map(x: MatRef<'_, C64>, p: SchattenExponent, context: &str) -> Result<Mat<C64>> {
    let (rows, cols) = (x.nrows(), x.ncols());
    if p == SchattenExponent::Finite(2.0) {
        let f = linalg::frobenius(x);
        if f == 0.0 {
            return Ok(Mat::zeros(rows, cols));
        }
        return Ok(linalg::scale(x, 1.0 / f));
    }
    let d = linalg::svd(x, context)?;
    let smax = d.s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Ok(Mat::zeros(rows, cols));
    }
    let k = d.s.len();
    let weights: Vec<f64> = match p {
        SchattenExponent::Infinity => (0..k).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect(),
        SchattenExponent::Finite(1.0) => {
            let cut = smax * 1e-13 * k as f64;
            d.s.iter()
                .map(|&s| if s > cut { 1.0 } else { 0.0 })
                .collect()
        }
        SchattenExponent::Finite(q) => {
            let norm = norm_from_singular_values(&d.s, p);
            d.s.iter().map(|&s| (s / norm).powf(q - 1.0)).collect()
        }
    };
    let us = Mat::from_fn(rows, k, |i, c| d.u[(i, c)] * weights[c]);
    Ok(&us * d.v.subcols(0, k).adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(v: f64) -> SchattenExponent {
        SchattenExponent::new(v).unwrap()
    }

    fn nalgebra_eig_norm(a: MatRef<'_, C64>, q: f64) -> f64 {
        let n = a.nrows();
        let m = nalgebra::DMatrix::from_fn(n, n, |i, j| {
            nalgebra::Complex::new(a[(i, j)].re, a[(i, j)].im)
        });
        let ata = m.adjoint() * &m;
        let ev = ata.symmetric_eigenvalues();
        ev.iter()
            .map(|l| l.max(0.0).powf(q / 2.0))
            .sum::<f64>()
            .powf(1.0 / q)
    }

    #[test]
    fn identity_and_rank_one() {
        let l = Lattice::integer(4).unwrap();
        let id = MatrixOperator::identity(&l).unwrap();
        for q in [1.0, 1.5, 3.0, 7.0] {
            assert!((schatten_norm(&id, p(q)).unwrap() - 9f64.powf(1.0 / q)).abs() < 1e-12);
        }
        assert!((schatten_norm(&id, SchattenExponent::Infinity).unwrap() - 1.0).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let u = linalg::random_gaussian(9, 1, &mut rng);
        let v = linalg::random_gaussian(9, 1, &mut rng);
        let a = MatrixOperator::new(l.clone(), &u * v.adjoint(), "uv").unwrap();
        let expect = linalg::frobenius(u.as_ref()) * linalg::frobenius(v.as_ref());
        for q in [1.0, 2.0, 4.0] {
            assert!((schatten_norm(&a, p(q)).unwrap() - expect).abs() < 1e-12 * expect);
        }
        assert!(
            (schatten_norm(&a, SchattenExponent::Infinity).unwrap() - expect).abs()
                < 1e-12 * expect
        );
    }

    #[test]
    fn matches_eigenvalue_oracle() {
        let l = Lattice::cyclic(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let a = MatrixOperator::random(&l, &mut rng).unwrap();
            let ours = schatten_norm(&a, p(3.0)).unwrap();
            let oracle = nalgebra_eig_norm(a.entries(), 3.0);
            assert!((ours - oracle).abs() < 1e-10 * oracle);
        }
    }

    #[test]
    fn schur_examples() {
        let l = Lattice::cyclic(6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = MatrixOperator::random(&l, &mut rng).unwrap();
        let one = SymbolGrid::constant(&l, linalg::ONE).unwrap();
        assert_eq!(schur_apply(&one, &a).unwrap().entries(), a.entries());
        let zero = SymbolGrid::constant(&l, linalg::ZERO).unwrap();
        assert_eq!(schur_apply(&zero, &a).unwrap().frobenius(), 0.0);

        let m = SymbolGrid::random(&l, &mut rng).unwrap();
        let n = SymbolGrid::random(&l, &mut rng).unwrap();
        let lhs = schur_apply(&m, &schur_apply(&n, &a).unwrap()).unwrap();
        let rhs = schur_apply(&m.hadamard(&n).unwrap(), &a).unwrap();
        let diff = Mat::from_fn(6, 6, |i, j| lhs.entries()[(i, j)] - rhs.entries()[(i, j)]);
        assert!(linalg::frobenius(diff.as_ref()) <= 1e-15 * lhs.frobenius());

        let other = Lattice::cyclic(7).unwrap();
        let b = MatrixOperator::random(&other, &mut rng).unwrap();
        assert!(matches!(
            schur_apply(&m, &b),
            Err(Error::LatticeMismatch(_))
        ));
    }

    #[test]
    fn adjoint_identity() {
        let l = Lattice::cyclic(16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5 {
            let m = SymbolGrid::random(&l, &mut rng).unwrap();
            let a = MatrixOperator::random(&l, &mut rng).unwrap();
            let b = MatrixOperator::random(&l, &mut rng).unwrap();
            let r = schur_adjoint_check(&m, &a, &b).unwrap();
            assert!(r <= 1e-12 * a.frobenius() * b.frobenius());
        }
        let i = SymbolGrid::constant(&l, C64::new(0.0, 1.0)).unwrap();
        let a = MatrixOperator::random(&l, &mut rng).unwrap();
        let b = MatrixOperator::random(&l, &mut rng).unwrap();
        assert!(schur_adjoint_check(&i, &a, &b).unwrap() <= 1e-13 * a.frobenius() * b.frobenius());

        let real = SymbolGrid::from_fn(&l, "sym", |x, y| C64::from((x + y) as f64)).unwrap();
        assert!(
            schur_adjoint_check(&real, &a, &a).unwrap()
                <= 1e-13 * a.frobenius().powi(2) * real.sup_abs()
        );
    }

    #[test]
    fn duality_map_is_dual_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = linalg::random_gaussian(7, 7, &mut rng);
        for q in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let q = p(q);
            let phi = duality_map(x.as_ref(), q, "test").unwrap();
            let dual_norm = schatten_norm_of(phi.as_ref(), q.dual(), "test").unwrap();
            assert!((dual_norm - 1.0).abs() < 1e-10, "{q}: {dual_norm}");
            let pairing = linalg::trace_ab_adjoint(x.as_ref(), phi.as_ref());
            let xn = schatten_norm_of(x.as_ref(), q, "test").unwrap();
            assert!((pairing.re - xn).abs() < 1e-10 * xn && pairing.im.abs() < 1e-10 * xn);
        }
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!(
            "inf".parse::<SchattenExponent>().unwrap(),
            SchattenExponent::Infinity
        );
        assert_eq!("4".parse::<SchattenExponent>().unwrap(), p(4.0));
        assert!("0.5".parse::<SchattenExponent>().is_err());
        assert_eq!(p(4.0).dual(), p(4.0 / 3.0));
        assert_eq!(p(1.0).dual(), SchattenExponent::Infinity);
        let json = serde_json::to_string(&vec![p(1.5), SchattenExponent::Infinity]).unwrap();
        assert_eq!(json, r#"[1.5,"inf"]"#);
        let back: Vec<SchattenExponent> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![p(1.5), SchattenExponent::Infinity]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn monotone_in_p(seed in any::<u64>(), a in 1.0f64..6.0, b in 1.0f64..6.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = linalg::random_gaussian(6, 6, &mut rng);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let nlo = schatten_norm_of(x.as_ref(), p(lo), "t").unwrap();
            let nhi = schatten_norm_of(x.as_ref(), p(hi), "t").unwrap();
            let ninf = schatten_norm_of(x.as_ref(), SchattenExponent::Infinity, "t").unwrap();
            prop_assert!(nlo >= nhi * (1.0 - 1e-12));
            prop_assert!(nhi >= ninf * (1.0 - 1e-12));
        }

        #[test]
        fn unitary_invariance(seed in any::<u64>(), q in 1.0f64..8.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = linalg::random_gaussian(6, 6, &mut rng);
            let u = linalg::random_unitary(6, &mut rng).unwrap();
            let v = linalg::random_unitary(6, &mut rng).unwrap();
            let y = &u * &x * &v;
            let nx = schatten_norm_of(x.as_ref(), p(q), "t").unwrap();
            let ny = schatten_norm_of(y.as_ref(), p(q), "t").unwrap();
            prop_assert!((nx - ny).abs() <= 1e-10 * nx);
        }

        #[test]
        fn holder_inequality(seed in any::<u64>(), q in 1.0f64..8.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = linalg::random_gaussian(5, 5, &mut rng);
            let b = linalg::random_gaussian(5, 5, &mut rng);
            let tr = (&a * &b).diagonal().column_vector().iter().sum::<C64>().norm();
            let q = p(q);
            let bound = schatten_norm_of(a.as_ref(), q, "t").unwrap()
                * schatten_norm_of(b.as_ref(), q.dual(), "t").unwrap();
            prop_assert!(tr <= bound * (1.0 + 1e-12));
        }

        #[test]
        fn hilbert_schmidt_contraction(seed in any::<u64>()) {
            let l = Lattice::cyclic(6).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = SymbolGrid::random(&l, &mut rng).unwrap();
            let a = MatrixOperator::random(&l, &mut rng).unwrap();
            let s = schur_apply(&m, &a).unwrap();
            prop_assert!(s.frobenius() <= m.sup_abs() * a.frobenius() * (1.0 + 1e-12));
            let (x, y, sup) = linalg::argmax_abs(m.values());
            let e = MatrixOperator::matrix_unit(&l, x, y).unwrap();
            let se = schur_apply(&m, &e).unwrap();
            prop_assert!((schatten_norm(&se, p(2.0)).unwrap() - sup).abs() <= 1e-14 * sup);
        }
    }
}
