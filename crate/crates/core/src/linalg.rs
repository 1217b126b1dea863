//! Thin dense linear-algebra layer over `faer`.

use faer::{Mat, MatRef, Side};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub use num_complex::Complex64 as C64;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Pairwise (cascade) summation of real values.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 16 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Pairwise summation of complex values.
pub fn pairwise_sum_complex(values: &[C64]) -> C64 {
    if values.len() <= 16 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum_complex(&values[..mid]) + pairwise_sum_complex(&values[mid..])
}

/// `tr(A B*) = Σ A_ij conj(B_ij)`, pairwise summed.
pub fn trace_ab_adjoint(a: MatRef<'_, C64>, b: MatRef<'_, C64>) -> C64 {
    let mut terms = Vec::with_capacity(a.nrows() * a.ncols());
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            terms.push(a[(i, j)] * b[(i, j)].conj());
        }
    }
    pairwise_sum_complex(&terms)
}

pub fn frobenius(a: MatRef<'_, C64>) -> f64 {
    let mut terms = Vec::with_capacity(a.nrows() * a.ncols());
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            terms.push(a[(i, j)].norm_sqr());
        }
    }
    pairwise_sum(&terms).sqrt()
}

pub fn max_abs(a: MatRef<'_, C64>) -> f64 {
    let mut m = 0.0f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            m = m.max(a[(i, j)].norm());
        }
    }
    m
}

/// Position and modulus of the largest entry (first in column-major order on ties).
pub fn argmax_abs(a: MatRef<'_, C64>) -> (usize, usize, f64) {
    let mut best = (0, 0, -1.0);
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            let v = a[(i, j)].norm();
            if v > best.2 {
                best = (i, j, v);
            }
        }
    }
    best
}

pub fn adjoint(a: MatRef<'_, C64>) -> Mat<C64> {
    Mat::from_fn(a.ncols(), a.nrows(), |i, j| a[(j, i)].conj())
}

pub fn hadamard(a: MatRef<'_, C64>, b: MatRef<'_, C64>) -> Mat<C64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * b[(i, j)])
}

pub fn conj(a: MatRef<'_, C64>) -> Mat<C64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)].conj())
}

pub fn scale(a: MatRef<'_, C64>, s: f64) -> Mat<C64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * s)
}

/// `(A + A*)/2`.
pub fn hermitian_part(a: MatRef<'_, C64>) -> Mat<C64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| {
        (a[(i, j)] + a[(j, i)].conj()) * 0.5
    })
}

pub fn all_finite(a: MatRef<'_, C64>) -> Option<(usize, usize, C64)> {
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            let v = a[(i, j)];
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Some((i, j, v));
            }
        }
    }
    None
}

/// Singular values in nonincreasing order.
pub fn singular_values(a: MatRef<'_, C64>, context: &str) -> Result<Vec<f64>> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Ok(Vec::new());
    }
    a.singular_values()
        .map_err(|e| Error::numerical(context, format!("SVD did not converge: {e:?}")))
}

/// Full SVD `A = U diag(s) V*` with `s` nonincreasing.
pub struct Svd {
    pub u: Mat<C64>,
    pub s: Vec<f64>,
    pub v: Mat<C64>,
}

pub fn svd(a: MatRef<'_, C64>, context: &str) -> Result<Svd> {
    let d = a
        .svd()
        .map_err(|e| Error::numerical(context, format!("SVD did not converge: {e:?}")))?;
    let s = d.S().column_vector().iter().map(|z| z.re).collect();
    Ok(Svd {
        u: d.U().to_owned(),
        s,
        v: d.V().to_owned(),
    })
}

/// Eigenvalues (nondecreasing) of the Hermitian part of `a`.
pub fn hermitian_eigenvalues(a: MatRef<'_, C64>, context: &str) -> Result<Vec<f64>> {
    let h = hermitian_part(a);
    h.self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::numerical(context, format!("eigensolver did not converge: {e:?}")))
}

/// Eigen-decomposition of the Hermitian part of `a`: eigenvalues nondecreasing,
/// eigenvectors as columns.
pub fn hermitian_eigen(a: MatRef<'_, C64>, context: &str) -> Result<(Vec<f64>, Mat<C64>)> {
    let h = hermitian_part(a);
    let e = h
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::numerical(context, format!("eigensolver did not converge: {e:?}")))?;
    let values = e.S().column_vector().iter().map(|z| z.re).collect();
    Ok((values, e.U().to_owned()))
}

/// `U diag(f(λ)) U*` for a Hermitian matrix.
pub fn hermitian_apply(
    a: MatRef<'_, C64>,
    f: impl Fn(f64) -> f64,
    context: &str,
) -> Result<Mat<C64>> {
    let (values, u) = hermitian_eigen(a, context)?;
    let n = u.nrows();
    let scaled = Mat::from_fn(n, n, |i, k| u[(i, k)] * f(values[k]));
    Ok(&scaled * u.adjoint())
}

/// Square root of the positive part of a Hermitian matrix (negative eigenvalues clipped to 0).
pub fn psd_sqrt(a: MatRef<'_, C64>, context: &str) -> Result<Mat<C64>> {
    hermitian_apply(a, |l| l.max(0.0).sqrt(), context)
}

/// Largest eigenvalue of the Hermitian part, clipped at 0.
pub fn lambda_max(a: MatRef<'_, C64>, context: &str) -> Result<f64> {
    let ev = hermitian_eigenvalues(a, context)?;
    Ok(ev.last().copied().unwrap_or(0.0).max(0.0))
}

pub fn standard_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn random_gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Mat<C64> {
    let mut m = Mat::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m[(i, j)] = standard_complex(rng);
        }
    }
    m
}

/// Haar-distributed unitary (left singular vectors of a Gaussian matrix, phase-fixed).
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Mat<C64>> {
    let g = random_gaussian(n, n, rng);
    let d = svd(g.as_ref(), "random unitary")?;
    Ok(&d.u * d.v.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pairwise_matches_naive() {
        let v: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let naive: f64 = v.iter().sum();
        assert!((pairwise_sum(&v) - naive).abs() < 1e-12);
    }

    #[test]
    fn svd_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_gaussian(7, 7, &mut rng);
        let d = svd(a.as_ref(), "test").unwrap();
        let s = Mat::from_fn(7, 7, |i, j| if i == j { C64::from(d.s[i]) } else { ZERO });
        let back = &d.u * &s * d.v.adjoint();
        let diff = Mat::from_fn(7, 7, |i, j| back[(i, j)] - a[(i, j)]);
        assert!(frobenius(diff.as_ref()) < 1e-12);
        assert!(d.s.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let g = random_gaussian(6, 6, &mut rng);
        let p = &g * g.adjoint();
        let r = psd_sqrt(p.as_ref(), "test").unwrap();
        let back = &r * &r;
        let diff = Mat::from_fn(6, 6, |i, j| back[(i, j)] - p[(i, j)]);
        assert!(frobenius(diff.as_ref()) < 1e-10 * frobenius(p.as_ref()));
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = random_unitary(5, &mut rng).unwrap();
        let p = u.adjoint() * &u;
        let diff = Mat::from_fn(5, 5, |i, j| p[(i, j)] - if i == j { ONE } else { ZERO });
        assert!(frobenius(diff.as_ref()) < 1e-12);
    }
}
