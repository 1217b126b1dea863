//! Matrix-valued functions on a lattice and the phase embeddings `π`, `σ`.

use faer::{Mat, MatRef};
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{self, C64};
use crate::symbol::MatrixOperator;

/// A function `z ↦ f(z)` from a lattice to square matrices over a common operator lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixField {
    lattice: Lattice,
    operator_lattice: Lattice,
    values: Vec<Mat<C64>>,
}

impl MatrixField {
    pub fn new(lattice: Lattice, operator_lattice: Lattice, values: Vec<Mat<C64>>) -> Result<Self> {
        if values.len() != lattice.len() {
            return Err(Error::LatticeMismatch(format!(
                "field has {} values on {} points",
                values.len(),
                lattice.len()
            )));
        }
        let n = operator_lattice.len();
        for (z, v) in values.iter().enumerate() {
            if v.nrows() != n || v.ncols() != n {
                return Err(Error::LatticeMismatch(format!(
                    "field value at {z} is {}x{}, expected {n}x{n}",
                    v.nrows(),
                    v.ncols()
                )));
            }
            if let Some((i, j, bad)) = linalg::all_finite(v.as_ref()) {
                return Err(Error::NonFinite {
                    location: format!("field[{z}][{i}, {j}]"),
                    value: bad.to_string(),
                });
            }
        }
        Ok(MatrixField {
            lattice,
            operator_lattice,
            values,
        })
    }

    /// The constant field `z ↦ A`.
    pub fn constant(lattice: &Lattice, a: &MatrixOperator) -> Result<Self> {
        let v = a.entries().to_owned();
        Self::new(lattice.clone(), a.lattice().clone(), vec![v; lattice.len()])
    }

    /// Independent complex Gaussian entries at every point.
    pub fn random<R: Rng + ?Sized>(
        lattice: &Lattice,
        operator_lattice: &Lattice,
        rng: &mut R,
    ) -> Result<Self> {
        let n = operator_lattice.len();
        let values = (0..lattice.len())
            .map(|_| linalg::random_gaussian(n, n, rng))
            .collect();
        Self::new(lattice.clone(), operator_lattice.clone(), values)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn operator_lattice(&self) -> &Lattice {
        &self.operator_lattice
    }

    pub fn at(&self, z: usize) -> MatRef<'_, C64> {
        self.values[z].as_ref()
    }

    pub fn values(&self) -> &[Mat<C64>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Mat<C64>> {
        self.values
    }

    /// `(avg_z ‖f(z)‖_F²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        let sq: Vec<f64> = self
            .values
            .iter()
            .map(|v| linalg::frobenius(v.as_ref()).powi(2))
            .collect();
        (linalg::pairwise_sum(&sq) / self.values.len() as f64).sqrt()
    }

    /// `Σ_z f(z)* f(z)`.
    pub fn column_square_sum(&self) -> Mat<C64> {
        let n = self.operator_lattice.len();
        let mut s = Mat::<C64>::zeros(n, n);
        for v in &self.values {
            s += v.adjoint() * v;
        }
        s
    }

    /// Pointwise product `z ↦ f(z) B`.
    pub fn right_multiply(&self, b: MatRef<'_, C64>) -> MatrixField {
        MatrixField {
            lattice: self.lattice.clone(),
            operator_lattice: self.operator_lattice.clone(),
            values: self.values.iter().map(|v| v * b).collect(),
        }
    }

    /// Pointwise product `z ↦ B f(z)`.
    pub fn left_multiply(&self, b: MatRef<'_, C64>) -> MatrixField {
        MatrixField {
            lattice: self.lattice.clone(),
            operator_lattice: self.operator_lattice.clone(),
            values: self.values.iter().map(|v| b * v).collect(),
        }
    }

    /// `max_z ‖f(z) - g(z)‖_F`.
    pub fn max_distance(&self, other: &MatrixField) -> Result<f64> {
        self.lattice.ensure_same(&other.lattice, "field distance")?;
        self.operator_lattice
            .ensure_same(&other.operator_lattice, "field distance")?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| {
                let d = a - b;
                linalg::frobenius(d.as_ref())
            })
            .fold(0.0, f64::max))
    }
}

/// Phase `exp(2πi ⟨z, d⟩)` for a lattice point `z` and an operator-index difference `d`.
/// On a cyclic `z`-lattice `Z_N` the pairing is `z·d / N` with integer coordinates.
fn phase(z_lattice: &Lattice, z: usize, op: &Lattice, d: [i64; 2]) -> C64 {
    let n = z_lattice.dimension().min(op.dimension());
    let t = if z_lattice.is_cyclic() {
        let zp = z_lattice.point(z);
        let order = z_lattice.half_width() as i64;
        let k: i64 = (0..n).map(|s| zp[s] * d[s]).sum::<i64>().rem_euclid(order);
        k as f64 / order as f64
    } else {
        let zc = z_lattice.coords(z);
        let h = op.spacing();
        (0..n).map(|s| zc[s] * d[s] as f64 * h).sum::<f64>()
    };
    if t == 0.0 {
        linalg::ONE
    } else {
        C64::from_polar(1.0, 2.0 * std::f64::consts::PI * t)
    }
}

fn embed(a: &MatrixOperator, z_lattice: &Lattice, sign: i64) -> Result<MatrixField> {
    let op = a.lattice();
    let n = op.len();
    let values = (0..z_lattice.len())
        .map(|z| {
            Mat::from_fn(n, n, |x, y| {
                let (px, py) = (op.point(x), op.point(y));
                let d = [sign * (px[0] - py[0]), sign * (px[1] - py[1])];
                a.entries()[(x, y)] * phase(z_lattice, z, op, d)
            })
        })
        .collect();
    MatrixField::new(z_lattice.clone(), op.clone(), values)
}

/// `π(A)(z) = (exp(2πi ⟨z, x - y⟩) A_xy)_{xy}`.
pub fn pi_embed(a: &MatrixOperator, z_lattice: &Lattice) -> Result<MatrixField> {
    embed(a, z_lattice, 1)
}

/// `σ(A)(ξ) = (exp(2πi ⟨ξ, y - x⟩) A_xy)_{xy}`.
pub fn sigma_embed(a: &MatrixOperator, xi_lattice: &Lattice) -> Result<MatrixField> {
    embed(a, xi_lattice, -1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schatten::{schatten_norm_of, SchattenExponent};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonal_is_constant() {
        let l = Lattice::cyclic(8).unwrap();
        let d = MatrixOperator::from_fn(&l, "d", |x, y| {
            if x == y {
                C64::new(x as f64, 1.0)
            } else {
                linalg::ZERO
            }
        })
        .unwrap();
        let f = pi_embed(&d, &l).unwrap();
        let g = sigma_embed(&d, &l).unwrap();
        for z in 0..8 {
            assert_eq!(f.at(z), d.entries());
            assert_eq!(g.at(z), d.entries());
        }
    }

    #[test]
    fn zero_point_and_sign_flip() {
        let l = Lattice::cyclic(16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = MatrixOperator::random(&l, &mut rng).unwrap();
        let f = pi_embed(&a, &l).unwrap();
        let g = sigma_embed(&a, &l).unwrap();
        assert_eq!(f.at(0), a.entries());
        for z in 0..16 {
            let minus = (16 - z) % 16;
            assert_eq!(g.at(z), f.at(minus));
        }
    }

    #[test]
    fn unitary_invariance_per_point() {
        let l = Lattice::cyclic(16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = MatrixOperator::random(&l, &mut rng).unwrap();
        let f = pi_embed(&a, &l).unwrap();
        let g = sigma_embed(&a, &l).unwrap();
        for p in [1.0, 3.0, f64::INFINITY] {
            let p = SchattenExponent::new(p).unwrap();
            let base = schatten_norm_of(a.entries(), p, "a").unwrap();
            for z in 0..16 {
                for field in [&f, &g] {
                    let v = schatten_norm_of(field.at(z), p, "f").unwrap();
                    assert!((v - base).abs() <= 1e-12 * base);
                }
            }
        }
    }

    #[test]
    fn sampled_box_phases() {
        let op = Lattice::sampled(3, 0.5).unwrap();
        let z = Lattice::sampled(2, 0.25).unwrap();
        let a = MatrixOperator::from_fn(&op, "ones", |_, _| linalg::ONE).unwrap();
        let f = pi_embed(&a, &z).unwrap();
        for zi in 0..z.len() {
            for x in 0..op.len() {
                for y in 0..op.len() {
                    let t = z.coords(zi)[0] * (op.coords(x)[0] - op.coords(y)[0]);
                    let expect = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * t);
                    assert!((f.at(zi)[(x, y)] - expect).norm() < 1e-12);
                }
            }
        }
    }
}
