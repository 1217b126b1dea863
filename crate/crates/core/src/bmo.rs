//! Matrix BMO seminorms of `π(A)` over a finite family of balls.

use faer::Mat;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::pi_embed;
use crate::lattice::Lattice;
use crate::linalg::{self, C64};
use crate::symbol::MatrixOperator;

/// Largest operator lattice for which `π(A)` is materialized.
pub const BMO_POINT_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: usize,
    pub radius: f64,
}

/// Finitely many metric balls on a lattice; every lattice point lies in one of them.
#[derive(Clone, Debug, PartialEq)]
pub struct BallFamily {
    lattice: Lattice,
    balls: Vec<Ball>,
    members: Vec<Vec<usize>>,
}

impl BallFamily {
    pub fn new(lattice: &Lattice, balls: Vec<Ball>) -> Result<Self> {
        let mut members = Vec::with_capacity(balls.len());
        let mut covered = vec![false; lattice.len()];
        for b in &balls {
            if b.radius.is_nan() || b.radius <= 0.0 || b.center >= lattice.len() {
                return Err(Error::InvalidArgument(format!("bad ball {b:?}")));
            }
            let inside: Vec<usize> = (0..lattice.len())
                .filter(|&z| lattice.distance(z, b.center) <= b.radius)
                .collect();
            if inside.is_empty() {
                return Err(Error::InvalidArgument(format!(
                    "ball {b:?} holds no grid point"
                )));
            }
            for &z in &inside {
                covered[z] = true;
            }
            members.push(inside);
        }
        if let Some(z) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidArgument(format!("point {z} lies in no ball")));
        }
        Ok(BallFamily {
            lattice: lattice.clone(),
            balls,
            members,
        })
    }

    /// Balls at every grid point with radii `1, 2, 4, ...` up to the lattice size
    /// `N` (in lattice units; wrapped metric on cyclic lattices).
    pub fn standard(lattice: &Lattice) -> Result<Self> {
        let h = lattice.spacing();
        let top = lattice.half_width();
        let mut radii = Vec::new();
        let mut r = 1;
        while r <= top {
            radii.push(r as f64 * h);
            r *= 2;
        }
        if radii.last() != Some(&(top as f64 * h)) {
            radii.push(top as f64 * h);
        }
        let balls = (0..lattice.len())
            .flat_map(|c| radii.iter().map(move |&radius| Ball { center: c, radius }))
            .collect();
        Self::new(lattice, balls)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn balls(&self) -> &[Ball] {
        &self.balls
    }

    pub fn members(&self, i: usize) -> &[usize] {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BmoNorms {
    /// `max(bmo_r, bmo_c)`.
    pub bmo: f64,
    pub bmo_r: f64,
    pub bmo_c: f64,
}

fn check_size(a: &MatrixOperator, balls: &BallFamily) -> Result<()> {
    if a.len() > BMO_POINT_LIMIT || balls.lattice().len() > BMO_POINT_LIMIT {
        return Err(Error::SizeGuard(format!(
            "matrix BMO is materialized only up to {BMO_POINT_LIMIT} points"
        )));
    }
    Ok(())
}

/// `‖A‖_{BMO_c} = max_Q ‖(avg_{z∈Q} |π(A)(z) - π(A)_Q|²)^{1/2}‖_{S_∞}` with `|X|² = X*X`.
pub fn bmo_column(a: &MatrixOperator, balls: &BallFamily) -> Result<f64> {
    check_size(a, balls)?;
    let field = pi_embed(a, balls.lattice())?;
    let n = a.len();
    let per_ball: Vec<Result<f64>> = (0..balls.len())
        .into_par_iter()
        .map(|i| {
            let q = balls.members(i);
            let w = 1.0 / q.len() as f64;
            let base = field.at(q[0]);
            let mut shift = Mat::<C64>::zeros(n, n);
            for &z in &q[1..] {
                shift += field.at(z) - base;
            }
            let mean = base + linalg::scale(shift.as_ref(), w);
            let mut osc = Mat::<C64>::zeros(n, n);
            for &z in q {
                let d = field.at(z) - &mean;
                osc += d.adjoint() * &d;
            }
            let osc = linalg::scale(osc.as_ref(), w);
            Ok(linalg::lambda_max(osc.as_ref(), "bmo")?.sqrt())
        })
        .collect();
    let mut best = 0.0f64;
    for v in per_ball {
        best = best.max(v?);
    }
    Ok(best)
}

/// `‖A‖_{BMO_r} = ‖A*‖_{BMO_c}`.
pub fn bmo_row(a: &MatrixOperator, balls: &BallFamily) -> Result<f64> {
    bmo_column(&a.adjoint(), balls)
}

/// Row, column and combined matrix BMO seminorms.
pub fn bmo_norm(a: &MatrixOperator, balls: &BallFamily) -> Result<BmoNorms> {
    let bmo_c = bmo_column(a, balls)?;
    let bmo_r = bmo_row(a, balls)?;
    Ok(BmoNorms {
        bmo: bmo_r.max(bmo_c),
        bmo_r,
        bmo_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schatten::{schatten_norm, SchattenExponent};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Closed form `(A*A) ∘ K - (A ∘ K)*(A ∘ K)` with `K_xy = avg_{z∈Q} e^{2πi z(x-y)/N}`.
    fn oracle_column(a: &MatrixOperator, balls: &BallFamily) -> f64 {
        let l = balls.lattice();
        let order = l.len() as f64;
        let n = a.len();
        let ata = a.entries().adjoint() * a.entries();
        let mut best = 0.0f64;
        for i in 0..balls.len() {
            let q = balls.members(i);
            let k = |d: i64| -> C64 {
                q.iter()
                    .map(|&z| {
                        C64::from_polar(
                            1.0,
                            2.0 * std::f64::consts::PI * (z as i64 * d) as f64 / order,
                        )
                    })
                    .sum::<C64>()
                    / q.len() as f64
            };
            let kmat = Mat::from_fn(n, n, |x, y| k(x as i64 - y as i64));
            let ak = linalg::hadamard(a.entries(), kmat.as_ref());
            let t = linalg::hadamard(ata.as_ref(), kmat.as_ref()) - ak.adjoint() * &ak;
            best = best.max(linalg::lambda_max(t.as_ref(), "oracle").unwrap().sqrt());
        }
        best
    }

    #[test]
    fn standard_family_shape() {
        let l = Lattice::cyclic(16).unwrap();
        let f = BallFamily::standard(&l).unwrap();
        assert_eq!(f.len(), 16 * 5);
        assert!(f.members(0).len() >= 2);
        let whole = f.balls().iter().position(|b| b.radius == 16.0).unwrap();
        assert_eq!(f.members(whole).len(), 16);
    }

    #[test]
    fn diagonal_vanishes() {
        let l = Lattice::cyclic(12).unwrap();
        let d = MatrixOperator::from_fn(&l, "d", |x, y| {
            if x == y {
                C64::new(1.0 + x as f64, -0.5)
            } else {
                linalg::ZERO
            }
        })
        .unwrap();
        let b = bmo_norm(&d, &BallFamily::standard(&l).unwrap()).unwrap();
        assert_eq!(
            b,
            BmoNorms {
                bmo: 0.0,
                bmo_r: 0.0,
                bmo_c: 0.0
            }
        );
    }

    #[test]
    fn matrix_unit_on_whole_grid() {
        let l = Lattice::cyclic(8).unwrap();
        let e = MatrixOperator::matrix_unit(&l, 2, 5).unwrap();
        let whole = BallFamily::new(
            &l,
            vec![Ball {
                center: 0,
                radius: 8.0,
            }],
        )
        .unwrap();
        let v = bmo_column(&e, &whole).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bounded_by_operator_norm_and_matches_oracle() {
        let l = Lattice::cyclic(16).unwrap();
        let family = BallFamily::standard(&l).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..3 {
            let a = MatrixOperator::random(&l, &mut rng).unwrap();
            let b = bmo_norm(&a, &family).unwrap();
            let op = schatten_norm(&a, SchattenExponent::Infinity).unwrap();
            assert!(b.bmo <= op + 1e-10);
            let oracle = oracle_column(&a, &family);
            assert!((b.bmo_c - oracle).abs() <= 1e-10 * op);
            assert_eq!(b.bmo_r, bmo_column(&a.adjoint(), &family).unwrap());
        }
    }

    #[test]
    fn monotone_in_family() {
        let l = Lattice::cyclic(10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = MatrixOperator::random(&l, &mut rng).unwrap();
        let small = BallFamily::new(
            &l,
            vec![Ball {
                center: 0,
                radius: 10.0,
            }],
        )
        .unwrap();
        let mut more = small.balls().to_vec();
        more.extend((0..10).map(|c| Ball {
            center: c,
            radius: 2.0,
        }));
        let big = BallFamily::new(&l, more).unwrap();
        let (s, b) = (bmo_norm(&a, &small).unwrap(), bmo_norm(&a, &big).unwrap());
        assert!(b.bmo_c >= s.bmo_c && b.bmo_r >= s.bmo_r && b.bmo >= s.bmo);
    }

    #[test]
    fn guards() {
        let l = Lattice::cyclic(65).unwrap();
        let a = MatrixOperator::identity(&l).unwrap();
        let f = BallFamily::new(
            &l,
            vec![Ball {
                center: 0,
                radius: 65.0,
            }],
        )
        .unwrap();
        assert!(matches!(bmo_norm(&a, &f), Err(Error::SizeGuard(_))));
        let small = Lattice::cyclic(4).unwrap();
        assert!(BallFamily::new(
            &small,
            vec![Ball {
                center: 0,
                radius: 1.0
            }]
        )
        .is_err());
    }
}
