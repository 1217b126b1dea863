//! Dyadic Littlewood–Paley partitions, symbol partitions, and row/column square functions.

use std::fmt;
use std::sync::Arc;

use faer::Mat;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{self, C64};
use crate::schatten::{schur_apply, SchattenExponent};
use crate::symbol::{MatrixOperator, SymbolGrid};

/// `φ(t) = 1` for `t <= 1`, `exp(1 - 1/(1 - (t-1)²))` on `(1, 2)`, `0` for `t >= 2`.
pub fn phi(t: f64) -> f64 {
    if t <= 1.0 {
        1.0
    } else if t >= 2.0 {
        0.0
    } else {
        let u = t - 1.0;
        (1.0 - 1.0 / (1.0 - u * u)).exp()
    }
}

/// The radial profile `φ`.
pub fn make_profile() -> fn(f64) -> f64 {
    phi
}

/// Radial generator `ψ0(r) = φ(r) - φ(2r)`, supported in `[1/2, 2]`.
pub fn psi0(r: f64) -> f64 {
    phi(r) - phi(2.0 * r)
}

/// `ψ_j(ξ) = φ(2^{-j}|ξ|) - φ(2^{1-j}|ξ|) = ψ0(2^{-j}|ξ|)`.
pub fn psi_j(j: i32, xi: &[f64]) -> f64 {
    let r = xi.iter().map(|c| c * c).sum::<f64>().sqrt();
    phi(2f64.powi(-j) * r) - phi(2f64.powi(1 - j) * r)
}

/// Pair function `Ψ(x, y)` for a custom partition; `Ψ_j(x, y) = Ψ(2^j x, 2^j y)`.
pub type PairProfile = Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum PartitionKind {
    /// `Ψ(x, y) = ψ0(|x - y|)`.
    ToeplitzAnnuli,
    /// `Ψ(x, y) = ψ0((|x|² + |y|²)^{1/2})`.
    Corona,
    Custom(PairProfile),
}

impl fmt::Debug for PartitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionKind::ToeplitzAnnuli => f.write_str("ToeplitzAnnuli"),
            PartitionKind::Corona => f.write_str("Corona"),
            PartitionKind::Custom(_) => f.write_str("Custom"),
        }
    }
}

/// A finite dyadic family `{ψ_j}` / `{Ψ_j}`, `j_min <= j <= j_max`.
#[derive(Clone, Debug)]
pub struct PartitionFamily {
    pub kind: PartitionKind,
    pub j_min: i32,
    pub j_max: i32,
}

impl PartitionFamily {
    pub fn new(kind: PartitionKind, j_min: i32, j_max: i32) -> Result<Self> {
        if j_min > j_max {
            return Err(Error::InvalidArgument(format!(
                "empty scale range {j_min}..={j_max}"
            )));
        }
        Ok(PartitionFamily { kind, j_min, j_max })
    }

    /// Scales covering every nonzero radius on the lattice: pair radii lie in
    /// `[h, R]`, and `Ψ_j` sums to 1 for `2^{-j_max} <= ρ <= 2^{-j_min}`.
    pub fn covering(kind: PartitionKind, lattice: &Lattice) -> Result<Self> {
        let h = lattice.spacing();
        let reach = match kind {
            PartitionKind::Corona => {
                let r = (0..lattice.len())
                    .map(|i| lattice.radius(i))
                    .fold(0.0, f64::max);
                r * std::f64::consts::SQRT_2
            }
            _ => {
                let far = lattice.len() - 1;
                lattice.distance(0, far).max(h * lattice.side() as f64)
            }
        };
        let j_max = (-h.log2()).ceil() as i32;
        let j_min = (-reach.log2()).floor() as i32;
        Self::new(kind, j_min, j_max)
    }

    pub fn scales(&self) -> impl Iterator<Item = i32> {
        self.j_min..=self.j_max
    }

    /// Frequencies with `Σ_j ψ_j(ξ) = 1`: `2^{j_min} <= |ξ| <= 2^{j_max}`.
    pub fn covers_frequency(&self, r: f64) -> bool {
        r >= 2f64.powi(self.j_min) && r <= 2f64.powi(self.j_max)
    }

    /// Pair radii with `Σ_j Ψ_j = 1`: `2^{-j_max} <= ρ <= 2^{-j_min}`.
    pub fn covers_radius(&self, rho: f64) -> bool {
        rho >= 2f64.powi(-self.j_max) && rho <= 2f64.powi(-self.j_min)
    }

    /// Radius entering `Ψ` at a pair, for the built-in kinds.
    pub fn pair_radius(&self, lattice: &Lattice, x: usize, y: usize) -> Option<f64> {
        match self.kind {
            PartitionKind::ToeplitzAnnuli => Some(lattice.distance(x, y)),
            PartitionKind::Corona => Some(lattice.radius(x).hypot(lattice.radius(y))),
            PartitionKind::Custom(_) => None,
        }
    }

    fn pair_value(&self, lattice: &Lattice, j: i32, x: usize, y: usize) -> f64 {
        let s = 2f64.powi(j);
        match &self.kind {
            PartitionKind::Custom(f) => {
                let n = lattice.dimension();
                let (cx, cy) = (lattice.coords(x), lattice.coords(y));
                let sx: Vec<f64> = cx[..n].iter().map(|c| c * s).collect();
                let sy: Vec<f64> = cy[..n].iter().map(|c| c * s).collect();
                f(&sx, &sy)
            }
            _ => psi0(s * self.pair_radius(lattice, x, y).expect("built-in kind")),
        }
    }

    /// Whether a pair lies where the truncated family sums to 1.
    /// Custom kinds are never reported as covered.
    pub fn covers_pair(&self, lattice: &Lattice, x: usize, y: usize) -> bool {
        self.pair_radius(lattice, x, y)
            .is_some_and(|r| self.covers_radius(r))
    }
}

/// Result of [`partition_sum_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionCheck {
    /// `max |Σ_j ψ_j(ξ) - 1|` over covered samples.
    pub max_deviation: f64,
    pub checked: usize,
    /// Indices of samples outside the covered annulus (not included in the maximum).
    pub flagged: Vec<usize>,
}

/// `max |Σ_j ψ_j(ξ) - 1|` over samples in the covered annulus; other samples are flagged.
pub fn partition_sum_check(family: &PartitionFamily, samples: &[Vec<f64>]) -> PartitionCheck {
    let mut check = PartitionCheck {
        max_deviation: 0.0,
        checked: 0,
        flagged: Vec::new(),
    };
    for (i, xi) in samples.iter().enumerate() {
        let r = xi.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !family.covers_frequency(r) {
            check.flagged.push(i);
            continue;
        }
        let sum: f64 = family.scales().map(|j| psi_j(j, xi)).sum();
        check.max_deviation = check.max_deviation.max((sum - 1.0).abs());
        check.checked += 1;
    }
    check
}

/// `[Ψ_j sampled on the lattice for j in j_min..=j_max]`.
pub fn symbol_partition(family: &PartitionFamily, lattice: &Lattice) -> Result<Vec<SymbolGrid>> {
    family
        .scales()
        .map(|j| {
            SymbolGrid::from_fn(lattice, format!("{:?}[{j}]", family.kind), |x, y| {
                C64::from(family.pair_value(lattice, j, x, y))
            })
        })
        .collect()
}

/// Largest number of parts that are nonzero at a single pair.
pub fn overlap_count(parts: &[SymbolGrid]) -> usize {
    let Some(first) = parts.first() else {
        return 0;
    };
    let n = first.len();
    let mut worst = 0;
    for x in 0..n {
        for y in 0..n {
            let c = parts.iter().filter(|p| p.get(x, y) != linalg::ZERO).count();
            worst = worst.max(c);
        }
    }
    worst
}

/// `[S_{Ψ_j}(A)]`.
pub fn lp_decompose(a: &MatrixOperator, parts: &[SymbolGrid]) -> Result<Vec<MatrixOperator>> {
    parts.iter().map(|p| schur_apply(p, a)).collect()
}

/// Reconstruction on the covered pairs: `(‖Σ_j A_j - A‖_F restricted to covered pairs, uncovered pair count)`.
pub fn reconstruction_residual(
    a: &MatrixOperator,
    pieces: &[MatrixOperator],
    family: &PartitionFamily,
) -> Result<(f64, usize)> {
    let lattice = a.lattice();
    let n = a.len();
    let mut uncovered = 0;
    let mut diff = Mat::<C64>::zeros(n, n);
    for x in 0..n {
        for y in 0..n {
            if !family.covers_pair(lattice, x, y) {
                uncovered += 1;
                continue;
            }
            let sum: C64 = pieces.iter().map(|p| p.entries()[(x, y)]).sum();
            diff[(x, y)] = sum - a.entries()[(x, y)];
        }
    }
    Ok((linalg::frobenius(diff.as_ref()), uncovered))
}

fn gram_sum(rows: &[Mat<C64>], cols: &[Mat<C64>], n: usize) -> Mat<C64> {
    let mut s = Mat::<C64>::zeros(n, n);
    for a in rows {
        s += a * a.adjoint();
    }
    for b in cols {
        s += b.adjoint() * b;
    }
    s
}

fn sqrt_schatten(s: &Mat<C64>, p: SchattenExponent) -> Result<f64> {
    let ev = linalg::hermitian_eigenvalues(s.as_ref(), "square function")?;
    let sv: Vec<f64> = ev.iter().map(|l| l.max(0.0).sqrt()).collect();
    Ok(crate::schatten::norm_from_singular_values(&sv, p))
}

fn common_size(parts: &[MatrixOperator]) -> Result<usize> {
    let first = parts
        .first()
        .ok_or_else(|| Error::InvalidArgument("no parts given".into()))?;
    for p in parts {
        first
            .lattice()
            .ensure_same(p.lattice(), "square function parts")?;
    }
    Ok(first.len())
}

/// `‖(Σ_j A_j A_j* + A_j* A_j)^{1/2}‖_{S_p}` for `p >= 2`.
pub fn square_function_norm(parts: &[MatrixOperator], p: SchattenExponent) -> Result<f64> {
    if p.value() < 2.0 {
        return Err(Error::Redirect(
            "p < 2 takes the infimum over row/column splittings (rc_split_upper)".into(),
        ));
    }
    let n = common_size(parts)?;
    let mats: Vec<Mat<C64>> = parts.iter().map(|a| a.entries().to_owned()).collect();
    sqrt_schatten(&gram_sum(&mats, &mats, n), p)
}

/// Outcome of [`rc_split_upper`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RcSplit {
    /// Best value found; an upper bound for the infimum.
    pub value: f64,
    /// All mass on the row side: `A_j = S_{Ψ_j}(A)`, `B_j = 0`.
    pub row_only: f64,
    /// All mass on the column side.
    pub column_only: f64,
    pub evaluations: usize,
}

const GREEDY_LIMIT: usize = 16;

/// Upper bound for `inf ‖(Σ_j A_j A_j* + B_j* B_j)^{1/2}‖_{S_p}` over splittings
/// `S_{Ψ_j}(A) = A_j + B_j`, `1 < p <= 2`.
///
/// Splittings are entrywise masks `A_j = w_j ∘ P_j`, `B_j = (1 - w_j) ∘ P_j`.
/// Starting from the better trivial split, each sweep revisits every part and
/// keeps the best of several candidate masks (constants, triangular masks,
/// and single-entry toggles on small matrices), so the value never increases.
pub fn rc_split_upper(
    parts: &[MatrixOperator],
    p: SchattenExponent,
    sweeps: usize,
) -> Result<RcSplit> {
    let pv = p.value();
    if !(pv > 1.0 && pv <= 2.0) {
        return Err(Error::InvalidArgument(format!(
            "row/column split needs 1 < p <= 2, got {p}"
        )));
    }
    let n = common_size(parts)?;
    let pieces: Vec<Mat<C64>> = parts.iter().map(|a| a.entries().to_owned()).collect();
    let k = pieces.len();
    let evaluate = |weights: &[Mat<f64>]| -> Result<f64> {
        let rows: Vec<Mat<C64>> = (0..k)
            .map(|j| Mat::from_fn(n, n, |x, y| pieces[j][(x, y)] * weights[j][(x, y)]))
            .collect();
        let cols: Vec<Mat<C64>> = (0..k)
            .map(|j| Mat::from_fn(n, n, |x, y| pieces[j][(x, y)] * (1.0 - weights[j][(x, y)])))
            .collect();
        sqrt_schatten(&gram_sum(&rows, &cols, n), p)
    };
    let constant = |c: f64| Mat::from_fn(n, n, |_, _| c);
    let row_only = evaluate(&vec![constant(1.0); k])?;
    let column_only = evaluate(&vec![constant(0.0); k])?;
    let mut evaluations = 2;
    let mut weights = vec![constant(if row_only <= column_only { 1.0 } else { 0.0 }); k];
    let mut best = row_only.min(column_only);

    let mut candidates: Vec<Mat<f64>> = [0.0, 0.25, 0.5, 0.75, 1.0].map(constant).to_vec();
    candidates.push(Mat::from_fn(n, n, |x, y| if x <= y { 1.0 } else { 0.0 }));
    candidates.push(Mat::from_fn(n, n, |x, y| if x >= y { 1.0 } else { 0.0 }));
    candidates.push(Mat::from_fn(n, n, |x, y| if x < y { 1.0 } else { 0.0 }));
    candidates.push(Mat::from_fn(n, n, |x, y| if x > y { 1.0 } else { 0.0 }));

    for _ in 0..sweeps {
        let before = best;
        for j in 0..k {
            let trials: Vec<Result<f64>> = candidates
                .par_iter()
                .map(|c| {
                    let mut w = weights.clone();
                    w[j] = c.clone();
                    evaluate(&w)
                })
                .collect();
            evaluations += trials.len();
            for (c, v) in candidates.iter().zip(trials) {
                let v = v?;
                if v < best {
                    best = v;
                    weights[j] = c.clone();
                }
            }
            if n <= GREEDY_LIMIT {
                for x in 0..n {
                    for y in 0..n {
                        if pieces[j][(x, y)] == linalg::ZERO {
                            continue;
                        }
                        let mut w = weights.clone();
                        w[j][(x, y)] = 1.0 - w[j][(x, y)].round();
                        let v = evaluate(&w)?;
                        evaluations += 1;
                        if v < best {
                            best = v;
                            weights = w;
                        }
                    }
                }
            }
        }
        if best >= before {
            break;
        }
    }
    Ok(RcSplit {
        value: best,
        row_only,
        column_only,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schatten::schatten_norm;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(v: f64) -> SchattenExponent {
        SchattenExponent::new(v).unwrap()
    }

    #[test]
    fn profile_values() {
        let f = make_profile();
        assert_eq!(f(0.5), 1.0);
        assert_eq!(f(2.5), 0.0);
        assert!((f(1.5) - (-1.0f64 / 3.0).exp()).abs() < 1e-15);
        assert_eq!(psi0(1.0), 1.0);
        assert_eq!(psi0(0.5), 0.0);
        assert_eq!(psi0(2.0), 0.0);
    }

    #[test]
    fn psi_j_support_and_sign() {
        for j in -3..=3 {
            for i in 0..2000 {
                let r = i as f64 * 0.01;
                let v = psi_j(j, &[r]);
                assert!(v >= 0.0);
                let lo = 2f64.powi(j - 1);
                let hi = 2f64.powi(j + 1);
                if v > 0.0 {
                    assert!(r >= lo && r <= hi, "j={j} r={r}");
                }
            }
        }
    }

    #[test]
    fn telescoping_at_unit_frequency() {
        let fam = PartitionFamily::new(PartitionKind::ToeplitzAnnuli, -1, 1).unwrap();
        let c = partition_sum_check(&fam, &[vec![1.0], vec![-1.0], vec![0.6, 0.8]]);
        assert_eq!(c.max_deviation, 0.0);
        assert!(c.flagged.is_empty());
    }

    #[test]
    fn random_covered_frequencies() {
        let fam = PartitionFamily::new(PartitionKind::Corona, -4, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let samples: Vec<Vec<f64>> = (0..1000)
            .map(|_| {
                let r = 2f64.powf(rng.random_range(-4.0..5.0));
                let a: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                vec![r * a.cos(), r * a.sin()]
            })
            .collect();
        let c = partition_sum_check(&fam, &samples);
        assert!(c.max_deviation <= 1e-12);
        assert_eq!(c.checked + c.flagged.len(), 1000);
        let out = partition_sum_check(&fam, &[vec![0.01], vec![100.0]]);
        assert_eq!(out.flagged, vec![0, 1]);
    }

    #[test]
    fn symbol_partitions_cover_and_overlap() {
        let l = Lattice::sampled(32, 0.125).unwrap();
        for kind in [PartitionKind::ToeplitzAnnuli, PartitionKind::Corona] {
            let fam = PartitionFamily::covering(kind, &l).unwrap();
            let parts = symbol_partition(&fam, &l).unwrap();
            assert!(overlap_count(&parts) <= 2);
            let n = l.len();
            let mut worst = 0.0f64;
            let mut uncovered = 0;
            for x in 0..n {
                for y in 0..n {
                    if fam.covers_pair(&l, x, y) {
                        let s: f64 = parts.iter().map(|q| q.get(x, y).re).sum();
                        worst = worst.max((s - 1.0).abs());
                    } else {
                        uncovered += 1;
                    }
                }
            }
            assert!(worst <= 1e-12);
            match fam.kind {
                PartitionKind::ToeplitzAnnuli => assert_eq!(uncovered, n),
                _ => assert_eq!(uncovered, 1),
            }
        }
    }

    #[test]
    fn decomposition_reconstructs() {
        let l = Lattice::integer(12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = MatrixOperator::random(&l, &mut rng).unwrap();
        for kind in [PartitionKind::ToeplitzAnnuli, PartitionKind::Corona] {
            let fam = PartitionFamily::covering(kind, &l).unwrap();
            let parts = symbol_partition(&fam, &l).unwrap();
            let pieces = lp_decompose(&a, &parts).unwrap();
            let (res, _) = reconstruction_residual(&a, &pieces, &fam).unwrap();
            assert!(res <= 1e-12 * a.frobenius());
        }
        let d = MatrixOperator::from_fn(&l, "diag", |x, y| {
            if x == y {
                C64::from(x as f64 + 1.0)
            } else {
                linalg::ZERO
            }
        })
        .unwrap();
        let fam = PartitionFamily::covering(PartitionKind::ToeplitzAnnuli, &l).unwrap();
        let parts = symbol_partition(&fam, &l).unwrap();
        for piece in lp_decompose(&d, &parts).unwrap() {
            assert_eq!(piece.frobenius(), 0.0);
        }
    }

    #[test]
    fn corona_pieces_match_oracle() {
        let l = Lattice::sampled(8, 0.25).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = MatrixOperator::random(&l, &mut rng).unwrap();
        let fam = PartitionFamily::new(PartitionKind::Corona, -2, 2).unwrap();
        let pieces = lp_decompose(&a, &symbol_partition(&fam, &l).unwrap()).unwrap();
        for (idx, j) in (-2..=2).enumerate() {
            for x in 0..l.len() {
                for y in 0..l.len() {
                    let (u, v) = (l.coords(x)[0], l.coords(y)[0]);
                    let w = psi0(2f64.powi(j) * (u * u + v * v).sqrt());
                    assert_eq!(pieces[idx].entries()[(x, y)], a.entries()[(x, y)] * w);
                }
            }
        }
    }

    #[test]
    fn square_function_examples() {
        let l = Lattice::cyclic(6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = MatrixOperator::random(&l, &mut rng).unwrap();
        let s2 = square_function_norm(std::slice::from_ref(&a), p(2.0)).unwrap();
        assert!((s2 - 2f64.sqrt() * a.frobenius()).abs() <= 1e-12 * s2);

        let h =
            MatrixOperator::new(l.clone(), linalg::hermitian_part(a.entries()), "herm").unwrap();
        let sinf =
            square_function_norm(std::slice::from_ref(&h), SchattenExponent::Infinity).unwrap();
        let op = schatten_norm(&h, SchattenExponent::Infinity).unwrap();
        assert!((sinf - 2f64.sqrt() * op).abs() <= 1e-12 * sinf);

        assert!(matches!(
            square_function_norm(&[a], p(1.5)),
            Err(Error::Redirect(_))
        ));
    }

    #[test]
    fn disjoint_self_adjoint_blocks() {
        // Two Hermitian pieces on complementary diagonal blocks: S = 2(A1² + A2²).
        let l = Lattice::cyclic(6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = linalg::hermitian_part(linalg::random_gaussian(6, 6, &mut rng).as_ref());
        let block = |lo: usize| {
            MatrixOperator::from_fn(&l, "b", |x, y| {
                if (lo..lo + 3).contains(&x) && (lo..lo + 3).contains(&y) {
                    h[(x, y)]
                } else {
                    linalg::ZERO
                }
            })
            .unwrap()
        };
        let parts = [block(0), block(3)];
        let q = p(4.0);
        let ours = square_function_norm(&parts, q).unwrap();
        let mut eig = Vec::new();
        for b in &parts {
            let sub = Mat::from_fn(6, 6, |x, y| b.entries()[(x, y)]);
            eig.extend(
                linalg::hermitian_eigenvalues(sub.as_ref(), "t")
                    .unwrap()
                    .into_iter()
                    .filter(|v| v.abs() > 1e-14),
            );
        }
        let oracle = eig
            .iter()
            .map(|l| (2.0 * l * l).sqrt().powf(4.0))
            .sum::<f64>()
            .powf(0.25);
        assert!((ours - oracle).abs() <= 1e-10 * oracle);
    }

    #[test]
    fn rc_split_single_part() {
        let l = Lattice::cyclic(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a = MatrixOperator::random(&l, &mut rng).unwrap();
        let r = rc_split_upper(std::slice::from_ref(&a), p(2.0), 3).unwrap();
        assert!((r.row_only - a.frobenius()).abs() <= 1e-12 * a.frobenius());
        assert!(r.value <= r.row_only);
    }

    #[test]
    fn rc_split_rank_one_scan() {
        let l = Lattice::cyclic(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = linalg::random_gaussian(4, 1, &mut rng);
        let v = linalg::random_gaussian(4, 1, &mut rng);
        let a = MatrixOperator::new(l.clone(), &u * v.adjoint(), "rank1").unwrap();
        let q = p(1.5);
        let r = rc_split_upper(std::slice::from_ref(&a), q, 4).unwrap();
        // One-parameter convex splits A_1 = tA, B_1 = (1-t)A.
        let mut scan = f64::INFINITY;
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            let s = t * t * (a.entries() * a.entries().adjoint())
                + (1.0 - t) * (1.0 - t) * (a.entries().adjoint() * a.entries());
            scan = scan.min(sqrt_schatten(&s, q).unwrap());
        }
        assert!(r.value <= r.row_only.min(r.column_only));
        assert!(scan <= r.row_only.min(r.column_only) + 1e-12);
    }

    #[test]
    fn rc_split_three_parts() {
        let l = Lattice::cyclic(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = MatrixOperator::random(&l, &mut rng).unwrap();
        let fam = PartitionFamily::new(PartitionKind::ToeplitzAnnuli, -2, 0).unwrap();
        let parts = lp_decompose(&a, &symbol_partition(&fam, &l).unwrap()).unwrap();
        assert_eq!(parts.len(), 3);
        let r = rc_split_upper(&parts, p(1.5), 2).unwrap();
        assert!(r.value <= r.row_only && r.value <= r.column_only);
    }
}
