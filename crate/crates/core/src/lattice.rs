//! Index geometry: integer lattices, sampled boxes and cyclic groups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shape of the index set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    /// `{-N..N}^n` with unit spacing.
    Integer,
    /// `h * {-N..N}^n`.
    SampledBox,
    /// `Z_N^n`, points `0..N` per axis with wraparound.
    Cyclic,
}

impl Topology {
    pub(crate) fn code(self) -> u8 {
        match self {
            Topology::Integer => 0,
            Topology::SampledBox => 1,
            Topology::Cyclic => 2,
        }
    }

    pub(crate) fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Topology::Integer),
            1 => Some(Topology::SampledBox),
            2 => Some(Topology::Cyclic),
            _ => None,
        }
    }
}

/// Integer coordinates of a lattice point. Unused trailing axes are 0.
pub type Point = [i64; 2];

/// A finite index set in dimension 1 or 2 with lexicographic point order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    dimension: usize,
    half_width: usize,
    spacing: f64,
    topology: Topology,
}

impl Lattice {
    pub fn new(
        dimension: usize,
        half_width: usize,
        spacing: f64,
        topology: Topology,
    ) -> Result<Self> {
        if !(1..=2).contains(&dimension) {
            return Err(Error::SizeGuard(format!(
                "dimension {dimension} not supported (n must be 1 or 2)"
            )));
        }
        if half_width < 2 {
            return Err(Error::InvalidArgument(format!(
                "half-width {half_width} too small (N >= 2 required)"
            )));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "spacing {spacing} must be positive"
            )));
        }
        if topology != Topology::SampledBox && spacing != 1.0 {
            return Err(Error::InvalidArgument(format!(
                "spacing must be 1 on {topology:?} lattices, got {spacing}"
            )));
        }
        Ok(Lattice {
            dimension,
            half_width,
            spacing,
            topology,
        })
    }

    /// `{-N..N}` with unit spacing.
    pub fn integer(half_width: usize) -> Result<Self> {
        Self::new(1, half_width, 1.0, Topology::Integer)
    }

    /// `h * {-N..N}`.
    pub fn sampled(half_width: usize, spacing: f64) -> Result<Self> {
        Self::new(1, half_width, spacing, Topology::SampledBox)
    }

    /// `Z_N`.
    pub fn cyclic(order: usize) -> Result<Self> {
        Self::new(1, order, 1.0, Topology::Cyclic)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn is_cyclic(&self) -> bool {
        self.topology == Topology::Cyclic
    }

    /// Number of points along one axis.
    pub fn side(&self) -> usize {
        match self.topology {
            Topology::Cyclic => self.half_width,
            _ => 2 * self.half_width + 1,
        }
    }

    /// Total number of points.
    pub fn len(&self) -> usize {
        self.side().pow(self.dimension as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn axis_min(&self) -> i64 {
        match self.topology {
            Topology::Cyclic => 0,
            _ => -(self.half_width as i64),
        }
    }

    /// Integer coordinates of the point with the given index.
    pub fn point(&self, index: usize) -> Point {
        let side = self.side();
        let min = self.axis_min();
        match self.dimension {
            1 => [index as i64 + min, 0],
            _ => [(index / side) as i64 + min, (index % side) as i64 + min],
        }
    }

    /// Index of a point given by integer coordinates, if it lies on the lattice.
    /// Cyclic coordinates are reduced modulo `N` first.
    pub fn index_of(&self, point: Point) -> Option<usize> {
        let side = self.side() as i64;
        let min = self.axis_min();
        let mut index = 0i64;
        for &c in &point[..self.dimension] {
            let c = if self.is_cyclic() {
                c.rem_euclid(side)
            } else {
                c
            };
            let offset = c - min;
            if offset < 0 || offset >= side {
                return None;
            }
            index = index * side + offset;
        }
        Some(index as usize)
    }

    /// Real coordinates `h * point`.
    pub fn coords(&self, index: usize) -> [f64; 2] {
        let p = self.point(index);
        [p[0] as f64 * self.spacing, p[1] as f64 * self.spacing]
    }

    /// Reduce an integer difference to the cyclic representative in `(-N/2, N/2]`.
    /// Identity on non-cyclic lattices.
    pub fn wrap(&self, d: i64) -> i64 {
        if !self.is_cyclic() {
            return d;
        }
        let n = self.half_width as i64;
        let r = d.rem_euclid(n);
        if r > n / 2 {
            r - n
        } else {
            r
        }
    }

    /// Integer difference `x - y`, wrapped on cyclic lattices.
    pub fn int_difference(&self, x: usize, y: usize) -> Point {
        let (px, py) = (self.point(x), self.point(y));
        [self.wrap(px[0] - py[0]), self.wrap(px[1] - py[1])]
    }

    /// Real difference `x - y`, wrapped on cyclic lattices.
    pub fn difference(&self, x: usize, y: usize) -> [f64; 2] {
        let d = self.int_difference(x, y);
        [d[0] as f64 * self.spacing, d[1] as f64 * self.spacing]
    }

    /// Euclidean distance `|x - y|` in real units (wrapped metric on cyclic lattices).
    pub fn distance(&self, x: usize, y: usize) -> f64 {
        let d = self.difference(x, y);
        d[0].hypot(d[1])
    }

    /// Euclidean norm of a point's real coordinates.
    pub fn radius(&self, x: usize) -> f64 {
        let c = self.coords(x);
        c[0].hypot(c[1])
    }

    pub(crate) fn ensure_same(&self, other: &Lattice, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::LatticeMismatch(format!(
                "{what}: {self:?} vs {other:?}"
            )))
        }
    }
}

/// Exponent vector `γ` of a partial derivative or difference.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(exponents: Vec<usize>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(dimension: usize) -> Self {
        MultiIndex(vec![0; dimension])
    }

    pub fn exponents(&self) -> &[usize] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    /// `|γ| = Σ γ_s`.
    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    /// All multi-indices in dimension `n` with order at most `max_order`,
    /// sorted by order then lexicographically.
    pub fn up_to(dimension: usize, max_order: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for order in 0..=max_order {
            match dimension {
                1 => out.push(MultiIndex(vec![order])),
                _ => {
                    for a in (0..=order).rev() {
                        out.push(MultiIndex(vec![a, order - a]));
                    }
                }
            }
        }
        out
    }
}

/// `[n/2] + 1`, the highest derivative order in the HMS functionals.
pub fn hms_order(dimension: usize) -> usize {
    dimension / 2 + 1
}
