//! Domain types shared by every solver: integer points, deduplicated point
//! sets, grid geometry and instance generation.

pub mod cluster;
pub mod gen;
pub mod grid;
pub mod io;

use crate::error::{Error, Result};
use smallvec::SmallVec;
use std::fmt;
use std::ops::Deref;

pub use cluster::{audit_cluster, cover_intervals_1d, is_monotone, monotone_violation, ClusterDesc};
pub use gen::{gen_instance, GenKind, GenParams, Instance};
pub use grid::{align_decompose, cell_of, flatten_to_1d, AlignedPart, CellLabel, GridConfig};

/// A point with non-negative integer coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point(pub SmallVec<[u64; 4]>);

impl Point {
    pub fn new(coords: &[u64]) -> Self {
        Point(SmallVec::from_slice(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinate-wise sum.
    pub fn add(&self, other: &[u64]) -> Point {
        Point(self.0.iter().zip(other).map(|(a, b)| a + b).collect())
    }

    /// Coordinate-wise difference, `None` if any coordinate would go negative.
    pub fn checked_sub(&self, other: &[u64]) -> Option<Point> {
        self.0
            .iter()
            .zip(other)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(Point)
    }
}

impl Deref for Point {
    type Target = [u64];
    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for Point {
    fn from(v: Vec<u64>) -> Self {
        Point(SmallVec::from_vec(v))
    }
}

impl From<&[u64]> for Point {
    fn from(v: &[u64]) -> Self {
        Point::new(v)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A deduplicated set of points sharing one dimension and one universe
/// bound. Coordinates are stored flat and kept in lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    universe: u64,
    coords: Vec<u64>,
}

impl PointSet {
    pub fn empty(dim: usize, universe: u64) -> Self {
        assert!(dim >= 1);
        PointSet { dim, universe, coords: Vec::new() }
    }

    pub fn new<I, P>(dim: usize, universe: u64, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[u64]>,
    {
        let mut coords = Vec::new();
        for p in points {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(dim, universe, coords)
    }

    /// Builds a set from row-major coordinates, sorting and deduplicating.
    pub fn from_flat(dim: usize, universe: u64, coords: Vec<u64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        if coords.len() % dim != 0 {
            return Err(Error::DimensionMismatch { expected: dim, got: coords.len() % dim });
        }
        if let Some(&v) = coords.iter().find(|&&v| v >= universe) {
            return Err(Error::OutOfUniverse { value: v, universe });
        }
        let coords = if dim == 1 {
            let mut c = coords;
            c.sort_unstable();
            c.dedup();
            c
        } else {
            let mut rows: Vec<&[u64]> = coords.chunks_exact(dim).collect();
            rows.sort_unstable();
            rows.dedup();
            rows.concat()
        };
        Ok(PointSet { dim, universe, coords })
    }

    /// One-dimensional set from values.
    pub fn from_values<I: IntoIterator<Item = u64>>(universe: u64, values: I) -> Result<Self> {
        Self::from_flat(1, universe, values.into_iter().collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[u64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, u64> {
        self.coords.chunks_exact(self.dim)
    }

    /// Flat coordinates; for a one-dimensional set these are the sorted values.
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn contains(&self, p: &[u64]) -> bool {
        if p.len() != self.dim {
            return false;
        }
        if self.dim == 1 {
            return self.coords.binary_search(&p[0]).is_ok();
        }
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.point(mid).cmp(p) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn to_points(&self) -> Vec<Point> {
        self.iter().map(Point::new).collect()
    }

    /// Same points under a larger universe bound.
    pub fn with_universe(&self, universe: u64) -> Result<Self> {
        if let Some(&v) = self.coords.iter().find(|&&v| v >= universe) {
            return Err(Error::OutOfUniverse { value: v, universe });
        }
        Ok(PointSet { dim: self.dim, universe, coords: self.coords.clone() })
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(Point::new)).finish()
    }
}

/// Additive encoding of points with coordinates below `base` into `u64`:
/// `key(p) = sum_j p_j * base^j`. For any `a`, `b` whose coordinate-wise sum
/// stays below `base`, `key(a) + key(b) = key(a + b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Packer {
    dim: usize,
    base: u64,
}

impl Packer {
    pub fn new(dim: usize, base: u64) -> Result<Self> {
        if dim == 0 || base < 2 {
            return Err(Error::InvalidParameter(format!("packer needs dim >= 1 and base >= 2, got {dim}, {base}")));
        }
        let mut span: u128 = 1;
        for _ in 0..dim {
            span *= base as u128;
            if span > (1u128 << 62) {
                return Err(Error::Overflow(format!("packing base {base} in dimension {dim} exceeds 2^62")));
            }
        }
        Ok(Packer { dim, base })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// Exclusive upper bound on keys.
    pub fn span(&self) -> u64 {
        self.base.pow(self.dim as u32)
    }

    #[inline]
    pub fn pack(&self, p: &[u64]) -> Option<u64> {
        let mut key = 0u64;
        for &c in p.iter().rev() {
            if c >= self.base {
                return None;
            }
            key = key * self.base + c;
        }
        Some(key)
    }

    pub fn unpack(&self, mut key: u64) -> Point {
        let mut out = SmallVec::with_capacity(self.dim);
        for _ in 0..self.dim {
            out.push(key % self.base);
            key /= self.base;
        }
        Point(out)
    }
}
