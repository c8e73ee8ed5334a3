//! Grid cells, alignment and the additive flattening of aligned points.

use super::{Packer, Point, PointSet};
use crate::error::{Error, Result};
use smallvec::SmallVec;

/// Uniform grid of cubes with side `side` over `[universe]^dim`.
///
/// The side is always even so that half-cell shifts are integral; odd
/// requests are rounded up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridConfig {
    side: u64,
    universe: u64,
    dim: usize,
}

impl GridConfig {
    pub fn new(side: u64, universe: u64, dim: usize) -> Result<Self> {
        if side == 0 {
            return Err(Error::InvalidParameter("grid side must be positive".into()));
        }
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        let side = side + (side & 1);
        if side > universe.max(2) {
            return Err(Error::InvalidParameter(format!(
                "grid side {side} exceeds universe {universe}"
            )));
        }
        Ok(GridConfig { side, universe, dim })
    }

    pub fn side(&self) -> u64 {
        self.side
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of cells per axis needed to hold sums of two points of the
    /// universe: `2 * ceil(U / side)`.
    pub fn sum_cells_per_axis(&self) -> u64 {
        2 * self.universe.div_ceil(self.side)
    }

    /// Cube volume `side^dim`.
    pub fn volume(&self) -> u64 {
        self.side.pow(self.dim as u32)
    }

    /// Additive packer for cell labels of points and of pairwise sums.
    pub fn cell_packer(&self) -> Result<Packer> {
        Packer::new(self.dim, self.sum_cells_per_axis())
    }

    #[inline]
    pub fn cell_into(&self, p: &[u64], out: &mut SmallVec<[u64; 4]>) {
        out.clear();
        out.extend(p.iter().map(|&x| x / self.side));
    }
}

/// Label of the grid cell containing a point: coordinate-wise floor division.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellLabel(pub SmallVec<[u64; 4]>);

impl std::ops::Deref for CellLabel {
    type Target = [u64];
    fn deref(&self) -> &[u64] {
        &self.0
    }
}

pub fn cell_of(p: &[u64], g: &GridConfig) -> Result<CellLabel> {
    if p.len() != g.dim {
        return Err(Error::DimensionMismatch { expected: g.dim, got: p.len() });
    }
    Ok(CellLabel(p.iter().map(|&x| x / g.side).collect()))
}

/// One aligned piece of a set: `subset = { p - shift }` for the points `p`
/// whose residues mod the grid side are at least `side/2` exactly on the
/// coordinates in `mask`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignedPart {
    /// Bit `j` set when coordinate `j` was shifted down by `side/2`.
    pub mask: u32,
    pub shift: Point,
    pub subset: PointSet,
}

/// Splits `s` into at most `2^d` aligned parts, ordered by mask.
///
/// Every point of every part has all residues below `side/2`, so for two
/// aligned points the cell of the sum is the sum of the cells.
pub fn align_decompose(s: &PointSet, g: &GridConfig) -> Vec<AlignedPart> {
    let d = s.dim();
    assert_eq!(d, g.dim, "align_decompose: dimension mismatch");
    let half = g.side / 2;
    let mut buckets: Vec<Vec<u64>> = vec![Vec::new(); 1 << d];
    for p in s.iter() {
        let mut mask = 0u32;
        for (j, &x) in p.iter().enumerate() {
            if x % g.side >= half {
                mask |= 1 << j;
            }
        }
        let b = &mut buckets[mask as usize];
        for (j, &x) in p.iter().enumerate() {
            b.push(if mask & (1 << j) != 0 { x - half } else { x });
        }
    }
    buckets
        .into_iter()
        .enumerate()
        .filter(|(_, b)| !b.is_empty())
        .map(|(mask, coords)| {
            let shift = Point((0..d).map(|j| if mask & (1 << j) != 0 { half } else { 0 }).collect());
            let subset = PointSet::from_flat(d, s.universe(), coords).expect("shifted points stay in universe");
            AlignedPart { mask: mask as u32, shift, subset }
        })
        .collect()
}

/// The integer map
/// `L * sum_j floor(x_j/l) * (2 ceil(U/l))^j + sum_j (x_j mod l) * l^j`
/// with `L = l^d`. It is injective, and additive on pairs of aligned points.
#[derive(Debug, Clone, Copy)]
pub struct Flattener {
    grid: GridConfig,
    volume: u64,
    cells: Packer,
    residues: Packer,
}

impl Flattener {
    pub fn new(grid: &GridConfig) -> Result<Self> {
        let volume = grid.volume();
        let cells = grid.cell_packer()?;
        let total = (volume as u128) * (cells.span() as u128);
        if total > (1u128 << 62) {
            return Err(Error::Overflow(format!(
                "flattened universe {total} = {volume} * {} exceeds 2^62",
                cells.span()
            )));
        }
        let residues = Packer::new(grid.dim, grid.side)?;
        Ok(Flattener { grid: *grid, volume, cells, residues })
    }

    /// Exclusive bound on flattened values of points and pairwise sums.
    pub fn span(&self) -> u64 {
        self.volume * self.cells.span()
    }

    pub fn grid(&self) -> &GridConfig {
        &self.grid
    }

    /// `None` when the point lies outside the range of pairwise sums.
    #[inline]
    pub fn map(&self, p: &[u64]) -> Option<u64> {
        let side = self.grid.side;
        let mut cell = 0u64;
        let mut res = 0u64;
        let cb = self.cells.base();
        for &x in p.iter().rev() {
            let c = x / side;
            if c >= cb {
                return None;
            }
            cell = cell * cb + c;
            res = res * side + x % side;
        }
        Some(self.volume * cell + res)
    }

    /// Value of the point whose cell has packed key `cell_key` and whose
    /// in-cell offset has packed key `residue_key`.
    #[inline]
    pub fn compose(&self, cell_key: u64, residue_key: u64) -> u64 {
        self.volume * cell_key + residue_key
    }

    pub fn residue_packer(&self) -> &Packer {
        &self.residues
    }

    pub fn cell_packer(&self) -> &Packer {
        &self.cells
    }

    pub fn unmap(&self, v: u64) -> Point {
        let cell = self.cells.unpack(v / self.volume);
        let res = self.residues.unpack(v % self.volume);
        Point(cell.iter().zip(res.iter()).map(|(c, r)| c * self.grid.side + r).collect())
    }
}

/// Flattens a set to one dimension; see [`Flattener`].
pub fn flatten_to_1d(s: &PointSet, g: &GridConfig) -> Result<PointSet> {
    if s.dim() != g.dim {
        return Err(Error::DimensionMismatch { expected: g.dim, got: s.dim() });
    }
    let f = Flattener::new(g)?;
    let mut out = Vec::with_capacity(s.len());
    for p in s.iter() {
        out.push(f.map(p).ok_or(Error::OutOfUniverse { value: *p.iter().max().unwrap(), universe: g.universe })?);
    }
    PointSet::from_values(f.span(), out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(side: u64, universe: u64, dim: usize) -> GridConfig {
        GridConfig::new(side, universe, dim).unwrap()
    }

    #[test]
    fn cell_examples() {
        assert_eq!(&*cell_of(&[5, 6], &grid(4, 16, 2)).unwrap(), &[1, 1]);
        assert_eq!(&*cell_of(&[0, 0], &grid(4, 16, 2)).unwrap(), &[0, 0]);
        assert_eq!(&*cell_of(&[7, 8, 3], &grid(4, 16, 3)).unwrap(), &[1, 2, 0]);
        assert!(matches!(cell_of(&[1], &grid(4, 16, 2)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn side_rounds_up_to_even() {
        assert_eq!(grid(3, 16, 1).side(), 4);
        assert_eq!(grid(1, 16, 1).side(), 2);
        assert!(GridConfig::new(0, 16, 1).is_err());
        assert!(GridConfig::new(32, 16, 1).is_err());
    }

    #[test]
    fn align_example() {
        let s = PointSet::new(2, 8, [[0, 0], [1, 3]]).unwrap();
        let parts = align_decompose(&s, &grid(4, 8, 2));
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].mask, 0);
        assert_eq!(parts[0].subset.to_points(), vec![Point::new(&[0, 0])]);
        assert_eq!(parts[1].mask, 0b10);
        assert_eq!(&*parts[1].shift, &[0, 2]);
        assert_eq!(parts[1].subset.to_points(), vec![Point::new(&[1, 1])]);
    }

    #[test]
    fn align_trivial_cases() {
        let s = PointSet::new(2, 16, [[0, 1], [4, 5], [9, 8]]).unwrap();
        let parts = align_decompose(&s, &grid(4, 16, 2));
        assert_eq!(parts.len(), 1);
        assert_eq!(&*parts[0].shift, &[0, 0]);
        assert_eq!(parts[0].subset, s);
        assert!(align_decompose(&PointSet::empty(2, 16), &grid(4, 16, 2)).is_empty());
    }

    #[test]
    fn flatten_examples() {
        let s = PointSet::new(2, 8, [[5, 6]]).unwrap();
        let f = flatten_to_1d(&s, &grid(4, 8, 2)).unwrap();
        assert_eq!(f.coords(), &[89]);
        let z = flatten_to_1d(&PointSet::new(2, 8, [[0, 0]]).unwrap(), &grid(4, 8, 2)).unwrap();
        assert_eq!(z.coords(), &[0]);
        let line = PointSet::from_values(50, 0..50).unwrap();
        let f1 = flatten_to_1d(&line, &grid(6, 50, 1)).unwrap();
        assert_eq!(f1.coords(), line.coords());
    }

    #[test]
    fn flatten_overflow_is_reported() {
        let g = grid(2, 1 << 40, 3);
        assert!(matches!(Flattener::new(&g), Err(Error::Overflow(_))));
    }
}
