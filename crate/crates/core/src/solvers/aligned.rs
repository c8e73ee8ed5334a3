//! The grid engine shared by the structured solvers.
//!
//! Both inputs are split into aligned parts. For each pair of parts the
//! points are flattened, a BSG cover is built over the cells, remainder cell
//! pairs are solved locally (step 1), and each biclique's points are summed
//! inside the flattened image of its cell sumset (step 2).

use super::{monotone, SolveParams, SolveStats};
use crate::bsg::bsg_cover;
use crate::error::Result;
use crate::fft::sumset::strategy_costs;
use crate::fft::{sumset_within, Strategy};
use crate::model::grid::Flattener;
use crate::model::{align_decompose, GridConfig, Point, PointSet};
use crate::work::WorkCounter;
use rand::Rng;

/// Sorted flattened values grouped by cell: `keys[i]` is the cell of
/// `vals[start[i]..start[i + 1]]`.
#[derive(Debug)]
pub(crate) struct Runs {
    pub keys: Vec<u64>,
    pub start: Vec<usize>,
}

impl Runs {
    pub fn new(vals: &[u64], volume: u64) -> Runs {
        let mut keys = Vec::new();
        let mut start = Vec::new();
        for (i, &v) in vals.iter().enumerate() {
            let c = v / volume;
            if keys.last() != Some(&c) {
                keys.push(c);
                start.push(i);
            }
        }
        start.push(vals.len());
        Runs { keys, start }
    }

    pub fn run<'a>(&self, vals: &'a [u64], i: usize) -> &'a [u64] {
        &vals[self.start[i]..self.start[i + 1]]
    }
}

pub(crate) struct Engine<'p, R> {
    pub params: &'p SolveParams,
    pub alpha: f64,
    /// Remaining recursion depth for step 1; `None` never recurses.
    pub depth: Option<usize>,
    pub rng: &'p mut R,
    pub work: &'p mut WorkCounter,
    pub stats: &'p mut SolveStats,
}

impl<R: Rng> Engine<'_, R> {
    /// Hits of `(A, B, S)` as flat coordinates, on a grid of side `side`.
    pub fn solve(&mut self, a: &PointSet, b: &PointSet, s: &PointSet, side: u64) -> Result<Vec<u64>> {
        let d = a.dim();
        let grid = GridConfig::new(side, a.universe().max(b.universe()), d)?;
        let f = Flattener::new(&grid)?;
        let flatten = |set: &PointSet| -> Vec<u64> {
            let mut v: Vec<u64> = set.iter().map(|p| f.map(p).expect("aligned points lie in the grid")).collect();
            v.sort_unstable();
            v
        };
        let pa = align_decompose(a, &grid);
        let pb = align_decompose(b, &grid);
        let mut out = Vec::new();
        for x in &pa {
            let av = flatten(&x.subset);
            for y in &pb {
                let shift = x.shift.add(&y.shift);
                let mut sv: Vec<u64> = s.iter().filter_map(|p| f.map(&Point::new(p).checked_sub(&shift)?)).collect();
                sv.sort_unstable();
                if sv.is_empty() {
                    continue;
                }
                let bv = flatten(&y.subset);
                for h in self.aligned(&av, &bv, &sv, &f)? {
                    out.extend_from_slice(&f.unmap(h).add(&shift));
                }
            }
        }
        Ok(out)
    }

    fn aligned(&mut self, av: &[u64], bv: &[u64], sv: &[u64], f: &Flattener) -> Result<Vec<u64>> {
        let volume = f.grid().volume();
        let (ra, rb, rs) = (Runs::new(av, volume), Runs::new(bv, volume), Runs::new(sv, volume));
        let cover = bsg_cover(&ra.keys, &rb.keys, &rs.keys, self.alpha, self.params.variant, self.rng, self.work)?;
        self.stats.bicliques += cover.k();
        self.stats.remainder_pairs += cover.remainder.len();
        let mut hits = Vec::new();

        for &(i, j) in &cover.remainder {
            let (i, j) = (i as usize, j as usize);
            let cell = ra.keys[i] + rb.keys[j];
            let k = rs.keys.binary_search(&cell).expect("remainder pairs sum into S");
            let (x, y, z) = (ra.run(av, i), rb.run(bv, j), rs.run(sv, k));
            match self.depth {
                Some(depth) if depth > 0 && f.grid().side() > self.params.brute_cutoff as u64 => {
                    self.recurse(x, y, z, cell, depth - 1, f, &mut hits)?
                }
                _ => brute_cell(x, y, z, self.work, &mut hits),
            }
        }

        for bc in &cover.bicliques {
            let mut ai: Vec<usize> = bc.a.iter().map(|&i| i as usize).collect();
            let mut bi: Vec<usize> = bc.b.iter().map(|&j| j as usize).collect();
            ai.sort_unstable();
            bi.sort_unstable();
            let x: Vec<u64> = ai.iter().flat_map(|&i| ra.run(av, i)).copied().collect();
            let y: Vec<u64> = bi.iter().flat_map(|&j| rb.run(bv, j)).copied().collect();
            let targets: Vec<u64> = bc
                .sumset
                .iter()
                .filter_map(|c| rs.keys.binary_search(c).ok())
                .flat_map(|k| rs.run(sv, k))
                .copied()
                .collect();
            if targets.is_empty() {
                continue;
            }
            hits.extend(self.step2(&x, &y, &bc.sumset, &targets, volume)?);
        }
        Ok(hits)
    }

    /// `targets ∩ (x + y)` where `x + y` lies in the cells `cells`.
    fn step2(&mut self, x: &[u64], y: &[u64], cells: &[u64], targets: &[u64], volume: u64) -> Result<Vec<u64>> {
        let t_len = cells.len() as u64 * volume;
        let universe = (cells.last().unwrap() + 1) * volume;
        let mut chosen = self.params.step2;
        if chosen == Strategy::Auto {
            let costs = strategy_costs(x, y, t_len as usize, universe);
            chosen = costs.iter().min_by(|p, q| p.1.total_cmp(&q.1)).unwrap().0;
        }
        if chosen == Strategy::Hashed && self.params.deterministic {
            chosen = Strategy::HashedDet;
        }
        let t: Vec<u64> = match chosen {
            Strategy::Hashed | Strategy::HashedDet => {
                cells.iter().flat_map(|&c| c * volume..(c + 1) * volume).collect()
            }
            _ => vec![universe - 1],
        };
        self.stats.step2[match chosen {
            Strategy::Brute => 0,
            Strategy::Dense => 1,
            _ => 2,
        }] += 1;
        sumset_within(x, y, &t, targets, chosen, self.rng, self.work)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        &mut self,
        x: &[u64],
        y: &[u64],
        z: &[u64],
        cell: u64,
        depth: usize,
        f: &Flattener,
        hits: &mut Vec<u64>,
    ) -> Result<()> {
        let side = f.grid().side();
        let d = f.grid().dim();
        let volume = f.grid().volume();
        let rp = f.residue_packer();
        let local = |vals: &[u64]| -> Result<PointSet> {
            let coords: Vec<u64> = vals.iter().flat_map(|&v| rp.unpack(v % volume).0).collect();
            PointSet::from_flat(d, side, coords)
        };
        let sub = monotone::sub_params(self.params, side, d);
        self.stats.recursive_calls += 1;
        let found = monotone::solve_points(
            &local(x)?,
            &local(y)?,
            &local(z)?,
            &sub,
            depth,
            self.rng,
            self.work,
            self.stats,
        )?;
        for p in found.chunks_exact(d) {
            hits.push(f.compose(cell, rp.pack(p).expect("residues lie in the cell")));
        }
        Ok(())
    }
}

/// Hits of one cell triple by the cheapest of the three pair enumerations.
pub(crate) fn brute_cell(x: &[u64], y: &[u64], z: &[u64], work: &mut WorkCounter, hits: &mut Vec<u64>) {
    let (nx, ny, nz) = (x.len() as u64, y.len() as u64, z.len() as u64);
    let best = (nx * ny).min(nx * nz).min(ny * nz);
    work.pairs(best);
    if best == nx * ny {
        for &u in x {
            for &v in y {
                if z.binary_search(&(u + v)).is_ok() {
                    hits.push(u + v);
                }
            }
        }
    } else {
        let (small, other) = if best == nx * nz { (x, y) } else { (y, x) };
        for &w in z {
            if small.iter().any(|&u| w.checked_sub(u).is_some_and(|r| other.binary_search(&r).is_ok())) {
                hits.push(w);
            }
        }
    }
}
