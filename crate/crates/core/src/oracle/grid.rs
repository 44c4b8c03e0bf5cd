//! Grid backend: cells at pitch `h` classified by the region formula, feasible
//! cells joined across shared facets, refined until the class count settles.

use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::region::{CompiledFn, CompiledRegion, Region};
use super::{OracleConfig, OracleError, RegionAnalysis, Resolution};
use crate::rational::{format_rational, q, to_f64, Q};
use crate::sympoly::Relation;

struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra as usize].cmp(&self.rank[rb as usize]) {
            std::cmp::Ordering::Less => self.parent[ra as usize] = rb,
            std::cmp::Ordering::Greater => self.parent[rb as usize] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb as usize] = ra;
                self.rank[ra as usize] += 1;
            }
        }
    }
}

/// Grid geometry of one refinement level.
#[derive(Clone, Debug)]
struct Grid {
    dim: usize,
    lo: Q,
    pitch: Q,
    per_axis: usize,
    lo_f: f64,
    pitch_f: f64,
}

impl Grid {
    fn total(&self) -> usize {
        self.per_axis.pow(self.dim as u32)
    }

    fn unravel(&self, mut idx: usize, out: &mut [usize]) {
        for slot in out.iter_mut() {
            *slot = idx % self.per_axis;
            idx /= self.per_axis;
        }
    }

    fn ravel(&self, ix: &[usize]) -> usize {
        ix.iter().rev().fold(0, |acc, &i| acc * self.per_axis + i)
    }

    fn center_f(&self, ix: &[usize], out: &mut [f64]) {
        for (o, &i) in out.iter_mut().zip(ix) {
            *o = self.lo_f + (i as f64 + 0.5) * self.pitch_f;
        }
    }

    fn center_exact(&self, idx: usize) -> Vec<Q> {
        let mut ix = vec![0; self.dim];
        self.unravel(idx, &mut ix);
        let half = Q::one() / q(2);
        ix.iter()
            .map(|&i| &self.lo + &self.pitch * (Q::from_integer((i as i64).into()) + &half))
            .collect()
    }

    fn cell_of(&self, x: &[Q]) -> Vec<usize> {
        x.iter()
            .map(|v| {
                let t = ((v - &self.lo) / &self.pitch).floor();
                let i = t.to_integer().to_i64().unwrap_or(i64::MAX);
                i.clamp(0, self.per_axis as i64 - 1) as usize
            })
            .collect()
    }
}

struct Classifier<'a> {
    region: &'a CompiledRegion,
    eq_delta: f64,
    gt_margin: f64,
    half: f64,
    dim: usize,
}

impl Classifier<'_> {
    fn atom(&self, f: &CompiledFn, rel: Relation, c: &[f64], scratch: &mut [f64]) -> bool {
        let v = f.eval(c);
        match rel {
            Relation::Ge => v >= 0.0,
            Relation::Gt => v >= self.gt_margin,
            Relation::Eq => {
                if v.abs() <= self.eq_delta {
                    return true;
                }
                // the zero set may cross the cell away from its center
                let s = v > 0.0;
                (0..1usize << self.dim).any(|mask| {
                    for (k, slot) in scratch.iter_mut().enumerate() {
                        *slot = if mask >> k & 1 == 1 { c[k] + self.half } else { c[k] - self.half };
                    }
                    (f.eval(scratch) > 0.0) != s
                })
            }
        }
    }

    fn feasible(&self, c: &[f64], scratch: &mut [f64]) -> bool {
        self.region.pred.eval(&mut |i| {
            let (f, rel) = &self.region.atoms[i];
            self.atom(f, *rel, c, scratch)
        })
    }
}

/// Result of running the grid on one region.
#[derive(Clone, Debug)]
pub struct GridAnalysis {
    region: Region,
    grid: Grid,
    labels: Vec<u32>,
    reps: Vec<Vec<Q>>,
    slack: Q,
    snap_radius: usize,
    resolution: Resolution,
}

const NONE: u32 = u32::MAX;

fn label_level(region: &CompiledRegion, grid: &Grid, cfg: &OracleConfig) -> (Vec<u32>, usize) {
    let dim = grid.dim;
    let pitch = to_f64(&grid.pitch);
    let eq_delta = cfg.eq_delta.as_ref().map_or(pitch, to_f64);
    let cls = Classifier {
        region,
        eq_delta,
        gt_margin: to_f64(&cfg.gt_margin) * pitch,
        half: pitch / 2.0,
        dim,
    };
    let feasible: Vec<bool> = (0..grid.total())
        .into_par_iter()
        .map_init(
            || (vec![0usize; dim], vec![0f64; dim], vec![0f64; dim]),
            |(ix, c, scratch), idx| {
                grid.unravel(idx, ix);
                grid.center_f(ix, c);
                cls.feasible(c, scratch)
            },
        )
        .collect();
    let mut uf = UnionFind::new(grid.total());
    let mut stride = 1;
    for _axis in 0..dim {
        for idx in 0..grid.total() {
            if !feasible[idx] {
                continue;
            }
            let i = (idx / stride) % grid.per_axis;
            if i + 1 < grid.per_axis && feasible[idx + stride] {
                uf.union(idx as u32, (idx + stride) as u32);
            }
        }
        stride *= grid.per_axis;
    }
    let mut labels = vec![NONE; grid.total()];
    let mut root_label: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    for idx in 0..grid.total() {
        if feasible[idx] {
            let r = uf.find(idx as u32);
            let next = root_label.len() as u32;
            labels[idx] = *root_label.entry(r).or_insert(next);
        }
    }
    let classes = root_label.len();
    (labels, classes)
}

/// Run the grid on `region` with refinement.
pub fn analyze(region: &Region, cfg: &OracleConfig) -> Result<GridAnalysis, OracleError> {
    cfg.validate()?;
    if region.dim == 0 {
        return Err(OracleError::Dimension { expected: 1, got: 0 });
    }
    let compiled = region.compile();
    let width = &region.hi - &region.lo;
    let mut previous: Option<(Grid, Vec<u32>, usize)> = None;
    let mut stabilized = false;
    let mut levels = 0;
    for depth in 0..=cfg.max_depth {
        let h = &cfg.h / Q::from_integer((1i64 << depth).into());
        let per_axis = if width.is_zero() {
            1
        } else {
            (&width / &h).ceil().to_integer().to_usize().unwrap_or(usize::MAX).max(1)
        };
        let total = (per_axis as u128).checked_pow(region.dim as u32).unwrap_or(u128::MAX);
        if total > cfg.max_cells as u128 {
            if previous.is_none() {
                return Err(OracleError::TooManyCells { cells: total, cap: cfg.max_cells });
            }
            break;
        }
        let pitch = if width.is_zero() { h.clone() } else { &width / Q::from_integer(per_axis.into()) };
        let grid = Grid {
            dim: region.dim,
            lo: region.lo.clone(),
            pitch_f: to_f64(&pitch),
            lo_f: to_f64(&region.lo),
            pitch,
            per_axis,
        };
        let (labels, classes) = label_level(&compiled, &grid, cfg);
        levels += 1;
        let settled = previous.as_ref().is_some_and(|(_, _, c)| *c == classes);
        previous = Some((grid, labels, classes));
        if settled {
            stabilized = true;
            break;
        }
    }
    let (grid, labels, classes) = previous.expect("at least one level");
    let mut reps: Vec<Option<Vec<Q>>> = vec![None; classes];
    for (idx, &l) in labels.iter().enumerate() {
        if l != NONE && reps[l as usize].is_none() {
            reps[l as usize] = Some(grid.center_exact(idx));
        }
    }
    let slack = cfg.eq_delta.clone().unwrap_or_else(|| grid.pitch.clone());
    let resolution = Resolution {
        h_final: format_rational(&grid.pitch),
        levels,
        cells: grid.total(),
        classes,
        stabilized,
        eq_delta: format_rational(&slack),
        gt_margin: format_rational(&(&cfg.gt_margin * &grid.pitch)),
    };
    Ok(GridAnalysis {
        region: region.clone(),
        grid,
        labels,
        reps: reps.into_iter().map(|r| r.expect("every class has a cell")).collect(),
        slack,
        snap_radius: cfg.snap_radius,
        resolution,
    })
}

impl GridAnalysis {
    fn check(&self, x: &[Q]) -> Result<(), OracleError> {
        if x.len() != self.region.dim {
            return Err(OracleError::Dimension { expected: self.region.dim, got: x.len() });
        }
        if !self.region.contains_with_slack(x, &self.slack) {
            return Err(OracleError::Infeasible {
                region: self.region.label.clone(),
                point: x.iter().map(format_rational).collect::<Vec<_>>().join(", "),
                violated: self.region.violations(x, &self.slack).join("; "),
            });
        }
        Ok(())
    }

    /// Label of the feasible cell nearest to `x` within the snap radius.
    fn snap(&self, x: &[Q]) -> Option<u32> {
        let home = self.grid.cell_of(x);
        let l = self.labels[self.grid.ravel(&home)];
        if l != NONE {
            return Some(l);
        }
        let xf: Vec<f64> = x.iter().map(to_f64).collect();
        let r = self.snap_radius as i64;
        let dim = self.grid.dim;
        let mut best: Option<(f64, usize)> = None;
        let span = (2 * r + 1) as usize;
        let mut ix = vec![0usize; dim];
        let mut c = vec![0f64; dim];
        for k in 0..span.pow(dim as u32) {
            let mut rest = k;
            let mut ok = true;
            for (a, slot) in ix.iter_mut().enumerate() {
                let off = (rest % span) as i64 - r;
                rest /= span;
                let v = home[a] as i64 + off;
                if v < 0 || v >= self.grid.per_axis as i64 {
                    ok = false;
                    break;
                }
                *slot = v as usize;
            }
            if !ok {
                continue;
            }
            let idx = self.grid.ravel(&ix);
            if self.labels[idx] == NONE {
                continue;
            }
            self.grid.center_f(&ix, &mut c);
            let dist: f64 = c.iter().zip(&xf).map(|(a, b)| (a - b) * (a - b)).sum();
            if best.is_none_or(|(bd, bi)| dist < bd || (dist == bd && idx < bi)) {
                best = Some((dist, idx));
            }
        }
        best.map(|(_, idx)| self.labels[idx])
    }
}

impl RegionAnalysis for GridAnalysis {
    fn representatives(&self) -> &[Vec<Q>] {
        &self.reps
    }

    fn component_of(&self, x: &[Q]) -> Result<usize, OracleError> {
        self.check(x)?;
        self.snap(x).map(|l| l as usize).ok_or_else(|| OracleError::Unlocatable {
            region: self.region.label.clone(),
            point: x.iter().map(format_rational).collect::<Vec<_>>().join(", "),
        })
    }

    fn nearest_component(&self, x: &[Q]) -> Result<usize, OracleError> {
        if x.len() != self.region.dim {
            return Err(OracleError::Dimension { expected: self.region.dim, got: x.len() });
        }
        self.snap(x).map(|l| l as usize).ok_or_else(|| OracleError::Unlocatable {
            region: self.region.label.clone(),
            point: x.iter().map(format_rational).collect::<Vec<_>>().join(", "),
        })
    }

    fn resolution(&self) -> Resolution {
        self.resolution.clone()
    }

    fn region(&self) -> &Region {
        &self.region
    }
}

