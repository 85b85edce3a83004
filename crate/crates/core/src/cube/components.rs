//! Total-disconnectedness certification by shape census.
//!
//! At depth `k` the closed approximation of `K(n, D)` is a union of
//! `n^{-k}`-cells. Its connected components (cells touching at any face,
//! edge, or corner) each lie inside one component of depth `k-1`, so the
//! shapes at depth `k` are obtained by refining every shape from depth
//! `k-1` in isolation. Once a set of shapes is closed under refinement the
//! cell-count of every future component is bounded, so component diameters
//! shrink like `n^{-k}` and the attractor is totally disconnected.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::exec::Execution;

use super::FractalCube;

/// A connected set of lattice cells, translated so that its
/// lexicographically least cell is the origin. Rotations and reflections
/// are deliberately not identified.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellShape(Vec<Vec<i64>>);

impl CellShape {
    pub fn unit(d: u32) -> Self {
        CellShape(vec![vec![0; d as usize]])
    }

    /// Normalizes an arbitrary nonempty cell list.
    pub fn from_cells(mut cells: Vec<Vec<i64>>) -> Self {
        cells.sort();
        cells.dedup();
        let origin = cells[0].clone();
        for c in &mut cells {
            for (x, o) in c.iter_mut().zip(&origin) {
                *x -= o;
            }
        }
        CellShape(cells)
    }

    pub fn cells(&self) -> &[Vec<i64>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Offsets in `{-1, 0, 1}^d` that are lexicographically positive; each
/// adjacency is then visited once.
fn half_neighbourhood(d: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let total = 3usize.pow(d as u32);
    for mut i in 0..total {
        let mut off = vec![0i64; d];
        for slot in off.iter_mut().rev() {
            *slot = (i % 3) as i64 - 1;
            i /= 3;
        }
        if off.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) {
            out.push(off);
        }
    }
    out
}

/// Component shapes inside one shape after one subdivision.
fn refine_shape(shape: &CellShape, cube: &FractalCube, offsets: &[Vec<i64>]) -> Vec<CellShape> {
    let n = cube.n() as i64;
    let cells: Vec<Vec<i64>> = shape
        .cells()
        .iter()
        .flat_map(|cell| {
            cube.digits().iter().map(move |digit| {
                cell.iter()
                    .zip(digit)
                    .map(|(&c, &g)| c * n + g as i64)
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    let index: HashMap<&[i64], usize> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i))
        .collect();
    let mut dsu = DisjointSet::new(cells.len());
    let mut probe = vec![0i64; cube.d() as usize];
    for (i, c) in cells.iter().enumerate() {
        for off in offsets {
            for ((p, x), o) in probe.iter_mut().zip(c).zip(off) {
                *p = x + o;
            }
            if let Some(&j) = index.get(probe.as_slice()) {
                dsu.union(i, j);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<Vec<i64>>> = HashMap::new();
    for (i, c) in cells.into_iter().enumerate() {
        groups.entry(dsu.find(i)).or_default().push(c);
    }
    groups.into_values().map(CellShape::from_cells).collect()
}

/// One refinement step over a set of shapes.
pub fn refine_components(shapes: &BTreeSet<CellShape>, cube: &FractalCube) -> BTreeSet<CellShape> {
    refine_components_with(shapes, cube, Execution::default())
}

pub fn refine_components_with(
    shapes: &BTreeSet<CellShape>,
    cube: &FractalCube,
    exec: Execution,
) -> BTreeSet<CellShape> {
    let offsets = half_neighbourhood(cube.d() as usize);
    let list: Vec<&CellShape> = shapes.iter().collect();
    exec.map(&list, |s| refine_shape(s, cube, &offsets))
        .into_iter()
        .flatten()
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TdLimits {
    pub max_depth: u32,
    pub max_component_cells: usize,
    pub max_census: usize,
}

impl Default for TdLimits {
    fn default() -> Self {
        Self {
            max_depth: 8,
            max_component_cells: 4096,
            max_census: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum TdStatus {
    /// The census is closed under refinement from `depth` on.
    Certified { depth: u32, census: Vec<CellShape> },
    FullCube,
    /// No certificate within the limits. `growth[k-1]` is the largest
    /// component cell-count produced at depth `k`.
    Unknown {
        depth: u32,
        max_cells: usize,
        growth: Vec<usize>,
    },
}

impl TdStatus {
    pub fn is_certified(&self) -> bool {
        matches!(self, TdStatus::Certified { .. })
    }
}

/// Sound but incomplete: `Certified` proves total disconnectedness,
/// `FullCube` proves the opposite, and `Unknown` proves nothing.
pub fn check_total_disconnectedness(cube: &FractalCube, limits: &TdLimits) -> TdStatus {
    if cube.is_full() {
        return TdStatus::FullCube;
    }
    let unit: BTreeSet<CellShape> = [CellShape::unit(cube.d())].into();
    let mut frontier = refine_components(&unit, cube);
    let mut census = frontier.clone();
    let largest = |s: &BTreeSet<CellShape>| s.iter().map(CellShape::len).max().unwrap_or(0);
    let mut growth = vec![largest(&frontier)];
    let mut depth = 1;
    loop {
        let max_cells = *growth.iter().max().expect("nonempty");
        if max_cells > limits.max_component_cells || census.len() > limits.max_census {
            return TdStatus::Unknown {
                depth,
                max_cells,
                growth,
            };
        }
        let next = refine_components(&frontier, cube);
        let fresh: BTreeSet<CellShape> = next.difference(&census).cloned().collect();
        if fresh.is_empty() {
            return TdStatus::Certified {
                depth,
                census: census.into_iter().collect(),
            };
        }
        if depth >= limits.max_depth {
            return TdStatus::Unknown {
                depth,
                max_cells,
                growth,
            };
        }
        depth += 1;
        growth.push(largest(&next));
        census.extend(fresh.iter().cloned());
        frontier = fresh;
    }
}
