//! Individualization-refinement search.
//!
//! An ordered partition of the vertices is refined to the coarsest equitable
//! partition (every vertex in a cell has the same number of neighbours in
//! every other cell). Refinement is label-invariant: cells are identified by
//! their start position and split fragments are ordered by neighbour count,
//! so an isomorphism carries one refinement run onto the other. Each run is
//! summarised by a trace hash, and search branches whose trace differs from
//! the reference path are cut.
//!
//! The automorphism search fixes a first path of individualized vertices
//! `b0, b1, ..` and, working from the deepest level up, decides for every
//! other vertex of each target cell whether some automorphism fixing the
//! prefix maps the path vertex there. Candidates already in a known orbit are
//! skipped. The group order is the product of the orbit lengths found.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{PermGroup, UnionFind};
use crate::perm::Permutation;

/// Node cap for one search. The default can be overridden by `STAB_BUDGET`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(10_000_000);

    pub fn from_env() -> Budget {
        std::env::var("STAB_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Budget)
            .unwrap_or(Budget::DEFAULT)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
struct Trace(u64);

impl Trace {
    #[inline]
    fn mix(&mut self, x: u64) {
        // splitmix64 finaliser over the running value
        let mut z = self.0 ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        self.0 = z ^ (z >> 31);
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Partition {
    lab: Vec<usize>,
    pos: Vec<usize>,
    /// start of the cell holding each position
    cell: Vec<usize>,
    /// exclusive end, valid at cell starts
    end: Vec<usize>,
    cells: usize,
}

impl Partition {
    /// Cells ordered by colour value; vertices inside a cell ascending.
    fn from_colors(colors: &[usize]) -> Partition {
        let n = colors.len();
        let mut lab: Vec<usize> = (0..n).collect();
        lab.sort_by_key(|&v| (colors[v], v));
        let mut pos = vec![0; n];
        let mut cell = vec![0; n];
        let mut end = vec![0; n];
        let mut cells = 0;
        let mut i = 0;
        while i < n {
            let mut j = i;
            while j < n && colors[lab[j]] == colors[lab[i]] {
                j += 1;
            }
            for p in i..j {
                cell[p] = i;
                pos[lab[p]] = p;
            }
            end[i] = j;
            cells += 1;
            i = j;
        }
        Partition { lab, pos, cell, end, cells }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut i = 0;
        std::iter::from_fn(move || {
            (i < self.lab.len()).then(|| {
                let s = i;
                i = self.end[s];
                s
            })
        })
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for s in self.starts() {
            let len = self.end[s] - s;
            if len > 1 && best.is_none_or(|(_, l)| len < l) {
                best = Some((s, len));
            }
        }
        best.map(|(s, _)| s)
    }

    fn cell_members(&self, start: usize) -> &[usize] {
        &self.lab[start..self.end[start]]
    }

    /// Splits `v` off the front of its cell; returns the new singleton start.
    fn individualize(&mut self, v: usize) -> usize {
        let p = self.pos[v];
        let s = self.cell[p];
        let e = self.end[s];
        debug_assert!(e - s > 1);
        let u = self.lab[s];
        self.lab.swap(s, p);
        self.pos[u] = p;
        self.pos[v] = s;
        self.end[s] = s + 1;
        self.end[s + 1] = e;
        for q in s + 1..e {
            self.cell[q] = s + 1;
        }
        self.cells += 1;
        s
    }
}

/// Scratch space for refinement runs on one graph.
struct Refiner<'g> {
    g: &'g Graph,
    count: Vec<u32>,
    in_queue: Vec<bool>,
    touched: Vec<usize>,
    touched_cells: Vec<usize>,
    cell_mark: Vec<bool>,
}

impl<'g> Refiner<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.order();
        Refiner {
            g,
            count: vec![0; n],
            in_queue: vec![false; n],
            touched: Vec::new(),
            touched_cells: Vec::new(),
            cell_mark: vec![false; n],
        }
    }

    fn refine(&mut self, p: &mut Partition, splitters: &[usize], trace: &mut Trace) {
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in splitters {
            if !self.in_queue[s] {
                self.in_queue[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(w) = queue.pop_front() {
            self.in_queue[w] = false;
            if p.is_discrete() {
                continue;
            }
            for q in w..p.end[w] {
                let x = p.lab[q];
                for &y in self.g.adj_list(x) {
                    let y = y as usize;
                    if self.count[y] == 0 {
                        self.touched.push(y);
                    }
                    self.count[y] += 1;
                }
            }
            for &y in &self.touched {
                let c = p.cell[p.pos[y]];
                if !self.cell_mark[c] {
                    self.cell_mark[c] = true;
                    self.touched_cells.push(c);
                }
            }
            self.touched_cells.sort_unstable();
            trace.mix(w as u64);
            for ti in 0..self.touched_cells.len() {
                let s = self.touched_cells[ti];
                self.cell_mark[s] = false;
                let e = p.end[s];
                if e - s == 1 {
                    continue;
                }
                let count = &self.count;
                let slice = &mut p.lab[s..e];
                let first = count[slice[0]];
                if slice.iter().all(|&v| count[v] == first) {
                    trace.mix(first as u64);
                    continue;
                }
                slice.sort_unstable_by_key(|&v| (count[v], v));
                let mut frags: Vec<(usize, usize)> = Vec::new();
                let mut i = s;
                while i < e {
                    let c = count[p.lab[i]];
                    let mut j = i;
                    while j < e && count[p.lab[j]] == c {
                        p.pos[p.lab[j]] = j;
                        j += 1;
                    }
                    frags.push((i, j));
                    trace.mix(((c as u64) << 32) | (j - i) as u64);
                    i = j;
                }
                trace.mix(s as u64 ^ 0xa5a5_a5a5);
                for &(fs, fe) in &frags {
                    p.end[fs] = fe;
                    for q in fs..fe {
                        p.cell[q] = fs;
                    }
                }
                p.cells += frags.len() - 1;
                if self.in_queue[s] {
                    for &(fs, _) in &frags[1..] {
                        self.in_queue[fs] = true;
                        queue.push_back(fs);
                    }
                } else {
                    let largest = frags
                        .iter()
                        .enumerate()
                        .max_by_key(|(k, (fs, fe))| (fe - fs, std::cmp::Reverse(*k)))
                        .map(|(k, _)| k)
                        .unwrap();
                    for (k, &(fs, _)) in frags.iter().enumerate() {
                        if k != largest {
                            self.in_queue[fs] = true;
                            queue.push_back(fs);
                        }
                    }
                }
            }
            for &y in &self.touched {
                self.count[y] = 0;
            }
            self.touched.clear();
            self.touched_cells.clear();
        }
        trace.mix(p.cells as u64);
    }
}

fn initial(refiner: &mut Refiner<'_>, colors: &[usize]) -> (Partition, Trace) {
    let mut p = Partition::from_colors(colors);
    let mut t = Trace::default();
    let starts: Vec<usize> = p.starts().collect();
    refiner.refine(&mut p, &starts, &mut t);
    (p, t)
}

fn descend(refiner: &mut Refiner<'_>, p: &mut Partition, v: usize) -> Trace {
    let s = p.individualize(v);
    let mut t = Trace(s as u64);
    refiner.refine(p, &[s], &mut t);
    t
}

struct Node {
    part: Partition,
    target: usize,
    base: usize,
    trace_after: Trace,
}

struct AutSearch<'g> {
    refiner: Refiner<'g>,
    g: &'g Graph,
    nodes: u64,
    budget: u64,
    path: Vec<Node>,
    first_leaf: Vec<usize>,
}

impl AutSearch<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::SearchBudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    /// Is there an automorphism mapping the first path below `depth` onto a
    /// path through `part` (which already matches the first path to
    /// `depth`)?
    fn find_equivalent(&mut self, part: Partition, depth: usize) -> Result<Option<Permutation>> {
        if part.is_discrete() {
            return Ok(self.leaf_map(&part));
        }
        let Some(node) = self.path.get(depth) else { return Ok(None) };
        let target = node.target;
        let expected = node.trace_after;
        if part.target_cell() != Some(target) {
            return Ok(None);
        }
        let mut cands = part.cell_members(target).to_vec();
        cands.sort_unstable();
        for x in cands {
            self.tick()?;
            let mut child = part.clone();
            let t = descend(&mut self.refiner, &mut child, x);
            if t != expected {
                continue;
            }
            if let Some(found) = self.find_equivalent(child, depth + 1)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    fn leaf_map(&self, leaf: &Partition) -> Option<Permutation> {
        let n = self.g.order();
        let mut images = vec![0; n];
        for i in 0..n {
            images[self.first_leaf[i]] = leaf.lab[i];
        }
        self.g.preserves_adjacency(&images).then(|| Permutation::from_images_unchecked(images))
    }
}

/// Automorphism group of `g` as an uncoloured graph.
pub fn automorphism_group(g: &Graph, budget: Budget) -> Result<PermGroup> {
    automorphism_group_colored(g, &vec![0; g.order()], budget)
}

/// Automorphisms of `g` that map every colour class onto itself.
pub fn automorphism_group_colored(g: &Graph, colors: &[usize], budget: Budget) -> Result<PermGroup> {
    assert_eq!(colors.len(), g.order());
    let n = g.order();
    let mut refiner = Refiner::new(g);
    let (mut part, _) = initial(&mut refiner, colors);
    let mut nodes = 1u64;
    let mut path = Vec::new();
    while let Some(target) = part.target_cell() {
        let base = *part.cell_members(target).iter().min().unwrap();
        let snapshot = part.clone();
        let trace_after = descend(&mut refiner, &mut part, base);
        nodes += 1;
        path.push(Node { part: snapshot, target, base, trace_after });
    }
    let mut search =
        AutSearch { refiner, g, nodes, budget: budget.0, path, first_leaf: part.lab.clone() };
    search.tick()?;

    let mut gens: Vec<Permutation> = Vec::new();
    let mut orbits = UnionFind::new(n);
    let mut order = BigUint::one();
    for d in (0..search.path.len()).rev() {
        let (target, base) = (search.path[d].target, search.path[d].base);
        let mut cell = search.path[d].part.cell_members(target).to_vec();
        cell.sort_unstable();
        let mut failed: Vec<usize> = Vec::new();
        for &w in &cell {
            if w == base || orbits.find(w) == orbits.find(base) {
                continue;
            }
            let root = orbits.find(w);
            if failed.iter().any(|&f| orbits.find(f) == root) {
                continue;
            }
            search.tick()?;
            let mut child = search.path[d].part.clone();
            let t = descend(&mut search.refiner, &mut child, w);
            let found = if t == search.path[d].trace_after { search.find_equivalent(child, d + 1)? } else { None };
            match found {
                Some(p) => {
                    for x in 0..n {
                        orbits.union(x, p.apply(x));
                    }
                    gens.push(p);
                }
                None => failed.push(w),
            }
        }
        let root = orbits.find(base);
        let orbit_len = cell.iter().filter(|&&w| orbits.find(w) == root).count();
        order *= BigUint::from(orbit_len);
    }
    Ok(PermGroup { degree: n, generators: gens, order })
}

/// An isomorphism `g -> h` (image of each vertex of `g`), if one exists.
pub fn isomorphism(g: &Graph, h: &Graph) -> Option<Permutation> {
    isomorphism_with_budget(g, h, Budget(u64::MAX), false).expect("unbounded search")
}

/// Isomorphism search with a node cap. With `vertex_transitive`, the first
/// branching point on `h`'s side tries a single candidate, which is sound
/// when `h` is vertex-transitive (e.g. a circulant).
pub(crate) fn isomorphism_with_budget(
    g: &Graph,
    h: &Graph,
    budget: Budget,
    vertex_transitive: bool,
) -> Result<Option<Permutation>> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence() {
        return Ok(None);
    }
    let n = g.order();
    let zeros = vec![0; n];
    let mut rg = Refiner::new(g);
    let (mut pg, tg) = initial(&mut rg, &zeros);
    let mut rh = Refiner::new(h);
    let (ph, th) = initial(&mut rh, &zeros);
    if tg != th {
        return Ok(None);
    }
    let mut path = Vec::new();
    while let Some(target) = pg.target_cell() {
        let base = *pg.cell_members(target).iter().min().unwrap();
        let snapshot = pg.clone();
        let trace_after = descend(&mut rg, &mut pg, base);
        path.push(Node { part: snapshot, target, base, trace_after });
    }
    let mut iso = IsoSearch {
        refiner: rh,
        g,
        h,
        path,
        first_leaf: pg.lab,
        nodes: 0,
        budget: budget.0,
        vertex_transitive,
    };
    iso.search(ph, 0)
}

struct IsoSearch<'g> {
    refiner: Refiner<'g>,
    g: &'g Graph,
    h: &'g Graph,
    path: Vec<Node>,
    first_leaf: Vec<usize>,
    nodes: u64,
    budget: u64,
    vertex_transitive: bool,
}

impl IsoSearch<'_> {
    fn search(&mut self, part: Partition, depth: usize) -> Result<Option<Permutation>> {
        if part.is_discrete() {
            let n = self.g.order();
            let mut images = vec![0; n];
            for i in 0..n {
                images[self.first_leaf[i]] = part.lab[i];
            }
            let ok = self.g.edges().all(|(u, v)| self.h.has_edge(images[u], images[v]));
            return Ok(ok.then(|| Permutation::from_images_unchecked(images)));
        }
        let Some(node) = self.path.get(depth) else { return Ok(None) };
        let (target, expected) = (node.target, node.trace_after);
        if part.target_cell() != Some(target) {
            return Ok(None);
        }
        let mut cands = part.cell_members(target).to_vec();
        cands.sort_unstable();
        if depth == 0 && self.vertex_transitive && part.cells == 1 {
            cands.truncate(1);
        }
        for x in cands {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded(self.budget));
            }
            let mut child = part.clone();
            if descend(&mut self.refiner, &mut child, x) != expected {
                continue;
            }
            if let Some(found) = self.search(child, depth + 1)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}
