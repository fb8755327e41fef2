//! Finite simple undirected graphs.
//!
//! Adjacency is kept twice: as one bitset row per vertex (constant-time
//! membership, cheap neighbourhood set algebra) and as sorted neighbour lists
//! (fast iteration in the refinement code). Both are built once; a `Graph` is
//! immutable afterwards.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    rows: Vec<u64>,
    adj: Vec<Vec<u32>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) are merged.
    pub fn new(order: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(order);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn empty(order: usize) -> Graph {
        GraphBuilder::new(order).build()
    }

    pub fn complete(order: usize) -> Graph {
        Graph::from_fn(order, |u, v| u != v)
    }

    pub fn cycle(order: usize) -> Result<Graph> {
        if order < 3 {
            return Err(Error::BadParameters(format!("a cycle needs at least 3 vertices, got {order}")));
        }
        let edges: Vec<_> = (0..order).map(|i| (i, (i + 1) % order)).collect();
        Graph::new(order, &edges)
    }

    pub fn path(order: usize) -> Graph {
        let edges: Vec<_> = (1..order).map(|i| (i - 1, i)).collect();
        Graph::new(order, &edges).expect("path edges are valid")
    }

    /// Builds a graph from a symmetric adjacency predicate, evaluated on
    /// unordered pairs `u < v` only.
    pub fn from_fn(order: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut b = GraphBuilder::new(order);
        for u in 0..order {
            for v in u + 1..order {
                if adjacent(u, v) {
                    b.set(u, v);
                }
            }
        }
        b.build()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&u| u as usize)
    }

    #[inline]
    pub(crate) fn adj_list(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    /// Bitset row of `v`'s neighbourhood.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = (0..self.order).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.order).any(|v| self.degree(v) == 0)
    }

    /// `Γ(u) == Γ(v)`.
    pub fn same_neighborhood(&self, u: usize, v: usize) -> bool {
        self.row(u) == self.row(v)
    }

    /// `Γ[u] == Γ[v]` (closed neighbourhoods).
    pub fn same_closed_neighborhood(&self, u: usize, v: usize) -> bool {
        if u == v {
            return true;
        }
        if !self.has_edge(u, v) {
            return false;
        }
        // u ~ v, so each closed neighbourhood contains both endpoints and the
        // open neighbourhoods must agree off {u, v}.
        let (ru, rv) = (self.row(u), self.row(v));
        (0..self.words).all(|w| {
            let mut mask = !0u64;
            if u / 64 == w {
                mask &= !(1 << (u % 64));
            }
            if v / 64 == w {
                mask &= !(1 << (v % 64));
            }
            ru[w] & mask == rv[w] & mask
        })
    }

    pub fn complement(&self) -> Result<Graph> {
        if self.order < 2 {
            return Err(Error::TrivialGraph { order: self.order, min: 2 });
        }
        Ok(Graph::from_fn(self.order, |u, v| !self.has_edge(u, v)))
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in ascending
    /// original order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if vs.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&bad) = vs.iter().find(|&&v| v >= self.order) {
            return Err(Error::VertexOutOfRange { vertex: bad, order: self.order });
        }
        Ok(Graph::from_fn(vs.len(), |i, j| self.has_edge(vs[i], vs[j])))
    }

    /// Image of the graph under a vertex relabelling `v -> images[v]`.
    pub fn relabel(&self, images: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(self.order);
        for (u, v) in self.edges() {
            b.set(images[u], images[v]);
        }
        b.build()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for s in 0..self.order {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Proper 2-colouring if one exists (colour of the least vertex in each
    /// component is 0).
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.order];
        for s in 0..self.order {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Lexicographically least pair `u < v` with `Γ(u) = Γ(v)`.
    pub fn twin_pair(&self) -> Option<(usize, usize)> {
        for u in 0..self.order {
            for v in u + 1..self.order {
                if self.same_neighborhood(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_r_thin(&self) -> bool {
        self.twin_pair().is_none()
    }

    pub fn classify_basic(&self) -> BasicProfile {
        let bipartition = self.two_coloring().map(|c| {
            let (a, b): (Vec<usize>, Vec<usize>) = (0..self.order).partition(|&v| c[v] == 0);
            (a, b)
        });
        BasicProfile { connected: self.is_connected(), bipartition, twin_witness: self.twin_pair() }
    }

    /// Checks that `images` is an automorphism.
    pub fn preserves_adjacency(&self, images: &[usize]) -> bool {
        images.len() == self.order && self.edges().all(|(u, v)| self.has_edge(images[u], images[v]))
    }

    #[cfg(debug_assertions)]
    fn check_invariants(&self) {
        for u in 0..self.order {
            debug_assert!(!self.has_edge(u, u), "loop at {u}");
            for v in self.neighbors(u) {
                debug_assert!(self.has_edge(v, u), "asymmetric edge {u}-{v}");
            }
        }
    }
}

/// Summary of the structural predicates that make a graph trivially unstable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicProfile {
    pub connected: bool,
    pub bipartition: Option<(Vec<usize>, Vec<usize>)>,
    /// Least pair of distinct vertices with equal neighbourhoods.
    pub twin_witness: Option<(usize, usize)>,
}

impl BasicProfile {
    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }

    pub fn is_r_thin(&self) -> bool {
        self.twin_witness.is_none()
    }
}

pub(crate) struct GraphBuilder {
    order: usize,
    words: usize,
    rows: Vec<u64>,
}

impl GraphBuilder {
    pub(crate) fn new(order: usize) -> Self {
        let words = words_for(order);
        GraphBuilder { order, words, rows: vec![0; order * words] }
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.order {
                return Err(Error::VertexOutOfRange { vertex: w, order: self.order });
            }
        }
        if u == v {
            return Err(Error::LoopRejected(u));
        }
        self.set(u, v);
        Ok(())
    }

    #[inline]
    pub(crate) fn set(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub(crate) fn build(self) -> Graph {
        let adj = (0..self.order)
            .map(|u| {
                let row = &self.rows[u * self.words..(u + 1) * self.words];
                bits(row).map(|v| v as u32).collect()
            })
            .collect();
        let g = Graph { order: self.order, words: self.words, rows: self.rows, adj };
        #[cfg(debug_assertions)]
        g.check_invariants();
        g
    }
}

/// Iterates the set bits of a bitset row in ascending order.
pub(crate) fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(w * 64 + b)
        })
    })
}
