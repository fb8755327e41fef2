//! Graph products on `V(G) x V(H)`, with `(a, x)` stored at index
//! `a * |V(H)| + x`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    /// `a ~ b` and `x ~ y`
    Direct,
    /// `a = b` and `x ~ y`, or `a ~ b` and `x = y`
    Cartesian,
    /// Cartesian or direct adjacency
    Strong,
    /// `a ~ b` or `a = b`, and `x ~ y`
    SemiStrong,
    /// `a ~ b`, or `a = b` and `x ~ y`
    Lexicographic,
}

impl ProductKind {
    pub const ALL: [ProductKind; 5] = [
        ProductKind::Direct,
        ProductKind::Cartesian,
        ProductKind::Strong,
        ProductKind::SemiStrong,
        ProductKind::Lexicographic,
    ];

    fn adjacent(self, g: &Graph, h: &Graph, (a, x): (usize, usize), (b, y): (usize, usize)) -> bool {
        let (ab, xy) = (g.has_edge(a, b), h.has_edge(x, y));
        match self {
            ProductKind::Direct => ab && xy,
            ProductKind::Cartesian => (a == b && xy) || (ab && x == y),
            ProductKind::Strong => (a == b && xy) || (ab && (xy || x == y)),
            ProductKind::SemiStrong => (ab || a == b) && xy,
            ProductKind::Lexicographic => ab || (a == b && xy),
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductKind::Direct => "direct",
            ProductKind::Cartesian => "cartesian",
            ProductKind::Strong => "strong",
            ProductKind::SemiStrong => "semistrong",
            ProductKind::Lexicographic => "lex",
        })
    }
}

impl FromStr for ProductKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "direct" => ProductKind::Direct,
            "cartesian" => ProductKind::Cartesian,
            "strong" => ProductKind::Strong,
            "semistrong" | "semi-strong" => ProductKind::SemiStrong,
            "lex" | "lexicographic" => ProductKind::Lexicographic,
            _ => return Err(Error::Parse(format!("unknown product kind {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraph {
    pub graph: Graph,
    pub left_order: usize,
    pub right_order: usize,
}

impl ProductGraph {
    pub fn vertex(&self, a: usize, x: usize) -> usize {
        a * self.right_order + x
    }

    pub fn split(&self, v: usize) -> (usize, usize) {
        (v / self.right_order, v % self.right_order)
    }
}

fn build(g: &Graph, h: &Graph, mut adjacent: impl FnMut((usize, usize), (usize, usize)) -> bool) -> ProductGraph {
    let m = h.order();
    let graph = Graph::from_fn(g.order() * m, |u, v| adjacent((u / m, u % m), (v / m, v % m)));
    ProductGraph { graph, left_order: g.order(), right_order: m }
}

pub fn product(g: &Graph, h: &Graph, kind: ProductKind) -> ProductGraph {
    build(g, h, |p, q| kind.adjacent(g, h, p, q))
}

/// Assignment of an automorphism of the right factor to every ordered pair
/// of left-factor vertices, with `p(a, b) = p(b, a)^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleMap {
    left_order: usize,
    table: Vec<Permutation>,
}

impl BundleMap {
    /// `table[a * left_order + b] = p(a, b)`.
    pub fn new(left_order: usize, right: &Graph, table: Vec<Permutation>) -> Result<BundleMap> {
        let expected = left_order * left_order;
        if table.len() != expected {
            return Err(Error::BundleShape { expected, got: table.len() });
        }
        for (i, p) in table.iter().enumerate() {
            let (a, b) = (i / left_order, i % left_order);
            if p.degree() != right.order() {
                return Err(Error::DegreeMismatch { expected: right.order(), got: p.degree() });
            }
            if !right.preserves_adjacency(p.images()) {
                return Err(Error::NotAnAutomorphism(a, b));
            }
        }
        for a in 0..left_order {
            for b in a..left_order {
                let (ab, ba) = (&table[a * left_order + b], &table[b * left_order + a]);
                if !ab.then(ba).is_identity() {
                    return Err(Error::BundleInvolutionViolated(a, b));
                }
            }
        }
        Ok(BundleMap { left_order, table })
    }

    pub fn from_fn(
        left_order: usize,
        right: &Graph,
        mut f: impl FnMut(usize, usize) -> Permutation,
    ) -> Result<BundleMap> {
        let table = (0..left_order * left_order).map(|i| f(i / left_order, i % left_order)).collect();
        BundleMap::new(left_order, right, table)
    }

    /// The same automorphism on every pair; it must be an involution.
    pub fn constant(left_order: usize, right: &Graph, p: Permutation) -> Result<BundleMap> {
        BundleMap::from_fn(left_order, right, |_, _| p.clone())
    }

    pub fn identity(left_order: usize, right: &Graph) -> BundleMap {
        BundleMap::constant(left_order, right, Permutation::identity(right.order())).expect("identity bundle is valid")
    }

    pub fn get(&self, a: usize, b: usize) -> &Permutation {
        &self.table[a * self.left_order + b]
    }
}

/// `(a, x) ~ (b, y)` iff `a ~ b` and `x ~ y^(p(a,b)^-1)`.
pub fn direct_bundle(g: &Graph, h: &Graph, p: &BundleMap) -> Result<ProductGraph> {
    if p.left_order != g.order() {
        return Err(Error::BundleShape { expected: g.order() * g.order(), got: p.table.len() });
    }
    if let Some(first) = p.table.first() {
        if first.degree() != h.order() {
            return Err(Error::DegreeMismatch { expected: h.order(), got: first.degree() });
        }
    }
    let rule = |(a, x): (usize, usize), (b, y): (usize, usize)| {
        // p(a,b)^-1 = p(b,a)
        g.has_edge(a, b) && h.has_edge(x, p.get(b, a).apply(y))
    };
    let out = build(g, h, rule);
    debug_assert!((0..out.graph.order()).all(|u| {
        (0..out.graph.order()).all(|v| u == v || rule(out.split(u), out.split(v)) == rule(out.split(v), out.split(u)))
    }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::CirculantSpec;
    use crate::search::isomorphism;

    fn k2() -> Graph {
        Graph::complete(2)
    }

    #[test]
    fn small_products() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(isomorphism(&product(&k2(), &k2(), ProductKind::Cartesian).graph, &c4).is_some());
        assert_eq!(product(&k2(), &k2(), ProductKind::Strong).graph, Graph::complete(4));
        assert!(isomorphism(&product(&k2(), &k2(), ProductKind::SemiStrong).graph, &c4).is_some());
        let lex = product(&k2(), &Graph::empty(2), ProductKind::Lexicographic).graph;
        assert!(isomorphism(&lex, &c4).is_some());
    }

    #[test]
    fn k3_times_c5_is_circulant() {
        let p = product(&Graph::complete(3), &Graph::cycle(5).unwrap(), ProductKind::Direct);
        let c = CirculantSpec::from_representatives(15, &[1, 4]).unwrap().graph();
        assert!(isomorphism(&p.graph, &c).is_some());
        assert_eq!(p.vertex(2, 3), 13);
        assert_eq!(p.split(13), (2, 3));
    }

    #[test]
    fn identity_bundle_is_direct_product() {
        let g = Graph::cycle(5).unwrap();
        let h = Graph::path(3);
        let b = direct_bundle(&g, &h, &BundleMap::identity(5, &h)).unwrap();
        assert_eq!(b, product(&g, &h, ProductKind::Direct));
    }

    #[test]
    fn bundle_validation() {
        let h = Graph::cycle(4).unwrap();
        let rot = Permutation::from_fn(4, |x| (x + 1) % 4).unwrap();
        assert_eq!(BundleMap::constant(2, &h, rot.clone()), Err(Error::BundleInvolutionViolated(0, 0)));
        let swap = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        assert_eq!(BundleMap::constant(2, &h, swap), Err(Error::NotAnAutomorphism(0, 0)));
        let half = Permutation::from_fn(4, |x| (x + 2) % 4).unwrap();
        assert!(BundleMap::constant(2, &h, half).is_ok());
        let ok = BundleMap::from_fn(2, &h, |a, b| match (a, b) {
            (0, 1) => rot.clone(),
            (1, 0) => rot.inverse(),
            _ => Permutation::identity(4),
        });
        assert!(ok.is_ok());
        assert_eq!(
            BundleMap::new(2, &h, vec![Permutation::identity(4)]),
            Err(Error::BundleShape { expected: 4, got: 1 })
        );
    }
}
