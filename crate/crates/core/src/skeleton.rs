//! Boolean square and Cartesian skeleton.

use crate::error::{Error, Result};
use crate::graph::Graph;

type Set = Vec<u64>;

fn and(a: &[u64], b: &[u64]) -> Set {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn is_empty(a: &[u64]) -> bool {
    a.iter().all(|&w| w == 0)
}

/// `a` is a proper subset of `b`.
fn proper_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0) && a != b
}

/// `u ~ v` iff `u != v` and the two share a neighbour.
pub fn boolean_square(g: &Graph) -> Graph {
    Graph::from_fn(g.order(), |u, v| !is_empty(&and(g.row(u), g.row(v))))
}

/// Whether the Boolean-square edge `uv` is dispensable: some `w` has
/// `N(u)&N(v) < N(u)&N(w)` or `N(u) < N(w) < N(v)`, and
/// `N(u)&N(v) < N(v)&N(w)` or `N(v) < N(w) < N(u)`.
pub fn dispensable(g: &Graph, u: usize, v: usize) -> Result<bool> {
    for x in [u, v] {
        if x >= g.order() {
            return Err(Error::VertexOutOfRange { vertex: x, order: g.order() });
        }
    }
    let (nu, nv) = (g.row(u), g.row(v));
    let common = and(nu, nv);
    if u == v || is_empty(&common) {
        return Err(Error::NotABooleanSquareEdge(u, v));
    }
    Ok((0..g.order()).any(|w| {
        let nw = g.row(w);
        let left = proper_subset(&common, &and(nu, nw)) || (proper_subset(nu, nw) && proper_subset(nw, nv));
        left && (proper_subset(&common, &and(nv, nw)) || (proper_subset(nv, nw) && proper_subset(nw, nu)))
    }))
}

/// Boolean square minus its dispensable edges.
pub fn cartesian_skeleton(g: &Graph) -> Graph {
    let b = boolean_square(g);
    Graph::from_fn(g.order(), |u, v| b.has_edge(u, v) && !dispensable(g, u, v).expect("edge of B"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::{product, ProductKind};

    #[test]
    fn boolean_squares() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(boolean_square(&c4), Graph::new(4, &[(0, 2), (1, 3)]).unwrap());
        assert_eq!(boolean_square(&Graph::complete(3)), Graph::complete(3));
        assert_eq!(boolean_square(&Graph::empty(4)), Graph::empty(4));
    }

    #[test]
    fn dispensable_cases() {
        assert_eq!(dispensable(&Graph::path(3), 0, 2), Ok(false));
        let k3 = Graph::complete(3);
        assert!((0..3).all(|u| (0..3).all(|v| u == v || !dispensable(&k3, u, v).unwrap())));
        assert_eq!(dispensable(&Graph::path(3), 0, 1), Err(Error::NotABooleanSquareEdge(0, 1)));
    }

    #[test]
    fn cube_skeleton_is_its_boolean_square() {
        let k2 = Graph::complete(2);
        let sq = product(&k2, &k2, ProductKind::Cartesian).graph;
        let cube = product(&sq, &k2, ProductKind::Cartesian).graph;
        // antipodal vertices share no neighbour, so they are not B-edges
        let b = boolean_square(&cube);
        for u in 0..8 {
            assert_eq!(dispensable(&cube, u, u ^ 7), Err(Error::NotABooleanSquareEdge(u, u ^ 7)));
        }
        // B(Q3) is two disjoint K4s and none of its edges is dispensable
        assert_eq!(b.edge_count(), 12);
        let s = cartesian_skeleton(&cube);
        assert_eq!(s, b);
    }

    #[test]
    fn skeletons() {
        assert_eq!(cartesian_skeleton(&Graph::complete(3)), Graph::complete(3));
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(cartesian_skeleton(&c4), Graph::new(4, &[(0, 2), (1, 3)]).unwrap());
        let k3 = Graph::complete(3);
        let direct = product(&k3, &k3, ProductKind::Direct).graph;
        assert_eq!(cartesian_skeleton(&direct), product(&k3, &k3, ProductKind::Cartesian).graph);
    }

    #[test]
    fn isolated_vertices_stay_isolated() {
        let g = Graph::new(4, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(boolean_square(&g).degree(3), 0);
        assert_eq!(cartesian_skeleton(&g).degree(3), 0);
    }
}
