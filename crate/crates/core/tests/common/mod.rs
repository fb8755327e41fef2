//! Brute-force oracles shared by the integration suites. They work on plain
//! adjacency matrices and use nothing from the library beyond conversion.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use stab_core::Graph;

pub type Adj = Vec<Vec<bool>>;

pub fn adj(g: &Graph) -> Adj {
    let n = g.order();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

pub fn to_graph(a: &Adj) -> Graph {
    let n = a.len();
    Graph::from_fn(n, |u, v| a[u][v])
}

/// Every labeled graph on `n` vertices, one per subset of the pairs.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Adj> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let mut a = vec![vec![false; n]; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                a[u][v] = true;
                a[v][u] = true;
            }
        }
        a
    })
}

pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Adj {
    let mut a = vec![vec![false; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                a[u][v] = true;
                a[v][u] = true;
            }
        }
    }
    a
}

pub fn random_isolated_free(rng: &mut StdRng, n: usize) -> Adj {
    loop {
        let p = rng.random_range(0.25..0.9);
        let a = random_graph(rng, n, p);
        if !has_isolated(&a) {
            return a;
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { return out };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn arcs(a: &Adj) -> Vec<(usize, usize)> {
    let n = a.len();
    (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| a[u][v]).collect()
}

pub fn is_tf(a: &Adj, al: &[usize], be: &[usize]) -> bool {
    arcs(a).iter().all(|&(u, v)| a[al[u]][be[v]])
}

pub fn is_tfs(a: &Adj, al: &[usize], be: &[usize]) -> bool {
    (0..a.len()).all(|u| a[al[u]][be[u]]) && arcs(a).iter().all(|&(u, v)| al[u] == be[v] || a[al[u]][be[v]])
}

/// Lexicographically least nontrivial TF pair by exhaustive search.
pub fn least_nontrivial_tf(a: &Adj) -> Option<(Vec<usize>, Vec<usize>)> {
    let perms = permutations(a.len());
    for al in &perms {
        for be in &perms {
            if al != be && is_tf(a, al, be) {
                return Some((al.clone(), be.clone()));
            }
        }
    }
    None
}

pub fn all_tfs(a: &Adj) -> Vec<(Vec<usize>, Vec<usize>)> {
    let perms = permutations(a.len());
    let mut out = Vec::new();
    for al in &perms {
        for be in &perms {
            if is_tfs(a, al, be) {
                out.push((al.clone(), be.clone()));
            }
        }
    }
    out
}

pub fn automorphism_count(a: &Adj) -> usize {
    permutations(a.len()).iter().filter(|p| is_tf(a, p, p)).count()
}

pub fn has_isolated(a: &Adj) -> bool {
    a.iter().any(|row| !row.contains(&true))
}

pub fn components(a: &Adj) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for v in 0..n {
                if a[u][v] && !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

pub fn connected(a: &Adj) -> bool {
    components(a).len() <= 1
}

pub fn bipartite(a: &Adj) -> bool {
    let n = a.len();
    let mut color = vec![None; n];
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if !a[u][v] {
                    continue;
                }
                match color[v] {
                    None => {
                        color[v] = Some(!color[u].unwrap());
                        stack.push(v);
                    }
                    Some(c) if c == color[u].unwrap() => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

pub fn r_thin(a: &Adj) -> bool {
    let n = a.len();
    (0..n).all(|u| (u + 1..n).all(|v| a[u] != a[v]))
}

/// `Γ[a] != Γ[b]` for all distinct `a, b`.
pub fn closed_distinct(a: &Adj) -> bool {
    let n = a.len();
    let closed = |u: usize| (0..n).map(|w| w == u || a[u][w]).collect::<Vec<_>>();
    (0..n).all(|u| (u + 1..n).all(|v| closed(u) != closed(v)))
}

/// Some component is a 4-cycle.
pub fn has_c4_component(a: &Adj) -> bool {
    components(a).iter().any(|c| {
        c.len() == 4 && c.iter().all(|&u| c.iter().filter(|&&v| a[u][v]).count() == 2)
    })
}

pub fn relabel(a: &Adj, p: &[usize]) -> Adj {
    let n = a.len();
    let mut b = vec![vec![false; n]; n];
    for u in 0..n {
        for v in 0..n {
            b[p[u]][p[v]] = a[u][v];
        }
    }
    b
}

pub fn complement(a: &Adj) -> Adj {
    let n = a.len();
    (0..n).map(|u| (0..n).map(|v| u != v && !a[u][v]).collect()).collect()
}

fn nbhd(a: &Adj, u: usize) -> u64 {
    a[u].iter().enumerate().filter(|(_, &e)| e).fold(0, |m, (v, _)| m | 1 << v)
}

fn strict_subset(x: u64, y: u64) -> bool {
    x & !y == 0 && x != y
}

/// Cartesian skeleton straight from the definition.
pub fn skeleton(a: &Adj) -> Adj {
    let n = a.len();
    let nb: Vec<u64> = (0..n).map(|u| nbhd(a, u)).collect();
    let dispensable = |u: usize, v: usize| {
        let uv = nb[u] & nb[v];
        (0..n).any(|w| {
            let first = strict_subset(uv, nb[u] & nb[w]) || (strict_subset(nb[u], nb[w]) && strict_subset(nb[w], nb[v]));
            let second = strict_subset(uv, nb[v] & nb[w]) || (strict_subset(nb[v], nb[w]) && strict_subset(nb[w], nb[u]));
            first && second
        })
    };
    (0..n)
        .map(|u| (0..n).map(|v| u != v && nb[u] & nb[v] != 0 && !dispensable(u, v)).collect())
        .collect()
}

/// Product from the adjacency rules, vertex `(a, x)` at `a * |right| + x`.
pub fn product(g: &Adj, h: &Adj, kind: stab_core::ProductKind) -> Adj {
    use stab_core::ProductKind::*;
    let m = h.len();
    let n = g.len() * m;
    (0..n)
        .map(|p| {
            (0..n)
                .map(|q| {
                    let (a, x, b, y) = (p / m, p % m, q / m, q % m);
                    let (ab, xy) = (g[a][b], h[x][y]);
                    match kind {
                        Direct => ab && xy,
                        Cartesian => (a == b && xy) || (ab && x == y),
                        Strong => (a == b && xy) || (ab && x == y) || (ab && xy),
                        SemiStrong => (ab || a == b) && xy,
                        Lexicographic => ab || (a == b && xy),
                    }
                })
                .collect()
        })
        .collect()
}

/// Checks every product biconditional on one factor pair; both factors
/// must be free of isolated vertices.
pub fn product_lemmas(g: &Adj, h: &Adj) -> Result<(), String> {
    use stab_core::ProductKind::*;
    let lib = |k| adj(&stab_core::product(&to_graph(g), &to_graph(h), k).graph);
    let check = |ok: bool, what: &str| if ok { Ok(()) } else { Err(format!("{what} fails for {g:?} / {h:?}")) };
    let d = lib(Direct);
    check(
        connected(&d) == (connected(g) && connected(h) && (!bipartite(g) || !bipartite(h))),
        "direct connectivity",
    )?;
    check(!bipartite(&d) == (!bipartite(g) && !bipartite(h)), "direct bipartiteness")?;
    check(r_thin(&d) == (r_thin(g) && r_thin(h)), "direct R-thinness")?;
    let c = lib(Cartesian);
    check(!r_thin(&c) == has_c4_component(&c), "cartesian R-thickness")?;
    let s = lib(Strong);
    check(!bipartite(&s) && r_thin(&s), "strong product")?;
    let ss = lib(SemiStrong);
    check(r_thin(&ss) == (r_thin(h) && closed_distinct(g)), "semistrong R-thinness")?;
    let l = lib(Lexicographic);
    check(r_thin(&l) == r_thin(h), "lexicographic R-thinness")?;
    Ok(())
}
