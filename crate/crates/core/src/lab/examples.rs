//! Named product constructions of unstable graphs, most of them circulant.

use serde::{Deserialize, Serialize};

use crate::circulant::{gcd, CirculantSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Permutation;
use crate::products::{direct_bundle, product, BundleMap, ProductGraph, ProductKind};
use crate::search::Budget;

pub const EXAMPLE_NAMES: [&str; 12] = [
    "cpc1",
    "cpc2",
    "cpc3",
    "strpex",
    "strpex_strong",
    "strex",
    "semiex1",
    "semiex2",
    "semiex3",
    "lexiex",
    "k2n",
    "dihedral",
];

/// `m` is half the order of the even factor where one appears (`cpc2`,
/// `lexiex`) and the second cycle length for `dihedral`; `cycle` is the odd
/// cycle of `k2n`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleParams {
    pub n: usize,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub cycle: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub name: String,
    /// Product-form graph on `V(G) x V(H)` with `(a, x)` at `a * |V(H)| + x`.
    #[serde(skip)]
    pub graph: Graph,
    pub order: usize,
    /// Equivalent circulant, checked isomorphic to `graph`.
    pub spec: Option<CirculantSpec>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}

fn circ(n: usize, reps: &[i64]) -> CirculantSpec {
    CirculantSpec::from_representatives(n, reps).expect("fixed factor")
}

fn cycle(n: usize, what: &str) -> Result<Graph> {
    Graph::cycle(n).map_err(|_| bad(format!("{what} must be at least 3, got {n}")))
}

fn coprime(a: usize, b: usize, what: &str) -> Result<()> {
    if gcd(a, b) == 1 {
        Ok(())
    } else {
        Err(bad(format!("{what}: gcd({a}, {b}) != 1")))
    }
}

fn need<T>(v: Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| bad(format!("missing parameter {what}")))
}

/// Reads a Cayley graph on `Z_p x Z_q` (coprime) as a circulant of order
/// `pq` via `z = a mod p, z = x mod q`, and checks the relabelled graph
/// equals it exactly.
fn crt_spec(pg: &ProductGraph) -> Result<CirculantSpec> {
    let (p, q) = (pg.left_order, pg.right_order);
    let n = p * q;
    let mut images = vec![0; n];
    for z in 0..n {
        images[(z % p) * q + z % q] = z;
    }
    let spec = CirculantSpec::new(n, &{
        let mut s: Vec<usize> = pg.graph.neighbors(0).map(|v| images[v]).collect();
        s.sort_unstable();
        s
    })?;
    if pg.graph.relabel(&images) != spec.graph() {
        return Err(bad("construction is not a Cayley graph on the cyclic group"));
    }
    Ok(spec)
}

/// `±(a n + c)` for each `(a, c)`.
fn formula(order: usize, n: usize, terms: &[(i64, i64)]) -> CirculantSpec {
    let reps: Vec<i64> = terms.iter().map(|&(a, c)| a * n as i64 + c).collect();
    CirculantSpec::from_representatives(order, &reps).expect("formula gives a connection set")
}

fn translation(n: usize, k: usize) -> Permutation {
    Permutation::from_fn(n, |x| (x + k) % n).expect("translation")
}

pub fn construct_example(name: &str, params: &ExampleParams) -> Result<Construction> {
    let n = params.n;
    let (pg, closed_form) = match name {
        "cpc1" => {
            coprime(30, n, "cpc1 needs n coprime to 30")?;
            let sigma = cycle(n, "cycle length n")?;
            let gamma = circ(30, &[1, 4]).graph();
            let p = BundleMap::from_fn(30, &sigma, |a, b| match (b + 30 - a) % 30 {
                1 | 26 => translation(n, 1),
                29 | 4 => translation(n, n - 1),
                _ => Permutation::identity(n),
            })?;
            let pg = direct_bundle(&gamma, &sigma, &p)?;
            (pg, Some(formula(30 * n, n, &[(1, 0), (1, 60), (4, 0), (4, -60)])))
        }
        "cpc2" => {
            let m = need(params.m, "m")?;
            if m == 0 {
                return Err(bad("m must be positive"));
            }
            coprime(n, 2 * m, "cpc2 needs n coprime to 2m")?;
            let gamma = cycle(n, "cycle length n")?;
            let sigma = Graph::complete(2 * m);
            let p = BundleMap::constant(n, &sigma, translation(2 * m, m))?;
            (direct_bundle(&gamma, &sigma, &p)?, None)
        }
        "cpc3" => {
            coprime(n, 12, "cpc3 needs n coprime to 12")?;
            let gamma = cycle(n, "cycle length n")?;
            let sigma = circ(12, &[1, 2, 7]).graph();
            let p = BundleMap::constant(n, &sigma, translation(12, 6))?;
            let terms: Vec<(i64, i64)> = [1, 4, 5, 7, 8, 11].iter().map(|&k| (k, 12)).collect();
            (direct_bundle(&gamma, &sigma, &p)?, Some(formula(12 * n, n, &terms)))
        }
        "strpex" | "strpex_strong" => {
            if n % 3 == 0 {
                return Err(bad(format!("strpex needs 3 not dividing n, got {n}")));
            }
            let gamma = cycle(2 * n, "cycle length 2n")?;
            let sigma = circ(9, &[1, 4, 7]).graph();
            if name == "strpex" {
                let f = formula(18 * n, n, &[(0, 9), (2, 0), (8, 0), (14, 0)]);
                (product(&gamma, &sigma, ProductKind::Cartesian), Some(f))
            } else {
                let mut terms = vec![(0, 9)];
                for a in [2, 8, 14] {
                    terms.extend([(a, 9), (a, -9), (a, 0)]);
                }
                (product(&gamma, &sigma, ProductKind::Strong), Some(formula(18 * n, n, &terms)))
            }
        }
        "strex" => {
            coprime(n, 10, "strex needs n coprime to 10")?;
            let gamma = circ(10, &[3, 4, 5]).graph();
            let strong = product(&gamma, &cycle(n, "cycle length n")?, ProductKind::Strong);
            let graph = strong.graph.complement()?;
            (ProductGraph { graph, ..strong }, None)
        }
        "semiex1" => {
            coprime(n, 10, "semiex1 needs n coprime to 10")?;
            let pg = product(&cycle(n, "cycle length n")?, &circ(10, &[1, 2]).graph(), ProductKind::SemiStrong);
            let f = formula(10 * n, n, &[(1, 10), (1, -10), (2, 10), (2, -10), (1, 0), (2, 0)]);
            (pg, Some(f))
        }
        "semiex2" => {
            coprime(n, 10, "semiex2 needs n coprime to 10")?;
            let pg = product(&circ(10, &[3, 4, 5]).graph(), &cycle(n, "cycle length n")?, ProductKind::SemiStrong);
            let f = formula(10 * n, n, &[(3, 10), (3, -10), (4, 10), (4, -10), (5, 10), (0, 10)]);
            (pg, Some(f))
        }
        "semiex3" => {
            if n % 2 == 0 {
                return Err(bad(format!("semiex3 needs odd n, got {n}")));
            }
            let pg = product(&circ(8, &[1, 2, 3]).graph(), &cycle(n, "cycle length n")?, ProductKind::SemiStrong);
            let f = formula(8 * n, n, &[(1, 8), (1, -8), (2, 8), (2, -8), (3, 8), (3, -8), (0, 8)]);
            (pg, Some(f))
        }
        "lexiex" => {
            let m = need(params.m, "m")?;
            coprime(n, 2 * m, "lexiex needs n coprime to 2m")?;
            let pg = product(&cycle(n, "cycle length n")?, &cycle(2 * m, "cycle length 2m")?, ProductKind::Lexicographic);
            (pg, None)
        }
        "k2n" => {
            let c = need(params.cycle, "cycle")?;
            if n < 2 {
                return Err(bad(format!("k2n needs n >= 2, got {n}")));
            }
            if c % 2 == 0 {
                return Err(bad(format!("k2n needs an odd cycle, got {c}")));
            }
            let gamma = Graph::from_fn(2 * n, |u, v| u % n != v % n);
            let pg = product(&gamma, &cycle(c, "cycle")?, ProductKind::SemiStrong);
            if gcd(2 * n, c) != 1 {
                let order = pg.graph.order();
                return Ok(Construction { name: name.to_string(), graph: pg.graph, order, spec: None });
            }
            (pg, None)
        }
        "dihedral" => {
            let m = need(params.m, "m")?;
            let gamma = cycle(n, "cycle length n")?;
            let sigma = cycle(m, "cycle length m")?;
            let delta = Permutation::from_fn(m, |x| (m - x) % m)?;
            let pg = direct_bundle(&gamma, &sigma, &BundleMap::constant(n, &sigma, delta)?)?;
            let order = pg.graph.order();
            return Ok(Construction { name: name.to_string(), graph: pg.graph, order, spec: None });
        }
        _ => return Err(bad(format!("unknown example {name:?}"))),
    };
    let derived = crt_spec(&pg)?;
    let spec = match closed_form {
        Some(f) => {
            if derived.isomorphism_to(&f, Budget::DEFAULT)?.is_none() {
                return Err(bad(format!("{name}: closed-form connection set is not isomorphic to the construction")));
            }
            f
        }
        None => derived,
    };
    let order = pg.graph.order();
    Ok(Construction { name: name.to_string(), graph: pg.graph, order, spec: Some(spec) })
}
