//! Circulant graphs `Cay(Z_n, S)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Permutation;
use crate::search::{self, Budget};

/// Modulus plus an inverse-closed connection set, stored fully expanded and
/// sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct CirculantSpec {
    n: usize,
    s: Vec<usize>,
}

#[derive(Deserialize)]
struct RawSpec {
    n: usize,
    s: Vec<usize>,
}

impl TryFrom<RawSpec> for CirculantSpec {
    type Error = Error;
    fn try_from(raw: RawSpec) -> Result<Self> {
        CirculantSpec::new(raw.n, &raw.s)
    }
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl CirculantSpec {
    /// Exact constructor: `s` must already be inverse-closed.
    pub fn new(n: usize, s: &[usize]) -> Result<CirculantSpec> {
        if n == 0 {
            return Err(Error::BadModulus(n));
        }
        let mut s = s.to_vec();
        s.sort_unstable();
        s.dedup();
        for &x in &s {
            if x >= n {
                return Err(Error::BadParameters(format!("residue {x} not reduced mod {n}")));
            }
            if x == 0 {
                return Err(Error::ZeroInConnectionSet);
            }
            if s.binary_search(&(n - x)).is_err() {
                return Err(Error::NonInverseClosed(x));
            }
        }
        Ok(CirculantSpec { n, s })
    }

    /// Closes the given representatives (any integers) under negation.
    pub fn from_representatives(n: usize, reps: &[i64]) -> Result<CirculantSpec> {
        if n == 0 {
            return Err(Error::BadModulus(n));
        }
        let mut s = Vec::with_capacity(2 * reps.len());
        for &r in reps {
            let x = r.rem_euclid(n as i64) as usize;
            if x == 0 {
                return Err(Error::ZeroInConnectionSet);
            }
            s.push(x);
            s.push(n - x);
        }
        CirculantSpec::new(n, &s)
    }

    /// Builds from a membership predicate on `1..n`, which must be symmetric.
    pub(crate) fn from_predicate(n: usize, mut member: impl FnMut(usize) -> bool) -> CirculantSpec {
        let s: Vec<usize> = (1..n).filter(|&x| member(x)).collect();
        debug_assert!(s.iter().all(|&x| s.contains(&(n - x))));
        CirculantSpec { n, s }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn degree(&self) -> usize {
        self.s.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.s.binary_search(&(x % self.n)).is_ok()
    }

    /// Membership table indexed by residue.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.n];
        for &x in &self.s {
            m[x] = true;
        }
        m
    }

    pub fn graph(&self) -> Graph {
        let mask = self.mask();
        let n = self.n;
        Graph::from_fn(n, |u, v| mask[(v + n - u) % n])
    }

    /// `S + m`, or `None` when the translate contains 0.
    pub fn shifted(&self, m: usize) -> Option<CirculantSpec> {
        let n = self.n;
        let mask = self.mask();
        if mask[(n - m % n) % n] {
            return None;
        }
        Some(CirculantSpec::from_predicate(n, |x| mask[(x + n - m % n) % n]))
    }

    /// `rS` for a unit `r`.
    pub fn scaled(&self, r: usize) -> CirculantSpec {
        debug_assert_eq!(gcd(r, self.n), 1);
        let mut s: Vec<usize> = self.s.iter().map(|&x| x * r % self.n).collect();
        s.sort_unstable();
        CirculantSpec { n: self.n, s }
    }

    /// Units of `Z_n`, ascending.
    pub fn units(n: usize) -> impl Iterator<Item = usize> {
        (1..n.max(2)).filter(move |&r| gcd(r, n) == 1)
    }

    /// An isomorphism between the two circulant graphs. Multipliers
    /// `x -> rx` are tried first; otherwise a general search runs.
    pub fn isomorphism_to(&self, other: &CirculantSpec, budget: Budget) -> Result<Option<Permutation>> {
        if self.n != other.n || self.s.len() != other.s.len() {
            return Ok(None);
        }
        let n = self.n;
        if let Some(r) = CirculantSpec::units(n).find(|&r| &self.scaled(r) == other) {
            return Ok(Some(Permutation::from_images_unchecked((0..n).map(|x| x * r % n).collect())));
        }
        let found = search::isomorphism_with_budget(&self.graph(), &other.graph(), budget, true)?;
        if let Some(p) = &found {
            assert!(self.graph().edges().all(|(u, v)| other.contains(p.apply(v) + n - p.apply(u))));
        }
        Ok(found)
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c:{}:", self.n)?;
        for (i, x) in self.s.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for CirculantSpec {
    type Err = Error;

    /// `c:<n>:<s1,s2,...>` with representatives, closed under negation.
    fn from_str(text: &str) -> Result<CirculantSpec> {
        let bad = || Error::Parse(format!("expected c:<n>:<s1,s2,...>, got {text:?}"));
        let rest = text.trim().strip_prefix("c:").ok_or_else(bad)?;
        let (n, list) = rest.split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let reps = list
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        CirculantSpec::from_representatives(n, &reps)
    }
}
