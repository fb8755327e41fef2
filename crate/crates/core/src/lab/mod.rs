//! Instability conditions for circulant graphs `Cay(Z_n, S)`.
//!
//! Subgroups of `Z_n` are `dZ_n` for the divisors `d` of `n`; everything
//! here enumerates them by ascending `d`. Residue sets are boolean masks
//! indexed by residue.

mod conditions;
mod examples;
mod hmm;
mod types;

use serde::{Deserialize, Serialize};

pub use conditions::{conditions, wilson_conditions, C3Witness, ConditionReport, ConditionSummary, Flag, WilsonReport};
pub use examples::{construct_example, Construction, ExampleParams, EXAMPLE_NAMES};
pub use hmm::{
    equi_cross_check, hmm_p37, hmm_p312, hmm_t32, ncon_check, oldtonew_check, t32_clause, theorem_hmmtype,
    EquiClause, EquiReport, HmmTypeWitness, NconWitness, OldToNew, P312Witness, T32Witness,
};
pub use types::{classify_type, preserving_check, TypeVerdict};

use crate::circulant::{gcd, CirculantSpec};
use crate::graph::Graph;

/// The subgroup `dZ_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    n: usize,
    generator: usize,
}

impl Subgroup {
    /// The subgroup generated by `x`.
    pub fn generated_by(n: usize, x: usize) -> Subgroup {
        Subgroup { n, generator: gcd(x % n, n) }
    }

    /// All subgroups, by ascending generator.
    pub fn all(n: usize) -> impl Iterator<Item = Subgroup> {
        (1..=n).filter(move |d| n % d == 0).map(move |generator| Subgroup { n, generator })
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn order(&self) -> usize {
        self.n / self.generator
    }

    pub fn is_trivial(&self) -> bool {
        self.generator == self.n
    }

    pub fn contains(&self, x: usize) -> bool {
        x % self.n % self.generator == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        (0..self.n).step_by(self.generator)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.generator % other.generator == 0
    }

    /// `2K`
    pub fn doubled(&self) -> Subgroup {
        Subgroup::generated_by(self.n, 2 * self.generator)
    }

    /// `K + H`
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        Subgroup { n: self.n, generator: gcd(self.generator, other.generator) }
    }

    /// `K \ 2K`
    pub fn odd_part(&self) -> Vec<bool> {
        let two = self.doubled();
        (0..self.n).map(|x| self.contains(x) && !two.contains(x)).collect()
    }

    pub fn mask(&self) -> Vec<bool> {
        (0..self.n).map(|x| self.contains(x)).collect()
    }
}

/// `A + B` for a residue set and a subgroup.
pub(crate) fn add_subgroup(a: &[bool], h: &Subgroup) -> Vec<bool> {
    let n = a.len();
    let mut out = vec![false; n];
    for x in (0..n).filter(|&x| a[x]) {
        for y in h.elements() {
            out[(x + y) % n] = true;
        }
    }
    out
}

pub(crate) fn minus(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| x && !y).collect()
}

pub(crate) fn union(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| x || y).collect()
}

pub(crate) fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

pub(crate) fn disjoint(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !(x && y))
}

/// Even residues; for odd `n` this is all of `Z_n`.
pub(crate) fn even_mask(n: usize) -> Vec<bool> {
    let two = Subgroup::generated_by(n, 2);
    (0..n).map(|x| two.contains(x)).collect()
}

/// `Cay(2Z_n, S & 2Z_n)` with index `i` standing for residue `2i`. Only
/// meaningful for even `n`.
pub fn even_subgraph(spec: &CirculantSpec) -> Graph {
    let n = spec.n();
    debug_assert!(n % 2 == 0);
    let half = n / 2;
    let mask = spec.mask();
    Graph::from_fn(half, |i, j| mask[(2 * (j + half - i)) % n])
}

/// Connection set of the even subgraph as a circulant of order `n/2`.
pub fn even_subgraph_spec(spec: &CirculantSpec) -> CirculantSpec {
    let n = spec.n();
    let half = n / 2;
    CirculantSpec::from_predicate(half, |i| spec.contains(2 * i))
}
