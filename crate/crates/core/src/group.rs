//! Permutation groups given by generators, with exact order via a
//! deterministic Schreier-Sims stabilizer chain.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A permutation group with its generators and exact order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub order: BigUint,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup { degree, generators: Vec::new(), order: BigUint::one() }
    }

    /// Orbit partition of `{0..degree}` under the generators, as a
    /// representative array (least element of each orbit).
    pub fn orbit_representatives(&self) -> Vec<usize> {
        orbit_representatives(self.degree, &self.generators)
    }
}

pub(crate) fn orbit_representatives(degree: usize, gens: &[Permutation]) -> Vec<usize> {
    let mut uf = UnionFind::new(degree);
    for g in gens {
        for x in 0..degree {
            uf.union(x, g.apply(x));
        }
    }
    (0..degree).map(|x| uf.find(x)).collect()
}

/// Exact order of `<generators>` acting on `degree` points.
///
/// The base is chosen greedily: points in larger orbits of the whole group
/// come first, ties broken by index.
pub fn group_order(degree: usize, generators: &[Permutation]) -> Result<BigUint> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch { expected: degree, got: g.degree() });
        }
    }
    let reps = orbit_representatives(degree, generators);
    let mut size = vec![0usize; degree];
    for &r in &reps {
        size[r] += 1;
    }
    let mut base: Vec<usize> = (0..degree).collect();
    base.sort_by_key(|&x| (std::cmp::Reverse(size[reps[x]]), x));
    Ok(StabilizerChain::new(degree, base, generators, None).order())
}

/// Stabilizer chain relative to a complete base ordering of all points.
///
/// Levels whose fundamental orbit is trivial cost one slot each; keeping the
/// base complete means every non-identity residue moves some base point, and
/// lets [`StabilizerChain::lex_least`] walk the group in lexicographic image
/// order when the base is `0, 1, 2, ...`.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    base: Vec<usize>,
    /// Strong generators, each tagged with the index of the first base point
    /// it moves; level `i` is generated by the tags `>= i`.
    strong: Vec<(usize, Permutation)>,
    levels: Vec<Level>,
}

#[derive(Debug, Clone)]
struct Level {
    orbit: Vec<usize>,
    /// `slot[x]` indexes `reps` when `x` is in the orbit.
    slot: Vec<u32>,
    /// `reps[k]` maps the base point to `orbit[k]`.
    reps: Vec<Permutation>,
}

const NONE: u32 = u32::MAX;

impl StabilizerChain {
    /// `known_order`, when given, lets construction stop as soon as the
    /// transversal product reaches it.
    pub fn new(degree: usize, base: Vec<usize>, generators: &[Permutation], known_order: Option<&BigUint>) -> Self {
        debug_assert_eq!(base.len(), degree);
        let mut chain = StabilizerChain { degree, base, strong: Vec::new(), levels: Vec::new() };
        for g in generators {
            if let Some(depth) = chain.first_moved_level(g) {
                chain.strong.push((depth, g.clone()));
            }
        }
        chain.levels = (0..degree).map(|i| chain.build_level(i)).collect();
        if degree == 0 {
            return chain;
        }
        if let Some(target) = known_order {
            if &chain.order() == target {
                return chain;
            }
        }
        let mut i = degree - 1;
        loop {
            match chain.find_missing(i) {
                Some((h, depth)) => {
                    chain.strong.push((depth, h));
                    for j in i + 1..=depth {
                        chain.levels[j] = chain.build_level(j);
                    }
                    if let Some(target) = known_order {
                        if &chain.order() == target {
                            break;
                        }
                    }
                    i = depth;
                }
                None => {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                }
            }
        }
        chain
    }

    fn first_moved_level(&self, g: &Permutation) -> Option<usize> {
        self.base.iter().position(|&b| g.apply(b) != b)
    }

    fn level_gens(&self, i: usize) -> impl Iterator<Item = &Permutation> {
        self.strong.iter().filter(move |(d, _)| *d >= i).map(|(_, g)| g)
    }

    fn build_level(&self, i: usize) -> Level {
        let b = self.base[i];
        let mut slot = vec![NONE; self.degree];
        let mut orbit = vec![b];
        let mut reps = vec![Permutation::identity(self.degree)];
        slot[b] = 0;
        let gens: Vec<&Permutation> = self.level_gens(i).collect();
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for g in &gens {
                let y = g.apply(x);
                if slot[y] == NONE {
                    slot[y] = orbit.len() as u32;
                    orbit.push(y);
                    let r = reps[k].then(g);
                    reps.push(r);
                }
            }
            k += 1;
        }
        Level { orbit, slot, reps }
    }

    /// Looks for a Schreier generator at level `i` that does not sift
    /// through levels `i+1..`. Returns the residue and the level it stopped at.
    fn find_missing(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        let gens: Vec<&Permutation> = self.level_gens(i).collect();
        for (k, &x) in level.orbit.iter().enumerate() {
            for s in &gens {
                let y = s.apply(x);
                let uy = &level.reps[level.slot[y] as usize];
                let schreier = level.reps[k].then(s).then(&uy.inverse());
                let (h, depth) = self.sift(schreier, i + 1);
                if let Some(depth) = depth {
                    return Some((h, depth));
                }
            }
        }
        None
    }

    /// Sifts `g` from level `from`. Returns the residue and `Some(level)` if
    /// it fell out of the chain, `None` if it sifted to the identity.
    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, Option<usize>) {
        for j in from..self.degree {
            let b = self.base[j];
            let y = g.apply(b);
            if y == b {
                continue;
            }
            let level = &self.levels[j];
            let s = level.slot[y];
            if s == NONE {
                return (g, Some(j));
            }
            g = g.then(&level.reps[s as usize].inverse());
        }
        debug_assert!(g.is_identity());
        (g, None)
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g.clone(), 0).1.is_none()
    }

    /// Lexicographically least element (by image sequence `0^g, 1^g, ..`)
    /// accepted by `accept`, descending the chain in image order.
    ///
    /// Requires the base to be `0, 1, .., n-1`. `prune(level, h)` may return
    /// true when no element of the coset `G_level * h` can be accepted;
    /// `partial(level, h)` is checked after fixing the image of base point
    /// `level - 1` and may reject early. Returns `Err(())` if more than
    /// `budget` nodes are expanded.
    pub(crate) fn lex_least(
        &self,
        budget: u64,
        prune: &mut dyn FnMut(usize, &Permutation) -> bool,
        partial: &mut dyn FnMut(usize, &Permutation) -> bool,
        accept: &mut dyn FnMut(&Permutation) -> bool,
    ) -> std::result::Result<Option<Permutation>, ()> {
        debug_assert!(self.base.iter().enumerate().all(|(i, &b)| i == b));
        let mut nodes = 0u64;
        self.lex_rec(0, Permutation::identity(self.degree), &mut nodes, budget, prune, partial, accept)
    }

    #[allow(clippy::too_many_arguments)]
    fn lex_rec(
        &self,
        level: usize,
        h: Permutation,
        nodes: &mut u64,
        budget: u64,
        prune: &mut dyn FnMut(usize, &Permutation) -> bool,
        partial: &mut dyn FnMut(usize, &Permutation) -> bool,
        accept: &mut dyn FnMut(&Permutation) -> bool,
    ) -> std::result::Result<Option<Permutation>, ()> {
        *nodes += 1;
        if *nodes > budget {
            return Err(());
        }
        if prune(level, &h) {
            return Ok(None);
        }
        if level == self.degree {
            return Ok(accept(&h).then_some(h));
        }
        let lv = &self.levels[level];
        let mut children: Vec<(usize, usize)> = lv.orbit.iter().enumerate().map(|(k, &x)| (h.apply(x), k)).collect();
        children.sort_unstable();
        for (_, k) in children {
            let child = lv.reps[k].then(&h);
            if !partial(level + 1, &child) {
                continue;
            }
            if let Some(found) = self.lex_rec(level + 1, child, nodes, budget, prune, partial, accept)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    /// True when every strong generator of level `i` satisfies `pred`, so the
    /// whole stabilizer `G_i` lies in any subgroup defined by `pred`.
    pub(crate) fn level_within(&self, i: usize, pred: &dyn Fn(&Permutation) -> bool) -> bool {
        self.level_gens(i).all(pred)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Union keeping the smaller index as root. Returns true if merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}
