//! Stability verdicts and two-fold (semi-)morphisms.
//!
//! A pair `(a, b)` with `u ~ v => u^a ~ v^b` is exactly a layer-preserving
//! automorphism of the double cover `G x K2` restricted to its two layers,
//! so TF-morphisms are found by an automorphism search on the double cover
//! with the layers coloured apart. Witnesses are the lexicographically least
//! qualifying element of that group, found by walking a stabilizer chain
//! with base `0, 1, .., 2n-1` in image order.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{PermGroup, StabilizerChain};
use crate::perm::Permutation;
use crate::products::{product, ProductKind};
use crate::search::{automorphism_group, automorphism_group_colored, Budget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrivialReason {
    Disconnected,
    RThick,
    BipartiteWithNontrivialAut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    Stable,
    TriviallyUnstable(TrivialReason),
    NontriviallyUnstable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub verdict: Verdict,
    #[serde(with = "crate::json::biguint")]
    pub aut_order: BigUint,
    #[serde(with = "crate::json::biguint")]
    pub double_cover_aut_order: BigUint,
}

impl StabilityVerdict {
    pub fn is_stable(&self) -> bool {
        self.verdict == Verdict::Stable
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// two-fold morphism
    Tf,
    /// two-fold semi-morphism
    Tfs,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoFoldPair {
    pub alpha: Permutation,
    pub beta: Permutation,
    pub role: Role,
}

impl TwoFoldPair {
    pub fn tf(alpha: Permutation, beta: Permutation) -> Self {
        TwoFoldPair { alpha, beta, role: Role::Tf }
    }

    pub fn tfs(alpha: Permutation, beta: Permutation) -> Self {
        TwoFoldPair { alpha, beta, role: Role::Tfs }
    }

    pub fn is_nontrivial(&self) -> bool {
        self.alpha != self.beta
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "witness", rename_all = "lowercase")]
pub enum SearchOutcome<W> {
    Yes(W),
    No,
    /// The node budget ran out before the search finished.
    Inconclusive(u64),
}

impl<W> SearchOutcome<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, SearchOutcome::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, SearchOutcome::No)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            SearchOutcome::Yes(w) => Some(w),
            _ => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> SearchOutcome<V> {
        match self {
            SearchOutcome::Yes(w) => SearchOutcome::Yes(f(w)),
            SearchOutcome::No => SearchOutcome::No,
            SearchOutcome::Inconclusive(b) => SearchOutcome::Inconclusive(b),
        }
    }
}

/// `G x K2` with `(v, layer)` at index `layer * n + v`.
pub fn double_cover(g: &Graph) -> Graph {
    let n = g.order();
    Graph::from_fn(2 * n, |u, v| (u < n) != (v < n) && g.has_edge(u % n, v % n))
}

pub fn stability_status(g: &Graph, budget: Budget) -> Result<StabilityVerdict> {
    let aut_order = automorphism_group(g, budget)?.order;
    let double_cover_aut_order = automorphism_group(&double_cover(g), budget)?.order;
    let verdict = if double_cover_aut_order == &aut_order * 2u32 {
        Verdict::Stable
    } else if !g.is_connected() {
        Verdict::TriviallyUnstable(TrivialReason::Disconnected)
    } else if !g.is_r_thin() {
        Verdict::TriviallyUnstable(TrivialReason::RThick)
    } else if g.is_bipartite() {
        Verdict::TriviallyUnstable(TrivialReason::BipartiteWithNontrivialAut)
    } else {
        Verdict::NontriviallyUnstable
    };
    Ok(StabilityVerdict { verdict, aut_order, double_cover_aut_order })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub stable: bool,
    #[serde(with = "crate::json::biguint")]
    pub product_aut_order: BigUint,
    #[serde(with = "crate::json::biguint")]
    pub left_aut_order: BigUint,
    #[serde(with = "crate::json::biguint")]
    pub right_aut_order: BigUint,
}

/// Compares `|Aut(G x H)|` with `|Aut(G)| |Aut(H)|`.
pub fn pair_stability(g: &Graph, h: &Graph, budget: Budget) -> Result<PairVerdict> {
    let left_aut_order = automorphism_group(g, budget)?.order;
    let right_aut_order = automorphism_group(h, budget)?.order;
    let product_aut_order = automorphism_group(&product(g, h, ProductKind::Direct).graph, budget)?.order;
    Ok(PairVerdict {
        stable: product_aut_order == &left_aut_order * &right_aut_order,
        product_aut_order,
        left_aut_order,
        right_aut_order,
    })
}

pub fn verify_two_fold(g: &Graph, pair: &TwoFoldPair) -> Result<bool> {
    let n = g.order();
    for p in [&pair.alpha, &pair.beta] {
        if p.degree() != n {
            return Err(Error::DegreeMismatch { expected: n, got: p.degree() });
        }
    }
    let (a, b) = (&pair.alpha, &pair.beta);
    let arcs = || g.edges().flat_map(|(u, v)| [(u, v), (v, u)]);
    Ok(match pair.role {
        Role::Tf => arcs().all(|(u, v)| g.has_edge(a.apply(u), b.apply(v))),
        Role::Tfs => {
            (0..n).all(|u| g.has_edge(a.apply(u), b.apply(u)))
                && arcs().all(|(u, v)| a.apply(u) == b.apply(v) || g.has_edge(a.apply(u), b.apply(v)))
        }
    })
}

/// The converse implication `u^a ~ v^b => u ~ v`, which every TF-morphism
/// satisfies because it permutes the arcs.
fn reflects_adjacency(g: &Graph, a: &Permutation, b: &Permutation) -> bool {
    let (ai, bi) = (a.inverse(), b.inverse());
    g.edges().flat_map(|(x, y)| [(x, y), (y, x)]).all(|(x, y)| g.has_edge(ai.apply(x), bi.apply(y)))
}

/// Layer-preserving automorphisms of the double cover. With `parity`, both
/// components must also map that vertex set onto itself.
pub(crate) fn tf_group(g: &Graph, parity: Option<&[bool]>, budget: Budget) -> Result<PermGroup> {
    let classes: Option<Vec<usize>> = parity.map(|p| p.iter().map(|&b| b as usize).collect());
    tf_group_colored(g, classes.as_deref(), budget)
}

/// As [`tf_group`], with both components preserving every colour class.
pub(crate) fn tf_group_colored(g: &Graph, classes: Option<&[usize]>, budget: Budget) -> Result<PermGroup> {
    let n = g.order();
    let k = classes.map_or(1, |c| c.iter().max().map_or(1, |m| m + 1));
    let colors: Vec<usize> = (0..2 * n).map(|v| k * (v / n) + classes.map_or(0, |c| c[v % n])).collect();
    automorphism_group_colored(&double_cover(g), &colors, budget)
}

pub(crate) fn split(n: usize, p: &Permutation) -> (Permutation, Permutation) {
    let alpha = Permutation::from_images_unchecked(p.images()[..n].to_vec());
    let beta = Permutation::from_images_unchecked(p.images()[n..].iter().map(|&y| y - n).collect());
    (alpha, beta)
}

pub(crate) fn is_diagonal(n: usize, p: &Permutation) -> bool {
    (0..n).all(|v| p.apply(v + n) == p.apply(v) + n)
}

/// Lexicographically least element of a layer-preserving group on `2n`
/// points with `alpha != beta`, subject to `partial` and `accept`.
pub(crate) fn least_nondiagonal(
    n: usize,
    group: &PermGroup,
    budget: Budget,
    partial: &mut dyn FnMut(usize, &Permutation) -> bool,
    accept: &mut dyn FnMut(&Permutation) -> bool,
) -> SearchOutcome<Permutation> {
    if group.generators.iter().all(|p| is_diagonal(n, p)) {
        return SearchOutcome::No;
    }
    let chain = StabilizerChain::new(2 * n, (0..2 * n).collect(), &group.generators, Some(&group.order));
    let diag_below: Vec<bool> = (0..=2 * n).map(|i| chain.level_within(i, &|p| is_diagonal(n, p))).collect();
    let mut prune = |level: usize, h: &Permutation| diag_below[level] && is_diagonal(n, h);
    let mut accept_nd = |p: &Permutation| !is_diagonal(n, p) && accept(p);
    match chain.lex_least(budget.0, &mut prune, partial, &mut accept_nd) {
        Ok(Some(p)) => SearchOutcome::Yes(p),
        Ok(None) => SearchOutcome::No,
        Err(()) => SearchOutcome::Inconclusive(budget.0),
    }
}

/// Least TF-morphism of `g` (nontrivial if requested), optionally with both
/// components preserving `parity`.
pub fn find_tf_morphism(
    g: &Graph,
    require_nontrivial: bool,
    parity: Option<&[bool]>,
    budget: Budget,
) -> SearchOutcome<TwoFoldPair> {
    let n = g.order();
    if !require_nontrivial {
        let id = Permutation::identity(n);
        return SearchOutcome::Yes(TwoFoldPair::tf(id.clone(), id));
    }
    let classes: Option<Vec<usize>> = parity.map(|p| p.iter().map(|&b| b as usize).collect());
    find_nontrivial_tf_classes(g, classes.as_deref(), budget)
}

/// Least nontrivial TF-morphism whose components map every colour class
/// onto itself.
pub(crate) fn find_nontrivial_tf_classes(
    g: &Graph,
    classes: Option<&[usize]>,
    budget: Budget,
) -> SearchOutcome<TwoFoldPair> {
    let n = g.order();
    let group = match tf_group_colored(g, classes, budget) {
        Ok(group) => group,
        Err(_) => return SearchOutcome::Inconclusive(budget.0),
    };
    least_nondiagonal(n, &group, budget, &mut |_, _| true, &mut |_| true).map(|p| {
        let (alpha, beta) = split(n, &p);
        let pair = TwoFoldPair::tf(alpha, beta);
        assert!(verify_two_fold(g, &pair).unwrap() && pair.is_nontrivial());
        assert!(reflects_adjacency(g, &pair.alpha, &pair.beta));
        if let Some(c) = classes {
            assert!((0..n).all(|v| c[pair.alpha.apply(v)] == c[v] && c[pair.beta.apply(v)] == c[v]));
        }
        pair
    })
}

/// Least TFS-morphism of `g`: a TF-morphism of the complement whose
/// `alpha beta^-1` is a derangement.
pub fn find_tfs_morphism(g: &Graph, budget: Budget) -> Result<SearchOutcome<TwoFoldPair>> {
    let n = g.order();
    if n == 1 {
        // u^a ~ u^b is impossible on one vertex
        return Ok(SearchOutcome::No);
    }
    let co = g.complement()?;
    let group = match tf_group(&co, None, budget) {
        Ok(group) => group,
        Err(_) => return Ok(SearchOutcome::Inconclusive(budget.0)),
    };
    // once the image of n + u is fixed, alpha(u) and beta(u) are both known
    let mut partial = |level: usize, p: &Permutation| level <= n || p.apply(level - 1 - n) + n != p.apply(level - 1);
    Ok(least_nondiagonal(n, &group, budget, &mut partial, &mut |_| true).map(|p| {
        let (alpha, beta) = split(n, &p);
        let pair = TwoFoldPair::tfs(alpha, beta);
        assert!(verify_two_fold(g, &pair).unwrap());
        pair
    }))
}

/// Every TF-morphism of `g` in lexicographic order, or `None` if there are
/// more than `limit`.
pub fn tf_morphisms(g: &Graph, limit: usize, budget: Budget) -> Result<Option<Vec<TwoFoldPair>>> {
    let n = g.order();
    let group = tf_group(g, None, budget)?;
    if group.order > BigUint::from(limit) {
        return Ok(None);
    }
    let chain = StabilizerChain::new(2 * n, (0..2 * n).collect(), &group.generators, Some(&group.order));
    let mut out = Vec::new();
    let mut collect = |p: &Permutation| {
        let (alpha, beta) = split(n, p);
        out.push(TwoFoldPair::tf(alpha, beta));
        false
    };
    chain
        .lex_least(u64::MAX, &mut |_, _| false, &mut |_, _| true, &mut collect)
        .expect("unbounded walk");
    Ok(Some(out))
}

/// Verdict plus, for unstable graphs, the least nontrivial TF-morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    #[serde(flatten)]
    pub verdict: StabilityVerdict,
    pub witness: Option<TwoFoldPair>,
}

pub fn classify(g: &Graph, budget: Budget) -> Result<Classification> {
    let verdict = stability_status(g, budget)?;
    let witness = if verdict.is_stable() {
        None
    } else {
        match find_tf_morphism(g, true, None, budget) {
            SearchOutcome::Yes(w) => Some(w),
            SearchOutcome::No => None,
            SearchOutcome::Inconclusive(b) => return Err(Error::SearchBudgetExceeded(b)),
        }
    };
    Ok(Classification { verdict, witness })
}
