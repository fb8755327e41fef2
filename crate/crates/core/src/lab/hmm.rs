//! Subgroup conditions, shifted-set isomorphism, the even-subgraph lift,
//! and the involution-shift automorphism test.

use serde::{Deserialize, Serialize};

use super::{add_subgroup, disjoint, even_subgraph, minus, subset, union, Subgroup};
use crate::circulant::CirculantSpec;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::search::{automorphism_group_colored, Budget};
use crate::stability::{find_nontrivial_tf_classes, verify_two_fold, SearchOutcome, TwoFoldPair};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct T32Witness {
    pub h: Subgroup,
    pub k: Subgroup,
    /// 1: `S+H <= S | (K_o+H)` with `H & K_o` empty.
    /// 2: `(S\K_o)+H <= S | K_o` with `|H| != 2` or `4 | |K|`.
    pub clause: u8,
}

/// Which clause (1 checked first) holds for the pair, if any. `H` must be
/// nontrivial and `K` of even order.
pub fn t32_clause(spec: &CirculantSpec, h: &Subgroup, k: &Subgroup) -> Option<u8> {
    if h.is_trivial() || k.order() % 2 != 0 {
        return None;
    }
    let s = spec.mask();
    let ko = k.odd_part();
    if disjoint(&h.mask(), &ko) && subset(&add_subgroup(&s, h), &union(&s, &add_subgroup(&ko, h))) {
        return Some(1);
    }
    let clause2_sizes = h.order() != 2 || k.order() % 4 == 0;
    if clause2_sizes && subset(&add_subgroup(&minus(&s, &ko), h), &union(&s, &ko)) {
        return Some(2);
    }
    None
}

/// First pair `(H, K)`, `H` outer, satisfying either clause.
pub fn hmm_t32(spec: &CirculantSpec) -> SearchOutcome<T32Witness> {
    let n = spec.n();
    if n % 2 != 0 {
        return SearchOutcome::No;
    }
    for h in Subgroup::all(n) {
        for k in Subgroup::all(n) {
            if let Some(clause) = t32_clause(spec, &h, &k) {
                return SearchOutcome::Yes(T32Witness { h, k, clause });
            }
        }
    }
    SearchOutcome::No
}

/// An isomorphism `Cay(S) -> Cay(S + n/2)`. When `n/2` lies in `S` the
/// translate contains 0 and the answer is No.
pub fn hmm_p37(spec: &CirculantSpec, budget: Budget) -> SearchOutcome<Permutation> {
    let n = spec.n();
    if n % 2 != 0 {
        return SearchOutcome::No;
    }
    let Some(shifted) = spec.shifted(n / 2) else { return SearchOutcome::No };
    match spec.isomorphism_to(&shifted, budget) {
        Ok(Some(p)) => {
            let g = shifted.graph();
            assert!(spec.graph().edges().all(|(u, v)| g.has_edge(p.apply(u), p.apply(v))));
            SearchOutcome::Yes(p)
        }
        Ok(None) => SearchOutcome::No,
        Err(_) => SearchOutcome::Inconclusive(budget.0),
    }
}

/// Subgroup `H` and a nontrivial TF-morphism of the even subgraph whose
/// displacements lie in `H`. Permutations act on the even subgraph's
/// indices: index `i` is residue `2i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct P312Witness {
    pub h: Subgroup,
    pub alpha: Permutation,
    pub beta: Permutation,
}

pub fn hmm_p312(spec: &CirculantSpec, budget: Budget) -> SearchOutcome<P312Witness> {
    let n = spec.n();
    if n % 2 != 0 {
        return SearchOutcome::No;
    }
    let half = n / 2;
    let s = spec.mask();
    let even = even_subgraph(spec);
    let mut inconclusive = false;
    let mut tried: Vec<usize> = Vec::new();
    for h in Subgroup::all(n) {
        let lifts = (1..n).step_by(2).filter(|&v| s[v]).all(|v| h.elements().all(|x| s[(v + x) % n]));
        if !lifts {
            continue;
        }
        // v^a - v in H for even v means a fixes each coset of H & 2Z_n;
        // in index space these are the classes mod `step`
        let step = (h.generator() * 2 / crate::circulant::gcd(h.generator(), 2)) / 2;
        if tried.contains(&step) {
            continue;
        }
        tried.push(step);
        let classes: Vec<usize> = (0..half).map(|i| i % step).collect();
        match find_nontrivial_tf_classes(&even, Some(&classes), budget) {
            SearchOutcome::Yes(pair) => {
                let ok = (0..half).all(|i| {
                    let (a, b) = (pair.alpha.apply(i), pair.beta.apply(i));
                    h.contains(2 * a + n - 2 * i) && h.contains(2 * b + n - 2 * i)
                });
                assert!(ok && verify_two_fold(&even, &pair).unwrap());
                return SearchOutcome::Yes(P312Witness { h, alpha: pair.alpha, beta: pair.beta });
            }
            SearchOutcome::No => {}
            SearchOutcome::Inconclusive(_) => inconclusive = true,
        }
    }
    if inconclusive {
        SearchOutcome::Inconclusive(budget.0)
    } else {
        SearchOutcome::No
    }
}

/// An automorphism `sigma` of `Cay((S\{m})+m)` fixing 0 and moving `m`,
/// plus the two-fold morphism `x -> x^sigma + m`, `x -> (x+m)^sigma` of the
/// original graph that it induces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NconWitness {
    pub sigma: Permutation,
    pub pair: TwoFoldPair,
}

pub(crate) fn ncon_shift(spec: &CirculantSpec) -> CirculantSpec {
    let n = spec.n();
    let m = n / 2;
    // 0 is never in the translate: that would need m in S \ {m}
    CirculantSpec::from_predicate(n, |x| {
        let y = (x + m) % n;
        y != m && spec.contains(y)
    })
}

pub fn ncon_check(spec: &CirculantSpec, budget: Budget) -> SearchOutcome<NconWitness> {
    let n = spec.n();
    if n % 2 != 0 {
        return SearchOutcome::No;
    }
    let m = n / 2;
    let shifted = ncon_shift(spec).graph();
    let colors: Vec<usize> = (0..n).map(|x| (x == 0) as usize).collect();
    let group = match automorphism_group_colored(&shifted, &colors, budget) {
        Ok(g) => g,
        Err(_) => return SearchOutcome::Inconclusive(budget.0),
    };
    let Some(sigma) = group.generators.into_iter().find(|p| p.apply(m) != m) else { return SearchOutcome::No };
    assert!(sigma.apply(0) == 0 && shifted.preserves_adjacency(sigma.images()));
    let alpha = Permutation::from_fn(n, |x| (sigma.apply(x) + m) % n).unwrap();
    let beta = Permutation::from_fn(n, |x| sigma.apply((x + m) % n)).unwrap();
    let pair = TwoFoldPair::tf(alpha, beta);
    assert!(pair.is_nontrivial() && verify_two_fold(&spec.graph(), &pair).unwrap());
    SearchOutcome::Yes(NconWitness { sigma, pair })
}

/// Satisfied clauses of the combined condition: (i) subgroup invariance,
/// (ii) shifted-set isomorphism, (iii) involution-shift automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HmmTypeWitness {
    pub clauses: Vec<String>,
    /// `(H, K)` for clause (i)
    pub subgroups: Option<(Subgroup, Subgroup)>,
    pub isomorphism: Option<Permutation>,
    pub ncon: Option<NconWitness>,
}

/// `K` of even order, `H` a nontrivial odd-order subgroup of `K`, with
/// `(S\K_o)+H = S\K_o`.
pub(crate) fn hmmtype_clause_i(spec: &CirculantSpec) -> Option<(Subgroup, Subgroup)> {
    let n = spec.n();
    let s = spec.mask();
    for k in Subgroup::all(n).filter(|k| k.order() % 2 == 0) {
        let rest = minus(&s, &k.odd_part());
        for h in Subgroup::all(n).filter(|h| !h.is_trivial() && h.order() % 2 == 1 && h.is_subgroup_of(&k)) {
            if add_subgroup(&rest, &h) == rest {
                return Some((h, k));
            }
        }
    }
    None
}

pub fn theorem_hmmtype(spec: &CirculantSpec, budget: Budget) -> SearchOutcome<HmmTypeWitness> {
    if spec.n() % 2 != 0 {
        return SearchOutcome::No;
    }
    hmmtype_combine(spec, &hmm_p37(spec, budget), &ncon_check(spec, budget))
}

/// Clause (i) plus already computed outcomes for clauses (ii) and (iii).
pub(crate) fn hmmtype_combine(
    spec: &CirculantSpec,
    p37: &SearchOutcome<Permutation>,
    ncon: &SearchOutcome<NconWitness>,
) -> SearchOutcome<HmmTypeWitness> {
    if spec.n() % 2 != 0 {
        return SearchOutcome::No;
    }
    let subgroups = hmmtype_clause_i(spec);
    let mut clauses = Vec::new();
    if subgroups.is_some() {
        clauses.push("i".to_string());
    }
    if p37.is_yes() {
        clauses.push("ii".to_string());
    }
    if ncon.is_yes() {
        clauses.push("iii".to_string());
    }
    if clauses.is_empty() {
        return match (p37, ncon) {
            (SearchOutcome::Inconclusive(b), _) | (_, SearchOutcome::Inconclusive(b)) => SearchOutcome::Inconclusive(*b),
            _ => SearchOutcome::No,
        };
    }
    SearchOutcome::Yes(HmmTypeWitness {
        clauses,
        subgroups,
        isomorphism: p37.witness().cloned(),
        ncon: ncon.witness().cloned(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OldToNew {
    /// `(S\K_o) + <h>` is contained in `S | K_o`.
    pub holds: bool,
    /// Identity on `2K`, `+2h` on `h+2K`, `-h` elsewhere; present when the
    /// inclusion holds and it was checked to be an automorphism of
    /// `Cay((S\{2h})+2h)` fixing 0 and moving `2h`.
    pub sigma: Option<Permutation>,
}

pub fn oldtonew_check(spec: &CirculantSpec, h: usize, k: &Subgroup) -> Result<OldToNew> {
    let n = spec.n();
    if h == 0 || n != 4 * h {
        return Err(Error::BadParameters(format!("modulus {n} is not 4h for h = {h}")));
    }
    if k.modulus() != n || k.order() % 4 != 2 {
        return Err(Error::BadParameters(format!("|K| = {} is not twice an odd number", k.order())));
    }
    let s = spec.mask();
    let ko = k.odd_part();
    let hh = Subgroup::generated_by(n, h);
    let holds = subset(&add_subgroup(&minus(&s, &ko), &hh), &union(&s, &ko));
    if !holds {
        return Ok(OldToNew { holds, sigma: None });
    }
    let two_k = k.doubled();
    let sigma = Permutation::from_fn(n, |x| {
        if two_k.contains(x) {
            x
        } else if two_k.contains(x + n - h) {
            (x + 2 * h) % n
        } else {
            (x + n - h) % n
        }
    })?;
    let target = ncon_shift(spec).graph();
    let valid = sigma.apply(0) == 0 && sigma.apply(2 * h) != 2 * h && target.preserves_adjacency(sigma.images());
    Ok(OldToNew { holds, sigma: valid.then_some(sigma) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquiClause {
    /// `|H|` odd: `(S\L_o)+H = S\L_o`
    I,
    /// `2 || |H|`, `m` not in `H\K_o`: `|H| > 2` and `(S\L_o)+2H = S\L_o`
    Ii,
    /// `m` in `H\K_o`: `Cay(S) ~ Cay(S+m)`
    Iii,
    /// `4 | |H|`, `m` not in `H\K_o`: involution-shift automorphism
    Iv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquiReport {
    pub clause: EquiClause,
    /// `None` when a search ran out of budget.
    pub verified: Option<bool>,
}

/// Determines which refinement applies to a pair satisfying the subgroup
/// condition and checks its conclusion directly.
pub fn equi_cross_check(spec: &CirculantSpec, h: &Subgroup, k: &Subgroup, budget: Budget) -> Result<EquiReport> {
    if t32_clause(spec, h, k).is_none() {
        return Err(Error::HypothesisNotSatisfied(format!(
            "subgroups <{}> and <{}> satisfy neither clause for {spec}",
            h.generator(),
            k.generator()
        )));
    }
    let n = spec.n();
    let m = n / 2;
    let s = spec.mask();
    let l = k.join(h);
    let lo = l.odd_part();
    let rest = minus(&s, &lo);
    let m_in_h_minus_ko = h.contains(m) && !k.odd_part()[m];
    let (clause, verified) = if m_in_h_minus_ko {
        let out = hmm_p37(spec, budget);
        (EquiClause::Iii, outcome_flag(&out))
    } else if h.order() % 2 == 1 {
        (EquiClause::I, Some(add_subgroup(&rest, h) == rest))
    } else if h.order() % 4 == 2 {
        let ok = h.order() > 2 && add_subgroup(&rest, &h.doubled()) == rest;
        (EquiClause::Ii, Some(ok))
    } else {
        (EquiClause::Iv, outcome_flag(&ncon_check(spec, budget)))
    };
    Ok(EquiReport { clause, verified })
}

fn outcome_flag<W>(o: &SearchOutcome<W>) -> Option<bool> {
    match o {
        SearchOutcome::Yes(_) => Some(true),
        SearchOutcome::No => Some(false),
        SearchOutcome::Inconclusive(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::stability_status;

    fn spec(n: usize, reps: &[i64]) -> CirculantSpec {
        CirculantSpec::from_representatives(n, reps).unwrap()
    }

    fn sub(n: usize, g: usize) -> Subgroup {
        Subgroup::generated_by(n, g)
    }

    fn ex20() -> CirculantSpec {
        spec(20, &[1, 4, 9, 10])
    }

    #[test]
    fn t32_examples() {
        assert_eq!(t32_clause(&ex20(), &sub(20, 5), &sub(20, 2)), Some(2));
        assert!(hmm_t32(&ex20()).is_yes());
        assert_eq!(t32_clause(&spec(8, &[1, 2]), &sub(8, 4), &sub(8, 1)), Some(1));
        assert!(hmm_t32(&spec(8, &[1, 2])).is_yes());
        assert!(hmm_t32(&spec(5, &[1])).is_no());
    }

    #[test]
    fn p37_examples() {
        let w = hmm_p37(&spec(8, &[1, 2]), Budget::DEFAULT);
        assert_eq!(w.witness().unwrap().images(), &[0, 3, 6, 1, 4, 7, 2, 5]);
        assert!(hmm_p37(&ex20(), Budget::DEFAULT).is_no());
        assert!(hmm_p37(&spec(6, &[1]), Budget::DEFAULT).is_no());
    }

    #[test]
    fn p312_examples() {
        let s20 = CirculantSpec::from_predicate(20, |x| x % 2 == 1 || [2, 4, 16, 18].contains(&x));
        let w = hmm_p312(&s20, Budget::DEFAULT);
        let w = w.witness().unwrap();
        assert_eq!(w.h, sub(20, 2));
        assert!(hmm_p312(&spec(10, &[1, 2]), Budget::DEFAULT).is_no());
        assert!(hmm_p312(&spec(9, &[1, 2]), Budget::DEFAULT).is_no());
    }

    #[test]
    fn ncon_examples() {
        let w = ncon_check(&ex20(), Budget::DEFAULT);
        assert!(w.is_yes());
        // frozen from the automorphism oracle
        assert!(ncon_check(&spec(10, &[1, 2]), Budget::DEFAULT).is_no());
        // two triangles; the stabilizer of 0 swaps 3 and 1
        assert!(ncon_check(&spec(6, &[1]), Budget::DEFAULT).is_yes());
    }

    #[test]
    fn hmmtype_examples() {
        let w = theorem_hmmtype(&ex20(), Budget::DEFAULT);
        assert!(w.witness().unwrap().clauses.contains(&"iii".to_string()));
        let w = theorem_hmmtype(&spec(8, &[1, 2]), Budget::DEFAULT);
        assert!(w.witness().unwrap().clauses.contains(&"ii".to_string()));
        assert!(theorem_hmmtype(&spec(5, &[1]), Budget::DEFAULT).is_no());
    }

    #[test]
    fn oldtonew_examples() {
        let r = oldtonew_check(&ex20(), 5, &sub(20, 2)).unwrap();
        assert!(r.holds && r.sigma.is_some());
        assert!(matches!(oldtonew_check(&ex20(), 5, &sub(20, 4)), Err(Error::BadParameters(_))));
        assert!(matches!(oldtonew_check(&ex20(), 4, &sub(20, 2)), Err(Error::BadParameters(_))));
        // frozen from the set-arithmetic oracle: 2 + <3> meets 5, which is in
        // neither S nor K_o
        let r = oldtonew_check(&spec(12, &[1, 2, 6]), 3, &sub(12, 2)).unwrap();
        assert!(!r.holds && r.sigma.is_none());
    }

    #[test]
    fn equi_examples() {
        let r = equi_cross_check(&ex20(), &sub(20, 5), &sub(20, 2), Budget::DEFAULT).unwrap();
        assert_eq!(r, EquiReport { clause: EquiClause::Iv, verified: Some(true) });
        let r = equi_cross_check(&spec(8, &[1, 2]), &sub(8, 4), &sub(8, 1), Budget::DEFAULT).unwrap();
        assert_eq!(r, EquiReport { clause: EquiClause::Iii, verified: Some(true) });
        assert!(matches!(
            equi_cross_check(&spec(10, &[1]), &sub(10, 5), &sub(10, 5), Budget::DEFAULT),
            Err(Error::HypothesisNotSatisfied(_))
        ));
    }

    #[test]
    fn equi_clause_i_found_by_search() {
        let mut found = 0;
        for n in (6..=18).step_by(2) {
            for bits in 1u32..(1 << (n / 2)) {
                let s = CirculantSpec::from_predicate(n, |x| bits >> (x.min(n - x) - 1) & 1 == 1);
                for h in Subgroup::all(n).filter(|h| h.order() % 2 == 1) {
                    for k in Subgroup::all(n) {
                        if t32_clause(&s, &h, &k).is_some() {
                            let r = equi_cross_check(&s, &h, &k, Budget::DEFAULT).unwrap();
                            assert_eq!(r, EquiReport { clause: EquiClause::I, verified: Some(true) }, "{s}");
                            assert!(!stability_status(&s.graph(), Budget::DEFAULT).unwrap().is_stable());
                            found += 1;
                        }
                    }
                }
            }
        }
        assert!(found > 0);
    }
}
