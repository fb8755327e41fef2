mod common;

use std::collections::BTreeSet;

use common::*;
use num_bigint::BigUint;
use stab_core::stability::tf_morphisms;
use stab_core::{
    automorphism_group, cartesian_skeleton, find_tf_morphism, find_tfs_morphism, product, stability_status,
    verify_two_fold, Budget, Graph, ProductKind, SearchOutcome,
};

fn connected_nonbipartite(max: usize) -> Vec<Adj> {
    (1..=max).flat_map(all_graphs).filter(|a| connected(a) && !bipartite(a)).collect()
}

#[test]
fn tf_search_agrees_with_exhaustive_pairs() {
    for a in connected_nonbipartite(5) {
        let g = to_graph(&a);
        let expected = least_nontrivial_tf(&a);
        let stable = stability_status(&g, Budget::DEFAULT).unwrap().is_stable();
        assert_eq!(stable, expected.is_none(), "{a:?}");
        match find_tf_morphism(&g, true, None, Budget::DEFAULT) {
            SearchOutcome::Yes(pair) => {
                let (al, be) = expected.expect("oracle found no pair");
                assert_eq!((pair.alpha.images(), pair.beta.images()), (&al[..], &be[..]), "{a:?}");
            }
            other => assert!(expected.is_none() && other.is_no(), "{a:?}"),
        }
    }
}

#[test]
fn order_six_stability_matches_tf_search() {
    for a in all_graphs(6).filter(|a| connected(a) && !bipartite(a)) {
        let g = to_graph(&a);
        let stable = stability_status(&g, Budget::DEFAULT).unwrap().is_stable();
        assert_eq!(stable, find_tf_morphism(&g, true, None, Budget::DEFAULT).is_no(), "{a:?}");
    }
}

#[test]
fn group_orders_match_brute_force() {
    for n in 1..=5 {
        for a in all_graphs(n) {
            let g = to_graph(&a);
            assert_eq!(automorphism_group(&g, Budget::DEFAULT).unwrap().order, BigUint::from(automorphism_count(&a)));
        }
    }
}

fn pair_key(al: &[usize], be: &[usize]) -> (Vec<usize>, Vec<usize>) {
    (al.to_vec(), be.to_vec())
}

#[test]
fn tfs_are_complement_tf_with_derangement() {
    for n in 1..=5 {
        for a in all_graphs(n) {
            let direct: BTreeSet<_> = all_tfs(&a).into_iter().collect();
            let co = to_graph(&complement(&a));
            let dual: BTreeSet<_> = tf_morphisms(&co, 20_000, Budget::DEFAULT)
                .unwrap()
                .expect("at most (5!)^2 pairs")
                .into_iter()
                .filter(|p| p.alpha.then(&p.beta.inverse()).is_derangement())
                .map(|p| pair_key(p.alpha.images(), p.beta.images()))
                .collect();
            assert_eq!(direct, dual, "{a:?}");
            let found = find_tfs_morphism(&to_graph(&a), Budget::DEFAULT).unwrap();
            assert_eq!(found.witness().map(|p| pair_key(p.alpha.images(), p.beta.images())), direct.first().cloned());
        }
    }
}

#[test]
fn tf_witnesses_are_skeleton_automorphisms_and_reflect_adjacency() {
    for a in (1..=6).flat_map(all_graphs).step_by(3) {
        let g = to_graph(&a);
        let SearchOutcome::Yes(pair) = find_tf_morphism(&g, true, None, Budget::DEFAULT) else { continue };
        assert!(verify_two_fold(&g, &pair).unwrap());
        let s = cartesian_skeleton(&g);
        assert!(s.preserves_adjacency(pair.alpha.images()) && s.preserves_adjacency(pair.beta.images()), "{a:?}");
        let (al, be) = (pair.alpha.images(), pair.beta.images());
        let n = a.len();
        for u in 0..n {
            for v in 0..n {
                if a[al[u]][be[v]] {
                    assert!(a[u][v], "{a:?}");
                }
            }
        }
    }
}

fn corpus() -> Vec<Graph> {
    let mut out: Vec<Graph> = (3..=7).map(|n| Graph::cycle(n).unwrap()).collect();
    out.extend((2..=5).map(Graph::complete));
    out.extend((2..=5).map(Graph::path));
    out.push(stab_core::CirculantSpec::from_representatives(10, &[1, 2]).unwrap().graph());
    out.extend((1..=5).flat_map(all_graphs).step_by(97).map(|a| to_graph(&a)));
    out
}

#[test]
fn unstable_factor_makes_direct_product_unstable() {
    let corpus = corpus();
    for h in corpus.iter().filter(|h| !stability_status(h, Budget::DEFAULT).unwrap().is_stable()) {
        for g in corpus.iter().filter(|g| g.order() * h.order() <= 40) {
            let p = product(g, h, ProductKind::Direct).graph;
            assert!(!stability_status(&p, Budget::DEFAULT).unwrap().is_stable());
        }
    }
}

#[test]
fn stable_coprime_factors_give_stable_direct_product() {
    let stable: Vec<Graph> = corpus()
        .into_iter()
        .filter(|g| !g.is_bipartite() && stability_status(g, Budget::DEFAULT).unwrap().is_stable())
        .collect();
    let mut checked = 0;
    for g in &stable {
        for h in &stable {
            if stab_core::circulant::gcd(g.order(), h.order()) == 1 {
                let p = product(g, h, ProductKind::Direct).graph;
                assert!(stability_status(&p, Budget::DEFAULT).unwrap().is_stable());
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}
