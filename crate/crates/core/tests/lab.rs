use stab_core::lab::{
    classify_type, construct_example, equi_cross_check, ncon_check, oldtonew_check, preserving_check, t32_clause,
    ExampleParams, Subgroup, TypeVerdict, EXAMPLE_NAMES,
};
use stab_core::survey::{enumerate_connection_sets, Dedup};
use stab_core::{stability_status, verify_two_fold, Budget, CirculantSpec, SearchOutcome, Verdict};

fn specs(n: usize) -> Vec<CirculantSpec> {
    enumerate_connection_sets(n, Dedup::None).unwrap()
}

#[test]
fn subgroup_condition_is_refined_by_a_verified_clause() {
    let mut checked = 0;
    for n in (4..=20).step_by(2) {
        for spec in specs(n) {
            for h in Subgroup::all(n) {
                for k in Subgroup::all(n) {
                    if t32_clause(&spec, &h, &k).is_none() {
                        continue;
                    }
                    let r = equi_cross_check(&spec, &h, &k, Budget::DEFAULT).unwrap();
                    assert_eq!(r.verified, Some(true), "{spec} H=<{}> K=<{}> {r:?}", h.generator(), k.generator());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn ncon_witness_is_a_two_fold_morphism() {
    for n in (4..=20).step_by(2) {
        for spec in specs(n) {
            if let SearchOutcome::Yes(w) = ncon_check(&spec, Budget::DEFAULT) {
                let m = n / 2;
                let (a, b) = (&w.pair.alpha, &w.pair.beta);
                assert!((0..n).all(|x| a.apply(x) == (w.sigma.apply(x) + m) % n && b.apply(x) == w.sigma.apply((x + m) % n)));
                assert!(w.pair.is_nontrivial() && verify_two_fold(&spec.graph(), &w.pair).unwrap(), "{spec}");
            }
        }
    }
}

#[test]
fn oldtonew_implies_ncon() {
    let mut holds = 0;
    for h in 1..=6 {
        let n = 4 * h;
        for spec in specs(n) {
            for k in Subgroup::all(n).filter(|k| k.order() % 4 == 2) {
                let r = oldtonew_check(&spec, h, &k).unwrap();
                if r.holds {
                    holds += 1;
                    assert!(ncon_check(&spec, Budget::DEFAULT).is_yes(), "{spec} h={h}");
                    assert!(r.sigma.is_some(), "{spec} h={h}");
                }
            }
        }
    }
    assert!(holds > 0);
}

#[test]
fn type_one_iff_preserving_pair() {
    for n in (18..=20).step_by(2) {
        for spec in specs(n) {
            let t = classify_type(&spec, Budget::DEFAULT);
            if matches!(t, TypeVerdict::TypeI(_) | TypeVerdict::TypeII) {
                let p = preserving_check(&spec, Budget::DEFAULT);
                assert!(!matches!(p, SearchOutcome::Inconclusive(_)));
                assert_eq!(p.is_yes(), matches!(t, TypeVerdict::TypeI(_)), "{spec}");
            }
        }
    }
}

/// Each construction at parameters where it is neither R-thick nor rejected.
#[test]
fn constructions_are_nontrivially_unstable() {
    let cases: &[(&str, usize, Option<usize>, Option<usize>)] = &[
        ("cpc1", 7, None, None),
        ("cpc2", 3, Some(2), None),
        ("cpc3", 5, None, None),
        ("strpex", 2, None, None),
        ("strpex_strong", 2, None, None),
        ("strex", 7, None, None),
        ("semiex1", 7, None, None),
        ("semiex2", 3, None, None),
        ("semiex3", 3, None, None),
        ("lexiex", 5, Some(3), None),
        ("lexiex", 3, Some(4), None),
        ("k2n", 2, None, Some(3)),
        ("k2n", 4, None, Some(5)),
    ];
    for &(name, n, m, cycle) in cases {
        let c = construct_example(name, &ExampleParams { n, m, cycle }).unwrap();
        let v = stability_status(&c.graph, Budget::DEFAULT).unwrap().verdict;
        assert_eq!(v, Verdict::NontriviallyUnstable, "{name} n={n}");
        if let Some(spec) = &c.spec {
            assert_eq!(spec.n(), c.graph.order());
        }
    }
    let mut covered: Vec<&str> = cases.iter().map(|c| c.0).collect();
    covered.push("dihedral");
    assert!(EXAMPLE_NAMES.iter().all(|n| covered.contains(n)));
}

/// At the smallest parameters these three have twin vertices.
#[test]
fn smallest_parameters_that_are_r_thick() {
    for (name, n, m) in [("strex", 3, None), ("semiex1", 3, None), ("lexiex", 3, Some(2))] {
        let c = construct_example(name, &ExampleParams { n, m, cycle: None }).unwrap();
        assert!(c.graph.is_connected() && !c.graph.is_r_thin(), "{name}");
    }
}
