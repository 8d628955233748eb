mod common;

use lpbvass::bundled;
use lpbvass::bvassam::{derive, DerivationFile, DerivationTree, Fact, Step};
use lpbvass::quadratic::{self, Typicality};
use lpbvass::Vector;
use proptest::prelude::*;

#[test]
fn engine_matches_naive_closure_up_to_five_nodes() {
    for system in common::small_systems().iter().step_by(3) {
        let min = common::naive_min_sizes(system, 5);
        for (fact, &m) in &min {
            let tree = derive(system, fact, 5).unwrap().expect("derivable");
            assert_eq!(tree.size(), m, "{}", system.fact_to_string(fact));
            assert!(system.validate(&tree).unwrap());
        }
    }
}

#[test]
fn bundled_languages() {
    let expected: &[(&str, &[&[u32]])] = &[
        ("single-axiom", &[&[1]]),
        ("counter", &[&[1], &[2], &[3], &[4]]),
        ("memory-relay", &[&[1]]),
        ("surplus", &[&[1, 0], &[2, 0], &[2, 1], &[3, 0], &[3, 1], &[4, 0]]),
    ];
    for (name, g) in bundled::systems() {
        let want: Vec<Vector> = expected.iter().find(|(n, _)| *n == name).unwrap().1.iter().map(|c| Vector::new(c.to_vec())).collect();
        let cap = Vector::new(vec![4; g.system().visible_dim()]);
        let mut got = g.enumerate_language(&cap).unwrap();
        got.retain(|v| v.size() <= 4);
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn derivation_files_round_trip() {
    let g = bundled::quadratic();
    let tree = g.member(&quadratic::visible(4, 2)).unwrap().unwrap();
    let file = DerivationFile::from_tree(g.system(), &tree);
    let json = serde_json::to_string(&file).unwrap();
    let back: DerivationFile = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_tree(g.system()).unwrap(), tree);
}

#[test]
fn quadratic_witnesses_are_typical() {
    let g = bundled::quadratic();
    for n in 1..=3u32 {
        for l in 0..=n * n {
            let v = quadratic::visible(l, n);
            let Some(tree) = g.member(&v).unwrap() else {
                assert_eq!((l, n), (0, 1));
                continue;
            };
            assert!(g.system().validate(&tree).unwrap());
            assert!(matches!(quadratic::classify(&tree), Typicality::Complete { n: m, .. } if m == n));
            assert_eq!(tree.size(), (3 * n + 2 * l + 2) as usize);
        }
        assert!(g.member(&quadratic::visible(n * n + 1, n)).unwrap().is_none());
    }
}

fn walk(steps: &[usize]) -> DerivationTree {
    let g = quadratic::build_quadratic();
    let sys = g.system();
    let a = &sys.axioms()[0];
    let mut tree = DerivationTree { fact: Fact::new(a.state, a.vector.clone()), step: Step::Axiom(0) };
    for &choice in steps {
        let applicable: Vec<usize> = (0..sys.unary_rules().len())
            .filter(|&r| {
                let rule = &sys.unary_rules()[r];
                rule.source == tree.fact.state && tree.fact.vector.checked_sub(&rule.source_offset).is_some()
            })
            .collect();
        if applicable.is_empty() {
            break;
        }
        let r = applicable[choice % applicable.len()];
        let rule = &sys.unary_rules()[r];
        let base = tree.fact.vector.checked_sub(&rule.source_offset).unwrap();
        tree = DerivationTree { fact: Fact::new(rule.target, &base + &rule.target_offset), step: Step::Unary(r, Box::new(tree)) };
    }
    tree
}

proptest! {
    #[test]
    fn random_walks_are_valid_and_never_atypical(steps in prop::collection::vec(0usize..7, 0..40)) {
        let tree = walk(&steps);
        let g = quadratic::build_quadratic();
        prop_assert!(g.system().validate(&tree).unwrap());
        let kind = quadratic::classify(&tree);
        prop_assert!(!matches!(kind, Typicality::Atypical { .. }), "{:?}", kind);
        let accepted = tree.fact.state == g.system().accepting() && tree.fact.vector.as_slice()[2..].iter().all(|&c| c == 0);
        if accepted {
            prop_assert!(matches!(kind, Typicality::Complete { .. }), "{:?}", kind);
        }
    }

    #[test]
    fn embedding_pads_with_zeros(coords in prop::collection::vec(0u32..5, 1..4), extra in 0usize..3) {
        let v = Vector::new(coords.clone());
        let w = v.iota(coords.len() + extra).unwrap();
        prop_assert_eq!(w.size(), v.size());
        prop_assert_eq!(w.truncate(coords.len()), v.clone());
        prop_assert!(v.iota(coords.len().saturating_sub(1)).is_none() || coords.is_empty());
    }

    #[test]
    fn vector_addition_and_subtraction(a in prop::collection::vec(0u32..9, 3), b in prop::collection::vec(0u32..9, 3)) {
        let (a, b) = (Vector::new(a), Vector::new(b));
        let sum = &a + &b;
        prop_assert_eq!(sum.size(), a.size() + b.size());
        prop_assert_eq!(sum.checked_sub(&b), Some(a.clone()));
        prop_assert!(a.le(&sum));
    }

    #[test]
    fn random_small_systems_agree_with_naive_closure(index in 0usize..1000) {
        let systems = common::small_systems();
        let system = &systems[index % systems.len()];
        let min = common::naive_min_sizes(system, 4);
        for fact in common::facts_below(system, 3) {
            let got = derive(system, &fact, 4).unwrap().map(|t| t.size());
            prop_assert_eq!(got, min.get(&fact).copied());
        }
    }
}
