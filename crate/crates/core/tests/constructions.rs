mod common;

use lpbvass::bundled;
use lpbvass::bvassam::{LBvassam, Step};
use lpbvass::calculus::{parse_sequent, parse_type, prove, LType};
use lpbvass::constructions::{
    check_theorem_bvass_to_lp, check_theorem_lp_to_bvass, lbam_construction, lbam_of, lpg_construction, postpone_lexicon_rules,
    types_of_vector, HarnessConfig, LanguageBound,
};
use lpbvass::grammar::LpGrammar;
use lpbvass::Vector;
use proptest::prelude::*;

#[test]
fn catalogue_systems_round_trip_through_grammars() {
    for (i, system) in common::small_systems().into_iter().enumerate().step_by(7) {
        let g = LBvassam::new(system, 2).unwrap();
        let r = check_theorem_bvass_to_lp(&format!("catalogue-{i}"), &g, &LanguageBound::MaxSize(3), HarnessConfig::default())
            .unwrap();
        assert!(r.agree, "{r:?}");
    }
}

#[test]
fn normalized_derivations_end_with_lexicon_rules() {
    for (name, g) in bundled::grammars() {
        let c = lbam_construction(&g).unwrap();
        let sys = c.system.system();
        for v in Vector::all_up_to_size(g.alphabet().len(), 4) {
            let Some(tree) = c.system.member(&v).unwrap() else { continue };
            let normal = postpone_lexicon_rules(&c, &tree).unwrap();
            assert!(sys.validate(&normal).unwrap(), "{name} {v}");
            assert_eq!(normal.fact, tree.fact);
            assert_eq!(normal.size(), tree.size());
            // The lexicon rules form the top of the root chain.
            let mut node = &normal;
            let mut top = 0;
            while let Step::Unary(r, child) = &node.step {
                if !c.lexicon_rules.contains(r) {
                    break;
                }
                top += 1;
                node = child;
            }
            assert_eq!(top as u64, v.size(), "{name} {v}");
            assert!(node.nodes().iter().all(|n| !matches!(n.step, Step::Unary(r, _) if c.lexicon_rules.contains(&r))));
            assert!(node.fact.vector.as_slice()[..g.alphabet().len()].iter().all(|&x| x == 0));
            let types = types_of_vector(&node.fact.vector, &c.ind).unwrap();
            assert_eq!(types.len() as u64, v.size());
        }
    }
}

#[test]
fn empty_antecedents_are_over_accepted() {
    let g = LpGrammar::new(["a"], [("a", parse_type("s/(p/p)").unwrap())], LType::prim("s")).unwrap();
    assert!(prove(&parse_sequent("s/(p/p) -> s").unwrap()).unwrap().is_none());
    let system = lbam_of(&g).unwrap();
    let tree = system.member(&Vector::new(vec![1])).unwrap().expect("accepted by the system");
    assert!(tree.nodes().iter().any(|n| n.fact.vector.is_zero()));
    let r = check_theorem_lp_to_bvass("empty-antecedent", &g, 2, HarnessConfig::default()).unwrap();
    assert!(!r.agree);
}

#[test]
fn zero_premise_offset_breaks_the_state_lemma() {
    let counter = bundled::systems().into_iter().find(|(n, _)| *n == "counter").unwrap().1;
    let c = lpg_construction(&counter).unwrap();
    assert_eq!(c.rule_types[1], parse_type("s/g1/s").unwrap());
    let s = parse_sequent("s/g1/s, g1, s -> s").unwrap();
    assert!(prove(&s).unwrap().is_some());
}

fn arb_grammar() -> impl Strategy<Value = LpGrammar> {
    let atom = prop_oneof![Just("p"), Just("s")].prop_map(LType::prim);
    let ty = atom.prop_recursive(2, 4, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| LType::div(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| LType::prod(a, b)),
        ]
    });
    prop::collection::vec((0usize..2, ty), 1..4).prop_map(|entries| {
        let lexicon: Vec<(&str, LType)> = entries.into_iter().map(|(i, t)| (["a", "b"][i], t)).collect();
        LpGrammar::new(["a", "b"], lexicon, LType::prim("s")).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Any disagreement must be an extra system member whose derivation goes
    // through a zero-vector fact, i.e. an empty-antecedent sequent.
    #[test]
    fn random_grammars_round_trip_through_systems(g in arb_grammar()) {
        let r = check_theorem_lp_to_bvass("random", &g, 3, HarnessConfig::default()).unwrap();
        let system = lbam_of(&g).unwrap();
        for c in &r.counterexamples {
            prop_assert!(!c.in_source && c.in_target, "{:?}", r);
            let tree = system.member(&c.vector).unwrap().unwrap();
            prop_assert!(tree.nodes().iter().any(|n| n.fact.vector.is_zero()), "{}", tree);
        }
    }
}
