//! Example systems and grammars shipped with the crate.

use crate::bvassam::LBvassam;
use crate::grammar::LpGrammar;

pub const QUADRATIC: &str = include_str!("../fixtures/systems/quadratic.json");

/// Small systems: at most three rules, `K <= 2`, `C <= 2`.
pub const SYSTEMS: &[(&str, &str)] = &[
    ("single-axiom", include_str!("../fixtures/systems/single-axiom.json")),
    ("counter", include_str!("../fixtures/systems/counter.json")),
    ("memory-relay", include_str!("../fixtures/systems/memory-relay.json")),
    ("surplus", include_str!("../fixtures/systems/surplus.json")),
];

/// Small grammars: at most two symbols, types of length at most five.
pub const GRAMMARS: &[(&str, &str)] = &[
    ("single", include_str!("../fixtures/grammars/single.json")),
    ("application", include_str!("../fixtures/grammars/application.json")),
    ("iteration", include_str!("../fixtures/grammars/iteration.json")),
    ("pairs", include_str!("../fixtures/grammars/pairs.json")),
];

pub fn systems() -> Vec<(&'static str, LBvassam)> {
    SYSTEMS
        .iter()
        .map(|&(name, json)| (name, LBvassam::from_json(json).expect("bundled system parses")))
        .collect()
}

pub fn grammars() -> Vec<(&'static str, LpGrammar)> {
    GRAMMARS
        .iter()
        .map(|&(name, json)| (name, LpGrammar::from_json(json).expect("bundled grammar parses")))
        .collect()
}

pub fn quadratic() -> LBvassam {
    LBvassam::from_json(QUADRATIC).expect("bundled system parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse_and_respect_limits() {
        for (name, g) in systems() {
            let sys = g.system();
            assert!(sys.rule_count() <= 3, "{name}");
            assert!(sys.full_dim() <= 2 && g.bound() <= 2, "{name}");
        }
        for (name, g) in grammars() {
            assert!(g.alphabet().len() <= 2, "{name}");
            assert!(g.max_type_length() <= 5, "{name}");
        }
        assert!(systems().len() >= 3 && grammars().len() >= 3);
    }

    #[test]
    fn quadratic_file_matches_builder() {
        assert_eq!(quadratic(), crate::quadratic::build_quadratic());
    }
}
