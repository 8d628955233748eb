//! Bounded language comparisons between a source formalism and its
//! translation.

use serde::Serialize;

use crate::bvassam::{EngineConfig, LBvassam};
use crate::calculus::ProverConfig;
use crate::grammar::{self, LpGrammar};
use crate::vector::Vector;

use super::{lbam_of, lpg_of, ConstructionError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    BvassToLp,
    LpToBvass,
}

/// A vector in exactly one of the two languages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub vector: Vector,
    pub in_source: bool,
    pub in_target: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub instance: String,
    pub direction: Direction,
    pub agree: bool,
    /// Number of candidate vectors compared.
    pub checked: usize,
    /// Members of the source language among the candidates.
    pub members: Vec<Vector>,
    pub counterexamples: Vec<Counterexample>,
}

/// Which visible vectors a comparison covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LanguageBound {
    /// Nonzero vectors componentwise below the cap.
    Cap(Vector),
    /// Nonzero vectors of total size at most this.
    MaxSize(u32),
}

impl LanguageBound {
    pub fn candidates(&self, dim: usize) -> Result<Vec<Vector>, ConstructionError> {
        match self {
            LanguageBound::Cap(cap) if cap.dim() != dim => {
                Err(ConstructionError::DimensionMismatch { expected: dim, got: cap.dim() })
            }
            LanguageBound::Cap(cap) => Ok(Vector::all_below(cap)),
            LanguageBound::MaxSize(n) => Ok(Vector::all_up_to_size(dim, *n)),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HarnessConfig {
    pub engine: EngineConfig,
    pub prover: ProverConfig,
}

fn report(
    instance: &str,
    direction: Direction,
    candidates: &[Vector],
    source: Vec<Vector>,
    target: Vec<Vector>,
) -> EquivalenceReport {
    let counterexamples: Vec<Counterexample> = candidates
        .iter()
        .filter_map(|v| {
            let (s, t) = (source.contains(v), target.contains(v));
            (s != t).then(|| Counterexample { vector: v.clone(), in_source: s, in_target: t })
        })
        .collect();
    EquivalenceReport {
        instance: instance.to_owned(),
        direction,
        agree: counterexamples.is_empty(),
        checked: candidates.len(),
        members: source,
        counterexamples,
    }
}

/// Compares `L(g)` with the Parikh image of `L(LPG(g))` within `bound`.
pub fn check_theorem_bvass_to_lp(
    instance: &str,
    g: &LBvassam,
    bound: &LanguageBound,
    config: HarnessConfig,
) -> Result<EquivalenceReport, ConstructionError> {
    check_bvass_to_lp_against(instance, g, &lpg_of(g)?, bound, config)
}

/// As [`check_theorem_bvass_to_lp`] with an explicit target grammar.
pub fn check_bvass_to_lp_against(
    instance: &str,
    g: &LBvassam,
    target: &LpGrammar,
    bound: &LanguageBound,
    config: HarnessConfig,
) -> Result<EquivalenceReport, ConstructionError> {
    let k = g.system().visible_dim();
    if target.alphabet().len() != k {
        return Err(ConstructionError::DimensionMismatch { expected: k, got: target.alphabet().len() });
    }
    let candidates = bound.candidates(k)?;
    let source = g.members_among(&candidates, config.engine)?;
    let target = grammar::members_among(target, &candidates, config.prover)?;
    Ok(report(instance, Direction::BvassToLp, &candidates, source, target))
}

/// Compares the Parikh image of `L(g)` with `L(lBAM(g))` for words of
/// length at most `max_len`.
pub fn check_theorem_lp_to_bvass(
    instance: &str,
    g: &LpGrammar,
    max_len: u32,
    config: HarnessConfig,
) -> Result<EquivalenceReport, ConstructionError> {
    check_lp_to_bvass_against(instance, g, &lbam_of(g)?, max_len, config)
}

/// As [`check_theorem_lp_to_bvass`] with an explicit target system.
pub fn check_lp_to_bvass_against(
    instance: &str,
    g: &LpGrammar,
    target: &LBvassam,
    max_len: u32,
    config: HarnessConfig,
) -> Result<EquivalenceReport, ConstructionError> {
    let k = g.alphabet().len();
    if target.system().visible_dim() != k {
        return Err(ConstructionError::DimensionMismatch { expected: k, got: target.system().visible_dim() });
    }
    let candidates = Vector::all_up_to_size(k, max_len);
    let source = grammar::members_among(g, &candidates, config.prover)?;
    let target = target.members_among(&candidates, config.engine)?;
    Ok(report(instance, Direction::LpToBvass, &candidates, source, target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bvassam::SystemBuilder;
    use crate::calculus::parse_type;

    fn one_axiom() -> LBvassam {
        let mut b = SystemBuilder::new(1);
        let s = b.state("s");
        b.axiom(s, Vector::new(vec![1]));
        LBvassam::new(b.build(s, 1).unwrap(), 1).unwrap()
    }

    #[test]
    fn one_axiom_round_trip() {
        let g = one_axiom();
        let r = check_theorem_bvass_to_lp("one-axiom", &g, &LanguageBound::Cap(Vector::new(vec![2])), HarnessConfig::default()).unwrap();
        assert!(r.agree, "{r:?}");
        assert_eq!(r.members, vec![Vector::new(vec![1])]);
    }

    #[test]
    fn mutation_is_reported() {
        let g = one_axiom();
        // LPG(g) without its axiom-carrying entry
        let mutated = LpGrammar::new(["a1"], [("a1", parse_type("g1").unwrap())], parse_type("f/s").unwrap()).unwrap();
        let r = check_bvass_to_lp_against("mutated", &g, &mutated, &LanguageBound::MaxSize(2), HarnessConfig::default())
            .unwrap();
        assert!(!r.agree);
        assert_eq!(r.counterexamples[0].vector, Vector::new(vec![1]));
        assert!(r.counterexamples[0].in_source && !r.counterexamples[0].in_target);

        let grammar = LpGrammar::new(["a"], [("a", parse_type("s").unwrap())], parse_type("s").unwrap()).unwrap();
        let r = check_theorem_lp_to_bvass("single", &grammar, 3, HarnessConfig::default()).unwrap();
        assert!(r.agree, "{r:?}");
        let mut b = SystemBuilder::new(1);
        let s = b.state("s");
        b.axiom(s, Vector::new(vec![2]));
        let wrong = LBvassam::new(b.build(s, 1).unwrap(), 1).unwrap();
        let r = check_lp_to_bvass_against("wrong-system", &grammar, &wrong, 3, HarnessConfig::default()).unwrap();
        assert!(!r.agree);
        assert_eq!(r.counterexamples.len(), 2);
    }
}
