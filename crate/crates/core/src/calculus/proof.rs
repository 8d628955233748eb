use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CalculusError, Kind, LType, Sequent};

/// Inference rules of LP. Permutation is absorbed by multiset antecedents
/// and never appears as a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Axiom,
    /// `(/->)`: from `Pi -> A` and `Gamma, B -> C` infer `Gamma, B/A, Pi -> C`.
    DivLeft,
    /// `(->/)`: from `Pi, A -> B` infer `Pi -> B/A`.
    DivRight,
    /// `(*->)`: from `Gamma, A, B -> C` infer `Gamma, A*B -> C`.
    ProdLeft,
    /// `(->*)`: from `Pi -> A` and `Psi -> B` infer `Pi, Psi -> A*B`.
    ProdRight,
}

impl Rule {
    pub fn arity(self) -> usize {
        match self {
            Rule::Axiom => 0,
            Rule::DivRight | Rule::ProdLeft => 1,
            Rule::DivLeft | Rule::ProdRight => 2,
        }
    }
}

/// A cut-free LP derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTree {
    pub rule: Rule,
    pub conclusion: Sequent,
    /// The type occurrence the rule acted on, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub principal: Option<LType>,
    #[serde(default)]
    pub premises: Vec<ProofTree>,
}

/// Removes one occurrence of `t` from a sorted multiset.
pub(crate) fn remove_one(sorted: &[LType], t: LType) -> Option<Vec<LType>> {
    let i = sorted.iter().position(|&x| x == t)?;
    let mut out = sorted.to_vec();
    out.remove(i);
    Some(out)
}

/// Multiset union of sorted vectors, result sorted.
pub(crate) fn union(a: &[LType], b: &[LType]) -> Vec<LType> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort_unstable();
    out
}

impl ProofTree {
    pub fn axiom(t: LType) -> ProofTree {
        ProofTree {
            rule: Rule::Axiom,
            conclusion: Sequent::from_sorted(vec![t], t),
            principal: None,
            premises: Vec::new(),
        }
    }

    /// Number of rule instances, axioms included.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::height).max().unwrap_or(0)
    }

    /// Pre-order traversal of all nodes.
    pub fn nodes(&self) -> Vec<&ProofTree> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            out.extend(out[i].premises.iter());
            i += 1;
        }
        out
    }

    /// Checks that every node instantiates its rule schema.
    pub fn check(&self) -> Result<(), CalculusError> {
        for node in self.nodes() {
            node.check_node()?;
        }
        Ok(())
    }

    fn check_node(&self) -> Result<(), CalculusError> {
        let bad = |why: &str| {
            Err(CalculusError::InvalidProof {
                sequent: self.conclusion.to_string(),
                reason: why.to_owned(),
            })
        };
        if self.premises.len() != self.rule.arity() {
            return bad("wrong number of premises");
        }
        let ant = self.conclusion.antecedent();
        let succ = self.conclusion.succedent();
        match self.rule {
            Rule::Axiom => {
                if ant != [succ] {
                    return bad("axiom must have the form A -> A");
                }
            }
            Rule::DivRight => {
                let Kind::Div(b, a) = succ.kind() else {
                    return bad("succedent is not a division");
                };
                let prem = &self.premises[0].conclusion;
                if prem.succedent() != b || prem.antecedent() != union(ant, &[a]) {
                    return bad("premise does not match Pi, A -> B");
                }
            }
            Rule::ProdLeft => {
                let candidates = self.principal_candidates(|t| t.is_prod());
                let prem = &self.premises[0].conclusion;
                let ok = candidates.iter().any(|&p| {
                    let Kind::Prod(a, b) = p.kind() else { return false };
                    let rest = remove_one(ant, p).expect("candidate occurs");
                    prem.succedent() == succ && prem.antecedent() == union(&rest, &[a, b])
                });
                if !ok {
                    return bad("premise does not match Gamma, A, B -> C");
                }
            }
            Rule::DivLeft => {
                let candidates = self.principal_candidates(|t| t.is_div());
                let (minor, major) = (&self.premises[0].conclusion, &self.premises[1].conclusion);
                let ok = candidates.iter().any(|&p| {
                    let Kind::Div(b, a) = p.kind() else { return false };
                    if minor.succedent() != a || major.succedent() != succ {
                        return false;
                    }
                    let Some(gamma) = remove_one(major.antecedent(), b) else {
                        return false;
                    };
                    union(&union(&gamma, minor.antecedent()), &[p]) == ant
                });
                if !ok {
                    return bad("premises do not match Pi -> A and Gamma, B -> C");
                }
            }
            Rule::ProdRight => {
                let Kind::Prod(a, b) = succ.kind() else {
                    return bad("succedent is not a product");
                };
                let (left, right) = (&self.premises[0].conclusion, &self.premises[1].conclusion);
                if left.succedent() != a
                    || right.succedent() != b
                    || union(left.antecedent(), right.antecedent()) != ant
                {
                    return bad("premises do not match Pi -> A and Psi -> B");
                }
            }
        }
        Ok(())
    }

    fn principal_candidates(&self, shape: impl Fn(LType) -> bool) -> Vec<LType> {
        match self.principal {
            Some(p) if self.conclusion.antecedent().contains(&p) && shape(p) => vec![p],
            Some(_) => Vec::new(),
            None => {
                let mut v: Vec<LType> =
                    self.conclusion.antecedent().iter().copied().filter(|&t| shape(t)).collect();
                v.dedup();
                v
            }
        }
    }
}

impl Rule {
    pub fn label(self) -> &'static str {
        match self {
            Rule::Axiom => "axiom",
            Rule::DivLeft => "/->",
            Rule::DivRight => "->/",
            Rule::ProdLeft => "*->",
            Rule::ProdRight => "->*",
        }
    }
}

/// One line per node, premises indented under their conclusion.
impl fmt::Display for ProofTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &ProofTree, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            writeln!(f, "{:indent$}{}  [{}]", "", t.conclusion, t.rule.label(), indent = 2 * depth)?;
            for p in &t.premises {
                go(p, depth + 1, f)?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{parse_sequent, parse_type};

    fn t(s: &str) -> LType {
        parse_type(s).unwrap()
    }

    fn node(rule: Rule, seq: &str, principal: Option<&str>, premises: Vec<ProofTree>) -> ProofTree {
        ProofTree {
            rule,
            conclusion: parse_sequent(seq).unwrap(),
            principal: principal.map(t),
            premises,
        }
    }

    #[test]
    fn hand_built_proof_checks() {
        // p/q, q -> p
        let proof = node(
            Rule::DivLeft,
            "p/q, q -> p",
            Some("p/q"),
            vec![ProofTree::axiom(t("q")), ProofTree::axiom(t("p"))],
        );
        proof.check().unwrap();
        assert_eq!(proof.size(), 3);
        assert_eq!(proof.height(), 2);
    }

    #[test]
    fn broken_nodes_are_rejected() {
        let wrong_axiom = node(Rule::Axiom, "p, q -> p", None, vec![]);
        assert!(wrong_axiom.check().is_err());

        let wrong_split = node(
            Rule::ProdRight,
            "p, q -> p*q",
            None,
            vec![ProofTree::axiom(t("q")), ProofTree::axiom(t("p"))],
        );
        assert!(wrong_split.check().is_err());

        let missing = node(Rule::DivRight, "p -> p/q", None, vec![]);
        assert!(missing.check().is_err());
    }

    #[test]
    fn json_shape() {
        let proof = node(
            Rule::ProdLeft,
            "p*q -> q*p",
            Some("p*q"),
            vec![node(
                Rule::ProdRight,
                "p, q -> q*p",
                None,
                vec![ProofTree::axiom(t("q")), ProofTree::axiom(t("p"))],
            )],
        );
        proof.check().unwrap();
        let json = serde_json::to_value(&proof).unwrap();
        assert_eq!(json["rule"], "prod_left");
        assert_eq!(json["conclusion"], "p*q -> q*p");
        assert_eq!(json["premises"][0]["premises"][1]["conclusion"], "p -> p");
        let back: ProofTree = serde_json::from_value(json).unwrap();
        assert_eq!(back, proof);
    }
}
