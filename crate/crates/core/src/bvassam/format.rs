//! JSON forms of systems and derivations.
//!
//! ```json
//! {"K": 2, "k": 1, "states": ["q", "s"], "accepting": "s",
//!  "axioms": [["q", [1, 0]]],
//!  "unary": [["s", "q", [1, 0], [0, 0]]],
//!  "binary": [["s", "s", "q"]],
//!  "C": 2}
//! ```
//!
//! Unary entries are `[conclusion, premise, d1, d2]`.

use serde::{Deserialize, Serialize};

use super::{BvassamSystem, DerivationTree, Fact, LBvassam, Step, SystemBuilder, SystemError};
use crate::vector::Vector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    #[serde(rename = "K")]
    pub full_dim: usize,
    #[serde(rename = "k")]
    pub visible_dim: usize,
    pub states: Vec<String>,
    pub accepting: String,
    #[serde(default)]
    pub axioms: Vec<(String, Vector)>,
    #[serde(default)]
    pub unary: Vec<(String, String, Vector, Vector)>,
    #[serde(default)]
    pub binary: Vec<(String, String, String)>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
}

impl SystemFile {
    pub fn from_system(system: &BvassamSystem, bound: Option<u32>) -> SystemFile {
        let name = |s: super::StateId| system.state_name(s).to_owned();
        SystemFile {
            full_dim: system.full_dim(),
            visible_dim: system.visible_dim(),
            states: system.states().to_vec(),
            accepting: name(system.accepting()),
            axioms: system.axioms().iter().map(|a| (name(a.state), a.vector.clone())).collect(),
            unary: system
                .unary_rules()
                .iter()
                .map(|r| (name(r.target), name(r.source), r.source_offset.clone(), r.target_offset.clone()))
                .collect(),
            binary: system
                .binary_rules()
                .iter()
                .map(|r| (name(r.target), name(r.left), name(r.right)))
                .collect(),
            bound,
        }
    }

    pub fn to_system(&self) -> Result<BvassamSystem, SystemError> {
        let mut b = SystemBuilder::new(self.full_dim);
        for s in &self.states {
            b.fresh_state(s);
        }
        let states = &self.states;
        let id = |name: &str| {
            states
                .iter()
                .position(|s| s == name)
                .map(super::StateId)
                .ok_or_else(|| SystemError::UnknownState(name.to_owned()))
        };
        for (s, v) in &self.axioms {
            b.axiom(id(s)?, v.clone());
        }
        for (p, q, d1, d2) in &self.unary {
            b.unary(id(p)?, id(q)?, d1.clone(), d2.clone());
        }
        for (p, q, r) in &self.binary {
            b.binary(id(p)?, id(q)?, id(r)?);
        }
        b.build(id(&self.accepting)?, self.visible_dim)
    }

    /// The linearly restricted system; `C` must be present.
    pub fn to_lbvassam(&self) -> Result<LBvassam, SystemError> {
        let bound = self.bound.ok_or_else(|| SystemError::Format("missing field `C`".into()))?;
        LBvassam::new(self.to_system()?, bound)
    }

    pub fn from_json(text: &str) -> Result<SystemFile, SystemError> {
        serde_json::from_str(text).map_err(|e| SystemError::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl BvassamSystem {
    pub fn from_json(text: &str) -> Result<BvassamSystem, SystemError> {
        SystemFile::from_json(text)?.to_system()
    }

    pub fn to_json(&self) -> String {
        SystemFile::from_system(self, None).to_json()
    }
}

impl LBvassam {
    pub fn from_json(text: &str) -> Result<LBvassam, SystemError> {
        SystemFile::from_json(text)?.to_lbvassam()
    }

    pub fn to_json(&self) -> String {
        SystemFile::from_system(self.system(), Some(self.bound())).to_json()
    }
}

/// A derivation tree with states written by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationFile {
    pub state: String,
    pub vector: Vector,
    /// `axiom`, `unary` or `binary`.
    pub rule: String,
    pub index: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<DerivationFile>,
}

impl DerivationFile {
    pub fn from_tree(system: &BvassamSystem, tree: &DerivationTree) -> DerivationFile {
        let (rule, index) = match &tree.step {
            Step::Axiom(i) => ("axiom", *i),
            Step::Unary(i, _) => ("unary", *i),
            Step::Binary(i, ..) => ("binary", *i),
        };
        DerivationFile {
            state: system.state_name(tree.fact.state).to_owned(),
            vector: tree.fact.vector.clone(),
            rule: rule.to_owned(),
            index,
            premises: tree.children().into_iter().map(|c| Self::from_tree(system, c)).collect(),
        }
    }

    pub fn to_tree(&self, system: &BvassamSystem) -> Result<DerivationTree, SystemError> {
        let state = system.state_id(&self.state).ok_or_else(|| SystemError::UnknownState(self.state.clone()))?;
        let mut premises = self.premises.iter().map(|p| p.to_tree(system).map(Box::new));
        let arity_error = || SystemError::Format(format!("wrong number of premises for {} step", self.rule));
        let step = match (self.rule.as_str(), self.premises.len()) {
            ("axiom", 0) => Step::Axiom(self.index),
            ("unary", 1) => Step::Unary(self.index, premises.next().unwrap()?),
            ("binary", 2) => {
                let l = premises.next().unwrap()?;
                let r = premises.next().unwrap()?;
                Step::Binary(self.index, l, r)
            }
            ("axiom" | "unary" | "binary", _) => return Err(arity_error()),
            (other, _) => return Err(SystemError::Format(format!("unknown rule kind {other:?}"))),
        };
        Ok(DerivationTree { fact: Fact::new(state, self.vector.clone()), step })
    }
}
