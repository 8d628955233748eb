//! Branching vector addition systems with states and additional memory.
//!
//! A system over `N^K` derives facts `q(v)` from axioms `q(nu)`, unary rules
//! `p(x + d2) <- q(x + d1)` and binary rules `p(x + y) <- q(x), r(y)`. The
//! language consists of the `v in N^k` such that `s(iota_K(v))` is
//! derivable; the linearly-restricted variant additionally requires a
//! derivation with at most `C * |v|` nodes.

mod engine;
mod format;

use std::fmt;

pub use engine::{derive, derive_with, DeriveError, EngineConfig, Exploration, Region, DEFAULT_MAX_EXPANSIONS};
pub use format::{DerivationFile, SystemFile};

use crate::vector::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

/// `q(v)`
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fact {
    pub state: StateId,
    pub vector: Vector,
}

impl Fact {
    pub fn new(state: StateId, vector: Vector) -> Fact {
        Fact { state, vector }
    }
}

/// `q(nu)`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    pub state: StateId,
    pub vector: Vector,
}

/// `target(x + target_offset) <- source(x + source_offset)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnaryRule {
    pub target: StateId,
    pub source: StateId,
    /// `d1`, subtracted from the premise.
    pub source_offset: Vector,
    /// `d2`, added to the conclusion.
    pub target_offset: Vector,
}

/// `target(x + y) <- left(x), right(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryRule {
    pub target: StateId,
    pub left: StateId,
    pub right: StateId,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("state {0:?} is declared twice")]
    DuplicateState(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("vector {vector} has dimension {got}, expected {expected}")]
    DimensionMismatch { vector: String, expected: usize, got: usize },
    #[error("visible dimension {visible} exceeds full dimension {full}")]
    VisibleTooLarge { visible: usize, full: usize },
    #[error("the linear bound C must be at least 1")]
    ZeroBound,
    #[error("invalid system file: {0}")]
    Format(String),
}

/// `<Q, P0, P1, P2, s, k, K>`. With `k = K` this is a plain BVASS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BvassamSystem {
    states: Vec<String>,
    axioms: Vec<Axiom>,
    unary: Vec<UnaryRule>,
    binary: Vec<BinaryRule>,
    accepting: StateId,
    visible_dim: usize,
    full_dim: usize,
}

/// Incremental construction of a [`BvassamSystem`].
#[derive(Debug, Clone)]
pub struct SystemBuilder {
    full_dim: usize,
    states: Vec<String>,
    axioms: Vec<Axiom>,
    unary: Vec<UnaryRule>,
    binary: Vec<BinaryRule>,
    error: Option<SystemError>,
}

impl SystemBuilder {
    pub fn new(full_dim: usize) -> Self {
        SystemBuilder {
            full_dim,
            states: Vec::new(),
            axioms: Vec::new(),
            unary: Vec::new(),
            binary: Vec::new(),
            error: None,
        }
    }

    /// Returns the id of `name`, declaring it if needed.
    pub fn state(&mut self, name: &str) -> StateId {
        match self.states.iter().position(|s| s == name) {
            Some(i) => StateId(i),
            None => {
                self.states.push(name.to_owned());
                StateId(self.states.len() - 1)
            }
        }
    }

    /// Declares a new state; a repeated name is an error at `build`.
    pub fn fresh_state(&mut self, name: &str) -> StateId {
        if self.states.iter().any(|s| s == name) {
            self.error.get_or_insert(SystemError::DuplicateState(name.to_owned()));
        }
        self.states.push(name.to_owned());
        StateId(self.states.len() - 1)
    }

    fn check_dim(&mut self, v: &Vector) {
        if v.dim() != self.full_dim {
            self.error.get_or_insert(SystemError::DimensionMismatch {
                vector: v.to_string(),
                expected: self.full_dim,
                got: v.dim(),
            });
        }
    }

    pub fn axiom(&mut self, state: StateId, vector: Vector) -> &mut Self {
        self.check_dim(&vector);
        self.axioms.push(Axiom { state, vector });
        self
    }

    pub fn unary(&mut self, target: StateId, source: StateId, source_offset: Vector, target_offset: Vector) -> &mut Self {
        self.check_dim(&source_offset);
        self.check_dim(&target_offset);
        self.unary.push(UnaryRule { target, source, source_offset, target_offset });
        self
    }

    /// Number of unary rules added so far, i.e. the index of the next one.
    pub fn unary_count(&self) -> usize {
        self.unary.len()
    }

    pub fn binary(&mut self, target: StateId, left: StateId, right: StateId) -> &mut Self {
        self.binary.push(BinaryRule { target, left, right });
        self
    }

    pub fn build(self, accepting: StateId, visible_dim: usize) -> Result<BvassamSystem, SystemError> {
        if let Some(e) = self.error {
            return Err(e);
        }
        if visible_dim > self.full_dim {
            return Err(SystemError::VisibleTooLarge { visible: visible_dim, full: self.full_dim });
        }
        let n = self.states.len();
        let known = |s: StateId| {
            if s.0 < n {
                Ok(())
            } else {
                Err(SystemError::UnknownState(format!("#{}", s.0)))
            }
        };
        known(accepting)?;
        for a in &self.axioms {
            known(a.state)?;
        }
        for r in &self.unary {
            known(r.target)?;
            known(r.source)?;
        }
        for r in &self.binary {
            known(r.target)?;
            known(r.left)?;
            known(r.right)?;
        }
        Ok(BvassamSystem {
            states: self.states,
            axioms: self.axioms,
            unary: self.unary,
            binary: self.binary,
            accepting,
            visible_dim,
            full_dim: self.full_dim,
        })
    }
}

impl BvassamSystem {
    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s.0]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name).map(StateId)
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn unary_rules(&self) -> &[UnaryRule] {
        &self.unary
    }

    pub fn binary_rules(&self) -> &[BinaryRule] {
        &self.binary
    }

    /// `|P0| + |P1| + |P2|`
    pub fn rule_count(&self) -> usize {
        self.axioms.len() + self.unary.len() + self.binary.len()
    }

    pub fn accepting(&self) -> StateId {
        self.accepting
    }

    /// `k`
    pub fn visible_dim(&self) -> usize {
        self.visible_dim
    }

    /// `K`
    pub fn full_dim(&self) -> usize {
        self.full_dim
    }

    /// `iota_K(v)`, checking that `v` lives in `N^k`.
    pub fn embed(&self, v: &Vector) -> Result<Vector, SystemError> {
        if v.dim() != self.visible_dim {
            return Err(SystemError::DimensionMismatch {
                vector: v.to_string(),
                expected: self.visible_dim,
                got: v.dim(),
            });
        }
        Ok(v.iota(self.full_dim).expect("k <= K"))
    }

    pub fn fact_to_string(&self, fact: &Fact) -> String {
        format!("{}{}", self.state_name(fact.state), fact.vector)
    }

    /// Checks every node of `tree` against the rule sets.
    pub fn validate(&self, tree: &DerivationTree) -> Result<bool, SystemError> {
        Ok(self.explain_invalid(tree)?.is_none())
    }

    /// The first offending node, if any, as a message.
    pub fn explain_invalid(&self, tree: &DerivationTree) -> Result<Option<String>, SystemError> {
        let mut stack = vec![tree];
        while let Some(node) = stack.pop() {
            let fact = &node.fact;
            if fact.vector.dim() != self.full_dim {
                return Err(SystemError::DimensionMismatch {
                    vector: fact.vector.to_string(),
                    expected: self.full_dim,
                    got: fact.vector.dim(),
                });
            }
            if fact.state.0 >= self.states.len() {
                return Ok(Some(format!("unknown state #{}", fact.state.0)));
            }
            let here = self.fact_to_string(fact);
            match &node.step {
                Step::Axiom(i) => match self.axioms.get(*i) {
                    Some(a) if a.state == fact.state && a.vector == fact.vector => {}
                    _ => return Ok(Some(format!("{here}: not axiom #{i}"))),
                },
                Step::Unary(i, child) => {
                    let Some(rule) = self.unary.get(*i) else {
                        return Ok(Some(format!("{here}: no unary rule #{i}")));
                    };
                    let base_here = fact.vector.checked_sub(&rule.target_offset);
                    let base_child = child.fact.vector.checked_sub(&rule.source_offset);
                    let ok = rule.target == fact.state
                        && rule.source == child.fact.state
                        && base_here.is_some()
                        && base_here == base_child;
                    if !ok {
                        return Ok(Some(format!("{here}: unary rule #{i} does not apply")));
                    }
                    stack.push(child);
                }
                Step::Binary(i, left, right) => {
                    let Some(rule) = self.binary.get(*i) else {
                        return Ok(Some(format!("{here}: no binary rule #{i}")));
                    };
                    if left.fact.vector.dim() != self.full_dim || right.fact.vector.dim() != self.full_dim {
                        stack.push(left);
                        stack.push(right);
                        continue;
                    }
                    let ok = rule.target == fact.state
                        && rule.left == left.fact.state
                        && rule.right == right.fact.state
                        && fact.vector == &left.fact.vector + &right.fact.vector;
                    if !ok {
                        return Ok(Some(format!("{here}: binary rule #{i} does not apply")));
                    }
                    stack.push(left);
                    stack.push(right);
                }
            }
        }
        Ok(None)
    }
}

/// A BVASSAM with a linear bound `C` on derivation size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LBvassam {
    system: BvassamSystem,
    bound: u32,
}

impl LBvassam {
    pub fn new(system: BvassamSystem, bound: u32) -> Result<LBvassam, SystemError> {
        if bound == 0 {
            return Err(SystemError::ZeroBound);
        }
        Ok(LBvassam { system, bound })
    }

    pub fn system(&self) -> &BvassamSystem {
        &self.system
    }

    /// `C`
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn into_parts(self) -> (BvassamSystem, u32) {
        (self.system, self.bound)
    }

    /// A derivation of `s(iota_K(v))` with at most `C * |v|` nodes.
    pub fn member(&self, v: &Vector) -> Result<Option<DerivationTree>, DeriveError> {
        self.member_with(v, EngineConfig::default())
    }

    pub fn member_with(&self, v: &Vector, config: EngineConfig) -> Result<Option<DerivationTree>, DeriveError> {
        let goal = Fact::new(self.system.accepting, self.system.embed(v)?);
        let budget = self.bound as u64 * v.size();
        derive_with(&self.system, &goal, budget as usize, config)
    }

    /// `{ v <= cap : v in L }`, in graded lexicographic order.
    pub fn enumerate_language(&self, cap: &Vector) -> Result<Vec<Vector>, DeriveError> {
        self.enumerate_language_with(cap, EngineConfig::default())
    }

    pub fn enumerate_language_with(&self, cap: &Vector, config: EngineConfig) -> Result<Vec<Vector>, DeriveError> {
        self.system.embed(cap)?;
        let candidates = Vector::all_below(cap);
        self.members_among(&candidates, config)
    }

    /// Members of `L` with size at most `max_size`.
    pub fn enumerate_up_to_size(&self, max_size: u32, config: EngineConfig) -> Result<Vec<Vector>, DeriveError> {
        let candidates = Vector::all_up_to_size(self.system.visible_dim, max_size);
        self.members_among(&candidates, config)
    }

    /// Filters `candidates` (vectors of `N^k`) down to members, with a
    /// single exploration shared by all of them.
    pub fn members_among(&self, candidates: &[Vector], config: EngineConfig) -> Result<Vec<Vector>, DeriveError> {
        if candidates.is_empty() {
            return Ok(Vec::new());
        }
        let k = self.system.visible_dim;
        let mut upper = vec![0u32; self.system.full_dim];
        let mut total = 0;
        for v in candidates {
            self.system.embed(v)?;
            for i in 0..k {
                upper[i] = upper[i].max(v.get(i));
            }
            total = total.max(v.size());
        }
        let max_size = (self.bound as u64 * total) as usize;
        let region = Region { upper: Vector::new(upper), total };
        let exploration = Exploration::run(&self.system, &region, max_size, None, config)?;
        let s = self.system.accepting;
        Ok(candidates
            .iter()
            .filter(|v| {
                let fact = Fact::new(s, v.iota(self.system.full_dim).expect("checked"));
                exploration
                    .min_size(&fact)
                    .is_some_and(|size| size as u64 <= self.bound as u64 * v.size())
            })
            .cloned()
            .collect())
    }
}

/// How a fact in a derivation was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Index into `P0`.
    Axiom(usize),
    /// Index into `P1` and the premise.
    Unary(usize, Box<DerivationTree>),
    /// Index into `P2` and the two premises.
    Binary(usize, Box<DerivationTree>, Box<DerivationTree>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTree {
    pub fact: Fact,
    pub step: Step,
}

impl DerivationTree {
    /// Number of axiom and rule applications, i.e. nodes.
    pub fn size(&self) -> usize {
        match &self.step {
            Step::Axiom(_) => 1,
            Step::Unary(_, c) => 1 + c.size(),
            Step::Binary(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn children(&self) -> Vec<&DerivationTree> {
        match &self.step {
            Step::Axiom(_) => vec![],
            Step::Unary(_, c) => vec![c],
            Step::Binary(_, l, r) => vec![l, r],
        }
    }

    /// Pre-order list of nodes.
    pub fn nodes(&self) -> Vec<&DerivationTree> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let next = out[i].children();
            out.extend(next);
            i += 1;
        }
        out
    }

    /// For a tree without binary nodes: the unary rule indices from the
    /// root downwards and the axiom index at the bottom.
    pub fn unary_chain(&self) -> Option<(Vec<usize>, usize)> {
        let mut rules = Vec::new();
        let mut node = self;
        loop {
            match &node.step {
                Step::Axiom(i) => return Some((rules, *i)),
                Step::Unary(r, c) => {
                    rules.push(*r);
                    node = c;
                }
                Step::Binary(..) => return None,
            }
        }
    }
}

impl fmt::Display for DerivationTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &DerivationTree, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let label = match &t.step {
                Step::Axiom(i) => format!("axiom #{i}"),
                Step::Unary(i, _) => format!("unary #{i}"),
                Step::Binary(i, ..) => format!("binary #{i}"),
            };
            writeln!(f, "{:indent$}#{} {} [{label}]", "", t.fact.state.0, t.fact.vector, indent = 2 * depth)?;
            for c in t.children() {
                go(c, depth + 1, f)?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}
