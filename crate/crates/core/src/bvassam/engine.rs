//! Minimal-size derivation search.
//!
//! Facts are settled in order of their smallest derivation size, so the
//! first time the goal is settled its witness is a smallest one. Facts that
//! cannot contribute to a root inside the search region are pruned by two
//! sound tests:
//!
//! * a fact of size `s` can only shrink by unary steps, each removing at
//!   most `dec` per coordinate, and at most `max_size - s` steps remain;
//! * for a coordinate set `W` that no unary rule decreases in total
//!   (`sum_{i in W} (d2 - d1)_i >= 0`), the sum over `W` never decreases
//!   from a fact to the root, so it is bounded by the region.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use super::{BvassamSystem, DerivationTree, Fact, Step, StateId, SystemError};
use crate::vector::Vector;

pub const DEFAULT_MAX_EXPANSIONS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Number of facts the search may settle before giving up.
    pub max_expansions: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { max_expansions: DEFAULT_MAX_EXPANSIONS }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeriveError {
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("search budget of {0} settled facts exceeded")]
    BudgetExceeded(u64),
}

/// The set of root vectors a search must be able to reach: componentwise
/// at most `upper` and of total size at most `total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub upper: Vector,
    pub total: u64,
}

impl Region {
    pub fn single(goal: &Vector) -> Region {
        Region { upper: goal.clone(), total: goal.size() }
    }
}

#[derive(Debug, Clone, Copy)]
enum Origin {
    Axiom(usize),
    Unary(usize, usize),
    Binary(usize, usize, usize),
}

#[derive(Debug, Clone)]
struct Entry {
    fact: Fact,
    size: usize,
    origin: Origin,
    settled: bool,
}

/// Result of a bounded exploration: every fact reachable inside the region
/// with its least derivation size.
#[derive(Debug, Clone)]
pub struct Exploration {
    entries: Vec<Entry>,
    index: HashMap<Fact, usize>,
    expansions: u64,
}

struct Limits {
    max_size: usize,
    upper: Vec<u64>,
    total: u64,
    dec: Vec<u64>,
    dec_total: u64,
    monotone: Vec<(Vec<usize>, u64)>,
}

impl Limits {
    fn admits(&self, v: &Vector, size: usize) -> bool {
        if size > self.max_size {
            return false;
        }
        let slack = (self.max_size - size) as u64;
        if v.size() > self.total + slack * self.dec_total {
            return false;
        }
        let coords = v.as_slice();
        coords
            .iter()
            .zip(self.upper.iter().zip(&self.dec))
            .all(|(&x, (&u, &d))| x as u64 <= u + slack * d)
            && self
                .monotone
                .iter()
                .all(|(set, bound)| set.iter().map(|&i| coords[i] as u64).sum::<u64>() <= *bound)
    }
}

const MONOTONE_SEARCH_LIMIT: usize = 4096;

/// Minimal coordinate sets whose sum no unary rule decreases, grown from
/// each coordinate that some rule decreases. Singletons that are never
/// decreased are already covered by the per-coordinate test.
fn monotone_sets(changes: &[Vec<i64>], dim: usize) -> Vec<Vec<usize>> {
    use std::collections::BTreeSet;
    if dim > 64 {
        return Vec::new();
    }
    let mut found: BTreeSet<u64> = BTreeSet::new();
    for seed in 0..dim {
        if changes.iter().all(|c| c[seed] >= 0) {
            continue;
        }
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![1u64 << seed];
        while let Some(set) = stack.pop() {
            if !seen.insert(set) || seen.len() > MONOTONE_SEARCH_LIMIT {
                continue;
            }
            if found.iter().any(|&f| f & set == f) {
                continue;
            }
            let weight = |c: &Vec<i64>| (0..dim).filter(|&i| set >> i & 1 == 1).map(|i| c[i]).sum::<i64>();
            match changes.iter().find(|c| weight(c) < 0) {
                None => {
                    found.insert(set);
                }
                Some(c) => {
                    for j in 0..dim {
                        if c[j] > 0 && set >> j & 1 == 0 {
                            stack.push(set | 1 << j);
                        }
                    }
                }
            }
        }
    }
    let minimal: Vec<u64> = found.iter().copied().filter(|&s| !found.iter().any(|&t| t != s && t & s == t)).collect();
    minimal.into_iter().map(|s| (0..dim).filter(|&i| s >> i & 1 == 1).collect()).collect()
}

impl Exploration {
    /// Settles facts of size at most `max_size` that may still lead into
    /// `region`; stops early once `stop_at` is settled.
    pub fn run(
        system: &BvassamSystem,
        region: &Region,
        max_size: usize,
        stop_at: Option<&Fact>,
        config: EngineConfig,
    ) -> Result<Exploration, DeriveError> {
        let dim = system.full_dim();
        if region.upper.dim() != dim {
            return Err(SystemError::DimensionMismatch {
                vector: region.upper.to_string(),
                expected: dim,
                got: region.upper.dim(),
            }
            .into());
        }
        let mut dec = vec![0u64; dim];
        let mut dec_total = 0u64;
        let mut changes = Vec::with_capacity(system.unary_rules().len());
        for r in system.unary_rules() {
            let change: Vec<i64> =
                (0..dim).map(|i| r.target_offset.get(i) as i64 - r.source_offset.get(i) as i64).collect();
            for i in 0..dim {
                dec[i] = dec[i].max((-change[i]).max(0) as u64);
            }
            dec_total = dec_total.max((-change.iter().sum::<i64>()).max(0) as u64);
            changes.push(change);
        }
        let upper: Vec<u64> = region.upper.as_slice().iter().map(|&x| x as u64).collect();
        let monotone = monotone_sets(&changes, dim)
            .into_iter()
            .map(|set| {
                let bound = set.iter().map(|&i| upper[i]).sum::<u64>().min(region.total);
                (set, bound)
            })
            .collect();
        let limits = Limits { max_size, upper, total: region.total, dec, dec_total, monotone };

        let mut unary_by_source: Vec<Vec<usize>> = vec![Vec::new(); system.states().len()];
        for (i, r) in system.unary_rules().iter().enumerate() {
            unary_by_source[r.source.0].push(i);
        }
        let mut binary_by_left: Vec<Vec<usize>> = vec![Vec::new(); system.states().len()];
        let mut binary_by_right: Vec<Vec<usize>> = vec![Vec::new(); system.states().len()];
        for (i, r) in system.binary_rules().iter().enumerate() {
            binary_by_left[r.left.0].push(i);
            binary_by_right[r.right.0].push(i);
        }

        let mut ex = Exploration { entries: Vec::new(), index: HashMap::new(), expansions: 0 };
        let mut queue: BinaryHeap<Reverse<(usize, usize)>> = BinaryHeap::new();
        let mut settled_by_state: Vec<Vec<usize>> = vec![Vec::new(); system.states().len()];

        let relax = |ex: &mut Exploration, queue: &mut BinaryHeap<_>, fact: Fact, size: usize, origin: Origin| {
            if !limits.admits(&fact.vector, size) {
                return;
            }
            match ex.index.get(&fact) {
                Some(&id) => {
                    let e = &mut ex.entries[id];
                    if !e.settled && size < e.size {
                        e.size = size;
                        e.origin = origin;
                        queue.push(Reverse((size, id)));
                    }
                }
                None => {
                    let id = ex.entries.len();
                    ex.index.insert(fact.clone(), id);
                    ex.entries.push(Entry { fact, size, origin, settled: false });
                    queue.push(Reverse((size, id)));
                }
            }
        };

        for (i, a) in system.axioms().iter().enumerate() {
            relax(&mut ex, &mut queue, Fact::new(a.state, a.vector.clone()), 1, Origin::Axiom(i));
        }

        while let Some(Reverse((size, id))) = queue.pop() {
            if ex.entries[id].settled || ex.entries[id].size != size {
                continue;
            }
            ex.expansions += 1;
            if ex.expansions > config.max_expansions {
                return Err(DeriveError::BudgetExceeded(config.max_expansions));
            }
            ex.entries[id].settled = true;
            let fact = ex.entries[id].fact.clone();
            settled_by_state[fact.state.0].push(id);
            if stop_at == Some(&fact) {
                break;
            }

            for &ri in &unary_by_source[fact.state.0] {
                let r = &system.unary_rules()[ri];
                if let Some(base) = fact.vector.checked_sub(&r.source_offset) {
                    let next = Fact::new(r.target, &base + &r.target_offset);
                    relax(&mut ex, &mut queue, next, size + 1, Origin::Unary(ri, id));
                }
            }
            // Partners are settled in nondecreasing size order, so each scan
            // can stop at the first partner that is too large.
            for &ri in &binary_by_left[fact.state.0] {
                let r = system.binary_rules()[ri];
                for j in 0..settled_by_state[r.right.0].len() {
                    let other = settled_by_state[r.right.0][j];
                    let total = size + ex.entries[other].size + 1;
                    if total > max_size {
                        break;
                    }
                    let v = &fact.vector + &ex.entries[other].fact.vector;
                    relax(&mut ex, &mut queue, Fact::new(r.target, v), total, Origin::Binary(ri, id, other));
                }
            }
            for &ri in &binary_by_right[fact.state.0] {
                let r = system.binary_rules()[ri];
                for j in 0..settled_by_state[r.left.0].len() {
                    let other = settled_by_state[r.left.0][j];
                    let total = size + ex.entries[other].size + 1;
                    if total > max_size {
                        break;
                    }
                    let v = &ex.entries[other].fact.vector + &fact.vector;
                    relax(&mut ex, &mut queue, Fact::new(r.target, v), total, Origin::Binary(ri, other, id));
                }
            }
        }
        Ok(ex)
    }

    /// Least derivation size of `fact`, if it was settled.
    pub fn min_size(&self, fact: &Fact) -> Option<usize> {
        let &id = self.index.get(fact)?;
        let e = &self.entries[id];
        e.settled.then_some(e.size)
    }

    /// A smallest derivation of `fact`, if it was settled.
    pub fn tree(&self, fact: &Fact) -> Option<DerivationTree> {
        let &id = self.index.get(fact)?;
        self.entries[id].settled.then(|| self.build(id))
    }

    /// All settled facts with their least sizes.
    pub fn settled(&self) -> impl Iterator<Item = (&Fact, usize)> {
        self.entries.iter().filter(|e| e.settled).map(|e| (&e.fact, e.size))
    }

    /// Settled facts in state `state`.
    pub fn settled_in(&self, state: StateId) -> impl Iterator<Item = (&Fact, usize)> {
        self.settled().filter(move |(f, _)| f.state == state)
    }

    pub fn expansions(&self) -> u64 {
        self.expansions
    }

    fn build(&self, id: usize) -> DerivationTree {
        let e = &self.entries[id];
        let step = match e.origin {
            Origin::Axiom(i) => Step::Axiom(i),
            Origin::Unary(r, c) => Step::Unary(r, Box::new(self.build(c))),
            Origin::Binary(r, l, rt) => Step::Binary(r, Box::new(self.build(l)), Box::new(self.build(rt))),
        };
        DerivationTree { fact: e.fact.clone(), step }
    }
}

/// A smallest derivation of `goal` with at most `max_size` nodes.
pub fn derive(system: &BvassamSystem, goal: &Fact, max_size: usize) -> Result<Option<DerivationTree>, DeriveError> {
    derive_with(system, goal, max_size, EngineConfig::default())
}

pub fn derive_with(
    system: &BvassamSystem,
    goal: &Fact,
    max_size: usize,
    config: EngineConfig,
) -> Result<Option<DerivationTree>, DeriveError> {
    if goal.vector.dim() != system.full_dim() {
        return Err(SystemError::DimensionMismatch {
            vector: goal.vector.to_string(),
            expected: system.full_dim(),
            got: goal.vector.dim(),
        }
        .into());
    }
    if goal.state.0 >= system.states().len() {
        return Err(SystemError::UnknownState(format!("#{}", goal.state.0)).into());
    }
    let ex = Exploration::run(system, &Region::single(&goal.vector), max_size, Some(goal), config)?;
    Ok(ex.tree(goal))
}
