//! Exhaustive cut-free backward proof search for LP.
//!
//! Every rule's premises are strictly shorter than its conclusion (their
//! total length is exactly one less), so search terminates without loop
//! checking. `(*->)` and `(->/)` are invertible and are applied eagerly;
//! `(/->)` and `(->*)` branch over the principal occurrence and over the
//! multiset split of the antecedent. Splits are enumerated with a
//! branch-and-bound on primitive balance, which every provable sequent
//! satisfies.

use std::collections::HashMap;

use super::proof::{remove_one, union};
use super::sequent::{balanced, group};
use super::{Kind, LType, ProofTree, Rule, Sequent};

pub const DEFAULT_MAX_EXPANSIONS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProverConfig {
    /// Maximum number of non-memoized sequents expanded per `prove` call.
    pub max_expansions: u64,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig { max_expansions: DEFAULT_MAX_EXPANSIONS }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProveError {
    #[error("proof search budget of {0} expansions exceeded")]
    BudgetExceeded(u64),
}

/// A reusable prover. The memo table survives across calls, which makes
/// batches of related queries cheap; the expansion budget is per call.
#[derive(Debug, Default)]
pub struct Prover {
    config: ProverConfig,
    memo: HashMap<Sequent, bool>,
    expansions: u64,
}

struct Step {
    rule: Rule,
    principal: Option<LType>,
    premises: Vec<(Vec<LType>, LType)>,
}

type Visit<'a> = dyn FnMut(Step) -> Result<bool, ProveError> + 'a;

impl Prover {
    pub fn new(config: ProverConfig) -> Prover {
        Prover { config, memo: HashMap::new(), expansions: 0 }
    }

    pub fn config(&self) -> ProverConfig {
        self.config
    }

    pub fn clear_memo(&mut self) {
        self.memo.clear();
    }

    /// Returns a cut-free proof of `sequent`, or `None` if it is not
    /// derivable.
    pub fn prove(&mut self, sequent: &Sequent) -> Result<Option<ProofTree>, ProveError> {
        self.expansions = 0;
        let ant = sequent.antecedent();
        let succ = sequent.succedent();
        if !self.provable(ant, succ)? {
            return Ok(None);
        }
        self.build(ant, succ).map(Some)
    }

    pub fn is_provable(&mut self, sequent: &Sequent) -> Result<bool, ProveError> {
        self.expansions = 0;
        self.provable(sequent.antecedent(), sequent.succedent())
    }

    fn provable(&mut self, ant: &[LType], succ: LType) -> Result<bool, ProveError> {
        if ant.len() == 1 && ant[0] == succ {
            return Ok(true);
        }
        if !balanced(ant, succ) {
            return Ok(false);
        }
        let key = Sequent::from_sorted(ant.to_vec(), succ);
        if let Some(&known) = self.memo.get(&key) {
            return Ok(known);
        }
        self.expansions += 1;
        if self.expansions > self.config.max_expansions {
            return Err(ProveError::BudgetExceeded(self.config.max_expansions));
        }
        let mut found = false;
        for_each_step(ant, succ, &mut |step| {
            for (a, s) in &step.premises {
                if !self.provable(a, *s)? {
                    return Ok(false);
                }
            }
            found = true;
            Ok(true)
        })?;
        self.memo.insert(key, found);
        Ok(found)
    }

    fn build(&mut self, ant: &[LType], succ: LType) -> Result<ProofTree, ProveError> {
        if ant.len() == 1 && ant[0] == succ {
            return Ok(ProofTree::axiom(succ));
        }
        let mut chosen = None;
        for_each_step(ant, succ, &mut |step| {
            for (a, s) in &step.premises {
                if !self.provable(a, *s)? {
                    return Ok(false);
                }
            }
            chosen = Some(step);
            Ok(true)
        })?;
        let step = chosen.expect("build is only called on provable sequents");
        let premises = step
            .premises
            .iter()
            .map(|(a, s)| self.build(a, *s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ProofTree {
            rule: step.rule,
            conclusion: Sequent::from_sorted(ant.to_vec(), succ),
            principal: step.principal,
            premises,
        })
    }
}

/// Proves a single sequent with the default budget.
pub fn prove(sequent: &Sequent) -> Result<Option<ProofTree>, ProveError> {
    Prover::default().prove(sequent)
}

/// Enumerates backward rule applications in the fixed order: `(*->)` on the
/// first product, else `(->/)`, else every `(/->)` then every `(->*)`.
/// Stops as soon as `visit` returns `true`.
fn for_each_step(ant: &[LType], succ: LType, visit: &mut Visit<'_>) -> Result<bool, ProveError> {
    if let Some(&p) = ant.iter().find(|t| t.is_prod()) {
        let Kind::Prod(a, b) = p.kind() else { unreachable!() };
        let rest = remove_one(ant, p).expect("present");
        return visit(Step {
            rule: Rule::ProdLeft,
            principal: Some(p),
            premises: vec![(union(&rest, &[a, b]), succ)],
        });
    }
    if let Kind::Div(b, a) = succ.kind() {
        return visit(Step {
            rule: Rule::DivRight,
            principal: Some(succ),
            premises: vec![(union(ant, &[a]), b)],
        });
    }

    let groups = group(ant);
    for (gi, &(principal, _)) in groups.iter().enumerate() {
        let Kind::Div(b, a) = principal.kind() else { continue };
        let mut rest = groups.clone();
        rest[gi].1 -= 1;
        let stop = for_each_split(&rest, a, false, &mut |pi, gamma| {
            visit(Step {
                rule: Rule::DivLeft,
                principal: Some(principal),
                premises: vec![(pi, a), (union(&gamma, &[b]), succ)],
            })
        })?;
        if stop {
            return Ok(true);
        }
    }

    if let Kind::Prod(a, b) = succ.kind() {
        return for_each_split(&groups, a, true, &mut |pi, psi| {
            visit(Step { rule: Rule::ProdRight, principal: Some(succ), premises: vec![(pi, a), (psi, b)] })
        });
    }
    Ok(false)
}

/// Enumerates splits of a grouped multiset into a nonempty part `pi` with
/// the same primitive charge as `target` (so `pi -> target` is balanced)
/// and the remainder. With `rest_nonempty`, the remainder must be nonempty
/// too.
fn for_each_split(
    groups: &[(LType, usize)],
    target: LType,
    rest_nonempty: bool,
    visit: &mut dyn FnMut(Vec<LType>, Vec<LType>) -> Result<bool, ProveError>,
) -> Result<bool, ProveError> {
    let groups: Vec<(LType, usize)> = groups.iter().copied().filter(|g| g.1 > 0).collect();
    let total: usize = groups.iter().map(|g| g.1).sum();

    // dense primitive index over everything involved
    let mut prims: Vec<u32> = target.charge().iter().map(|c| c.0).collect();
    for (t, _) in &groups {
        prims.extend(t.charge().iter().map(|c| c.0));
    }
    prims.sort_unstable();
    prims.dedup();
    let dense = |t: LType| {
        let mut v = vec![0i64; prims.len()];
        for &(p, c) in t.charge() {
            v[prims.binary_search(&p).expect("indexed")] = c as i64;
        }
        v
    };
    let want = dense(target);
    let charges: Vec<Vec<i64>> = groups.iter().map(|&(t, _)| dense(t)).collect();

    // reachable charge range of groups[i..]
    let n = groups.len();
    let dims = prims.len();
    let mut lo = vec![vec![0i64; dims]; n + 1];
    let mut hi = vec![vec![0i64; dims]; n + 1];
    for i in (0..n).rev() {
        let count = groups[i].1 as i64;
        for d in 0..dims {
            let c = charges[i][d] * count;
            lo[i][d] = lo[i + 1][d] + c.min(0);
            hi[i][d] = hi[i + 1][d] + c.max(0);
        }
    }

    struct Search<'a> {
        groups: &'a [(LType, usize)],
        charges: &'a [Vec<i64>],
        want: &'a [i64],
        lo: &'a [Vec<i64>],
        hi: &'a [Vec<i64>],
        total: usize,
        rest_nonempty: bool,
        choice: Vec<usize>,
    }

    impl Search<'_> {
        fn go(
            &mut self,
            i: usize,
            acc: &mut [i64],
            picked: usize,
            visit: &mut dyn FnMut(Vec<LType>, Vec<LType>) -> Result<bool, ProveError>,
        ) -> Result<bool, ProveError> {
            if i == self.groups.len() {
                if picked == 0 || (self.rest_nonempty && picked == self.total) {
                    return Ok(false);
                }
                let mut pi = Vec::with_capacity(picked);
                let mut rest = Vec::with_capacity(self.total - picked);
                for (g, &k) in self.groups.iter().zip(&self.choice) {
                    pi.extend(std::iter::repeat_n(g.0, k));
                    rest.extend(std::iter::repeat_n(g.0, g.1 - k));
                }
                return visit(pi, rest);
            }
            let feasible = |acc: &[i64]| {
                (0..acc.len()).all(|d| {
                    let need = self.want[d] - acc[d];
                    self.lo[i + 1][d] <= need && need <= self.hi[i + 1][d]
                })
            };
            for k in 0..=self.groups[i].1 {
                if k > 0 {
                    for (a, c) in acc.iter_mut().zip(&self.charges[i]) {
                        *a += c;
                    }
                }
                if feasible(acc) {
                    self.choice[i] = k;
                    if self.go(i + 1, acc, picked + k, visit)? {
                        return Ok(true);
                    }
                }
            }
            let k = self.groups[i].1 as i64;
            for (a, c) in acc.iter_mut().zip(&self.charges[i]) {
                *a -= c * k;
            }
            Ok(false)
        }
    }

    let mut search = Search {
        groups: &groups,
        charges: &charges,
        want: &want,
        lo: &lo,
        hi: &hi,
        total,
        rest_nonempty,
        choice: vec![0; n],
    };
    let mut acc = vec![0i64; dims];
    search.go(0, &mut acc, 0, visit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::parse_sequent;

    fn provable(s: &str) -> bool {
        let seq = parse_sequent(s).unwrap();
        match prove(&seq).unwrap() {
            Some(proof) => {
                proof.check().unwrap();
                assert_eq!(proof.conclusion, seq);
                true
            }
            None => false,
        }
    }

    #[test]
    fn axiom() {
        let proof = prove(&parse_sequent("p -> p").unwrap()).unwrap().unwrap();
        assert_eq!(proof.rule, Rule::Axiom);
    }

    #[test]
    fn product_division_interplay() {
        assert!(provable("(D/A)*B -> D/(A/B)"));
        assert!(provable("A/(B*C) -> A/B/C"));
        assert!(provable("A/B/C -> A/(B*C)"));
        assert!(provable("A/B/C -> A/C/B"));
        assert!(provable("p*q -> q*p"));
        assert!(provable("p, q -> q*p"));
    }

    #[test]
    fn structural_rules_absent() {
        // no weakening
        assert!(!provable("p, q -> p"));
        // no contraction
        assert!(!provable("p -> p*p"));
        assert!(!provable("p/p -> p"));
        // no unit
        assert!(!provable("p/(q/q) -> p"));
    }

    #[test]
    fn balanced_but_unprovable() {
        // balanced charge, but not derivable
        assert!(!provable("p/(p/p) -> p"));
        assert!(!provable("p/q, q/p -> p*q/p"));
    }

    #[test]
    fn composite_identities() {
        assert!(provable("(p/q)*r -> (p/q)*r"));
        assert!(provable("p/(q/r) -> p/(q/r)"));
    }

    #[test]
    fn budget_is_reported() {
        let mut prover = Prover::new(ProverConfig { max_expansions: 1 });
        let seq = parse_sequent("a/b/c/d, d, c, b -> a").unwrap();
        assert_eq!(prover.prove(&seq), Err(ProveError::BudgetExceeded(1)));
        let mut roomy = Prover::default();
        assert!(roomy.prove(&seq).unwrap().is_some());
    }

    #[test]
    fn deterministic_witness() {
        let seq = parse_sequent("q, p, p/q/p, p/p -> p").unwrap();
        let a = prove(&seq).unwrap();
        let b = Prover::default().prove(&seq).unwrap();
        assert_eq!(a, b);
    }
}
