//! From an LP-grammar to a linearly-restricted system.

use std::collections::{BTreeSet, HashMap};

use crate::bvassam::{DerivationTree, Fact, LBvassam, Step, SystemBuilder};
use crate::calculus::{Kind, LType};
use crate::grammar::{subtypes, LpGrammar, SubtypeSets};
use crate::vector::Vector;

use super::ConstructionError;

/// The bijection between negative subtypes and the memory coordinates
/// `k..K` (0-based), ordered by length and then by printed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMap {
    visible: usize,
    negatives: Vec<LType>,
    index: HashMap<LType, usize>,
}

impl IndexMap {
    pub fn new(visible: usize, negatives: &BTreeSet<LType>) -> IndexMap {
        let mut order: Vec<(usize, String, LType)> =
            negatives.iter().map(|&t| (t.length(), t.to_string(), t)).collect();
        order.sort();
        let negatives: Vec<LType> = order.into_iter().map(|e| e.2).collect();
        let index = negatives.iter().enumerate().map(|(j, &t)| (t, visible + j)).collect();
        IndexMap { visible, negatives, index }
    }

    /// `k`
    pub fn visible(&self) -> usize {
        self.visible
    }

    /// `K`
    pub fn full(&self) -> usize {
        self.visible + self.negatives.len()
    }

    /// 0-based coordinate of a negative subtype.
    pub fn ind(&self, t: LType) -> Option<usize> {
        self.index.get(&t).copied()
    }

    pub fn type_at(&self, coordinate: usize) -> Option<LType> {
        coordinate.checked_sub(self.visible).and_then(|j| self.negatives.get(j).copied())
    }

    /// Negative subtypes in coordinate order.
    pub fn negatives(&self) -> &[LType] {
        &self.negatives
    }

    pub fn unit(&self, t: LType) -> Vector {
        Vector::unit(self.full(), self.ind(t).expect("negative subtype"))
    }

    /// The vector `u` with `A(u)` equal to `types`, if all are indexed.
    pub fn vector_of(&self, types: &[LType]) -> Option<Vector> {
        let mut v = Vector::zeros(self.full());
        for &t in types {
            v.bump(self.ind(t)?, 1);
        }
        Some(v)
    }
}

/// `A(u)`: `u_ind(A)` copies of each negative subtype `A`, in coordinate
/// order.
pub fn types_of_vector(u: &Vector, ind: &IndexMap) -> Result<Vec<LType>, ConstructionError> {
    if u.dim() != ind.full() {
        return Err(ConstructionError::DimensionMismatch { expected: ind.full(), got: u.dim() });
    }
    if let Some(i) = (0..ind.visible()).find(|&i| u.get(i) != 0) {
        return Err(ConstructionError::VisibleCoordinate(i));
    }
    let mut out = Vec::new();
    for (j, &t) in ind.negatives().iter().enumerate() {
        out.extend(std::iter::repeat_n(t, u.get(ind.visible() + j) as usize));
    }
    Ok(out)
}

/// Everything produced by the grammar-to-system translation.
#[derive(Debug, Clone)]
pub struct LbamConstruction {
    pub system: LBvassam,
    pub subtypes: SubtypeSets,
    pub ind: IndexMap,
    /// The type each state stands for, indexed by state id.
    pub state_types: Vec<LType>,
    /// Unary rule indices of the lexicon rules `S(x + e_i) <- S(x + e_ind(A))`.
    pub lexicon_rules: Vec<usize>,
}

impl LbamConstruction {
    pub fn state_of(&self, t: LType) -> Option<crate::bvassam::StateId> {
        self.system.system().state_id(&t.to_string())
    }
}

fn sorted(set: &BTreeSet<LType>) -> Vec<LType> {
    let mut v: Vec<LType> = set.iter().copied().collect();
    v.sort_by_cached_key(|t| (t.length(), t.to_string()));
    v
}

/// `lBAM(G)` with bound `F = 7 * max |A|`.
///
/// States are named by the printed form of their types. Axioms are only
/// emitted for primitives that are also states; the others could never be
/// used by any rule.
pub fn lbam_construction(g: &LpGrammar) -> Result<LbamConstruction, ConstructionError> {
    let sets = subtypes(g);
    let k = g.alphabet().len();
    let ind = IndexMap::new(k, &sets.negative);
    let big_k = ind.full();
    let positive = sorted(&sets.positive);
    let negative = ind.negatives().to_vec();

    let mut b = SystemBuilder::new(big_k);
    let mut state_types = Vec::new();
    let mut declare = |b: &mut SystemBuilder, t: LType| {
        let id = b.state(&t.to_string());
        if id.0 == state_types.len() {
            state_types.push(t);
        }
        id
    };
    for &c in &positive {
        declare(&mut b, c);
    }
    for &c in &positive {
        for &a in &negative {
            declare(&mut b, LType::div(c, a));
        }
    }
    let state = |b: &mut SystemBuilder, t: LType| b.state(&t.to_string());
    let zero = Vector::zeros(big_k);

    for &p in &negative {
        if p.is_prim() && sets.positive.contains(&p) {
            let id = state(&mut b, p);
            b.axiom(id, ind.unit(p));
        }
    }

    // (a) C(x + e_{A*B}) <- C(x + e_A + e_B)
    for &ab in &negative {
        if let Kind::Prod(a, bb) = ab.kind() {
            let split = &ind.unit(a) + &ind.unit(bb);
            for &c in &positive {
                let id = state(&mut b, c);
                b.unary(id, id, split.clone(), ind.unit(ab));
            }
        }
    }
    let quotients: Vec<LType> = state_types.iter().copied().filter(|t| t.is_div()).collect();
    // (b) (A/B)(x) <- A(x + e_B)
    for &q in &quotients {
        let Kind::Div(a, bb) = q.kind() else { unreachable!() };
        let (qi, ai) = (state(&mut b, q), state(&mut b, a));
        b.unary(qi, ai, ind.unit(bb), zero.clone());
    }
    // (c) A(x + e_B) <- (A/B)(x)
    for &q in &quotients {
        let Kind::Div(a, bb) = q.kind() else { unreachable!() };
        let (qi, ai) = (state(&mut b, q), state(&mut b, a));
        b.unary(ai, qi, zero.clone(), ind.unit(bb));
    }
    // (d) S(x + e_i) <- S(x + e_ind(A)) for a_i |> A
    let s = state(&mut b, g.distinguished());
    let mut lexicon_rules = Vec::new();
    for (symbol, a) in g.lexicon() {
        let i = g.symbol_index(symbol).expect("lexicon symbol");
        lexicon_rules.push(b.unary_count());
        b.unary(s, s, ind.unit(a), Vector::unit(big_k, i));
    }

    // (a) (A*B)(x + y) <- A(x), B(y)
    for &ab in &positive {
        if let Kind::Prod(a, bb) = ab.kind() {
            let (t, l, r) = (state(&mut b, ab), state(&mut b, a), state(&mut b, bb));
            b.binary(t, l, r);
        }
    }
    // (b) (C/(A/B))(x + y) <- (C/A)(x), B(y)
    for &ab in &negative {
        if let Kind::Div(a, bb) = ab.kind() {
            for &c in &positive {
                let t = state(&mut b, LType::div(c, ab));
                let l = state(&mut b, LType::div(c, a));
                let r = state(&mut b, bb);
                b.binary(t, l, r);
            }
        }
    }

    let system = b.build(s, k)?;
    debug_assert_eq!(system.states().len(), state_types.len());
    let bound = 7 * g.max_type_length() as u32;
    Ok(LbamConstruction {
        system: LBvassam::new(system, bound)?,
        subtypes: sets,
        ind,
        state_types,
        lexicon_rules,
    })
}

pub fn lbam_of(g: &LpGrammar) -> Result<LBvassam, ConstructionError> {
    Ok(lbam_construction(g)?.system)
}

/// Rewrites a derivation of `S(u)` so that all lexicon rules are applied
/// last, in a single chain at the root. The root fact and the size are
/// unchanged.
pub fn postpone_lexicon_rules(
    construction: &LbamConstruction,
    tree: &DerivationTree,
) -> Result<DerivationTree, ConstructionError> {
    let system = construction.system.system();
    let is_lexicon = |r: usize| construction.lexicon_rules.contains(&r);

    fn strip(t: &DerivationTree, is_lexicon: &dyn Fn(usize) -> bool, removed: &mut Vec<usize>) -> DerivationTree {
        match &t.step {
            Step::Unary(r, c) if is_lexicon(*r) => {
                removed.push(*r);
                strip(c, is_lexicon, removed)
            }
            Step::Axiom(_) => t.clone(),
            Step::Unary(r, c) => {
                DerivationTree { fact: t.fact.clone(), step: Step::Unary(*r, Box::new(strip(c, is_lexicon, removed))) }
            }
            Step::Binary(r, l, rt) => DerivationTree {
                fact: t.fact.clone(),
                step: Step::Binary(
                    *r,
                    Box::new(strip(l, is_lexicon, removed)),
                    Box::new(strip(rt, is_lexicon, removed)),
                ),
            },
        }
    }

    fn recompute(t: &mut DerivationTree, system: &crate::bvassam::BvassamSystem) -> Result<(), ConstructionError> {
        let vector = match &mut t.step {
            Step::Axiom(_) => return Ok(()),
            Step::Unary(r, c) => {
                recompute(c, system)?;
                let rule = &system.unary_rules()[*r];
                let base = c.fact.vector.checked_sub(&rule.source_offset).ok_or(ConstructionError::Normalization)?;
                &base + &rule.target_offset
            }
            Step::Binary(_, l, r) => {
                recompute(l, system)?;
                recompute(r, system)?;
                &l.fact.vector + &r.fact.vector
            }
        };
        t.fact.vector = vector;
        Ok(())
    }

    let mut removed = Vec::new();
    let mut out = strip(tree, &is_lexicon, &mut removed);
    recompute(&mut out, system)?;
    for r in removed {
        let rule = &system.unary_rules()[r];
        let base = out.fact.vector.checked_sub(&rule.source_offset).ok_or(ConstructionError::Normalization)?;
        if out.fact.state != rule.source {
            return Err(ConstructionError::Normalization);
        }
        out = DerivationTree {
            fact: Fact::new(rule.target, &base + &rule.target_offset),
            step: Step::Unary(r, Box::new(out)),
        };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bvassam::derive;
    use crate::calculus::parse_type;

    fn t(s: &str) -> LType {
        parse_type(s).unwrap()
    }

    fn v(c: &[u32]) -> Vector {
        Vector::new(c.to_vec())
    }

    #[test]
    fn single_entry_grammar() {
        let g = LpGrammar::new(["a"], [("a", t("p"))], t("p")).unwrap();
        let c = lbam_construction(&g).unwrap();
        let sys = c.system.system();
        assert_eq!(sys.states(), ["p", "p/p"]);
        assert_eq!((sys.visible_dim(), sys.full_dim()), (1, 2));
        assert_eq!(sys.axioms().len(), 1);
        assert_eq!(sys.axioms()[0].vector, v(&[0, 1]));
        assert_eq!(c.system.bound(), 7);
        let lex = &sys.unary_rules()[c.lexicon_rules[0]];
        assert_eq!((lex.source_offset.clone(), lex.target_offset.clone()), (v(&[0, 1]), v(&[1, 0])));
        assert!(c.system.member(&v(&[1])).unwrap().is_some());
        assert!(c.system.member(&v(&[2])).unwrap().is_none());
    }

    #[test]
    fn application_grammar() {
        let g = LpGrammar::new(["a", "b"], [("a", t("p")), ("b", t("s/p"))], t("s")).unwrap();
        let c = lbam_construction(&g).unwrap();
        assert_eq!(c.ind.negatives(), [t("p"), t("s"), t("s/p")]);
        assert_eq!(c.ind.ind(t("s/p")), Some(4));
        let sys = c.system.system();
        // p and s are primitives of both polarities
        let axiom_types: Vec<LType> = sys.axioms().iter().map(|a| c.state_types[a.state.0]).collect();
        assert_eq!(axiom_types, vec![t("p"), t("s")]);
        assert!(c.system.member(&v(&[1, 1])).unwrap().is_some());
        assert!(c.system.member(&v(&[1, 0])).unwrap().is_none());
        assert!(c.system.member(&v(&[2, 1])).unwrap().is_none());
    }

    #[test]
    fn vectors_and_types() {
        let g = LpGrammar::new(["a", "b"], [("a", t("p")), ("b", t("q/r"))], t("p")).unwrap();
        let c = lbam_construction(&g).unwrap();
        let ip = c.ind.ind(t("p")).unwrap();
        let iq = c.ind.ind(t("q/r")).unwrap();
        let mut u = Vector::zeros(c.ind.full());
        u.bump(ip, 1);
        u.bump(iq, 2);
        assert_eq!(types_of_vector(&u, &c.ind).unwrap(), vec![t("p"), t("q/r"), t("q/r")]);
        assert!(types_of_vector(&Vector::zeros(c.ind.full()), &c.ind).unwrap().is_empty());
        let mut bad = Vector::zeros(c.ind.full());
        bad.bump(0, 1);
        assert_eq!(types_of_vector(&bad, &c.ind), Err(ConstructionError::VisibleCoordinate(0)));
        assert_eq!(c.ind.vector_of(&[t("p"), t("q/r"), t("q/r")]), Some(u));
    }

    #[test]
    fn normalizer_moves_lexicon_rules_to_root() {
        let g = LpGrammar::new(["a", "b"], [("a", t("p")), ("b", t("s/p"))], t("s")).unwrap();
        let c = lbam_construction(&g).unwrap();
        let sys = c.system.system();
        let goal = Fact::new(sys.accepting(), v(&[1, 1, 0, 0, 0]));
        let tree = derive(sys, &goal, 30).unwrap().unwrap();
        let norm = postpone_lexicon_rules(&c, &tree).unwrap();
        assert!(sys.validate(&norm).unwrap());
        assert_eq!(norm.fact, tree.fact);
        assert_eq!(norm.size(), tree.size());
        let mut node = &norm;
        for _ in 0..2 {
            match &node.step {
                Step::Unary(r, child) if c.lexicon_rules.contains(r) => node = child,
                other => panic!("expected a lexicon step, got {other:?}"),
            }
        }
        assert!(node.nodes().iter().all(|n| !matches!(n.step, Step::Unary(r, _) if c.lexicon_rules.contains(&r))));
    }
}
