//! From a linearly-restricted system to an LP-grammar.

use crate::bvassam::{Axiom, BinaryRule, BvassamSystem, LBvassam, StateId, UnaryRule};
use crate::calculus::{is_identifier, LType};
use crate::grammar::LpGrammar;
use crate::vector::Vector;

use super::{eliminate_products, ConstructionError};

/// `g^v = g_i1^v_i1 * ... * g_ij^v_ij`, skipping zero components, right-combed.
pub fn g_power(v: &Vector, g: &[LType]) -> Result<LType, ConstructionError> {
    let factors = g_times(v, g)?;
    LType::prod_all(&factors).ok_or(ConstructionError::ZeroVector)
}

/// `g x v`: `v_i` copies of `g_i`, in index order.
pub fn g_times(v: &Vector, g: &[LType]) -> Result<Vec<LType>, ConstructionError> {
    if v.dim() != g.len() {
        return Err(ConstructionError::DimensionMismatch { expected: g.len(), got: v.dim() });
    }
    let mut out = Vec::with_capacity(v.size() as usize);
    for (i, &n) in v.as_slice().iter().enumerate() {
        out.extend(std::iter::repeat_n(g[i], n as usize));
    }
    Ok(out)
}

/// Primitive names used to encode a system: one per state, `g1..gK` and
/// `f`, pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    pub states: Vec<LType>,
    pub g: Vec<LType>,
    pub f: LType,
}

impl Vocabulary {
    /// States keep their names when these are identifiers and become
    /// `q<index>` otherwise; clashes are resolved with `_<n>` suffixes.
    pub fn for_system(system: &BvassamSystem) -> Vocabulary {
        let mut taken: Vec<String> = system.states().iter().filter(|s| is_identifier(s)).cloned().collect();
        let fresh = |base: String, taken: &mut Vec<String>| {
            let mut name = base.clone();
            let mut n = 1;
            while taken.contains(&name) {
                name = format!("{base}_{n}");
                n += 1;
            }
            taken.push(name.clone());
            LType::prim(&name)
        };
        let states = system
            .states()
            .iter()
            .enumerate()
            .map(|(i, s)| if is_identifier(s) { LType::prim(s) } else { fresh(format!("q{i}"), &mut taken) })
            .collect();
        let g = (1..=system.full_dim()).map(|i| fresh(format!("g{i}"), &mut taken)).collect();
        let f = fresh("f".to_owned(), &mut taken);
        Vocabulary { states, g, f }
    }

    pub fn state(&self, s: StateId) -> LType {
        self.states[s.0]
    }

    pub fn g_power(&self, v: &Vector) -> Result<LType, ConstructionError> {
        g_power(v, &self.g)
    }

    pub fn g_times(&self, v: &Vector) -> Result<Vec<LType>, ConstructionError> {
        g_times(v, &self.g)
    }

    /// `f / g^nu / q`, or `f / q` for `nu = 0`.
    pub fn encode_axiom(&self, a: &Axiom) -> Result<LType, ConstructionError> {
        let q = self.state(a.state);
        Ok(if a.vector.is_zero() {
            LType::div(self.f, q)
        } else {
            LType::div_all(self.f, &[self.g_power(&a.vector)?, q])
        })
    }

    /// `(p * g^d1) / g^d2 / q` for `q(x + d2) <- p(x + d1)`, dropping the
    /// factors for zero offsets.
    pub fn encode_unary(&self, r: &UnaryRule) -> Result<LType, ConstructionError> {
        let numerator = self.premise_factor(r)?;
        self.unary_tail(numerator, r)
    }

    /// `f / (f/r) / (f/p) / q` for `q(x + y) <- p(x), r(y)`.
    pub fn encode_binary(&self, r: &BinaryRule) -> LType {
        let f = self.f;
        LType::div_all(
            f,
            &[LType::div(f, self.state(r.right)), LType::div(f, self.state(r.left)), self.state(r.target)],
        )
    }

    /// The division-only variant `(f / (f / (p * g^d1))) / g^d2 / q`.
    pub fn encode_unary_lifted(&self, r: &UnaryRule) -> Result<LType, ConstructionError> {
        let inner = self.premise_factor(r)?;
        let lifted = LType::div(self.f, LType::div(self.f, inner));
        self.unary_tail(lifted, r)
    }

    fn premise_factor(&self, r: &UnaryRule) -> Result<LType, ConstructionError> {
        let p = self.state(r.source);
        Ok(if r.source_offset.is_zero() {
            p
        } else {
            LType::prod(p, self.g_power(&r.source_offset)?)
        })
    }

    fn unary_tail(&self, numerator: LType, r: &UnaryRule) -> Result<LType, ConstructionError> {
        let q = self.state(r.target);
        Ok(if r.target_offset.is_zero() {
            LType::div(numerator, q)
        } else {
            LType::div_all(numerator, &[self.g_power(&r.target_offset)?, q])
        })
    }
}

/// Everything produced by the system-to-grammar translation.
#[derive(Debug, Clone)]
pub struct LpgConstruction {
    pub grammar: LpGrammar,
    pub vocabulary: Vocabulary,
    /// `T(phi)` for `P0`, then `P1`, then `P2`, in rule order.
    pub rule_types: Vec<LType>,
}

/// Multisets of `0..n` of size `len`, as nondecreasing index lists.
pub(crate) fn multisets(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(n: usize, from: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            cur.push(i);
            go(n, i, len, cur, out);
            cur.pop();
        }
    }
    go(n, 0, len, &mut cur, &mut out);
    out
}

fn alphabet(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("a{i}")).collect()
}

fn rule_types(
    system: &BvassamSystem,
    voc: &Vocabulary,
    lifted: bool,
) -> Result<Vec<LType>, ConstructionError> {
    let mut out = Vec::with_capacity(system.rule_count());
    for a in system.axioms() {
        out.push(voc.encode_axiom(a)?);
    }
    for r in system.unary_rules() {
        out.push(if lifted { voc.encode_unary_lifted(r)? } else { voc.encode_unary(r)? });
    }
    for r in system.binary_rules() {
        out.push(voc.encode_binary(r));
    }
    Ok(out)
}

/// `LPG(G)`: symbol `a_i` gets `g_i * T(phi_1) * ... * T(phi_j)` for every
/// multiset of at most `C` rules; the distinguished type is `f/s`.
pub fn lpg_construction(g: &LBvassam) -> Result<LpgConstruction, ConstructionError> {
    let system = g.system();
    let voc = Vocabulary::for_system(system);
    let types = rule_types(system, &voc, false)?;
    let k = system.visible_dim();
    let mut lexicon = Vec::new();
    for len in 0..=g.bound() as usize {
        for choice in multisets(types.len(), len) {
            for i in 0..k {
                let mut factors = vec![voc.g[i]];
                factors.extend(choice.iter().map(|&j| types[j]));
                lexicon.push((format!("a{}", i + 1), LType::prod_all(&factors).expect("nonempty")));
            }
        }
    }
    let distinguished = LType::div(voc.f, voc.state(system.accepting()));
    let grammar = LpGrammar::new(alphabet(k), lexicon, distinguished)?;
    Ok(LpgConstruction { grammar, vocabulary: voc, rule_types: types })
}

pub fn lpg_of(g: &LBvassam) -> Result<LpGrammar, ConstructionError> {
    Ok(lpg_construction(g)?.grammar)
}

/// The product-free grammar: lexicon types `f/(f/(s * A))/s` with the
/// lifted unary encodings, after [`eliminate_products`].
///
/// One-symbol words are never accepted: `B, s -> f` would need
/// `-> f/(s * A)` with an empty antecedent. From two symbols on, the
/// language agrees with [`lpg_of`].
pub fn lpg_division_only(g: &LBvassam) -> Result<LpGrammar, ConstructionError> {
    let system = g.system();
    let voc = Vocabulary::for_system(system);
    let types = rule_types(system, &voc, true)?;
    let s = voc.state(system.accepting());
    let f = voc.f;
    let k = system.visible_dim();
    let mut lexicon = Vec::new();
    for len in 0..=g.bound() as usize {
        for choice in multisets(types.len(), len) {
            for i in 0..k {
                let mut factors = vec![s, voc.g[i]];
                factors.extend(choice.iter().map(|&j| types[j]));
                let a = LType::prod_all(&factors).expect("nonempty");
                let b = LType::div(LType::div(f, LType::div(f, a)), s);
                lexicon.push((format!("a{}", i + 1), eliminate_products(b)?));
            }
        }
    }
    let grammar = LpGrammar::new(alphabet(k), lexicon, LType::div(f, s))?;
    Ok(grammar)
}
