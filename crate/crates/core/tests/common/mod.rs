//! Independent reference implementations used as test oracles.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use lpbvass::bvassam::{BvassamSystem, Fact, SystemBuilder};
use lpbvass::calculus::{Kind, LType, Sequent};
use lpbvass::Vector;

/// Plain backward search over all rule instances, with no pruning, no
/// commitment to invertible rules and no memo.
pub fn naive_provable(antecedent: &[LType], succedent: LType) -> bool {
    if antecedent.len() == 1 && antecedent[0] == succedent {
        return true;
    }
    if let Kind::Div(b, a) = succedent.kind() {
        let mut next = antecedent.to_vec();
        next.push(a);
        if naive_provable(&next, b) {
            return true;
        }
    }
    if let Kind::Prod(a, b) = succedent.kind() {
        for (left, right) in splits(antecedent) {
            if naive_provable(&left, a) && naive_provable(&right, b) {
                return true;
            }
        }
    }
    for (i, &t) in antecedent.iter().enumerate() {
        let mut rest = antecedent.to_vec();
        rest.remove(i);
        match t.kind() {
            Kind::Prod(a, b) => {
                rest.push(a);
                rest.push(b);
                if naive_provable(&rest, succedent) {
                    return true;
                }
            }
            Kind::Div(a, b) => {
                for (pi, mut gamma) in splits_allow_empty_right(&rest) {
                    gamma.push(a);
                    if naive_provable(&pi, b) && naive_provable(&gamma, succedent) {
                        return true;
                    }
                }
            }
            Kind::Prim(_) => {}
        }
    }
    false
}

pub fn naive_provable_sequent(s: &Sequent) -> bool {
    naive_provable(s.antecedent(), s.succedent())
}

/// Splits into two nonempty parts.
fn splits(items: &[LType]) -> Vec<(Vec<LType>, Vec<LType>)> {
    splits_allow_empty_right(items).into_iter().filter(|(_, r)| !r.is_empty()).collect()
}

/// Splits into a nonempty left part and a possibly empty right part.
fn splits_allow_empty_right(items: &[LType]) -> Vec<(Vec<LType>, Vec<LType>)> {
    let n = items.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let (mut l, mut r) = (Vec::new(), Vec::new());
        for (i, &t) in items.iter().enumerate() {
            if mask >> i & 1 == 1 {
                l.push(t);
            } else {
                r.push(t);
            }
        }
        out.push((l, r));
    }
    out
}

/// `F[n]`: facts with a derivation of exactly `n` nodes, for `n <= max`,
/// computed by closing under every rule without any bound on vectors.
pub fn naive_facts_by_size(system: &BvassamSystem, max: usize) -> Vec<BTreeSet<Fact>> {
    let mut by_size: Vec<BTreeSet<Fact>> = vec![BTreeSet::new(); max + 1];
    if max == 0 {
        return by_size;
    }
    for a in system.axioms() {
        by_size[1].insert(Fact::new(a.state, a.vector.clone()));
    }
    for n in 2..=max {
        let mut next = BTreeSet::new();
        for f in &by_size[n - 1] {
            for r in system.unary_rules() {
                if r.source != f.state {
                    continue;
                }
                if let Some(w) = f.vector.checked_sub(&r.source_offset) {
                    next.insert(Fact::new(r.target, &w + &r.target_offset));
                }
            }
        }
        for left in 1..n - 1 {
            let right = n - 1 - left;
            for x in &by_size[left] {
                for y in &by_size[right] {
                    for r in system.binary_rules() {
                        if r.left == x.state && r.right == y.state {
                            next.insert(Fact::new(r.target, &x.vector + &y.vector));
                        }
                    }
                }
            }
        }
        by_size[n] = next;
    }
    by_size
}

/// Least derivation size of every fact derivable within `max` nodes.
pub fn naive_min_sizes(system: &BvassamSystem, max: usize) -> HashMap<Fact, usize> {
    let mut out = HashMap::new();
    for (n, facts) in naive_facts_by_size(system, max).into_iter().enumerate() {
        for f in facts {
            out.entry(f).or_insert(n);
        }
    }
    out
}

fn v(c: &[u32]) -> Vector {
    Vector::new(c.to_vec())
}

/// Every system built from at most three rules of a fixed catalogue over
/// `K = 2` and states `s`, `q`, containing at least one axiom.
pub fn small_systems() -> Vec<BvassamSystem> {
    #[derive(Clone, Copy)]
    enum R {
        Axiom(usize, [u32; 2]),
        Unary(usize, usize, [u32; 2], [u32; 2]),
        Binary(usize, usize, usize),
    }
    let catalogue = [
        R::Axiom(0, [1, 0]),
        R::Axiom(1, [0, 1]),
        R::Axiom(1, [0, 0]),
        R::Unary(0, 0, [0, 0], [1, 0]),
        R::Unary(0, 1, [0, 1], [0, 0]),
        R::Unary(1, 1, [0, 0], [0, 1]),
        R::Unary(1, 0, [1, 0], [0, 2]),
        R::Unary(0, 1, [0, 0], [1, 1]),
        R::Binary(0, 0, 0),
        R::Binary(0, 0, 1),
        R::Binary(1, 1, 0),
    ];
    let mut out = Vec::new();
    let n = catalogue.len();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() > 3 {
            continue;
        }
        let chosen: Vec<R> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| catalogue[i]).collect();
        if !chosen.iter().any(|r| matches!(r, R::Axiom(..))) {
            continue;
        }
        let mut b = SystemBuilder::new(2);
        let ids = [b.state("s"), b.state("q")];
        for r in chosen {
            match r {
                R::Axiom(s, vec) => {
                    b.axiom(ids[s], v(&vec));
                }
                R::Unary(t, s, d1, d2) => {
                    b.unary(ids[t], ids[s], v(&d1), v(&d2));
                }
                R::Binary(t, l, r) => {
                    b.binary(ids[t], ids[l], ids[r]);
                }
            }
        }
        out.push(b.build(ids[0], 2).expect("catalogue systems are well-formed"));
    }
    out
}

/// Facts over the states of `system` with every coordinate at most `bound`.
pub fn facts_below(system: &BvassamSystem, bound: u32) -> Vec<Fact> {
    let cap = Vector::new(vec![bound; system.full_dim()]);
    let mut vectors = Vector::all_below(&cap);
    vectors.push(Vector::zeros(system.full_dim()));
    let mut out = Vec::new();
    for i in 0..system.states().len() {
        for v in &vectors {
            out.push(Fact::new(lpbvass::bvassam::StateId(i), v.clone()));
        }
    }
    out
}
