//! Exhaustive generation of types and sequents, for metatheory checks.

use super::{LType, Sequent};

/// All types of exactly `length` built from `atoms`, with both connectives
/// unless `products` is false.
pub fn types_of_length(atoms: &[LType], length: usize, products: bool) -> Vec<LType> {
    let mut table: Vec<Vec<LType>> = vec![Vec::new(); length + 1];
    for len in 1..=length {
        if len == 1 {
            table[1] = atoms.to_vec();
            continue;
        }
        let mut out = Vec::new();
        for left in (1..len - 1).step_by(2) {
            let right = len - 1 - left;
            for &a in &table[left] {
                for &b in &table[right] {
                    out.push(LType::div(a, b));
                    if products {
                        out.push(LType::prod(a, b));
                    }
                }
            }
        }
        table[len] = out;
    }
    std::mem::take(&mut table[length])
}

/// All types of length at most `max_length`, shortest first.
pub fn types_up_to(atoms: &[LType], max_length: usize, products: bool) -> Vec<LType> {
    (1..=max_length).flat_map(|len| types_of_length(atoms, len, products)).collect()
}

/// Every sequent whose members are drawn from `pool` and whose total
/// length is at most `max_length`. Antecedents are multisets, so each
/// sequent appears once.
pub fn sequents_over(pool: &[LType], succedents: &[LType], max_length: usize) -> Vec<Sequent> {
    let mut pool: Vec<LType> = pool.iter().copied().filter(|t| t.length() < max_length).collect();
    pool.sort_by_key(|&t| (t.length(), t));
    pool.dedup();
    let mut out = Vec::new();
    for &succ in succedents {
        if succ.length() >= max_length {
            continue;
        }
        let budget = max_length - succ.length();
        let mut current = Vec::new();
        multisets(&pool, 0, budget, &mut current, &mut |ant| {
            out.push(Sequent::new(ant.iter().copied(), succ).expect("nonempty"));
        });
    }
    out
}

fn multisets(
    pool: &[LType],
    from: usize,
    budget: usize,
    current: &mut Vec<LType>,
    emit: &mut dyn FnMut(&[LType]),
) {
    if !current.is_empty() {
        emit(current);
    }
    // `pool` is sorted by length, so the first type over budget ends the scan.
    for i in from..pool.len() {
        let t = pool[i];
        if t.length() > budget {
            break;
        }
        current.push(t);
        multisets(pool, i, budget - t.length(), current, emit);
        current.pop();
    }
}

/// Every sequent over types built from `atoms` with total length at most
/// `max_length`.
pub fn sequents_up_to(atoms: &[LType], max_length: usize, products: bool) -> Vec<Sequent> {
    let pool = types_up_to(atoms, max_length.saturating_sub(1), products);
    sequents_over(&pool, &pool, max_length)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_counts() {
        let atoms = [LType::prim("p"), LType::prim("q"), LType::prim("r")];
        // 3 atoms, 2 connectives: t(1)=3, t(3)=2*9, t(5)=2*(3*18+18*3)
        assert_eq!(types_of_length(&atoms, 1, true).len(), 3);
        assert_eq!(types_of_length(&atoms, 3, true).len(), 18);
        assert_eq!(types_of_length(&atoms, 5, true).len(), 216);
        assert_eq!(types_of_length(&atoms, 3, false).len(), 9);
        assert!(types_of_length(&atoms, 4, true).is_empty());
    }

    #[test]
    fn sequent_enumeration_is_duplicate_free() {
        let atoms = [LType::prim("p"), LType::prim("q")];
        let all = sequents_up_to(&atoms, 4, true);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        assert!(all.iter().all(|s| s.length() <= 4));
        // p,p,p -> q is among them
        let s = Sequent::new([atoms[0]; 3], atoms[1]).unwrap();
        assert!(all.contains(&s));
    }
}
