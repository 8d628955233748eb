//! Derived operations on sequents: the cut conclusion, the two inverted
//! rules, and flattening of outermost products.

use super::proof::{remove_one, union};
use super::{CalculusError, Kind, LType, ProofTree, Sequent};

/// Conclusion `Gamma, Pi -> B` of cutting `left: Pi -> A` into
/// `right: Gamma, A -> B`. Only the sequent is produced; cut-freeness is
/// what the prover is for.
pub fn cut(left: &ProofTree, right: &ProofTree) -> Result<Sequent, CalculusError> {
    cut_sequents(&left.conclusion, &right.conclusion)
}

pub fn cut_sequents(left: &Sequent, right: &Sequent) -> Result<Sequent, CalculusError> {
    let a = left.succedent();
    let gamma = remove_one(right.antecedent(), a).ok_or_else(|| CalculusError::CutMismatch {
        formula: a.to_string(),
        sequent: right.to_string(),
    })?;
    Ok(Sequent::from_sorted(union(&gamma, left.antecedent()), right.succedent()))
}

/// `Gamma, A*B -> C` to `Gamma, A, B -> C`, splitting one occurrence of
/// `designated`.
pub fn invert_prod_left(sequent: &Sequent, designated: LType) -> Result<Sequent, CalculusError> {
    let Kind::Prod(a, b) = designated.kind() else {
        return Err(CalculusError::NotAProduct(designated.to_string()));
    };
    let rest = remove_one(sequent.antecedent(), designated).ok_or_else(|| {
        CalculusError::NotInAntecedent { formula: designated.to_string(), sequent: sequent.to_string() }
    })?;
    Ok(Sequent::from_sorted(union(&rest, &[a, b]), sequent.succedent()))
}

/// `Pi -> B/A` to `Pi, A -> B`.
pub fn invert_div_right(sequent: &Sequent) -> Result<Sequent, CalculusError> {
    match sequent.succedent().kind() {
        Kind::Div(b, a) => Ok(Sequent::from_sorted(union(sequent.antecedent(), &[a]), b)),
        _ => Err(CalculusError::NotADivision(sequent.succedent().to_string())),
    }
}

/// Replaces every outermost product by its factors, recursively:
/// `D(p) = p`, `D(A/B) = A/B`, `D(A*B) = D(A), D(B)`. Output is sorted.
pub fn flatten_products(types: &[LType]) -> Vec<LType> {
    fn go(t: LType, out: &mut Vec<LType>) {
        match t.kind() {
            Kind::Prod(a, b) => {
                go(a, out);
                go(b, out);
            }
            _ => out.push(t),
        }
    }
    let mut out = Vec::new();
    for &t in types {
        go(t, &mut out);
    }
    out.sort_unstable();
    out
}
