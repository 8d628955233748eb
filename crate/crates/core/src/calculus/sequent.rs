use std::fmt;

use super::{CalculusError, LType};

/// `A1, ..., An -> B` with the antecedent kept as a sorted multiset, so the
/// permutation rule is built into equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    antecedent: Vec<LType>,
    succedent: LType,
}

impl Sequent {
    pub fn new(
        antecedent: impl IntoIterator<Item = LType>,
        succedent: LType,
    ) -> Result<Sequent, CalculusError> {
        let mut antecedent: Vec<LType> = antecedent.into_iter().collect();
        if antecedent.is_empty() {
            return Err(CalculusError::EmptyAntecedent);
        }
        antecedent.sort_unstable();
        Ok(Sequent { antecedent, succedent })
    }

    /// Caller guarantees `antecedent` is sorted and nonempty.
    pub(crate) fn from_sorted(antecedent: Vec<LType>, succedent: LType) -> Sequent {
        debug_assert!(!antecedent.is_empty());
        debug_assert!(antecedent.windows(2).all(|w| w[0] <= w[1]));
        Sequent { antecedent, succedent }
    }

    /// The antecedent in canonical (sorted) order.
    pub fn antecedent(&self) -> &[LType] {
        &self.antecedent
    }

    pub fn succedent(&self) -> LType {
        self.succedent
    }

    /// Distinct antecedent members with their multiplicities.
    pub fn counts(&self) -> Vec<(LType, usize)> {
        group(&self.antecedent)
    }

    pub fn multiplicity(&self, t: LType) -> usize {
        self.antecedent.iter().filter(|&&a| a == t).count()
    }

    /// Sum of the lengths of all members, succedent included.
    pub fn length(&self) -> usize {
        self.antecedent.iter().map(|t| t.length()).sum::<usize>() + self.succedent.length()
    }

    /// Whether every primitive occurs as often positively as negatively.
    /// This is necessary for derivability: each axiom `p -> p` pairs one
    /// occurrence of each polarity.
    pub fn is_balanced(&self) -> bool {
        balanced(&self.antecedent, self.succedent)
    }
}

pub(crate) fn group(sorted: &[LType]) -> Vec<(LType, usize)> {
    let mut out: Vec<(LType, usize)> = Vec::new();
    for &t in sorted {
        match out.last_mut() {
            Some((last, n)) if *last == t => *n += 1,
            _ => out.push((t, 1)),
        }
    }
    out
}

pub(crate) fn balanced(antecedent: &[LType], succedent: LType) -> bool {
    let mut total: Vec<(u32, i32)> = succedent.charge().to_vec();
    for t in antecedent {
        for &(p, c) in t.charge() {
            match total.iter_mut().find(|(q, _)| *q == p) {
                Some((_, acc)) => *acc -= c,
                None => total.push((p, -c)),
            }
        }
    }
    total.iter().all(|&(_, c)| c == 0)
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.antecedent.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, " -> {}", self.succedent)
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequent({self})")
    }
}

impl serde::Serialize for Sequent {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Sequent {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        super::parse_sequent(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{parse_sequent, parse_type};

    #[test]
    fn permutation_is_equality() {
        let a = parse_sequent("p, q/r, p*q -> s").unwrap();
        let b = parse_sequent("p*q, p, q/r -> s").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn empty_antecedent_rejected() {
        assert_eq!(
            Sequent::new(Vec::new(), parse_type("p").unwrap()),
            Err(CalculusError::EmptyAntecedent)
        );
    }

    #[test]
    fn lengths() {
        assert_eq!(parse_sequent("p -> p").unwrap().length(), 2);
        assert_eq!(parse_sequent("p, q -> p*q").unwrap().length(), 5);
        assert_eq!(parse_sequent("f/g1/q, q -> f").unwrap().length(), 7);
    }

    #[test]
    fn balance() {
        assert!(parse_sequent("p/q, q -> p").unwrap().is_balanced());
        assert!(!parse_sequent("p, q -> p").unwrap().is_balanced());
        assert!(parse_sequent("p, p/p -> p").unwrap().is_balanced());
    }

    #[test]
    fn counts_group_duplicates() {
        let s = parse_sequent("p, q, p -> r").unwrap();
        let p = parse_type("p").unwrap();
        assert_eq!(s.counts(), vec![(p, 2), (parse_type("q").unwrap(), 1)]);
        assert_eq!(s.multiplicity(p), 2);
    }
}
