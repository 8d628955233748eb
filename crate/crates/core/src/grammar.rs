//! LP-grammars over multiset words.
//!
//! A multiset word `a_1, ..., a_n` belongs to `L(G)` when some choice of
//! lexicon types `a_i |> T_i` makes `T_1, ..., T_n -> S` derivable.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::calculus::{Kind, LType, ProofTree, ProveError, Prover, ProverConfig, Sequent};
use crate::vector::Vector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrammarError {
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(String),
    #[error("symbol {0:?} occurs twice in the alphabet")]
    DuplicateSymbol(String),
    #[error("symbol names must be nonempty")]
    EmptySymbol,
    #[error("words must contain at least one symbol")]
    EmptyWord,
    #[error("the zero vector has no preimage in the nonempty multisets")]
    ZeroVector,
    #[error("vector has dimension {got}, alphabet has {expected} symbols")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("maximum word length must be at least 1")]
    ZeroLength,
    #[error(transparent)]
    Prove(#[from] ProveError),
    #[error("invalid grammar file: {0}")]
    Format(String),
}

/// `G = <Sigma, S, |>`, with a fixed symbol order that defines Parikh
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpGrammar {
    alphabet: Vec<String>,
    lexicon: Vec<(usize, LType)>,
    distinguished: LType,
}

impl LpGrammar {
    pub fn new<S: Into<String>>(
        alphabet: impl IntoIterator<Item = S>,
        lexicon: impl IntoIterator<Item = (S, LType)>,
        distinguished: LType,
    ) -> Result<LpGrammar, GrammarError> {
        let alphabet: Vec<String> = alphabet.into_iter().map(Into::into).collect();
        for (i, a) in alphabet.iter().enumerate() {
            if a.is_empty() {
                return Err(GrammarError::EmptySymbol);
            }
            if alphabet[..i].contains(a) {
                return Err(GrammarError::DuplicateSymbol(a.clone()));
            }
        }
        let mut entries = Vec::new();
        for (symbol, t) in lexicon {
            let symbol = symbol.into();
            let i = alphabet
                .iter()
                .position(|a| *a == symbol)
                .ok_or(GrammarError::UnknownSymbol(symbol))?;
            if !entries.contains(&(i, t)) {
                entries.push((i, t));
            }
        }
        Ok(LpGrammar { alphabet, lexicon: entries, distinguished })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn distinguished(&self) -> LType {
        self.distinguished
    }

    pub fn lexicon(&self) -> impl Iterator<Item = (&str, LType)> + '_ {
        self.lexicon.iter().map(|&(i, t)| (self.alphabet[i].as_str(), t))
    }

    pub fn lexicon_len(&self) -> usize {
        self.lexicon.len()
    }

    pub fn symbol_index(&self, symbol: &str) -> Option<usize> {
        self.alphabet.iter().position(|a| a == symbol)
    }

    /// Types assigned to the `i`-th symbol, in lexicon order.
    pub fn entries(&self, i: usize) -> Vec<LType> {
        self.lexicon.iter().filter(|e| e.0 == i).map(|e| e.1).collect()
    }

    /// `Tp(G)`: every lexicon type plus the distinguished type.
    pub fn types(&self) -> BTreeSet<LType> {
        let mut out: BTreeSet<LType> = self.lexicon.iter().map(|e| e.1).collect();
        out.insert(self.distinguished);
        out
    }

    pub fn max_type_length(&self) -> usize {
        self.types().iter().map(|t| t.length()).max().unwrap_or(0)
    }

    pub fn to_file(&self) -> GrammarFile {
        GrammarFile {
            alphabet: self.alphabet.clone(),
            distinguished: self.distinguished,
            lexicon: self.lexicon().map(|(a, t)| (a.to_owned(), t)).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<LpGrammar, GrammarError> {
        let file: GrammarFile =
            serde_json::from_str(text).map_err(|e| GrammarError::Format(e.to_string()))?;
        file.into_grammar()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("grammar serializes")
    }
}

/// On-disk form: `{alphabet: [..], distinguished: "S", lexicon: [[a, "T"], ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrammarFile {
    pub alphabet: Vec<String>,
    pub distinguished: LType,
    pub lexicon: Vec<(String, LType)>,
}

impl GrammarFile {
    pub fn into_grammar(self) -> Result<LpGrammar, GrammarError> {
        LpGrammar::new(self.alphabet, self.lexicon, self.distinguished)
    }
}

/// A nonempty finite multiset of symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultisetWord(BTreeMap<String, u32>);

impl MultisetWord {
    pub fn from_symbols<S: AsRef<str>>(symbols: impl IntoIterator<Item = S>) -> Result<Self, GrammarError> {
        let mut counts = BTreeMap::new();
        for s in symbols {
            let s = s.as_ref();
            if s.is_empty() {
                return Err(GrammarError::EmptySymbol);
            }
            *counts.entry(s.to_owned()).or_insert(0) += 1;
        }
        if counts.is_empty() {
            return Err(GrammarError::EmptyWord);
        }
        Ok(MultisetWord(counts))
    }

    pub fn count(&self, symbol: &str) -> u32 {
        self.0.get(symbol).copied().unwrap_or(0)
    }

    /// Cardinality `|w|`.
    pub fn len(&self) -> usize {
        self.0.values().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, u32)> + '_ {
        self.0.iter().map(|(s, &c)| (s.as_str(), c))
    }
}

impl fmt::Display for MultisetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        f.write_str("{")?;
        for (s, c) in self.symbols() {
            for _ in 0..c {
                if !first {
                    f.write_str(",")?;
                }
                first = false;
                f.write_str(s)?;
            }
        }
        f.write_str("}")
    }
}

/// Parses a comma-separated symbol list such as `a,a,b`.
impl FromStr for MultisetWord {
    type Err = GrammarError;

    fn from_str(s: &str) -> Result<Self, GrammarError> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        if s.trim().is_empty() {
            return Err(GrammarError::EmptyWord);
        }
        MultisetWord::from_symbols(s.split(',').map(str::trim))
    }
}

/// `pi(w) = (|w|_{a_1}, ..., |w|_{a_k})`.
pub fn parikh<S: AsRef<str>>(word: &MultisetWord, alphabet: &[S]) -> Result<Vector, GrammarError> {
    for (s, _) in word.symbols() {
        if !alphabet.iter().any(|a| a.as_ref() == s) {
            return Err(GrammarError::UnknownSymbol(s.to_owned()));
        }
    }
    Ok(Vector::new(alphabet.iter().map(|a| word.count(a.as_ref())).collect()))
}

/// The unique multiset with Parikh image `v`.
pub fn inverse_parikh<S: AsRef<str>>(v: &Vector, alphabet: &[S]) -> Result<MultisetWord, GrammarError> {
    if v.dim() != alphabet.len() {
        return Err(GrammarError::DimensionMismatch { expected: alphabet.len(), got: v.dim() });
    }
    if v.is_zero() {
        return Err(GrammarError::ZeroVector);
    }
    let symbols = alphabet
        .iter()
        .zip(v.as_slice())
        .flat_map(|(a, &c)| std::iter::repeat_n(a.as_ref(), c as usize));
    MultisetWord::from_symbols(symbols)
}

/// Positive and negative subtypes of a grammar.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubtypeSets {
    pub positive: BTreeSet<LType>,
    pub negative: BTreeSet<LType>,
}

impl SubtypeSets {
    /// `STp(G) = STp+(G) u STp-(G)`.
    pub fn all(&self) -> BTreeSet<LType> {
        self.positive.union(&self.negative).copied().collect()
    }
}

/// Least sets with lexicon types negative, `S` positive, `A/B` passing its
/// polarity to `A` and the opposite one to `B`, and `A*B` passing its
/// polarity to both factors.
pub fn subtypes(g: &LpGrammar) -> SubtypeSets {
    let mut sets = SubtypeSets::default();
    let mut work: Vec<(LType, bool)> = vec![(g.distinguished, true)];
    work.extend(g.lexicon.iter().map(|&(_, t)| (t, false)));
    while let Some((t, positive)) = work.pop() {
        let set = if positive { &mut sets.positive } else { &mut sets.negative };
        if !set.insert(t) {
            continue;
        }
        match t.kind() {
            Kind::Prim(_) => {}
            Kind::Div(a, b) => {
                work.push((a, positive));
                work.push((b, !positive));
            }
            Kind::Prod(a, b) => {
                work.push((a, positive));
                work.push((b, positive));
            }
        }
    }
    sets
}

/// A successful type assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// One `(symbol, type)` pair per symbol occurrence.
    pub assignment: Vec<(String, LType)>,
    /// The chosen types as a sorted multiset.
    pub types: Vec<LType>,
    pub proof: ProofTree,
}

/// Membership checking with a shared prover, for batches of words.
#[derive(Debug)]
pub struct Recognizer<'g> {
    grammar: &'g LpGrammar,
    prover: Prover,
}

impl<'g> Recognizer<'g> {
    pub fn new(grammar: &'g LpGrammar, config: ProverConfig) -> Self {
        Recognizer { grammar, prover: Prover::new(config) }
    }

    pub fn membership(&mut self, word: &MultisetWord) -> Result<Option<Witness>, GrammarError> {
        let v = parikh(word, &self.grammar.alphabet)?;
        self.membership_vector(&v)
    }

    /// Membership of `pi^{-1}(v)`.
    pub fn membership_vector(&mut self, v: &Vector) -> Result<Option<Witness>, GrammarError> {
        let g = self.grammar;
        if v.dim() != g.alphabet.len() {
            return Err(GrammarError::DimensionMismatch { expected: g.alphabet.len(), got: v.dim() });
        }
        if v.is_zero() {
            return Err(GrammarError::EmptyWord);
        }
        // per symbol: every multiset of lexicon entries of the right size
        let mut choices: Vec<(usize, Vec<Vec<LType>>)> = Vec::new();
        for (i, &count) in v.as_slice().iter().enumerate() {
            if count == 0 {
                continue;
            }
            let combos = multichoose(&g.entries(i), count as usize);
            if combos.is_empty() {
                return Ok(None);
            }
            choices.push((i, combos));
        }

        let mut seen: HashSet<Vec<LType>> = HashSet::new();
        let mut odometer = vec![0usize; choices.len()];
        loop {
            let mut antecedent: Vec<LType> = Vec::new();
            for (slot, &pick) in odometer.iter().enumerate() {
                antecedent.extend_from_slice(&choices[slot].1[pick]);
            }
            antecedent.sort_unstable();
            if seen.insert(antecedent.clone()) {
                let sequent = Sequent::new(antecedent.iter().copied(), g.distinguished).expect("nonempty");
                if let Some(proof) = self.prover.prove(&sequent)? {
                    let assignment = odometer
                        .iter()
                        .enumerate()
                        .flat_map(|(slot, &pick)| {
                            let symbol = &g.alphabet[choices[slot].0];
                            choices[slot].1[pick].iter().map(move |&t| (symbol.clone(), t))
                        })
                        .collect();
                    return Ok(Some(Witness { assignment, types: antecedent, proof }));
                }
            }
            // advance
            let mut slot = odometer.len();
            loop {
                if slot == 0 {
                    return Ok(None);
                }
                slot -= 1;
                odometer[slot] += 1;
                if odometer[slot] < choices[slot].1.len() {
                    break;
                }
                odometer[slot] = 0;
            }
        }
    }
}

/// Multisets of size `k` drawn from `items`, as sorted index-ordered lists.
fn multichoose(items: &[LType], k: usize) -> Vec<Vec<LType>> {
    fn go(items: &[LType], from: usize, k: usize, cur: &mut Vec<LType>, out: &mut Vec<Vec<LType>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            go(items, i, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, 0, k, &mut Vec::new(), &mut out);
    out
}

pub fn membership(g: &LpGrammar, word: &MultisetWord) -> Result<Option<Witness>, GrammarError> {
    Recognizer::new(g, ProverConfig::default()).membership(word)
}

/// Parikh vectors of `L(G)` among the given candidates, in input order.
pub fn members_among(
    g: &LpGrammar,
    candidates: &[Vector],
    config: ProverConfig,
) -> Result<Vec<Vector>, GrammarError> {
    let mut recognizer = Recognizer::new(g, config);
    let mut out = Vec::new();
    for v in candidates {
        if recognizer.membership_vector(v)?.is_some() {
            out.push(v.clone());
        }
    }
    Ok(out)
}

/// All members of `L(G)` with at most `max_len` symbols, ordered by
/// Parikh vector in graded lexicographic order.
pub fn enumerate_language(g: &LpGrammar, max_len: usize) -> Result<Vec<MultisetWord>, GrammarError> {
    enumerate_language_with(g, max_len, ProverConfig::default())
}

pub fn enumerate_language_with(
    g: &LpGrammar,
    max_len: usize,
    config: ProverConfig,
) -> Result<Vec<MultisetWord>, GrammarError> {
    if max_len == 0 {
        return Err(GrammarError::ZeroLength);
    }
    let candidates = Vector::all_up_to_size(g.alphabet.len(), max_len as u32);
    members_among(g, &candidates, config)?
        .iter()
        .map(|v| inverse_parikh(v, &g.alphabet))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::parse_type;

    fn t(s: &str) -> LType {
        parse_type(s).unwrap()
    }

    fn w(s: &str) -> MultisetWord {
        s.parse().unwrap()
    }

    fn grammar(lexicon: &[(&str, &str)], s: &str) -> LpGrammar {
        let mut alphabet: Vec<&str> = lexicon.iter().map(|e| e.0).collect();
        alphabet.dedup();
        LpGrammar::new(alphabet, lexicon.iter().map(|&(a, ty)| (a, t(ty))), t(s)).unwrap()
    }

    #[test]
    fn single_symbol_grammar() {
        let g = grammar(&[("a", "S")], "S");
        assert!(membership(&g, &w("a")).unwrap().is_some());
        assert!(membership(&g, &w("a,a")).unwrap().is_none());
        assert_eq!(enumerate_language(&g, 2).unwrap(), vec![w("a")]);
    }

    #[test]
    fn application_grammar() {
        let g = grammar(&[("a", "p"), ("b", "S/p")], "S");
        let witness = membership(&g, &w("a,b")).unwrap().unwrap();
        witness.proof.check().unwrap();
        assert_eq!(witness.types, vec![t("p"), t("S/p")]);
        assert!(membership(&g, &w("a")).unwrap().is_none());
        assert!(membership(&g, &w("a,a,b")).unwrap().is_none());
        // S/p, S/p, p, p -> S has two copies of S on the left
        assert_eq!(enumerate_language(&g, 4).unwrap(), vec![w("a,b")]);
    }

    #[test]
    fn errors() {
        let g = grammar(&[("a", "S")], "S");
        assert_eq!(membership(&g, &w("c")), Err(GrammarError::UnknownSymbol("c".into())));
        assert_eq!(enumerate_language(&g, 0), Err(GrammarError::ZeroLength));
        assert!(matches!(
            LpGrammar::new(["a", "a"], Vec::<(&str, LType)>::new(), t("S")),
            Err(GrammarError::DuplicateSymbol(_))
        ));
        assert!(matches!(
            LpGrammar::new(["a"], [("b", t("S"))], t("S")),
            Err(GrammarError::UnknownSymbol(_))
        ));
        assert_eq!("".parse::<MultisetWord>(), Err(GrammarError::EmptyWord));
    }

    #[test]
    fn subtype_polarities() {
        let s = subtypes(&grammar(&[("a", "p")], "p"));
        assert_eq!(s.positive, [t("p")].into());
        assert_eq!(s.negative, [t("p")].into());

        let s = subtypes(&grammar(&[("a", "q/p")], "q"));
        assert_eq!(s.negative, [t("q/p"), t("q")].into());
        assert_eq!(s.positive, [t("q"), t("p")].into());

        let s = subtypes(&grammar(&[("a", "(p*r)/q")], "s"));
        assert_eq!(s.negative, [t("(p*r)/q"), t("p*r"), t("p"), t("r")].into());
        assert_eq!(s.positive, [t("s"), t("q")].into());
        assert_eq!(s.all().len(), 6);
    }

    #[test]
    fn parikh_maps() {
        let ab = ["a", "b"];
        assert_eq!(parikh(&w("a"), &ab).unwrap(), Vector::new(vec![1, 0]));
        assert_eq!(parikh(&w("a,a,b"), &ab).unwrap(), Vector::new(vec![2, 1]));
        assert_eq!(parikh(&w("b,b,b"), &ab).unwrap(), Vector::new(vec![0, 3]));
        assert!(parikh(&w("c"), &ab).is_err());

        assert_eq!(inverse_parikh(&Vector::new(vec![2, 1]), &ab).unwrap(), w("a,a,b"));
        assert_eq!(inverse_parikh(&Vector::new(vec![0, 1]), &ab).unwrap(), w("b"));
        assert_eq!(inverse_parikh(&Vector::new(vec![3, 0]), &ab).unwrap(), w("a,a,a"));
        assert_eq!(inverse_parikh(&Vector::new(vec![0, 0]), &ab), Err(GrammarError::ZeroVector));
    }

    #[test]
    fn json_round_trip() {
        let g = grammar(&[("a", "p"), ("b", "S/p"), ("b", "(S/p)*p")], "S");
        let back = LpGrammar::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let raw = r#"{"alphabet": ["a"], "distinguished": "S", "lexicon": [["a", "S/"]]}"#;
        assert!(matches!(LpGrammar::from_json(raw), Err(GrammarError::Format(_))));
    }
}
