//! A one-state system whose language `{(l, n) : n > 0, l <= n^2}` is not
//! semilinear.
//!
//! Coordinates are `a, b, alpha, omega, beta, rho, sigma`; the visible pair
//! is `(a, b) = (l, n)`. A derivation first stacks `n` copies of `b + rho`,
//! then runs `n` rounds, each trading up to all current `b`s for `a`s (rule
//! `c`), spending one `rho` (rule `d`) and restoring `b`s from `sigma`s
//! (rule `e`).

use serde::Serialize;

use crate::bvassam::{
    DerivationTree, DeriveError, EngineConfig, Fact, LBvassam, Region, Exploration, Step, StateId, SystemBuilder,
};
use crate::vector::Vector;

pub const A: usize = 0;
pub const B: usize = 1;
pub const ALPHA: usize = 2;
pub const OMEGA: usize = 3;
pub const BETA: usize = 4;
pub const RHO: usize = 5;
pub const SIGMA: usize = 6;

pub const COORDINATE_NAMES: [&str; 7] = ["a", "b", "alpha", "omega", "beta", "rho", "sigma"];

/// Unary rule indices, in the order `a`..`g`.
pub const RULE_A: usize = 0;
pub const RULE_B: usize = 1;
pub const RULE_C: usize = 2;
pub const RULE_D: usize = 3;
pub const RULE_E: usize = 4;
pub const RULE_F: usize = 5;
pub const RULE_G: usize = 6;

pub const RULE_NAMES: [&str; 7] = ["a", "b", "c", "d", "e", "f", "g"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadraticError {
    #[error("n must be positive")]
    ZeroN,
    #[error("expected {expected} round parameters, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("round {round}: {message}")]
    Constraint { round: usize, message: String },
    #[error("(l, n) = ({l}, {n}) is outside the language")]
    OutsideLanguage { l: u32, n: u32 },
    #[error(transparent)]
    Derive(#[from] DeriveError),
}

fn combo(parts: &[usize]) -> Vector {
    let mut v = Vector::zeros(7);
    for &i in parts {
        v.bump(i, 1);
    }
    v
}

/// The system with its single state `s`, axiom `s(alpha)` and `C = 4`.
pub fn build_quadratic() -> LBvassam {
    let mut b = SystemBuilder::new(7);
    let s = b.state("s");
    b.axiom(s, combo(&[ALPHA]));
    let rules: [(&[usize], &[usize]); 7] = [
        (&[ALPHA], &[ALPHA, B, RHO]),
        (&[ALPHA], &[OMEGA, B, RHO]),
        (&[OMEGA, B], &[OMEGA, SIGMA, A]),
        (&[OMEGA, RHO], &[BETA]),
        (&[BETA, SIGMA], &[BETA, B]),
        (&[BETA], &[OMEGA]),
        (&[OMEGA], &[]),
    ];
    for (d1, d2) in rules {
        b.unary(s, s, combo(d1), combo(d2));
    }
    LBvassam::new(b.build(s, 2).expect("well-formed"), 4).expect("C > 0")
}

/// `n > 0 && l <= n^2`
pub fn oracle(n: u32, l: u32) -> bool {
    n > 0 && (l as u64) <= (n as u64) * (n as u64)
}

/// The visible vector `(l, n)`.
pub fn visible(l: u32, n: u32) -> Vector {
    Vector::new(vec![l, n])
}

/// Round parameters `l_i = n` for `i <= l / n`, then the remainder, then
/// zeros; `l'_i = l_i`.
pub fn recipe(n: u32, l: u32) -> Result<(Vec<u32>, Vec<u32>), QuadraticError> {
    if n == 0 {
        return Err(QuadraticError::ZeroN);
    }
    if !oracle(n, l) {
        return Err(QuadraticError::OutsideLanguage { l, n });
    }
    let full = l / n;
    let rounds: Vec<u32> = (1..=n)
        .map(|i| match i.cmp(&(full + 1)) {
            std::cmp::Ordering::Less => n,
            std::cmp::Ordering::Equal => l - full * n,
            std::cmp::Ordering::Greater => 0,
        })
        .collect();
    Ok((rounds.clone(), rounds))
}

/// The rule sequence, bottom-up, of the completely typical derivation with
/// the given parameters.
pub fn typical_rules(n: u32, l: &[u32], l_prime: &[u32]) -> Result<Vec<usize>, QuadraticError> {
    if n == 0 {
        return Err(QuadraticError::ZeroN);
    }
    for got in [l.len(), l_prime.len()] {
        if got != n as usize {
            return Err(QuadraticError::LengthMismatch { expected: n as usize, got });
        }
    }
    let mut rules = vec![RULE_A; n as usize - 1];
    rules.push(RULE_B);
    let mut y = n;
    for i in 0..n as usize {
        if l[i] > y {
            return Err(QuadraticError::Constraint { round: i + 1, message: format!("l_i = {} exceeds y_i = {y}", l[i]) });
        }
        let spare = n - y + l[i];
        if l_prime[i] > spare {
            return Err(QuadraticError::Constraint {
                round: i + 1,
                message: format!("l'_i = {} exceeds n - y_i + l_i = {spare}", l_prime[i]),
            });
        }
        rules.extend(std::iter::repeat_n(RULE_C, l[i] as usize));
        rules.push(RULE_D);
        rules.extend(std::iter::repeat_n(RULE_E, l_prime[i] as usize));
        rules.push(RULE_F);
        y = y - l[i] + l_prime[i];
    }
    rules.push(RULE_G);
    Ok(rules)
}

/// Builds the tree obtained by applying unary `rules` (bottom-up) to axiom
/// `axiom`, or `None` if some step does not apply.
pub fn unary_chain(system: &LBvassam, axiom: usize, rules: &[usize]) -> Option<DerivationTree> {
    let sys = system.system();
    let a = sys.axioms().get(axiom)?;
    let mut tree = DerivationTree { fact: Fact::new(a.state, a.vector.clone()), step: Step::Axiom(axiom) };
    for &r in rules {
        let rule = sys.unary_rules().get(r)?;
        if rule.source != tree.fact.state {
            return None;
        }
        let base = tree.fact.vector.checked_sub(&rule.source_offset)?;
        tree = DerivationTree { fact: Fact::new(rule.target, &base + &rule.target_offset), step: Step::Unary(r, Box::new(tree)) };
    }
    Some(tree)
}

/// The completely typical derivation; its root is
/// `s(x_{n+1} a + y_{n+1} b + (n - y_{n+1}) sigma)`.
pub fn typical_derivation(n: u32, l: &[u32], l_prime: &[u32]) -> Result<DerivationTree, QuadraticError> {
    let rules = typical_rules(n, l, l_prime)?;
    Ok(unary_chain(&build_quadratic(), 0, &rules).expect("parameters were checked"))
}

/// Node count of the completely typical derivation: one axiom, `n - 1`
/// uses of rule `a`, one of `b`, `sum l_i + sum l'_i + 2n` in the rounds
/// and a final `g`.
pub fn typical_size(n: u32, l_sum: u32, l_prime_sum: u32) -> usize {
    (1 + (n - 1) + 1 + l_sum + l_prime_sum + 2 * n + 1) as usize
}

/// Shape of a derivation of this system, read bottom-up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Typicality {
    /// A completely typical derivation with its parameters.
    Complete { n: u32, l: Vec<u32>, l_prime: Vec<u32> },
    /// A proper initial part of a completely typical derivation.
    Prefix,
    /// An initial part closed early by rule `g`; its root keeps `rho`s or
    /// `alpha` and so is never accepted.
    ClosedEarly,
    /// All rounds done, then more uses of rule `c`, possibly closed by `g`.
    /// Nothing removes the new `sigma`s, so the root is never accepted.
    Overrun,
    Atypical { reason: String },
}

/// Parses the rule trace of a unary derivation against the staged shape.
pub fn classify(tree: &DerivationTree) -> Typicality {
    let Some((mut rules, axiom)) = tree.unary_chain() else {
        return Typicality::Atypical { reason: "binary step".into() };
    };
    if axiom != 0 {
        return Typicality::Atypical { reason: format!("axiom #{axiom}") };
    }
    rules.reverse();
    let mut it = rules.iter().copied().peekable();
    let mut n = 1u32;
    while it.peek() == Some(&RULE_A) {
        it.next();
        n += 1;
    }
    match it.next() {
        None => return Typicality::Prefix,
        Some(RULE_B) => {}
        Some(r) => return Typicality::Atypical { reason: format!("rule {} in the first stage", RULE_NAMES[r]) },
    }
    let (mut l, mut l_prime) = (Vec::new(), Vec::new());
    loop {
        if l.len() == n as usize {
            let mut extra = 0;
            while it.peek() == Some(&RULE_C) {
                it.next();
                extra += 1;
            }
            if extra > 0 {
                return match it.next() {
                    None => Typicality::Overrun,
                    Some(RULE_G) if it.peek().is_none() => Typicality::Overrun,
                    Some(r) => Typicality::Atypical { reason: format!("rule {} after the last round", RULE_NAMES[r]) },
                };
            }
            return match it.next() {
                None => Typicality::Prefix,
                Some(RULE_G) if it.peek().is_none() => Typicality::Complete { n, l, l_prime },
                Some(r) => Typicality::Atypical { reason: format!("rule {} after the last round", RULE_NAMES[r]) },
            };
        }
        let mut li = 0;
        while it.peek() == Some(&RULE_C) {
            it.next();
            li += 1;
        }
        match it.next() {
            None => return Typicality::Prefix,
            Some(RULE_D) => {}
            Some(RULE_G) if it.peek().is_none() => return Typicality::ClosedEarly,
            Some(r) => return Typicality::Atypical { reason: format!("rule {} in an omega phase", RULE_NAMES[r]) },
        }
        let mut lpi = 0;
        while it.peek() == Some(&RULE_E) {
            it.next();
            lpi += 1;
        }
        match it.next() {
            None => return Typicality::Prefix,
            Some(RULE_F) => {}
            Some(r) => return Typicality::Atypical { reason: format!("rule {} in a beta phase", RULE_NAMES[r]) },
        }
        l.push(li);
        l_prime.push(lpi);
        if l.len() < n as usize && it.peek() == Some(&RULE_G) {
            it.next();
            return if it.peek().is_none() {
                Typicality::ClosedEarly
            } else {
                Typicality::Atypical { reason: "steps after rule g".into() }
            };
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LanguagePoint {
    pub l: u32,
    pub n: u32,
    pub member: bool,
    pub expected: bool,
    /// Size of the smallest derivation of `s(l a + n b)`, if any exists
    /// within the explored bound.
    pub min_size: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LanguageReport {
    pub n_max: u32,
    pub l_max: u32,
    pub agree: bool,
    pub checked: usize,
    pub disagreements: Vec<LanguagePoint>,
}

/// Membership for every `(l, n)` with `n <= n_max`, `l <= l_max`, as
/// decided by the engine, together with the least derivation sizes.
pub fn language_grid(n_max: u32, l_max: u32, config: EngineConfig) -> Result<Vec<LanguagePoint>, QuadraticError> {
    let g = build_quadratic();
    let sys = g.system();
    let total = (n_max + l_max) as u64;
    let region = Region { upper: Vector::new(vec![l_max, n_max, 0, 0, 0, 0, 0]), total };
    let max_size = (g.bound() as u64 * total) as usize;
    let ex = Exploration::run(sys, &region, max_size, None, config)?;
    let mut out = Vec::new();
    for n in 0..=n_max {
        for l in 0..=l_max {
            let v = visible(l, n);
            let fact = Fact::new(StateId(0), v.iota(7).expect("2 <= 7"));
            let min_size = ex.min_size(&fact);
            let member = min_size.is_some_and(|s| s as u64 <= g.bound() as u64 * v.size());
            out.push(LanguagePoint { l, n, member, expected: oracle(n, l), min_size });
        }
    }
    Ok(out)
}

/// Compares engine membership with [`oracle`] on the grid.
pub fn check_language(n_max: u32, l_max: u32, config: EngineConfig) -> Result<LanguageReport, QuadraticError> {
    let points = language_grid(n_max, l_max, config)?;
    let disagreements: Vec<LanguagePoint> = points.iter().filter(|p| p.member != p.expected).cloned().collect();
    Ok(LanguageReport { n_max, l_max, agree: disagreements.is_empty(), checked: points.len(), disagreements })
}
