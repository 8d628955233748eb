//! Hash-consed LP type terms.
//!
//! Every distinct type is allocated exactly once and lives for the rest of
//! the process, so an [`LType`] is a `Copy` handle whose equality and
//! hashing are pointer operations. Ordering is structural, which keeps
//! canonical multiset encodings independent of allocation order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

/// A type of the Lambek calculus with permutation.
#[derive(Clone, Copy)]
pub struct LType(&'static Node);

/// The top-level shape of a type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Prim(&'static str),
    /// `numerator / denominator`
    Div(LType, LType),
    /// `left * right`
    Prod(LType, LType),
}

struct Node {
    kind: Kind,
    length: usize,
    /// Signed primitive occurrence counts keyed by primitive id: `+1` per
    /// positive occurrence, `-1` per negative one, for the type placed in a
    /// succedent.
    charge: Box<[(u32, i32)]>,
}

#[derive(Default)]
struct Interner {
    prims: HashMap<&'static str, LType>,
    composite: HashMap<(u8, usize, usize), LType>,
    next_prim: u32,
}

fn interner() -> &'static Mutex<Interner> {
    static INTERNER: OnceLock<Mutex<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

fn leak(node: Node) -> LType {
    LType(Box::leak(Box::new(node)))
}

/// Returns true if `name` is a nonempty identifier over `[a-zA-Z0-9_]`.
pub fn is_identifier(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn merge_charge(a: &[(u32, i32)], b: &[(u32, i32)], sign: i32) -> Box<[(u32, i32)]> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&(pa, ca)), Some(&(pb, cb))) => match pa.cmp(&pb) {
                Ordering::Less => {
                    i += 1;
                    (pa, ca)
                }
                Ordering::Greater => {
                    j += 1;
                    (pb, sign * cb)
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (pa, ca + sign * cb)
                }
            },
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&(pb, cb))) => {
                j += 1;
                (pb, sign * cb)
            }
            (None, None) => unreachable!(),
        };
        if next.1 != 0 {
            out.push(next);
        }
    }
    out.into_boxed_slice()
}

impl LType {
    /// Interns a primitive type.
    ///
    /// # Panics
    ///
    /// Panics if `name` is not an identifier; use [`LType::try_prim`] for
    /// unchecked input.
    pub fn prim(name: &str) -> LType {
        Self::try_prim(name).unwrap_or_else(|| panic!("invalid primitive type name {name:?}"))
    }

    pub fn try_prim(name: &str) -> Option<LType> {
        if !is_identifier(name) {
            return None;
        }
        let mut table = interner().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(&t) = table.prims.get(name) {
            return Some(t);
        }
        let id = table.next_prim;
        table.next_prim += 1;
        let name: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let t = leak(Node {
            kind: Kind::Prim(name),
            length: 1,
            charge: Box::new([(id, 1)]),
        });
        table.prims.insert(name, t);
        Some(t)
    }

    /// `numerator / denominator`
    pub fn div(numerator: LType, denominator: LType) -> LType {
        Self::composite(0, numerator, denominator)
    }

    /// `left * right`
    pub fn prod(left: LType, right: LType) -> LType {
        Self::composite(1, left, right)
    }

    fn composite(tag: u8, a: LType, b: LType) -> LType {
        let key = (tag, a.addr(), b.addr());
        let mut table = interner().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(&t) = table.composite.get(&key) {
            return t;
        }
        let (kind, sign) = if tag == 0 {
            (Kind::Div(a, b), -1)
        } else {
            (Kind::Prod(a, b), 1)
        };
        let t = leak(Node {
            kind,
            length: a.length() + b.length() + 1,
            charge: merge_charge(&a.0.charge, &b.0.charge, sign),
        });
        table.composite.insert(key, t);
        t
    }

    /// Right-combed product of a nonempty list: `a * (b * (c * ...))`.
    pub fn prod_all(factors: &[LType]) -> Option<LType> {
        let (&last, init) = factors.split_last()?;
        Some(init.iter().rev().fold(last, |acc, &f| LType::prod(f, acc)))
    }

    /// Left-nested division chain: `base / d1 / d2 / ...`.
    pub fn div_all(base: LType, denominators: &[LType]) -> LType {
        denominators.iter().fold(base, |acc, &d| LType::div(acc, d))
    }

    fn addr(self) -> usize {
        self.0 as *const Node as usize
    }

    pub fn kind(self) -> Kind {
        self.0.kind
    }

    pub fn is_prim(self) -> bool {
        matches!(self.0.kind, Kind::Prim(_))
    }

    pub fn is_div(self) -> bool {
        matches!(self.0.kind, Kind::Div(..))
    }

    pub fn is_prod(self) -> bool {
        matches!(self.0.kind, Kind::Prod(..))
    }

    pub fn prim_name(self) -> Option<&'static str> {
        match self.0.kind {
            Kind::Prim(name) => Some(name),
            _ => None,
        }
    }

    pub(crate) fn charge(self) -> &'static [(u32, i32)] {
        &self.0.charge
    }

    /// `|p| = 1`, `|A o B| = |A| + |B| + 1`.
    pub fn length(self) -> usize {
        self.0.length
    }

    /// Nesting depth of divisions; `None` if the type contains a product.
    pub fn depth(self) -> Option<usize> {
        match self.0.kind {
            Kind::Prim(_) => Some(0),
            Kind::Div(a, b) => Some(a.depth()?.max(b.depth()? + 1)),
            Kind::Prod(..) => None,
        }
    }

    pub fn is_product_free(self) -> bool {
        match self.0.kind {
            Kind::Prim(_) => true,
            Kind::Div(a, b) => a.is_product_free() && b.is_product_free(),
            Kind::Prod(..) => false,
        }
    }

    /// Every primitive occurring in the type, in first-occurrence order.
    pub fn primitives(self) -> Vec<LType> {
        fn walk(t: LType, out: &mut Vec<LType>) {
            match t.kind() {
                Kind::Prim(_) => {
                    if !out.contains(&t) {
                        out.push(t)
                    }
                }
                Kind::Div(a, b) | Kind::Prod(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Canonical ASCII rendering; re-parses to the same type.
    pub fn render(self) -> String {
        self.to_string()
    }
}

impl PartialEq for LType {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for LType {}

impl Hash for LType {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.addr().hash(state)
    }
}

impl Ord for LType {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        fn rank(k: &Kind) -> u8 {
            match k {
                Kind::Prim(_) => 0,
                Kind::Div(..) => 1,
                Kind::Prod(..) => 2,
            }
        }
        match (self.kind(), other.kind()) {
            (Kind::Prim(a), Kind::Prim(b)) => a.cmp(b),
            (Kind::Div(a1, b1), Kind::Div(a2, b2)) | (Kind::Prod(a1, b1), Kind::Prod(a2, b2)) => {
                a1.cmp(&a2).then_with(|| b1.cmp(&b2))
            }
            (k1, k2) => rank(&k1).cmp(&rank(&k2)),
        }
    }
}

impl PartialOrd for LType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Kind::Prim(name) => f.write_str(name),
            // `/` is left-associative, so only a division denominator needs
            // parentheses; products are bracketed under a division for
            // readability.
            Kind::Div(a, b) => {
                if a.is_prod() {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                if b.is_prim() {
                    write!(f, "/{b}")
                } else {
                    write!(f, "/({b})")
                }
            }
            // `*` is right-associative and binds tighter than `/`.
            Kind::Prod(a, b) => {
                if a.is_prim() {
                    write!(f, "{a}*")?;
                } else {
                    write!(f, "({a})*")?;
                }
                if b.is_div() {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

impl fmt::Debug for LType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LType({self})")
    }
}

impl serde::Serialize for LType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for LType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        super::parse_type(&text).map_err(serde::de::Error::custom)
    }
}
