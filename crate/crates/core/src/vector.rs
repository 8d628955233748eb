//! Natural-number vectors.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A vector in `N^d`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<u32>);

impl Vector {
    pub fn new(coords: Vec<u32>) -> Vector {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Vector {
        Vector(vec![0; dim])
    }

    /// The standard basis vector `e_i` (zero-based `i`).
    pub fn unit(dim: usize, i: usize) -> Vector {
        let mut v = Vector::zeros(dim);
        v.0[i] = 1;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|v| = v_1 + ... + v_d`
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, value: u32) {
        self.0[i] = value;
    }

    pub fn bump(&mut self, i: usize, by: u32) {
        self.0[i] += by;
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Vector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self - other` if it stays in `N^d`.
    pub fn checked_sub(&self, other: &Vector) -> Option<Vector> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Vector)
    }

    pub fn scaled(&self, k: u32) -> Vector {
        Vector(self.0.iter().map(|c| c * k).collect())
    }

    /// Embeds `N^k` into `N^dim` by padding with zeros. `None` if the
    /// vector is longer than `dim`.
    pub fn iota(&self, dim: usize) -> Option<Vector> {
        if self.dim() > dim {
            return None;
        }
        let mut coords = self.0.clone();
        coords.resize(dim, 0);
        Some(Vector(coords))
    }

    /// The first `k` coordinates.
    pub fn truncate(&self, k: usize) -> Vector {
        Vector(self.0[..k].to_vec())
    }

    /// Every nonzero vector of `N^dim` with size at most `max_size`, in
    /// graded lexicographic order.
    pub fn all_up_to_size(dim: usize, max_size: u32) -> Vec<Vector> {
        let mut out = Vec::new();
        for size in 1..=max_size {
            let mut current = vec![0; dim];
            compositions(dim, 0, size, &mut current, &mut out);
        }
        out
    }

    /// Every nonzero vector componentwise below `cap`, in graded
    /// lexicographic order.
    pub fn all_below(cap: &Vector) -> Vec<Vector> {
        let total = cap.size() as u32;
        Vector::all_up_to_size(cap.dim(), total).into_iter().filter(|v| v.le(cap)).collect()
    }
}

fn compositions(dim: usize, i: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vector>) {
    if dim == 0 {
        return;
    }
    if i == dim - 1 {
        current[i] = remaining;
        out.push(Vector(current.clone()));
        return;
    }
    for c in 0..=remaining {
        current[i] = c;
        compositions(dim, i + 1, remaining - c, current, out);
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl AddAssign<&Vector> for Vector {
    fn add_assign(&mut self, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }
}

impl From<Vec<u32>> for Vector {
    fn from(coords: Vec<u32>) -> Vector {
        Vector(coords)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `1,2,3` (optionally wrapped in parentheses); the empty string is
/// the zero-dimensional vector.
impl FromStr for Vector {
    type Err = String;

    fn from_str(s: &str) -> Result<Vector, String> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(Vector::default());
        }
        s.split(',')
            .map(|part| part.trim().parse::<u32>().map_err(|e| format!("bad coordinate {part:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Vector)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[u32]) -> Vector {
        Vector::new(c.to_vec())
    }

    #[test]
    fn iota_pads_with_zeros() {
        assert_eq!(v(&[2, 1]).iota(4), Some(v(&[2, 1, 0, 0])));
        assert_eq!(v(&[5]).iota(1), Some(v(&[5])));
        assert_eq!(v(&[1, 2]).iota(1), None);
        assert_eq!(v(&[3, 4]).iota(5).unwrap().size(), 7);
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&v(&[1, 2]) + &v(&[3, 0]), v(&[4, 2]));
        assert_eq!(v(&[1, 2]).checked_sub(&v(&[1, 1])), Some(v(&[0, 1])));
        assert_eq!(v(&[1, 2]).checked_sub(&v(&[2, 0])), None);
        assert!(v(&[1, 2]).le(&v(&[1, 3])));
        assert!(!v(&[1, 2]).le(&v(&[0, 3])));
    }

    #[test]
    fn graded_order() {
        let all = Vector::all_up_to_size(2, 2);
        assert_eq!(all, vec![v(&[0, 1]), v(&[1, 0]), v(&[0, 2]), v(&[1, 1]), v(&[2, 0])]);
        assert_eq!(Vector::all_below(&v(&[1, 1])), vec![v(&[0, 1]), v(&[1, 0]), v(&[1, 1])]);
        assert!(Vector::all_up_to_size(0, 3).is_empty());
    }

    #[test]
    fn parsing() {
        assert_eq!("4,2".parse::<Vector>().unwrap(), v(&[4, 2]));
        assert_eq!("(1, 0,3)".parse::<Vector>().unwrap(), v(&[1, 0, 3]));
        assert!("1,x".parse::<Vector>().is_err());
        assert_eq!(v(&[4, 2]).to_string(), "(4,2)");
    }
}
