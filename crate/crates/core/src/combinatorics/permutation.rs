use std::fmt;

use serde::{Deserialize, Serialize};

use super::Partition;
use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` in one-line notation.
///
/// Composition follows the functional convention: `a.compose(&b)` maps
/// `x` to `a(b(x))`. Cycle notation in [`fmt::Display`] and
/// [`Permutation::from_cycles_str`] is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidArgument(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation of `n` points from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x == 0 || x > n || y == 0 || y > n || touched[x - 1] {
                    return Err(Error::InvalidArgument(format!("bad cycle {cycle:?} on {n} points")));
                }
                touched[x - 1] = true;
                images[x - 1] = y - 1;
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(123564)` or `(1,7,8,9,6)(2)`.
    /// Without commas every digit is its own point.
    pub fn from_cycles_str(n: usize, s: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        for chunk in s.split('(').map(str::trim).filter(|c| !c.is_empty()) {
            let body = chunk
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unterminated cycle in {s:?}")))?;
            let points: Option<Vec<usize>> = if body.contains(',') {
                body.split(',').map(|t| t.trim().parse().ok()).collect()
            } else {
                body.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
            };
            let points = points.ok_or_else(|| Error::Parse(format!("bad cycle {body:?}")))?;
            cycles.push(points);
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(n, &refs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), other.len());
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// Disjoint cycles (0-based), each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles().iter().map(Vec::len).collect())
    }

    /// +1 or -1.
    pub fn sign(&self) -> i32 {
        let even_cycles = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Every permutation of `n` points in lexicographic order.
    pub fn all(n: usize) -> Permutations {
        Permutations { next: Some((0..n).collect()) }
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.len() > 9;
        for cycle in self.cycles() {
            if cycle.len() == 1 && !(self.is_identity() && cycle[0] == 0) {
                continue;
            }
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if wide && i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Iterator over all permutations of a fixed size, lexicographic order.
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let n = succ.len();
        if n > 1 {
            if let Some(i) = (0..n - 1).rev().find(|&i| succ[i] < succ[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| succ[j] > succ[i]).unwrap();
                succ.swap(i, j);
                succ[i + 1..].reverse();
                self.next = Some(succ);
            }
        }
        Some(Permutation(current))
    }
}
