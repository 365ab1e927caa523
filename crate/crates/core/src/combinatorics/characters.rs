//! Irreducible characters of symmetric groups via the Murnaghan–Nakayama rule.
//!
//! Partitions are handled through their beta-sets (first-column hook
//! lengths): removing a border strip of length `r` is moving one bead from
//! `b` to an empty position `b - r`, with sign `(-1)^{beads strictly between}`.
//!
//! Values are memoized on `(shape, remaining cycle type)` in a process-wide
//! table behind a mutex, so concurrent callers always observe the same values.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{partitions_of, Partition};
use crate::error::{Error, Result};

type Memo = HashMap<(Partition, Partition), BigInt>;

fn memo() -> &'static Mutex<Memo> {
    static MEMO: OnceLock<Mutex<Memo>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `χ_λ(μ)`, the irreducible character labelled by `lambda` on the class of
/// cycle type `mu`.
pub fn character_value(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch(format!(
            "character χ_{lambda} evaluated on class {mu} of a different weight"
        )));
    }
    Ok(mn(lambda, mu.parts()))
}

fn mn(lambda: &Partition, mu: &[usize]) -> BigInt {
    if mu.is_empty() {
        return if lambda.is_empty() { BigInt::one() } else { BigInt::zero() };
    }
    // Trivial character short-circuit keeps the cache small for row shapes.
    if lambda.len() == 1 {
        return BigInt::one();
    }
    let key = (lambda.clone(), Partition::from_unsorted(mu.to_vec()));
    if let Some(v) = memo().lock().unwrap().get(&key) {
        return v.clone();
    }

    let r = mu[0];
    let rest = &mu[1..];
    let len = lambda.len();
    let beta: Vec<usize> = lambda.parts().iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let shape = Partition::from_unsorted(
            moved.iter().enumerate().map(|(i, &x)| x - (len - 1 - i)).collect(),
        );
        let term = mn(&shape, rest);
        if between % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }

    memo().lock().unwrap().insert(key, total.clone());
    total
}

/// Full character table of `S_m`; rows and columns follow [`partitions_of`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub partitions: Vec<Partition>,
    /// `values[i][j] = χ_{partitions[i]}(partitions[j])`.
    pub values: Vec<Vec<BigInt>>,
}

impl CharacterTable {
    pub fn get(&self, lambda: &Partition, mu: &Partition) -> Option<&BigInt> {
        let i = self.partitions.iter().position(|p| p == lambda)?;
        let j = self.partitions.iter().position(|p| p == mu)?;
        Some(&self.values[i][j])
    }
}

pub fn character_table(m: usize) -> CharacterTable {
    let partitions = partitions_of(m);
    let values = partitions
        .iter()
        .map(|lambda| partitions.iter().map(|mu| mn(lambda, mu.parts())).collect())
        .collect();
    CharacterTable { partitions, values }
}
