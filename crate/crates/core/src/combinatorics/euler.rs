//! Euler transform between generator counts of a free commutative graded
//! algebra and the dimensions of its homogeneous parts:
//! `1 + Σ d_m t^m = Π_{m≥1} (1 - t^m)^{-a_m}`.
//!
//! Both directions go through `b_n = Σ_{k | n} k a_k`, which satisfies
//! `n d_n = Σ_{i=1..n} b_i d_{n-i}` (logarithmic derivative).

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `d_1..d_M` from `a_1..a_M`.
pub fn forward_euler(a: &[BigUint]) -> Vec<BigUint> {
    let n_max = a.len();
    let mut b = vec![BigUint::zero(); n_max + 1];
    for (k, ak) in a.iter().enumerate().map(|(i, ak)| (i + 1, ak)) {
        for n in (k..=n_max).step_by(k) {
            b[n] += ak * k;
        }
    }
    let mut d = vec![BigUint::one()];
    for n in 1..=n_max {
        let s: BigUint = (1..=n).map(|i| &b[i] * &d[n - i]).sum();
        d.push(s / n);
    }
    d.split_off(1)
}

/// Generator counts `a_1..a_M` reproducing the given dimensions `d_1..d_M`.
///
/// Fails when some `a_m` would be negative or non-integral, i.e. the
/// sequence is not the Hilbert function of a free algebra.
pub fn inverse_euler(d: &[BigUint]) -> Result<Vec<BigUint>> {
    let n_max = d.len();
    let dd: Vec<BigInt> = std::iter::once(BigInt::one())
        .chain(d.iter().map(|x| BigInt::from(x.clone())))
        .collect();
    let mut b = vec![BigInt::zero(); n_max + 1];
    let mut a = vec![BigInt::zero(); n_max + 1];
    for n in 1..=n_max {
        let mut bn = &dd[n] * n;
        for i in 1..n {
            bn -= &b[i] * &dd[n - i];
        }
        b[n] = bn.clone();
        let mut rest = bn;
        for k in (1..n).filter(|k| n % k == 0) {
            rest -= &a[k] * k;
        }
        let (q, r) = rest.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return Err(Error::NotFreeProfile { degree: n, value: format!("{rest}/{n}") });
        }
        if q.sign() == Sign::Minus {
            return Err(Error::NotFreeProfile { degree: n, value: q.to_string() });
        }
        a[n] = q;
    }
    Ok(a.into_iter().skip(1).map(|x| x.to_biguint().unwrap()).collect())
}
