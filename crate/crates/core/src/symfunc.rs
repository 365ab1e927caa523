//! Exact symmetric functions stored in the power-sum basis.
//!
//! Every [`SymFunc`] is a finite sparse sum `Σ c_μ p_μ` with rational
//! coefficients. In this basis the Hall inner product is diagonal
//! (`⟨p_λ, p_μ⟩ = δ_{λμ} z_λ`) and plethysm by `p_r` is the substitution
//! `p_k ↦ p_{rk}`, so neither needs Schur-basis structure constants.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{character_value, partitions_of, z_of, Partition};
use crate::error::{Error, Result};

/// Class function on `S_m`, one value per cycle type.
pub type ClassFunction = BTreeMap<Partition, BigRational>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymFunc {
    terms: BTreeMap<Partition, BigRational>,
}

fn z_rat(mu: &Partition) -> BigRational {
    BigRational::from_integer(BigInt::from(z_of(mu)))
}

impl SymFunc {
    pub fn zero() -> Self {
        SymFunc::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut f = SymFunc::zero();
        f.add_term(Partition::empty(), c);
        f
    }

    /// `p_μ` with coefficient one.
    pub fn p_basis(mu: &Partition) -> Self {
        let mut f = SymFunc::zero();
        f.add_term(mu.clone(), BigRational::one());
        f
    }

    /// Schur function `s_λ = Σ_{μ ⊢ |λ|} z_μ^{-1} χ_λ(μ) p_μ`.
    pub fn schur(lambda: &Partition) -> Self {
        let mut f = SymFunc::zero();
        for mu in partitions_of(lambda.weight()) {
            let chi = character_value(lambda, &mu).expect("weights agree");
            f.add_term(mu.clone(), BigRational::new(chi, BigInt::from(z_of(&mu))));
        }
        f
    }

    /// Complete homogeneous `h_l = s_(l)`.
    pub fn h(l: usize) -> Self {
        Self::schur(&Partition::row(l))
    }

    /// Elementary `e_l = s_(1^l)`.
    pub fn e(l: usize) -> Self {
        Self::schur(&Partition::column(l))
    }

    fn add_term(&mut self, mu: Partition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mu) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mu: &Partition) -> BigRational {
        self.terms.get(mu).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in increasing partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree-`d` homogeneous component.
    pub fn component(&self, d: usize) -> SymFunc {
        SymFunc {
            terms: self
                .terms
                .iter()
                .filter(|(mu, _)| mu.weight() == d)
                .map(|(mu, c)| (mu.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero();
        }
        SymFunc { terms: self.terms.iter().map(|(mu, x)| (mu.clone(), x * c)).collect() }
    }

    /// Adams operation `p_k ↦ p_{rk}`, equivalently the plethysm `p_r[f]`.
    pub fn adams(&self, r: usize) -> SymFunc {
        assert!(r >= 1, "adams operation needs r >= 1");
        SymFunc { terms: self.terms.iter().map(|(mu, c)| (mu.scaled(r), c.clone())).collect() }
    }

    /// Plethysm `self[inner]`: linear in `self`, with `p_ρ[g] = Π_i p_{ρ_i}[g]`.
    pub fn plethysm(&self, inner: &SymFunc) -> SymFunc {
        let mut adams_cache: BTreeMap<usize, SymFunc> = BTreeMap::new();
        let mut out = SymFunc::zero();
        for (rho, c) in &self.terms {
            let mut prod = SymFunc::one();
            for &r in rho.parts() {
                let a = adams_cache.entry(r).or_insert_with(|| inner.adams(r));
                prod = &prod * &*a;
            }
            for (mu, x) in prod.terms {
                out.add_term(mu, x * c);
            }
        }
        out
    }

    /// Hall inner product, `Σ_μ f_μ g_μ z_μ`.
    pub fn hall_inner(&self, other: &SymFunc) -> BigRational {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small
            .terms
            .iter()
            .filter_map(|(mu, c)| large.terms.get(mu).map(|d| c * d * z_rat(mu)))
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    /// Schur expansion of the degree-`d` component: `ν ↦ ⟨self, s_ν⟩`, zeros omitted.
    pub fn schur_coefficients(&self, d: usize) -> BTreeMap<Partition, BigRational> {
        let comp = self.component(d);
        partitions_of(d)
            .into_iter()
            .filter_map(|nu| {
                let c = comp.hall_inner(&SymFunc::schur(&nu));
                (!c.is_zero()).then_some((nu, c))
            })
            .collect()
    }

    /// Debug records `{partition, num, den}`.
    pub fn to_records(&self) -> Vec<SymFuncRecord> {
        self.terms
            .iter()
            .map(|(mu, c)| SymFuncRecord {
                partition: mu.parts().to_vec(),
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_records(records: &[SymFuncRecord]) -> Result<SymFunc> {
        let mut f = SymFunc::zero();
        for r in records {
            let parse = |s: &str| {
                s.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer {s:?}")))
            };
            let den = parse(&r.den)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            f.add_term(Partition::new(r.partition.clone())?, BigRational::new(parse(&r.num)?, den));
        }
        Ok(f)
    }
}

/// Characteristic map `ch f = Σ_μ z_μ^{-1} f(μ) p_μ`.
pub fn ch_map(f: &ClassFunction) -> SymFunc {
    let mut out = SymFunc::zero();
    for (mu, v) in f {
        out.add_term(mu.clone(), v / z_rat(mu));
    }
    out
}

/// Inner product of class functions on `S_m`: `Σ_μ z_μ^{-1} f(μ) g(μ)`.
pub fn class_inner(f: &ClassFunction, g: &ClassFunction) -> BigRational {
    f.iter()
        .filter_map(|(mu, a)| g.get(mu).map(|b| a * b / z_rat(mu)))
        .fold(BigRational::zero(), |acc, x| acc + x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymFuncRecord {
    pub partition: Vec<usize>,
    pub num: String,
    pub den: String,
}

impl<'a> Add<&'a SymFunc> for &'a SymFunc {
    type Output = SymFunc;

    fn add(self, rhs: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        for (mu, c) in &rhs.terms {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SymFunc> for &'a SymFunc {
    type Output = SymFunc;

    fn sub(self, rhs: &SymFunc) -> SymFunc {
        let mut out = self.clone();
        for (mu, c) in &rhs.terms {
            out.add_term(mu.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &SymFunc {
    type Output = SymFunc;

    fn neg(self) -> SymFunc {
        SymFunc { terms: self.terms.iter().map(|(mu, c)| (mu.clone(), -c.clone())).collect() }
    }
}

impl<'a> Mul<&'a SymFunc> for &'a SymFunc {
    type Output = SymFunc;

    fn mul(self, rhs: &SymFunc) -> SymFunc {
        let mut out = SymFunc::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.union(b), x * y);
            }
        }
        out
    }
}
