//! Stable dimensions of the homogeneous parts of the invariant algebra.
//!
//! For types `λ_1..λ_k` the degree-`m` dimension is
//!
//! ```text
//! d_m = Σ_{ρ,ρ' ⊢ m} z_ρ^{-1} z_ρ'^{-1} Π_j ⟨p_ρ[s_λj], p_ρ'[s_λj]⟩
//! ```
//!
//! where `p_ρ[f] = Π_i f(p_{ρ_i}-substituted)`. This is the square norm of the
//! vector `c_ν⃗ = Σ_ρ z_ρ^{-1} Π_j ⟨p_ρ[s_λj], s_νj⟩`, which in turn equals the
//! multiplicity `Σ_μ⃗ C_(m)μ⃗ Π_j M_λjμjνj`. [`stable_dim_by_multiplicities`]
//! evaluates the latter form literally and is kept as an independent route.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{character_value, inverse_euler, partitions_of, z_of, Partition};
use crate::error::{Error, Result};
use crate::symfunc::SymFunc;

/// Exchange statistics of one particle type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistics {
    Boson,
    Fermion,
    General,
}

/// Ordered list of particle types `λ_1..λ_k`.
///
/// Textual form: `b3` (three bosons), `f4` (four fermions), `p2,1` (general
/// shape), comma-joined for several types; a `+mixed` suffix appends `(1)`.
/// A one-particle type `(1)` is printed as `b1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ParticleSpec {
    types: Vec<Partition>,
}

impl ParticleSpec {
    pub fn new(types: Vec<Partition>) -> Result<Self> {
        if types.is_empty() {
            return Err(Error::InvalidArgument("a particle spec needs at least one type".into()));
        }
        if types.iter().any(Partition::is_empty) {
            return Err(Error::InvalidArgument("particle types must be nonempty partitions".into()));
        }
        Ok(ParticleSpec { types })
    }

    pub fn bosons(l: usize) -> Self {
        Self::new(vec![Partition::row(l)]).expect("l >= 1")
    }

    pub fn fermions(l: usize) -> Self {
        Self::new(vec![Partition::column(l)]).expect("l >= 1")
    }

    pub fn types(&self) -> &[Partition] {
        &self.types
    }

    /// Number of types `k`.
    pub fn k(&self) -> usize {
        self.types.len()
    }

    /// `l_j = |λ_j|`.
    pub fn line_sums(&self) -> Vec<usize> {
        self.types.iter().map(Partition::weight).collect()
    }

    pub fn statistics(&self, j: usize) -> Statistics {
        let t = &self.types[j];
        if t.is_row() {
            Statistics::Boson
        } else if t.is_column() {
            Statistics::Fermion
        } else {
            Statistics::General
        }
    }

    /// True when every type is a single row or a single column.
    pub fn is_row_or_column(&self) -> bool {
        (0..self.k()).all(|j| self.statistics(j) != Statistics::General)
    }

    pub(crate) fn require_row_or_column(&self, what: &str) -> Result<()> {
        if self.is_row_or_column() {
            Ok(())
        } else {
            Err(Error::UnsupportedSpec(format!(
                "{what} is only defined when every type is bosonic or fermionic; {self} has a general shape"
            )))
        }
    }
}

impl fmt::Display for ParticleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, t) in self.types.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            match self.statistics(j) {
                Statistics::Boson => write!(f, "b{}", t.weight())?,
                Statistics::Fermion => write!(f, "f{}", t.weight())?,
                Statistics::General => {
                    let parts: Vec<String> = t.parts().iter().map(usize::to_string).collect();
                    write!(f, "p{}", parts.join(","))?
                }
            }
        }
        Ok(())
    }
}

impl FromStr for ParticleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("bad particle spec {s:?}: {why}"));
        let (body, mixed) = match s.trim().strip_suffix("+mixed") {
            Some(b) => (b, true),
            None => (s.trim(), false),
        };
        let mut types: Vec<Partition> = Vec::new();
        // Parts of a `p` type run until the next token that starts with a letter.
        let mut general: Option<Vec<usize>> = None;
        for tok in body.split(',').map(str::trim) {
            let number = |t: &str| t.parse::<usize>().ok().filter(|&n| n > 0);
            if let Some(parts) = general.as_mut() {
                if let Some(n) = number(tok) {
                    parts.push(n);
                    continue;
                }
                types.push(Partition::new(general.take().unwrap()).map_err(|e| bad(&e.to_string()))?);
            }
            let mut chars = tok.chars();
            let kind = chars.next().ok_or_else(|| bad("empty type"))?;
            let n = number(chars.as_str()).ok_or_else(|| bad(&format!("expected a positive count in {tok:?}")))?;
            match kind {
                'b' => types.push(Partition::row(n)),
                'f' => types.push(Partition::column(n)),
                'p' => general = Some(vec![n]),
                _ => return Err(bad(&format!("unknown type letter {kind:?}"))),
            }
        }
        if let Some(parts) = general {
            types.push(Partition::new(parts).map_err(|e| bad(&e.to_string()))?);
        }
        let spec = ParticleSpec::new(types).map_err(|e| bad(&e.to_string()))?;
        Ok(if mixed { mixed_spec(&spec) } else { spec })
    }
}

impl TryFrom<String> for ParticleSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ParticleSpec> for String {
    fn from(s: ParticleSpec) -> Self {
        s.to_string()
    }
}

fn to_natural(q: BigRational, what: &str) -> BigUint {
    assert!(q.is_integer(), "{what} is not an integer: {q}");
    let n = q.to_integer();
    assert!(n.sign() != Sign::Minus, "{what} is negative: {n}");
    n.to_biguint().unwrap()
}

/// `⟨χ_outer, Π_j χ_μj⟩` with `outer` defaulting to the trivial character.
pub fn kronecker(outer: Option<&Partition>, mus: &[Partition]) -> Result<BigUint> {
    let m = match (outer, mus.first()) {
        (Some(l), _) => l.weight(),
        (None, Some(mu)) => mu.weight(),
        (None, None) => 0,
    };
    if let Some(bad) = mus.iter().find(|mu| mu.weight() != m) {
        return Err(Error::WeightMismatch(format!("{bad} is not a partition of {m}")));
    }
    let mut total = BigRational::zero();
    for rho in partitions_of(m) {
        let mut prod = match outer {
            Some(l) => character_value(l, &rho)?,
            None => BigInt::one(),
        };
        for mu in mus {
            if prod.is_zero() {
                break;
            }
            prod *= character_value(mu, &rho)?;
        }
        total += BigRational::new(prod, BigInt::from(z_of(&rho)));
    }
    Ok(to_natural(total, "Kronecker coefficient"))
}

/// `M_λμν = ⟨s_μ[s_λ], s_ν⟩`.
pub fn plethysm_coeff(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
    if nu.weight() != lambda.weight() * mu.weight() {
        return Err(Error::WeightMismatch(format!(
            "{nu} has weight {} but s_{mu}[s_{lambda}] has degree {}",
            nu.weight(),
            lambda.weight() * mu.weight()
        )));
    }
    let p = SymFunc::schur(mu).plethysm(&SymFunc::schur(lambda));
    Ok(to_natural(p.hall_inner(&SymFunc::schur(nu)), "plethysm coefficient"))
}

/// Multiplicity `c_ν⃗ = Σ_μ⃗ C_(m)μ⃗ Π_j M_λjμjνj` of `s_ν1 ⊗ … ⊗ s_νk` in the
/// degree-`m` symmetric power.
pub fn multiplicity(spec: &ParticleSpec, m: usize, nus: &[Partition]) -> Result<BigUint> {
    if nus.len() != spec.k() {
        return Err(Error::Shape(format!("{} shapes given for {} types", nus.len(), spec.k())));
    }
    for (nu, l) in nus.iter().zip(spec.line_sums()) {
        if nu.weight() != m * l {
            return Err(Error::WeightMismatch(format!("{nu} is not a partition of {}", m * l)));
        }
    }
    let tables = plethysm_tables(spec, m);
    let mut total = BigUint::zero();
    for_each_tuple(&partitions_of(m), spec.k(), &mut |mus| {
        let mut prod = BigUint::one();
        for (j, mu) in mus.iter().enumerate() {
            match tables[j][mu].get(&nus[j]) {
                Some(x) => prod *= x,
                None => return,
            }
        }
        prod *= kronecker(Some(&Partition::row(m)), &mus.iter().map(|&p| p.clone()).collect::<Vec<_>>())
            .expect("consistent weights");
        total += prod;
    });
    Ok(total)
}

/// For each type `j` and `μ ⊢ m`, the Schur expansion `ν ↦ M_λjμν`.
fn plethysm_tables(spec: &ParticleSpec, m: usize) -> Vec<BTreeMap<Partition, BTreeMap<Partition, BigUint>>> {
    spec.types()
        .iter()
        .map(|lambda| {
            let inner = SymFunc::schur(lambda);
            partitions_of(m)
                .into_iter()
                .map(|mu| {
                    let p = SymFunc::schur(&mu).plethysm(&inner);
                    let coeffs = p
                        .schur_coefficients(m * lambda.weight())
                        .into_iter()
                        .map(|(nu, c)| (nu, to_natural(c, "plethysm coefficient")))
                        .collect();
                    (mu, coeffs)
                })
                .collect()
        })
        .collect()
}

fn for_each_tuple<'a>(items: &'a [Partition], k: usize, f: &mut dyn FnMut(&[&'a Partition])) {
    fn rec<'a>(items: &'a [Partition], k: usize, acc: &mut Vec<&'a Partition>, f: &mut dyn FnMut(&[&'a Partition])) {
        if acc.len() == k {
            f(acc);
            return;
        }
        for it in items {
            acc.push(it);
            rec(items, k, acc, f);
            acc.pop();
        }
    }
    rec(items, k, &mut Vec::with_capacity(k), f);
}

/// Stable dimension `d_m` by the contracted double sum over cycle types.
pub fn stable_dim(spec: &ParticleSpec, m: usize) -> BigUint {
    let rhos = partitions_of(m);
    let inv_z: Vec<BigRational> =
        rhos.iter().map(|r| BigRational::new(BigInt::one(), BigInt::from(z_of(r)))).collect();

    // p_ρ[s_λj] for every (j, ρ), reused across the double loop.
    let cache: Vec<Vec<SymFunc>> = spec
        .types()
        .iter()
        .map(|lambda| {
            let s = SymFunc::schur(lambda);
            rhos.par_iter().map(|rho| SymFunc::p_basis(rho).plethysm(&s)).collect()
        })
        .collect();

    let total: BigRational = (0..rhos.len())
        .into_par_iter()
        .map(|a| {
            let mut row = BigRational::zero();
            for b in a..rhos.len() {
                let mut prod = &inv_z[a] * &inv_z[b];
                for per_type in &cache {
                    if prod.is_zero() {
                        break;
                    }
                    prod *= per_type[a].hall_inner(&per_type[b]);
                }
                // Off-diagonal pairs appear twice.
                if a != b {
                    prod *= BigRational::from_integer(BigInt::from(2));
                }
                row += prod;
            }
            row
        })
        .reduce(BigRational::zero, |x, y| x + y);
    to_natural(total, "stable dimension")
}

/// `d_1..d_max`.
pub fn stable_dims(spec: &ParticleSpec, max_degree: usize) -> Vec<BigUint> {
    (1..=max_degree).map(|m| stable_dim(spec, m)).collect()
}

/// Independent route to `d_m`: `Σ_ν⃗ c_ν⃗²` with `c` from Kronecker and
/// plethysm coefficients. Cost grows with `p(m)^k` and the Schur expansions
/// of `s_μ[s_λ]`, so this is meant for small sizes.
pub fn stable_dim_by_multiplicities(spec: &ParticleSpec, m: usize) -> BigUint {
    let tables = plethysm_tables(spec, m);
    let parts = partitions_of(m);
    let trivial = Partition::row(m);
    let mut c: BTreeMap<Vec<Partition>, BigUint> = BTreeMap::new();
    for_each_tuple(&parts, spec.k(), &mut |mus| {
        let owned: Vec<Partition> = mus.iter().map(|&p| p.clone()).collect();
        let kr = kronecker(Some(&trivial), &owned).expect("consistent weights");
        if kr.is_zero() {
            return;
        }
        // Expand Π_j Σ_ν M_λjμjν over tuples ν⃗.
        let mut partial: Vec<(Vec<Partition>, BigUint)> = vec![(Vec::new(), kr)];
        for (j, mu) in mus.iter().enumerate() {
            let row = &tables[j][*mu];
            partial = partial
                .into_iter()
                .flat_map(|(nus, x)| {
                    row.iter().map(move |(nu, mult)| {
                        let mut n = nus.clone();
                        n.push(nu.clone());
                        (n, &x * mult)
                    })
                })
                .collect();
        }
        for (nus, x) in partial {
            *c.entry(nus).or_insert_with(BigUint::zero) += x;
        }
    });
    c.values().map(|x| x * x).sum()
}

/// Whether `d_m` equals the number of double cosets for every `m`: some type
/// has a single particle, or the total number of fermions is even.
pub fn is_saturated(spec: &ParticleSpec) -> Result<bool> {
    spec.require_row_or_column("the saturation rule")?;
    let lines = spec.line_sums();
    if lines.contains(&1) {
        return Ok(true);
    }
    let fermions: usize = (0..spec.k())
        .filter(|&j| spec.statistics(j) == Statistics::Fermion)
        .map(|j| lines[j])
        .sum();
    Ok(fermions.is_multiple_of(2))
}

/// Number of degree-`m` free generators for `m = 1..max_degree`.
pub fn free_gen_counts(spec: &ParticleSpec, max_degree: usize) -> Result<Vec<BigUint>> {
    spec.require_row_or_column("free generator counts")?;
    inverse_euler(&stable_dims(spec, max_degree))
}

/// Spec of the purified system: the types followed by a single distinguishable particle.
pub fn mixed_spec(spec: &ParticleSpec) -> ParticleSpec {
    let mut types = spec.types.clone();
    types.push(Partition::row(1));
    ParticleSpec { types }
}
