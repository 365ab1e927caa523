//! Double cosets `H_m \ G_m / H_m` with `G_m = Π_j S_{m l_j}` and
//! `H_m = (S_{l_1} × … × S_{l_k}) ≀ S_m`, embedded color by color.
//!
//! A wreath element `(p, v)` has inner permutations `p[j][i] ∈ S_{l_j}` and a
//! block permutation `v ∈ S_m`. It acts on point `b·l + t` of color `j` by
//! sending it to `v(b)·l + p[j][v(b)](t)`, and the product is
//! `(p, v)(p', v') = (p_i p'_{v^{-1}(i)}, v v')`.
//!
//! The basis invariant of a double coset `[s]` vanishes exactly when some
//! pair `a, b ∈ H_m` with `a s b^{-1} = s` has `χ(a) χ(b) = -1`, `χ` being the
//! product of the fermionic inner signs.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use crate::combinatorics::{character_value, factorial, partitions_of, Partition, Permutation};
use crate::dimensions::{ParticleSpec, Statistics};
use crate::error::{Error, Result};
use crate::graphs::{enumerate, GraphClass};
use crate::symfunc::ClassFunction;

/// Default cap on `|H_m|` for stabilizer scans.
pub const DEFAULT_COSET_BUDGET: u64 = 10_000_000;

/// Largest ambient degree accepted by [`brute_force_induce`].
pub const MAX_INDUCE_DEGREE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    /// `inner[j][i] ∈ S_{l_j}`.
    pub inner: Vec<Vec<Permutation>>,
    pub outer: Permutation,
}

impl WreathElement {
    pub fn identity(line_sums: &[usize], m: usize) -> Self {
        WreathElement {
            inner: line_sums.iter().map(|&l| vec![Permutation::identity(l); m]).collect(),
            outer: Permutation::identity(m),
        }
    }

    pub fn random<R: Rng + ?Sized>(line_sums: &[usize], m: usize, rng: &mut R) -> Self {
        WreathElement {
            inner: line_sums.iter().map(|&l| (0..m).map(|_| random_perm(l, rng)).collect()).collect(),
            outer: random_perm(m, rng),
        }
    }

    pub fn m(&self) -> usize {
        self.outer.len()
    }

    pub fn line_sums(&self) -> Vec<usize> {
        self.inner.iter().map(|row| row.first().map_or(0, Permutation::len)).collect()
    }

    /// `self · other`.
    pub fn mul(&self, other: &WreathElement) -> WreathElement {
        let v_inv = self.outer.inverse();
        let inner = self
            .inner
            .iter()
            .zip(&other.inner)
            .map(|(p, q)| (0..self.m()).map(|i| p[i].compose(&q[v_inv.apply(i)])).collect())
            .collect();
        WreathElement { inner, outer: self.outer.compose(&other.outer) }
    }

    pub fn inverse(&self) -> WreathElement {
        // (p, v)^{-1} = (p^{-1}_{v(i)}, v^{-1}).
        let inner = self
            .inner
            .iter()
            .map(|p| (0..self.m()).map(|i| p[self.outer.apply(i)].inverse()).collect())
            .collect();
        WreathElement { inner, outer: self.outer.inverse() }
    }

    /// One permutation of `m l_j` points per color.
    pub fn embed(&self) -> Vec<Permutation> {
        let m = self.m();
        self.inner
            .iter()
            .map(|p| {
                let l = p.first().map_or(0, Permutation::len);
                let images = (0..m * l)
                    .map(|x| {
                        let vb = self.outer.apply(x / l);
                        vb * l + p[vb].apply(x % l)
                    })
                    .collect();
                Permutation::from_images(images).expect("block action is a bijection")
            })
            .collect()
    }

    /// Inverse of [`WreathElement::embed`]; `None` when the tuple does not
    /// permute blocks with one block permutation common to all colors.
    pub fn decompose(taus: &[Permutation], line_sums: &[usize], m: usize) -> Option<WreathElement> {
        if taus.len() != line_sums.len() || taus.iter().zip(line_sums).any(|(t, &l)| t.len() != m * l) {
            return None;
        }
        let mut outer: Option<Vec<usize>> = None;
        let mut inner = Vec::with_capacity(taus.len());
        for (tau, &l) in taus.iter().zip(line_sums) {
            let blocks = block_map(tau.images(), l, m)?;
            match &outer {
                Some(v) if *v != blocks => return None,
                None => outer = Some(blocks.clone()),
                _ => {}
            }
            let mut p = vec![Permutation::identity(l); m];
            for (b, &vb) in blocks.iter().enumerate() {
                let images = (0..l).map(|t| tau.apply(b * l + t) - vb * l).collect();
                p[vb] = Permutation::from_images(images).ok()?;
            }
            inner.push(p);
        }
        let outer = Permutation::from_images(outer?).ok()?;
        Some(WreathElement { inner, outer })
    }

    /// Product of the inner signs over fermionic colors.
    pub fn sign_char(&self, spec: &ParticleSpec) -> Result<i32> {
        spec.require_row_or_column("the sign character")?;
        let mut s = 1;
        for (j, p) in self.inner.iter().enumerate() {
            if spec.statistics(j) == Statistics::Fermion {
                s *= p.iter().map(Permutation::sign).product::<i32>();
            }
        }
        Ok(s)
    }
}

fn random_perm<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    use rand::seq::SliceRandom;
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffle is a bijection")
}

/// Block permutation induced by `images`, if it maps blocks onto blocks.
fn block_map(images: &[usize], l: usize, m: usize) -> Option<Vec<usize>> {
    if l == 0 {
        return None;
    }
    let mut out = Vec::with_capacity(m);
    for b in 0..m {
        let target = images[b * l] / l;
        if (1..l).any(|t| images[b * l + t] / l != target) {
            return None;
        }
        out.push(target);
    }
    Some(out)
}

/// A double coset representative `[σ_1, …, σ_k]`, `σ_j ∈ S_{m l_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetRep {
    pub spec: ParticleSpec,
    pub m: usize,
    pub sigmas: Vec<Permutation>,
}

impl CosetRep {
    pub fn new(spec: ParticleSpec, m: usize, sigmas: Vec<Permutation>) -> Result<Self> {
        let lines = spec.line_sums();
        if sigmas.len() != lines.len() || sigmas.iter().zip(&lines).any(|(s, l)| s.len() != m * l) {
            return Err(Error::Shape(format!("permutation sizes do not match {spec} at degree {m}")));
        }
        Ok(CosetRep { spec, m, sigmas })
    }

    pub fn from_graph(spec: &ParticleSpec, g: &GraphClass) -> Result<Self> {
        if g.line_sums() != spec.line_sums().as_slice() {
            return Err(Error::Shape(format!("graph line sums {:?} do not match {spec}", g.line_sums())));
        }
        Self::new(spec.clone(), g.m(), g.to_perm_tuple())
    }

    pub fn graph(&self) -> GraphClass {
        GraphClass::from_perm_tuple(&self.sigmas, &self.spec.line_sums(), self.m).expect("consistent sizes")
    }
}

/// `|H_m| = (Π_j l_j!)^m · m!`.
pub fn wreath_order(line_sums: &[usize], m: usize) -> BigUint {
    let base: BigUint = line_sums.iter().map(|&l| factorial(l)).product();
    base.pow(m as u32) * factorial(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabilizerSigns {
    /// Every stabilizing pair has `χ(a) χ(b) = 1`; the invariant survives.
    AllPositive,
    /// Some pair has `χ(a) χ(b) = -1`; the invariant vanishes.
    Mixed,
}

/// Scans `a ∈ H_m`, sets `b_j = s_j^{-1} a_j s_j` and reports whether a pair
/// with `b ∈ H_m` and opposite signs exists. Stops at the first such pair.
pub fn stabilizer_signs(s: &CosetRep, budget: u64) -> Result<StabilizerSigns> {
    s.spec.require_row_or_column("the vanishing test")?;
    let lines = s.spec.line_sums();
    let m = s.m;
    let order = wreath_order(&lines, m);
    if order > BigUint::from(budget) {
        return Err(Error::Budget(format!(
            "stabilizer scan over |H_m| = {order} elements exceeds the budget {budget}"
        )));
    }
    if m == 0 {
        return Ok(StabilizerSigns::AllPositive);
    }
    let k = lines.len();
    let fermion: Vec<bool> = (0..k).map(|j| s.spec.statistics(j) == Statistics::Fermion).collect();
    let perms: Vec<Vec<Permutation>> = lines.iter().map(|&l| Permutation::all(l).collect()).collect();
    let signs: Vec<Vec<i32>> = perms.iter().map(|ps| ps.iter().map(Permutation::sign).collect()).collect();
    let s_img: Vec<&[usize]> = s.sigmas.iter().map(Permutation::images).collect();
    let s_inv: Vec<Vec<usize>> = s.sigmas.iter().map(|p| p.inverse().images().to_vec()).collect();
    let found = AtomicBool::new(false);

    let outers: Vec<Permutation> = Permutation::all(m).collect();
    outers.par_iter().for_each(|v| {
        // Odometer over the inner choices, digit (j, i) in 0..l_j!.
        let mut digits = vec![vec![0usize; m]; k];
        let mut a: Vec<Vec<usize>> = lines.iter().map(|&l| vec![0; m * l]).collect();
        let mut b: Vec<Vec<usize>> = a.clone();
        loop {
            if found.load(Ordering::Relaxed) {
                return;
            }
            let mut sign_a = 1;
            for j in 0..k {
                let l = lines[j];
                for blk in 0..m {
                    let vb = v.apply(blk);
                    let p = perms[j][digits[j][vb]].images();
                    for t in 0..l {
                        a[j][blk * l + t] = vb * l + p[t];
                    }
                }
                if fermion[j] {
                    sign_a *= digits[j].iter().map(|&d| signs[j][d]).product::<i32>();
                }
                for x in 0..m * l {
                    b[j][x] = s_inv[j][a[j][s_img[j][x]]];
                }
            }
            if let Some(sign_b) = member_sign(&b, &lines, m, &fermion) {
                if sign_a * sign_b == -1 {
                    found.store(true, Ordering::Relaxed);
                    return;
                }
            }
            // advance
            let mut carry = true;
            'adv: for (row, ps) in digits.iter_mut().zip(&perms) {
                for d in row.iter_mut() {
                    *d += 1;
                    if *d < ps.len() {
                        carry = false;
                        break 'adv;
                    }
                    *d = 0;
                }
            }
            if carry {
                return;
            }
        }
    });
    Ok(if found.load(Ordering::Relaxed) { StabilizerSigns::Mixed } else { StabilizerSigns::AllPositive })
}

/// `χ(b)` if the tuple lies in `H_m`.
fn member_sign(b: &[Vec<usize>], lines: &[usize], m: usize, fermion: &[bool]) -> Option<i32> {
    let mut common: Option<Vec<usize>> = None;
    let mut sign = 1;
    for (j, img) in b.iter().enumerate() {
        let l = lines[j];
        let blocks = block_map(img, l, m)?;
        match &common {
            Some(v) if *v != blocks => return None,
            None => common = Some(blocks.clone()),
            _ => {}
        }
        if fermion[j] {
            for (blk, &vb) in blocks.iter().enumerate() {
                let local: Vec<usize> = (0..l).map(|t| img[blk * l + t] - vb * l).collect();
                sign *= small_sign(&local);
            }
        }
    }
    Some(sign)
}

fn small_sign(images: &[usize]) -> i32 {
    let mut seen = 0u64;
    let mut s = 1;
    for start in 0..images.len() {
        if seen >> start & 1 == 1 {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while seen >> x & 1 == 0 {
            seen |= 1 << x;
            x = images[x];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// Number of graph classes whose coset has only positive stabilizer pairs.
pub fn mackey_dim(spec: &ParticleSpec, m: usize, graph_budget: usize, coset_budget: u64) -> Result<BigUint> {
    let mut count = 0u64;
    for g in enumerate(&spec.line_sums(), m, graph_budget)? {
        if stabilizer_signs(&CosetRep::from_graph(spec, &g)?, coset_budget)? == StabilizerSigns::AllPositive {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// Value of the irreducible `(γ_1 × … × γ_k) ≀ χ_θ` of `H_m` at `w`.
///
/// The base part contributes `Π_c Π_j χ_γj(type of the cycle product of c)`
/// over cycles `c` of the block permutation, and the top part `χ_θ(type of v)`.
pub fn wreath_char_value(gammas: &[Partition], theta: &Partition, w: &WreathElement) -> Result<BigInt> {
    let m = w.m();
    if theta.weight() != m || gammas.len() != w.inner.len() {
        return Err(Error::Shape(format!("character labels do not match an element of degree {m}")));
    }
    for (g, l) in gammas.iter().zip(w.line_sums()) {
        if g.weight() != l {
            return Err(Error::WeightMismatch(format!("{g} labels no character of S_{l}")));
        }
    }
    let mut value = character_value(theta, &w.outer.cycle_type())?;
    for cycle in w.outer.cycles() {
        let b = cycle[0];
        for (gamma, p) in gammas.iter().zip(&w.inner) {
            // p_b ∘ p_{v^{-1}(b)} ∘ … around the cycle.
            let mut prod = Permutation::identity(gamma.weight());
            let mut i = b;
            for _ in 0..cycle.len() {
                prod = prod.compose(&p[i]);
                i = w.outer.inverse().apply(i);
            }
            value *= character_value(gamma, &prod.cycle_type())?;
        }
    }
    Ok(value)
}

/// Every element of `H_m` with its embedding, in a fixed order.
pub fn wreath_elements(line_sums: &[usize], m: usize) -> Vec<WreathElement> {
    let perms: Vec<Vec<Permutation>> = line_sums.iter().map(|&l| Permutation::all(l).collect()).collect();
    let mut out = Vec::new();
    for v in Permutation::all(m) {
        let mut partial: Vec<Vec<Vec<Permutation>>> = vec![Vec::new()];
        for ps in &perms {
            let mut colors: Vec<Vec<Permutation>> = vec![Vec::new()];
            for _ in 0..m {
                colors = colors
                    .into_iter()
                    .flat_map(|c| ps.iter().map(move |p| {
                        let mut c = c.clone();
                        c.push(p.clone());
                        c
                    }))
                    .collect();
            }
            partial = partial
                .into_iter()
                .flat_map(|acc| colors.iter().map(move |c| {
                    let mut acc = acc.clone();
                    acc.push(c.clone());
                    acc
                }))
                .collect();
        }
        out.extend(partial.into_iter().map(|inner| WreathElement { inner, outer: v.clone() }));
    }
    out
}

/// Induced character `ind_H^{S_n} χ` by summing over the whole ambient group.
/// `subgroup` lists every element of `H` once with its character value.
pub fn brute_force_induce(subgroup: &[(Permutation, BigRational)], n: usize) -> Result<ClassFunction> {
    if n > MAX_INDUCE_DEGREE {
        return Err(Error::Budget(format!("induction to S_{n} exceeds the cap S_{MAX_INDUCE_DEGREE}")));
    }
    if subgroup.iter().any(|(p, _)| p.len() != n) {
        return Err(Error::Shape(format!("subgroup elements must act on {n} points")));
    }
    let table: HashMap<&Permutation, &BigRational> = subgroup.iter().map(|(p, v)| (p, v)).collect();
    let order = BigInt::from(subgroup.len());
    let group: Vec<Permutation> = Permutation::all(n).collect();
    let out = partitions_of(n)
        .into_par_iter()
        .map(|mu| {
            let g = class_representative(&mu);
            let mut total = BigRational::zero();
            for x in &group {
                let conj = x.compose(&g).compose(&x.inverse());
                if let Some(v) = table.get(&conj) {
                    total += (*v).clone();
                }
            }
            (mu, total / BigRational::from_integer(order.clone()))
        })
        .collect();
    Ok(out)
}

/// The permutation with consecutive cycles of lengths `mu`.
pub fn class_representative(mu: &Partition) -> Permutation {
    let mut images = Vec::with_capacity(mu.weight());
    let mut start = 0;
    for &len in mu.parts() {
        images.extend((0..len).map(|i| start + (i + 1) % len));
        start += len;
    }
    Permutation::from_images(images).expect("cycles are disjoint")
}
