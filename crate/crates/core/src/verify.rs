//! Self-check report behind `luinv verify`.
//!
//! Every check is deterministic apart from its `runtime_s` field; checks run
//! sequentially in a fixed order so the report does not depend on the number
//! of worker threads.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Partition, Permutation, character_value, partitions_of, z_of};
use crate::cosets::{
    CosetRep, DEFAULT_COSET_BUDGET, StabilizerSigns, brute_force_induce, mackey_dim, stabilizer_signs,
    wreath_char_value, wreath_elements,
};
use crate::dimensions::{ParticleSpec, free_gen_counts, mixed_spec, stable_dim, stable_dim_by_multiplicities};
use crate::error::{Error, Result};
use crate::graphs::{DEFAULT_GRAPH_BUDGET, enumerate};
use crate::invariants::{
    DEFAULT_CONTRACT_BUDGET, evaluate, product_check, random_state, random_unitary, rank_probe,
};
use crate::symfunc::{SymFunc, ch_map};

/// Stable dimensions, bosons; `[m - 1][l - 1]`.
pub const BOSON_DIMS: [[u64; 5]; 7] = [
    [1, 1, 1, 1, 1],
    [1, 2, 2, 3, 3],
    [1, 3, 5, 9, 13],
    [1, 5, 12, 43, 106],
    [1, 7, 31, 264, 1856],
    [1, 11, 103, 2804, 65481],
    [1, 15, 383, 44524, 3925518],
];

/// Stable dimensions, fermions; `[m - 1][l - 1]`.
pub const FERMION_DIMS: [[u64; 5]; 7] = [
    [1, 1, 1, 1, 1],
    [1, 2, 2, 3, 3],
    [1, 3, 4, 9, 12],
    [1, 5, 10, 43, 94],
    [1, 7, 23, 264, 1613],
    [1, 11, 71, 2804, 58793],
    [1, 15, 251, 44524, 3624974],
];

/// Free generator counts, bosons; `[m - 1][l - 1]`.
pub const BOSON_GENS: [[u64; 5]; 7] = [
    [1, 1, 1, 1, 1],
    [0, 1, 1, 2, 2],
    [0, 1, 3, 6, 10],
    [0, 1, 6, 31, 90],
    [0, 1, 16, 209, 1730],
    [0, 1, 59, 2453, 63386],
    [0, 1, 243, 41098, 3855647],
];

/// Free generator counts, fermions; `[m - 1][l - 1]`.
pub const FERMION_GENS: [[u64; 5]; 7] = [
    [1, 1, 1, 1, 1],
    [0, 1, 1, 2, 2],
    [0, 1, 2, 6, 9],
    [0, 1, 5, 31, 79],
    [0, 1, 11, 209, 1501],
    [0, 1, 39, 2453, 56973],
    [0, 1, 157, 41098, 3562441],
];

/// Mixed-state stable dimensions (either statistics); `[m - 1][l - 1]`.
pub const MIXED_DIMS: [[u64; 4]; 7] = [
    [1, 1, 1, 1],
    [2, 3, 4, 5],
    [3, 8, 16, 31],
    [5, 25, 118, 501],
    [7, 85, 1411, 19158],
    [11, 397, 30335, 1468699],
    [15, 2183, 939789, 186406186],
];

/// Mixed-state free generator counts; `[m - 1][l - 1]`.
pub const MIXED_GENS: [[u64; 4]; 7] = [
    [1, 1, 1, 1],
    [1, 2, 3, 4],
    [1, 5, 12, 26],
    [1, 14, 96, 460],
    [1, 50, 1257, 18553],
    [1, 265, 28568, 1447330],
    [1, 1601, 904439, 184851055],
];

/// Degree 1.. dimensions for the single type `(2,1)`.
pub const HOOK_DIMS: [u64; 7] = [1, 4, 18, 151, 1628, 24164, 431401];

/// Degree 1.. dimensions for `(2,1)` plus an environment.
pub const HOOK_MIXED_DIMS: [u64; 4] = [1, 8, 97, 3267];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Quick => "quick",
            Level::Full => "full",
        })
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(Error::Parse(format!("unknown verification level {s:?}, expected quick or full"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub criterion: u32,
    pub passed: bool,
    pub detail: String,
    pub runtime_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub level: Level,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    /// Copy with every runtime zeroed, for comparing runs.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.runtime_s = 0.0;
        }
        r
    }
}

type Outcome = Result<(bool, String)>;

fn run_check(out: &mut Vec<CheckResult>, criterion: u32, name: &str, f: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    out.push(CheckResult {
        name: name.to_string(),
        criterion,
        passed,
        detail,
        runtime_s: start.elapsed().as_secs_f64(),
    });
}

/// Compares computed values with expected cells, listing every mismatch.
fn compare(cells: impl IntoIterator<Item = (String, BigUint, u64)>) -> Outcome {
    let mut n = 0;
    let mut bad = Vec::new();
    for (label, got, want) in cells {
        n += 1;
        if got != BigUint::from(want) {
            bad.push(format!("{label}: got {got}, expected {want}"));
        }
    }
    Ok(if bad.is_empty() { (true, format!("{n} cells match")) } else { (false, bad.join("; ")) })
}

fn table_cells(fermion: bool, ls: std::ops::RangeInclusive<usize>, max_m: usize) -> Vec<(String, BigUint, u64)> {
    let table = if fermion { &FERMION_DIMS } else { &BOSON_DIMS };
    ls.flat_map(|l| {
        let spec = if fermion { ParticleSpec::fermions(l) } else { ParticleSpec::bosons(l) };
        (1..=max_m).map(move |m| (format!("{spec} m={m}"), stable_dim(&spec, m), table[m - 1][l - 1]))
    })
    .collect()
}

fn gen_cells(fermion: bool, ls: std::ops::RangeInclusive<usize>, max_m: usize) -> Result<Vec<(String, BigUint, u64)>> {
    let table = if fermion { &FERMION_GENS } else { &BOSON_GENS };
    let mut out = Vec::new();
    for l in ls {
        let spec = if fermion { ParticleSpec::fermions(l) } else { ParticleSpec::bosons(l) };
        for (i, a) in free_gen_counts(&spec, max_m)?.into_iter().enumerate() {
            out.push((format!("{spec} m={}", i + 1), a, table[i][l - 1]));
        }
    }
    Ok(out)
}

fn mixed_cells(gens: bool, max_m: usize) -> Result<Vec<(String, BigUint, u64)>> {
    let mut out = Vec::new();
    for l in 1..=3 {
        for spec in [ParticleSpec::bosons(l), ParticleSpec::fermions(l)] {
            let mixed = mixed_spec(&spec);
            let values = if gens {
                free_gen_counts(&mixed, max_m)?
            } else {
                (1..=max_m).map(|m| stable_dim(&mixed, m)).collect()
            };
            let table = if gens { &MIXED_GENS } else { &MIXED_DIMS };
            for (i, v) in values.into_iter().enumerate() {
                out.push((format!("{mixed} m={}", i + 1), v, table[i][l - 1]));
            }
        }
    }
    Ok(out)
}

fn hook_cells(max_m: usize, max_mixed: usize) -> Vec<(String, BigUint, u64)> {
    let hook = ParticleSpec::new(vec![Partition::new(vec![2, 1]).expect("partition")]).expect("spec");
    let mixed = mixed_spec(&hook);
    let mut out: Vec<_> = (1..=max_m).map(|m| (format!("{hook} m={m}"), stable_dim(&hook, m), HOOK_DIMS[m - 1])).collect();
    out.extend((1..=max_mixed).map(|m| (format!("{mixed} m={m}"), stable_dim(&mixed, m), HOOK_MIXED_DIMS[m - 1])));
    out
}

/// Graph counts against stable dimensions for bosons, and the three-boson
/// cubic case in detail.
fn graph_counts() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for (l, max_m) in [(1, 6), (2, 5), (3, 4), (4, 3)] {
        let spec = ParticleSpec::bosons(l);
        for m in 1..=max_m {
            n += 1;
            let count = enumerate(&[l], m, DEFAULT_GRAPH_BUDGET)?.len();
            let d = stable_dim(&spec, m);
            if BigUint::from(count) != d {
                bad.push(format!("{spec} m={m}: {count} classes, d = {d}"));
            }
        }
    }
    let classes = enumerate(&[3], 3, DEFAULT_GRAPH_BUDGET)?;
    let connected = classes.iter().filter(|g| g.is_connected()).count();
    if classes.len() != 5 || connected != 3 {
        bad.push(format!("b3 m=3: {} classes, {connected} connected", classes.len()));
    }
    Ok(if bad.is_empty() { (true, format!("{n} (l, m) pairs match; b3 m=3 has 5 classes, 3 connected")) } else { (false, bad.join("; ")) })
}

fn mixed_cosets(spec: &ParticleSpec, m: usize) -> Result<(usize, usize)> {
    let graphs = enumerate(&spec.line_sums(), m, DEFAULT_GRAPH_BUDGET)?;
    let mut mixed = 0;
    for g in &graphs {
        if stabilizer_signs(&CosetRep::from_graph(spec, g)?, DEFAULT_COSET_BUDGET)? == StabilizerSigns::Mixed {
            mixed += 1;
        }
    }
    Ok((graphs.len(), mixed))
}

fn three_fermions() -> Outcome {
    let f3 = ParticleSpec::fermions(3);
    let (total, mixed) = mixed_cosets(&f3, 3)?;
    let mackey = mackey_dim(&f3, 3, DEFAULT_GRAPH_BUDGET, DEFAULT_COSET_BUDGET)?;
    let d = stable_dim(&f3, 3);
    let ok = total == 5 && mixed == 1 && mackey == BigUint::from(4u32) && d == mackey;
    Ok((ok, format!("f3 m=3: {total} cosets, {mixed} sign-mixed, mackey_dim {mackey}, stable_dim {d}")))
}

/// Saturated specs checked for sign-mixed cosets, with their maximal degree.
pub const SATURATED_CASES: [(&str, usize); 8] =
    [("b2", 4), ("b3", 3), ("f2", 4), ("f4", 2), ("b1,b1", 4), ("f3,b1", 2), ("f2,f2", 2), ("b2,f2", 2)];

fn saturated_specs() -> Outcome {
    let mut bad = Vec::new();
    let mut cosets = 0;
    for (s, max_m) in SATURATED_CASES {
        let spec: ParticleSpec = s.parse()?;
        for m in 1..=max_m {
            let (total, mixed) = mixed_cosets(&spec, m)?;
            cosets += total;
            if mixed != 0 {
                bad.push(format!("{spec} m={m}: {mixed} sign-mixed of {total}"));
            }
        }
    }
    Ok(if bad.is_empty() { (true, format!("{cosets} cosets, none sign-mixed")) } else { (false, bad.join("; ")) })
}

/// Specs with `m · max l ≤ 8` for the two dimension formulas.
fn dimension_routes() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for s in ["b1", "b2", "b3", "b4", "f2", "f3", "f4", "p2,1", "b2,f2", "b1,b1", "f2,b1", "p2,1+mixed"] {
        let spec: ParticleSpec = s.parse()?;
        let max_l = spec.line_sums().into_iter().max().unwrap_or(1);
        for m in 1..=8 / max_l {
            n += 1;
            let a = stable_dim(&spec, m);
            let b = stable_dim_by_multiplicities(&spec, m);
            if a != b {
                bad.push(format!("{spec} m={m}: {a} vs {b}"));
            }
        }
    }
    Ok(if bad.is_empty() { (true, format!("{n} cases agree")) } else { (false, bad.join("; ")) })
}

/// Induced wreath characters against plethysm, all `λ, μ ⊢ 2` inside `S_4`.
fn induction_vs_plethysm() -> Outcome {
    let parts = partitions_of(2);
    let elements = wreath_elements(&[2], 2);
    let mut n = 0;
    let mut bad = Vec::new();
    for lambda in &parts {
        for mu in &parts {
            let sub: Vec<(Permutation, BigRational)> = elements
                .iter()
                .map(|w| {
                    let v = wreath_char_value(std::slice::from_ref(lambda), mu, w)?;
                    Ok((w.embed().swap_remove(0), BigRational::from_integer(v)))
                })
                .collect::<Result<_>>()?;
            let induced = ch_map(&brute_force_induce(&sub, 4)?);
            let want = SymFunc::schur(mu).plethysm(&SymFunc::schur(lambda));
            n += 1;
            if induced != want {
                bad.push(format!("λ={lambda} μ={mu}"));
            }
        }
    }
    Ok(if bad.is_empty() { (true, format!("{n} pairs agree")) } else { (false, bad.join("; ")) })
}

fn schur_orthonormality() -> Outcome {
    let mut n = 0;
    for size in 0..=6 {
        let ss: Vec<(Partition, SymFunc)> = partitions_of(size).into_iter().map(|p| {
            let s = SymFunc::schur(&p);
            (p, s)
        }).collect();
        for (p, a) in &ss {
            for (q, b) in &ss {
                n += 1;
                let want = if p == q { BigRational::one() } else { BigRational::zero() };
                if a.hall_inner(b) != want {
                    return Ok((false, format!("<s_{p}, s_{q}> = {}", a.hall_inner(b))));
                }
            }
        }
    }
    Ok((true, format!("{n} inner products")))
}

/// `h_n = Σ_{μ ⊢ n} p_μ / z_μ`, built without characters.
fn complete_homogeneous(n: usize) -> SymFunc {
    let mut out = SymFunc::zero();
    for mu in partitions_of(n) {
        let c = BigRational::new(BigInt::one(), BigInt::from(z_of(&mu)));
        out = &out + &SymFunc::p_basis(&mu).scale(&c);
    }
    out
}

/// `s_λ = det(h_{λ_i - i + j})` expanded over permutations.
fn jacobi_trudi(lambda: &Partition, h: &[SymFunc]) -> SymFunc {
    let parts = lambda.parts();
    let len = parts.len();
    let mut out = SymFunc::zero();
    for p in Permutation::all(len) {
        let mut term = SymFunc::one();
        for (i, &li) in parts.iter().enumerate() {
            let idx = li as isize - i as isize + p.apply(i) as isize;
            if idx < 0 {
                term = SymFunc::zero();
                break;
            }
            term = &term * &h[idx as usize];
        }
        out = if p.sign() > 0 { &out + &term } else { &out - &term };
    }
    out
}

/// Murnaghan–Nakayama values against the Jacobi–Trudi expansion, `m ≤ 5`.
fn characters_vs_jacobi_trudi() -> Outcome {
    let h: Vec<SymFunc> = (0..=5).map(complete_homogeneous).collect();
    let mut n = 0;
    for m in 1..=5 {
        for lambda in partitions_of(m) {
            let s = jacobi_trudi(&lambda, &h);
            for mu in partitions_of(m) {
                // χ_λ(μ) = z_μ · [p_μ] s_λ.
                let want = s.coefficient(&mu) * BigRational::from_integer(BigInt::from(z_of(&mu)));
                let got = BigRational::from_integer(character_value(&lambda, &mu)?);
                n += 1;
                if got != want {
                    return Ok((false, format!("χ_{lambda}({mu}) = {got}, expected {want}")));
                }
            }
        }
    }
    Ok((true, format!("{n} values agree")))
}

const NUMERIC_CASES: [(&str, usize, &[usize]); 6] = [
    ("b2", 2, &[3]),
    ("f2", 2, &[4]),
    ("f3", 2, &[4]),
    ("f3", 3, &[5]),
    ("b2,f2", 2, &[2, 3]),
    ("b1+mixed", 3, &[3, 3]),
];

fn fmt_max(x: f64) -> String {
    format!("{x:.0e}")
}

fn multiplicativity() -> Outcome {
    let mut worst: f64 = 0.0;
    for (s, m, dims) in NUMERIC_CASES {
        let spec: ParticleSpec = s.parse()?;
        let lines = spec.line_sums();
        let g1 = enumerate(&lines, 1, DEFAULT_GRAPH_BUDGET)?;
        for seed in 0..3 {
            let psi = random_state(&spec, dims, 100 + seed)?;
            for a in 1..m {
                for g in enumerate(&lines, a, DEFAULT_GRAPH_BUDGET)? {
                    for h in &g1 {
                        worst = worst.max(product_check(&g, h, &psi, DEFAULT_CONTRACT_BUDGET)?);
                    }
                }
            }
        }
    }
    Ok((worst < 1e-8, format!("max residual below {}", fmt_max(worst.max(1e-16) * 10.0))))
}

fn numeric_vanishing() -> Outcome {
    let mut worst_zero: f64 = 0.0;
    let mut vanishing = 0;
    let mut weak = Vec::new();
    for (s, m, dims) in NUMERIC_CASES {
        let spec: ParticleSpec = s.parse()?;
        let states: Vec<_> = (0..20).map(|i| random_state(&spec, dims, 200 + i)).collect::<Result<_>>()?;
        for g in enumerate(&spec.line_sums(), m, DEFAULT_GRAPH_BUDGET)? {
            let signs = stabilizer_signs(&CosetRep::from_graph(&spec, &g)?, DEFAULT_COSET_BUDGET)?;
            let mut biggest: f64 = 0.0;
            for psi in &states {
                // Unit states: the scale norm^(2m) is 1.
                biggest = biggest.max(evaluate(&g, psi, DEFAULT_CONTRACT_BUDGET)?.norm());
            }
            match signs {
                StabilizerSigns::Mixed => {
                    vanishing += 1;
                    worst_zero = worst_zero.max(biggest);
                }
                StabilizerSigns::AllPositive if biggest <= 1e-6 => weak.push(format!("{spec} {}", g.id())),
                StabilizerSigns::AllPositive => {}
            }
        }
    }
    let ok = worst_zero < 1e-8 && weak.is_empty();
    let mut detail = format!(
        "{vanishing} sign-mixed classes, max value {} on 20 states",
        if worst_zero < 1e-8 { "below 1e-8".to_string() } else { format!("{worst_zero:.1e}") }
    );
    if !weak.is_empty() {
        detail.push_str(&format!("; nonvanishing classes stuck near 0: {}", weak.join(", ")));
    }
    Ok((ok, detail))
}

fn lu_invariance() -> Outcome {
    let mut worst: f64 = 0.0;
    for (s, m, dims) in NUMERIC_CASES {
        let spec: ParticleSpec = s.parse()?;
        let psi = random_state(&spec, dims, 300)?;
        let us: Vec<_> = dims.iter().enumerate().map(|(j, &n)| random_unitary(n, 310 + j as u64)).collect();
        let moved = psi.apply_local(&us)?;
        for g in enumerate(&spec.line_sums(), m, DEFAULT_GRAPH_BUDGET)? {
            let a = evaluate(&g, &psi, DEFAULT_CONTRACT_BUDGET)?;
            let b = evaluate(&g, &moved, DEFAULT_CONTRACT_BUDGET)?;
            worst = worst.max((a - b).norm() / a.norm().max(1.0));
        }
    }
    Ok((worst < 1e-9, format!("max drift below {}", fmt_max(worst.max(1e-16) * 10.0))))
}

fn embedding_invariance() -> Outcome {
    let mut worst: f64 = 0.0;
    for (s, m, dims) in NUMERIC_CASES {
        let spec: ParticleSpec = s.parse()?;
        let psi = random_state(&spec, dims, 400)?;
        let big: Vec<usize> = dims.iter().map(|n| n + 2).collect();
        let embedded = psi.embed(&big)?;
        for g in enumerate(&spec.line_sums(), m, DEFAULT_GRAPH_BUDGET)? {
            let a = evaluate(&g, &psi, DEFAULT_CONTRACT_BUDGET)?;
            let b = evaluate(&g, &embedded, DEFAULT_CONTRACT_BUDGET)?;
            worst = worst.max((a - b).norm());
        }
    }
    Ok((worst < 1e-12, format!("max difference below {}", fmt_max(worst.max(1e-16) * 10.0))))
}

fn rank_probes() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for (spec, max_m) in [
        (ParticleSpec::bosons(2), 3),
        (ParticleSpec::fermions(2), 3),
        (ParticleSpec::bosons(3), 2),
        (ParticleSpec::fermions(3), 2),
    ] {
        let l = spec.line_sums()[0];
        for m in 1..=max_m {
            let d = stable_dim(&spec, m);
            let graphs = enumerate(&[l], m, DEFAULT_GRAPH_BUDGET)?.len();
            let rank = rank_probe(&spec, m, &[m * l], graphs + 2, 500, DEFAULT_CONTRACT_BUDGET)?;
            n += 1;
            if BigUint::from(rank) != d {
                bad.push(format!("{spec} m={m}: rank {rank}, d = {d}"));
            }
        }
    }
    Ok(if bad.is_empty() { (true, format!("{n} probes equal d_m")) } else { (false, bad.join("; ")) })
}

fn quick_checks(out: &mut Vec<CheckResult>) {
    run_check(out, 1, "boson_dims_quick", || compare(table_cells(false, 1..=3, 4)));
    run_check(out, 2, "fermion_dims_quick", || compare(table_cells(true, 1..=3, 4)));
    run_check(out, 3, "generator_counts_quick", || {
        let mut cells = gen_cells(false, 1..=3, 4)?;
        cells.extend(gen_cells(true, 1..=3, 4)?);
        compare(cells)
    });
    run_check(out, 5, "hook_quick", || compare(hook_cells(3, 2)));
    run_check(out, 6, "graphs_b3_m3", || {
        let classes = enumerate(&[3], 3, DEFAULT_GRAPH_BUDGET)?;
        let connected = classes.iter().filter(|g| g.is_connected()).count();
        Ok((classes.len() == 5 && connected == 3, format!("{} classes, {connected} connected", classes.len())))
    });
    run_check(out, 7, "vanishing_f3_m3", three_fermions);
}

fn full_checks(out: &mut Vec<CheckResult>) {
    run_check(out, 1, "boson_dims", || {
        let mut cells = table_cells(false, 1..=4, 5);
        cells.extend(table_cells(false, 5..=5, 4));
        compare(cells)
    });
    run_check(out, 1, "dims_extended", || {
        let mut cells = table_cells(false, 4..=4, 7);
        cells.extend(table_cells(false, 5..=5, 7));
        cells.extend(table_cells(true, 4..=5, 7));
        cells.extend(hook_cells(7, 4));
        compare(cells)
    });
    run_check(out, 2, "fermion_dims", || {
        let mut cells = table_cells(true, 1..=4, 5);
        cells.extend(table_cells(true, 5..=5, 4));
        compare(cells)
    });
    run_check(out, 3, "generator_counts", || {
        let mut cells = gen_cells(false, 1..=4, 5)?;
        cells.extend(gen_cells(false, 5..=5, 4)?);
        cells.extend(gen_cells(true, 1..=4, 5)?);
        cells.extend(gen_cells(true, 5..=5, 4)?);
        compare(cells)
    });
    run_check(out, 4, "mixed_dims", || compare(mixed_cells(false, 4)?));
    run_check(out, 4, "mixed_generator_counts", || compare(mixed_cells(true, 4)?));
    run_check(out, 5, "hook_sequences", || compare(hook_cells(4, 3)));
    run_check(out, 6, "graph_counts", graph_counts);
    run_check(out, 7, "vanishing_f3_m3", three_fermions);
    run_check(out, 7, "saturated_no_mixed_cosets", saturated_specs);
    run_check(out, 8, "dimension_routes", dimension_routes);
    run_check(out, 8, "induction_vs_plethysm", induction_vs_plethysm);
    run_check(out, 8, "schur_orthonormality", schur_orthonormality);
    run_check(out, 8, "characters_vs_jacobi_trudi", characters_vs_jacobi_trudi);
    run_check(out, 9, "multiplicativity", multiplicativity);
    run_check(out, 9, "numeric_vanishing", numeric_vanishing);
    run_check(out, 9, "lu_invariance", lu_invariance);
    run_check(out, 9, "rank_probe", rank_probes);
    run_check(out, 9, "embedding_invariance", embedding_invariance);
}

pub fn run(level: Level) -> Report {
    let mut checks = Vec::new();
    match level {
        Level::Quick => quick_checks(&mut checks),
        Level::Full => full_checks(&mut checks),
    }
    let passed = checks.iter().all(|c| c.passed);
    Report { level, passed, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_report_passes_and_is_stable() {
        let a = run(Level::Quick);
        assert!(a.passed, "{a:#?}");
        let b = run(Level::Quick);
        assert_eq!(
            serde_json::to_string(&a.without_timing()).unwrap(),
            serde_json::to_string(&b.without_timing()).unwrap()
        );
        assert_eq!("full".parse::<Level>().unwrap(), Level::Full);
        assert!("fast".parse::<Level>().is_err());
    }

    #[test]
    fn jacobi_trudi_small() {
        let h: Vec<SymFunc> = (0..=3).map(complete_homogeneous).collect();
        let lambda = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(jacobi_trudi(&lambda, &h), SymFunc::schur(&lambda));
        assert_eq!(complete_homogeneous(3), SymFunc::h(3));
    }
}
