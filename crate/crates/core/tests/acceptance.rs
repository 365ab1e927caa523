//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use luinv::combinatorics::{Partition, Permutation, character_value, partitions_of};
use luinv::cosets::{
    CosetRep, DEFAULT_COSET_BUDGET, StabilizerSigns, brute_force_induce, mackey_dim, stabilizer_signs,
    wreath_char_value, wreath_elements,
};
use luinv::dimensions::{ParticleSpec, free_gen_counts, mixed_spec, stable_dim, stable_dim_by_multiplicities};
use luinv::graphs::{DEFAULT_GRAPH_BUDGET, enumerate};
use luinv::invariants::{
    DEFAULT_CONTRACT_BUDGET as CONTRACT, evaluate, product_check, random_state, random_unitary, rank_probe,
};
use luinv::symfunc::{SymFunc, ch_map};
use luinv::verify::{self, Level};

// Rows are degrees m = 1..7, columns particle numbers l = 1..5.
const DIMS_BOSONS: [[u64; 5]; 7] = [
    [1, 1, 1, 1, 1],
    [1, 2, 2, 3, 3],
    [1, 3, 5, 9, 13],
    [1, 5, 12, 43, 106],
    [1, 7, 31, 264, 1856],
    [1, 11, 103, 2804, 65481],
    [1, 15, 383, 44524, 3925518],
];
const DIMS_FERMIONS: [[u64; 5]; 7] = [
    [1, 1, 1, 1, 1],
    [1, 2, 2, 3, 3],
    [1, 3, 4, 9, 12],
    [1, 5, 10, 43, 94],
    [1, 7, 23, 264, 1613],
    [1, 11, 71, 2804, 58793],
    [1, 15, 251, 44524, 3624974],
];
const GENS_BOSONS: [[u64; 5]; 7] = [
    [1, 1, 1, 1, 1],
    [0, 1, 1, 2, 2],
    [0, 1, 3, 6, 10],
    [0, 1, 6, 31, 90],
    [0, 1, 16, 209, 1730],
    [0, 1, 59, 2453, 63386],
    [0, 1, 243, 41098, 3855647],
];
const GENS_FERMIONS: [[u64; 5]; 7] = [
    [1, 1, 1, 1, 1],
    [0, 1, 1, 2, 2],
    [0, 1, 2, 6, 9],
    [0, 1, 5, 31, 79],
    [0, 1, 11, 209, 1501],
    [0, 1, 39, 2453, 56973],
    [0, 1, 157, 41098, 3562441],
];
const DIMS_MIXED: [[u64; 4]; 4] = [[1, 1, 1, 1], [2, 3, 4, 5], [3, 8, 16, 31], [5, 25, 118, 501]];
const GENS_MIXED: [[u64; 4]; 4] = [[1, 1, 1, 1], [1, 2, 3, 4], [1, 5, 12, 26], [1, 14, 96, 460]];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(bad: Vec<String>, good: String) -> Outcome {
    if bad.is_empty() { Outcome { ok: true, detail: good } } else { Outcome { ok: false, detail: bad.join("; ") } }
}

fn spec(s: &str) -> ParticleSpec {
    s.parse().unwrap()
}

/// Cells of criteria 1–3: `l ≤ 4, m ≤ 5` and `l = 5, m ≤ 4`.
fn gating_cells() -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = (1..=4).flat_map(|l| (1..=5).map(move |m| (l, m))).collect();
    v.extend((1..=4).map(|m| (5, m)));
    v
}

fn pure_dims(fermion: bool) -> Outcome {
    let table = if fermion { &DIMS_FERMIONS } else { &DIMS_BOSONS };
    let mut bad = Vec::new();
    let cells = gating_cells();
    for &(l, m) in &cells {
        let s = if fermion { ParticleSpec::fermions(l) } else { ParticleSpec::bosons(l) };
        let d = stable_dim(&s, m);
        if d != BigUint::from(table[m - 1][l - 1]) {
            bad.push(format!("{s} m={m}: {d} != {}", table[m - 1][l - 1]));
        }
    }
    outcome(bad, format!("{} cells exact", cells.len()))
}

fn generator_counts() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for (fermion, table) in [(false, &GENS_BOSONS), (true, &GENS_FERMIONS)] {
        for l in 1..=5 {
            let s = if fermion { ParticleSpec::fermions(l) } else { ParticleSpec::bosons(l) };
            let max_m = if l == 5 { 4 } else { 5 };
            let a = free_gen_counts(&s, max_m).unwrap();
            for m in 1..=max_m {
                n += 1;
                if a[m - 1] != BigUint::from(table[m - 1][l - 1]) {
                    bad.push(format!("{s} m={m}: {} != {}", a[m - 1], table[m - 1][l - 1]));
                }
            }
        }
    }
    outcome(bad, format!("{n} cells exact"))
}

fn mixed_tables() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for l in 1..=3 {
        for base in [ParticleSpec::bosons(l), ParticleSpec::fermions(l)] {
            let s = mixed_spec(&base);
            let a = free_gen_counts(&s, 4).unwrap();
            for m in 1..=4 {
                n += 2;
                let d = stable_dim(&s, m);
                if d != BigUint::from(DIMS_MIXED[m - 1][l - 1]) {
                    bad.push(format!("dims {s} m={m}: {d}"));
                }
                if a[m - 1] != BigUint::from(GENS_MIXED[m - 1][l - 1]) {
                    bad.push(format!("gens {s} m={m}: {}", a[m - 1]));
                }
            }
        }
    }
    outcome(bad, format!("{n} cells exact"))
}

fn conclusion() -> Outcome {
    let hook = spec("p2,1");
    let mixed = spec("p2,1+mixed");
    let got: Vec<BigUint> = (1..=4).map(|m| stable_dim(&hook, m)).collect();
    let got_mixed: Vec<BigUint> = (1..=3).map(|m| stable_dim(&mixed, m)).collect();
    let want: Vec<BigUint> = [1u32, 4, 18, 151].map(BigUint::from).to_vec();
    let want_mixed: Vec<BigUint> = [1u32, 8, 97].map(BigUint::from).to_vec();
    let ok = got == want && got_mixed == want_mixed;
    Outcome { ok, detail: format!("(2,1): {got:?}; mixed (2,1): {got_mixed:?}") }
}

fn graph_enumeration() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for (l, max_m) in [(1, 6), (2, 5), (3, 4), (4, 3)] {
        for m in 1..=max_m {
            n += 1;
            let count = enumerate(&[l], m, DEFAULT_GRAPH_BUDGET).unwrap().len();
            let d = stable_dim(&ParticleSpec::bosons(l), m);
            if BigUint::from(count) != d {
                bad.push(format!("b{l} m={m}: {count} classes vs d = {d}"));
            }
        }
    }
    let classes = enumerate(&[3], 3, DEFAULT_GRAPH_BUDGET).unwrap();
    let connected = classes.iter().filter(|g| g.is_connected()).count();
    if (classes.len(), connected) != (5, 3) {
        bad.push(format!("b3 m=3: {} classes, {connected} connected", classes.len()));
    }
    outcome(bad, format!("{n} (l, m) counts equal d_m; b3 m=3: 5 classes, 3 connected"))
}

fn sign_mixed(s: &ParticleSpec, m: usize) -> (usize, usize) {
    let graphs = enumerate(&s.line_sums(), m, DEFAULT_GRAPH_BUDGET).unwrap();
    let mixed = graphs
        .iter()
        .filter(|g| {
            stabilizer_signs(&CosetRep::from_graph(s, g).unwrap(), DEFAULT_COSET_BUDGET).unwrap()
                == StabilizerSigns::Mixed
        })
        .count();
    (graphs.len(), mixed)
}

fn vanishing() -> Outcome {
    let f3 = ParticleSpec::fermions(3);
    let (total, mixed) = sign_mixed(&f3, 3);
    let mackey = mackey_dim(&f3, 3, DEFAULT_GRAPH_BUDGET, DEFAULT_COSET_BUDGET).unwrap();
    let mut bad = Vec::new();
    if (total, mixed) != (5, 1) || mackey != BigUint::from(4u32) || stable_dim(&f3, 3) != mackey {
        bad.push(format!("f3 m=3: {total} cosets, {mixed} mixed, mackey {mackey}"));
    }
    // Saturated: some l_j = 1 or an even number of fermions in total.
    let mut cosets = 0;
    for (s, max_m) in [
        ("b2", 4),
        ("b3", 3),
        ("b4", 2),
        ("f2", 4),
        ("f4", 2),
        ("b1,b1", 4),
        ("f3,b1", 2),
        ("f2,f2", 2),
        ("b2,f2", 2),
        ("f3,f1", 2),
        ("f1", 5),
    ] {
        let sp = spec(s);
        for m in 1..=max_m {
            let (t, mixed) = sign_mixed(&sp, m);
            cosets += t;
            if mixed != 0 {
                bad.push(format!("{sp} m={m}: {mixed} sign-mixed"));
            }
        }
    }
    outcome(bad, format!("f3 m=3: 1 of 5 sign-mixed, mackey_dim 4; {cosets} saturated cosets all positive"))
}

/// Brute force: `χ_λ(μ)` is the coefficient of `x^{λ+δ}` in
/// `a_δ · p_μ` over `n = |λ|` variables.
fn frobenius_character(lambda: &Partition, mu: &Partition) -> BigInt {
    let n = lambda.weight();
    type Poly = BTreeMap<Vec<u32>, BigInt>;
    let mul = |a: &Poly, b: &Poly| {
        let mut out = Poly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    // Vandermonde a_δ = Σ_π sgn(π) x^{π(δ)}.
    let mut poly = Poly::new();
    for p in Permutation::all(n) {
        let e: Vec<u32> = (0..n).map(|i| (n - 1 - p.apply(i)) as u32).collect();
        poly.insert(e, BigInt::from(p.sign()));
    }
    for &r in mu.parts() {
        let pr: Poly = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = r as u32;
                (e, BigInt::one())
            })
            .collect();
        poly = mul(&poly, &pr);
    }
    let target: Vec<u32> =
        (0..n).map(|i| (lambda.parts().get(i).copied().unwrap_or(0) + n - 1 - i) as u32).collect();
    poly.get(&target).cloned().unwrap_or_default()
}

fn oracles() -> Outcome {
    let mut bad = Vec::new();
    // Contracted formula against Σ c_ν².
    let mut n_dims = 0;
    for s in ["b1", "b2", "b3", "b4", "f2", "f3", "f4", "p2,1", "p2,2", "b1,b1", "b2,f2", "f2,b1", "b1+mixed", "p2,1+mixed"] {
        let sp = spec(s);
        let max_l = sp.line_sums().into_iter().max().unwrap();
        for m in 1..=8 / max_l {
            n_dims += 1;
            if stable_dim(&sp, m) != stable_dim_by_multiplicities(&sp, m) {
                bad.push(format!("dimension routes differ for {sp} m={m}"));
            }
        }
    }
    // ch ∘ induce(χ_λ ≀ χ_μ) = s_μ[s_λ] inside S_4.
    let elements = wreath_elements(&[2], 2);
    for lambda in partitions_of(2) {
        for mu in partitions_of(2) {
            let sub: Vec<(Permutation, BigRational)> = elements
                .iter()
                .map(|w| {
                    let v = wreath_char_value(std::slice::from_ref(&lambda), &mu, w).unwrap();
                    (w.embed().swap_remove(0), BigRational::from_integer(v))
                })
                .collect();
            let induced = ch_map(&brute_force_induce(&sub, 4).unwrap());
            if induced != SymFunc::schur(&mu).plethysm(&SymFunc::schur(&lambda)) {
                bad.push(format!("induction differs from plethysm at λ={lambda}, μ={mu}"));
            }
        }
    }
    // Schur orthonormality.
    for size in 0..=6 {
        let ps = partitions_of(size);
        let ss: Vec<SymFunc> = ps.iter().map(SymFunc::schur).collect();
        for (i, a) in ss.iter().enumerate() {
            for (j, b) in ss.iter().enumerate() {
                let want = if i == j { BigRational::one() } else { BigRational::zero() };
                if a.hall_inner(b) != want {
                    bad.push(format!("<s_{}, s_{}> != δ", ps[i], ps[j]));
                }
            }
        }
    }
    // Murnaghan–Nakayama against the Frobenius formula.
    let mut n_chars = 0;
    for m in 1..=5 {
        for lambda in partitions_of(m) {
            for mu in partitions_of(m) {
                n_chars += 1;
                if character_value(&lambda, &mu).unwrap() != frobenius_character(&lambda, &mu) {
                    bad.push(format!("χ_{lambda}({mu}) differs"));
                }
            }
        }
    }
    outcome(bad, format!("{n_dims} dimension pairs, 4 inductions, Schur |λ| ≤ 6, {n_chars} characters"))
}

/// Numeric checks; each must finish within 30 s.
fn numeric() -> Outcome {
    let limit = Duration::from_secs(30);
    let cases: [(&str, usize, &[usize]); 7] = [
        ("b2", 3, &[3]),
        ("f2", 2, &[4]),
        ("f3", 3, &[5]),
        ("f3", 4, &[4]),
        ("b2,f2", 2, &[2, 3]),
        ("f2,b1", 2, &[3, 2]),
        ("b2+mixed", 2, &[2, 3]),
    ];
    let mut bad = Vec::new();
    let slow = |name: &str, t: Instant, bad: &mut Vec<String>| {
        if t.elapsed() > limit {
            bad.push(format!("{name} took {:?}", t.elapsed()));
        }
    };

    let t = Instant::now();
    let mut product_worst: f64 = 0.0;
    for (s, m, dims) in cases {
        let sp = spec(s);
        let lines = sp.line_sums();
        for seed in 0..4 {
            let psi = random_state(&sp, dims, seed).unwrap();
            for a in 1..m {
                for g in enumerate(&lines, a, DEFAULT_GRAPH_BUDGET).unwrap() {
                    for h in enumerate(&lines, m - a, DEFAULT_GRAPH_BUDGET).unwrap() {
                        product_worst = product_worst.max(product_check(&g, &h, &psi, CONTRACT).unwrap());
                    }
                }
            }
        }
    }
    if product_worst >= 1e-8 {
        bad.push(format!("multiplicativity residual {product_worst:.1e}"));
    }
    slow("multiplicativity", t, &mut bad);

    let t = Instant::now();
    let mut zero_worst: f64 = 0.0;
    let mut n_mixed = 0;
    for (s, m, dims) in cases {
        let sp = spec(s);
        let states: Vec<_> = (0..20).map(|i| random_state(&sp, dims, 1000 + i).unwrap()).collect();
        for g in enumerate(&sp.line_sums(), m, DEFAULT_GRAPH_BUDGET).unwrap() {
            let signs = stabilizer_signs(&CosetRep::from_graph(&sp, &g).unwrap(), DEFAULT_COSET_BUDGET).unwrap();
            // Scale: ‖ψ‖^{2m}.
            let values: Vec<f64> = states
                .iter()
                .map(|psi| evaluate(&g, psi, CONTRACT).unwrap().norm() / psi.norm().powi(2 * m as i32))
                .collect();
            let top = values.iter().copied().fold(0.0, f64::max);
            match signs {
                StabilizerSigns::Mixed => {
                    n_mixed += 1;
                    zero_worst = zero_worst.max(top);
                }
                StabilizerSigns::AllPositive if top <= 1e-6 => bad.push(format!("{sp} {} looks zero", g.id())),
                StabilizerSigns::AllPositive => {}
            }
        }
    }
    if n_mixed == 0 || zero_worst >= 1e-8 {
        bad.push(format!("{n_mixed} sign-mixed classes, largest value {zero_worst:.1e}"));
    }
    slow("vanishing", t, &mut bad);

    let t = Instant::now();
    let mut drift: f64 = 0.0;
    for (s, m, dims) in cases {
        let sp = spec(s);
        let psi = random_state(&sp, dims, 77).unwrap();
        let us: Vec<_> = dims.iter().enumerate().map(|(j, &n)| random_unitary(n, 80 + j as u64)).collect();
        let moved = psi.apply_local(&us).unwrap();
        for g in enumerate(&sp.line_sums(), m, DEFAULT_GRAPH_BUDGET).unwrap() {
            let a = evaluate(&g, &psi, CONTRACT).unwrap();
            let b = evaluate(&g, &moved, CONTRACT).unwrap();
            drift = drift.max((a - b).norm() / a.norm().max(1.0));
        }
    }
    if drift >= 1e-9 {
        bad.push(format!("LU drift {drift:.1e}"));
    }
    slow("lu", t, &mut bad);

    let t = Instant::now();
    for (s, max_m) in [("b2", 3), ("f2", 3), ("b3", 2), ("f3", 2)] {
        let sp = spec(s);
        let l = sp.line_sums()[0];
        for m in 1..=max_m {
            let classes = enumerate(&[l], m, DEFAULT_GRAPH_BUDGET).unwrap().len();
            let r = rank_probe(&sp, m, &[m * l], classes + 3, 5, CONTRACT).unwrap();
            let d = stable_dim(&sp, m);
            if BigUint::from(r) != d {
                bad.push(format!("rank_probe {sp} m={m}: {r} vs d = {d}"));
            }
        }
    }
    slow("rank_probe", t, &mut bad);

    let t = Instant::now();
    let mut emb: f64 = 0.0;
    for (s, m, dims) in cases {
        let sp = spec(s);
        let psi = random_state(&sp, dims, 91).unwrap();
        let big: Vec<usize> = dims.iter().map(|n| n + 1).collect();
        let e = psi.embed(&big).unwrap();
        for g in enumerate(&sp.line_sums(), m, DEFAULT_GRAPH_BUDGET).unwrap() {
            emb = emb.max((evaluate(&g, &psi, CONTRACT).unwrap() - evaluate(&g, &e, CONTRACT).unwrap()).norm());
        }
    }
    if emb >= 1e-12 {
        bad.push(format!("embedding difference {emb:.1e}"));
    }
    slow("embedding", t, &mut bad);

    outcome(
        bad,
        format!(
            "product {product_worst:.0e}, {n_mixed} sign-mixed max {zero_worst:.0e}, LU drift {drift:.0e}, rank probes exact, embedding {emb:.0e}"
        ),
    )
}

fn determinism() -> Outcome {
    let run_with = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| verify::run(Level::Quick))
    };
    let reports: Vec<String> =
        [1, 2, 4, 1].iter().map(|&t| serde_json::to_string(&run_with(t).without_timing()).unwrap()).collect();
    let ok = reports.windows(2).all(|w| w[0] == w[1]);
    Outcome { ok, detail: format!("{} quick reports at 1, 2, 4, 1 threads identical: {ok}", reports.len()) }
}

fn main() {
    let start = Instant::now();
    let t1 = Instant::now();
    let mut c1 = pure_dims(false);
    if t1.elapsed() > Duration::from_secs(60) {
        c1.ok = false;
        c1.detail.push_str(&format!("; took {:?}", t1.elapsed()));
    }
    let criteria: Vec<(u32, &str, Outcome)> = vec![
        (1, "boson stable dimensions", c1),
        (2, "fermion stable dimensions", pure_dims(true)),
        (3, "free generator counts", generator_counts()),
        (4, "mixed-state dimensions and generators", mixed_tables()),
        (5, "(2,1) sequences", conclusion()),
        (6, "graph enumeration", graph_enumeration()),
        (7, "Mackey count and vanishing", vanishing()),
        (8, "oracle equivalences", oracles()),
        (9, "numeric suite", numeric()),
        (10, "determinism", determinism()),
    ];
    for (n, name, o) in &criteria {
        println!("{} criterion {n} ({name}): {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("total {:.2} s", start.elapsed().as_secs_f64());
    let failed: Vec<u32> = criteria.iter().filter(|c| !c.2.ok).map(|c| c.0).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
