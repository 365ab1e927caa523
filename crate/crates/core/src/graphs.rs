//! Colored regular bipartite multigraphs as tuples of integer stochastic matrices.
//!
//! A degree-`m` graph with line sums `l_1..l_k` is a `k`-tuple of `m × m`
//! nonnegative integer matrices, matrix `j` having every row and column sum
//! equal to `l_j`. Rows are the first vertex class, columns the second. Two
//! tuples are equivalent when they differ by one row permutation and one
//! column permutation applied to all matrices at once.
//!
//! The canonical representative is the lexicographically smallest tuple,
//! flattened as `mats[0]` row-major, then `mats[1]`, and so on. For a fixed row
//! order the best column order is simply the columns sorted by their stacked
//! column vectors, so only the `m!` row orders are searched.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::combinatorics::Permutation;
use crate::error::{Error, Result};

/// Default cap on `Σ_j l_j · m` for [`enumerate`].
pub const DEFAULT_GRAPH_BUDGET: usize = 24;

/// Largest degree [`enumerate`] accepts; canonicalization scans all `m!` row orders.
pub const MAX_ENUMERATION_DEGREE: usize = 8;

/// An equivalence class of colored regular bipartite multigraphs, stored in
/// canonical form. Ordering follows the canonical flattened tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphClass {
    line_sums: Vec<usize>,
    m: usize,
    /// `mats[j][r * m + c]`.
    mats: Vec<Vec<u32>>,
}

fn check_shape(line_sums: &[usize], m: usize, mats: &[Vec<u32>]) -> Result<()> {
    if line_sums.is_empty() {
        return Err(Error::InvalidGraph("at least one color is required".into()));
    }
    if mats.len() != line_sums.len() {
        return Err(Error::InvalidGraph(format!(
            "{} matrices for {} colors",
            mats.len(),
            line_sums.len()
        )));
    }
    for (j, (mat, &l)) in mats.iter().zip(line_sums).enumerate() {
        if mat.len() != m * m {
            return Err(Error::InvalidGraph(format!("matrix {j} is not {m}×{m}")));
        }
        for i in 0..m {
            let row: usize = (0..m).map(|c| mat[i * m + c] as usize).sum();
            let col: usize = (0..m).map(|r| mat[r * m + i] as usize).sum();
            if row != l || col != l {
                return Err(Error::InvalidGraph(format!(
                    "matrix {j} line {i} sums to ({row}, {col}), expected {l}"
                )));
            }
        }
    }
    Ok(())
}

/// Lexicographically minimal flattened tuple over all row/column permutations.
fn canonical_mats(m: usize, mats: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let k = mats.len();
    let mut best: Option<Vec<u32>> = None;
    let mut cand = Vec::with_capacity(k * m * m);
    let mut cols: Vec<usize> = (0..m).collect();
    for perm in Permutation::all(m) {
        let rows = perm.images();
        let key = |c: usize| (0..k).flat_map(move |j| rows.iter().map(move |&r| mats[j][r * m + c]));
        cols.sort_by(|&a, &b| key(a).cmp(key(b)));
        cand.clear();
        let mut state = std::cmp::Ordering::Equal;
        'fill: for mat in mats {
            for &r in rows {
                for &c in &cols {
                    let x = mat[r * m + c];
                    if state == std::cmp::Ordering::Equal {
                        if let Some(b) = &best {
                            state = x.cmp(&b[cand.len()]);
                            if state == std::cmp::Ordering::Greater {
                                break 'fill;
                            }
                        } else {
                            state = std::cmp::Ordering::Less;
                        }
                    }
                    cand.push(x);
                }
            }
        }
        if state == std::cmp::Ordering::Less {
            best = Some(cand.clone());
        }
    }
    let flat = best.expect("at least one permutation");
    flat.chunks(m * m).map(<[u32]>::to_vec).collect()
}

impl GraphClass {
    /// Canonicalizes a raw tuple of row-major `m × m` matrices.
    pub fn canonicalize(line_sums: &[usize], m: usize, mats: Vec<Vec<u32>>) -> Result<GraphClass> {
        check_shape(line_sums, m, &mats)?;
        let mats = if m == 0 { mats } else { canonical_mats(m, &mats) };
        Ok(GraphClass { line_sums: line_sums.to_vec(), m, mats })
    }

    /// Canonicalizes nested matrices, `raw[j][r][c]`.
    pub fn from_matrices(line_sums: &[usize], raw: &[Vec<Vec<u32>>]) -> Result<GraphClass> {
        let m = raw.first().map_or(0, Vec::len);
        let mut flat = Vec::with_capacity(raw.len());
        for (j, mat) in raw.iter().enumerate() {
            if mat.len() != m || mat.iter().any(|row| row.len() != m) {
                return Err(Error::InvalidGraph(format!("matrix {j} is not {m}×{m}")));
            }
            flat.push(mat.concat());
        }
        Self::canonicalize(line_sums, m, flat)
    }

    /// The degree-0 graph (no vertices).
    pub fn empty(line_sums: &[usize]) -> GraphClass {
        GraphClass { line_sums: line_sums.to_vec(), m: 0, mats: vec![Vec::new(); line_sums.len()] }
    }

    /// `l_j · I_m` for every color.
    pub fn diagonal(line_sums: &[usize], m: usize) -> GraphClass {
        let mats = line_sums
            .iter()
            .map(|&l| (0..m * m).map(|x| if x / m == x % m { l as u32 } else { 0 }).collect())
            .collect();
        GraphClass::canonicalize(line_sums, m, mats).expect("regular by construction")
    }

    pub fn k(&self) -> usize {
        self.line_sums.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn line_sums(&self) -> &[usize] {
        &self.line_sums
    }

    /// Entry `(r, c)` of color `j`.
    pub fn entry(&self, j: usize, r: usize, c: usize) -> u32 {
        self.mats[j][r * self.m + c]
    }

    /// Canonical matrices, each row-major.
    pub fn mats(&self) -> &[Vec<u32>] {
        &self.mats
    }

    pub fn matrix_rows(&self, j: usize) -> Vec<Vec<u32>> {
        self.mats[j].chunks(self.m.max(1)).map(<[u32]>::to_vec).collect()
    }

    /// Compact identifier: colors separated by `/`, rows by `.`; entries are
    /// digits, or comma separated when some entry exceeds 9.
    pub fn id(&self) -> String {
        let wide = self.mats.iter().flatten().any(|&x| x > 9);
        let sep = if wide { "," } else { "" };
        let colors: Vec<String> = (0..self.k())
            .map(|j| {
                let rows: Vec<String> = self
                    .matrix_rows(j)
                    .iter()
                    .map(|row| row.iter().map(u32::to_string).collect::<Vec<_>>().join(sep))
                    .collect();
                rows.join(".")
            })
            .collect();
        colors.join("/")
    }

    /// Parses an identifier produced by [`GraphClass::id`].
    pub fn from_id(line_sums: &[usize], id: &str) -> Result<GraphClass> {
        let bad = || Error::Parse(format!("bad graph id {id:?}"));
        let mut raw = Vec::new();
        for color in id.split('/') {
            let mut mat = Vec::new();
            for row in color.split('.') {
                let entries: Option<Vec<u32>> = if row.contains(',') {
                    row.split(',').map(|t| t.trim().parse().ok()).collect()
                } else {
                    row.chars().map(|c| c.to_digit(10)).collect()
                };
                mat.push(entries.ok_or_else(bad)?);
            }
            raw.push(mat);
        }
        Self::from_matrices(line_sums, &raw)
    }

    /// Whether the union of all colors is connected on the `2m` vertices.
    pub fn is_connected(&self) -> bool {
        self.m <= 1 || self.components_raw().len() == 1
    }

    /// Vertex sets `(rows, cols)` of the connected components.
    fn components_raw(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let m = self.m;
        let mut comp = vec![usize::MAX; 2 * m];
        let mut out = Vec::new();
        for start in 0..m {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp[start] = id;
            let (mut rows, mut cols) = (Vec::new(), Vec::new());
            while let Some(v) = stack.pop() {
                if v < m {
                    rows.push(v);
                } else {
                    cols.push(v - m);
                }
                for w in 0..m {
                    let (r, c, next) = if v < m { (v, w, m + w) } else { (w, v - m, w) };
                    if comp[next] == usize::MAX && self.mats.iter().any(|mat| mat[r * m + c] > 0) {
                        comp[next] = id;
                        stack.push(next);
                    }
                }
            }
            rows.sort_unstable();
            cols.sort_unstable();
            out.push((rows, cols));
        }
        out
    }

    /// Connected components as graph classes, sorted.
    pub fn components(&self) -> Vec<GraphClass> {
        let mut out: Vec<GraphClass> = self
            .components_raw()
            .into_iter()
            .map(|(rows, cols)| {
                let n = rows.len();
                let mats = self
                    .mats
                    .iter()
                    .map(|mat| rows.iter().flat_map(|&r| cols.iter().map(move |&c| mat[r * self.m + c])).collect())
                    .collect();
                GraphClass::canonicalize(&self.line_sums, n, mats).expect("components are regular")
            })
            .collect();
        out.sort();
        out
    }

    /// Block-diagonal sum, canonicalized.
    pub fn disjoint_union(&self, other: &GraphClass) -> Result<GraphClass> {
        if self.line_sums != other.line_sums {
            return Err(Error::Shape(format!(
                "line sums {:?} and {:?} differ",
                self.line_sums, other.line_sums
            )));
        }
        let (a, b) = (self.m, other.m);
        let n = a + b;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(x, y)| {
                let mut mat = vec![0; n * n];
                for r in 0..a {
                    mat[r * n..r * n + a].copy_from_slice(&x[r * a..(r + 1) * a]);
                }
                for r in 0..b {
                    mat[(a + r) * n + a..(a + r) * n + n].copy_from_slice(&y[r * b..(r + 1) * b]);
                }
                mat
            })
            .collect();
        GraphClass::canonicalize(&self.line_sums, n, mats)
    }

    /// Swaps the two vertex classes (transposes every matrix).
    pub fn transpose(&self) -> GraphClass {
        let m = self.m;
        let mats = self.mats.iter().map(|mat| (0..m * m).map(|x| mat[(x % m) * m + x / m]).collect()).collect();
        GraphClass::canonicalize(&self.line_sums, m, mats).expect("transpose keeps line sums")
    }

    /// Some permutation tuple whose graph is `self`: block `i` of color `j`
    /// sends its points, in order, to the next free points of the target blocks.
    /// Columns are first reordered so that a perfect matching of the union
    /// sits on the diagonal, which makes `l·I` map to identity permutations.
    pub fn to_perm_tuple(&self) -> Vec<Permutation> {
        let m = self.m;
        // Column block `order[i]` becomes target block `i`.
        let order = self.diagonal_matching();
        self.line_sums
            .iter()
            .enumerate()
            .map(|(j, &l)| {
                let mut next_free: Vec<usize> = (0..m).map(|c| c * l).collect();
                let mut images = vec![0; m * l];
                for r in 0..m {
                    let mut x = r * l;
                    for (new, &c) in order.iter().enumerate() {
                        for _ in 0..self.entry(j, r, c) {
                            images[x] = next_free[new];
                            next_free[new] += 1;
                            x += 1;
                        }
                    }
                }
                Permutation::from_images(images).expect("regular graph gives a bijection")
            })
            .collect()
    }

    /// Column matched to each row in a perfect matching of the union support
    /// (exists because the union is regular).
    fn diagonal_matching(&self) -> Vec<usize> {
        let m = self.m;
        let adj = |r: usize, c: usize| self.mats.iter().any(|mat| mat[r * m + c] > 0);
        let mut row_of_col: Vec<Option<usize>> = vec![None; m];
        fn augment(
            r: usize,
            m: usize,
            adj: &dyn Fn(usize, usize) -> bool,
            seen: &mut [bool],
            row_of_col: &mut [Option<usize>],
        ) -> bool {
            for c in 0..m {
                if adj(r, c) && !seen[c] {
                    seen[c] = true;
                    if row_of_col[c].is_none_or(|r2| augment(r2, m, adj, seen, row_of_col)) {
                        row_of_col[c] = Some(r);
                        return true;
                    }
                }
            }
            false
        }
        for r in 0..m {
            let ok = augment(r, m, &adj, &mut vec![false; m], &mut row_of_col);
            assert!(ok, "regular bipartite graphs have perfect matchings");
        }
        let mut col_of_row = vec![0; m];
        for (c, r) in row_of_col.into_iter().enumerate() {
            col_of_row[r.expect("perfect")] = c;
        }
        col_of_row
    }

    /// Graph of a permutation tuple, `σ_j ∈ S_{m l_j}`: entry `(i, i')` of color
    /// `j` counts the points of block `i` sent into block `i'`.
    pub fn from_perm_tuple(sigmas: &[Permutation], line_sums: &[usize], m: usize) -> Result<GraphClass> {
        if sigmas.len() != line_sums.len() {
            return Err(Error::Shape(format!("{} permutations for {} colors", sigmas.len(), line_sums.len())));
        }
        let mut mats = Vec::with_capacity(sigmas.len());
        for (s, &l) in sigmas.iter().zip(line_sums) {
            if s.len() != m * l {
                return Err(Error::Shape(format!("permutation of {} points, expected {}", s.len(), m * l)));
            }
            let mut mat = vec![0u32; m * m];
            for x in 0..m * l {
                mat[(x / l) * m + s.apply(x) / l] += 1;
            }
            mats.push(mat);
        }
        GraphClass::canonicalize(line_sums, m, mats)
    }

    /// Directed view for graphs whose last color is a perfect matching.
    pub fn to_directed(&self) -> Result<DirectedGraphClass> {
        if self.line_sums.last() != Some(&1) {
            return Err(Error::InvalidArgument(format!(
                "the last color must have line sum 1, got {:?}",
                self.line_sums
            )));
        }
        let m = self.m;
        let k = self.k();
        // Column matched with row v.
        let partner: Vec<usize> =
            (0..m).map(|v| (0..m).find(|&c| self.entry(k - 1, v, c) == 1).expect("perfect matching")).collect();
        let mats = (0..k - 1)
            .map(|j| (0..m * m).map(|x| self.entry(j, x / m, partner[x % m])).collect())
            .collect();
        DirectedGraphClass::canonicalize(&self.line_sums[..k - 1], m, mats)
    }

    /// DOT rendering; rows are `r1..rm`, columns `c1..cm`, one edge per unit of multiplicity.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for i in 1..=self.m {
            let _ = writeln!(s, "  r{i} [shape=circle];");
        }
        for i in 1..=self.m {
            let _ = writeln!(s, "  c{i} [shape=box];");
        }
        for j in 0..self.k() {
            for r in 0..self.m {
                for c in 0..self.m {
                    for _ in 0..self.entry(j, r, c) {
                        let _ = writeln!(s, "  r{} -- c{} [color={}];", r + 1, c + 1, palette(j));
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { k: self.k(), m: self.m, line_sums: self.line_sums.clone(), mats: self.mats.clone() }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

const PALETTE: [&str; 8] = ["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "gray"];

fn palette(j: usize) -> &'static str {
    PALETTE[j % PALETTE.len()]
}

/// JSON form of a graph: matrices as row-major flat arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub k: usize,
    pub m: usize,
    pub line_sums: Vec<usize>,
    pub mats: Vec<Vec<u32>>,
}

impl TryFrom<GraphJson> for GraphClass {
    type Error = Error;

    fn try_from(g: GraphJson) -> Result<GraphClass> {
        if g.k != g.line_sums.len() {
            return Err(Error::InvalidGraph(format!("k = {} but {} line sums", g.k, g.line_sums.len())));
        }
        GraphClass::canonicalize(&g.line_sums, g.m, g.mats)
    }
}

/// Every class with the given line sums and degree, sorted, without repeats.
///
/// Candidates are tuples whose rows and columns are already in sorted order
/// (the canonical form has this shape); each is canonicalized and deduplicated.
/// Fails when `Σ_j l_j · m` exceeds `budget` or `m` exceeds [`MAX_ENUMERATION_DEGREE`].
pub fn enumerate(line_sums: &[usize], m: usize, budget: usize) -> Result<Vec<GraphClass>> {
    if line_sums.is_empty() {
        return Err(Error::InvalidArgument("at least one color is required".into()));
    }
    let cost: usize = line_sums.iter().map(|l| l * m).sum();
    if cost > budget {
        return Err(Error::Budget(format!(
            "graph enumeration with Σ l_j·m = {cost} exceeds the budget {budget}"
        )));
    }
    if m > MAX_ENUMERATION_DEGREE {
        return Err(Error::Budget(format!(
            "graph enumeration at degree {m} exceeds the maximum degree {MAX_ENUMERATION_DEGREE}"
        )));
    }
    if m == 0 {
        return Ok(vec![GraphClass::empty(line_sums)]);
    }
    let k = line_sums.len();
    let mut gen = Generator {
        k,
        m,
        line_sums: line_sums.to_vec(),
        mats: vec![vec![0; m * m]; k],
        col_left: line_sums.iter().map(|&l| vec![l as u32; m]).collect(),
        found: BTreeSet::new(),
    };
    gen.row(0);
    Ok(gen.found.into_iter().collect())
}

struct Generator {
    k: usize,
    m: usize,
    line_sums: Vec<usize>,
    mats: Vec<Vec<u32>>,
    col_left: Vec<Vec<u32>>,
    found: BTreeSet<GraphClass>,
}

impl Generator {
    fn row_key(&self, r: usize) -> Vec<u32> {
        let m = self.m;
        self.mats.iter().flat_map(|mat| mat[r * m..(r + 1) * m].iter().copied()).collect()
    }

    fn col_key(&self, c: usize) -> Vec<u32> {
        let m = self.m;
        self.mats.iter().flat_map(|mat| (0..m).map(move |r| mat[r * m + c])).collect()
    }

    fn row(&mut self, r: usize) {
        if r == self.m {
            if (1..self.m).all(|c| self.col_key(c - 1) <= self.col_key(c)) {
                let g = GraphClass::canonicalize(&self.line_sums, self.m, self.mats.clone())
                    .expect("regular by construction");
                self.found.insert(g);
            }
            return;
        }
        self.color(r, 0);
    }

    /// Fills row `r` of color `j` and onwards.
    fn color(&mut self, r: usize, j: usize) {
        if j == self.k {
            if r > 0 && self.row_key(r - 1) > self.row_key(r) {
                return;
            }
            self.row(r + 1);
            return;
        }
        let total = self.line_sums[j] as u32;
        self.cell(r, j, 0, total);
    }

    fn cell(&mut self, r: usize, j: usize, c: usize, left: u32) {
        let m = self.m;
        if c == m - 1 {
            if left > self.col_left[j][c] {
                return;
            }
            self.place(r, j, c, left);
            if self.prefix_ok(r, j) {
                self.color(r, j + 1);
            }
            self.place(r, j, c, 0);
            return;
        }
        let hi = left.min(self.col_left[j][c]);
        for x in 0..=hi {
            self.place(r, j, c, x);
            self.cell(r, j, c + 1, left - x);
        }
        self.place(r, j, c, 0);
    }

    fn place(&mut self, r: usize, j: usize, c: usize, x: u32) {
        let m = self.m;
        let old = self.mats[j][r * m + c];
        self.col_left[j][c] = self.col_left[j][c] + old - x;
        self.mats[j][r * m + c] = x;
    }

    /// Columns of the first color must stay sorted on the rows built so far.
    fn prefix_ok(&self, r: usize, j: usize) -> bool {
        if j != 0 {
            return true;
        }
        let m = self.m;
        let mat = &self.mats[0];
        (1..m).all(|c| {
            let a = (0..=r).map(|i| mat[i * m + c - 1]);
            let b = (0..=r).map(|i| mat[i * m + c]);
            a.le(b)
        })
    }
}

/// A class of directed multigraphs on `m` vertices, color `j` with every in-
/// and out-degree `l_j`, up to simultaneous relabeling of the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedGraphClass {
    line_sums: Vec<usize>,
    m: usize,
    /// `mats[j][u * m + v]` edges `u → v`.
    mats: Vec<Vec<u32>>,
}

impl DirectedGraphClass {
    /// Canonical form: lexicographic minimum over vertex relabelings.
    pub fn canonicalize(line_sums: &[usize], m: usize, mats: Vec<Vec<u32>>) -> Result<DirectedGraphClass> {
        if mats.len() != line_sums.len() {
            return Err(Error::InvalidGraph(format!(
                "{} matrices for {} colors",
                mats.len(),
                line_sums.len()
            )));
        }
        check_directed(line_sums, m, &mats)?;
        let mut best: Option<Vec<Vec<u32>>> = None;
        for perm in Permutation::all(m) {
            let p = perm.images();
            let cand: Vec<Vec<u32>> =
                mats.iter().map(|mat| (0..m * m).map(|x| mat[p[x / m] * m + p[x % m]]).collect()).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        Ok(DirectedGraphClass { line_sums: line_sums.to_vec(), m, mats: best.unwrap_or_default() })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn line_sums(&self) -> &[usize] {
        &self.line_sums
    }

    pub fn mats(&self) -> &[Vec<u32>] {
        &self.mats
    }

    /// Bipartite graph with the vertex pairing restored as a final line-sum-1 color.
    pub fn to_bipartite(&self) -> GraphClass {
        let m = self.m;
        let mut line_sums = self.line_sums.clone();
        line_sums.push(1);
        let mut mats = self.mats.clone();
        mats.push((0..m * m).map(|x| u32::from(x / m == x % m)).collect());
        GraphClass::canonicalize(&line_sums, m, mats).expect("regular by construction")
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n");
        for i in 1..=self.m {
            let _ = writeln!(s, "  v{i};");
        }
        for (j, mat) in self.mats.iter().enumerate() {
            for u in 0..self.m {
                for v in 0..self.m {
                    for _ in 0..mat[u * self.m + v] {
                        let _ = writeln!(s, "  v{} -> v{} [color={}];", u + 1, v + 1, palette(j));
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

fn check_directed(line_sums: &[usize], m: usize, mats: &[Vec<u32>]) -> Result<()> {
    for (j, (mat, &l)) in mats.iter().zip(line_sums).enumerate() {
        if mat.len() != m * m {
            return Err(Error::InvalidGraph(format!("matrix {j} is not {m}×{m}")));
        }
        for v in 0..m {
            let out: usize = (0..m).map(|w| mat[v * m + w] as usize).sum();
            let inn: usize = (0..m).map(|w| mat[w * m + v] as usize).sum();
            if out != l || inn != l {
                return Err(Error::InvalidGraph(format!("color {j} vertex {v} has degrees ({out}, {inn}), expected {l}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::from_cycles_str(n, s).unwrap()
    }

    fn g1(l: usize, rows: &[&[u32]]) -> GraphClass {
        let raw = vec![rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()];
        GraphClass::from_matrices(&[l], &raw).unwrap()
    }

    /// Brute-force canonical form: minimum over all row and column permutations.
    fn brute_canonical(g: &GraphClass) -> Vec<Vec<u32>> {
        let m = g.m();
        let mut best: Option<Vec<Vec<u32>>> = None;
        for p in Permutation::all(m) {
            for q in Permutation::all(m) {
                let cand: Vec<Vec<u32>> = g
                    .mats()
                    .iter()
                    .map(|mat| (0..m * m).map(|x| mat[p.apply(x / m) * m + q.apply(x % m)]).collect())
                    .collect();
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(g1(3, &[&[3]]).mats(), &[vec![3]]);
        assert_eq!(g1(2, &[&[0, 2], &[2, 0]]), g1(2, &[&[2, 0], &[0, 2]]));
        assert!(GraphClass::from_matrices(&[2], &[vec![vec![1, 0], vec![1, 2]]]).is_err());
        assert!(GraphClass::from_matrices(&[2], &[vec![vec![2, 0]]]).is_err());
    }

    #[test]
    fn canonical_matches_brute_force() {
        for ls in [vec![2], vec![3], vec![1, 2], vec![2, 1]] {
            for m in 1..=4 {
                if ls.iter().sum::<usize>() * m > 10 {
                    continue;
                }
                for g in enumerate(&ls, m, 24).unwrap() {
                    assert_eq!(g.mats(), brute_canonical(&g).as_slice());
                }
            }
        }
    }

    /// Independent count: orbits of tuples of stochastic matrices found by
    /// closing every raw tuple under the group and counting distinct orbits.
    fn brute_count(ls: &[usize], m: usize) -> usize {
        fn all_mats(l: usize, m: usize) -> Vec<Vec<u32>> {
            let mut out = Vec::new();
            let mut cur = vec![0u32; m * m];
            fn rec(i: usize, l: usize, m: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
                if i == m * m {
                    let ok = (0..m).all(|r| (0..m).map(|c| cur[r * m + c] as usize).sum::<usize>() == l)
                        && (0..m).all(|c| (0..m).map(|r| cur[r * m + c] as usize).sum::<usize>() == l);
                    if ok {
                        out.push(cur.clone());
                    }
                    return;
                }
                for x in 0..=l as u32 {
                    cur[i] = x;
                    rec(i + 1, l, m, cur, out);
                }
                cur[i] = 0;
            }
            rec(0, l, m, &mut cur, &mut out);
            out
        }
        let per_color: Vec<Vec<Vec<u32>>> = ls.iter().map(|&l| all_mats(l, m)).collect();
        let mut tuples: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
        for options in &per_color {
            tuples = tuples
                .into_iter()
                .flat_map(|t| options.iter().map(move |o| {
                    let mut t = t.clone();
                    t.push(o.clone());
                    t
                }))
                .collect();
        }
        let mut seen: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
        let mut orbits = 0;
        for t in tuples {
            if seen.contains(&t) {
                continue;
            }
            orbits += 1;
            for p in Permutation::all(m) {
                for q in Permutation::all(m) {
                    let img: Vec<Vec<u32>> = t
                        .iter()
                        .map(|mat| (0..m * m).map(|x| mat[p.apply(x / m) * m + q.apply(x % m)]).collect())
                        .collect();
                    seen.insert(img);
                }
            }
        }
        orbits
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(&[3], 3, 24).unwrap().len(), 5);
        for m in 1..=6 {
            assert_eq!(enumerate(&[1], m, 24).unwrap().len(), 1);
        }
        assert_eq!(enumerate(&[2], 4, 24).unwrap().len(), 5);
        assert_eq!(enumerate(&[1, 1], 2, 24).unwrap().len(), 2);
        for (ls, m) in [(vec![2], 3), (vec![3], 2), (vec![1, 1], 3), (vec![2, 1], 2), (vec![1, 2], 2), (vec![2, 2], 2)] {
            assert_eq!(enumerate(&ls, m, 24).unwrap().len(), brute_count(&ls, m), "{ls:?} m={m}");
        }
        assert!(matches!(enumerate(&[5], 5, 24), Err(Error::Budget(_))));
        assert_eq!(enumerate(&[2], 0, 24).unwrap(), vec![GraphClass::empty(&[2])]);
    }

    #[test]
    fn connectivity() {
        let all = enumerate(&[3], 3, 24).unwrap();
        assert_eq!(all.iter().filter(|g| g.is_connected()).count(), 3);
        assert!(g1(4, &[&[4]]).is_connected());
        for m in 2..5 {
            assert!(!GraphClass::diagonal(&[3], m).is_connected());
        }
    }

    #[test]
    fn unions() {
        let a = g1(3, &[&[3]]);
        let b = g1(3, &[&[2, 1], &[1, 2]]);
        assert_eq!(a.disjoint_union(&b).unwrap(), b.disjoint_union(&a).unwrap());
        assert_eq!(a.disjoint_union(&a).unwrap(), GraphClass::diagonal(&[3], 2));
        assert!(a.disjoint_union(&g1(2, &[&[2]])).is_err());

        // Every class at degree <= 3 is the union of its components, and the
        // connected classes at degrees 1..3 generate each class exactly once.
        let mut connected = Vec::new();
        for m in 1..=3 {
            for g in enumerate(&[3], m, 24).unwrap() {
                let parts = g.components();
                let rebuilt = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| acc.disjoint_union(p).unwrap());
                assert_eq!(rebuilt, g);
                assert!(parts.iter().all(GraphClass::is_connected));
                if parts.len() == 1 {
                    connected.push(g);
                }
            }
        }
        let mut products = BTreeSet::new();
        let mut count = 0;
        // multisets of connected classes with total degree 3
        for (i, x) in connected.iter().enumerate() {
            if x.m() == 3 {
                products.insert(x.clone());
                count += 1;
            }
            for (jj, y) in connected.iter().enumerate().skip(i) {
                if x.m() + y.m() == 3 {
                    products.insert(x.disjoint_union(y).unwrap());
                    count += 1;
                }
                for z in connected.iter().skip(jj) {
                    if x.m() + y.m() + z.m() == 3 {
                        products.insert(x.disjoint_union(y).unwrap().disjoint_union(z).unwrap());
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 5);
        assert_eq!(products.into_iter().collect::<Vec<_>>(), enumerate(&[3], 3, 24).unwrap());
    }

    #[test]
    fn union_associative() {
        let all: Vec<GraphClass> = (1..=2).flat_map(|m| enumerate(&[2, 1], m, 24).unwrap()).collect();
        for a in &all {
            for b in &all {
                for c in &all {
                    let left = a.disjoint_union(b).unwrap().disjoint_union(c).unwrap();
                    let right = a.disjoint_union(&b.disjoint_union(c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn permutations_to_graphs() {
        let ids: Vec<Permutation> = vec![Permutation::identity(6), Permutation::identity(9)];
        assert_eq!(GraphClass::from_perm_tuple(&ids, &[2, 3], 3).unwrap(), GraphClass::diagonal(&[2, 3], 3));

        let pair = vec![cyc(6, "(123564)"), cyc(9, "(17896)")];
        let g = GraphClass::from_perm_tuple(&pair, &[2, 3], 3).unwrap();
        let expected = GraphClass::from_matrices(
            &[2, 3],
            &[
                vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]],
                vec![vec![2, 0, 1], vec![1, 2, 0], vec![0, 1, 2]],
            ],
        )
        .unwrap();
        assert_eq!(g, expected);
        assert!(GraphClass::from_perm_tuple(&pair, &[2, 2], 3).is_err());
    }

    #[test]
    fn listed_three_boson_representatives() {
        let listed = ["()", "(67)", "(34)", "(34)(57)(68)", "(24)(37)(68)"];
        let classes: BTreeSet<GraphClass> = listed
            .iter()
            .map(|s| GraphClass::from_perm_tuple(&[cyc(9, s)], &[3], 3).unwrap())
            .collect();
        // (67) and (34) both move one point between two blocks, so they share a class.
        assert_eq!(classes.len(), 4);
        let missing = GraphClass::from_perm_tuple(&[cyc(9, "(34)(67)")], &[3], 3).unwrap();
        let mut all = classes.clone();
        all.insert(missing);
        assert_eq!(all.into_iter().collect::<Vec<_>>(), enumerate(&[3], 3, 24).unwrap());
    }

    #[test]
    fn perm_roundtrip() {
        for (ls, m) in [(vec![3], 3), (vec![2, 3], 3), (vec![1], 4), (vec![2, 2, 1], 2)] {
            for g in enumerate(&ls, m, 24).unwrap() {
                let sigmas = g.to_perm_tuple();
                assert_eq!(GraphClass::from_perm_tuple(&sigmas, &ls, m).unwrap(), g);
            }
        }
        let d = GraphClass::diagonal(&[3, 2], 3);
        assert!(d.to_perm_tuple().iter().all(Permutation::is_identity));
    }

    #[test]
    fn transposition_swaps_classes() {
        let all = enumerate(&[2, 2], 3, 24).unwrap();
        for g in &all {
            assert_eq!(&g.transpose().transpose(), g);
            let inv: Vec<Permutation> = g.to_perm_tuple().iter().map(Permutation::inverse).collect();
            assert_eq!(GraphClass::from_perm_tuple(&inv, &[2, 2], 3).unwrap(), g.transpose());
        }
        assert_eq!(all.iter().filter(|g| g.transpose() != **g).count(), 2);
    }

    #[test]
    fn directed_view() {
        let single = GraphClass::diagonal(&[2, 3, 1], 1).to_directed().unwrap();
        assert_eq!(single.mats(), &[vec![2], vec![3]]);
        assert!(GraphClass::diagonal(&[2], 2).to_directed().is_err());
        for m in 1..=3 {
            let all = enumerate(&[2, 1], m, 24).unwrap();
            let directed: BTreeSet<DirectedGraphClass> = all.iter().map(|g| g.to_directed().unwrap()).collect();
            assert_eq!(directed.len(), all.len());
            for g in &all {
                let d = g.to_directed().unwrap();
                assert_eq!(&d.to_bipartite(), g);
                assert_eq!(d.to_bipartite().to_directed().unwrap(), d);
            }
        }
    }

    #[test]
    fn ids_and_json() {
        let g = g1(3, &[&[2, 1], &[1, 2]]);
        assert_eq!(g.id(), "12.21");
        assert_eq!(GraphClass::from_id(&[3], "21.12").unwrap(), g);
        let wide = g1(12, &[&[12]]);
        assert_eq!(wide.id(), "12");
        let w2 = GraphClass::diagonal(&[10], 2);
        assert_eq!(w2.id(), "0,10.10,0");
        assert_eq!(GraphClass::from_id(&[10], &w2.id()).unwrap(), w2);
        let two = GraphClass::diagonal(&[2, 1], 2);
        assert_eq!(two.id(), "02.20/01.10");
        let json = serde_json::to_string(&two.to_json()).unwrap();
        assert_eq!(json, r#"{"k":2,"m":2,"line_sums":[2,1],"mats":[[0,2,2,0],[0,1,1,0]]}"#);
        let back: GraphJson = serde_json::from_str(&json).unwrap();
        assert_eq!(GraphClass::try_from(back).unwrap(), two);
    }

    /// Minimal DOT grammar: header, node and edge statements, closing brace.
    fn valid_dot(text: &str, directed: bool) -> bool {
        let mut lines = text.lines();
        let header = if directed { "digraph G {" } else { "graph G {" };
        if lines.next() != Some(header) {
            return false;
        }
        let ident = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        let attrs = |s: &str| {
            s.strip_prefix('[').and_then(|x| x.strip_suffix(']')).is_some_and(|inner| {
                inner.split(',').all(|kv| matches!(kv.split_once('='), Some((k, v)) if ident(k.trim()) && ident(v.trim())))
            })
        };
        let body: Vec<&str> = lines.collect();
        if body.last() != Some(&"}") {
            return false;
        }
        let arrow = if directed { " -> " } else { " -- " };
        body[..body.len() - 1].iter().all(|line| {
            let Some(stmt) = line.trim().strip_suffix(';') else { return false };
            let (head, attr) = match stmt.find(" [") {
                Some(i) => (&stmt[..i], Some(stmt[i + 1..].trim())),
                None => (stmt, None),
            };
            let head_ok = match head.split_once(arrow) {
                Some((a, b)) => ident(a) && ident(b),
                None => ident(head),
            };
            head_ok && attr.is_none_or(attrs)
        })
    }

    #[test]
    fn dot_export() {
        let tiny = GraphClass::diagonal(&[1], 1).to_dot();
        assert_eq!(tiny.matches(" -- ").count(), 1);
        assert_eq!(tiny.matches("shape=").count(), 2);
        assert!(valid_dot(&tiny, false));
        for g in enumerate(&[3], 3, 24).unwrap() {
            let dot = g.to_dot();
            assert!(valid_dot(&dot, false), "{dot}");
            assert_eq!(dot.matches(" -- ").count(), 9);
        }
        let d = enumerate(&[2, 1], 3, 24).unwrap()[2].to_directed().unwrap().to_dot();
        assert!(valid_dot(&d, true));
        assert!(d.contains(" -> "));
        assert!(!valid_dot("graph G {\n  r1 -- ;\n}\n", false));
    }

    fn permute(g: &GraphClass, p: &Permutation, q: &Permutation) -> Vec<Vec<u32>> {
        let m = g.m();
        g.mats()
            .iter()
            .map(|mat| (0..m * m).map(|x| mat[p.apply(x / m) * m + q.apply(x % m)]).collect())
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn canonical_form_constant_on_orbits(idx in 0usize..1000, a in 0usize..120, b in 0usize..120) {
            let all = enumerate(&[2, 1], 4, 24).unwrap();
            let g = &all[idx % all.len()];
            let perms: Vec<Permutation> = Permutation::all(4).collect();
            let moved = permute(g, &perms[a % 24], &perms[b % 24]);
            let again = GraphClass::canonicalize(&[2, 1], 4, moved).unwrap();
            prop_assert_eq!(&again, g);
            let twice = GraphClass::canonicalize(&[2, 1], 4, again.mats().to_vec()).unwrap();
            prop_assert_eq!(twice, again);
        }
    }
}
