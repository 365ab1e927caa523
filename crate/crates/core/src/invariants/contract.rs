//! Greedy pairwise contraction of a closed complex tensor network.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default cap on the multiply-add count of a contraction plan.
pub const DEFAULT_CONTRACT_BUDGET: u64 = 100_000_000;

/// Row-major dense tensor whose axes carry edge labels.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub labels: Vec<usize>,
    pub dims: Vec<usize>,
    pub data: Vec<Complex64>,
}

impl Tensor {
    pub fn scalar(value: Complex64) -> Self {
        Tensor { labels: Vec::new(), dims: Vec::new(), data: vec![value] }
    }

    /// Data reordered so that axis `order[i]` becomes axis `i`.
    fn permuted(&self, order: &[usize]) -> Vec<Complex64> {
        let rank = self.dims.len();
        if order.iter().enumerate().all(|(i, &o)| i == o) {
            return self.data.clone();
        }
        let mut strides = vec![1; rank];
        for a in (0..rank.saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * self.dims[a + 1];
        }
        let new_dims: Vec<usize> = order.iter().map(|&o| self.dims[o]).collect();
        let new_strides: Vec<usize> = order.iter().map(|&o| strides[o]).collect();
        let mut out = Vec::with_capacity(self.data.len());
        let mut counter = vec![0; rank];
        let mut src = 0;
        for _ in 0..self.data.len() {
            out.push(self.data[src]);
            for a in (0..rank).rev() {
                counter[a] += 1;
                src += new_strides[a];
                if counter[a] < new_dims[a] {
                    break;
                }
                src -= new_strides[a] * new_dims[a];
                counter[a] = 0;
            }
        }
        out
    }
}

fn dim_of(labels: &[usize], dims: &[usize], label: usize) -> Option<usize> {
    labels.iter().position(|&l| l == label).map(|p| dims[p])
}

/// Sums over the labels shared by `a` and `b`; free axes of `a` come first.
pub fn contract_pair(a: &Tensor, b: &Tensor) -> Tensor {
    let shared: Vec<usize> = a.labels.iter().copied().filter(|l| b.labels.contains(l)).collect();
    let a_free: Vec<usize> = (0..a.labels.len()).filter(|&i| !shared.contains(&a.labels[i])).collect();
    let b_free: Vec<usize> = (0..b.labels.len()).filter(|&i| !shared.contains(&b.labels[i])).collect();
    let a_sh: Vec<usize> = shared.iter().map(|l| a.labels.iter().position(|x| x == l).unwrap()).collect();
    let b_sh: Vec<usize> = shared.iter().map(|l| b.labels.iter().position(|x| x == l).unwrap()).collect();

    let a_order: Vec<usize> = a_free.iter().chain(&a_sh).copied().collect();
    let b_order: Vec<usize> = b_sh.iter().chain(&b_free).copied().collect();
    let am = a.permuted(&a_order);
    let bm = b.permuted(&b_order);
    let rows: usize = a_free.iter().map(|&i| a.dims[i]).product();
    let inner: usize = a_sh.iter().map(|&i| a.dims[i]).product();
    let cols: usize = b_free.iter().map(|&i| b.dims[i]).product();

    let mut out = vec![Complex64::new(0.0, 0.0); rows * cols];
    for r in 0..rows {
        let arow = &am[r * inner..(r + 1) * inner];
        let orow = &mut out[r * cols..(r + 1) * cols];
        for (s, &av) in arow.iter().enumerate() {
            if av.re == 0.0 && av.im == 0.0 {
                continue;
            }
            for (o, &bv) in orow.iter_mut().zip(&bm[s * cols..(s + 1) * cols]) {
                *o += av * bv;
            }
        }
    }
    Tensor {
        labels: a_free.iter().map(|&i| a.labels[i]).chain(b_free.iter().map(|&i| b.labels[i])).collect(),
        dims: a_free.iter().map(|&i| a.dims[i]).chain(b_free.iter().map(|&i| b.dims[i])).collect(),
        data: out,
    }
}

/// Pairwise order chosen greedily by smallest intermediate, with its total
/// multiply-add count.
pub fn plan(shapes: &[(Vec<usize>, Vec<usize>)]) -> (Vec<(usize, usize)>, u64) {
    let mut live: Vec<Option<(Vec<usize>, Vec<usize>)>> = shapes.iter().cloned().map(Some).collect();
    let mut steps = Vec::new();
    let mut cost: u64 = 0;
    loop {
        let alive: Vec<usize> = (0..live.len()).filter(|&i| live[i].is_some()).collect();
        if alive.len() < 2 {
            break;
        }
        let mut best: Option<(u128, u128, usize, usize)> = None;
        for (x, &i) in alive.iter().enumerate() {
            for &j in &alive[x + 1..] {
                let (li, di) = live[i].as_ref().unwrap();
                let (lj, dj) = live[j].as_ref().unwrap();
                let connected = li.iter().any(|l| lj.contains(l));
                // Disconnected pairs only once every component is a scalar.
                if !connected && !(li.is_empty() && lj.is_empty()) {
                    continue;
                }
                let mut size: u128 = 1;
                let mut work: u128 = 1;
                for (l, d) in li.iter().zip(di) {
                    work *= *d as u128;
                    if !lj.contains(l) {
                        size *= *d as u128;
                    }
                }
                for (l, d) in lj.iter().zip(dj) {
                    if !li.contains(l) {
                        size *= *d as u128;
                        work *= *d as u128;
                    }
                }
                if best.is_none_or(|(bs, bw, _, _)| (size, work) < (bs, bw)) {
                    best = Some((size, work, i, j));
                }
            }
        }
        let Some((_, work, i, j)) = best else {
            // Leftover non-scalars share no labels: an open network.
            break;
        };
        cost = cost.saturating_add(u64::try_from(work).unwrap_or(u64::MAX));
        let (li, di) = live[i].take().unwrap();
        let (lj, dj) = live[j].take().unwrap();
        let mut labels = Vec::new();
        let mut dims = Vec::new();
        for (l, d) in li.iter().zip(&di) {
            if !lj.contains(l) {
                labels.push(*l);
                dims.push(*d);
            }
        }
        for (l, d) in lj.iter().zip(&dj) {
            if dim_of(&li, &di, *l).is_none() {
                labels.push(*l);
                dims.push(*d);
            }
        }
        live[i] = Some((labels, dims));
        steps.push((i, j));
    }
    (steps, cost)
}

/// Fully contracts a closed network (every label on exactly two tensors).
pub fn contract_network(tensors: Vec<Tensor>, budget: u64) -> Result<Complex64> {
    if tensors.is_empty() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let shapes: Vec<_> = tensors.iter().map(|t| (t.labels.clone(), t.dims.clone())).collect();
    let (steps, cost) = plan(&shapes);
    if cost > budget {
        return Err(Error::Budget(format!("contraction needs {cost} multiply-adds, budget is {budget}")));
    }
    let mut live: Vec<Option<Tensor>> = tensors.into_iter().map(Some).collect();
    for (i, j) in steps {
        let a = live[i].take().unwrap();
        let b = live[j].take().unwrap();
        live[i] = Some(contract_pair(&a, &b));
    }
    let rest: Vec<Tensor> = live.into_iter().flatten().collect();
    match rest.as_slice() {
        [t] if t.labels.is_empty() => Ok(t.data[0]),
        _ => Err(Error::Shape("tensor network has open edges".into())),
    }
}
