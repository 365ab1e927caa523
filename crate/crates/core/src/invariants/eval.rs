use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::contract::{Tensor, contract_network};
use super::state::{DensityTensor, StateTensor, minimal_dims, random_state, reference_separable};
use crate::combinatorics::Permutation;
use crate::dimensions::{ParticleSpec, mixed_spec};
use crate::error::{Error, Result};
use crate::graphs::{DEFAULT_GRAPH_BUDGET, GraphClass, enumerate};

/// Reference values below this are treated as a vanishing invariant.
const VANISHING_REFERENCE: f64 = 1e-10;

/// Eigenvalues of a density matrix below this count as zero.
const RANK_TOLERANCE: f64 = 1e-12;

/// Relative singular value cutoff in [`rank_probe`].
pub const RANK_PROBE_THRESHOLD: f64 = 1e-8;

/// One line of `luinv eval` output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub graph_id: String,
    pub value_re: f64,
    pub value_im: f64,
}

/// `Σ_i Π_a ψ(i over block a) Π_b ψ̄(i over σ(block b))` for the tuple `sigmas`.
///
/// Copy `a` of ψ is the column vertex `a`, copy `b` of ψ̄ the row vertex `b`.
pub fn evaluate_perm_tuple(sigmas: &[Permutation], m: usize, psi: &StateTensor, budget: u64) -> Result<Complex64> {
    let lines = psi.spec().line_sums();
    if sigmas.len() != lines.len() || sigmas.iter().zip(&lines).any(|(s, l)| s.len() != m * l) {
        return Err(Error::Shape(format!("permutation tuple does not match {} at degree {m}", psi.spec())));
    }
    let slot_dims = psi.slot_dims();
    let offsets: Vec<usize> = lines.iter().scan(0, |acc, &l| Some(std::mem::replace(acc, *acc + m * l))).collect();
    let conj: Vec<Complex64> = psi.data().iter().map(Complex64::conj).collect();
    let mut tensors = Vec::with_capacity(2 * m);
    for a in 0..m {
        let labels = lines.iter().zip(&offsets).flat_map(|(&l, &o)| (0..l).map(move |t| o + a * l + t)).collect();
        tensors.push(Tensor { labels, dims: slot_dims.clone(), data: psi.data().to_vec() });
    }
    for b in 0..m {
        let labels = lines
            .iter()
            .zip(&offsets)
            .zip(sigmas)
            .flat_map(|((&l, &o), s)| (0..l).map(move |t| o + s.apply(b * l + t)))
            .collect();
        tensors.push(Tensor { labels, dims: slot_dims.clone(), data: conj.clone() });
    }
    contract_network(tensors, budget)
}

fn check_graph(g: &GraphClass, spec: &ParticleSpec) -> Result<()> {
    spec.require_row_or_column("evaluation")?;
    if g.line_sums() != spec.line_sums().as_slice() {
        return Err(Error::Shape(format!("graph line sums {:?} do not match {spec}", g.line_sums())));
    }
    Ok(())
}

/// Unnormalized value for the representative returned by `to_perm_tuple`.
pub fn evaluate_raw(g: &GraphClass, psi: &StateTensor, budget: u64) -> Result<Complex64> {
    check_graph(g, psi.spec())?;
    evaluate_perm_tuple(&g.to_perm_tuple(), g.m(), psi, budget)
}

/// Raw value on [`reference_separable`], which is the same in every dimension.
pub fn reference_value(g: &GraphClass, spec: &ParticleSpec, budget: u64) -> Result<Complex64> {
    let reference = reference_separable(spec, &minimal_dims(spec))?;
    evaluate_raw(g, &reference, budget)
}

/// `f_g(ψ)` scaled so that the reference separable state gives 1.
///
/// Invariants that vanish identically are returned unscaled.
pub fn evaluate(g: &GraphClass, psi: &StateTensor, budget: u64) -> Result<Complex64> {
    let raw = evaluate_raw(g, psi, budget)?;
    let r = reference_value(g, psi.spec(), budget)?;
    Ok(if r.norm() < VANISHING_REFERENCE { raw } else { raw / r })
}

pub fn evaluate_all(graphs: &[GraphClass], psi: &StateTensor, budget: u64) -> Result<Vec<EvalRecord>> {
    graphs
        .iter()
        .map(|g| {
            let v = evaluate(g, psi, budget)?;
            Ok(EvalRecord { graph_id: g.id(), value_re: v.re, value_im: v.im })
        })
        .collect()
}

/// `|f_g(ψ) f_h(ψ) - f_{g ⊔ h}(ψ)|`.
pub fn product_check(g: &GraphClass, h: &GraphClass, psi: &StateTensor, budget: u64) -> Result<f64> {
    let u = g.disjoint_union(h)?;
    Ok((evaluate(g, psi, budget)? * evaluate(h, psi, budget)? - evaluate(&u, psi, budget)?).norm())
}

/// Rank of the sample-by-graph matrix of all degree `m` invariants at `dims`.
pub fn rank_probe(
    spec: &ParticleSpec,
    m: usize,
    dims: &[usize],
    samples: usize,
    seed: u64,
    budget: u64,
) -> Result<usize> {
    spec.require_row_or_column("the rank probe")?;
    let graphs = enumerate(&spec.line_sums(), m, DEFAULT_GRAPH_BUDGET)?;
    let refs: Vec<Complex64> = graphs.iter().map(|g| reference_value(g, spec, budget)).collect::<Result<_>>()?;
    let mut mat = DMatrix::<Complex64>::zeros(samples, graphs.len());
    for s in 0..samples {
        let psi = random_state(spec, dims, seed.wrapping_add(s as u64))?;
        for (c, (g, r)) in graphs.iter().zip(&refs).enumerate() {
            let raw = evaluate_raw(g, &psi, budget)?;
            mat[(s, c)] = if r.norm() < VANISHING_REFERENCE { raw } else { raw / r };
        }
    }
    if mat.is_empty() {
        return Ok(0);
    }
    let sv = mat.singular_values();
    let top = sv.max();
    if top == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&x| x > RANK_PROBE_THRESHOLD * top).count())
}

/// Number of eigenvalues of ρ above the zero tolerance.
pub fn density_rank(rho: &DensityTensor) -> usize {
    rho.matrix().clone().symmetric_eigenvalues().iter().filter(|&&p| p > RANK_TOLERANCE).count()
}

/// `Σ_e √p_e v_e ⊗ e_e`: a pure state of the mixed spec whose reduced state is ρ.
pub fn purify(rho: &DensityTensor, env_dim: usize) -> Result<StateTensor> {
    let eig = rho.matrix().clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).filter(|&i| eig.eigenvalues[i] > RANK_TOLERANCE).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    if env_dim < order.len().max(1) {
        return Err(Error::InvalidArgument(format!(
            "environment dimension {env_dim} is below the rank {} of the density matrix",
            order.len()
        )));
    }
    let size = rho.matrix().nrows();
    let mut data = vec![Complex64::new(0.0, 0.0); size * env_dim];
    for (e, &k) in order.iter().enumerate() {
        let w = eig.eigenvalues[k].sqrt();
        for i in 0..size {
            data[i * env_dim + e] = eig.eigenvectors[(i, k)] * w;
        }
    }
    let mut dims = rho.dims().to_vec();
    dims.push(env_dim);
    Ok(StateTensor::from_parts(mixed_spec(rho.spec()), dims, data))
}

/// `f_g` of the mixed spec evaluated on a minimal purification of ρ.
pub fn evaluate_mixed(g: &GraphClass, rho: &DensityTensor, budget: u64) -> Result<Complex64> {
    let psi = purify(rho, density_rank(rho).max(1))?;
    evaluate(g, &psi, budget)
}
