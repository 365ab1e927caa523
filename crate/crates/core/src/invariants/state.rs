use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::combinatorics::Permutation;
use crate::dimensions::{ParticleSpec, Statistics};
use crate::error::{Error, Result};

/// Dense coefficients of a pure state in `⊗_j (C^{n_j})^{⊗ l_j}`.
///
/// Slots are ordered color by color (`l_1` slots of dimension `n_1`, then
/// `l_2` slots of dimension `n_2`, …); the last slot varies fastest.
/// Coefficients are (anti)symmetric within each color's slots.
#[derive(Clone, Debug, PartialEq)]
pub struct StateTensor {
    spec: ParticleSpec,
    dims: Vec<usize>,
    data: Vec<Complex64>,
}

/// Slot dimensions, one per particle.
pub(crate) fn slot_dims(spec: &ParticleSpec, dims: &[usize]) -> Vec<usize> {
    spec.line_sums().iter().zip(dims).flat_map(|(&l, &n)| std::iter::repeat_n(n, l)).collect()
}

fn check_dims(spec: &ParticleSpec, dims: &[usize]) -> Result<()> {
    spec.require_row_or_column("state tensors")?;
    if dims.len() != spec.k() {
        return Err(Error::Shape(format!("{} local dimensions for {} types", dims.len(), spec.k())));
    }
    if dims.contains(&0) {
        return Err(Error::Shape("local dimensions must be positive".into()));
    }
    Ok(())
}

pub(crate) fn flat_index(slot_dims: &[usize], index: &[usize]) -> usize {
    index.iter().zip(slot_dims).fold(0, |acc, (&i, &n)| acc * n + i)
}

pub(crate) fn unflatten(slot_dims: &[usize], mut x: usize, out: &mut [usize]) {
    for (slot, &n) in out.iter_mut().zip(slot_dims).rev() {
        *slot = x % n;
        x /= n;
    }
}

/// Applies `(1/l!) Σ_π χ(π) π` on each color's slots, `χ` trivial or sign.
pub fn symmetrize(raw: &[Complex64], spec: &ParticleSpec, dims: &[usize]) -> Result<StateTensor> {
    check_dims(spec, dims)?;
    let sd = slot_dims(spec, dims);
    let size: usize = sd.iter().product();
    if raw.len() != size {
        return Err(Error::Shape(format!("expected {size} coefficients, got {}", raw.len())));
    }
    let mut data = raw.to_vec();
    let mut offset = 0;
    let mut idx = vec![0; sd.len()];
    let mut moved = vec![0; sd.len()];
    for (j, l) in spec.line_sums().into_iter().enumerate() {
        let fermion = spec.statistics(j) == Statistics::Fermion;
        let perms: Vec<Permutation> = Permutation::all(l).collect();
        let scale = 1.0 / perms.len() as f64;
        let mut out = vec![Complex64::new(0.0, 0.0); size];
        for (x, slot) in out.iter_mut().enumerate() {
            unflatten(&sd, x, &mut idx);
            let mut acc = Complex64::new(0.0, 0.0);
            for p in &perms {
                moved.copy_from_slice(&idx);
                for t in 0..l {
                    moved[offset + p.apply(t)] = idx[offset + t];
                }
                let sign = if fermion { f64::from(p.sign()) } else { 1.0 };
                acc += data[flat_index(&sd, &moved)] * sign;
            }
            *slot = acc * scale;
        }
        data = out;
        offset += l;
    }
    Ok(StateTensor { spec: spec.clone(), dims: dims.to_vec(), data })
}

impl StateTensor {
    /// Wraps coefficients that are already (anti)symmetric; no projection.
    pub(crate) fn from_parts(spec: ParticleSpec, dims: Vec<usize>, data: Vec<Complex64>) -> Self {
        StateTensor { spec, dims, data }
    }

    pub fn spec(&self) -> &ParticleSpec {
        &self.spec
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn slot_dims(&self) -> Vec<usize> {
        slot_dims(&self.spec, &self.dims)
    }

    pub fn get(&self, index: &[usize]) -> Complex64 {
        self.data[flat_index(&self.slot_dims(), index)]
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
    }

    /// Scaled to unit norm; the zero state is returned unchanged.
    pub fn normalized(&self) -> StateTensor {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        StateTensor { data: self.data.iter().map(|c| c / n).collect(), ..self.clone() }
    }

    /// Zero-padding into larger local dimensions.
    pub fn embed(&self, dims: &[usize]) -> Result<StateTensor> {
        if dims.len() != self.dims.len() || dims.iter().zip(&self.dims).any(|(new, old)| new < old) {
            return Err(Error::Shape(format!("cannot embed dimensions {:?} into {dims:?}", self.dims)));
        }
        let old_sd = self.slot_dims();
        let new_sd = slot_dims(&self.spec, dims);
        let mut data = vec![Complex64::new(0.0, 0.0); new_sd.iter().product()];
        let mut idx = vec![0; old_sd.len()];
        for (x, &c) in self.data.iter().enumerate() {
            unflatten(&old_sd, x, &mut idx);
            data[flat_index(&new_sd, &idx)] = c;
        }
        Ok(StateTensor { spec: self.spec.clone(), dims: dims.to_vec(), data })
    }

    /// `(U_1^{⊗ l_1} ⊗ … ⊗ U_k^{⊗ l_k}) ψ`.
    pub fn apply_local(&self, unitaries: &[DMatrix<Complex64>]) -> Result<StateTensor> {
        if unitaries.len() != self.dims.len()
            || unitaries.iter().zip(&self.dims).any(|(u, &n)| u.nrows() != n || u.ncols() != n)
        {
            return Err(Error::Shape("one n_j × n_j matrix per type is required".into()));
        }
        let sd = self.slot_dims();
        let per_slot: Vec<&DMatrix<Complex64>> = self
            .spec
            .line_sums()
            .iter()
            .zip(unitaries)
            .flat_map(|(&l, u)| std::iter::repeat_n(u, l))
            .collect();
        let mut data = self.data.clone();
        let size = data.len();
        // One slot at a time: stride of slot s is the product of later dims.
        let mut stride = size;
        for (s, &n) in sd.iter().enumerate() {
            stride /= n;
            let u = per_slot[s];
            let mut out = vec![Complex64::new(0.0, 0.0); size];
            for (x, slot) in out.iter_mut().enumerate() {
                let i = (x / stride) % n;
                let base = x - i * stride;
                *slot = (0..n).map(|k| u[(i, k)] * data[base + k * stride]).sum();
            }
            data = out;
        }
        Ok(StateTensor { spec: self.spec.clone(), dims: self.dims.clone(), data })
    }

    pub fn to_json(&self) -> StateFile {
        let sd = self.slot_dims();
        let mut idx = vec![0; sd.len()];
        let entries = self
            .data
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr() > 0.0)
            .map(|(x, c)| {
                unflatten(&sd, x, &mut idx);
                Entry { index: idx.clone(), re: c.re, im: c.im }
            })
            .collect();
        StateFile { spec: self.spec.clone(), dims: self.dims.clone(), entries }
    }
}

/// `⊗_j e_{λ_j, 1 2 … l_j}`, normalized; bosonic colors use `e_1^{⊗ l_j}`.
pub fn reference_separable(spec: &ParticleSpec, dims: &[usize]) -> Result<StateTensor> {
    check_dims(spec, dims)?;
    let lines = spec.line_sums();
    let mut index = Vec::new();
    for (j, (&l, &n)) in lines.iter().zip(dims).enumerate() {
        if spec.statistics(j) == Statistics::Fermion {
            if n < l {
                return Err(Error::InvalidArgument(format!(
                    "{l} fermions need local dimension at least {l}, got {n}"
                )));
            }
            index.extend(0..l);
        } else {
            index.extend(std::iter::repeat_n(0, l));
        }
    }
    let sd = slot_dims(spec, dims);
    let mut raw = vec![Complex64::new(0.0, 0.0); sd.iter().product()];
    raw[flat_index(&sd, &index)] = Complex64::new(1.0, 0.0);
    Ok(symmetrize(&raw, spec, dims)?.normalized())
}

/// Smallest local dimensions admitting [`reference_separable`].
pub fn minimal_dims(spec: &ParticleSpec) -> Vec<usize> {
    (0..spec.k())
        .zip(spec.line_sums())
        .map(|(j, l)| if spec.statistics(j) == Statistics::Fermion { l } else { 1 })
        .collect()
}

/// Normalized projection of a complex Gaussian tensor; reproducible by seed.
pub fn random_state(spec: &ParticleSpec, dims: &[usize], seed: u64) -> Result<StateTensor> {
    check_dims(spec, dims)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size: usize = slot_dims(spec, dims).iter().product();
    let raw: Vec<Complex64> = (0..size)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    Ok(symmetrize(&raw, spec, dims)?.normalized())
}

/// Haar-random `n × n` unitary from the QR decomposition of a Gaussian matrix.
pub fn random_unitary(n: usize, seed: u64) -> DMatrix<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        Complex64::new(re, im)
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    // Fix the phases so the distribution does not depend on QR conventions.
    let phases = DVector::from_fn(n, |i, _| {
        let d = r[(i, i)];
        if d.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { d / d.norm() }
    });
    DMatrix::from_fn(n, n, |i, j| q[(i, j)] * phases[j])
}

/// Mixed state on the (anti)symmetric space, as a dense matrix over the full
/// slot space.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityTensor {
    spec: ParticleSpec,
    dims: Vec<usize>,
    matrix: DMatrix<Complex64>,
}

impl DensityTensor {
    /// Validates and stores `matrix`: Hermitian part taken, unit trace and
    /// positive semidefiniteness checked.
    pub fn new(spec: &ParticleSpec, dims: &[usize], matrix: DMatrix<Complex64>) -> Result<Self> {
        check_dims(spec, dims)?;
        let size: usize = slot_dims(spec, dims).iter().product();
        if matrix.nrows() != size || matrix.ncols() != size {
            return Err(Error::Shape(format!("density matrix must be {size}×{size}")));
        }
        let herm = (&matrix + matrix.adjoint()) * Complex64::new(0.5, 0.0);
        let tr = herm.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("density matrix trace is {tr}, expected 1")));
        }
        let min = herm.clone().symmetric_eigenvalues().min();
        if min < -1e-10 {
            return Err(Error::InvalidArgument(format!("density matrix has eigenvalue {min}")));
        }
        Ok(DensityTensor { spec: spec.clone(), dims: dims.to_vec(), matrix: herm })
    }

    pub fn pure(psi: &StateTensor) -> Self {
        let v = DVector::from_column_slice(psi.normalized().data());
        DensityTensor { spec: psi.spec.clone(), dims: psi.dims.clone(), matrix: &v * v.adjoint() }
    }

    /// `Σ w_i |ψ_i⟩⟨ψ_i|` with weights normalized to sum one.
    pub fn mixture(states: &[(f64, StateTensor)]) -> Result<Self> {
        let first = states.first().ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
        let total: f64 = states.iter().map(|(w, _)| w).sum();
        if total <= 0.0 || states.iter().any(|(w, _)| *w < 0.0) {
            return Err(Error::InvalidArgument("mixture weights must be nonnegative and not all zero".into()));
        }
        let mut matrix = DMatrix::zeros(first.1.data.len(), first.1.data.len());
        for (w, s) in states {
            if s.spec != first.1.spec || s.dims != first.1.dims {
                return Err(Error::Shape("mixture components differ in type or dimensions".into()));
            }
            matrix += DensityTensor::pure(s).matrix * Complex64::new(w / total, 0.0);
        }
        Ok(DensityTensor { spec: first.1.spec.clone(), dims: first.1.dims.clone(), matrix })
    }

    pub fn spec(&self) -> &ParticleSpec {
        &self.spec
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }
}

/// JSON state or density input. Indices are 0-based, one per slot; a density
/// entry lists the ket slots followed by the bra slots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub spec: ParticleSpec,
    pub dims: Vec<usize>,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub index: Vec<usize>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// Parsed contents of a [`StateFile`].
#[derive(Clone, Debug, PartialEq)]
pub enum LoadedState {
    Pure(StateTensor),
    Mixed(DensityTensor),
}

impl StateFile {
    /// Builds the state, projecting onto the (anti)symmetric space and then
    /// normalizing (unit norm, or unit trace for densities). A pure state that
    /// projects to zero stays zero.
    pub fn load(&self) -> Result<LoadedState> {
        check_dims(&self.spec, &self.dims)?;
        let sd = slot_dims(&self.spec, &self.dims);
        let slots = sd.len();
        let size: usize = sd.iter().product();
        let in_range = |idx: &[usize]| idx.iter().zip(&sd).all(|(i, n)| i < n);
        let is_density = self.entries.first().is_some_and(|e| e.index.len() == 2 * slots);
        if !is_density {
            let mut raw = vec![Complex64::new(0.0, 0.0); size];
            for e in &self.entries {
                if e.index.len() != slots || !in_range(&e.index) {
                    return Err(Error::Parse(format!("bad state index {:?}", e.index)));
                }
                raw[flat_index(&sd, &e.index)] += Complex64::new(e.re, e.im);
            }
            return Ok(LoadedState::Pure(symmetrize(&raw, &self.spec, &self.dims)?.normalized()));
        }
        let mut m = DMatrix::zeros(size, size);
        for e in &self.entries {
            if e.index.len() != 2 * slots || !in_range(&e.index[..slots]) || !in_range(&e.index[slots..]) {
                return Err(Error::Parse(format!("bad density index {:?}", e.index)));
            }
            m[(flat_index(&sd, &e.index[..slots]), flat_index(&sd, &e.index[slots..]))] += Complex64::new(e.re, e.im);
        }
        // Project both sides: P ρ P with P the symmetrizer.
        let proj = projector(&self.spec, &self.dims)?;
        let mut rho = &proj * m * &proj;
        let tr = rho.trace();
        if tr.norm() < 1e-300 {
            return Err(Error::InvalidArgument("density has zero trace after symmetrization".into()));
        }
        rho /= tr;
        Ok(LoadedState::Mixed(DensityTensor::new(&self.spec, &self.dims, rho)?))
    }
}

/// Matrix of [`symmetrize`] on the full slot space.
pub(crate) fn projector(spec: &ParticleSpec, dims: &[usize]) -> Result<DMatrix<Complex64>> {
    let size: usize = slot_dims(spec, dims).iter().product();
    let mut p = DMatrix::zeros(size, size);
    let mut unit = vec![Complex64::new(0.0, 0.0); size];
    for c in 0..size {
        unit[c] = Complex64::new(1.0, 0.0);
        let col = symmetrize(&unit, spec, dims)?;
        unit[c] = Complex64::new(0.0, 0.0);
        for (r, v) in col.data().iter().enumerate() {
            p[(r, c)] = *v;
        }
    }
    Ok(p)
}
