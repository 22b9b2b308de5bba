//! Dense state vectors over a chosen set of qubits.
//!
//! Basis convention: `|e⟩ = (1, 0)ᵀ` and `|g⟩ = (0, 1)ᵀ`. The first qubit of
//! `qubit_order` is the most significant bit of the amplitude index, and a bit
//! value of 0 means `e`. The all-ground state therefore sits at the last index.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
pub use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expm;
use crate::lattice::{LadderLayout, QubitId};

pub const NORM_TOLERANCE: f64 = 1e-10;
pub const UNITARITY_TOLERANCE: f64 = 1e-12;
pub const AXIS_TOLERANCE: f64 = 1e-9;
/// Above this many qubits evolution switches from dense eigendecomposition to
/// a Krylov action on the state.
pub const DENSE_EXPM_MAX_QUBITS: usize = 10;
/// Largest register a dense state vector may hold.
pub const DENSE_MAX_QUBITS: usize = 26;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
    qubit_order: Vec<QubitId>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>, qubit_order: Vec<QubitId>) -> Result<Self> {
        let state = Self::with_shape(amplitudes, qubit_order)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidParameter(format!("state norm {norm} is not 1")));
        }
        Ok(state)
    }

    /// Like [`StateVector::new`] but rescales the amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<C64>, qubit_order: Vec<QubitId>) -> Result<Self> {
        let mut state = Self::with_shape(amplitudes, qubit_order)?;
        let norm = state.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidParameter("cannot normalize a zero vector".into()));
        }
        state.amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(state)
    }

    fn with_shape(amplitudes: Vec<C64>, qubit_order: Vec<QubitId>) -> Result<Self> {
        check_order(&qubit_order)?;
        if qubit_order.len() > DENSE_MAX_QUBITS {
            return Err(Error::InvalidSize(format!(
                "{} qubits exceed the dense limit of {DENSE_MAX_QUBITS}",
                qubit_order.len()
            )));
        }
        let dim = 1usize << qubit_order.len();
        if amplitudes.len() != dim {
            return Err(Error::ShapeMismatch(format!(
                "{} amplitudes for {} qubits",
                amplitudes.len(),
                qubit_order.len()
            )));
        }
        Ok(Self {
            amplitudes,
            qubit_order,
        })
    }

    pub(crate) fn from_parts_unchecked(amplitudes: Vec<C64>, qubit_order: Vec<QubitId>) -> Self {
        Self {
            amplitudes,
            qubit_order,
        }
    }

    /// Computational basis state; `excited[p]` is the value of the qubit at
    /// position `p` of `qubit_order`.
    pub fn basis(qubit_order: Vec<QubitId>, excited: &[bool]) -> Result<Self> {
        if excited.len() != qubit_order.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for {} qubits",
                excited.len(),
                qubit_order.len()
            )));
        }
        let m = qubit_order.len();
        let index = excited
            .iter()
            .enumerate()
            .filter(|(_, &e)| !e)
            .fold(0usize, |acc, (p, _)| acc | 1 << (m - 1 - p));
        let mut amplitudes = vec![ZERO; 1 << m];
        amplitudes[index] = ONE;
        Self::with_shape(amplitudes, qubit_order)
    }

    pub fn ground(qubit_order: Vec<QubitId>) -> Result<Self> {
        let excited = vec![false; qubit_order.len()];
        Self::basis(qubit_order, &excited)
    }

    /// Product state from per-qubit `(e, g)` amplitude pairs.
    pub fn product(qubit_order: Vec<QubitId>, factors: &[[C64; 2]]) -> Result<Self> {
        if factors.len() != qubit_order.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} factors for {} qubits",
                factors.len(),
                qubit_order.len()
            )));
        }
        let mut amplitudes = vec![ONE];
        for f in factors {
            amplitudes = amplitudes
                .iter()
                .flat_map(|&a| [a * f[0], a * f[1]])
                .collect();
        }
        Self::normalized(amplitudes, qubit_order)
    }

    pub fn n_qubits(&self) -> usize {
        self.qubit_order.len()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn qubit_order(&self) -> &[QubitId] {
        &self.qubit_order
    }

    pub fn position(&self, q: QubitId) -> Result<usize> {
        self.qubit_order
            .iter()
            .position(|&x| x == q)
            .ok_or(Error::UnknownQubit(q))
    }

    /// Bit offset of `q` inside an amplitude index.
    pub fn bit(&self, q: QubitId) -> Result<usize> {
        Ok(self.n_qubits() - 1 - self.position(q)?)
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch(format!(
                "dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn scale(&mut self, factor: C64) {
        self.amplitudes.iter_mut().for_each(|a| *a *= factor);
    }

    pub fn apply_single_mut(&mut self, bit: usize, u: &SingleQubitUnitary) {
        self.apply_controlled_mut(bit, 0, u);
    }

    /// Applies `u` on `bit` wherever every bit of `ground_mask` reads `g`.
    pub fn apply_controlled_mut(&mut self, bit: usize, ground_mask: usize, u: &SingleQubitUnitary) {
        let m = u.matrix();
        let step = 1usize << bit;
        for e in 0..self.amplitudes.len() {
            if e & step != 0 || e & ground_mask != ground_mask {
                continue;
            }
            let g = e | step;
            let (ae, ag) = (self.amplitudes[e], self.amplitudes[g]);
            self.amplitudes[e] = m[0][0] * ae + m[0][1] * ag;
            self.amplitudes[g] = m[1][0] * ae + m[1][1] * ag;
        }
    }

    /// Reduced density matrix of the listed qubits, in the listed order.
    pub fn reduced_density_matrix(&self, qs: &[QubitId]) -> Result<DMatrix<C64>> {
        let bits: Vec<usize> = qs.iter().map(|&q| self.bit(q)).collect::<Result<_>>()?;
        let keep_mask = bits.iter().fold(0usize, |acc, b| acc | 1 << b);
        let k = qs.len();
        let sub_index = |idx: usize| {
            bits.iter()
                .enumerate()
                .fold(0usize, |acc, (p, &b)| acc | ((idx >> b) & 1) << (k - 1 - p))
        };
        let mut groups: BTreeMap<usize, Vec<(usize, C64)>> = BTreeMap::new();
        for (idx, &a) in self.amplitudes.iter().enumerate() {
            if a != ZERO {
                groups.entry(idx & !keep_mask).or_default().push((sub_index(idx), a));
            }
        }
        let mut rho = DMatrix::zeros(1 << k, 1 << k);
        for entries in groups.values() {
            for &(r, a) in entries {
                for &(c, b) in entries {
                    rho[(r, c)] += a * b.conj();
                }
            }
        }
        Ok(rho)
    }
}

fn check_order(order: &[QubitId]) -> Result<()> {
    let mut sorted = order.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::ShapeMismatch("qubit order lists a qubit twice".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitUnitary([[C64; 2]; 2]);

impl SingleQubitUnitary {
    pub fn new(matrix: [[C64; 2]; 2]) -> Result<Self> {
        let u = Self(matrix);
        let defect = u.adjoint().mul(&u).distance(&Self::identity());
        if defect > UNITARITY_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "matrix is not unitary (defect {defect:e})"
            )));
        }
        Ok(u)
    }

    pub fn identity() -> Self {
        Self([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn pauli_x() -> Self {
        Self([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn pauli_y() -> Self {
        Self([[ZERO, -I], [I, ZERO]])
    }

    pub fn pauli_z() -> Self {
        Self([[ONE, ZERO], [ZERO, -ONE]])
    }

    pub fn hadamard() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self([[h, h], [h, -h]])
    }

    pub fn matrix(&self) -> &[[C64; 2]; 2] {
        &self.0
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Self(out)
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn scaled(&self, factor: C64) -> Self {
        let m = &self.0;
        Self([
            [m[0][0] * factor, m[0][1] * factor],
            [m[1][0] * factor, m[1][1] * factor],
        ])
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn distance(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                d = d.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        d
    }

    /// Spectral-norm distance after removing the best global phase.
    pub fn phase_distance(&self, other: &Self) -> f64 {
        let overlap = self.adjoint().mul(other);
        let trace = overlap.0[0][0] + overlap.0[1][1];
        let phase = if trace.norm() > 0.0 { trace / trace.norm() } else { ONE };
        operator_norm(&self.scaled(phase), other)
    }
}

/// Spectral norm of `a - b` for 2×2 matrices.
fn operator_norm(a: &SingleQubitUnitary, b: &SingleQubitUnitary) -> f64 {
    let d: [[C64; 2]; 2] = std::array::from_fn(|r| std::array::from_fn(|c| a.0[r][c] - b.0[r][c]));
    // largest eigenvalue of d†d
    let p = d[0][0].norm_sqr() + d[1][0].norm_sqr();
    let q = d[0][1].norm_sqr() + d[1][1].norm_sqr();
    let off = (d[0][0].conj() * d[0][1] + d[1][0].conj() * d[1][1]).norm();
    let lambda = 0.5 * (p + q) + (0.25 * (p - q) * (p - q) + off * off).sqrt();
    lambda.sqrt()
}

pub fn check_unit_axis(axis: [f64; 3]) -> Result<()> {
    let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > AXIS_TOLERANCE || !norm.is_finite() {
        return Err(Error::NonUnitAxis(norm));
    }
    Ok(())
}

/// `cos(θ/2) I − i sin(θ/2) n·σ`.
pub fn rotation_matrix(theta: f64, axis: [f64; 3]) -> Result<SingleQubitUnitary> {
    check_unit_axis(axis)?;
    let (s, c) = (theta / 2.0).sin_cos();
    let [nx, ny, nz] = axis;
    Ok(SingleQubitUnitary([
        [C64::new(c, -s * nz), C64::new(-s * ny, -s * nx)],
        [C64::new(s * ny, -s * nx), C64::new(c, s * nz)],
    ]))
}

pub fn apply_single_qubit(state: &StateVector, q: QubitId, u: &SingleQubitUnitary) -> Result<StateVector> {
    let bit = state.bit(q)?;
    let mut out = state.clone();
    out.apply_single_mut(bit, u);
    Ok(out)
}

/// Applies `1 ⊗ Q + u ⊗ P`, where `P` projects every neighbor onto `|g⟩`.
pub fn apply_controlled_rotation(
    state: &StateVector,
    target: QubitId,
    neighbors: &[QubitId],
    u: &SingleQubitUnitary,
) -> Result<StateVector> {
    let projectors = NeighborProjectors::new(target, neighbors.to_vec())?;
    let (bit, mask) = projectors.bits(state)?;
    let mut out = state.clone();
    out.apply_controlled_mut(bit, mask, u);
    Ok(out)
}

/// The pair of projectors `P` (all neighbors in `|g⟩`) and `Q = 1 − P`
/// attached to a target qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct NeighborProjectors {
    pub target: QubitId,
    pub neighbors: Vec<QubitId>,
}

impl NeighborProjectors {
    pub fn new(target: QubitId, neighbors: Vec<QubitId>) -> Result<Self> {
        if neighbors.contains(&target) {
            return Err(Error::SelfControl(target));
        }
        Ok(Self { target, neighbors })
    }

    /// Target bit and the mask of neighbor bits inside `state`.
    pub fn bits(&self, state: &StateVector) -> Result<(usize, usize)> {
        let bit = state.bit(self.target)?;
        let mut mask = 0;
        for &n in &self.neighbors {
            mask |= 1 << state.bit(n)?;
        }
        Ok((bit, mask))
    }

    pub fn project_p(&self, state: &StateVector) -> Result<StateVector> {
        self.project(state, true)
    }

    pub fn project_q(&self, state: &StateVector) -> Result<StateVector> {
        self.project(state, false)
    }

    /// Unnormalized projection; the result may have norm below one.
    fn project(&self, state: &StateVector, keep_free: bool) -> Result<StateVector> {
        let (_, mask) = self.bits(state)?;
        let amplitudes = state
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(i, &a)| if (i & mask == mask) == keep_free { a } else { ZERO })
            .collect();
        Ok(StateVector::from_parts_unchecked(amplitudes, state.qubit_order().to_vec()))
    }
}

/// `|⟨a|b⟩|`, the pure-state fidelity.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm().min(1.0))
}

/// Probability of finding `q` in `|e⟩`.
pub fn population(state: &StateVector, q: QubitId) -> Result<f64> {
    let bit = state.bit(q)?;
    Ok(state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| (i >> bit) & 1 == 0)
        .map(|(_, a)| a.norm_sqr())
        .sum())
}

/// Excited-state populations of every qubit, in `qubit_order`.
pub fn populations(state: &StateVector) -> Vec<f64> {
    let m = state.n_qubits();
    let mut p = vec![0.0; m];
    for (i, a) in state.amplitudes().iter().enumerate() {
        let w = a.norm_sqr();
        if w == 0.0 {
            continue;
        }
        for (pos, slot) in p.iter_mut().enumerate() {
            if (i >> (m - 1 - pos)) & 1 == 0 {
                *slot += w;
            }
        }
    }
    p
}

/// Projective measurement of `qs` in the `e/g` basis. The bitstring has one
/// character per measured qubit, `1` for `e` and `0` for `g`.
pub fn measure_qubits(state: &StateVector, qs: &[QubitId], rng_seed: u64) -> Result<(String, StateVector)> {
    if qs.is_empty() {
        return Err(Error::EmptyArgument("qubits to measure"));
    }
    let bits: Vec<usize> = qs.iter().map(|&q| state.bit(q)).collect::<Result<_>>()?;
    let outcome_of = |idx: usize| -> Vec<bool> { bits.iter().map(|&b| (idx >> b) & 1 == 0).collect() };
    let mut weights: BTreeMap<Vec<bool>, f64> = BTreeMap::new();
    for (idx, a) in state.amplitudes().iter().enumerate() {
        *weights.entry(outcome_of(idx)).or_default() += a.norm_sqr();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let draw: f64 = rng.gen::<f64>() * weights.values().sum::<f64>();
    let mut acc = 0.0;
    let mut chosen = None;
    for (outcome, &w) in &weights {
        if w == 0.0 {
            continue;
        }
        acc += w;
        chosen = Some(outcome.clone());
        if draw < acc {
            break;
        }
    }
    let chosen = chosen.ok_or_else(|| Error::InvalidParameter("state has zero norm".into()))?;
    let amplitudes = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(idx, &a)| if outcome_of(idx) == chosen { a } else { ZERO })
        .collect();
    let post = StateVector::normalized(amplitudes, state.qubit_order().to_vec())?;
    let label = chosen.iter().map(|&e| if e { '1' } else { '0' }).collect();
    Ok((label, post))
}

/// Number of ZZ edges whose endpoints are both excited in the basis element
/// `basis_index` of the full layout register (enumeration order).
pub fn count_excited_pairs(basis_index: u128, layout: &LadderLayout) -> Result<usize> {
    let m = layout.qubit_count();
    if m < 128 && basis_index >> m != 0 {
        return Err(Error::OutOfBounds {
            index: usize::try_from(basis_index).unwrap_or(usize::MAX),
            limit: if m < usize::BITS as usize { 1 << m } else { usize::MAX },
        });
    }
    let excited = |q: QubitId| (basis_index >> (m - 1 - q.0)) & 1 == 0;
    Ok(layout
        .zz_edges()
        .iter()
        .filter(|&&(a, b)| excited(a) && excited(b))
        .count())
}

/// A Hermitian operator that can act on vectors.
pub trait HermitianOperator: Sync {
    fn dim(&self) -> usize;

    /// `y = H x`.
    fn apply(&self, x: &[C64], y: &mut [C64]);

    fn to_dense(&self) -> DMatrix<C64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        let mut x = vec![ZERO; n];
        let mut y = vec![ZERO; n];
        for c in 0..n {
            x[c] = ONE;
            self.apply(&x, &mut y);
            for r in 0..n {
                m[(r, c)] = y[r];
            }
            x[c] = ZERO;
        }
        m
    }

    /// Deviation from hermiticity. Dense for small operators, a two-vector
    /// probe `|⟨u|Hv⟩ − ⟨Hu|v⟩|` otherwise.
    fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        if n <= 1 << DENSE_EXPM_MAX_QUBITS {
            let m = self.to_dense();
            return (&m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        }
        let u: Vec<C64> = (0..n).map(|i| C64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos())).collect();
        let v: Vec<C64> = (0..n).map(|i| C64::new((i as f64 * 0.73).cos(), (i as f64 * 0.29).sin())).collect();
        let mut hu = vec![ZERO; n];
        let mut hv = vec![ZERO; n];
        self.apply(&u, &mut hu);
        self.apply(&v, &mut hv);
        let a: C64 = u.iter().zip(&hv).map(|(x, y)| x.conj() * y).sum();
        let b: C64 = hu.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
        (a - b).norm() / (n as f64)
    }
}

/// An explicit dense Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseHermitian(DMatrix<C64>);

impl DenseHermitian {
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::ShapeMismatch("operator matrix is not square".into()));
        }
        let defect = (&matrix - matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if defect > NORM_TOLERANCE {
            return Err(Error::NonHermitian(defect));
        }
        Ok(Self(matrix))
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }
}

impl HermitianOperator for DenseHermitian {
    fn dim(&self) -> usize {
        self.0.nrows()
    }

    fn apply(&self, x: &[C64], y: &mut [C64]) {
        for (r, out) in y.iter_mut().enumerate() {
            *out = (0..x.len()).map(|c| self.0[(r, c)] * x[c]).sum();
        }
    }

    fn to_dense(&self) -> DMatrix<C64> {
        self.0.clone()
    }
}

/// Qubit Hamiltonian made of a diagonal part plus single-qubit transition
/// terms `c |g⟩⟨e| + c* |e⟩⟨g|` on individual bits. Hermitian by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitHamiltonian {
    n_qubits: usize,
    diagonal: Vec<f64>,
    transitions: Vec<(usize, C64)>,
}

impl QubitHamiltonian {
    pub fn new(n_qubits: usize, diagonal: Vec<f64>, transitions: Vec<(usize, C64)>) -> Result<Self> {
        if diagonal.len() != 1 << n_qubits {
            return Err(Error::ShapeMismatch(format!(
                "diagonal of length {} for {n_qubits} qubits",
                diagonal.len()
            )));
        }
        if let Some(&(bit, _)) = transitions.iter().find(|(b, _)| *b >= n_qubits) {
            return Err(Error::OutOfBounds {
                index: bit,
                limit: n_qubits,
            });
        }
        Ok(Self {
            n_qubits,
            diagonal,
            transitions,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn transitions(&self) -> &[(usize, C64)] {
        &self.transitions
    }

    pub fn is_diagonal(&self) -> bool {
        self.transitions.iter().all(|(_, c)| *c == ZERO)
    }
}

impl HermitianOperator for QubitHamiltonian {
    fn dim(&self) -> usize {
        self.diagonal.len()
    }

    fn apply(&self, x: &[C64], y: &mut [C64]) {
        for ((out, &d), &a) in y.iter_mut().zip(&self.diagonal).zip(x) {
            *out = a * d;
        }
        for &(bit, c) in &self.transitions {
            let step = 1usize << bit;
            for e in (0..x.len()).filter(|e| e & step == 0) {
                let g = e | step;
                y[g] += c * x[e];
                y[e] += c.conj() * x[g];
            }
        }
    }

    fn hermiticity_defect(&self) -> f64 {
        0.0
    }
}

/// `exp(−i H τ) |ψ⟩` with ħ = 1.
pub fn evolve_constant(state: &StateVector, h: &dyn HermitianOperator, duration: f64) -> Result<StateVector> {
    if h.dim() != state.dim() {
        return Err(Error::ShapeMismatch(format!(
            "operator dimension {} for state dimension {}",
            h.dim(),
            state.dim()
        )));
    }
    let defect = h.hermiticity_defect();
    if defect > NORM_TOLERANCE {
        return Err(Error::NonHermitian(defect));
    }
    let amplitudes = if state.n_qubits() <= DENSE_EXPM_MAX_QUBITS {
        expm::dense_expmv(&h.to_dense(), state.amplitudes(), duration)?
    } else {
        expm::krylov_expmv(h, state.amplitudes(), duration, expm::KRYLOV_TOLERANCE)?
    };
    Ok(StateVector::from_parts_unchecked(amplitudes, state.qubit_order().to_vec()))
}
