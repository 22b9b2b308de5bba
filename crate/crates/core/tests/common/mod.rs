//! Independent dense oracles shared by the integration tests. Nothing here
//! calls the library's own linear algebra.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zz_ladder::lattice::{LadderLayout, QubitId};
use zz_ladder::quantum::StateVector;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn m2(a: [[C64; 2]; 2]) -> DMatrix<C64> {
    DMatrix::from_row_slice(2, 2, &[a[0][0], a[0][1], a[1][0], a[1][1]])
}

/// Pauli matrices in the (e, g) basis.
pub fn sx() -> DMatrix<C64> {
    m2([[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]])
}
pub fn sy() -> DMatrix<C64> {
    m2([[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]])
}
pub fn sz() -> DMatrix<C64> {
    m2([[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]])
}
pub fn id2() -> DMatrix<C64> {
    DMatrix::identity(2, 2)
}
/// `|e⟩⟨e|`.
pub fn proj_e() -> DMatrix<C64> {
    m2([[c(1., 0.), c(0., 0.)], [c(0., 0.), c(0., 0.)]])
}
/// `|g⟩⟨g|`.
pub fn proj_g() -> DMatrix<C64> {
    m2([[c(0., 0.), c(0., 0.)], [c(0., 0.), c(1., 0.)]])
}

/// `cos(θ/2) I − i sin(θ/2) n·σ`, assembled from Pauli matrices.
pub fn rot(theta: f64, n: [f64; 3]) -> DMatrix<C64> {
    let ns = sx() * c(n[0], 0.) + sy() * c(n[1], 0.) + sz() * c(n[2], 0.);
    id2() * c((theta / 2.0).cos(), 0.) - ns * c(0., (theta / 2.0).sin())
}

pub fn kron_all(factors: &[DMatrix<C64>]) -> DMatrix<C64> {
    let mut out = DMatrix::from_element(1, 1, c(1., 0.));
    for f in factors {
        out = out.kronecker(f);
    }
    out
}

/// `op` on register position `p` of `m` qubits (position 0 is the most
/// significant factor).
pub fn embed(op: &DMatrix<C64>, p: usize, m: usize) -> DMatrix<C64> {
    let factors: Vec<_> = (0..m).map(|i| if i == p { op.clone() } else { id2() }).collect();
    kron_all(&factors)
}

/// Controlled rotation `1⊗Q + u⊗P` built as a sum over neighbor patterns.
pub fn controlled(u: &DMatrix<C64>, target: usize, neighbors: &[usize], m: usize) -> DMatrix<C64> {
    let dim = 1 << m;
    let mut p = DMatrix::<C64>::identity(dim, dim);
    for &n in neighbors {
        p *= embed(&proj_g(), n, m);
    }
    let q = DMatrix::<C64>::identity(dim, dim) - &p;
    q + embed(u, target, m) * p
}

/// Effective-model operator of a control rotation `W_χ(θr, nr; θx, nx)` on a
/// layout, assembled qubit by qubit.
pub fn w_operator(
    layout: &LadderLayout,
    species: zz_ladder::lattice::Species,
    regular: (f64, [f64; 3]),
    crossed: (f64, [f64; 3]),
) -> DMatrix<C64> {
    let m = layout.qubit_count();
    let mut out = DMatrix::<C64>::identity(1 << m, 1 << m);
    for q in layout.qubits().iter().filter(|q| q.species == species) {
        let (theta, axis) = if q.role.crossed { crossed } else { regular };
        let ns: Vec<usize> = layout.neighbors(q.id).unwrap().iter().map(|n| n.0).collect();
        out = controlled(&rot(theta, axis), q.id.0, &ns, m) * out;
    }
    out
}

pub fn vec_of(state: &StateVector) -> DVector<C64> {
    DVector::from_column_slice(state.amplitudes())
}

pub fn state_of(v: &DVector<C64>, order: Vec<QubitId>) -> StateVector {
    StateVector::new(v.iter().copied().collect(), order).unwrap()
}

pub fn overlap(a: &DVector<C64>, b: &DVector<C64>) -> f64 {
    a.dotc(b).norm()
}

/// Distance between two operators after removing the best global phase.
pub fn phase_free_distance(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    let tr = (a.adjoint() * b).trace();
    let phase = if tr.norm() > 1e-300 { tr / tr.norm() } else { c(1., 0.) };
    (a * phase - b).norm()
}

/// True when `u` is a scalar multiple of the identity.
pub fn is_phase(u: &DMatrix<C64>, tol: f64) -> bool {
    phase_free_distance(u, &DMatrix::identity(u.nrows(), u.ncols())) < tol
}

pub fn random_amplitudes(m: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    let raw: Vec<C64> = (0..1usize << m).map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
    let n = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    raw.into_iter().map(|z| z / n).collect()
}

pub fn random_state(order: Vec<QubitId>, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    StateVector::new(random_amplitudes(order.len(), &mut rng), order).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random unit axis in the xy plane.
pub fn random_xy_axis(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let phi: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
    [phi.cos(), phi.sin(), 0.0]
}

/// Random unit axis on the sphere.
pub fn random_axis(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let z: f64 = 2.0 * rng.gen::<f64>() - 1.0;
    let phi: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
    let r = (1.0 - z * z).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

/// Ordered product of segment branch rotations `R(s·τ, n(φ))`, later rows
/// acting last.
pub fn table_branch(table: &[(f64, f64)], scale: f64) -> DMatrix<C64> {
    table.iter().fold(id2(), |acc, &(phi, tau)| rot(scale * tau, [phi.cos(), phi.sin(), 0.0]) * acc)
}

pub fn bits_of(index: usize, m: usize) -> String {
    (0..m).map(|p| if (index >> (m - 1 - p)) & 1 == 0 { 'e' } else { 'g' }).collect()
}

/// Basis index of a string of `e`/`g` letters (first letter most significant).
pub fn index_of(letters: &str) -> usize {
    letters.chars().fold(0, |acc, ch| (acc << 1) | usize::from(ch == 'g'))
}

/// `exp(−i H t)` by scaling and squaring a 30-term Taylor series.
pub fn expm_taylor(h: &DMatrix<C64>, t: f64) -> DMatrix<C64> {
    let norm = h.norm() * t.abs();
    let squarings = (norm.max(1.0).log2().ceil() as i32 + 2).max(0);
    let a = h * c(0.0, -t / 2f64.powi(squarings));
    let n = h.nrows();
    let mut term = DMatrix::<C64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &a / c(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Rotating-frame Hamiltonian of an open chain, built from Kronecker terms:
/// `Σ_driven (Ω_i/2)(e^{iφ}|g⟩⟨e| + h.c.) + 2ζ Σ_edges |ee⟩⟨ee|`.
pub fn chain_rwa(m: usize, driven: &[(usize, f64, f64)], zeta: f64) -> DMatrix<C64> {
    let dim = 1 << m;
    let mut h = DMatrix::<C64>::zeros(dim, dim);
    let lower = m2([[c(0., 0.), c(0., 0.)], [c(1., 0.), c(0., 0.)]]); // |g⟩⟨e|
    for &(p, rabi, phi) in driven {
        let term = &lower * C64::from_polar(0.5 * rabi, phi);
        let op = &term + term.adjoint();
        h += embed(&op, p, m);
    }
    for p in 0..m.saturating_sub(1) {
        h += embed(&proj_e(), p, m) * embed(&proj_e(), p + 1, m) * c(2.0 * zeta, 0.);
    }
    h
}
