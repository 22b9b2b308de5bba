//! Matrix exponentials of Hermitian operators applied to states.
//!
//! Small registers use a dense Padé scaling-and-squaring exponential. Large
//! registers use a Lanczos (Krylov) approximation of `exp(−iHt)v` with
//! adaptive substeps. Dense Hermitian eigensolvers are avoided on purpose:
//! the rotating-frame Hamiltonians are highly degenerate and the available
//! complex solver does not always converge on them.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::quantum::{HermitianOperator, C64, ZERO};

pub const KRYLOV_TOLERANCE: f64 = 1e-10;
const KRYLOV_MAX_DIM: usize = 40;

/// `exp(−iHt)` for a dense Hermitian matrix.
pub fn dense_propagator(h: &DMatrix<C64>, t: f64) -> Result<DMatrix<C64>> {
    if !h.is_square() {
        return Err(Error::ShapeMismatch("operator matrix is not square".into()));
    }
    Ok((h * C64::new(0.0, -t)).exp())
}

/// `exp(−iHt) ψ` for a dense Hermitian matrix.
pub fn dense_expmv(h: &DMatrix<C64>, psi: &[C64], t: f64) -> Result<Vec<C64>> {
    if h.ncols() != psi.len() {
        return Err(Error::ShapeMismatch(format!(
            "operator dimension {} for vector length {}",
            h.ncols(),
            psi.len()
        )));
    }
    let out = dense_propagator(h, t)? * DVector::from_column_slice(psi);
    Ok(out.iter().copied().collect())
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

struct LanczosBasis {
    vectors: Vec<Vec<C64>>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    /// Norm of the residual after the last vector; zero on an invariant subspace.
    residual: f64,
}

fn lanczos(op: &dyn HermitianOperator, start: &[C64], max_dim: usize) -> LanczosBasis {
    let n = start.len();
    let m = max_dim.min(n);
    let b0 = norm(start);
    let mut vectors = vec![start.iter().map(|x| x / b0).collect::<Vec<_>>()];
    let mut alpha = Vec::with_capacity(m);
    let mut beta = Vec::with_capacity(m);
    let mut w = vec![ZERO; n];
    loop {
        let j = vectors.len() - 1;
        op.apply(&vectors[j], &mut w);
        let a = dot(&vectors[j], &w).re;
        alpha.push(a);
        // full reorthogonalization keeps the basis clean over long segments
        for _ in 0..2 {
            for v in &vectors {
                let c = dot(v, &w);
                w.iter_mut().zip(v).for_each(|(x, y)| *x -= c * y);
            }
        }
        let b = norm(&w);
        if vectors.len() == m || b <= 1e-13 * (1.0 + a.abs()) {
            return LanczosBasis {
                vectors,
                alpha,
                beta,
                residual: if vectors_full(m, n) { 0.0 } else { b },
            };
        }
        beta.push(b);
        vectors.push(w.iter().map(|x| x / b).collect());
    }
}

fn vectors_full(m: usize, n: usize) -> bool {
    m == n
}

/// `exp(−iHt) v` by restarted Lanczos with an a-posteriori error estimate.
pub fn krylov_expmv(op: &dyn HermitianOperator, v: &[C64], t: f64, tol: f64) -> Result<Vec<C64>> {
    if op.dim() != v.len() {
        return Err(Error::ShapeMismatch(format!(
            "operator dimension {} for vector length {}",
            op.dim(),
            v.len()
        )));
    }
    let total = t.abs();
    let sign = t.signum();
    let mut current = v.to_vec();
    let mut done = 0.0;
    let mut step = total;
    let scale = norm(v);
    if scale == 0.0 || total == 0.0 {
        return Ok(current);
    }
    while done < total {
        let basis = lanczos(op, &current, KRYLOV_MAX_DIM);
        let k = basis.alpha.len();
        let t_mat: DMatrix<f64> = DMatrix::from_fn(k, k, |r, c| {
            if r == c {
                basis.alpha[r]
            } else if r + 1 == c {
                basis.beta[r]
            } else if c + 1 == r {
                basis.beta[c]
            } else {
                0.0
            }
        });
        let t_mat = t_mat.map(|x| C64::new(x, 0.0));
        let small = |h: f64| -> Vec<C64> { (&t_mat * C64::new(0.0, -sign * h)).exp().column(0).iter().copied().collect() };
        step = step.min(total - done);
        let coeffs = loop {
            let c = small(step);
            let err = scale * basis.residual * c[k - 1].norm();
            if err <= tol * step / total || step < 1e-12 * total {
                break c;
            }
            step *= 0.5;
        };
        let mut next = vec![ZERO; current.len()];
        for (c, vec) in coeffs.iter().zip(&basis.vectors) {
            let w = c * scale;
            next.iter_mut().zip(vec).for_each(|(x, y)| *x += w * y);
        }
        // keep the norm of the input exactly
        let nn = norm(&next);
        next.iter_mut().for_each(|x| *x *= scale / nn);
        current = next;
        done += step;
        step *= 1.5;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{DenseHermitian, QubitHamiltonian, ONE};

    fn random_hermitian(n: usize, seed: u64) -> DMatrix<C64> {
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let a = DMatrix::from_fn(n, n, |_, _| C64::new(next(), next()));
        (&a + a.adjoint()) * C64::new(0.5, 0.0)
    }

    #[test]
    fn krylov_matches_dense() {
        let n = 200;
        let h = DenseHermitian::new(random_hermitian(n, 5) * C64::new(4.0, 0.0)).unwrap();
        let v: Vec<C64> = (0..n).map(|i| C64::new((i as f64).sin(), (i as f64 * 0.5).cos())).collect();
        let scale = norm(&v);
        let v: Vec<C64> = v.iter().map(|x| x / scale).collect();
        let dense = dense_expmv(h.matrix(), &v, 3.0).unwrap();
        let kry = krylov_expmv(&h, &v, 3.0, 1e-11).unwrap();
        let diff: f64 = dense.iter().zip(&kry).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        assert!(diff < 1e-9, "diff {diff}");
    }

    #[test]
    fn krylov_handles_invariant_subspace() {
        let h = QubitHamiltonian::new(12, (0..4096).map(|i| (i % 7) as f64).collect(), vec![]).unwrap();
        let mut v = vec![ZERO; 4096];
        v[10] = ONE;
        let out = krylov_expmv(&h, &v, 2.0, 1e-10).unwrap();
        assert!((out[10] - C64::from_polar(1.0, -2.0 * 3.0)).norm() < 1e-12);
    }

    #[test]
    fn propagator_unitary_composes() {
        let h = random_hermitian(8, 9);
        let u = dense_propagator(&h, 0.7).unwrap() * dense_propagator(&h, 0.4).unwrap();
        let direct = dense_propagator(&h, 1.1).unwrap();
        assert!((u - direct).norm() < 1e-12);
    }
}
