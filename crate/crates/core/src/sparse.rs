//! Sparse amplitude maps for registers too large for a dense vector.
//!
//! Well-formed ladder states have at most `2^N` nonzero amplitudes, and the
//! effective model maps them to states of similar size, so a map keyed by the
//! basis index handles the full ladder at any size up to 128 qubits.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::QubitId;
use crate::quantum::{SingleQubitUnitary, StateVector, C64, DENSE_MAX_QUBITS, ZERO};

/// Amplitudes below this modulus are dropped after each gate.
pub const PRUNE_TOLERANCE: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseState {
    amplitudes: BTreeMap<u128, C64>,
    qubit_order: Vec<QubitId>,
}

impl SparseState {
    pub fn new(qubit_order: Vec<QubitId>) -> Result<Self> {
        if qubit_order.len() > 128 {
            return Err(Error::InvalidSize(format!(
                "{} qubits exceed the sparse limit of 128",
                qubit_order.len()
            )));
        }
        Ok(Self {
            amplitudes: BTreeMap::new(),
            qubit_order,
        })
    }

    /// Basis state with the listed qubits excited and all others ground.
    pub fn basis(qubit_order: Vec<QubitId>, excited: &[QubitId]) -> Result<Self> {
        let mut s = Self::new(qubit_order)?;
        let mut index = s.ground_index();
        for &q in excited {
            index &= !(1u128 << s.bit(q)?);
        }
        s.amplitudes.insert(index, C64::new(1.0, 0.0));
        Ok(s)
    }

    pub fn from_dense(state: &StateVector) -> Self {
        let amplitudes = state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != ZERO)
            .map(|(i, &a)| (i as u128, a))
            .collect();
        Self {
            amplitudes,
            qubit_order: state.qubit_order().to_vec(),
        }
    }

    pub fn to_dense(&self) -> Result<StateVector> {
        let m = self.qubit_order.len();
        if m > DENSE_MAX_QUBITS {
            return Err(Error::InvalidSize(format!(
                "{m} qubits exceed the dense limit of {DENSE_MAX_QUBITS}"
            )));
        }
        let mut amplitudes = vec![ZERO; 1 << m];
        for (&i, &a) in &self.amplitudes {
            amplitudes[i as usize] = a;
        }
        StateVector::normalized(amplitudes, self.qubit_order.clone())
    }

    pub fn n_qubits(&self) -> usize {
        self.qubit_order.len()
    }

    pub fn qubit_order(&self) -> &[QubitId] {
        &self.qubit_order
    }

    pub fn ground_index(&self) -> u128 {
        let m = self.qubit_order.len();
        if m == 128 {
            u128::MAX
        } else {
            (1u128 << m) - 1
        }
    }

    pub fn position(&self, q: QubitId) -> Result<usize> {
        self.qubit_order
            .iter()
            .position(|&x| x == q)
            .ok_or(Error::UnknownQubit(q))
    }

    pub fn bit(&self, q: QubitId) -> Result<usize> {
        Ok(self.n_qubits() - 1 - self.position(q)?)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u128, C64)> + '_ {
        self.amplitudes.iter().map(|(&i, &a)| (i, a))
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitude(&self, index: u128) -> C64 {
        self.amplitudes.get(&index).copied().unwrap_or(ZERO)
    }

    /// Adds `a` to the amplitude at `index`.
    pub fn add(&mut self, index: u128, a: C64) {
        *self.amplitudes.entry(index).or_insert(ZERO) += a;
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::InvalidParameter("cannot normalize a zero vector".into()));
        }
        self.amplitudes.values_mut().for_each(|a| *a /= n);
        Ok(())
    }

    pub fn inner(&self, other: &SparseState) -> Result<C64> {
        if self.qubit_order != other.qubit_order {
            return Err(Error::ShapeMismatch("sparse states use different qubit orders".into()));
        }
        Ok(self
            .amplitudes
            .iter()
            .map(|(i, a)| a.conj() * other.amplitude(*i))
            .sum())
    }

    pub fn fidelity(&self, other: &SparseState) -> Result<f64> {
        Ok(self.inner(other)?.norm().min(1.0))
    }

    pub fn population(&self, q: QubitId) -> Result<f64> {
        let bit = self.bit(q)?;
        Ok(self
            .amplitudes
            .iter()
            .filter(|(i, _)| (*i >> bit) & 1 == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    pub fn apply_single(&mut self, bit: usize, u: &SingleQubitUnitary) {
        self.apply_controlled(bit, 0, u);
    }

    /// Applies `u` on `bit` wherever every bit of `ground_mask` reads `g`.
    pub fn apply_controlled(&mut self, bit: usize, ground_mask: u128, u: &SingleQubitUnitary) {
        let m = u.matrix();
        let step = 1u128 << bit;
        let old = std::mem::take(&mut self.amplitudes);
        let mut out = BTreeMap::new();
        let mut push = |i: u128, a: C64| {
            if a.norm() >= PRUNE_TOLERANCE {
                *out.entry(i).or_insert(ZERO) += a;
            }
        };
        for (&i, &a) in &old {
            if i & ground_mask != ground_mask {
                push(i, a);
                continue;
            }
            let e = i & !step;
            let g = i | step;
            if i == g && old.contains_key(&e) {
                continue;
            }
            let ae = old.get(&e).copied().unwrap_or(ZERO);
            let ag = old.get(&g).copied().unwrap_or(ZERO);
            push(e, m[0][0] * ae + m[0][1] * ag);
            push(g, m[1][0] * ae + m[1][1] * ag);
        }
        self.amplitudes = out;
    }

    pub fn scale(&mut self, factor: C64) {
        self.amplitudes.values_mut().for_each(|a| *a *= factor);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{apply_controlled_rotation, fidelity, rotation_matrix, StateVector, ONE};

    fn order(m: usize) -> Vec<QubitId> {
        (0..m).map(QubitId).collect()
    }

    #[test]
    fn matches_dense_controlled_rotation() {
        let factors = [[ONE, C64::new(0.3, 0.4)], [C64::new(0.2, -0.1), ONE], [ONE, ONE], [C64::new(0.0, 1.0), ONE]];
        let dense = StateVector::product(order(4), &factors).unwrap();
        let u = rotation_matrix(1.3, [0.6, 0.0, 0.8]).unwrap();
        let expected = apply_controlled_rotation(&dense, QubitId(1), &[QubitId(0), QubitId(3)], &u).unwrap();
        let mut sparse = SparseState::from_dense(&dense);
        let mask = (1u128 << 3) | 1;
        sparse.apply_controlled(2, mask, &u);
        let got = sparse.to_dense().unwrap();
        assert!((1.0 - fidelity(&got, &expected).unwrap()).abs() < 1e-14);
        assert!(got.inner(&expected).unwrap().re > 1.0 - 1e-14);
    }

    #[test]
    fn basis_and_population() {
        let s = SparseState::basis(order(100), &[QubitId(3), QubitId(99)]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.population(QubitId(3)).unwrap(), 1.0);
        assert_eq!(s.population(QubitId(4)).unwrap(), 0.0);
        assert!(s.to_dense().is_err());
        assert!(SparseState::new(order(129)).is_err());
    }
}
