//! Blockade-limit algebra of neighbor-controlled rotations.
//!
//! In the limit `ζ ≫ Ω` a global pulse on species `χ` rotates every `χ` qubit
//! whose ZZ neighbors are all in `|g⟩` and leaves the others alone. Regular
//! and crossed qubits of the same species rotate by `θ` and `2θ`.
//! Rotations are represented as unit quaternions `(cos θ/2, sin θ/2 · n)`,
//! which compose exactly like `R(θ, n) = cos(θ/2) I − i sin(θ/2) n·σ`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LadderLayout, Species};
use crate::quantum::{check_unit_axis, rotation_matrix, StateVector};
use crate::sparse::SparseState;

pub const X_AXIS: [f64; 3] = [1.0, 0.0, 0.0];
pub const Y_AXIS: [f64; 3] = [0.0, 1.0, 0.0];
const XY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subset {
    Regular,
    Crossed,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ControlRotation {
    pub species: Species,
    pub subset: Subset,
    pub theta_regular: f64,
    pub axis_regular: [f64; 3],
    pub theta_crossed: f64,
    pub axis_crossed: [f64; 3],
}

impl ControlRotation {
    /// The action of one physical pulse: `θ` on regular and `2θ` on crossed
    /// qubits about the same axis.
    pub fn native(species: Species, theta: f64, axis: [f64; 3]) -> Self {
        Self::both(species, theta, axis, 2.0 * theta, axis)
    }

    pub fn both(species: Species, theta_regular: f64, axis_regular: [f64; 3], theta_crossed: f64, axis_crossed: [f64; 3]) -> Self {
        Self {
            species,
            subset: Subset::Both,
            theta_regular,
            axis_regular,
            theta_crossed,
            axis_crossed,
        }
    }

    pub fn regular(species: Species, theta: f64, axis: [f64; 3]) -> Self {
        Self {
            species,
            subset: Subset::Regular,
            theta_regular: theta,
            axis_regular: axis,
            theta_crossed: 0.0,
            axis_crossed: X_AXIS,
        }
    }

    pub fn crossed(species: Species, theta: f64, axis: [f64; 3]) -> Self {
        Self {
            species,
            subset: Subset::Crossed,
            theta_regular: 0.0,
            axis_regular: X_AXIS,
            theta_crossed: theta,
            axis_crossed: axis,
        }
    }

    /// `(θ, n)` applied to a qubit of the given kind.
    pub fn branch(&self, crossed: bool) -> (f64, [f64; 3]) {
        match (self.subset, crossed) {
            (Subset::Regular, true) | (Subset::Crossed, false) => (0.0, X_AXIS),
            (_, true) => (self.theta_crossed, self.axis_crossed),
            (_, false) => (self.theta_regular, self.axis_regular),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_unit_axis(self.axis_regular)?;
        check_unit_axis(self.axis_crossed)
    }

    /// True when a single physical pulse realizes this rotation.
    pub fn is_native(&self) -> bool {
        self.subset == Subset::Both
            && (self.theta_crossed - 2.0 * self.theta_regular).abs() <= 1e-12 * (1.0 + self.theta_regular.abs())
            && self
                .axis_regular
                .iter()
                .zip(&self.axis_crossed)
                .all(|(a, b)| (a - b).abs() <= 1e-12)
    }
}

/// Addressed qubits of `r` as `(bit, neighbor ground mask, crossed)`, given a
/// register ordered like `order`.
fn targets(layout: &LadderLayout, order: &[crate::lattice::QubitId], r: &ControlRotation) -> Result<Vec<(usize, u128, bool)>> {
    let m = order.len();
    let mut position = vec![usize::MAX; layout.qubit_count()];
    for (p, q) in order.iter().enumerate() {
        if q.0 < position.len() {
            position[q.0] = p;
        }
    }
    let bit = |q: crate::lattice::QubitId| -> Result<usize> {
        match position.get(q.0) {
            Some(&p) if p != usize::MAX => Ok(m - 1 - p),
            _ => Err(Error::UnknownQubit(q)),
        }
    };
    if order.len() != layout.qubit_count() {
        return Err(Error::ShapeMismatch(format!(
            "state holds {} qubits, layout has {}",
            order.len(),
            layout.qubit_count()
        )));
    }
    let mut out = Vec::new();
    for q in layout.qubits().iter().filter(|q| q.species == r.species) {
        let mut mask = 0u128;
        for &n in layout.neighbors(q.id)? {
            if layout.qubit(n)?.species == r.species {
                return Err(Error::Unsupported(format!(
                    "{} and {} are ZZ neighbors of the same species",
                    q.id, n
                )));
            }
            mask |= 1 << bit(n)?;
        }
        out.push((bit(q.id)?, mask, q.role.crossed));
    }
    Ok(out)
}

/// Applies `W_ξ` to a state spanning every qubit of the layout.
pub fn apply_w(state: &StateVector, layout: &LadderLayout, r: &ControlRotation) -> Result<StateVector> {
    r.validate()?;
    let mut out = state.clone();
    for (bit, mask, crossed) in targets(layout, state.qubit_order(), r)? {
        let (theta, axis) = r.branch(crossed);
        if theta != 0.0 {
            out.apply_controlled_mut(bit, mask as usize, &rotation_matrix(theta, axis)?);
        }
    }
    Ok(out)
}

/// Sparse counterpart of [`apply_w`], acting in place.
pub fn apply_w_sparse(state: &mut SparseState, layout: &LadderLayout, r: &ControlRotation) -> Result<()> {
    r.validate()?;
    for (bit, mask, crossed) in targets(layout, state.qubit_order(), r)? {
        let (theta, axis) = r.branch(crossed);
        if theta != 0.0 {
            state.apply_controlled(bit, mask, &rotation_matrix(theta, axis)?);
        }
    }
    Ok(())
}

/// Unit quaternion of `R(θ, n)`.
pub fn quaternion(theta: f64, axis: [f64; 3]) -> [f64; 4] {
    let (s, c) = (theta / 2.0).sin_cos();
    [c, s * axis[0], s * axis[1], s * axis[2]]
}

/// Hamilton product `a · b`.
pub fn quaternion_mul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

/// Angle in `[0, 2π]` and axis of a unit quaternion; `±I` gets axis `+x`.
pub fn angle_axis(q: [f64; 4]) -> (f64, [f64; 3]) {
    let v = (q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
    let theta = 2.0 * v.atan2(q[0]);
    if v <= 1e-15 {
        return (theta, X_AXIS);
    }
    (theta, [q[1] / v, q[2] / v, q[3] / v])
}

/// `(θ3, n3)` with `R(θ3, n3) = R(θ2, n2) R(θ1, n1)`, `θ3 ∈ [0, 2π] ⊂ [0, 4π)`.
pub fn compose_su2(theta1: f64, axis1: [f64; 3], theta2: f64, axis2: [f64; 3]) -> Result<(f64, [f64; 3])> {
    check_unit_axis(axis1)?;
    check_unit_axis(axis2)?;
    Ok(angle_axis(quaternion_mul(quaternion(theta2, axis2), quaternion(theta1, axis1))))
}

/// The conditional phase `Π_i (Q_i − P_i)` on the chosen subset: `θ = 2π`.
pub fn z_tot(species: Species, subset: Subset) -> ControlRotation {
    match subset {
        Subset::Regular => ControlRotation::regular(species, 2.0 * PI, X_AXIS),
        Subset::Crossed => ControlRotation::crossed(species, 2.0 * PI, X_AXIS),
        Subset::Both => ControlRotation::both(species, 2.0 * PI, X_AXIS, 2.0 * PI, X_AXIS),
    }
}

fn xy_axis(axis: [f64; 3]) -> Result<[f64; 3]> {
    check_unit_axis(axis)?;
    if axis[2].abs() > XY_TOLERANCE {
        return Err(Error::UnsupportedAxis(axis[2]));
    }
    let n = axis[0].hypot(axis[1]);
    Ok([axis[0] / n, axis[1] / n, 0.0])
}

fn neg(a: [f64; 3]) -> [f64; 3] {
    [-a[0], -a[1], -a[2]]
}

/// Four native pulses, in time order, whose net action is `R(θ, n)` on the
/// crossed `χ` qubits and the identity on the regular ones.
pub fn compile_crossed_rotation(species: Species, theta: f64, axis: [f64; 3]) -> Result<Vec<ControlRotation>> {
    let n = xy_axis(axis)?;
    let m = [-n[1], n[0], 0.0];
    Ok(vec![
        ControlRotation::native(species, theta / 4.0, n),
        ControlRotation::native(species, PI, m),
        ControlRotation::native(species, theta / 4.0, n),
        ControlRotation::native(species, PI, neg(m)),
    ])
}

/// One native pulse followed by a crossed compensation, in time order: net
/// `R(θ, n)` on the regular `χ` qubits, identity on the crossed ones.
pub fn compile_regular_rotation(species: Species, theta: f64, axis: [f64; 3]) -> Result<Vec<ControlRotation>> {
    let n = xy_axis(axis)?;
    let mut out = vec![ControlRotation::native(species, theta, n)];
    out.extend(compile_crossed_rotation(species, 2.0 * theta, neg(n))?);
    Ok(out)
}

/// `(α, β, γ)` with `R(α, x) R(β, y) R(γ, x) = R(θ, n)` up to global phase.
pub fn euler_xyx(theta: f64, axis: [f64; 3]) -> Result<(f64, f64, f64)> {
    check_unit_axis(axis)?;
    let [w, vx, vy, vz] = quaternion(theta, axis);
    // w = cos(β/2) cos σ, vx = cos(β/2) sin σ, vy = sin(β/2) cos δ,
    // vz = sin(β/2) sin δ with σ = (α + γ)/2 and δ = (α − γ)/2
    let cb = w.hypot(vx);
    let sb = vy.hypot(vz);
    let beta = 2.0 * sb.atan2(cb);
    let sigma = if cb <= 1e-15 { 0.0 } else { vx.atan2(w) };
    if sb <= 1e-15 {
        return Ok((2.0 * sigma, beta, 0.0));
    }
    let delta = vz.atan2(vy);
    Ok((sigma + delta, beta, sigma - delta))
}

/// The xy-plane rotations `[(γ, x), (β, y), (α, x)]` of [`euler_xyx`] in time
/// order, skipping zero angles.
pub fn euler_factors(theta: f64, axis: [f64; 3]) -> Result<Vec<(f64, [f64; 3])>> {
    let (alpha, beta, gamma) = euler_xyx(theta, axis)?;
    Ok([(gamma, X_AXIS), (beta, Y_AXIS), (alpha, X_AXIS)]
        .into_iter()
        .filter(|(a, _)| a.abs() > 1e-15)
        .collect())
}

/// Wraps an angle into `(−π, π]`.
pub fn wrap_phase(phi: f64) -> f64 {
    let mut p = phi.rem_euclid(2.0 * PI);
    if p > PI {
        p -= 2.0 * PI;
    }
    p
}

/// Axis `(cos φ, sin φ, 0)` of a drive with phase `φ`.
pub fn phase_axis(phi: f64) -> [f64; 3] {
    let (s, c) = phi.sin_cos();
    [c, s, 0.0]
}

/// Phase of an xy-plane axis.
pub fn axis_phase(axis: [f64; 3]) -> f64 {
    if axis[0] == 0.0 && axis[1] == 0.0 {
        0.0
    } else {
        axis[1].atan2(axis[0])
    }
}
