//! Schedule execution in three backends and the numerical experiments.
//!
//! - `effective`: every segment is an exact neighbor-controlled rotation.
//! - `rwa_exact`: every segment evolves under the time-independent
//!   rotating-frame Hamiltonian with finite blockade ratio.
//! - `lab_frame`: the time-dependent lab-frame Hamiltonian, integrated with
//!   fixed-step RK4 (at most four qubits).
//!
//! Times in trajectories are in units of the inverse nominal Rabi frequency.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::effective::{apply_w_sparse, phase_axis};
use crate::error::{Error, Result};
use crate::expm::{dense_propagator, krylov_expmv, KRYLOV_TOLERANCE};
use crate::hamiltonian::{lab_hamiltonian, local_frequency, rotating_frame_hamiltonian, DeviceParams};
use crate::lattice::{build_ladder, LadderLayout, QubitId, Species};
use crate::protocols::{
    bloch_state, expand_well_formed, logical_order, shift_sequence, single_qubit_gate_sequence, validate_schedule,
    CompiledCircuit, LogicalCircuit, PulseSchedule, PulseSegment, Stage, WellFormedState,
};
use crate::quantum::{
    fidelity, populations, HermitianOperator, SingleQubitUnitary, StateVector, C64, DENSE_EXPM_MAX_QUBITS, ONE, ZERO,
};
use crate::sparse::SparseState;

pub const LAB_FRAME_MAX_QUBITS: usize = 4;
/// RK4 steps per period of the fastest frequency in the lab frame.
const LAB_STEPS_PER_PERIOD: f64 = 200.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Effective,
    RwaExact,
    LabFrame,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Effective => "effective",
            Backend::RwaExact => "rwa_exact",
            Backend::LabFrame => "lab_frame",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "effective" => Ok(Backend::Effective),
            "rwa_exact" | "rwa" => Ok(Backend::RwaExact),
            "lab_frame" | "lab" => Ok(Backend::LabFrame),
            other => Err(Error::InvalidParameter(format!("unknown backend {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// `populations[s][p]`: excited population of the qubit at position `p`
    /// of the register at sample `s`.
    pub populations: Vec<Vec<f64>>,
    pub final_state: StateVector,
}

impl Trajectory {
    fn start(initial: &StateVector) -> Self {
        Self {
            times: vec![0.0],
            populations: vec![populations(initial)],
            final_state: initial.clone(),
        }
    }

    fn record(&mut self, t: f64, p: Vec<f64>) {
        self.times.push(t);
        self.populations.push(p);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_populations(&self) -> &[f64] {
        self.populations.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// CSV with header `t,P_e_q0,P_e_q1,…` (qubit ids of the register).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for q in self.final_state.qubit_order() {
            out.push_str(&format!(",P_e_q{}", q.0));
        }
        out.push('\n');
        for (t, row) in self.times.iter().zip(&self.populations) {
            out.push_str(&format!("{t:.12}"));
            for p in row {
                out.push_str(&format!(",{p:.12}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }
}

fn check_run(schedule: &PulseSchedule, initial: &StateVector, layout: &LadderLayout) -> Result<()> {
    let violations = validate_schedule(schedule);
    if let Some(v) = violations.first() {
        return Err(Error::Schedule(format!("segment {}: {}", v.segment, v.message)));
    }
    if initial.qubit_order() != layout.qubit_ids().as_slice() {
        return Err(Error::ShapeMismatch(
            "initial state must list every layout qubit in enumeration order".into(),
        ));
    }
    Ok(())
}

/// Executes `schedule` from `initial`. `sample_points` is the number of
/// recorded points per segment for the continuous backends; the effective
/// backend records segment ends only.
pub fn run(
    schedule: &PulseSchedule,
    initial: &StateVector,
    layout: &LadderLayout,
    params: &DeviceParams,
    backend: Backend,
    sample_points: usize,
) -> Result<Trajectory> {
    check_run(schedule, initial, layout)?;
    params.validate()?;
    let samples = sample_points.max(1);
    match backend {
        Backend::Effective => run_effective(schedule, initial, layout),
        Backend::RwaExact => run_rwa(schedule, initial, layout, params, samples),
        Backend::LabFrame => run_lab(schedule, initial, layout, params, samples),
    }
}

fn sparse_populations(state: &SparseState) -> Vec<f64> {
    let m = state.n_qubits();
    let mut p = vec![0.0; m];
    for (i, a) in state.entries() {
        let w = a.norm_sqr();
        for (pos, slot) in p.iter_mut().enumerate() {
            if (i >> (m - 1 - pos)) & 1 == 0 {
                *slot += w;
            }
        }
    }
    p
}

fn run_effective(schedule: &PulseSchedule, initial: &StateVector, layout: &LadderLayout) -> Result<Trajectory> {
    let mut traj = Trajectory::start(initial);
    let mut state = SparseState::from_dense(initial);
    let mut t = 0.0;
    for seg in schedule.segments() {
        apply_segment_effective(&mut state, layout, seg)?;
        t += seg.duration;
        traj.record(t, sparse_populations(&state));
    }
    traj.final_state = state.to_dense()?;
    Ok(traj)
}

fn apply_segment_effective(state: &mut SparseState, layout: &LadderLayout, seg: &PulseSegment) -> Result<()> {
    for r in seg.rotations() {
        apply_w_sparse(state, layout, &r)?;
    }
    Ok(())
}

/// Effective-model execution on a sparse register of any ladder size.
pub fn run_effective_sparse(schedule: &PulseSchedule, initial: &SparseState, layout: &LadderLayout) -> Result<SparseState> {
    if let Some(v) = validate_schedule(schedule).first() {
        return Err(Error::Schedule(format!("segment {}: {}", v.segment, v.message)));
    }
    let mut state = initial.clone();
    for seg in schedule.segments() {
        apply_segment_effective(&mut state, layout, seg)?;
    }
    Ok(state)
}

fn segment_key(seg: &PulseSegment) -> Vec<(Species, u64, u64)> {
    seg.species
        .iter()
        .map(|&s| (s, seg.phase_of(s).to_bits(), seg.rabi_scale_of(s).to_bits()))
        .collect()
}

/// Rotating-frame propagators keyed by the drive content of a segment and
/// the evolution time.
/// Drive settings (species, phase bits, Rabi-scale bits) plus duration bits.
type SegmentKey = (Vec<(Species, u64, u64)>, u64);

struct PropagatorCache<'a> {
    layout: &'a LadderLayout,
    params: &'a DeviceParams,
    cache: HashMap<SegmentKey, DMatrix<C64>>,
}

impl<'a> PropagatorCache<'a> {
    fn new(layout: &'a LadderLayout, params: &'a DeviceParams) -> Self {
        Self {
            layout,
            params,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, seg: &PulseSegment, t: f64) -> Result<&DMatrix<C64>> {
        let key = (segment_key(seg), t.to_bits());
        if !self.cache.contains_key(&key) {
            let h = rotating_frame_hamiltonian(self.layout, self.params, &seg.drive_config(self.params))?;
            self.cache.insert(key.clone(), dense_propagator(&h.to_dense(), t)?);
        }
        Ok(&self.cache[&key])
    }
}

fn run_rwa(
    schedule: &PulseSchedule,
    initial: &StateVector,
    layout: &LadderLayout,
    params: &DeviceParams,
    samples: usize,
) -> Result<Trajectory> {
    let mut traj = Trajectory::start(initial);
    let order = initial.qubit_order().to_vec();
    let mut psi = initial.amplitudes().to_vec();
    let mut t0 = 0.0;
    let dense = initial.n_qubits() <= DENSE_EXPM_MAX_QUBITS;
    let mut cache = PropagatorCache::new(layout, params);
    for seg in schedule.segments() {
        let span = seg.duration / params.omega_rabi;
        if dense {
            let step = cache.get(seg, span / samples as f64)?;
            for j in 1..=samples {
                psi = (step * DVector::from_column_slice(&psi)).iter().copied().collect();
                let s = StateVector::from_parts_unchecked(psi.clone(), order.clone());
                traj.record((t0 + span * j as f64 / samples as f64) * params.omega_rabi, populations(&s));
            }
        } else {
            let h = rotating_frame_hamiltonian(layout, params, &seg.drive_config(params))?;
            for j in 1..=samples {
                psi = krylov_expmv(&h, &psi, span / samples as f64, KRYLOV_TOLERANCE)?;
                let s = StateVector::from_parts_unchecked(psi.clone(), order.clone());
                traj.record((t0 + span * j as f64 / samples as f64) * params.omega_rabi, populations(&s));
            }
        }
        t0 += span;
    }
    traj.final_state = StateVector::from_parts_unchecked(psi, order);
    Ok(traj)
}

/// Rotating-frame unitary of a whole schedule (dense registers only).
pub fn schedule_unitary(schedule: &PulseSchedule, layout: &LadderLayout, params: &DeviceParams) -> Result<DMatrix<C64>> {
    let m = layout.qubit_count();
    if m > DENSE_EXPM_MAX_QUBITS {
        return Err(Error::InvalidSize(format!("{m} qubits are too many for a dense unitary")));
    }
    if let Some(v) = validate_schedule(schedule).first() {
        return Err(Error::Schedule(format!("segment {}: {}", v.segment, v.message)));
    }
    let mut cache = PropagatorCache::new(layout, params);
    let mut u = DMatrix::identity(1 << m, 1 << m);
    for seg in schedule.segments() {
        u = cache.get(seg, seg.duration / params.omega_rabi)? * u;
    }
    Ok(u)
}

fn run_lab(
    schedule: &PulseSchedule,
    initial: &StateVector,
    layout: &LadderLayout,
    params: &DeviceParams,
    samples: usize,
) -> Result<Trajectory> {
    let m = layout.qubit_count();
    if m > LAB_FRAME_MAX_QUBITS {
        return Err(Error::Backend(format!(
            "lab-frame integration is limited to {LAB_FRAME_MAX_QUBITS} qubits, layout has {m}"
        )));
    }
    let order = initial.qubit_order().to_vec();
    let mut traj = Trajectory::start(initial);
    let mut psi = DVector::from_column_slice(initial.amplitudes());
    let mut t = 0.0;
    let mut omega_max = [Species::A, Species::B, Species::C]
        .iter()
        .map(|&s| params.resonant_drive_frequency(s).abs())
        .fold(0.0, f64::max);
    for q in layout.qubits() {
        omega_max = omega_max.max(local_frequency(layout, params, q.id)?.abs());
    }
    let h_max = 2.0 * PI / (LAB_STEPS_PER_PERIOD * omega_max.max(params.omega_rabi));
    for seg in schedule.segments() {
        let drives = seg.drive_config(params);
        let span = seg.duration / params.omega_rabi;
        let steps_per_sample = ((span / samples as f64) / h_max).ceil().max(1.0) as usize;
        let h = span / (samples * steps_per_sample) as f64;
        let hamiltonian_at = |time: f64| -> Result<DMatrix<C64>> {
            Ok(lab_hamiltonian(layout, params, &drives, time)?.to_dense())
        };
        let deriv = |time: f64, v: &DVector<C64>| -> Result<DVector<C64>> {
            Ok(hamiltonian_at(time)? * v * C64::new(0.0, -1.0))
        };
        for _ in 0..samples {
            for _ in 0..steps_per_sample {
                let k1 = deriv(t, &psi)?;
                let k2 = deriv(t + h / 2.0, &(&psi + &k1 * C64::new(h / 2.0, 0.0)))?;
                let k3 = deriv(t + h / 2.0, &(&psi + &k2 * C64::new(h / 2.0, 0.0)))?;
                let k4 = deriv(t + h, &(&psi + &k3 * C64::new(h, 0.0)))?;
                psi += (k1 + k2 * C64::new(2.0, 0.0) + k3 * C64::new(2.0, 0.0) + k4) * C64::new(h / 6.0, 0.0);
                t += h;
            }
            let s = StateVector::from_parts_unchecked(psi.iter().copied().collect(), order.clone());
            traj.record(t * params.omega_rabi, populations(&s));
        }
    }
    traj.final_state = StateVector::normalized(psi.iter().copied().collect(), order)?;
    Ok(traj)
}

/// Initial states of the blockade experiment on the `ABA` chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockadeInitial {
    Ggg,
    Gge,
    GgPlus,
}

impl BlockadeInitial {
    pub const ALL: [BlockadeInitial; 3] = [BlockadeInitial::Ggg, BlockadeInitial::Gge, BlockadeInitial::GgPlus];

    pub fn label(self) -> &'static str {
        match self {
            BlockadeInitial::Ggg => "ggg",
            BlockadeInitial::Gge => "gge",
            BlockadeInitial::GgPlus => "gg_plus",
        }
    }

    pub fn state(self) -> Result<StateVector> {
        let g = [ZERO, ONE];
        let last = match self {
            BlockadeInitial::Ggg => g,
            BlockadeInitial::Gge => [ONE, ZERO],
            BlockadeInitial::GgPlus => [ONE, ONE],
        };
        StateVector::product(logical_order(3), &[g, g, last])
    }
}

pub fn blockade_layout() -> Result<LadderLayout> {
    LadderLayout::single_row(&[Species::A, Species::B, Species::A], &[])
}

/// Ideal blockade-limit outcome of the `B` π pulse.
pub fn blockade_target(initial: BlockadeInitial) -> Result<StateVector> {
    let mi = C64::new(0.0, -1.0);
    let amps = |e_g: C64, g_e: C64, e_e: C64| {
        // order (A1, B, A2); A1 stays in g
        let mut v = vec![ZERO; 8];
        v[0b101] = e_g;
        v[0b110] = g_e;
        v[0b100] = e_e;
        v
    };
    let v = match initial {
        BlockadeInitial::Ggg => amps(mi, ZERO, ZERO),
        BlockadeInitial::Gge => amps(ZERO, ONE, ZERO),
        BlockadeInitial::GgPlus => amps(mi, ONE, ZERO),
    };
    StateVector::normalized(v, logical_order(3))
}

/// π pulse on the middle `B` qubit of an `ABA` chain at blockade ratio `eta`.
pub fn blockade_experiment(initial: BlockadeInitial, eta: f64, sample_points: usize) -> Result<Trajectory> {
    if !(eta >= 1.0) {
        return Err(Error::InvalidParameter(format!("blockade ratio {eta} must be at least 1")));
    }
    let layout = blockade_layout()?;
    let params = DeviceParams::from_eta(eta)?;
    let schedule = PulseSchedule::new(vec![PulseSegment::single(Species::B, 0.0, PI)]);
    run(&schedule, &initial.state()?, &layout, &params, Backend::RwaExact, sample_points)
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterfaceMotion {
    pub before: StateVector,
    /// State after the first `Π_A` block of the shift.
    pub mid: StateVector,
    pub after: StateVector,
    pub target: StateVector,
    pub fidelity: f64,
    /// Von Neumann entropy (bits) of qubit `i = 3` in the mid state.
    pub mid_entropy_bits: f64,
    pub trajectory: Trajectory,
}

/// The logical state used by the interface-motion experiment.
pub fn default_motion_logical() -> Result<StateVector> {
    bloch_state(2.0 * PI / 3.0, PI / 5.0)
}

pub fn motion_layout() -> Result<LadderLayout> {
    LadderLayout::caba_row(6)
}

/// One shift of a logical qubit from `i = 3` to `i = 4` on a 6-qubit row.
pub fn interface_motion_experiment(eta: f64, backend: Backend) -> Result<InterfaceMotion> {
    interface_motion_with(eta, backend, &default_motion_logical()?, 50)
}

pub fn interface_motion_with(eta: f64, backend: Backend, logical: &StateVector, sample_points: usize) -> Result<InterfaceMotion> {
    let layout = motion_layout()?;
    let params = DeviceParams::from_eta(eta)?;
    let before = expand_well_formed(&WellFormedState::new(3, logical.clone()), &layout)?;
    let target = expand_well_formed(&WellFormedState::new(4, logical.clone()), &layout)?;
    let shift = shift_sequence(Species::B);
    let first_block = PulseSchedule::new(shift.segments()[..4].to_vec());
    let mid = run(&first_block, &before, &layout, &params, backend, 1)?.final_state;
    let trajectory = run(&shift, &before, &layout, &params, backend, sample_points)?;
    let after = trajectory.final_state.clone();
    Ok(InterfaceMotion {
        fidelity: fidelity(&after, &target)?,
        mid_entropy_bits: entanglement_entropy(&mid, &[QubitId(2)])?,
        before,
        mid,
        after,
        target,
        trajectory,
    })
}

/// Von Neumann entropy in bits of the reduced state of `qs`.
pub fn entanglement_entropy(state: &StateVector, qs: &[QubitId]) -> Result<f64> {
    let rho = state.reduced_density_matrix(qs)?;
    let eig = nalgebra::SymmetricEigen::new(rho);
    Ok(eig
        .eigenvalues
        .iter()
        .filter(|&&p| p > 1e-15)
        .map(|&p| -p * p.log2())
        .sum())
}

/// Uniform point on the Bloch sphere as a one-qubit state.
pub fn haar_qubit(rng: &mut impl Rng) -> Result<StateVector> {
    let u: f64 = rng.gen();
    let v: f64 = rng.gen();
    let theta = (1.0 - 2.0 * u).clamp(-1.0, 1.0).acos();
    bloch_state(theta, 2.0 * PI * v)
}

pub fn haar_samples(n: usize, seed: u64) -> Result<Vec<StateVector>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| haar_qubit(&mut rng)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub eta: f64,
    pub mean_fidelity: f64,
    pub n: usize,
}

pub fn hadamard_axis() -> [f64; 3] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [s, 0.0, s]
}

/// Compiled Hadamard on the crossed `B` qubit of the 5-qubit row.
pub fn hadamard_schedule() -> Result<PulseSchedule> {
    single_qubit_gate_sequence(PI, hadamard_axis(), Species::B)
}

/// Mean fidelity of the compiled Hadamard against the ideal gate for each
/// blockade ratio, with the same Haar-random inputs at every ratio.
pub fn hadamard_fidelity_sweep(eta_values: &[f64], n_samples: usize, rng_seed: u64) -> Result<Vec<SweepPoint>> {
    hadamard_fidelity_sweep_with(Backend::RwaExact, eta_values, n_samples, rng_seed)
}

pub fn hadamard_fidelity_sweep_with(
    backend: Backend,
    eta_values: &[f64],
    n_samples: usize,
    rng_seed: u64,
) -> Result<Vec<SweepPoint>> {
    if n_samples == 0 {
        return Err(Error::InvalidParameter("the sweep needs at least one sample".into()));
    }
    if let Some(eta) = eta_values.iter().find(|e| !(**e > 0.0)) {
        return Err(Error::InvalidParameter(format!("blockade ratio {eta} must be positive")));
    }
    let layout = build_ladder(1)?;
    let schedule = hadamard_schedule()?;
    let h = SingleQubitUnitary::hadamard();
    let cases: Vec<(StateVector, StateVector)> = haar_samples(n_samples, rng_seed)?
        .into_iter()
        .map(|psi| {
            let mut ideal = psi.clone();
            ideal.apply_single_mut(0, &h);
            Ok((
                expand_well_formed(&WellFormedState::new(3, psi), &layout)?,
                expand_well_formed(&WellFormedState::new(3, ideal), &layout)?,
            ))
        })
        .collect::<Result<_>>()?;
    eta_values
        .par_iter()
        .map(|&eta| {
            let params = DeviceParams::from_eta(eta)?;
            let total = match backend {
                Backend::RwaExact => {
                    let u = schedule_unitary(&schedule, &layout, &params)?;
                    cases.iter().try_fold(0.0, |acc, (input, target)| -> Result<f64> {
                        let out = &u * DVector::from_column_slice(input.amplitudes());
                        let out = StateVector::from_parts_unchecked(out.iter().copied().collect(), layout.qubit_ids());
                        Ok(acc + fidelity(&out, target)?)
                    })?
                }
                other => cases.iter().try_fold(0.0, |acc, (input, target)| -> Result<f64> {
                    let out = run(&schedule, input, &layout, &params, other, 1)?.final_state;
                    Ok(acc + fidelity(&out, target)?)
                })?,
            };
            Ok(SweepPoint {
                eta,
                mean_fidelity: total / n_samples as f64,
                n: n_samples,
            })
        })
        .collect()
}

pub fn sweep_to_json(points: &[SweepPoint]) -> Result<String> {
    Ok(serde_json::to_string_pretty(points)?)
}

/// Result of checking a compiled circuit in the effective model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompileReport {
    pub n_logical: usize,
    pub n_segments: usize,
    pub total_duration: f64,
    pub readout_column: usize,
    /// Fidelity of the effective-model output with the ideal circuit output
    /// held at the readout column.
    pub fidelity: f64,
    pub stages: Vec<Stage>,
}

/// Runs a compiled circuit from the all-ground register in the effective
/// model and compares it with the dense logical oracle.
pub fn verify_compiled(circuit: &LogicalCircuit, layout: &LadderLayout, compiled: &CompiledCircuit) -> Result<CompileReport> {
    let ground = SparseState::basis(layout.qubit_ids(), &[])?;
    let out = run_effective_sparse(&compiled.schedule, &ground, layout)?;
    let ideal = WellFormedState::new(compiled.readout_column, circuit.ideal_state()?).expand_sparse(layout)?;
    Ok(CompileReport {
        n_logical: circuit.n,
        n_segments: compiled.schedule.len(),
        total_duration: compiled.schedule.total_duration(),
        readout_column: compiled.readout_column,
        fidelity: out.fidelity(&ideal)?,
        stages: compiled.stages.clone(),
    })
}

/// Effective-model axis of a drive phase, re-exported for examples.
pub fn drive_axis(phase: f64) -> [f64; 3] {
    phase_axis(phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::pi_sequence;
    use crate::effective::Subset;

    #[test]
    fn empty_schedule_returns_initial() {
        let layout = build_ladder(1).unwrap();
        let initial = StateVector::ground(layout.qubit_ids()).unwrap();
        let params = DeviceParams::from_eta(20.0).unwrap();
        for backend in [Backend::Effective, Backend::RwaExact] {
            let traj = run(&PulseSchedule::default(), &initial, &layout, &params, backend, 10).unwrap();
            assert_eq!(traj.len(), 1);
            assert_eq!(traj.final_state, initial);
        }
    }

    #[test]
    fn pi_on_isolated_b() {
        let layout = LadderLayout::single_row(&[Species::B], &[]).unwrap();
        let params = DeviceParams::from_eta(20.0).unwrap();
        let initial = StateVector::ground(layout.qubit_ids()).unwrap();
        let schedule = pi_sequence(Species::B, Subset::Both).unwrap();
        let traj = run(&schedule, &initial, &layout, &params, Backend::RwaExact, 5).unwrap();
        assert!((traj.final_populations()[0] - 1.0).abs() < 1e-9);
        assert_eq!(traj.len(), 1 + 4 * 5);
    }

    #[test]
    fn lab_frame_rejects_large_layouts() {
        let layout = build_ladder(1).unwrap();
        let params = DeviceParams::from_eta(20.0).unwrap();
        let initial = StateVector::ground(layout.qubit_ids()).unwrap();
        let schedule = PulseSchedule::new(vec![PulseSegment::single(Species::B, 0.0, 1.0)]);
        assert!(matches!(
            run(&schedule, &initial, &layout, &params, Backend::LabFrame, 1),
            Err(Error::Backend(_))
        ));
    }

    #[test]
    fn invalid_schedule_is_rejected() {
        let layout = build_ladder(1).unwrap();
        let params = DeviceParams::from_eta(20.0).unwrap();
        let initial = StateVector::ground(layout.qubit_ids()).unwrap();
        let mut seg = PulseSegment::single(Species::A, 0.0, 1.0);
        seg.species.push(Species::C);
        let schedule = PulseSchedule::new(vec![seg]);
        assert!(matches!(
            run(&schedule, &initial, &layout, &params, Backend::Effective, 1),
            Err(Error::Schedule(_))
        ));
    }

    #[test]
    fn csv_format() {
        let traj = blockade_experiment(BlockadeInitial::Ggg, 20.0, 50).unwrap();
        let csv = traj.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "t,P_e_q0,P_e_q1,P_e_q2");
        assert_eq!(lines.count(), 51);
    }

    #[test]
    fn backend_names_parse() {
        for b in [Backend::Effective, Backend::RwaExact, Backend::LabFrame] {
            assert_eq!(b.to_string().parse::<Backend>().unwrap(), b);
        }
        assert!("bogus".parse::<Backend>().is_err());
    }
}
