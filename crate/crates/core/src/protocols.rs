//! Pulse tables, protocol sequences, well-formed encodings and the logical
//! circuit compiler.
//!
//! A segment drives one or more species with a constant phase for a fixed
//! duration (in units of the inverse nominal Rabi frequency). In the blockade
//! limit a segment on species `χ` with phase `φ`, Rabi scale `s` and duration
//! `τ` is the control rotation `W_χ(sτ, n; 2sτ, n)` with `n = (cos φ, sin φ, 0)`.
//!
//! Well-formed states use 1-based column numbers `k`, matching the encoding
//! picture: the information carrying column (ICC) sits at `k`, columns to its
//! left alternate `g, e, g, …` moving away from it, and everything to its
//! right, plus every coupler, is in `|g⟩`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::effective::{
    axis_phase, compile_crossed_rotation, euler_factors, phase_axis, wrap_phase, ControlRotation, Subset, X_AXIS,
};
use crate::error::{Error, Result};
use crate::hamiltonian::{DeviceParams, DriveConfig};
use crate::lattice::{LadderLayout, QubitId, Species};
use crate::quantum::{check_unit_axis, rotation_matrix, StateVector, C64, ONE};
use crate::sparse::SparseState;

/// `(phase, duration)` rows of the π pulse on every qubit of a species.
pub const PI_ALL_TABLE: [(f64, f64); 4] = [(0.0, 3.0 * FRAC_PI_4), (FRAC_PI_2, PI), (PI, FRAC_PI_4), (-FRAC_PI_2, PI)];
/// `(phase, duration)` rows of the π pulse on regular `A` qubits only.
pub const PI_A_REGULAR_TABLE: [(f64, f64); 4] = [(0.0, FRAC_PI_2), (FRAC_PI_2, PI), (PI, FRAC_PI_2), (-FRAC_PI_2, PI)];
/// `(phase, duration)` rows of the `A` sequence behind the CZ gate.
pub const CZ_TABLE: [(f64, f64); 5] = [
    (FRAC_PI_2, FRAC_PI_4),
    (0.0, PI),
    (FRAC_PI_2, FRAC_PI_2),
    (0.0, PI),
    (FRAC_PI_2, FRAC_PI_4),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseSegment {
    pub species: Vec<Species>,
    pub phase: BTreeMap<Species, f64>,
    pub rabi_scale: BTreeMap<Species, f64>,
    pub duration: f64,
}

impl PulseSegment {
    pub fn single(species: Species, phase: f64, duration: f64) -> Self {
        Self {
            species: vec![species],
            phase: BTreeMap::from([(species, phase)]),
            rabi_scale: BTreeMap::from([(species, 1.0)]),
            duration,
        }
    }

    /// The physical pulse realizing a native rotation, or `None` for a zero
    /// angle. Negative angles flip the drive phase by π.
    pub fn from_rotation(r: &ControlRotation) -> Result<Option<Self>> {
        if !r.is_native() {
            return Err(Error::Unsupported(format!("{r:?} is not realized by a single pulse")));
        }
        r.validate()?;
        if r.axis_regular[2].abs() > 1e-12 {
            return Err(Error::UnsupportedAxis(r.axis_regular[2]));
        }
        let theta = r.theta_regular;
        if theta == 0.0 {
            return Ok(None);
        }
        let mut phase = axis_phase(r.axis_regular);
        if theta < 0.0 {
            phase += PI;
        }
        Ok(Some(Self::single(r.species, wrap_phase(phase), theta.abs())))
    }

    pub fn rabi_scale_of(&self, species: Species) -> f64 {
        self.rabi_scale.get(&species).copied().unwrap_or(1.0)
    }

    pub fn phase_of(&self, species: Species) -> f64 {
        self.phase.get(&species).copied().unwrap_or(0.0)
    }

    /// Blockade-limit action of the segment, one rotation per species.
    pub fn rotations(&self) -> Vec<ControlRotation> {
        self.species
            .iter()
            .map(|&s| ControlRotation::native(s, self.rabi_scale_of(s) * self.duration, phase_axis(self.phase_of(s))))
            .collect()
    }

    /// Resonant drives for this segment.
    pub fn drive_config(&self, params: &DeviceParams) -> DriveConfig {
        self.species.iter().fold(DriveConfig::off(), |cfg, &s| {
            cfg.with_resonant(params, s, self.rabi_scale_of(s) * params.omega_rabi, self.phase_of(s))
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PulseSchedule {
    segments: Vec<PulseSegment>,
}

impl PulseSchedule {
    pub fn new(segments: Vec<PulseSegment>) -> Self {
        Self { segments }
    }

    pub fn from_table(species: Species, table: &[(f64, f64)]) -> Self {
        Self::new(table.iter().map(|&(phi, tau)| PulseSegment::single(species, phi, tau)).collect())
    }

    /// Physical pulses for a list of native rotations, in time order.
    pub fn from_rotations(rotations: &[ControlRotation]) -> Result<Self> {
        let mut out = Self::default();
        for r in rotations {
            if let Some(seg) = PulseSegment::from_rotation(r)? {
                out.segments.push(seg);
            }
        }
        Ok(out)
    }

    pub fn segments(&self) -> &[PulseSegment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn push(&mut self, segment: PulseSegment) {
        self.segments.push(segment);
    }

    pub fn append(&mut self, other: &PulseSchedule) {
        self.segments.extend_from_slice(&other.segments);
    }

    pub fn then(mut self, other: &PulseSchedule) -> Self {
        self.append(other);
        self
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a PulseSchedule>) -> Self {
        parts.into_iter().fold(Self::default(), |acc, p| acc.then(p))
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleViolation {
    pub segment: usize,
    pub message: String,
}

/// Lists every segment that breaks the drive rules; empty means valid.
pub fn validate_schedule(s: &PulseSchedule) -> Vec<ScheduleViolation> {
    let mut out = Vec::new();
    let mut flag = |segment: usize, message: String| out.push(ScheduleViolation { segment, message });
    for (i, seg) in s.segments().iter().enumerate() {
        if seg.species.is_empty() {
            flag(i, "no species driven".into());
        }
        let mut sorted = seg.species.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != seg.species.len() {
            flag(i, "species listed twice".into());
        }
        if seg.species.contains(&Species::A) && seg.species.len() > 1 {
            flag(i, format!("A driven together with {:?}", seg.species));
        }
        if !(seg.duration > 0.0) || !seg.duration.is_finite() {
            flag(i, format!("duration {} is not positive and finite", seg.duration));
        }
        for &sp in &seg.species {
            let scale = seg.rabi_scale_of(sp);
            if !(scale > 0.0) || !scale.is_finite() {
                flag(i, format!("rabi scale {scale} for {sp} is not positive"));
            }
            if !seg.phase_of(sp).is_finite() {
                flag(i, format!("phase for {sp} is not finite"));
            }
        }
    }
    out
}

/// π pulse on the chosen subset of a species: every qubit with the 4-row
/// table, regular `A` only with the `A` table, crossed only by compilation.
pub fn pi_sequence(species: Species, subset: Subset) -> Result<PulseSchedule> {
    match (species, subset) {
        (_, Subset::Both) => Ok(PulseSchedule::from_table(species, &PI_ALL_TABLE)),
        (Species::A, Subset::Regular) => Ok(PulseSchedule::from_table(species, &PI_A_REGULAR_TABLE)),
        (_, Subset::Crossed) => crossed_pi_sequence(species),
        (_, Subset::Regular) => Err(Error::Unsupported(format!(
            "no regular-only π table for species {species}"
        ))),
    }
}

/// π pulse on the crossed qubits of `species` only.
pub fn crossed_pi_sequence(species: Species) -> Result<PulseSchedule> {
    PulseSchedule::from_rotations(&compile_crossed_rotation(species, PI, X_AXIS)?)
}

/// The five `A` segments of the entangling gate: `2π` on crossed `A`, which
/// is `Z` on the couplers, and `R(2π) = −1` on the regular `A` branch.
pub fn cz_sequence() -> PulseSchedule {
    PulseSchedule::from_table(Species::A, &CZ_TABLE)
}

/// `Z` on every regular `A`: one `2π` pulse, which is `4π = 1` on crossed `A`.
pub fn z_tot_regular_a() -> PulseSchedule {
    PulseSchedule::new(vec![PulseSegment::single(Species::A, 0.0, 2.0 * PI)])
}

/// Moves the ICC one column to the right (or back to the left when applied to
/// the state one column further right).
pub fn shift_sequence(icc_species: Species) -> PulseSchedule {
    let pi_a = PulseSchedule::from_table(Species::A, &PI_A_REGULAR_TABLE);
    let pi_b = PulseSchedule::from_table(Species::B, &PI_ALL_TABLE);
    let pi_c = PulseSchedule::from_table(Species::C, &PI_ALL_TABLE);
    match icc_species {
        Species::A => PulseSchedule::concat([&pi_b, &pi_c, &pi_a, &pi_b, &pi_c]),
        Species::B | Species::C => PulseSchedule::concat([&pi_a, &pi_b, &pi_c, &pi_a]),
    }
}

/// From the all-ground device to the well-formed state with ICC at column 3.
pub fn init_sequence() -> Result<PulseSchedule> {
    let a = crossed_pi_sequence(Species::A)?;
    let c = crossed_pi_sequence(Species::C)?;
    Ok(PulseSchedule::concat([&a, &c, &a]))
}

/// `R(θ, axis)` on the crossed element of the ICC, which must sit on a `B`
/// or `C` column holding one. Axes with a z component
/// are composed from up to three xy-plane gates given by the XYX Euler angles.
pub fn single_qubit_gate_sequence(theta: f64, axis: [f64; 3], icc_species: Species) -> Result<PulseSchedule> {
    if icc_species == Species::A {
        return Err(Error::Unsupported("single-qubit gates need a B or C column".into()));
    }
    check_unit_axis(axis)?;
    if axis[2].abs() <= 1e-12 {
        return xy_gate(theta, axis, icc_species);
    }
    let mut out = PulseSchedule::default();
    for (angle, xy) in euler_factors(theta, axis)? {
        out.append(&xy_gate(angle, xy, icc_species)?);
    }
    Ok(out)
}

/// Variant for axes with a z component that uses two `Z_{A^r}` blocks instead
/// of one pair per Euler factor.
pub fn single_qubit_gate_sequence_tilted(theta: f64, axis: [f64; 3], icc_species: Species) -> Result<PulseSchedule> {
    if icc_species == Species::A {
        return Err(Error::Unsupported("single-qubit gates need a B or C column".into()));
    }
    check_unit_axis(axis)?;
    if axis[2].abs() <= 1e-12 {
        return xy_gate(theta, axis, icc_species);
    }
    // Tilt the axis into the xy plane with a crossed-only rotation about an
    // in-plane axis, run the xy gate, and tilt back. Crossed elements outside
    // the ICC see the tilt and its inverse only, so they are untouched.
    let horizontal = axis[0].hypot(axis[1]);
    let n = if horizontal > 1e-12 {
        [axis[0] / horizontal, axis[1] / horizontal, 0.0]
    } else {
        X_AXIS
    };
    let k = [-n[1], n[0], 0.0];
    // a positive turn about k = z × n carries z toward n
    let gamma = axis[2].atan2(horizontal);
    let tilt = PulseSchedule::from_rotations(&compile_crossed_rotation(icc_species, gamma, k)?)?;
    let untilt = PulseSchedule::from_rotations(&compile_crossed_rotation(icc_species, -gamma, k)?)?;
    Ok(PulseSchedule::concat([&tilt, &xy_gate(theta, n, icc_species)?, &untilt]))
}

fn xy_gate(theta: f64, axis: [f64; 3], species: Species) -> Result<PulseSchedule> {
    let back = [-axis[0], -axis[1], -axis[2]];
    let z = z_tot_regular_a();
    let forward = PulseSchedule::from_rotations(&compile_crossed_rotation(species, theta / 2.0, axis)?)?;
    let reverse = PulseSchedule::from_rotations(&compile_crossed_rotation(species, theta / 2.0, back)?)?;
    Ok(PulseSchedule::concat([&forward, &z, &reverse, &z]))
}

/// A logical state held by the ICC at 1-based column `icc_column`.
#[derive(Clone, Debug, PartialEq)]
pub struct WellFormedState {
    pub icc_column: usize,
    /// One qubit per row, row 0 first.
    pub logical: StateVector,
}

impl WellFormedState {
    pub fn new(icc_column: usize, logical: StateVector) -> Self {
        Self { icc_column, logical }
    }

    pub fn ground(icc_column: usize, n_rows: usize) -> Result<Self> {
        Ok(Self::new(icc_column, StateVector::ground(logical_order(n_rows))?))
    }

    fn check(&self, layout: &LadderLayout) -> Result<()> {
        let k = self.icc_column;
        if k < 3 || k > layout.n_columns() {
            return Err(Error::Encoding(format!(
                "ICC column {k} outside 3..={}",
                layout.n_columns()
            )));
        }
        if self.logical.n_qubits() != layout.n_rows() {
            return Err(Error::Encoding(format!(
                "{} logical qubits for {} rows",
                self.logical.n_qubits(),
                layout.n_rows()
            )));
        }
        Ok(())
    }

    /// Full-register index with every ICC qubit in `|g⟩`.
    fn background_index(&self, layout: &LadderLayout) -> u128 {
        let m = layout.qubit_count();
        let k = self.icc_column;
        let mut index: u128 = if m == 128 { u128::MAX } else { (1u128 << m) - 1 };
        for q in layout.qubits() {
            let c = q.column + 1;
            if !q.role.is_coupler && c < k && (k - c).is_multiple_of(2) {
                index &= !(1u128 << (m - 1 - q.id.0));
            }
        }
        index
    }

    pub fn icc_qubits(&self, layout: &LadderLayout) -> Result<Vec<QubitId>> {
        layout.column_qubits(self.icc_column - 1)
    }

    pub fn expand_sparse(&self, layout: &LadderLayout) -> Result<SparseState> {
        self.check(layout)?;
        let m = layout.qubit_count();
        let base = self.background_index(layout);
        let icc = self.icc_qubits(layout)?;
        let n = icc.len();
        let mut out = SparseState::new(layout.qubit_ids())?;
        for (l, &a) in self.logical.amplitudes().iter().enumerate() {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            let mut index = base;
            for (row, q) in icc.iter().enumerate() {
                if (l >> (n - 1 - row)) & 1 == 0 {
                    index &= !(1u128 << (m - 1 - q.0));
                }
            }
            out.add(index, a);
        }
        Ok(out)
    }
}

pub fn logical_order(n: usize) -> Vec<QubitId> {
    (0..n).map(QubitId).collect()
}

/// Dense full-ladder vector of a well-formed state.
pub fn expand_well_formed(wf: &WellFormedState, layout: &LadderLayout) -> Result<StateVector> {
    wf.expand_sparse(layout)?.to_dense()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum LogicalGate {
    Rot { row: usize, theta: f64, axis: [f64; 3] },
    Cz { row: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogicalCircuit {
    pub n: usize,
    pub gates: Vec<LogicalGate>,
}

impl LogicalCircuit {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Compilation("circuit needs at least one logical qubit".into()));
        }
        for (i, g) in self.gates.iter().enumerate() {
            match *g {
                LogicalGate::Rot { row, axis, theta } => {
                    if row >= self.n {
                        return Err(Error::Compilation(format!("gate {i}: row {row} out of range")));
                    }
                    if !theta.is_finite() {
                        return Err(Error::Compilation(format!("gate {i}: angle is not finite")));
                    }
                    check_unit_axis(axis)?;
                }
                LogicalGate::Cz { row } => {
                    if row + 1 >= self.n {
                        return Err(Error::Compilation(format!(
                            "gate {i}: CZ between rows {row} and {} needs {} rows",
                            row + 1,
                            row + 2
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Ideal logical output for the all-ground input.
    pub fn ideal_state(&self) -> Result<StateVector> {
        self.validate()?;
        let mut state = StateVector::ground(logical_order(self.n))?;
        for g in &self.gates {
            match *g {
                LogicalGate::Rot { row, theta, axis } => {
                    let bit = self.n - 1 - row;
                    state.apply_single_mut(bit, &rotation_matrix(theta, axis)?);
                }
                LogicalGate::Cz { row } => {
                    let mask = (1usize << (self.n - 1 - row)) | (1usize << (self.n - 2 - row));
                    for (i, a) in state.amplitudes_mut().iter_mut().enumerate() {
                        if i & mask == mask {
                            *a = -*a;
                        }
                    }
                }
            }
        }
        Ok(state)
    }
}

/// A labelled slice of a compiled schedule.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stage {
    pub label: String,
    pub segments: Range<usize>,
    /// 1-based ICC column once the stage is complete.
    pub icc_column: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompiledCircuit {
    pub schedule: PulseSchedule,
    pub stages: Vec<Stage>,
    pub readout_column: usize,
}

struct Builder<'a> {
    layout: &'a LadderLayout,
    schedule: PulseSchedule,
    stages: Vec<Stage>,
    icc: usize,
}

impl Builder<'_> {
    fn add(&mut self, label: String, part: &PulseSchedule) {
        let start = self.schedule.len();
        self.schedule.append(part);
        self.stages.push(Stage {
            label,
            segments: start..self.schedule.len(),
            icc_column: self.icc,
        });
    }

    fn species_at(&self, column: usize) -> Result<Species> {
        self.layout.column_species(column - 1)
    }

    fn move_to(&mut self, target: usize) -> Result<()> {
        let last = self.layout.n_columns() - 2;
        if target < 3 || target > last {
            return Err(Error::Compilation(format!(
                "ICC target column {target} outside the processing area 3..={last}"
            )));
        }
        while self.icc < target {
            let s = self.species_at(self.icc)?;
            self.icc += 1;
            self.add(format!("shift to {}", self.icc), &shift_sequence(s));
        }
        while self.icc > target {
            let s = self.species_at(self.icc - 1)?;
            self.icc -= 1;
            self.add(format!("shift to {}", self.icc), &shift_sequence(s));
        }
        Ok(())
    }
}

/// Full schedule for a circuit: initialization, ICC moves, gates and a final
/// move to the rightmost processing column, next to the readout sector.
/// A B/C shift into column k needs column k+2 as a temporary blocker, so the
/// ICC never enters the readout sector itself.
pub fn compile_logical_circuit(circuit: &LogicalCircuit, layout: &LadderLayout) -> Result<PulseSchedule> {
    Ok(compile_logical_circuit_traced(circuit, layout)?.schedule)
}

pub fn compile_logical_circuit_traced(circuit: &LogicalCircuit, layout: &LadderLayout) -> Result<CompiledCircuit> {
    circuit.validate()?;
    if circuit.n != layout.n_rows() {
        return Err(Error::Compilation(format!(
            "circuit has {} qubits, layout has {} rows",
            circuit.n,
            layout.n_rows()
        )));
    }
    let mut b = Builder {
        layout,
        schedule: PulseSchedule::default(),
        stages: Vec::new(),
        icc: 3,
    };
    b.add("init".into(), &init_sequence()?);
    for (i, g) in circuit.gates.iter().enumerate() {
        match *g {
            LogicalGate::Rot { row, theta, axis } => {
                let column = layout
                    .gate_column_for_row(row)
                    .ok_or_else(|| Error::Compilation(format!("gate {i}: row {row} has no crossed element")))?
                    + 1;
                b.move_to(column)?;
                let species = b.species_at(column)?;
                b.add(format!("rot row {row}"), &single_qubit_gate_sequence(theta, axis, species)?);
            }
            LogicalGate::Cz { row } => {
                let column = layout
                    .coupler_column_for_rows(row)
                    .ok_or_else(|| Error::Compilation(format!("gate {i}: no coupler below row {row}")))?
                    + 1;
                b.move_to(column)?;
                b.add(format!("cz rows {row},{}", row + 1), &cz_sequence().then(&z_tot_regular_a()));
            }
        }
    }
    let readout = layout.n_columns() - 2;
    b.move_to(readout)?;
    Ok(CompiledCircuit {
        schedule: b.schedule,
        stages: b.stages,
        readout_column: readout,
    })
}

/// Logical state `cos(θ/2)|e⟩ + e^{iφ} sin(θ/2)|g⟩` of a single qubit.
pub fn bloch_state(theta: f64, phi: f64) -> Result<StateVector> {
    let (s, c) = (theta / 2.0).sin_cos();
    StateVector::new(vec![ONE * c, C64::from_polar(s, phi)], logical_order(1))
}
