//! Lab-frame and rotating-frame Hamiltonians of the driven ladder (ħ = 1).
//!
//! Frequencies are angular. The usual unit choice is a nominal Rabi frequency
//! of one, so that the ZZ strength equals the blockade ratio.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{LadderLayout, QubitId, Species};
use crate::quantum::{QubitHamiltonian, C64, I};

/// Relative tolerance on the drive frequency when checking the rotating frame.
const FRAME_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeviceParams {
    #[serde(rename = "omega_A")]
    pub omega_a: f64,
    #[serde(rename = "omega_B")]
    pub omega_b: f64,
    #[serde(rename = "omega_C")]
    pub omega_c: f64,
    pub zeta: f64,
    pub omega_rabi: f64,
}

impl DeviceParams {
    pub fn new(omega_a: f64, omega_b: f64, omega_c: f64, zeta: f64, omega_rabi: f64) -> Result<Self> {
        let p = Self {
            omega_a,
            omega_b,
            omega_c,
            zeta,
            omega_rabi,
        };
        p.validate()?;
        Ok(p)
    }

    /// Unit Rabi frequency, `ζ = η`, and qubit frequencies far above both.
    pub fn from_eta(eta: f64) -> Result<Self> {
        Self::new(500.0, 600.0, 700.0, eta, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.zeta == 0.0 || !self.zeta.is_finite() {
            return Err(Error::InvalidParameter("zeta must be finite and nonzero".into()));
        }
        if !(self.omega_rabi > 0.0) || !self.omega_rabi.is_finite() {
            return Err(Error::InvalidParameter("omega_rabi must be positive".into()));
        }
        Ok(())
    }

    pub fn omega(&self, species: Species) -> f64 {
        match species {
            Species::A => self.omega_a,
            Species::B => self.omega_b,
            Species::C => self.omega_c,
        }
    }

    /// Drive frequency that makes the rotating frame time independent.
    pub fn resonant_drive_frequency(&self, species: Species) -> f64 {
        self.omega(species) - 2.0 * self.zeta
    }
}

/// `η = |ζ / Ω|`.
pub fn blockade_ratio(params: &DeviceParams) -> Result<f64> {
    if params.omega_rabi == 0.0 {
        return Err(Error::DivisionByZero("omega_rabi"));
    }
    Ok((params.zeta / params.omega_rabi).abs())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SpeciesDrive {
    pub active: bool,
    pub rabi: f64,
    pub phase: f64,
    pub frequency: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DriveConfig {
    pub drives: BTreeMap<Species, SpeciesDrive>,
}

impl DriveConfig {
    pub fn off() -> Self {
        Self::default()
    }

    /// Activates `species` at its resonant drive frequency.
    pub fn with_resonant(mut self, params: &DeviceParams, species: Species, rabi: f64, phase: f64) -> Self {
        self.drives.insert(
            species,
            SpeciesDrive {
                active: true,
                rabi,
                phase,
                frequency: params.resonant_drive_frequency(species),
            },
        );
        self
    }

    pub fn with_drive(mut self, species: Species, drive: SpeciesDrive) -> Self {
        self.drives.insert(species, drive);
        self
    }

    pub fn drive(&self, species: Species) -> Option<&SpeciesDrive> {
        self.drives.get(&species).filter(|d| d.active)
    }

    pub fn active_species(&self) -> Vec<Species> {
        Species::ALL.into_iter().filter(|&s| self.drive(s).is_some()).collect()
    }

    /// `A` may never be driven together with `B` or `C`.
    pub fn check_concurrency(&self) -> Result<()> {
        let active = self.active_species();
        if active.contains(&Species::A) && active.len() > 1 {
            return Err(Error::Schedule(format!("A driven together with {active:?}")));
        }
        Ok(())
    }
}

/// Level spacing after fabrication detuning: `ω_χ + (d − 2) ζ` for a qubit
/// with `d` ZZ partners, i.e. `ω_χ − ζ` (circle), `ω_χ` and `ω_χ + ζ`
/// (triangle) on the ladder.
pub fn local_frequency(layout: &LadderLayout, params: &DeviceParams, q: QubitId) -> Result<f64> {
    let qubit = layout.qubit(q)?;
    let degree = layout.neighbors(q)?.len() as f64;
    Ok(params.omega(qubit.species) + (degree - 2.0) * params.zeta)
}

fn rabi_of(layout: &LadderLayout, q: QubitId, drive: &SpeciesDrive) -> Result<f64> {
    let crossed = layout.qubit(q)?.role.crossed;
    Ok(if crossed { 2.0 * drive.rabi } else { drive.rabi })
}

/// Bit offset of `q` in a register holding every layout qubit in order.
fn layout_bit(layout: &LadderLayout, q: QubitId) -> usize {
    layout.qubit_count() - 1 - q.0
}

fn check_register(layout: &LadderLayout) -> Result<usize> {
    let m = layout.qubit_count();
    if m > crate::quantum::DENSE_MAX_QUBITS {
        return Err(Error::InvalidSize(format!("{m} qubits are too many for a state-vector Hamiltonian")));
    }
    Ok(m)
}

/// Diagonal of `Σ_⟨ij⟩ 2ζ |ee⟩⟨ee|` over the full layout register.
pub fn blockade_diagonal(layout: &LadderLayout, params: &DeviceParams) -> Result<Vec<f64>> {
    let m = check_register(layout)?;
    let masks: Vec<usize> = layout
        .zz_edges()
        .iter()
        .map(|&(a, b)| (1 << layout_bit(layout, a)) | (1 << layout_bit(layout, b)))
        .collect();
    Ok((0..1usize << m)
        .map(|i| {
            let pairs = masks.iter().filter(|&&mask| i & mask == 0).count();
            2.0 * params.zeta * pairs as f64
        })
        .collect())
}

/// Time-independent RWA Hamiltonian in the frame rotating at each species'
/// drive frequency `ω_χ − 2ζ`.
pub fn rotating_frame_hamiltonian(
    layout: &LadderLayout,
    params: &DeviceParams,
    drives: &DriveConfig,
) -> Result<QubitHamiltonian> {
    params.validate()?;
    drives.check_concurrency()?;
    let m = check_register(layout)?;
    let mut transitions = Vec::new();
    for species in drives.active_species() {
        let drive = drives.drive(species).expect("active drive");
        let expected = params.resonant_drive_frequency(species);
        let scale = expected.abs().max(params.zeta.abs()).max(1.0);
        if (drive.frequency - expected).abs() > FRAME_TOLERANCE * scale {
            return Err(Error::FrameMismatch {
                species,
                expected,
                actual: drive.frequency,
            });
        }
        for q in layout.qubits().iter().filter(|q| q.species == species) {
            let rabi = rabi_of(layout, q.id, drive)?;
            // ⟨g|H|e⟩ = (Ω/2) e^{iφ}
            transitions.push((layout_bit(layout, q.id), C64::from_polar(0.5 * rabi, drive.phase)));
        }
    }
    QubitHamiltonian::new(m, blockade_diagonal(layout, params)?, transitions)
}

/// Lab-frame Hamiltonian at time `t`:
/// `Σ ω_i/2 σz + Σ_⟨ij⟩ ζ/2 σzσz + Σ Ω_i sin(ω_d t + φ) σy`.
pub fn lab_hamiltonian(
    layout: &LadderLayout,
    params: &DeviceParams,
    drives: &DriveConfig,
    t: f64,
) -> Result<QubitHamiltonian> {
    params.validate()?;
    drives.check_concurrency()?;
    let m = check_register(layout)?;
    let freqs: Vec<(usize, f64)> = layout
        .qubits()
        .iter()
        .map(|q| Ok((layout_bit(layout, q.id), local_frequency(layout, params, q.id)?)))
        .collect::<Result<_>>()?;
    let edges: Vec<(usize, usize)> = layout
        .zz_edges()
        .iter()
        .map(|&(a, b)| (layout_bit(layout, a), layout_bit(layout, b)))
        .collect();
    let sz = |i: usize, bit: usize| if (i >> bit) & 1 == 0 { 1.0 } else { -1.0 };
    let diagonal = (0..1usize << m)
        .map(|i| {
            let local: f64 = freqs.iter().map(|&(b, w)| 0.5 * w * sz(i, b)).sum();
            let zz: f64 = edges.iter().map(|&(a, b)| 0.5 * params.zeta * sz(i, a) * sz(i, b)).sum();
            local + zz
        })
        .collect();
    let mut transitions = Vec::new();
    for species in drives.active_species() {
        let drive = drives.drive(species).expect("active drive");
        let envelope = (drive.frequency * t + drive.phase).sin();
        for q in layout.qubits().iter().filter(|q| q.species == species) {
            let rabi = rabi_of(layout, q.id, drive)?;
            // σy = i|g⟩⟨e| − i|e⟩⟨g|
            transitions.push((layout_bit(layout, q.id), I * (rabi * envelope)));
        }
    }
    QubitHamiltonian::new(m, diagonal, transitions)
}

/// Bare energy `Σ ω_i/2 σz + Σ ζ/2 σzσz` of a basis state of an open chain.
/// End qubits carry the circle detuning, interior ones are nominal.
pub fn chain_energy(params: &DeviceParams, species: &[Species], excited: &[bool]) -> Result<f64> {
    if species.len() != excited.len() || species.is_empty() {
        return Err(Error::ShapeMismatch("chain labels must match the species list".into()));
    }
    let layout = LadderLayout::single_row(species, &[])?;
    let sz = |e: bool| if e { 1.0 } else { -1.0 };
    let mut energy = 0.0;
    for (k, &e) in excited.iter().enumerate() {
        energy += 0.5 * local_frequency(&layout, params, QubitId(k))? * sz(e);
    }
    for w in excited.windows(2) {
        energy += 0.5 * params.zeta * sz(w[0]) * sz(w[1]);
    }
    Ok(energy)
}

fn label(excited: &[bool]) -> String {
    excited.iter().map(|&e| if e { 'e' } else { 'g' }).collect()
}

/// All `2^M` bare energies of an open chain, ascending, with `e/g` labels.
pub fn chain_spectrum(params: &DeviceParams, species: &[Species]) -> Result<Vec<(String, f64)>> {
    let m = species.len();
    let mut levels = (0..1usize << m)
        .map(|i| {
            let excited: Vec<bool> = (0..m).map(|k| (i >> (m - 1 - k)) & 1 == 1).collect();
            Ok((label(&excited), chain_energy(params, species, &excited)?))
        })
        .collect::<Result<Vec<_>>>()?;
    levels.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(levels)
}

/// Spectrum of the `ABA` triplet.
pub fn triplet_spectrum(params: &DeviceParams) -> Result<Vec<(String, f64)>> {
    chain_spectrum(params, &[Species::A, Species::B, Species::A])
}

/// `E(to) − E(from)` for two labelled basis states of a chain, e.g.
/// `("ggg", "geg")`.
pub fn chain_gap(params: &DeviceParams, species: &[Species], from: &str, to: &str) -> Result<f64> {
    let parse = |s: &str| -> Result<Vec<bool>> {
        s.chars()
            .map(|c| match c {
                'e' => Ok(true),
                'g' => Ok(false),
                other => Err(Error::InvalidParameter(format!("bad level label {other:?}"))),
            })
            .collect()
    };
    Ok(chain_energy(params, species, &parse(to)?)? - chain_energy(params, species, &parse(from)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{HermitianOperator, ZERO};
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;

    fn params() -> DeviceParams {
        DeviceParams::new(40.0, 50.0, 60.0, 3.0, 1.0).unwrap()
    }

    #[test]
    fn blockade_ratio_examples() {
        let p = |z, o| DeviceParams {
            omega_a: 1.0,
            omega_b: 1.0,
            omega_c: 1.0,
            zeta: z,
            omega_rabi: o,
        };
        assert_abs_diff_eq!(blockade_ratio(&p(100.0, 5.0)).unwrap(), 20.0);
        assert_abs_diff_eq!(blockade_ratio(&p(5.0, 1.0)).unwrap(), 5.0);
        assert_abs_diff_eq!(blockade_ratio(&p(-3.0, 3.0)).unwrap(), 1.0);
        assert!(matches!(blockade_ratio(&p(1.0, 0.0)), Err(Error::DivisionByZero(_))));
        assert!(DeviceParams::new(1.0, 1.0, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn local_frequencies_follow_degree() {
        let layout = crate::lattice::build_ladder(2).unwrap();
        let p = params();
        for q in layout.qubits() {
            let f = local_frequency(&layout, &p, q.id).unwrap();
            let w = p.omega(q.species);
            let expected = match layout.neighbors(q.id).unwrap().len() {
                1 => w - p.zeta,
                2 => w,
                _ => w + p.zeta,
            };
            assert_abs_diff_eq!(f, expected);
        }
    }

    #[test]
    fn drive_free_rotating_frame_is_pair_counting() {
        let layout = crate::lattice::build_ladder(1).unwrap();
        let h = rotating_frame_hamiltonian(&layout, &params(), &DriveConfig::off()).unwrap();
        assert!(h.is_diagonal());
        for (i, &d) in h.diagonal().iter().enumerate() {
            let pairs = crate::quantum::count_excited_pairs(i as u128, &layout).unwrap();
            assert_abs_diff_eq!(d, 2.0 * 3.0 * pairs as f64);
        }
    }

    #[test]
    fn isolated_qubit_drive_is_half_sigma_x() {
        let layout = LadderLayout::single_row(&[Species::B], &[]).unwrap();
        let p = params();
        let drives = DriveConfig::off().with_resonant(&p, Species::B, 1.0, 0.0);
        let h = rotating_frame_hamiltonian(&layout, &p, &drives).unwrap().to_dense();
        let half = C64::new(0.5, 0.0);
        assert_eq!(h, DMatrix::from_row_slice(2, 2, &[ZERO, half, half, ZERO]));
    }

    #[test]
    fn frame_mismatch_and_concurrency() {
        let layout = crate::lattice::build_ladder(1).unwrap();
        let p = params();
        let wrong = DriveConfig::off().with_drive(
            Species::B,
            SpeciesDrive {
                active: true,
                rabi: 1.0,
                phase: 0.0,
                frequency: p.omega_b,
            },
        );
        assert!(matches!(
            rotating_frame_hamiltonian(&layout, &p, &wrong),
            Err(Error::FrameMismatch { .. })
        ));
        let both = DriveConfig::off()
            .with_resonant(&p, Species::A, 1.0, 0.0)
            .with_resonant(&p, Species::B, 1.0, 0.0);
        assert!(matches!(lab_hamiltonian(&layout, &p, &both, 0.0), Err(Error::Schedule(_))));
        assert!(matches!(rotating_frame_hamiltonian(&layout, &p, &both), Err(Error::Schedule(_))));
    }

    #[test]
    fn lab_frame_single_qubit() {
        let layout = LadderLayout::single_row(&[Species::C], &[]).unwrap();
        let p = params();
        let h = lab_hamiltonian(&layout, &p, &DriveConfig::off(), 0.3).unwrap().to_dense();
        let w = local_frequency(&layout, &p, QubitId(0)).unwrap();
        assert_abs_diff_eq!(h[(0, 0)].re, w / 2.0);
        assert_abs_diff_eq!(h[(1, 1)].re, -w / 2.0);
        let phase = 0.4;
        let drives = DriveConfig::off().with_resonant(&p, Species::C, 1.0, phase);
        let t = -phase / p.resonant_drive_frequency(Species::C);
        let h = lab_hamiltonian(&layout, &p, &drives, t).unwrap().to_dense();
        assert_abs_diff_eq!(h[(0, 1)].norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn triplet_gap_and_degeneracy() {
        let p = params();
        let aba = [Species::A, Species::B, Species::A];
        assert_abs_diff_eq!(chain_gap(&p, &aba, "ggg", "geg").unwrap(), p.omega_b - 2.0 * p.zeta, epsilon = 1e-12);
        let spectrum = triplet_spectrum(&p).unwrap();
        assert_eq!(spectrum.len(), 8);
        assert!(spectrum.windows(2).all(|w| w[0].1 <= w[1].1));
        let energy = |l: &str| spectrum.iter().find(|(s, _)| s == l).unwrap().1;
        assert_abs_diff_eq!(energy("egg"), energy("gge"), epsilon = 1e-12);

        let mut free = p;
        free.zeta = 1e-300;
        assert_abs_diff_eq!(chain_gap(&free, &aba, "ggg", "geg").unwrap(), p.omega_b, epsilon = 1e-12);

        let abaca = [Species::A, Species::B, Species::A, Species::C, Species::A];
        let gap = chain_gap(&p, &abaca, "ggggg", "gegeg").unwrap();
        assert_abs_diff_eq!(gap, (p.omega_b - 2.0 * p.zeta) + (p.omega_c - 2.0 * p.zeta), epsilon = 1e-12);
    }

    #[test]
    fn hamiltonians_are_hermitian() {
        let layout = crate::lattice::build_ladder(1).unwrap();
        let p = params();
        let drives = DriveConfig::off().with_resonant(&p, Species::B, 1.0, 0.7).with_resonant(&p, Species::C, 1.0, -0.3);
        let h = rotating_frame_hamiltonian(&layout, &p, &drives).unwrap().to_dense();
        assert!((&h - h.adjoint()).norm() < 1e-12);
        let h = lab_hamiltonian(&layout, &p, &drives, 1.7).unwrap().to_dense();
        assert!((&h - h.adjoint()).norm() < 1e-12);
    }
}
