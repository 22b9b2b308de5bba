//! Control rotations on the five-qubit ladder: commutation, periodicity and
//! the compiled crossed-only rotation.

use std::f64::consts::PI;

use zz_ladder::effective::{apply_w, compile_crossed_rotation, z_tot, ControlRotation, Subset};
use zz_ladder::lattice::{build_ladder, Species};
use zz_ladder::quantum::{fidelity, StateVector, C64};

fn main() -> zz_ladder::Result<()> {
    let layout = build_ladder(1)?;
    let amps: Vec<C64> = (0..32).map(|i| C64::new((i as f64 * 0.7).sin(), (i as f64 * 1.3).cos())).collect();
    let psi = StateVector::normalized(amps, layout.qubit_ids())?;
    let w = |s: &StateVector, r: &ControlRotation| apply_w(s, &layout, r);

    let b = ControlRotation::native(Species::B, 1.2, [1.0, 0.0, 0.0]);
    let c = ControlRotation::native(Species::C, 0.4, [0.0, 1.0, 0.0]);
    println!("W_B W_C vs W_C W_B: fidelity {:.15}", fidelity(&w(&w(&psi, &b)?, &c)?, &w(&w(&psi, &c)?, &b)?)?);

    let full = ControlRotation::both(Species::A, 4.0 * PI, [0.0, 1.0, 0.0], 4.0 * PI, [1.0, 0.0, 0.0]);
    println!("W_A(4 pi) = 1: fidelity {:.15}", fidelity(&w(&psi, &full)?, &psi)?);
    let half = ControlRotation::both(Species::A, 2.0 * PI, [0.0, 1.0, 0.0], 2.0 * PI, [0.0, 1.0, 0.0]);
    println!("W_A(2 pi) = Z_tot: fidelity {:.15}", fidelity(&w(&psi, &half)?, &w(&psi, &z_tot(Species::A, Subset::Both))?)?);

    let pulses = compile_crossed_rotation(Species::B, 0.9, [0.6, 0.8, 0.0])?;
    let compiled = pulses.iter().try_fold(psi.clone(), |s, r| w(&s, r))?;
    let direct = w(&psi, &ControlRotation::crossed(Species::B, 0.9, [0.6, 0.8, 0.0]))?;
    println!("{} native pulses vs crossed-only target: fidelity {:.15}", pulses.len(), fidelity(&compiled, &direct)?);
    Ok(())
}
