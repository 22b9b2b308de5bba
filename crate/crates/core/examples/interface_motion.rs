//! Moves a logical qubit one column to the right on a 6-qubit row.

use zz_ladder::simulator::{interface_motion_experiment, Backend};

fn main() -> zz_ladder::Result<()> {
    let ideal = interface_motion_experiment(20.0, Backend::Effective)?;
    println!(
        "effective: fidelity {:.12}, mid-shift entropy of i=3 {:.4} bits",
        ideal.fidelity, ideal.mid_entropy_bits
    );
    for eta in [5.0, 10.0, 20.0, 50.0] {
        let m = interface_motion_experiment(eta, Backend::RwaExact)?;
        println!("rwa_exact eta = {eta:4.0}: fidelity {:.6}", m.fidelity);
    }
    Ok(())
}
