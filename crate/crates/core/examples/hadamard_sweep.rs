//! Mean Hadamard fidelity against the blockade ratio on the 5-qubit row.

use zz_ladder::simulator::{hadamard_fidelity_sweep, sweep_to_json};

fn main() -> zz_ladder::Result<()> {
    let etas = [2.0, 3.0, 5.0, 10.0, 20.0, 50.0];
    let points = hadamard_fidelity_sweep(&etas, 100, 7)?;
    for p in &points {
        println!("eta = {:5.1}  1 - F = {:.3e}", p.eta, 1.0 - p.mean_fidelity);
    }
    println!("{}", sweep_to_json(&points)?);
    Ok(())
}
