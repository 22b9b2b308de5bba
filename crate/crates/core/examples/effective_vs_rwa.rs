//! Distance between the ideal blockade model and the exact rotating-frame
//! dynamics of one interface shift, as the blockade ratio grows.

use zz_ladder::simulator::{interface_motion_experiment, Backend};

fn main() -> zz_ladder::Result<()> {
    for eta in [4.0, 5.0, 8.0, 10.0, 16.0, 20.0, 30.0, 50.0, 100.0] {
        let m = interface_motion_experiment(eta, Backend::RwaExact)?;
        println!("eta = {eta:5}: 1 - F = {:.3e}  (2/eta^2 = {:.1e})", 1.0 - m.fidelity, 2.0 / (eta * eta));
    }
    Ok(())
}
