//! Pi pulse on the middle qubit of an A-B-A chain for three initial states.

use zz_ladder::quantum::fidelity;
use zz_ladder::simulator::{blockade_experiment, blockade_target, BlockadeInitial};

fn main() -> zz_ladder::Result<()> {
    for initial in BlockadeInitial::ALL {
        let traj = blockade_experiment(initial, 20.0, 200)?;
        let target = blockade_target(initial)?;
        println!(
            "{:8} P_e(B) = {:.5}  fidelity with target = {:.5}",
            initial.label(),
            traj.final_populations()[1],
            fidelity(&traj.final_state, &target)?
        );
    }
    Ok(())
}
