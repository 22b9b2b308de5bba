//! Energy levels of an A-B-A chain: the B transition depends on its neighbors.

use zz_ladder::hamiltonian::{blockade_ratio, triplet_spectrum, DeviceParams};

fn main() -> zz_ladder::Result<()> {
    let params = DeviceParams::from_eta(20.0)?;
    println!("blockade ratio zeta / Omega = {}", blockade_ratio(&params)?);
    for (label, energy) in triplet_spectrum(&params)? {
        println!("|{label}>  {energy:10.3}");
    }
    Ok(())
}
