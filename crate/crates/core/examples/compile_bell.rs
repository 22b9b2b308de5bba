//! Compiles a two-qubit Bell circuit to global pulses and checks it in the
//! effective model.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use zz_ladder::lattice::build_ladder;
use zz_ladder::protocols::{compile_logical_circuit_traced, LogicalCircuit};
use zz_ladder::simulator::verify_compiled;

fn main() -> zz_ladder::Result<()> {
    let h = [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2];
    let circuit = LogicalCircuit::from_json(&format!(
        r#"{{"n": 2, "gates": [
            {{"type": "rot", "row": 0, "theta": {PI}, "axis": {h:?}}},
            {{"type": "rot", "row": 1, "theta": {PI}, "axis": {h:?}}},
            {{"type": "cz", "row": 0}},
            {{"type": "rot", "row": 1, "theta": {PI}, "axis": {h:?}}}
        ]}}"#
    ))?;
    let layout = build_ladder(circuit.n)?;
    let compiled = compile_logical_circuit_traced(&circuit, &layout)?;
    for stage in &compiled.stages {
        println!("{:24} segments {:3}..{:3}", stage.label, stage.segments.start, stage.segments.end);
    }
    let report = verify_compiled(&circuit, &layout, &compiled)?;
    println!(
        "{} segments, duration {:.3}, readout column {}, fidelity {:.12}",
        report.n_segments, report.total_duration, report.readout_column, report.fidelity
    );
    Ok(())
}
