//! Qubit counts, column species and couplers of the first few ladders.

use zz_ladder::lattice::build_ladder;

fn main() -> zz_ladder::Result<()> {
    for n in 1..=4 {
        let layout = build_ladder(n)?;
        let columns: String = (0..layout.n_columns())
            .map(|c| {
                let s = format!("{:?}", layout.column_species(c).unwrap());
                if layout.coupler_in_column(c).is_some() { s.to_lowercase() } else { s }
            })
            .collect();
        println!(
            "N={n}: {:3} qubits, {:2} columns  {columns}  (lower case: column with a coupler)",
            layout.qubit_count(),
            layout.n_columns()
        );
    }
    let two = build_ladder(2)?;
    println!("\nN=2 layout as JSON:\n{}", serde_json::to_string_pretty(&two.to_json())?);
    Ok(())
}
