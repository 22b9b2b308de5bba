//! Transmon frequency, drive strength and the three ZZ realizations for a
//! set of circuit values in natural units.

use zz_ladder::device::{
    drive_constant, transmon_frequency, zz_capacitive, zz_cavity, zz_direct, CircuitElements, Units,
};

fn main() -> zz_ladder::Result<()> {
    let u = Units::NATURAL;
    println!("omega(E_J=50, E_C=1)        = {:.4}", transmon_frequency(50.0, 1.0, u)?);
    let v = drive_constant(0.1, 1.0, 2.0, 0.8, u)?;
    println!("V regular / crossed          = {v:.4} / {:.4}", drive_constant(0.2, 1.0, 2.0, 0.8, u)?);
    println!("zeta cavity                  = {:.4e}", zz_cavity(0.1, 0.1, 0.5, 0.6, 2.0, 2.2)?);
    println!("zeta direct                  = {:.4e}", zz_direct(0.4, 1.0, 50.0, u)?);
    println!("zeta capacitive              = {:.4e}", zz_capacitive(0.05, -0.3, -0.3, 1.0)?);

    let elements: CircuitElements = serde_json::from_str(
        r#"{"E_J": 50, "E_C": 1, "E_J_coupler": 0.4, "C_d": 0.1, "C_s": 0.8, "C_J": 0.2, "L_J": 2, "S": 0.05,
            "g": 0.05, "g_A": 0.1, "g_B": 0.1, "delta_A": 0.5, "delta_B": 0.6, "Delta_A": 2.0, "Delta_B": 2.2,
             "alpha_A": -0.3, "alpha_B": -0.3, "Delta_AB": 1.0}"#,
    )?;
    println!("{}", serde_json::to_string_pretty(&elements.report()?)?);
    Ok(())
}
