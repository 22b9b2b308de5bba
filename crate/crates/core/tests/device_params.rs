use proptest::prelude::*;
use zz_ladder::device::{
    charging_energy, drive_constant, rabi_frequency, transmon_frequency, zz_capacitive, zz_cavity, zz_direct,
    CircuitElements, Units,
};
use zz_ladder::Error;

const U: Units = Units::NATURAL;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn transmon_frequency_examples() {
    assert!(close(transmon_frequency(1.0, 1.0, U).unwrap(), 8f64.sqrt() - 1.0));
    assert_eq!(transmon_frequency(1.0, 8.0, U).unwrap(), 0.0);
    // E_C → 0: ω → √(8 E_J E_C) → 0
    let small = transmon_frequency(2.0, 1e-12, U).unwrap();
    assert!(small > 0.0 && small < 1e-5);
    assert!(transmon_frequency(-1.0, 1.0, U).is_err());
    let hbar2 = Units { hbar: 2.0, elementary_charge: 1.0 };
    assert!(close(transmon_frequency(1.0, 1.0, hbar2).unwrap(), (8f64.sqrt() - 1.0) / 2.0));
}

#[test]
fn charging_and_drive() {
    assert!(close(charging_energy(0.5, U).unwrap(), 1.0));
    assert_eq!(drive_constant(0.0, 1.0, 1.0, 1.0, U).unwrap(), 0.0);
    assert!(close(drive_constant(1.0, 1.0, 1.0, 1.0, U).unwrap(), 0.5f64.sqrt()));
    let one = drive_constant(0.2, 3.0, 2.0, 0.5, U).unwrap();
    let two = drive_constant(0.4, 3.0, 2.0, 0.5, U).unwrap();
    assert!(close(two, 2.0 * one));
    // the crossed coupling doubles the Rabi frequency
    assert!(close(rabi_frequency(two, 0.7, U).unwrap(), 2.0 * rabi_frequency(one, 0.7, U).unwrap()));
    assert!(drive_constant(1.0, 1.0, 0.0, 1.0, U).is_err());
}

#[test]
fn zz_cavity_examples() {
    assert_eq!(zz_cavity(0.0, 0.3, 1.0, 2.0, 3.0, 4.0).unwrap(), 0.0);
    let (g, d, big): (f64, f64, f64) = (0.4, 1.7, 2.9);
    let symmetric = -2.0 * g.powi(4) * (2.0 / (d * big * big) + 2.0 / big.powi(3));
    assert!(close(zz_cavity(g, g, d, d, big, big).unwrap(), symmetric));
    assert!(zz_cavity(0.1, 0.2, 1.0, 2.0, 3.0, 4.0).unwrap() < 0.0);
    assert!(matches!(zz_cavity(0.1, 0.2, 0.0, 2.0, 3.0, 4.0), Err(Error::Pole(_))));
}

#[test]
fn zz_direct_examples() {
    assert_eq!(zz_direct(0.0, 1.0, 1.0, U).unwrap(), 0.0);
    assert!(close(zz_direct(8.0, 1.0, 1.0, U).unwrap(), -1.0));
    let a = zz_direct(3.0, 0.5, 2.0, U).unwrap();
    let b = zz_direct(3.0, 0.5, 4.0, U).unwrap();
    assert!(close(b, a / 2.0));
    assert!(zz_direct(1.0, 1.0, 0.0, U).is_err());
}

#[test]
fn zz_capacitive_examples() {
    assert_eq!(zz_capacitive(0.3, 0.0, 0.0, 1.0).unwrap(), 0.0);
    assert_eq!(zz_capacitive(0.0, 0.2, 0.3, 1.0).unwrap(), 0.0);
    let alpha = 0.25;
    assert!(close(zz_capacitive(1.0, alpha, alpha, 0.0).unwrap(), 2.0 / alpha));
    assert!(matches!(zz_capacitive(1.0, 0.2, 0.3, -0.2), Err(Error::Pole(_))));
    assert!(matches!(zz_capacitive(1.0, 0.2, 0.3, 0.3), Err(Error::Pole(_))));
}

#[test]
fn report_collects_every_available_model() {
    let elements: CircuitElements = serde_json::from_str(
        r#"{"E_J": 1.0, "E_C": 1.0, "E_J_coupler": 8.0, "C_d": 1.0, "C_s": 0.5, "C_J": 0.5, "L_J": 1.0, "S": 2.0,
            "g": 1.0, "alpha_A": 0.25, "alpha_B": 0.25, "Delta_AB": 0.0}"#,
    )
    .unwrap();
    let r = elements.report().unwrap();
    assert!(close(r.omega.unwrap(), 8f64.sqrt() - 1.0));
    assert!(close(r.zeta_direct.unwrap(), -1.0));
    assert!(close(r.zeta_capacitive.unwrap(), 8.0));
    assert!(r.zeta_cavity.is_none());
    // C_Σ = C_s + C_J = 1 and √(L_J / C_s) = √2
    let v = (1.0 / (2.0 * 2f64.sqrt())).sqrt();
    assert!(close(r.drive_constant.unwrap(), v));
    assert!(close(r.drive_constant_crossed.unwrap(), 2.0 * v));
    let omega = 2.0 * v;
    assert!(close(r.eta_br["direct"], 1.0 / omega));
    assert!(close(r.eta_br["capacitive"], 8.0 / omega));
    assert!(serde_json::from_str::<CircuitElements>(r#"{"E_X": 1}"#).is_err());
}

proptest! {
    #[test]
    fn formulas_scale_with_the_energy_unit(
        s in 0.1f64..10.0,
        e_j in 0.5f64..5.0, e_c in 0.01f64..0.5, e_jc in -1.0f64..1.0,
        g in 0.01f64..0.5, ga in 0.01f64..0.5, gb in 0.01f64..0.5,
        da in 0.5f64..3.0, db in 0.5f64..3.0, bda in 3.0f64..6.0, bdb in 3.0f64..6.0,
        aa in -0.4f64..-0.1, ab in -0.4f64..-0.1, dab in 0.5f64..2.0,
    ) {
        let scaled = |f: f64, g: f64| (g - s * f).abs() <= 1e-10 * (s * f).abs().max(1e-300);
        prop_assert!(scaled(transmon_frequency(e_j, e_c, U)?, transmon_frequency(s * e_j, s * e_c, U)?));
        prop_assert!(scaled(zz_direct(e_jc, e_c, e_j, U)?, zz_direct(s * e_jc, s * e_c, s * e_j, U)?));
        prop_assert!(scaled(
            zz_cavity(ga, gb, da, db, bda, bdb)?,
            zz_cavity(s * ga, s * gb, s * da, s * db, s * bda, s * bdb)?
        ));
        prop_assert!(scaled(zz_capacitive(g, aa, ab, dab)?, zz_capacitive(s * g, s * aa, s * ab, s * dab)?));
    }

    #[test]
    fn zz_cavity_is_symmetric_in_the_labels(
        ga in 0.01f64..0.5, gb in 0.01f64..0.5,
        da in 0.5f64..3.0, db in 0.5f64..3.0, bda in 3.0f64..6.0, bdb in -6.0f64..-3.0,
    ) {
        let ab = zz_cavity(ga, gb, da, db, bda, bdb)?;
        let ba = zz_cavity(gb, ga, db, da, bdb, bda)?;
        prop_assert!((ab - ba).abs() <= 1e-12 * ab.abs());
    }
}
