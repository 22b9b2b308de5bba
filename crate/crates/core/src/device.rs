//! Closed-form circuit-to-parameter calculators for transmon devices.
//!
//! Every function takes a [`Units`] value so that the reduced Planck
//! constant and the elementary charge can be set to SI values or left at 1.
//! Exactly vanishing denominators are errors; nearly vanishing ones are
//! logged as warnings because the perturbative formulas blow up there.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative size below which a denominator is reported as close to a pole.
pub const POLE_WARNING_RATIO: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Units {
    pub hbar: f64,
    pub elementary_charge: f64,
}

impl Default for Units {
    fn default() -> Self {
        Self::NATURAL
    }
}

impl Units {
    pub const NATURAL: Units = Units {
        hbar: 1.0,
        elementary_charge: 1.0,
    };
    pub const SI: Units = Units {
        hbar: 1.054_571_817e-34,
        elementary_charge: 1.602_176_634e-19,
    };

    fn check(&self) -> Result<()> {
        if !(self.hbar > 0.0) || !(self.elementary_charge > 0.0) {
            return Err(Error::InvalidParameter("unit constants must be positive".into()));
        }
        Ok(())
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")))
    }
}

/// Rejects an exact pole and warns when `denominator` is tiny compared with
/// `scale`, the magnitude of the operands that formed it.
fn guard_pole(what: &'static str, denominator: f64, scale: f64) -> Result<()> {
    if denominator == 0.0 {
        return Err(Error::Pole(what));
    }
    if denominator.abs() < POLE_WARNING_RATIO * scale.abs() {
        log::warn!("{what}: denominator {denominator:e} is close to a pole (operand scale {scale:e})");
    }
    Ok(())
}

/// `E_C = e² / (2 C_Σ)`.
pub fn charging_energy(c_sigma: f64, units: Units) -> Result<f64> {
    units.check()?;
    positive("C_sigma", c_sigma)?;
    Ok(units.elementary_charge.powi(2) / (2.0 * c_sigma))
}

/// `ω = (√(8 E_J E_C) − E_C) / ħ`.
pub fn transmon_frequency(e_j: f64, e_c: f64, units: Units) -> Result<f64> {
    units.check()?;
    positive("E_J", e_j)?;
    positive("E_C", e_c)?;
    Ok(((8.0 * e_j * e_c).sqrt() - e_c) / units.hbar)
}

/// Drive coupling `𝒱 = (C_d / C_Σ) √(ħ / (2 √(L_J / C_s)))`.
pub fn drive_constant(c_d: f64, c_sigma: f64, l_j: f64, c_s: f64, units: Units) -> Result<f64> {
    units.check()?;
    if !(c_d >= 0.0) || !c_d.is_finite() {
        return Err(Error::InvalidParameter(format!("C_d must be non-negative, got {c_d}")));
    }
    positive("C_sigma", c_sigma)?;
    positive("L_J", l_j)?;
    positive("C_s", c_s)?;
    Ok(c_d / c_sigma * (units.hbar / (2.0 * (l_j / c_s).sqrt())).sqrt())
}

/// `Ω = 𝒱 S / ħ` for a drive envelope amplitude `S`.
pub fn rabi_frequency(drive_constant: f64, envelope: f64, units: Units) -> Result<f64> {
    units.check()?;
    finite("drive constant", drive_constant)?;
    finite("envelope", envelope)?;
    Ok(drive_constant * envelope / units.hbar)
}

/// ZZ strength mediated by a shared cavity:
/// `ζ = −2 g_A² g_B² (1/(δ_A Δ_B²) + 1/(δ_B Δ_A²) + 1/(Δ_A Δ_B²) + 1/(Δ_A² Δ_B))`.
pub fn zz_cavity(g_a: f64, g_b: f64, delta_a: f64, delta_b: f64, big_delta_a: f64, big_delta_b: f64) -> Result<f64> {
    for (name, v) in [
        ("g_A", g_a),
        ("g_B", g_b),
        ("delta_A", delta_a),
        ("delta_B", delta_b),
        ("Delta_A", big_delta_a),
        ("Delta_B", big_delta_b),
    ] {
        finite(name, v)?;
    }
    let scale = [delta_a, delta_b, big_delta_a, big_delta_b]
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    for (what, d) in [
        ("zz_cavity: delta_A", delta_a),
        ("zz_cavity: delta_B", delta_b),
        ("zz_cavity: Delta_A", big_delta_a),
        ("zz_cavity: Delta_B", big_delta_b),
    ] {
        guard_pole(what, d, scale)?;
    }
    let sum = 1.0 / (delta_a * big_delta_b.powi(2))
        + 1.0 / (delta_b * big_delta_a.powi(2))
        + 1.0 / (big_delta_a * big_delta_b.powi(2))
        + 1.0 / (big_delta_a.powi(2) * big_delta_b);
    Ok(-2.0 * g_a.powi(2) * g_b.powi(2) * sum)
}

/// ZZ strength of directly connected junctions: `ζ = −E_J^c E_C / (8 ħ E_J)`.
pub fn zz_direct(e_j_coupler: f64, e_c: f64, e_j: f64, units: Units) -> Result<f64> {
    units.check()?;
    finite("E_J_coupler", e_j_coupler)?;
    finite("E_C", e_c)?;
    finite("E_J", e_j)?;
    if e_j == 0.0 {
        return Err(Error::DivisionByZero("zz_direct: E_J"));
    }
    Ok(-e_j_coupler * e_c / (8.0 * units.hbar * e_j))
}

/// ZZ strength of capacitively coupled transmons:
/// `ζ ≈ −g² (α_A + α_B) / ((Δ_AB + α_A)(Δ_AB − α_B))`.
pub fn zz_capacitive(g: f64, alpha_a: f64, alpha_b: f64, delta_ab: f64) -> Result<f64> {
    for (name, v) in [("g", g), ("alpha_A", alpha_a), ("alpha_B", alpha_b), ("Delta_AB", delta_ab)] {
        finite(name, v)?;
    }
    let left = delta_ab + alpha_a;
    let right = delta_ab - alpha_b;
    guard_pole("zz_capacitive: Delta_AB + alpha_A", left, delta_ab.abs().max(alpha_a.abs()))?;
    guard_pole("zz_capacitive: Delta_AB - alpha_B", right, delta_ab.abs().max(alpha_b.abs()))?;
    Ok(-g * g * (alpha_a + alpha_b) / (left * right))
}

/// Circuit parameters for the `params` report. Missing groups are skipped.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CircuitElements {
    #[serde(rename = "E_J")]
    pub e_j: Option<f64>,
    #[serde(rename = "E_C")]
    pub e_c: Option<f64>,
    #[serde(rename = "E_J_coupler")]
    pub e_j_coupler: Option<f64>,
    #[serde(rename = "C_d")]
    pub c_d: Option<f64>,
    #[serde(rename = "C_s")]
    pub c_s: Option<f64>,
    #[serde(rename = "C_J")]
    pub c_j: Option<f64>,
    #[serde(rename = "L_J")]
    pub l_j: Option<f64>,
    /// Drive envelope amplitude used for the Rabi frequency.
    #[serde(rename = "S")]
    pub envelope: Option<f64>,
    pub g: Option<f64>,
    #[serde(rename = "g_A")]
    pub g_a: Option<f64>,
    #[serde(rename = "g_B")]
    pub g_b: Option<f64>,
    #[serde(rename = "alpha_A")]
    pub alpha_a: Option<f64>,
    #[serde(rename = "alpha_B")]
    pub alpha_b: Option<f64>,
    #[serde(rename = "Delta_A")]
    pub big_delta_a: Option<f64>,
    #[serde(rename = "Delta_B")]
    pub big_delta_b: Option<f64>,
    #[serde(rename = "Delta_AB")]
    pub delta_ab: Option<f64>,
    #[serde(rename = "delta_A")]
    pub delta_a: Option<f64>,
    #[serde(rename = "delta_B")]
    pub delta_b: Option<f64>,
    pub units: Option<Units>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ParameterReport {
    pub omega: Option<f64>,
    #[serde(rename = "E_C")]
    pub e_c: Option<f64>,
    pub drive_constant: Option<f64>,
    pub drive_constant_crossed: Option<f64>,
    pub omega_rabi: Option<f64>,
    pub zeta_cavity: Option<f64>,
    pub zeta_direct: Option<f64>,
    pub zeta_capacitive: Option<f64>,
    /// `|ζ/Ω|` for each available ZZ model, keyed like the ζ fields.
    pub eta_br: std::collections::BTreeMap<String, f64>,
}

impl CircuitElements {
    /// Evaluates every calculator whose inputs are present.
    pub fn report(&self) -> Result<ParameterReport> {
        let units = self.units.unwrap_or_default();
        let mut r = ParameterReport::default();
        let c_sigma = match (self.c_s, self.c_j) {
            (Some(s), Some(j)) => Some(s + j),
            _ => None,
        };
        r.e_c = match (self.e_c, c_sigma) {
            (Some(e), _) => Some(e),
            (None, Some(c)) => Some(charging_energy(c, units)?),
            _ => None,
        };
        if let (Some(e_j), Some(e_c)) = (self.e_j, r.e_c) {
            r.omega = Some(transmon_frequency(e_j, e_c, units)?);
        }
        if let (Some(c_d), Some(c_sigma), Some(l_j), Some(c_s)) = (self.c_d, c_sigma, self.l_j, self.c_s) {
            let v = drive_constant(c_d, c_sigma, l_j, c_s, units)?;
            r.drive_constant = Some(v);
            r.drive_constant_crossed = Some(drive_constant(2.0 * c_d, c_sigma, l_j, c_s, units)?);
            if let Some(s) = self.envelope {
                r.omega_rabi = Some(rabi_frequency(v, s, units)?);
            }
        }
        if let (Some(ga), Some(gb), Some(da), Some(db), Some(bda), Some(bdb)) = (
            self.g_a,
            self.g_b,
            self.delta_a,
            self.delta_b,
            self.big_delta_a,
            self.big_delta_b,
        ) {
            r.zeta_cavity = Some(zz_cavity(ga, gb, da, db, bda, bdb)?);
        }
        if let (Some(ejc), Some(e_c), Some(e_j)) = (self.e_j_coupler, r.e_c, self.e_j) {
            r.zeta_direct = Some(zz_direct(ejc, e_c, e_j, units)?);
        }
        if let (Some(g), Some(aa), Some(ab), Some(dab)) = (self.g, self.alpha_a, self.alpha_b, self.delta_ab) {
            r.zeta_capacitive = Some(zz_capacitive(g, aa, ab, dab)?);
        }
        if let Some(omega) = r.omega_rabi.filter(|o| *o != 0.0) {
            for (name, z) in [
                ("cavity", r.zeta_cavity),
                ("direct", r.zeta_direct),
                ("capacitive", r.zeta_capacitive),
            ] {
                if let Some(z) = z {
                    r.eta_br.insert(name.to_string(), (z / omega).abs());
                }
            }
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const U: Units = Units::NATURAL;

    #[test]
    fn transmon_examples() {
        assert!((transmon_frequency(1.0, 1.0, U).unwrap() - (8f64.sqrt() - 1.0)).abs() < 1e-15);
        assert_eq!(transmon_frequency(1.0, 8.0, U).unwrap(), 0.0);
        assert!(transmon_frequency(0.0, 1.0, U).is_err());
        assert!(transmon_frequency(1.0, -1.0, U).is_err());
    }

    #[test]
    fn drive_constant_examples() {
        assert_eq!(drive_constant(0.0, 1.0, 1.0, 1.0, U).unwrap(), 0.0);
        assert!((drive_constant(1.0, 1.0, 1.0, 1.0, U).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        let one = drive_constant(0.3, 2.0, 1.5, 0.7, U).unwrap();
        let two = drive_constant(0.6, 2.0, 1.5, 0.7, U).unwrap();
        assert!((two - 2.0 * one).abs() < 1e-15);
        assert!(drive_constant(1.0, 0.0, 1.0, 1.0, U).is_err());
    }

    #[test]
    fn direct_examples() {
        assert_eq!(zz_direct(8.0, 1.0, 1.0, U).unwrap(), -1.0);
        assert_eq!(zz_direct(0.0, 1.0, 1.0, U).unwrap(), 0.0);
        assert!(matches!(zz_direct(1.0, 1.0, 0.0, U), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn capacitive_examples() {
        let alpha = 0.3;
        assert!((zz_capacitive(1.0, alpha, alpha, 0.0).unwrap() - 2.0 / alpha).abs() < 1e-12);
        assert_eq!(zz_capacitive(1.0, 0.0, 0.0, 1.0).unwrap(), 0.0);
        assert!(matches!(zz_capacitive(1.0, 0.2, 0.3, -0.2), Err(Error::Pole(_))));
        assert!(matches!(zz_capacitive(1.0, 0.2, 0.3, 0.3), Err(Error::Pole(_))));
    }

    #[test]
    fn cavity_examples() {
        assert_eq!(zz_cavity(0.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap(), -0.0);
        assert!(zz_cavity(0.1, 0.1, 1.0, 2.0, 3.0, 4.0).unwrap() < 0.0);
        assert!(matches!(zz_cavity(0.1, 0.1, 0.0, 2.0, 3.0, 4.0), Err(Error::Pole(_))));
    }

    #[test]
    fn report_combines_models() {
        let e = CircuitElements {
            e_j: Some(20.0),
            e_c: Some(0.25),
            e_j_coupler: Some(1.0),
            c_d: Some(0.1),
            c_s: Some(1.0),
            c_j: Some(0.1),
            l_j: Some(1.0),
            envelope: Some(2.0),
            g: Some(0.05),
            alpha_a: Some(-0.2),
            alpha_b: Some(-0.2),
            delta_ab: Some(1.0),
            ..Default::default()
        };
        let r = e.report().unwrap();
        assert!(r.omega.is_some() && r.zeta_direct.is_some() && r.zeta_capacitive.is_some());
        assert!(r.zeta_cavity.is_none());
        assert_eq!(r.eta_br.len(), 2);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("eta_br"));
    }
}
