use serde::{Deserialize, Serialize};

use super::constants::{coulomb_constant_e2, ELECTRON_RADIUS, HBAR};
use crate::error::{domain, Result};

/// Which dielectric factor multiplies `a⁶` in the Rayleigh coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RayleighFactor {
    /// `|(ε−1)/(ε+1)|²`.
    #[default]
    PlusOne,
    /// Clausius–Mossotti `|(ε−1)/(ε+2)|²`.
    ClausiusMossotti,
}

/// Differential cross-sections of the form `|f|² = g q^j · ½(1 + cos²θ')`.
///
/// `g` carries units of `m^(2−j)` so that `g q^j` is an area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CrossSection {
    PowerLaw {
        g: f64,
        j: i32,
    },
    /// `j = 0`, `g = rₑ²`.
    Thompson,
    /// `j = 4`, `g = a⁶ · factor(ε)` for a dielectric sphere of radius `a`.
    Rayleigh {
        radius: f64,
        permittivity: f64,
        #[serde(default)]
        factor: RayleighFactor,
    },
    /// Coulomb scattering of an ion of charge `Z e` and mass `m` off a particle of charge `Z' e`:
    /// `j = −4`, `g = m² (Z Z' e²/4πε₀)² / ħ⁴`.
    Rutherford {
        atom_charge: i32,
        particle_charge: i32,
        mass: f64,
    },
}

impl CrossSection {
    /// Rayleigh sphere with the default assumptions: radius 50 nm, `ε = 2.1`.
    pub fn rayleigh_default() -> Self {
        CrossSection::Rayleigh {
            radius: 50e-9,
            permittivity: 2.1,
            factor: RayleighFactor::PlusOne,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            CrossSection::PowerLaw { g, .. } => {
                if !(g.is_finite() && g > 0.0) {
                    return Err(domain(format!("coupling g must be positive, got {g}")));
                }
            }
            CrossSection::Thompson => {}
            CrossSection::Rayleigh {
                radius, permittivity, ..
            } => {
                if !(radius.is_finite() && radius > 0.0) {
                    return Err(domain(format!("sphere radius must be positive, got {radius}")));
                }
                if !permittivity.is_finite() || permittivity == 1.0 {
                    return Err(domain(format!(
                        "permittivity must be finite and differ from 1, got {permittivity}"
                    )));
                }
            }
            CrossSection::Rutherford {
                atom_charge,
                particle_charge,
                mass,
            } => {
                if atom_charge == 0 || particle_charge == 0 {
                    return Err(domain("Rutherford charges must be non-zero"));
                }
                if !(mass.is_finite() && mass > 0.0) {
                    return Err(domain(format!("ion mass must be positive, got {mass}")));
                }
            }
        }
        Ok(())
    }

    /// Coupling `g` in `m^(2−j)`.
    pub fn g(&self) -> f64 {
        match *self {
            CrossSection::PowerLaw { g, .. } => g,
            CrossSection::Thompson => ELECTRON_RADIUS * ELECTRON_RADIUS,
            CrossSection::Rayleigh {
                radius,
                permittivity,
                factor,
            } => {
                let ratio = match factor {
                    RayleighFactor::PlusOne => (permittivity - 1.0) / (permittivity + 1.0),
                    RayleighFactor::ClausiusMossotti => (permittivity - 1.0) / (permittivity + 2.0),
                };
                radius.powi(6) * ratio * ratio
            }
            CrossSection::Rutherford {
                atom_charge,
                particle_charge,
                mass,
            } => {
                let coulomb = f64::from(atom_charge) * f64::from(particle_charge) * coulomb_constant_e2();
                // Grouped so no intermediate leaves the f64 range.
                let ratio = mass * coulomb / (HBAR * HBAR);
                ratio * ratio
            }
        }
    }

    /// Power `j` of the wavenumber.
    pub fn exponent(&self) -> i32 {
        match *self {
            CrossSection::PowerLaw { j, .. } => j,
            CrossSection::Thompson => 0,
            CrossSection::Rayleigh { .. } => 4,
            CrossSection::Rutherford { .. } => -4,
        }
    }

    /// Total-strength prefactor `g q^j` [m²] at wavenumber `q`.
    pub fn coupling(&self, q: f64) -> f64 {
        self.g() * q.powi(self.exponent())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thompson_is_electron_radius_squared() {
        let xs = CrossSection::Thompson;
        assert_eq!(xs.exponent(), 0);
        assert!((xs.g() - 7.940_787_2e-30).abs() < 1e-36);
        assert_eq!(xs.coupling(1.0e7), xs.g());
    }

    #[test]
    fn rayleigh_coupling_factors() {
        let a: f64 = 50e-9;
        let plus_one = CrossSection::rayleigh_default();
        assert_eq!(plus_one.exponent(), 4);
        let expected = a.powi(6) * (1.1f64 / 3.1).powi(2);
        assert!((plus_one.g() - expected).abs() < 1e-15 * expected);
        let cm = CrossSection::Rayleigh {
            radius: a,
            permittivity: 2.1,
            factor: RayleighFactor::ClausiusMossotti,
        };
        let expected = a.powi(6) * (1.1f64 / 4.1).powi(2);
        assert!((cm.g() - expected).abs() < 1e-15 * expected);
    }

    #[test]
    fn validation() {
        assert!(CrossSection::PowerLaw { g: -1.0, j: 0 }.validate().is_err());
        assert!(CrossSection::PowerLaw { g: 1.0, j: 2 }.validate().is_ok());
        assert!(CrossSection::Rayleigh {
            radius: 0.0,
            permittivity: 2.0,
            factor: RayleighFactor::PlusOne
        }
        .validate()
        .is_err());
        assert!(CrossSection::Rutherford {
            atom_charge: 1,
            particle_charge: 0,
            mass: 1e-25
        }
        .validate()
        .is_err());
    }
}
