//! Physical constants, CODATA 2018 recommended values (SI).
//!
//! Source: E. Tiesinga et al., "CODATA recommended values of the fundamental physical
//! constants: 2018", Rev. Mod. Phys. 93, 025010 (2021); NIST SP 961 (2019).

/// Elementary charge `e` [C]. Exact since the 2019 SI redefinition.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Vacuum electric permittivity `ε₀` [F/m]. CODATA 2018, rel. uncertainty 1.5e−10.
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// Reduced Planck constant `ħ` [J s]. Exact (h/2π with h = 6.626 070 15e−34).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant `k_B` [J/K]. Exact.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Classical electron radius `rₑ` [m]. CODATA 2018, rel. uncertainty 4.5e−10.
pub const ELECTRON_RADIUS: f64 = 2.817_940_326_2e-15;

/// Speed of light in vacuum `c` [m/s]. Exact.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Coulomb energy scale `e²/(4πε₀)` [J m].
pub fn coulomb_constant_e2() -> f64 {
    ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (4.0 * std::f64::consts::PI * VACUUM_PERMITTIVITY)
}
