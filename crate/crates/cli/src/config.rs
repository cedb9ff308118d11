//! TOML run configuration. Unknown keys are rejected at every level.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use goldilocks::physics::{Beam, CrossSection, RayleighFactor};
use serde::Deserialize;

use crate::units::{parse_length_power, Area, FluxDensity, Length, Mass, Rate, Temperature, Time};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub method: Option<String>,
    pub mode: Option<String>,
    pub threads: Option<usize>,
    /// Absolute tolerance for adaptive kernel methods.
    pub tol: Option<f64>,
    /// Bisection depth limit for adaptive quadrature.
    pub max_depth: Option<u32>,
    pub environment: EnvironmentConfig,
    pub curve: CurveConfig,
    pub signal_map: SignalMapConfig,
    pub photon_eff: PhotonEffConfig,
    pub ion: IonConfig,
    pub optimize: OptimizeConfig,
    pub validate: ValidateConfig,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Either explicit `values` or `start`/`stop`/`points` with a spacing.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid<Q> {
    pub values: Option<Vec<Q>>,
    pub start: Option<Q>,
    pub stop: Option<Q>,
    pub points: Option<usize>,
    #[serde(default)]
    pub spacing: Spacing,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

pub trait GridValue: Copy {
    fn value(self) -> f64;
}

impl GridValue for f64 {
    fn value(self) -> f64 {
        self
    }
}

impl GridValue for Time {
    fn value(self) -> f64 {
        self.si()
    }
}

impl<Q: GridValue> Grid<Q> {
    pub fn range(start: Q, stop: Q, points: usize, spacing: Spacing) -> Self {
        Self {
            values: None,
            start: Some(start),
            stop: Some(stop),
            points: Some(points),
            spacing,
        }
    }

    pub fn resolve(&self, name: &str) -> Result<Vec<f64>> {
        if let Some(values) = &self.values {
            if self.start.is_some() || self.stop.is_some() || self.points.is_some() {
                bail!("grid `{name}`: give either `values` or `start`/`stop`/`points`, not both");
            }
            if values.is_empty() {
                bail!("grid `{name}` has no values");
            }
            return Ok(values.iter().map(|v| v.value()).collect());
        }
        let (Some(start), Some(stop), Some(points)) = (self.start, self.stop, self.points) else {
            bail!("grid `{name}` needs `values` or all of `start`, `stop`, `points`");
        };
        let (a, b) = (start.value(), stop.value());
        if points == 0 || !(a.is_finite() && b.is_finite()) || b < a {
            bail!("grid `{name}` needs points >= 1 and finite start <= stop");
        }
        if points == 1 {
            return Ok(vec![a]);
        }
        let step = |i: usize| i as f64 / (points - 1) as f64;
        Ok(match self.spacing {
            Spacing::Linear => (0..points)
                .map(|i| if i == points - 1 { b } else { a + (b - a) * step(i) })
                .collect(),
            Spacing::Log => {
                if a <= 0.0 {
                    bail!("grid `{name}` uses log spacing and needs start > 0");
                }
                let span = (b / a).ln();
                (0..points)
                    .map(|i| if i == points - 1 { b } else { a * (span * step(i)).exp() })
                    .collect()
            }
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CrossSectionConfig {
    Thompson {},
    Rayleigh {
        radius: Length,
        permittivity: f64,
        #[serde(default)]
        factor: RayleighFactor,
    },
    PowerLaw {
        /// `"<g> m^(2-j)"`; the unit is checked against `j`.
        g: String,
        j: i32,
    },
    Rutherford {
        atom_charge: i32,
        particle_charge: i32,
        mass: Mass,
    },
}

impl CrossSectionConfig {
    pub fn build(&self) -> Result<CrossSection> {
        let xs = match self {
            CrossSectionConfig::Thompson {} => CrossSection::Thompson,
            CrossSectionConfig::Rayleigh {
                radius,
                permittivity,
                factor,
            } => CrossSection::Rayleigh {
                radius: radius.si(),
                permittivity: *permittivity,
                factor: *factor,
            },
            CrossSectionConfig::PowerLaw { g, j } => CrossSection::PowerLaw {
                g: parse_length_power(g, 2 - j).map_err(anyhow::Error::msg)?,
                j: *j,
            },
            CrossSectionConfig::Rutherford {
                atom_charge,
                particle_charge,
                mass,
            } => CrossSection::Rutherford {
                atom_charge: *atom_charge,
                particle_charge: *particle_charge,
                mass: mass.si(),
            },
        };
        xs.validate()?;
        Ok(xs)
    }
}

/// Scatterer beam shared by `signal-map` and `optimize`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnvironmentConfig {
    pub wavelength: Length,
    /// Sets the flux so that `g q^j · flux` equals this rate. Exclusive with `flux_density`.
    pub effective_rate: Option<Rate>,
    pub flux_density: Option<FluxDensity>,
    pub cross_section: CrossSectionConfig,
}

impl Default for EnvironmentConfig {
    fn default() -> Self {
        Self {
            wavelength: Length(1064e-9),
            effective_rate: None,
            flux_density: None,
            cross_section: CrossSectionConfig::Thompson {},
        }
    }
}

impl EnvironmentConfig {
    pub fn build(&self) -> Result<(Beam, CrossSection)> {
        let xs = self.cross_section.build()?;
        let q = std::f64::consts::TAU / self.wavelength.si();
        let beam = match (self.effective_rate, self.flux_density) {
            (Some(_), Some(_)) => bail!("environment: give `effective_rate` or `flux_density`, not both"),
            (None, Some(flux)) => Beam::from_wavelength(self.wavelength.si(), flux.si())?,
            (rate, None) => {
                let rate = rate.map_or(1.0, Rate::si);
                let Beam::Monochromatic { flux_density, .. } = Beam::unit_rate(q, &xs)? else {
                    unreachable!("unit_rate builds a monochromatic beam")
                };
                Beam::monochromatic(q, flux_density * rate)?
            }
        };
        Ok((beam, xs))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CurveConfig {
    pub dx_over_lambda: Grid<f64>,
    pub modes: Vec<String>,
    pub svg: Option<PathBuf>,
}

impl Default for CurveConfig {
    fn default() -> Self {
        Self {
            dx_over_lambda: Grid::range(1e-3, 1e2, 201, Spacing::Log),
            modes: vec!["directional".into()],
            svg: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SignalMapConfig {
    pub dx_over_lambda: Grid<f64>,
    pub times: Grid<Time>,
    /// `kernel` (phase from the rate) or `linear` (`φ = 2π δx/λ`).
    pub phase_model: String,
    pub svg: Option<PathBuf>,
}

impl Default for SignalMapConfig {
    fn default() -> Self {
        Self {
            dx_over_lambda: Grid::range(0.0, 1.0, 201, Spacing::Linear),
            times: Grid::range(Time(0.0), Time(5.0), 51, Spacing::Linear),
            phase_model: "kernel".into(),
            svg: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhotonEffConfig {
    pub wavelength: Length,
    pub time: Time,
    pub areas: Vec<Area>,
    pub dx_over_lambda: Grid<f64>,
    pub cross_section: CrossSectionConfig,
}

impl Default for PhotonEffConfig {
    fn default() -> Self {
        Self {
            wavelength: Length(1064e-9),
            time: Time(1.0),
            areas: vec![Area(1e-13), Area(3e-13), Area(1e-12)],
            dx_over_lambda: Grid::range(0.0, 2.0, 401, Spacing::Linear),
            cross_section: CrossSectionConfig::Rayleigh {
                radius: Length(50e-9),
                permittivity: 2.1,
                factor: RayleighFactor::PlusOne,
            },
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IonConfig {
    pub temperature: Temperature,
    pub mass: Mass,
    pub particle_charge: i32,
    pub atom_charge: i32,
    pub flux_density: FluxDensity,
}

impl Default for IonConfig {
    fn default() -> Self {
        Self {
            temperature: Temperature(100.0),
            mass: Mass(1e-25),
            particle_charge: 1,
            atom_charge: 1,
            flux_density: FluxDensity(1e14),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptimizeConfig {
    /// `max_abs_im_kernel` or `signal_threshold`.
    pub criterion: String,
    /// Window fraction of the peak.
    pub threshold: f64,
    pub time: Time,
    pub z_min: f64,
    pub z_max: f64,
    pub grid_points: usize,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        Self {
            criterion: "max_abs_im_kernel".into(),
            threshold: 0.95,
            time: Time(1.0),
            z_min: 1e-3,
            z_max: 1e3,
            grid_points: 2001,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ValidateConfig {
    pub mc_samples: u64,
    pub random_cases: usize,
}

impl Default for ValidateConfig {
    fn default() -> Self {
        Self {
            mc_samples: 1_000_000,
            random_cases: 1_000,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let cfg: RunConfig = toml::from_str("").unwrap();
        assert_eq!(cfg.photon_eff.areas.len(), 3);
        assert_eq!(cfg.ion.temperature.si(), 100.0);
        assert_eq!(cfg.environment.wavelength.si(), 1064e-9);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<RunConfig>("sed = 1").is_err());
        assert!(toml::from_str::<RunConfig>("[curve]\nmode = \"x\"").is_err());
        assert!(
            toml::from_str::<RunConfig>("[environment.cross_section]\nkind = \"thompson\"\nradius = \"1 nm\"").is_err()
        );
    }

    #[test]
    fn full_file_parses() {
        let cfg: RunConfig = toml::from_str(
            r#"
            seed = 3
            method = "quadrature"
            [environment]
            wavelength = "532 nm"
            flux_density = "1e20 m^-2 s^-1"
            [environment.cross_section]
            kind = "power_law"
            g = "2e-30 m^2"
            j = 0
            [signal_map]
            times = { values = ["0 s", "500 ms", "1 s"] }
            [photon_eff]
            areas = ["1 um^2"]
            "#,
        )
        .unwrap();
        let (beam, xs) = cfg.environment.build().unwrap();
        assert_eq!(xs, CrossSection::PowerLaw { g: 2e-30, j: 0 });
        assert!((beam.reference_wavelength() - 532e-9).abs() < 1e-20);
        assert_eq!(cfg.signal_map.times.resolve("t").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(cfg.photon_eff.areas[0].si(), 1e-12);
    }

    #[test]
    fn grids_resolve() {
        let g = Grid::range(1e-2, 1e2, 5, Spacing::Log).resolve("g").unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g[4], 1e2);
        assert!((g[2] - 1.0).abs() < 1e-15);
        assert_eq!(
            Grid::range(0.0, 1.0, 3, Spacing::Linear).resolve("g").unwrap(),
            vec![0.0, 0.5, 1.0]
        );
        assert!(Grid::range(0.0, 1.0, 3, Spacing::Log).resolve("g").is_err());
    }

    #[test]
    fn effective_rate_sets_flux() {
        let env: EnvironmentConfig = toml::from_str("effective_rate = \"2.5 s^-1\"").unwrap();
        let (beam, xs) = env.build().unwrap();
        let flux = goldilocks::physics::effective_flux(&beam, &xs).unwrap();
        assert!((flux - 2.5).abs() < 1e-12);
    }
}
