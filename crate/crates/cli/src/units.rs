//! Unit-suffixed quantities in config files, e.g. `wavelength = "1064 nm"`.
//!
//! Every physical value must be written as `"<number> <unit>"`; bare numbers are rejected so that
//! the unit is always visible in the file. Values are converted to SI on parse.

use std::fmt;

use serde::de::{Deserialize, Deserializer, Error as _};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Scale {
    Pow10(i32),
    Factor(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Area,
    Time,
    Mass,
    Temperature,
    Rate,
    FluxDensity,
}

impl Dimension {
    fn units(self) -> &'static [(&'static str, Scale)] {
        use Scale::{Factor, Pow10};
        match self {
            Dimension::Length => &[
                ("m", Pow10(0)),
                ("cm", Pow10(-2)),
                ("mm", Pow10(-3)),
                ("um", Pow10(-6)),
                ("µm", Pow10(-6)),
                ("nm", Pow10(-9)),
                ("pm", Pow10(-12)),
            ],
            Dimension::Area => &[
                ("m^2", Pow10(0)),
                ("cm^2", Pow10(-4)),
                ("mm^2", Pow10(-6)),
                ("um^2", Pow10(-12)),
                ("µm^2", Pow10(-12)),
                ("nm^2", Pow10(-18)),
            ],
            Dimension::Time => &[
                ("s", Pow10(0)),
                ("ms", Pow10(-3)),
                ("us", Pow10(-6)),
                ("µs", Pow10(-6)),
                ("ns", Pow10(-9)),
                ("min", Factor(60.0)),
            ],
            Dimension::Mass => &[
                ("kg", Pow10(0)),
                ("g", Pow10(-3)),
                ("u", Factor(1.660_539_066_60e-27)),
                ("Da", Factor(1.660_539_066_60e-27)),
            ],
            Dimension::Temperature => &[("K", Pow10(0)), ("mK", Pow10(-3))],
            Dimension::Rate => &[
                ("s^-1", Pow10(0)),
                ("1/s", Pow10(0)),
                ("/s", Pow10(0)),
                ("Hz", Pow10(0)),
            ],
            Dimension::FluxDensity => &[
                ("m^-2 s^-1", Pow10(0)),
                ("cm^-2 s^-1", Pow10(4)),
                ("1/(m^2 s)", Pow10(0)),
            ],
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Dimension::Length => "length",
            Dimension::Area => "area",
            Dimension::Time => "time",
            Dimension::Mass => "mass",
            Dimension::Temperature => "temperature",
            Dimension::Rate => "rate",
            Dimension::FluxDensity => "flux density",
        };
        f.write_str(name)
    }
}

/// Parses `"<number> <unit>"` into SI.
///
/// Power-of-ten prefixes shift the decimal exponent before parsing, so `"1064 nm"` is the
/// correctly rounded `1.064e-6` rather than `1064.0 * 1e-9`.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64, String> {
    let text = text.trim();
    let (number, unit) = text
        .split_once(char::is_whitespace)
        .ok_or_else(|| format!("`{text}` has no unit; expected a {dim} such as \"{}\"", example(dim)))?;
    let unit = unit.split_whitespace().collect::<Vec<_>>().join(" ");
    let scale = dim
        .units()
        .iter()
        .find(|(name, _)| *name == unit)
        .map(|(_, s)| *s)
        .ok_or_else(|| {
            let known: Vec<_> = dim.units().iter().map(|(n, _)| *n).collect();
            format!("unknown {dim} unit `{unit}` in `{text}` (known: {})", known.join(", "))
        })?;
    let bad_number = || format!("`{number}` is not a number in `{text}`");
    let value = match scale {
        Scale::Pow10(p) => {
            let (mantissa, exponent) = match number.split_once(['e', 'E']) {
                Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad_number())?),
                None => (number, 0),
            };
            format!("{mantissa}e{}", exponent + p)
                .parse::<f64>()
                .map_err(|_| bad_number())?
        }
        Scale::Factor(f) => number.parse::<f64>().map_err(|_| bad_number())? * f,
    };
    if !value.is_finite() {
        return Err(format!("`{text}` is not finite"));
    }
    Ok(value)
}

/// Parses a coupling with units `m^p`, checking the power.
pub fn parse_length_power(text: &str, power: i32) -> Result<f64, String> {
    let text = text.trim();
    let (number, unit) = text
        .split_once(char::is_whitespace)
        .ok_or_else(|| format!("`{text}` has no unit; expected \"<g> m^{power}\""))?;
    let value: f64 = number
        .parse()
        .map_err(|_| format!("`{number}` is not a number in `{text}`"))?;
    let got = match unit.trim() {
        "m" => 1,
        "1" => 0,
        u => u
            .strip_prefix("m^")
            .and_then(|p| p.parse::<i32>().ok())
            .ok_or_else(|| format!("unit `{u}` in `{text}` is not of the form m^p"))?,
    };
    if got != power {
        return Err(format!("coupling `{text}` must have units m^{power} for this exponent"));
    }
    Ok(value)
}

fn example(dim: Dimension) -> &'static str {
    match dim {
        Dimension::Length => "1064 nm",
        Dimension::Area => "1e-12 m^2",
        Dimension::Time => "1 s",
        Dimension::Mass => "1e-25 kg",
        Dimension::Temperature => "100 K",
        Dimension::Rate => "1 s^-1",
        Dimension::FluxDensity => "1e14 m^-2 s^-1",
    }
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum Raw {
    Text(String),
    Number(f64),
}

macro_rules! quantity {
    ($name:ident, $dim:expr) => {
        /// SI value parsed from a unit-suffixed string.
        #[derive(Debug, Clone, Copy, PartialEq)]
        pub struct $name(pub f64);

        impl $name {
            pub fn si(self) -> f64 {
                self.0
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                match Raw::deserialize(d)? {
                    Raw::Text(s) => parse_quantity(&s, $dim).map($name).map_err(D::Error::custom),
                    Raw::Number(n) => Err(D::Error::custom(format!(
                        "{n} has no unit; write it as a string such as \"{}\"",
                        example($dim)
                    ))),
                }
            }
        }
    };
}

quantity!(Length, Dimension::Length);
quantity!(Area, Dimension::Area);
quantity!(Time, Dimension::Time);
quantity!(Mass, Dimension::Mass);
quantity!(Temperature, Dimension::Temperature);
quantity!(Rate, Dimension::Rate);
quantity!(FluxDensity, Dimension::FluxDensity);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn converts_to_si() {
        assert_eq!(parse_quantity("1064 nm", Dimension::Length).unwrap(), 1.064e-6);
        assert_eq!(parse_quantity(" 2.5   um ", Dimension::Length).unwrap(), 2.5e-6);
        assert_eq!(parse_quantity("1.5e3 nm", Dimension::Length).unwrap(), 1.5e-6);
        assert_eq!(parse_quantity("3 min", Dimension::Time).unwrap(), 180.0);
        assert_eq!(
            parse_quantity("2 u", Dimension::Mass).unwrap(),
            2.0 * 1.660_539_066_60e-27
        );
        assert_eq!(parse_quantity("1e-12 m^2", Dimension::Area).unwrap(), 1e-12);
        assert_eq!(parse_quantity("1e14 m^-2  s^-1", Dimension::FluxDensity).unwrap(), 1e14);
        assert_eq!(parse_quantity("100 K", Dimension::Temperature).unwrap(), 100.0);
    }

    #[test]
    fn rejects_missing_or_foreign_units() {
        assert!(parse_quantity("1064", Dimension::Length)
            .unwrap_err()
            .contains("no unit"));
        assert!(parse_quantity("1 s", Dimension::Length)
            .unwrap_err()
            .contains("unknown length unit"));
        assert!(parse_quantity("abc nm", Dimension::Length).is_err());
        assert!(parse_quantity("inf nm", Dimension::Length).is_err());
    }

    #[test]
    fn coupling_power_is_checked() {
        assert_eq!(parse_length_power("3e-30 m^2", 2).unwrap(), 3e-30);
        assert_eq!(parse_length_power("4 m^-2", -2).unwrap(), 4.0);
        assert!(parse_length_power("3e-30 m^2", -2).is_err());
    }

    #[test]
    fn bare_numbers_are_rejected_in_toml() {
        #[derive(serde::Deserialize)]
        struct T {
            #[allow(dead_code)]
            x: Length,
        }
        let err = toml::from_str::<T>("x = 1064").err().unwrap().to_string();
        assert!(err.contains("has no unit"), "{err}");
        let ok: T = toml::from_str("x = \"1 mm\"").unwrap();
        assert_eq!(ok.x.si(), 1e-3);
    }
}
