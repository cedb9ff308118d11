//! One function per subcommand. Each returns the process exit code on success.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use goldilocks::interferometer::{efficiency, goldilocks_search, signal_map, Criterion, PhaseModel, SearchOptions};
use goldilocks::kernels::kernel;
use goldilocks::physics::{
    effective_flux, localization_rate, rutherford_prefactor, thermal_wavenumber, Beam, CrossSection,
};
use goldilocks::validation::{run_validation, Fault, ValidationConfig};
use goldilocks::{AngularShape, Error, KernelOptions, Method};
use num_complex::Complex;
use rayon::prelude::*;
use serde_json::json;

use crate::config::RunConfig;
use crate::output::{csv_writer, curves_svg, heatmap_svg, num, write_json, write_text, Series};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NO_OPTIMUM: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;

const TAU: f64 = std::f64::consts::TAU;

/// Options after merging flags, environment, config file and defaults.
#[derive(Debug, Clone)]
pub struct Settings {
    pub method: Method,
    pub mode: Option<AngularShape>,
    pub seed: u64,
    pub opts: KernelOptions,
    pub out: Option<PathBuf>,
}

impl Settings {
    fn shape(&self) -> AngularShape {
        self.mode.unwrap_or(AngularShape::Directional)
    }

    fn out(&self) -> Option<&Path> {
        self.out.as_deref()
    }
}

/// Maps a library error anywhere in the chain to an exit code.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::NoOptimum(_)) => EXIT_NO_OPTIMUM,
        Some(Error::Convergence { .. }) => EXIT_CONVERGENCE,
        _ => EXIT_USAGE,
    }
}

struct CurveRow {
    dx_over_lambda: f64,
    z: f64,
    shape: AngularShape,
    value: Complex<f64>,
    method: Method,
    err: f64,
    status: &'static str,
}

fn curve_row(dx_over_lambda: f64, shape: AngularShape, s: &Settings) -> CurveRow {
    let z = TAU * dx_over_lambda;
    let mut row = CurveRow {
        dx_over_lambda,
        z,
        shape,
        value: Complex::new(f64::NAN, f64::NAN),
        method: s.method,
        err: f64::NAN,
        status: "ok",
    };
    match kernel(z, shape, s.method, &s.opts) {
        Ok(k) => {
            row.value = k.value;
            row.method = k.method;
            row.err = k.abs_error_estimate;
        }
        Err(Error::Convergence {
            best_re,
            best_im,
            abs_error,
            ..
        }) => {
            row.value = Complex::new(best_re, best_im);
            row.err = abs_error;
            row.status = "not_converged";
        }
        Err(_) => row.status = "domain_error",
    }
    row
}

pub fn curve(cfg: &RunConfig, s: &Settings, svg: Option<&Path>) -> Result<i32> {
    let grid = cfg.curve.dx_over_lambda.resolve("curve.dx_over_lambda")?;
    let shapes: Vec<AngularShape> = match s.mode {
        Some(m) => vec![m],
        None => cfg
            .curve
            .modes
            .iter()
            .map(|m| m.parse().map_err(anyhow::Error::msg))
            .collect::<Result<_>>()?,
    };
    if shapes.is_empty() {
        bail!("curve.modes is empty");
    }

    let rows: Vec<CurveRow> = grid
        .par_iter()
        .map(|&r| shapes.iter().map(|&m| curve_row(r, m, s)).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    let mut w = csv_writer(
        s.out(),
        "curve",
        &[
            "dx_over_lambda",
            "z",
            "mode",
            "re_kernel",
            "im_kernel",
            "method",
            "err_estimate",
            "status",
        ],
    )?;
    for r in &rows {
        w.write_record([
            num(r.dx_over_lambda),
            num(r.z),
            r.shape.as_str().to_string(),
            num(r.value.re),
            num(r.value.im),
            r.method.as_str().to_string(),
            num(r.err),
            r.status.to_string(),
        ])?;
    }
    w.flush()?;

    if let Some(path) = svg.or(cfg.curve.svg.as_deref()) {
        let mut series = Vec::new();
        for (shape, re_colour, im_colour) in [
            (AngularShape::Directional, "#c0392b", "#2471a3"),
            (AngularShape::Isotropic, "#e59866", "#7fb3d5"),
        ] {
            let pick = |f: fn(&CurveRow) -> f64| -> Vec<(f64, f64)> {
                rows.iter()
                    .filter(|r| r.shape == shape)
                    .map(|r| (r.dx_over_lambda, f(r)))
                    .collect()
            };
            if shapes.contains(&shape) {
                series.push(Series {
                    label: if shape == AngularShape::Directional {
                        "Re F (directional)"
                    } else {
                        "Re F (isotropic)"
                    },
                    colour: re_colour,
                    points: pick(|r| r.value.re),
                });
                series.push(Series {
                    label: if shape == AngularShape::Directional {
                        "Im F (directional)"
                    } else {
                        "Im F (isotropic)"
                    },
                    colour: im_colour,
                    points: pick(|r| r.value.im),
                });
            }
        }
        write_text(path, &curves_svg(&series, true, "dx/lambda", "F_ang"))?;
    }

    let failed = rows.iter().filter(|r| r.status != "ok").count();
    if failed > 0 {
        eprintln!("warning: {failed} of {} rows did not converge", rows.len());
        return Ok(EXIT_CONVERGENCE);
    }
    Ok(EXIT_OK)
}

pub fn signal_map_cmd(cfg: &RunConfig, s: &Settings, svg: Option<&Path>, phase_model: Option<&str>) -> Result<i32> {
    let (beam, xs) = cfg.environment.build().context("[environment]")?;
    let ratios = cfg.signal_map.dx_over_lambda.resolve("signal_map.dx_over_lambda")?;
    let times = cfg.signal_map.times.resolve("signal_map.times")?;
    let model = match phase_model.unwrap_or(&cfg.signal_map.phase_model) {
        "kernel" => PhaseModel::Kernel,
        "linear" => PhaseModel::Linear,
        other => bail!("signal_map.phase_model must be `kernel` or `linear`, got `{other}`"),
    };
    let map = signal_map(&beam, &xs, s.shape(), &ratios, &times, s.method, &s.opts, model)?;

    let mut w = csv_writer(s.out(), "signal_map", &["dx_over_lambda", "t_s", "A", "phi", "signal"])?;
    for (i, &r) in ratios.iter().enumerate() {
        for (j, &t) in times.iter().enumerate() {
            let p = map.at(i, j);
            w.write_record([num(r), num(t), num(p.amplitude), num(p.phase), num(p.signal)])?;
        }
    }
    w.flush()?;

    if let Some(path) = svg.or(cfg.signal_map.svg.as_deref()) {
        let values: Vec<Vec<f64>> = map.rows().map(|row| row.iter().map(|p| p.signal).collect()).collect();
        write_text(path, &heatmap_svg(&ratios, &times, &values, "dx/lambda", "t [s]"))?;
    }
    Ok(EXIT_OK)
}

pub fn photon_eff(cfg: &RunConfig, s: &Settings) -> Result<i32> {
    let pc = &cfg.photon_eff;
    let xs = pc.cross_section.build().context("[photon_eff.cross_section]")?;
    let ratios = pc.dx_over_lambda.resolve("photon_eff.dx_over_lambda")?;
    let (lambda, t) = (pc.wavelength.si(), pc.time.si());
    if pc.areas.is_empty() {
        bail!("photon_eff.areas is empty");
    }

    let mut w = csv_writer(s.out(), "photon_eff", &["dx_over_lambda", "A_p_m2", "eta"])?;
    for area in &pc.areas {
        let beam = Beam::photon_profile(lambda, area.si())?;
        let etas: Vec<f64> = ratios
            .par_iter()
            .map(|&r| {
                let rate = localization_rate(&beam, &xs, r * lambda, s.shape(), s.method, &s.opts)?;
                efficiency(&rate, t)
            })
            .collect::<goldilocks::Result<_>>()?;
        for (&r, eta) in ratios.iter().zip(etas) {
            w.write_record([num(r), num(area.si()), num(eta)])?;
        }
    }
    w.flush()?;
    Ok(EXIT_OK)
}

pub fn ion(cfg: &RunConfig, s: &Settings) -> Result<i32> {
    let ic = &cfg.ion;
    let (temperature, mass, flux) = (ic.temperature.si(), ic.mass.si(), ic.flux_density.si());
    let prefactor = rutherford_prefactor(ic.atom_charge, ic.particle_charge, temperature, mass)?;
    let beam = Beam::thermal(mass, temperature, flux)?;
    let xs = CrossSection::Rutherford {
        atom_charge: ic.atom_charge,
        particle_charge: ic.particle_charge,
        mass,
    };
    let rate = effective_flux(&beam, &xs)?;
    let q = thermal_wavenumber(mass, temperature)?;
    let zone = goldilocks_search(
        &beam,
        &xs,
        s.shape(),
        1.0,
        Criterion::MaxAbsImKernel,
        s.method,
        &s.opts,
        &SearchOptions::default(),
    )?;
    let phase_per_event = -kernel(zone.z_star, s.shape(), s.method, &s.opts)?.value.im;
    write_json(
        s.out(),
        &json!({
            "temperature_K": temperature,
            "mass_kg": mass,
            "atom_charge": ic.atom_charge,
            "particle_charge": ic.particle_charge,
            "flux_density_per_m2_s": flux,
            "prefactor_m2": prefactor,
            "effective_rate_per_s": rate,
            "thermal_wavenumber_per_m": q,
            "thermal_wavelength_m": TAU / q,
            "z_star": zone.z_star,
            "delta_x_star_m": zone.delta_x_star(),
            "delta_x_star_over_lambda": zone.dx_over_lambda_star(),
            "phase_per_event_rad": phase_per_event,
            "phase_rate_at_star_rad_per_s": rate * phase_per_event,
        }),
    )?;
    Ok(EXIT_OK)
}

pub fn optimize(cfg: &RunConfig, s: &Settings) -> Result<i32> {
    let oc = &cfg.optimize;
    let (beam, xs) = cfg.environment.build().context("[environment]")?;
    let criterion = match oc.criterion.as_str() {
        "max_abs_im_kernel" => Criterion::MaxAbsImKernel,
        "signal_threshold" => Criterion::SignalThreshold(oc.threshold),
        other => bail!("optimize.criterion must be `max_abs_im_kernel` or `signal_threshold`, got `{other}`"),
    };
    let search = SearchOptions {
        z_min: oc.z_min,
        z_max: oc.z_max,
        grid_points: oc.grid_points,
        window_fraction: oc.threshold,
        ..SearchOptions::default()
    };
    let shape = s.shape();
    match goldilocks_search(&beam, &xs, shape, oc.time.si(), criterion, s.method, &s.opts, &search) {
        Ok(zone) => {
            let (wz0, wz1) = zone.window;
            let (wr0, wr1) = zone.window_dx_over_lambda();
            write_json(
                s.out(),
                &json!({
                    "criterion": oc.criterion,
                    "mode": shape.as_str(),
                    "method": s.method.as_str(),
                    "time_s": oc.time.si(),
                    "wavelength_m": beam.reference_wavelength(),
                    "z_star": zone.z_star,
                    "dx_over_lambda_star": zone.dx_over_lambda_star(),
                    "delta_x_star_m": zone.delta_x_star(),
                    "value_at_star": zone.value_at_star,
                    "window_fraction": zone.window_fraction,
                    "window_z": [wz0, wz1],
                    "window_dx_over_lambda": [wr0, wr1],
                }),
            )?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            let (kind, code) = match &e {
                Error::NoOptimum(_) => ("no_optimum", EXIT_NO_OPTIMUM),
                Error::Convergence { .. } => ("convergence", EXIT_CONVERGENCE),
                _ => ("domain", EXIT_USAGE),
            };
            write_json(
                s.out(),
                &json!({ "error": { "kind": kind, "exit_code": code, "message": e.to_string(), "mode": shape.as_str() } }),
            )?;
            eprintln!("error: {e}");
            Ok(code)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

pub fn validate(cfg: &RunConfig, s: &Settings, format: ReportFormat, fault: Option<Fault>) -> Result<i32> {
    let vc = ValidationConfig {
        seed: s.seed,
        mc_samples: cfg.validate.mc_samples,
        random_cases: cfg.validate.random_cases,
        fault,
    };
    let report = run_validation(&vc);
    match format {
        ReportFormat::Text => {
            let mut w = crate::output::sink(s.out())?;
            w.write_all(report.render_text().as_bytes())?;
            w.flush()?;
        }
        ReportFormat::Json => write_json(s.out(), &serde_json::to_value(&report)?)?,
    }
    if report.all_passed() {
        Ok(EXIT_OK)
    } else {
        for c in report.failures() {
            eprintln!("invariant violated: {}", c.name);
        }
        Ok(EXIT_VALIDATION)
    }
}
