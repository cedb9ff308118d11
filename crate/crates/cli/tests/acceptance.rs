//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Library-level criteria call the core crate directly; output-level criteria drive the built
//! binary. Every tolerance and runtime budget is a named constant below.

use std::process::Command;
use std::time::{Duration, Instant};

use goldilocks::interferometer::{apply_readout_gates, efficiency, signal, SpinState};
use goldilocks::kernels::{closed_form_kernel, kernel, quadrature_kernel, series_kernel};
use goldilocks::montecarlo::mc_kernel;
use goldilocks::{AngularShape, ComplexRate, KernelOptions, Method};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIN: &str = env!("CARGO_BIN_EXE_goldilocks");
const TAU: f64 = std::f64::consts::TAU;

const SEED: u64 = 20_261_019;

const C1_SLOPE_TOL: f64 = 5e-3;
const C1_Z: [f64; 3] = [1e-3, 3e-3, 1e-2];
const C1_BUDGET: Duration = Duration::from_secs(1);

const C2_Z: f64 = 1e3;
const C2_TOL: f64 = 0.01;
const C2_BUDGET: Duration = Duration::from_secs(1);

const C3_POINTS: usize = 200;
const C3_RANGE: (f64, f64) = (1e-2, 50.0);
const C3_TOL: f64 = 1e-8;
const C3_BUDGET: Duration = Duration::from_secs(10);

const C4_Z: [f64; 3] = [0.5, 2.0, 10.0];
const C4_ISOTROPIC_Z: f64 = 5.0;
const C4_SAMPLES: u64 = 1_000_000;
const C4_SIGMAS: f64 = 4.0;
const C4_BUDGET: Duration = Duration::from_secs(30);

const C5_RANGE: (f64, f64) = (0.15, 0.30);
const C5_THRESHOLD: f64 = 0.95;

const C6_CASES: usize = 1_000;
const C6_TOL: f64 = 1e-12;

const C7_CASES: usize = 10_000;
const C7_TOL: f64 = 1e-12;

const C8_PREFACTOR_SCALE: f64 = 1e-14;
const C8_RATE_SCALE: f64 = 1.0;
const C8_FACTOR: f64 = 5.0;

const C9_GRID: usize = 60_001;
const C9_SMALL_Z_TOL: f64 = 1e-2;
const C9_SATURATED_TOL: f64 = 1e-2;

type Criterion = (u32, &'static str, fn() -> Outcome, Option<Duration>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let span = (hi / lo).ln();
    (0..n).map(|i| lo * (span * i as f64 / (n - 1) as f64).exp()).collect()
}

fn cli(args: &[&str]) -> (Option<i32>, String) {
    let mut cmd = Command::new(BIN);
    for (key, _) in std::env::vars() {
        if key.starts_with("GOLDILOCKS_") {
            cmd.env_remove(key);
        }
    }
    let out = cmd.args(args).output().expect("binary runs");
    (out.status.code(), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().expect("numeric CSV")).collect())
        .collect()
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).expect("JSON output")
}

fn long_wavelength_law() -> Outcome {
    // Least-squares slopes through the origin: Im ≈ a z, Re ≈ b z².
    let (mut im_zz, mut zz, mut re_z2, mut z4) = (0.0, 0.0, 0.0, 0.0);
    for z in C1_Z {
        let v = closed_form_kernel(z).unwrap().value;
        im_zz += v.im * z;
        zz += z * z;
        re_z2 += v.re * z * z;
        z4 += z.powi(4);
    }
    let (a, b) = (im_zz / zz, re_z2 / z4);
    let (ea, eb) = ((a / (-2.0 / 3.0) - 1.0).abs(), (b / (7.0 / 15.0) - 1.0).abs());
    outcome(
        ea <= C1_SLOPE_TOL && eb <= C1_SLOPE_TOL,
        format!("Im slope {a:.6} (rel err {ea:.1e}), Re curvature {b:.6} (rel err {eb:.1e}), tol {C1_SLOPE_TOL:.1e}"),
    )
}

fn short_wavelength_law() -> Outcome {
    let opts = KernelOptions::default();
    let mut worst: f64 = 0.0;
    for method in [Method::ClosedForm, Method::Quadrature, Method::JacobiAnger] {
        let v = kernel(C2_Z, AngularShape::Directional, method, &opts).unwrap().value;
        worst = worst.max((v.re - 2.0 / 3.0).abs()).max(v.im.abs());
    }
    outcome(
        worst <= C2_TOL,
        format!("max(|Re-2/3|, |Im|) = {worst:.2e} at z = {C2_Z} over closed form, quadrature, series; tol {C2_TOL}"),
    )
}

fn cross_method_agreement() -> Outcome {
    let (mut quad, mut series): (f64, f64) = (0.0, 0.0);
    for z in log_grid(C3_RANGE.0, C3_RANGE.1, C3_POINTS) {
        let closed = closed_form_kernel(z).unwrap().value;
        quad = quad.max((closed - quadrature_kernel(z, 1e-10).unwrap().value).norm());
        series = series.max((closed - series_kernel(z, 1e-12).unwrap().value).norm());
    }
    outcome(
        quad <= C3_TOL && series <= C3_TOL,
        format!("max |closed-quadrature| = {quad:.2e}, max |closed-series| = {series:.2e}; tol {C3_TOL:.0e}"),
    )
}

fn monte_carlo_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    for z in C4_Z {
        let est = mc_kernel(z, AngularShape::Directional, C4_SAMPLES, SEED).unwrap();
        let (sr, si) = est.sigmas_from(closed_form_kernel(z).unwrap().value);
        worst = worst.max(sr).max(si);
    }
    let iso = mc_kernel(C4_ISOTROPIC_Z, AngularShape::Isotropic, C4_SAMPLES, SEED).unwrap();
    let iso_sigmas = iso.mean.im.abs() / iso.stderr_im;
    outcome(
        worst <= C4_SIGMAS && iso_sigmas <= C4_SIGMAS,
        format!("directional worst {worst:.2} stderr, isotropic |Im| {iso_sigmas:.2} stderr; limit {C4_SIGMAS}"),
    )
}

fn goldilocks_optimum() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("opt.toml");
    std::fs::write(
        &cfg,
        format!("[optimize]\ncriterion = \"signal_threshold\"\nthreshold = {C5_THRESHOLD}\n"),
    )
    .unwrap();
    let (code_a, text_a) = cli(&["optimize"]);
    let (code_b, text_b) = cli(&["optimize", "--config", cfg.to_str().unwrap()]);
    if code_a != Some(0) || code_b != Some(0) {
        return outcome(false, format!("optimize exited with {code_a:?} / {code_b:?}"));
    }
    let star = json(&text_a)["dx_over_lambda_star"].as_f64().unwrap();
    let window = json(&text_b)["window_dx_over_lambda"].clone();
    let (w0, w1) = (window[0].as_f64().unwrap(), window[1].as_f64().unwrap());
    outcome(
        (C5_RANGE.0..=C5_RANGE.1).contains(&star) && w1 > w0,
        format!(
            "dx*/lambda = {star:.4} in [{}, {}]; signal window at {C5_THRESHOLD} = [{w0:.4}, {w1:.4}]",
            C5_RANGE.0, C5_RANGE.1
        ),
    )
}

fn gate_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut diag, mut sig): (f64, f64) = (0.0, 0.0);
    for _ in 0..C6_CASES {
        let a = 2.0 * rng.random::<f64>();
        let b = 2.0 - a;
        let amp = (a * b).sqrt() * rng.random::<f64>();
        let phi = TAU * (rng.random::<f64>() - 0.5);
        let out = apply_readout_gates(&SpinState::from_parts(a, b, amp, phi).unwrap());
        diag = diag
            .max((out.population(0) - (a + b + 2.0 * amp * phi.sin()) / 4.0).abs())
            .max((out.population(1) - (a + b - 2.0 * amp * phi.sin()) / 4.0).abs());

        let unit_amp = rng.random::<f64>();
        let unit = apply_readout_gates(&SpinState::from_parts(1.0, 1.0, unit_amp, phi).unwrap());
        sig = sig.max((signal(&unit) - unit_amp * phi.sin()).abs());
    }
    outcome(
        diag <= C6_TOL && sig <= C6_TOL,
        format!("{C6_CASES} states: diagonal err {diag:.1e}, signal err {sig:.1e}; tol {C6_TOL:.0e}"),
    )
}

fn efficiency_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let (mut flip, mut outside): (f64, usize) = (0.0, 0);
    for _ in 0..C7_CASES {
        let t = 0.01 + 10.0 * rng.random::<f64>();
        flip = flip.max((efficiency(&ComplexRate::new(0.0, std::f64::consts::PI / t), t).unwrap() - 1.0).abs());
        let rate = ComplexRate::new(20.0 * rng.random::<f64>(), 200.0 * (rng.random::<f64>() - 0.5));
        let eta = efficiency(&rate, t).unwrap();
        if !(0.0..=1.0).contains(&eta) {
            outside += 1;
        }
    }
    outcome(
        flip <= C7_TOL && outside == 0,
        format!(
            "|eta(0, pi/t) - 1| <= {flip:.1e} (tol {C7_TOL:.0e}); {outside} of {C7_CASES} random eta outside [0, 1]"
        ),
    )
}

fn ion_numbers() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("ion.toml");
    std::fs::write(&cfg, "[ion]\nparticle_charge = 2\n").unwrap();
    let (c1, one) = cli(&["ion"]);
    let (c2, two) = cli(&["ion", "--config", cfg.to_str().unwrap()]);
    if c1 != Some(0) || c2 != Some(0) {
        return outcome(false, format!("ion exited with {c1:?} / {c2:?}"));
    }
    let within = |x: f64, scale: f64| x / scale <= C8_FACTOR && scale / x <= C8_FACTOR;
    let (one, two) = (json(&one), json(&two));
    let p1 = one["prefactor_m2"].as_f64().unwrap();
    let p2 = two["prefactor_m2"].as_f64().unwrap();
    let rate = one["effective_rate_per_s"].as_f64().unwrap();
    outcome(
        within(p1, C8_PREFACTOR_SCALE) && within(p2, 4.0 * C8_PREFACTOR_SCALE) && within(rate, C8_RATE_SCALE),
        format!("prefactor {p1:.3e} m^2 (Z'=1), {p2:.3e} m^2 (Z'=2); rate {rate:.3} 1/s; factor {C8_FACTOR}"),
    )
}

fn figure_shapes() -> Outcome {
    let mut problems = Vec::new();
    let grid = log_grid(1e-3, 1e3, C9_GRID);
    let values: Vec<_> = grid.iter().map(|&z| closed_form_kernel(z).unwrap().value).collect();

    let v0 = values[0];
    if (v0.re / (grid[0] * grid[0]) / (7.0 / 15.0) - 1.0).abs() > C9_SMALL_Z_TOL {
        problems.push("Re is not quadratic at small z".to_string());
    }
    let re_turn = (1..values.len())
        .find(|&i| values[i].re < values[i - 1].re)
        .unwrap_or(values.len());
    if !(1.0..4.0).contains(&grid[re_turn - 1]) {
        problems.push(format!("Re stops rising at z = {:.3}", grid[re_turn - 1]));
    }

    let im: Vec<f64> = values.iter().map(|v| v.im.abs()).collect();
    let peak = (0..im.len()).fold(0, |best, i| if im[i] > im[best] { i } else { best });
    if (1..=peak).any(|i| im[i] <= im[i - 1]) {
        problems.push("|Im| is not single-lobed before its peak".to_string());
    }
    // Octave maxima beyond the peak must fall, for |Im| and for |Re - 2/3|.
    let octave_max = |k: i32, f: &dyn Fn(usize) -> f64| {
        let (lo, hi) = (2f64.powi(k), 2f64.powi(k + 1));
        (0..grid.len())
            .filter(|&i| grid[i] >= lo && grid[i] < hi)
            .map(f)
            .fold(0.0, f64::max)
    };
    let first_octave = grid[peak].log2().floor() as i32;
    let im_env: Vec<f64> = (first_octave..9).map(|k| octave_max(k, &|i| im[i])).collect();
    let re_env: Vec<f64> = (1..9)
        .map(|k| octave_max(k, &|i| (values[i].re - 2.0 / 3.0).abs()))
        .collect();
    if im_env.windows(2).any(|w| w[1] >= w[0]) {
        problems.push(format!("|Im| envelope does not decay: {im_env:?}"));
    }
    if re_env.windows(2).any(|w| w[1] >= w[0]) || *re_env.last().unwrap() > C9_SATURATED_TOL {
        problems.push(format!("Re does not saturate: {re_env:?}"));
    }

    let (code, text) = cli(&["signal-map"]);
    let map = csv_rows(&text);
    if code != Some(0) || map.is_empty() {
        problems.push(format!("signal-map exited with {code:?}"));
    } else {
        if map.iter().any(|r| r[4].abs() > 1.0) {
            problems.push("signal outside [-1, 1]".into());
        }
        if map.iter().any(|r| r[1] == 0.0 && r[4] != 0.0) {
            problems.push("t = 0 column is not zero".into());
        }
        let best = map.iter().fold(&map[0], |b, r| if r[4] > b[4] { r } else { b });
        if !(best[0] > 0.0 && best[0] < 0.1) {
            problems.push(format!("signal maximum at dx/lambda = {}", best[0]));
        }
    }

    let (code, text) = cli(&["photon-eff"]);
    let rows = csv_rows(&text);
    let mut areas: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    areas.dedup();
    if code != Some(0) || areas.is_empty() {
        problems.push(format!("photon-eff exited with {code:?}"));
    }
    for area in &areas {
        let eta: Vec<f64> = rows.iter().filter(|r| r[1] == *area).map(|r| r[2]).collect();
        if !(1..eta.len() - 1).any(|i| eta[i] > eta[i - 1] && eta[i] > eta[i + 1]) {
            problems.push(format!("no interior efficiency maximum for A_p = {area:e}"));
        }
    }

    let detail = if problems.is_empty() {
        format!(
            "Re rises to z = {:.3} then saturates (last octave {:.1e}); |Im| peaks at z = {:.4}; map and {} photon bands ok",
            grid[re_turn - 1],
            re_env.last().unwrap(),
            grid[peak],
            areas.len()
        )
    } else {
        problems.join("; ")
    };
    outcome(problems.is_empty(), detail)
}

fn determinism() -> Outcome {
    let seed = SEED.to_string();
    let (c1, a) = cli(&["validate", "--seed", &seed]);
    let (c2, b) = cli(&["validate", "--seed", &seed]);
    outcome(
        c1 == Some(0) && c2 == Some(0) && a == b && !a.is_empty(),
        format!(
            "two validate runs: exit {c1:?}/{c2:?}, {} bytes, identical = {}",
            a.len(),
            a == b
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "long-wavelength law", long_wavelength_law, Some(C1_BUDGET)),
        (2, "short-wavelength law", short_wavelength_law, Some(C2_BUDGET)),
        (3, "cross-method agreement", cross_method_agreement, Some(C3_BUDGET)),
        (4, "Monte Carlo oracle", monte_carlo_oracle, Some(C4_BUDGET)),
        (5, "optimal separation", goldilocks_optimum, None),
        (6, "gate algebra", gate_algebra, None),
        (7, "detector efficiency", efficiency_bounds, None),
        (8, "ion numbers", ion_numbers, None),
        (9, "figure shapes", figure_shapes, None),
        (10, "determinism", determinism, None),
    ];
    let mut failed = 0;
    for (id, name, run, budget) in criteria {
        let start = Instant::now();
        let mut out = run();
        let elapsed = start.elapsed();
        let timing = match budget {
            Some(limit) => {
                if elapsed > limit {
                    out.passed = false;
                }
                format!("{:.3} s, budget {} s", elapsed.as_secs_f64(), limit.as_secs())
            }
            None => format!("{:.3} s", elapsed.as_secs_f64()),
        };
        if !out.passed {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {} {name}: {} [{timing}]",
            if out.passed { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    println!("acceptance: {}/10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
