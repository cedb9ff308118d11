//! Stochastic estimate of `F_ang(z)` used as an independent oracle.
//!
//! Samples are drawn in fixed-size shards. Shard `k` uses ChaCha8 seeded from the user seed with
//! stream `k`, every shard is reduced by pairwise summation, and shard totals are combined by a
//! fixed pairwise tree. Transcendentals come from `libm`, so the result is bit-identical for a
//! given `(z, shape, n_samples, seed)` regardless of thread count or platform.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::kernels::{AngularShape, SHAPE_WEIGHT};

/// Samples per shard.
pub const SHARD_SIZE: usize = 1 << 14;
/// Smallest accepted sample count.
pub const MIN_SAMPLES: u64 = 1_000;

/// Sample mean of `F_ang(z)` with per-component standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: Complex<f64>,
    pub stderr_re: f64,
    pub stderr_im: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl McEstimate {
    /// Largest deviation from `value` in units of the standard error, per component.
    /// Components with zero standard error must match exactly.
    pub fn sigmas_from(&self, value: Complex<f64>) -> (f64, f64) {
        let score = |d: f64, s: f64| {
            if s > 0.0 {
                d.abs() / s
            } else if d == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        };
        (
            score(self.mean.re - value.re, self.stderr_re),
            score(self.mean.im - value.im, self.stderr_im),
        )
    }
}

/// Inverts the CDF of `(3/8)(1 + u²)` on `[−1, 1]`: solves `u³ + 3u + 4 − 8p = 0`.
///
/// The depressed cubic has the single real root `u = A − 1/A`, `A = ∛(−c/2 + √(c²/4 + 1))`.
pub fn sample_cos_theta(p: f64) -> f64 {
    let c = 4.0 - 8.0 * p;
    let a = libm::cbrt(-0.5 * c + libm::sqrt(0.25 * c * c + 1.0));
    a - 1.0 / a
}

fn pairwise(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        values.iter().fold(0.0, |acc, v| acc + v)
    } else {
        let mid = values.len() / 2;
        pairwise(&values[..mid]) + pairwise(&values[mid..])
    }
}

fn pairwise4(values: &[[f64; 4]]) -> [f64; 4] {
    if values.len() == 1 {
        return values[0];
    }
    let mid = values.len() / 2;
    let (a, b) = (pairwise4(&values[..mid]), pairwise4(&values[mid..]));
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn shard_rng(seed: u64, shard: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64);
    rng
}

/// `1 − e^{ix}` via `libm`.
fn one_minus_expi(x: f64) -> Complex<f64> {
    let s = libm::sin(0.5 * x);
    Complex::new(2.0 * s * s, -libm::sin(x))
}

fn directional_sample(rng: &mut ChaCha8Rng, z: f64) -> Result<Complex<f64>> {
    let u = sample_cos_theta(rng.random::<f64>());
    if !(u.abs() <= 1.0 + 1e-12) {
        return Err(Error::Sampling(format!("cos θ' = {u} outside [−1, 1]")));
    }
    let u = u.clamp(-1.0, 1.0);
    Ok(one_minus_expi(z * (1.0 - u)) * SHAPE_WEIGHT)
}

fn isotropic_sample(rng: &mut ChaCha8Rng, z: f64) -> Complex<f64> {
    let mu_in = 2.0 * rng.random::<f64>() - 1.0;
    let mu_out = 2.0 * rng.random::<f64>() - 1.0;
    let phi_in = std::f64::consts::TAU * rng.random::<f64>();
    let phi_out = std::f64::consts::TAU * rng.random::<f64>();
    let sin_in = libm::sqrt((1.0 - mu_in * mu_in).max(0.0));
    let sin_out = libm::sqrt((1.0 - mu_out * mu_out).max(0.0));
    let cos_angle = mu_in * mu_out + sin_in * sin_out * libm::cos(phi_in - phi_out);
    let weight = 0.5 * (1.0 + cos_angle * cos_angle);
    one_minus_expi(z * (mu_in - mu_out)) * weight
}

/// Returns `[Σ re, Σ im, Σ re², Σ im²]` over shard `shard`.
fn run_shard(z: f64, shape: AngularShape, seed: u64, shard: usize, len: usize) -> Result<[f64; 4]> {
    let mut rng = shard_rng(seed, shard);
    let mut re = Vec::with_capacity(len);
    let mut im = Vec::with_capacity(len);
    for _ in 0..len {
        let v = match shape {
            AngularShape::Directional => directional_sample(&mut rng, z)?,
            AngularShape::Isotropic => isotropic_sample(&mut rng, z),
        };
        re.push(v.re);
        im.push(v.im);
    }
    let re2: Vec<f64> = re.iter().map(|v| v * v).collect();
    let im2: Vec<f64> = im.iter().map(|v| v * v).collect();
    Ok([pairwise(&re), pairwise(&im), pairwise(&re2), pairwise(&im2)])
}

fn sharded<F>(n_samples: u64, f: F) -> Result<[f64; 4]>
where
    F: Fn(usize, usize) -> Result<[f64; 4]> + Sync,
{
    let n = n_samples as usize;
    let shards = n.div_ceil(SHARD_SIZE);
    let totals: Vec<[f64; 4]> = (0..shards)
        .into_par_iter()
        .map(|k| f(k, SHARD_SIZE.min(n - k * SHARD_SIZE)))
        .collect::<Result<_>>()?;
    Ok(pairwise4(&totals))
}

fn stderr(sum: f64, sum_sq: f64, n: f64) -> f64 {
    let mean = sum / n;
    let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    (var / n).sqrt()
}

/// Monte Carlo estimate of `F_ang(z)`.
///
/// Directional: `u = cos θ'` from `(3/8)(1+u²)` by inverse CDF, averaging `(2/3)(1 − e^{iz(1−u)})`.
/// Isotropic: both directions uniform on the sphere, averaging `½(1+cos²Θ)(1 − e^{iz(μ−μ')})`.
pub fn mc_kernel(z: f64, shape: AngularShape, n_samples: u64, seed: u64) -> Result<McEstimate> {
    if !(z.is_finite() && z >= 0.0) {
        return Err(domain(format!("z must be finite and non-negative, got {z}")));
    }
    if n_samples < MIN_SAMPLES {
        return Err(domain(format!("need at least {MIN_SAMPLES} samples, got {n_samples}")));
    }
    let [s_re, s_im, s_re2, s_im2] = sharded(n_samples, |k, len| run_shard(z, shape, seed, k, len))?;
    let n = n_samples as f64;
    Ok(McEstimate {
        mean: Complex::new(s_re / n, s_im / n),
        stderr_re: stderr(s_re, s_re2, n),
        stderr_im: stderr(s_im, s_im2, n),
        n_samples,
        seed,
    })
}

/// Empirical first and second moments of the `cos θ'` sampler against their exact values
/// `E[u] = 0`, `E[u²] = (3/8)(2/3 + 2/5) = 2/5`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentReport {
    pub n_samples: u64,
    pub seed: u64,
    pub mean_u: f64,
    pub stderr_u: f64,
    pub mean_u2: f64,
    pub stderr_u2: f64,
}

impl MomentReport {
    pub const EXPECTED_U: f64 = 0.0;
    pub const EXPECTED_U2: f64 = 0.4;

    /// Both moments within `sigmas` standard errors of the exact values.
    pub fn passes(&self, sigmas: f64) -> bool {
        (self.mean_u - Self::EXPECTED_U).abs() <= sigmas * self.stderr_u
            && (self.mean_u2 - Self::EXPECTED_U2).abs() <= sigmas * self.stderr_u2
    }
}

pub fn sampler_selftest(n_samples: u64, seed: u64) -> Result<MomentReport> {
    if n_samples < 100_000 {
        return Err(domain(format!(
            "sampler self-test needs at least 1e5 samples, got {n_samples}"
        )));
    }
    let [s1, s2, s1sq, s2sq] = sharded(n_samples, |k, len| {
        let mut rng = shard_rng(seed, k);
        let mut u = Vec::with_capacity(len);
        for _ in 0..len {
            let x = sample_cos_theta(rng.random::<f64>());
            if !(x.abs() <= 1.0 + 1e-12) {
                return Err(Error::Sampling(format!("cos θ' = {x} outside [−1, 1]")));
            }
            u.push(x.clamp(-1.0, 1.0));
        }
        let u2: Vec<f64> = u.iter().map(|x| x * x).collect();
        let u4: Vec<f64> = u2.iter().map(|x| x * x).collect();
        Ok([pairwise(&u), pairwise(&u2), pairwise(&u2), pairwise(&u4)])
    })?;
    let n = n_samples as f64;
    Ok(MomentReport {
        n_samples,
        seed,
        mean_u: s1 / n,
        stderr_u: stderr(s1, s1sq, n),
        mean_u2: s2 / n,
        stderr_u2: stderr(s2, s2sq, n),
    })
}
