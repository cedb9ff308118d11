//! Integer-order Bessel functions of the first kind.

use crate::error::{domain, Result};
use crate::scalar::Real;

pub const BESSEL_MAX_ORDER: u32 = 10_000;
pub const BESSEL_MAX_ARG: f64 = 1.0e4;

// Power series below this argument, Miller's downward recurrence above.
const SERIES_BELOW: f64 = 1.0;

fn check<T: Real>(n: u32, x: T) -> Result<()> {
    if n > BESSEL_MAX_ORDER {
        return Err(domain(format!("Bessel order {n} exceeds {BESSEL_MAX_ORDER}")));
    }
    if !x.is_finite() || x < T::zero() || x > T::lit(BESSEL_MAX_ARG) {
        return Err(domain(format!(
            "Bessel argument must lie in [0, {BESSEL_MAX_ARG:e}], got {x}"
        )));
    }
    Ok(())
}

/// `J_n(x) = Σ_k (−1)^k (x/2)^{2k+n} / (k! (n+k)!)`.
fn power_series<T: Real>(n: u32, x: T) -> T {
    let half = x * T::lit(0.5);
    let mut lead = T::one();
    for k in 1..=n {
        lead = lead * half / T::from_u32(k).unwrap();
    }
    if lead == T::zero() {
        return lead;
    }
    let q = -half * half;
    let mut term = T::one();
    let mut sum = T::one();
    let nn = T::from_u32(n).unwrap();
    for k in 1..200u32 {
        let kk = T::from_u32(k).unwrap();
        term = term * q / (kk * (nn + kk));
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// Starting index for the downward recurrence: far enough past both `n` and the turning point
/// `x` that `J_start(x)` is negligible.
fn miller_start<T: Real>(nmax: u32, x: T) -> u32 {
    let xf = x.to_f64_lossy();
    let top = f64::from(nmax).max(xf);
    let start = top + 30.0 + 15.0 * top.cbrt();
    let start = start.ceil() as u32;
    start + (start % 2)
}

/// Miller's algorithm: recur `J_{k−1} = (2k/x) J_k − J_{k+1}` downward from a negligible start,
/// then normalise with `J₀ + 2 Σ J_{2k} = 1`. Fills `out[k] = J_k(x)` for `k ≤ nmax`.
fn miller<T: Real>(nmax: u32, x: T, out: &mut [T]) {
    let start = miller_start(nmax, x);
    let big = T::max_value().sqrt();
    let shrink = T::one() / big;
    let two_over_x = T::lit(2.0) / x;

    let mut above = T::zero();
    let mut current = T::min_positive_value().sqrt();
    let mut norm = T::zero();
    let mut k = start;
    loop {
        if k <= nmax {
            out[k as usize] = current;
        }
        if k.is_multiple_of(2) {
            norm = norm + if k == 0 { current } else { current + current };
        }
        if k == 0 {
            break;
        }
        let below = T::from_u32(k).unwrap() * two_over_x * current - above;
        above = current;
        current = below;
        k -= 1;
        if current.abs() > big {
            current = current * shrink;
            above = above * shrink;
            norm = norm * shrink;
            for v in out.iter_mut().skip(k as usize + 1) {
                *v = *v * shrink;
            }
        }
    }
    for v in out.iter_mut() {
        *v = *v / norm;
    }
}

/// `J_n(x)` for `0 ≤ n ≤ 10⁴`, `0 ≤ x ≤ 10⁴`.
pub fn bessel_jn<T: Real>(n: u32, x: T) -> Result<T> {
    check(n, x)?;
    if x == T::zero() {
        return Ok(if n == 0 { T::one() } else { T::zero() });
    }
    if x < T::lit(SERIES_BELOW) {
        return Ok(power_series(n, x));
    }
    let mut out = vec![T::zero(); n as usize + 1];
    miller(n, x, &mut out);
    Ok(out[n as usize])
}

/// `[J_0(x), J_1(x), …, J_nmax(x)]` from a single recurrence pass.
pub fn bessel_jn_sequence<T: Real>(nmax: u32, x: T) -> Result<Vec<T>> {
    check(nmax, x)?;
    let mut out = vec![T::zero(); nmax as usize + 1];
    if x == T::zero() {
        out[0] = T::one();
        return Ok(out);
    }
    miller(nmax, x, &mut out);
    Ok(out)
}
