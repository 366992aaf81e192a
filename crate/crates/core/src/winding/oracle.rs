//! Floating-point angle accumulation, kept apart from the exact path and used
//! only to cross-check it.

use std::f64::consts::PI;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};

use super::{nonvanishing_on_unit_interval, PlaneLoop, UniPoly};

/// Grids are doubled until no angle step reaches this size.
pub const MAX_STEP: f64 = PI / 2.0;
/// Largest grid tried before giving up.
pub const MAX_SAMPLES: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleResult {
    /// Accumulated angle over `2 pi`.
    pub value: f64,
    /// Number of grid intervals actually used.
    pub samples: usize,
    pub max_step: f64,
}

fn to_f64(u: &UniPoly) -> Vec<f64> {
    u.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * t + a)
}

fn accumulate(c1: &[f64], c2: &[f64], n: usize) -> (f64, f64) {
    let mut total = 0.0;
    let mut worst: f64 = 0.0;
    let mut prev = horner(c2, 0.0).atan2(horner(c1, 0.0));
    for k in 1..=n {
        let t = k as f64 / n as f64;
        let cur = horner(c2, t).atan2(horner(c1, t));
        let mut d = cur - prev;
        if d > PI {
            d -= 2.0 * PI;
        } else if d <= -PI {
            d += 2.0 * PI;
        }
        worst = worst.max(d.abs());
        total += d;
        prev = cur;
    }
    (total / (2.0 * PI), worst)
}

/// Approximate winding number on a uniform grid of at least `samples` intervals.
pub fn numeric_winding_oracle(l: &PlaneLoop, samples: usize) -> Result<OracleResult> {
    nonvanishing_on_unit_interval(l)?;
    let (u1, u2) = l.coordinates();
    let (c1, c2) = (to_f64(u1), to_f64(u2));
    let mut n = samples.max(1);
    loop {
        let (value, max_step) = accumulate(&c1, &c2, n);
        if max_step < MAX_STEP {
            return Ok(OracleResult {
                value,
                samples: n,
                max_step,
            });
        }
        if n >= MAX_SAMPLES {
            return Err(Error::RefineNeeded(format!(
                "angle step {max_step:.3} at {n} samples"
            )));
        }
        n *= 2;
    }
}

/// Sign changes of a polynomial along the same uniform grid.
pub fn sampled_sign_changes(p: &UniPoly, samples: usize) -> usize {
    let c = to_f64(p);
    let mut changes = 0;
    let mut last = 0.0f64;
    for k in 0..=samples {
        let v = horner(&c, k as f64 / samples as f64);
        if v != 0.0 {
            if last != 0.0 && (v > 0.0) != (last > 0.0) {
                changes += 1;
            }
            last = v;
        }
    }
    changes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::winding::generator_loop;

    #[test]
    fn constant_loop() {
        let l = PlaneLoop::from_strs("1", "0", "T").unwrap();
        assert_eq!(numeric_winding_oracle(&l, 16).unwrap().value, 0.0);
    }

    #[test]
    fn generator_column() {
        let l = PlaneLoop::first_column(&generator_loop()).unwrap();
        let r = numeric_winding_oracle(&l, 4096).unwrap();
        assert!((r.value.abs() - 1.0).abs() < 0.01, "{r:?}");
    }
}
