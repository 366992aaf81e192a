//! Arithmetic on truncated coefficient vectors of `Q[eps]/(eps^k)`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub(super) fn add(x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub(super) fn mul(x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
    let k = x.len();
    let mut out = vec![BigRational::zero(); k];
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().take(k - i).enumerate() {
            if !b.is_zero() {
                out[i + j] += a * b;
            }
        }
    }
    out
}

/// `x = c (1 + n)` with `n` nilpotent, so `x^-1 = c^-1 (1 - n + n^2 - ...)`,
/// a sum that stops after `k` terms.
pub(super) fn inverse(x: &[BigRational]) -> Result<Vec<BigRational>> {
    let k = x.len();
    if x[0].is_zero() {
        return Err(Error::NotAUnit(
            "dual number with zero constant term is nilpotent".into(),
        ));
    }
    let c_inv = x[0].recip();
    let mut minus_n: Vec<BigRational> = x.iter().map(|a| -(a * &c_inv)).collect();
    minus_n[0] = BigRational::zero();

    let mut term = vec![BigRational::zero(); k];
    term[0] = BigRational::one();
    let mut sum = term.clone();
    for _ in 1..k {
        term = mul(&term, &minus_n);
        sum = add(&sum, &term);
    }
    Ok(sum.into_iter().map(|a| a * &c_inv).collect())
}
