//! Deformation of a loop over a graded polynomial ring onto its degree-0 part.

use crate::error::{Error, Result};
use crate::loops::{verify_homotopy, verify_loop, HomotopyCert, LoopRep};
use crate::matrix::Mat2;
use crate::poly::MultiPoly;

use super::ensure_fresh;

/// Multiplies the degree-`d` part of `p` (total degree in `graded`) by `t^d`.
pub fn swan_weibel_map(p: &MultiPoly, graded: &[&str], t: &str) -> Result<MultiPoly> {
    if p.has_var(t) {
        return Err(Error::Precondition(format!("`{t}` already occurs in {p}")));
    }
    let ring = p.ring().clone();
    Ok(p.map_terms(|powers, c| {
        let d: u32 = powers
            .iter()
            .filter(|(v, _)| graded.contains(&v.as_str()))
            .map(|(_, e)| *e)
            .sum();
        let mut all: Vec<(&str, u32)> = powers.iter().map(|(v, e)| (v.as_str(), *e)).collect();
        all.push((t, d));
        MultiPoly::monomial(&ring, &all, c.clone())
    }))
}

/// For a loop `b` in `X` with coefficients in the graded variables, the
/// certificate `gamma(X, T)` from the degree-0 loop (at `T = 0`) to `b`
/// (at `T = 1`), together with that degree-0 loop.
///
/// Each entry is first written as `delta + X(X - 1) f` and the map is applied
/// to `f`.
pub fn graded_homotopy(b: &LoopRep, graded: &[&str], t: &str) -> Result<(HomotopyCert, LoopRep)> {
    let x = b.loop_var();
    if graded.contains(&x) || graded.contains(&t) || t == x {
        return Err(Error::Precondition("loop, homotopy and graded variables must be distinct".into()));
    }
    ensure_fresh(t, &[b.matrix()])?;
    let ring = b.ring();
    let one = MultiPoly::one(ring);
    let xv = MultiPoly::var(ring, x);
    let vanish = &xv * &(&xv - &one);
    let id = Mat2::identity(ring);

    let mut entries = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            let offset = b.matrix().get(i, j) - id.get(i, j);
            let f = offset.exact_div(&vanish).ok_or_else(|| {
                Error::Internal(format!("entry {offset} is not divisible by {vanish}"))
            })?;
            let big_f = swan_weibel_map(&f, graded, t)?;
            entries.push(id.get(i, j) + &(&vanish * &big_f));
        }
    }
    let [e11, e12, e21, e22]: [MultiPoly; 4] = entries.try_into().expect("four entries");
    let gamma = Mat2::new(e11, e12, e21, e22)?;

    let beta0 = gamma.at(t, 0);
    let cert = HomotopyCert::new(gamma, x, t, beta0.clone(), b.matrix().clone());
    let mut r = verify_homotopy(&cert);
    let leftover: Vec<String> = beta0
        .vars()
        .into_iter()
        .filter(|v| graded.contains(&v.as_str()))
        .collect();
    r.check("degree-zero", leftover.is_empty(), || {
        format!("start still involves {}", leftover.join(", "))
    });
    if !r.is_ok() {
        return Err(Error::Internal(r.to_string()));
    }
    let beta0 = verify_loop(&beta0, x).map_err(|e| Error::Internal(e.to_string()))?;
    Ok((cert, beta0))
}
