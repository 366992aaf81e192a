//! Normal forms in `base / (g)` with `g` monic in one designated variable.
//!
//! Representatives have degree below `deg_var(g)` in the designated variable.
//! Such a ring is a free module over the polynomial ring in the remaining
//! coordinates, which is what makes exact division decidable here: dividing
//! by `s` means solving a square linear system over that polynomial ring.

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

pub(super) fn check_monic(g: &MultiPoly, var: &str) -> Result<()> {
    let parts = g.split_var(var);
    if parts.len() < 2 {
        return Err(Error::InvalidDescriptor(format!(
            "relation {g} does not involve `{var}`"
        )));
    }
    let lead = parts.last().expect("nonempty");
    if !(lead.is_constant() && lead.is_one()) {
        return Err(Error::InvalidDescriptor(format!(
            "relation {g} is not monic in `{var}` (leading coefficient {lead})"
        )));
    }
    Ok(())
}

pub(super) fn reduce(p: &MultiPoly, g: &MultiPoly, var: &str) -> MultiPoly {
    let g_parts = g.split_var(var);
    let d = g_parts.len() - 1;
    let mut parts = p.split_var(var);
    if parts.len() <= d {
        return p.clone();
    }
    for e in (d..parts.len()).rev() {
        let c = std::mem::replace(&mut parts[e], MultiPoly::zero(p.ring()));
        if c.is_zero() {
            continue;
        }
        for (j, r) in g_parts.iter().take(d).enumerate() {
            if !r.is_zero() {
                parts[e - d + j] = &parts[e - d + j] - &(&c * r);
            }
        }
    }
    parts.truncate(d);
    MultiPoly::join_var(p.ring(), parts, var)
}

fn padded(p: &MultiPoly, var: &str, d: usize) -> Vec<MultiPoly> {
    let mut parts = p.split_var(var);
    parts.resize(d, MultiPoly::zero(p.ring()));
    parts
}

fn det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(m[0][0].ring());
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let term = &m[0][j] * &det(&minor(m, 0, j));
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn minor(m: &[Vec<MultiPoly>], row: usize, col: usize) -> Vec<Vec<MultiPoly>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect()
}

/// `a / s` in the quotient ring when `s` divides `a`.
pub(super) fn exact_div(a: &MultiPoly, s: &MultiPoly, g: &MultiPoly, var: &str) -> Option<MultiPoly> {
    let ring = a.ring();
    let d = g.degree_in(var) as usize;
    let y = MultiPoly::var(ring, var);

    // Column j of the multiplication-by-s matrix is s * var^j in the basis 1..var^(d-1).
    let mut cols = Vec::with_capacity(d);
    let mut basis = MultiPoly::one(ring);
    for _ in 0..d {
        cols.push(padded(&reduce(&(s * &basis), g, var), var, d));
        basis = &basis * &y;
    }
    let m: Vec<Vec<MultiPoly>> = (0..d)
        .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
        .collect();
    let det_m = det(&m);
    if det_m.is_zero() {
        return None;
    }
    let rhs = padded(&reduce(a, g, var), var, d);

    let mut q_parts = Vec::with_capacity(d);
    for i in 0..d {
        // (adj M)[i][j] = (-1)^(i+j) det(minor(M, j, i))
        let mut acc = MultiPoly::zero(ring);
        for (j, r) in rhs.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let cof = if d == 1 {
                MultiPoly::one(ring)
            } else {
                det(&minor(&m, j, i))
            };
            let term = &cof * r;
            acc = if (i + j) % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        q_parts.push(acc.exact_div(&det_m)?);
    }
    Some(MultiPoly::join_var(ring, q_parts, var))
}
