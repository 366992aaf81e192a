//! Unimodular rows of length two, their completions and product, equivalence
//! certificates, verification of a given splitting over a double
//! localization, and the degree of rows over the circle ring.

mod circle;
mod quillen;

pub use circle::{
    circle_charts, circle_degree, circle_degree_details, circle_degree_pair, complex_product,
    ChartKind, CircleCharts,
};
pub use quillen::{quillen_split_verify, QuillenSplit};

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::poly::MultiPoly;
use crate::report::Report;
use crate::ring::{Ring, RingDescriptor};
use crate::winding::UniPoly;

/// A row `(a, b)` together with a witness `a*b1 + b*b2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodRow {
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub b1: MultiPoly,
    pub b2: MultiPoly,
}

impl UnimodRow {
    /// Checks the witness identity exactly.
    pub fn new(a: MultiPoly, b: MultiPoly, b1: MultiPoly, b2: MultiPoly) -> Result<Self> {
        let ring = a.ring().clone();
        for p in [&b, &b1, &b2] {
            if *p.ring() != ring {
                return Err(Error::mismatch(&ring, p.ring()));
            }
        }
        let lhs = &(&a * &b1) + &(&b * &b2);
        if !lhs.is_one() {
            return Err(Error::NotUnimodular(format!(
                "({a})*({b1}) + ({b})*({b2}) = {lhs}, not 1"
            )));
        }
        Ok(UnimodRow { a, b, b1, b2 })
    }

    /// The identity element `[1, 0]` with witness `(1, 0)`.
    pub fn identity(ring: &Ring) -> Self {
        UnimodRow {
            a: MultiPoly::one(ring),
            b: MultiPoly::zero(ring),
            b1: MultiPoly::one(ring),
            b2: MultiPoly::zero(ring),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.a.ring()
    }

    pub fn witness(&self) -> (&MultiPoly, &MultiPoly) {
        (&self.b1, &self.b2)
    }
}

impl fmt::Display for UnimodRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

/// Accepts `(a, b)` with a given witness, or searches for one by the extended
/// Euclidean algorithm over Q and Q[T].
pub fn verify_unimodular(
    a: &MultiPoly,
    b: &MultiPoly,
    witness: Option<(&MultiPoly, &MultiPoly)>,
) -> Result<UnimodRow> {
    match witness {
        Some((b1, b2)) => UnimodRow::new(a.clone(), b.clone(), b1.clone(), b2.clone()),
        None => {
            let (b1, b2) = euclid_witness(a, b)?;
            UnimodRow::new(a.clone(), b.clone(), b1, b2)
        }
    }
}

/// Extended-Euclid coefficients `(b1, b2)` with `a*b1 + b*b2 = 1` for
/// univariate polynomials over Q. A nonconstant gcd means the row is not
/// unimodular; other rings are reported as unknown.
pub fn euclid_witness(a: &MultiPoly, b: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
    if a.ring() != b.ring() {
        return Err(Error::mismatch(a.ring(), b.ring()));
    }
    let ring = a.ring().clone();
    if !matches!(ring.descriptor(), RingDescriptor::Rationals | RingDescriptor::Integers) {
        return Err(Error::UnknownUnimodular(format!("no witness search over {ring}")));
    }
    let mut vars: Vec<String> = a.vars().iter().chain(b.vars()).cloned().collect();
    vars.sort();
    vars.dedup();
    if vars.len() > 1 {
        return Err(Error::UnknownUnimodular(format!(
            "no witness search in several variables ({})",
            vars.join(", ")
        )));
    }
    let var = vars.first().map(String::as_str).unwrap_or("T");
    let q = Ring::rationals();
    let ua = UniPoly::from_multi(&a.embed(&q)?, var)?;
    let ub = UniPoly::from_multi(&b.embed(&q)?, var)?;
    let back = |u: &UniPoly| {
        u.to_multi(var)
            .embed(&ring)
            .map_err(|_| Error::UnknownUnimodular(format!("witness is not defined over {ring}")))
    };
    let zero = UniPoly::new(Vec::new());
    if ua.degree() == Some(0) {
        let inv = UniPoly::new(vec![ua.coeffs()[0].recip()]);
        return Ok((back(&inv)?, back(&zero)?));
    }
    let (g, s, t) = ua.ext_gcd(&ub);
    if g.degree() != Some(0) {
        let g = if g.is_zero() { "0".to_string() } else { g.to_multi(var).to_string() };
        return Err(Error::NotUnimodular(format!("gcd of {a} and {b} is {g}")));
    }
    Ok((back(&s)?, back(&t)?))
}

/// `[[a, -b2], [b, b1]]`, of determinant `a*b1 + b*b2 = 1`.
pub fn complete_row(r: &UnimodRow) -> Mat2 {
    Mat2::new(r.a.clone(), -&r.b2, r.b.clone(), r.b1.clone()).expect("row entries share a ring")
}

/// First column of the product of the two completions, with the witness read
/// off the first row of the inverse product.
pub fn gamma_product(r: &UnimodRow, s: &UnimodRow) -> Result<UnimodRow> {
    if r.ring() != s.ring() {
        return Err(Error::mismatch(r.ring(), s.ring()));
    }
    let p = complete_row(r).mul(&complete_row(s))?;
    let (a, b) = p.column(0);
    let b1 = p.get(1, 1).clone();
    let b2 = -p.get(0, 1);
    UnimodRow::new(a, b, b1, b2).map_err(|e| Error::Internal(format!("product row lost its witness: {e}")))
}

/// A path `beta(S)` in `SL_2` from the identity to `alpha = beta(1)` with
/// `alpha * row_in = row_out`.
#[derive(Debug, Clone)]
pub struct GammaEquivCert {
    pub beta: Mat2,
    pub path_var: String,
    pub alpha: Mat2,
    pub row_in: UnimodRow,
    pub row_out: UnimodRow,
}

impl GammaEquivCert {
    /// The constant path at the identity, relating a row to itself.
    pub fn identity(row: &UnimodRow, path_var: &str) -> Self {
        let id = Mat2::identity(row.ring());
        GammaEquivCert {
            beta: id.clone(),
            path_var: path_var.to_string(),
            alpha: id,
            row_in: row.clone(),
            row_out: row.clone(),
        }
    }
}

pub fn gamma_equiv_verify(cert: &GammaEquivCert) -> Report {
    let mut r = Report::new();
    let ring = cert.beta.ring();
    let same_ring = cert.alpha.ring() == ring && cert.row_in.ring() == ring && cert.row_out.ring() == ring;
    r.check("ring", same_ring, || "certificate mixes rings".into());
    if !same_ring {
        return r;
    }
    let s = cert.path_var.as_str();
    let fresh = ![&cert.row_in.a, &cert.row_in.b, &cert.row_out.a, &cert.row_out.b]
        .iter()
        .any(|p| p.has_var(s))
        && !cert.alpha.vars().iter().any(|v| v == s);
    r.check("path-variable", fresh, || format!("`{s}` occurs in the rows or target"));
    let det = cert.beta.det();
    r.check("det", det.is_one(), || format!("det beta = {det}"));
    let b0 = cert.beta.at(s, 0);
    r.check("start", b0.is_identity(), || format!("beta(0) = {b0}"));
    let b1 = cert.beta.at(s, 1);
    r.check("end", b1 == cert.alpha, || format!("beta(1) = {b1}, target {}", cert.alpha));
    let (a, b) = (&cert.row_in.a, &cert.row_in.b);
    let c = &(cert.alpha.get(0, 0) * a) + &(cert.alpha.get(0, 1) * b);
    let d = &(cert.alpha.get(1, 0) * a) + &(cert.alpha.get(1, 1) * b);
    r.check("action", c == cert.row_out.a && d == cert.row_out.b, || {
        format!("alpha maps the row to [{c}, {d}], expected {}", cert.row_out)
    });
    r
}
