//! Loops in SL2 and homotopy certificates between them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::report::Report;
use crate::ring::Ring;

pub const DEFAULT_LOOP_VAR: &str = "T";

/// A determinant-one matrix in `loop_var` that is the identity at both ends.
/// Every other variable in the entries is a parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopRep {
    matrix: Mat2,
    loop_var: String,
    parameters: BTreeSet<String>,
}

impl LoopRep {
    /// The constant identity loop.
    pub fn constant(ring: &Ring, loop_var: &str) -> Self {
        LoopRep {
            matrix: Mat2::identity(ring),
            loop_var: loop_var.to_string(),
            parameters: BTreeSet::new(),
        }
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }

    pub fn into_matrix(self) -> Mat2 {
        self.matrix
    }

    pub fn loop_var(&self) -> &str {
        &self.loop_var
    }

    pub fn parameters(&self) -> &BTreeSet<String> {
        &self.parameters
    }

    pub fn ring(&self) -> &Ring {
        self.matrix.ring()
    }

    pub fn is_constant_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// Every loop condition, each recorded as passed or violated.
pub fn loop_report(m: &Mat2, loop_var: &str) -> Report {
    let mut r = Report::new();
    let d = m.det();
    r.check("det", d.is_one(), || format!("determinant is {d}"));
    for (name, v) in [("endpoint-0", 0), ("endpoint-1", 1)] {
        let e = m.at(loop_var, v);
        r.check(name, e.is_identity(), || format!("{loop_var}={v} gives {e}"));
    }
    r
}

/// Validates `m` as a loop in `loop_var`; a rejection lists every violated condition.
pub fn verify_loop(m: &Mat2, loop_var: &str) -> Result<LoopRep> {
    loop_report(m, loop_var).into_result()?;
    let parameters = m.vars().into_iter().filter(|v| v != loop_var).collect();
    Ok(LoopRep {
        matrix: m.clone(),
        loop_var: loop_var.to_string(),
        parameters,
    })
}

/// `matrix(loop_var, homotopy_var)` with declared boundaries at `homotopy_var = 0, 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyCert {
    pub matrix: Mat2,
    pub loop_var: String,
    pub homotopy_var: String,
    pub start: Mat2,
    pub end: Mat2,
}

impl HomotopyCert {
    pub fn new(matrix: Mat2, loop_var: &str, homotopy_var: &str, start: Mat2, end: Mat2) -> Self {
        HomotopyCert {
            matrix,
            loop_var: loop_var.to_string(),
            homotopy_var: homotopy_var.to_string(),
            start,
            end,
        }
    }

    /// Boundaries read off the matrix itself.
    pub fn from_matrix(matrix: Mat2, loop_var: &str, homotopy_var: &str) -> Self {
        let start = matrix.at(homotopy_var, 0);
        let end = matrix.at(homotopy_var, 1);
        Self::new(matrix, loop_var, homotopy_var, start, end)
    }

    /// The certificate that does not move.
    pub fn constant(l: &LoopRep, homotopy_var: &str) -> Self {
        Self::new(
            l.matrix.clone(),
            &l.loop_var,
            homotopy_var,
            l.matrix.clone(),
            l.matrix.clone(),
        )
    }

    pub fn start_loop(&self) -> Result<LoopRep> {
        verify_loop(&self.start, &self.loop_var)
    }

    pub fn end_loop(&self) -> Result<LoopRep> {
        verify_loop(&self.end, &self.loop_var)
    }

    /// Same deformation run backwards.
    pub fn reversed(&self) -> Self {
        let one = crate::poly::MultiPoly::one(self.matrix.ring());
        let s = crate::poly::MultiPoly::var(self.matrix.ring(), &self.homotopy_var);
        HomotopyCert::new(
            self.matrix.subs(&self.homotopy_var, &(&one - &s)),
            &self.loop_var,
            &self.homotopy_var,
            self.end.clone(),
            self.start.clone(),
        )
    }
}

/// Checks the determinant, both declared boundaries and the identity at both
/// ends of the loop variable.
pub fn verify_homotopy(cert: &HomotopyCert) -> Report {
    let mut r = Report::new();
    let m = &cert.matrix;
    let (lv, hv) = (cert.loop_var.as_str(), cert.homotopy_var.as_str());
    if lv == hv {
        r.fail("variables", format!("loop and homotopy variable are both `{lv}`"));
        return r;
    }
    if cert.start.ring() != m.ring() || cert.end.ring() != m.ring() {
        r.fail("ring", "boundary matrices live over a different ring");
        return r;
    }
    let d = m.det();
    r.check("det", d.is_one(), || format!("determinant is {d}"));
    let s0 = m.at(hv, 0);
    r.check("start", s0 == cert.start, || {
        format!("{hv}=0 gives {s0}, declared {}", cert.start)
    });
    let s1 = m.at(hv, 1);
    r.check("end", s1 == cert.end, || format!("{hv}=1 gives {s1}, declared {}", cert.end));
    for (name, v) in [("loop-start", 0), ("loop-end", 1)] {
        let e = m.at(lv, v);
        r.check(name, e.is_identity(), || format!("{lv}={v} gives {e}"));
    }
    r
}

/// Pointwise matrix product of two loops in the same variable.
pub fn loop_product(a: &LoopRep, b: &LoopRep) -> Result<LoopRep> {
    if a.loop_var != b.loop_var {
        return Err(Error::Precondition(format!(
            "loop variables differ: `{}` vs `{}`",
            a.loop_var, b.loop_var
        )));
    }
    let m = a.matrix.mul(&b.matrix)?;
    verify_loop(&m, &a.loop_var)
}

pub fn loop_inverse(a: &LoopRep) -> LoopRep {
    let m = a.matrix.adjugate();
    LoopRep {
        matrix: m,
        loop_var: a.loop_var.clone(),
        parameters: a.parameters.clone(),
    }
}

/// `a^k` for any integer `k`.
pub fn loop_power(a: &LoopRep, k: i64) -> LoopRep {
    let base = if k < 0 { loop_inverse(a) } else { a.clone() };
    let mut acc = LoopRep::constant(a.ring(), &a.loop_var);
    for _ in 0..k.unsigned_abs() {
        acc = loop_product(&acc, &base).expect("products of loops are loops");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::poly::MultiPoly;

    fn over(ring: &Ring, s: &str) -> MultiPoly {
        parse_poly(s, ring).unwrap()
    }

    fn q() -> Ring {
        Ring::rationals()
    }

    #[test]
    fn identity_is_a_loop() {
        let l = verify_loop(&Mat2::identity(&q()), "T").unwrap();
        assert!(l.is_constant_identity());
    }

    #[test]
    fn e12_of_t_fails_at_one() {
        let m = Mat2::e12(over(&q(), "T"));
        match verify_loop(&m, "T") {
            Err(Error::Rejected(r)) => assert_eq!(r.violation_names(), vec!["endpoint-1"]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn all_violations_are_listed() {
        let m = Mat2::new(
            over(&q(), "2"),
            over(&q(), "T"),
            over(&q(), "0"),
            over(&q(), "1"),
        )
        .unwrap();
        let r = loop_report(&m, "T");
        assert_eq!(r.violation_names(), vec!["det", "endpoint-0", "endpoint-1"]);
    }

    #[test]
    fn nil_homotopy_certificates() {
        let r = Ring::dual(2).unwrap();
        let m = Mat2::e12(over(&r, "eps*X*(X-1)*S"));
        let start = Mat2::e12(over(&r, "eps*X*(X-1)"));
        let end = Mat2::identity(&r);
        let good = HomotopyCert::new(m.clone(), "X", "S", end.clone(), start.clone());
        assert!(verify_homotopy(&good).is_ok(), "{}", verify_homotopy(&good));
        let bad = HomotopyCert::new(m, "X", "S", end, Mat2::e12(over(&r, "eps*X")));
        assert_eq!(verify_homotopy(&bad).violation_names(), vec!["end"]);
        assert!(verify_homotopy(&good.reversed()).is_ok());
    }

    #[test]
    fn product_and_inverse() {
        let a = verify_loop(&Mat2::e12(over(&q(), "T*(T-1)")), "T").unwrap();
        let inv = loop_inverse(&a);
        assert_eq!(inv.matrix(), &Mat2::e12(over(&q(), "-T*(T-1)")));
        assert!(loop_product(&a, &inv).unwrap().is_constant_identity());
        let id = LoopRep::constant(&q(), "T");
        assert_eq!(loop_product(&a, &id).unwrap(), a);
        assert!(loop_power(&a, 0).is_constant_identity());
        assert_eq!(loop_power(&a, -2), loop_power(&inv, 2));
    }

    #[test]
    fn constant_certificate_verifies() {
        let a = verify_loop(&Mat2::e21(over(&q(), "X*T^2*(T-1)")), "T").unwrap();
        assert_eq!(a.parameters().iter().collect::<Vec<_>>(), vec!["X"]);
        assert!(verify_homotopy(&HomotopyCert::constant(&a, "S")).is_ok());
    }
}
