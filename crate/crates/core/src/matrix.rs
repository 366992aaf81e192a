//! 2×2 matrices of polynomials over one coefficient ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ElemKind {
    /// Upper unitriangular `[[1, p], [0, 1]]`.
    E12,
    /// Lower unitriangular `[[1, 0], [p, 1]]`.
    E21,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    e: [[MultiPoly; 2]; 2],
}

impl Mat2 {
    pub fn new(e11: MultiPoly, e12: MultiPoly, e21: MultiPoly, e22: MultiPoly) -> Result<Self> {
        let r = e11.ring().clone();
        for p in [&e12, &e21, &e22] {
            if *p.ring() != r {
                return Err(Error::mismatch(&r, p.ring()));
            }
        }
        Ok(Mat2 {
            e: [[e11, e12], [e21, e22]],
        })
    }

    pub fn from_rows(rows: [[MultiPoly; 2]; 2]) -> Result<Self> {
        let [[a, b], [c, d]] = rows;
        Self::new(a, b, c, d)
    }

    pub fn identity(ring: &Ring) -> Self {
        let (o, z) = (MultiPoly::one(ring), MultiPoly::zero(ring));
        Mat2 {
            e: [[o.clone(), z.clone()], [z, o]],
        }
    }

    pub fn elementary(kind: ElemKind, p: MultiPoly) -> Self {
        let r = p.ring().clone();
        let (o, z) = (MultiPoly::one(&r), MultiPoly::zero(&r));
        match kind {
            ElemKind::E12 => Mat2 {
                e: [[o.clone(), p], [z, o]],
            },
            ElemKind::E21 => Mat2 {
                e: [[o.clone(), z], [p, o]],
            },
        }
    }

    pub fn e12(p: MultiPoly) -> Self {
        Self::elementary(ElemKind::E12, p)
    }

    pub fn e21(p: MultiPoly) -> Self {
        Self::elementary(ElemKind::E21, p)
    }

    pub fn ring(&self) -> &Ring {
        self.e[0][0].ring()
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.e[i][j]
    }

    pub fn rows(&self) -> &[[MultiPoly; 2]; 2] {
        &self.e
    }

    pub fn into_rows(self) -> [[MultiPoly; 2]; 2] {
        self.e
    }

    /// First column `(e11, e21)`.
    pub fn column(&self, j: usize) -> (MultiPoly, MultiPoly) {
        (self.e[0][j].clone(), self.e[1][j].clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = &MultiPoly> {
        self.e.iter().flatten()
    }

    /// Union of the variables occurring in the entries.
    pub fn vars(&self) -> Vec<String> {
        let mut v: Vec<String> = self.entries().flat_map(|p| p.vars().to_vec()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn is_identity(&self) -> bool {
        self.e[0][0].is_one() && self.e[1][1].is_one() && self.e[0][1].is_zero() && self.e[1][0].is_zero()
    }

    pub fn det(&self) -> MultiPoly {
        &(&self.e[0][0] * &self.e[1][1]) - &(&self.e[0][1] * &self.e[1][0])
    }

    /// Adjugate `[[e22, -e12], [-e21, e11]]`.
    pub fn adjugate(&self) -> Self {
        Mat2 {
            e: [
                [self.e[1][1].clone(), -&self.e[0][1]],
                [-&self.e[1][0], self.e[0][0].clone()],
            ],
        }
    }

    pub fn transpose(&self) -> Self {
        Mat2 {
            e: [
                [self.e[0][0].clone(), self.e[1][0].clone()],
                [self.e[0][1].clone(), self.e[1][1].clone()],
            ],
        }
    }

    pub fn mul(&self, other: &Mat2) -> Result<Mat2> {
        if self.ring() != other.ring() {
            return Err(Error::mismatch(self.ring(), other.ring()));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, o: &Mat2) -> Mat2 {
        let a = &self.e;
        let b = &o.e;
        let entry = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        Mat2 {
            e: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
        }
    }

    /// Ordered product; the empty product is the identity.
    pub fn product<'a>(ring: &Ring, ms: impl IntoIterator<Item = &'a Mat2>) -> Result<Mat2> {
        let mut acc = Mat2::identity(ring);
        for m in ms {
            acc = acc.mul(m)?;
        }
        Ok(acc)
    }

    /// Inverse of a determinant-one matrix.
    pub fn sl2_inverse(&self) -> Result<Mat2> {
        let d = self.det();
        if !d.is_one() {
            return Err(Error::NotSpecial(d.to_string()));
        }
        Ok(self.adjugate())
    }

    /// Inverse when the determinant is a unit of the polynomial ring.
    pub fn inverse(&self) -> Result<Mat2> {
        let d = self.det();
        if d.is_one() {
            return Ok(self.adjugate());
        }
        let inv = d.try_inverse()?;
        Ok(self.adjugate().scale(&inv))
    }

    pub fn pow(&self, k: i64) -> Result<Mat2> {
        let base = if k < 0 { self.sl2_inverse()? } else { self.clone() };
        let mut acc = Mat2::identity(self.ring());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul_unchecked(&base);
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &MultiPoly) -> Mat2 {
        self.map(|p| p * c)
    }

    pub fn add(&self, other: &Mat2) -> Result<Mat2> {
        if self.ring() != other.ring() {
            return Err(Error::mismatch(self.ring(), other.ring()));
        }
        Ok(Mat2 {
            e: [
                [&self.e[0][0] + &other.e[0][0], &self.e[0][1] + &other.e[0][1]],
                [&self.e[1][0] + &other.e[1][0], &self.e[1][1] + &other.e[1][1]],
            ],
        })
    }

    /// Entry-wise map; `f` must keep every entry in one ring.
    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Mat2 {
        Mat2 {
            e: [
                [f(&self.e[0][0]), f(&self.e[0][1])],
                [f(&self.e[1][0]), f(&self.e[1][1])],
            ],
        }
    }

    pub fn try_map(&self, f: impl Fn(&MultiPoly) -> Result<MultiPoly>) -> Result<Mat2> {
        Mat2::new(f(&self.e[0][0])?, f(&self.e[0][1])?, f(&self.e[1][0])?, f(&self.e[1][1])?)
    }

    pub fn substitute(&self, bindings: &BTreeMap<String, MultiPoly>) -> Result<Mat2> {
        self.try_map(|p| p.substitute(bindings))
    }

    pub fn subs(&self, name: &str, value: &MultiPoly) -> Mat2 {
        self.map(|p| p.subs(name, value))
    }

    pub fn at(&self, name: &str, value: i64) -> Mat2 {
        self.map(|p| p.at(name, value))
    }

    /// Entry-wise image modulo the nilradical of a dual-number ring.
    pub fn reduce_nil(&self) -> Mat2 {
        self.map(MultiPoly::reduce_nil)
    }

    /// Entry-wise embedding of a rational matrix into `target`.
    pub fn embed(&self, target: &Ring) -> Result<Mat2> {
        self.try_map(|p| p.embed(target))
    }

    /// Positions (row, column, 1-based) where the two matrices differ.
    pub fn diff_positions(&self, other: &Mat2) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                if self.e[i][j] != other.e[i][j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}

/// `e11*e22 - e12*e21`.
pub fn det2(m: &Mat2) -> MultiPoly {
    m.det()
}

pub fn sl2_inverse(m: &Mat2) -> Result<Mat2> {
    m.sl2_inverse()
}

pub fn elementary(kind: ElemKind, p: MultiPoly) -> Mat2 {
    Mat2::elementary(kind, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;

    fn q() -> Ring {
        Ring::rationals()
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &q()).unwrap()
    }

    #[test]
    fn identity_has_det_one() {
        assert!(det2(&Mat2::identity(&q())).is_one());
        assert!(Mat2::identity(&q()).sl2_inverse().unwrap().is_identity());
    }

    #[test]
    fn elementary_inverse_negates() {
        let m = elementary(ElemKind::E12, p("T^2 - 3*X"));
        assert!(det2(&m).is_one());
        assert_eq!(sl2_inverse(&m).unwrap(), Mat2::e12(p("-T^2 + 3*X")));
        assert!(elementary(ElemKind::E12, MultiPoly::zero(&q())).is_identity());
    }

    #[test]
    fn non_special_is_rejected() {
        let m = Mat2::new(p("2"), p("0"), p("0"), p("1")).unwrap();
        assert!(matches!(m.sl2_inverse(), Err(Error::NotSpecial(_))));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn shared_ring_is_enforced() {
        let d = MultiPoly::one(&Ring::dual(2).unwrap());
        assert!(Mat2::new(p("1"), d, p("0"), p("1")).is_err());
    }

    #[test]
    fn product_with_inverse() {
        let m = Mat2::e12(p("T")).mul(&Mat2::e21(p("T^2 + 1"))).unwrap();
        assert_eq!(m, Mat2::new(p("T^3 + T + 1"), p("T"), p("T^2 + 1"), p("1")).unwrap());
        assert!(m.det().is_one());
        let inv = m.sl2_inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
        assert_eq!(m.pow(2).unwrap().mul(&m.pow(-2).unwrap()).unwrap(), Mat2::identity(&q()));
    }
}
