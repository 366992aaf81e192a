//! The circle ring `A = Q[x, y]/(x^2 + y^2 - 1)`, its chart localizations at
//! `u = 1 - y` and `v = 1 + y`, and the degree of a row `(a, b)` viewed as a
//! map from the real circle to the punctured plane.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::expr::parse_poly;
use crate::poly::MultiPoly;
use crate::ring::{Elem, Ring, RingElement};
use crate::winding::{norm_root_count, walk, Piece, UniPoly, WindingDetails};

use super::UnimodRow;

/// Which pole of the circle a chart removes: `U` inverts `u = 1 - y`, `V` inverts `v = 1 + y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartKind {
    U,
    V,
}

/// The rings `A, A_u, A_v, A_uv` and `Q[eta]` localized at `1 + eta^2`.
#[derive(Debug, Clone)]
pub struct CircleCharts {
    pub a: Ring,
    pub a_u: Ring,
    pub a_v: Ring,
    pub a_uv: Ring,
    pub eta: Ring,
    pub u: Elem,
    pub v: Elem,
}

pub const ETA: &str = "eta";

pub fn circle_charts() -> CircleCharts {
    let a = Ring::circle();
    let q = Ring::rationals();
    let elem = |s: &str| Elem::Poly(parse_poly(s, &q).expect("static"));
    let u = a.canonical(elem("1 - y"));
    let v = a.canonical(elem("1 + y"));
    let uv = a.mul(&u, &v);
    let loc = |d: &Elem| Ring::localization(a.clone(), d.clone()).expect("valid localization");
    let eta_base = Ring::polynomial(q.clone(), &[ETA]).expect("valid coordinate");
    let eta = Ring::localization(eta_base, elem("1 + eta^2")).expect("valid localization");
    CircleCharts {
        a_u: loc(&u),
        a_v: loc(&v),
        a_uv: loc(&uv),
        a,
        eta,
        u,
        v,
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn frac(num: Elem, power: u32) -> Elem {
    Elem::Frac {
        num: Box::new(num),
        power,
    }
}

/// Evaluates a polynomial over Q at ring elements, one per variable.
fn eval_in(p: &MultiPoly, target: &Ring, images: &[(&str, Elem)]) -> Result<Elem> {
    let mut acc = target.zero();
    for (powers, c) in p.named_terms() {
        let Elem::Rat(c) = c else {
            return Err(Error::Internal("expected rational coefficients".into()));
        };
        let mut term = target.from_rational(&c)?;
        for (var, e) in powers {
            let img = images
                .iter()
                .find(|(n, _)| *n == var)
                .ok_or_else(|| Error::UnboundVariable(var.clone()))?;
            term = target.mul(&term, &target.pow(&img.1, e));
        }
        acc = target.add(&acc, &term);
    }
    Ok(acc)
}

fn payload(e: &RingElement, ring: &Ring) -> Result<(MultiPoly, u32)> {
    if e.ring() != ring {
        return Err(Error::mismatch(e.ring(), ring));
    }
    match e.value() {
        Elem::Frac { num, power } => match &**num {
            Elem::Poly(p) => Ok((p.clone(), *power)),
            _ => Err(Error::Internal("unexpected numerator payload".into())),
        },
        _ => Err(Error::Internal("unexpected localization payload".into())),
    }
}

impl CircleCharts {
    pub fn chart(&self, kind: ChartKind) -> &Ring {
        match kind {
            ChartKind::U => &self.a_u,
            ChartKind::V => &self.a_v,
        }
    }

    fn pole(&self, kind: ChartKind) -> &Elem {
        match kind {
            ChartKind::U => &self.u,
            ChartKind::V => &self.v,
        }
    }

    fn eta_poly(&self, s: &str) -> Elem {
        Elem::Poly(parse_poly(s, &Ring::rationals()).expect("static"))
    }

    /// `A_u -> Q[eta]_(1+eta^2)`: `x -> 2 eta/(1+eta^2)`, `y -> (eta^2-1)/(1+eta^2)`,
    /// `u^-1 -> (1+eta^2)/2`; the `v` chart uses `y -> (1-eta^2)/(1+eta^2)`.
    pub fn to_eta(&self, kind: ChartKind, e: &RingElement) -> Result<RingElement> {
        let (num, power) = payload(e, self.chart(kind))?;
        let l = &self.eta;
        let y_num = match kind {
            ChartKind::U => "eta^2 - 1",
            ChartKind::V => "1 - eta^2",
        };
        let images = [
            ("x", frac(self.eta_poly("2*eta"), 1)),
            ("y", frac(self.eta_poly(y_num), 1)),
        ];
        let top = eval_in(&num, l, &images)?;
        let pole_inv = frac(self.eta_poly("1/2 + 1/2*eta^2"), 0);
        let value = l.mul(&top, &l.pow(&l.canonical(pole_inv), power));
        Ok(RingElement::new(l, l.canonical(value)))
    }

    /// The inverse map: `eta -> x/u` and `(1+eta^2)^-1 -> u/2` (with `v` in the `v` chart).
    pub fn from_eta(&self, kind: ChartKind, e: &RingElement) -> Result<RingElement> {
        let (num, power) = payload(e, &self.eta)?;
        let target = self.chart(kind);
        let a = &self.a;
        let pole = frac(self.pole(kind).clone(), 0);
        let pole_inv = target.inverse(&pole)?;
        let x = target.coordinate("x").expect("circle coordinate");
        let eta_img = target.mul(&x, &pole_inv);
        let top = eval_in(&num, target, &[(ETA, eta_img)])?;
        let half_pole = frac(a.mul(&a.from_rational(&rat(1, 2))?, self.pole(kind)), 0);
        let value = target.mul(&top, &target.pow(&target.canonical(half_pole), power));
        Ok(RingElement::new(target, target.canonical(value)))
    }

    /// `u^-1` (or `v^-1`) as an element of its chart.
    pub fn pole_inverse(&self, kind: ChartKind) -> RingElement {
        let target = self.chart(kind);
        let inv = target
            .inverse(&frac(self.pole(kind).clone(), 0))
            .expect("the pole is inverted in its chart");
        RingElement::new(target, inv)
    }
}

/// Circle ring element as a polynomial over Q in `x, y`.
fn circle_payload(p: &MultiPoly) -> Result<MultiPoly> {
    if *p.ring() != Ring::circle() {
        return Err(Error::Precondition(format!("{} is not the circle ring", p.ring())));
    }
    if !p.is_constant() {
        return Err(Error::Precondition(format!("{p} is not an element of the circle ring")));
    }
    match p.constant_term() {
        Elem::Poly(inner) => Ok(inner),
        _ => Err(Error::Internal("unexpected circle payload".into())),
    }
}

/// `p((1-t^2)/(1+t^2), 2t/(1+t^2)) (1+t^2)^n` on the first chart, and the
/// same with `t -> -1/t` (up to the positive factor `t^(2n)`) on the second.
fn chart_poly(p: &MultiPoly, chart: usize, n: u32) -> Result<UniPoly> {
    let c = |v: Vec<i64>| UniPoly::new(v.into_iter().map(|k| rat(k, 1)).collect());
    let (xn, yn) = if chart == 0 {
        (c(vec![1, 0, -1]), c(vec![0, 2]))
    } else {
        (c(vec![-1, 0, 1]), c(vec![0, -2]))
    };
    let den = c(vec![1, 0, 1]);
    let pow = |u: &UniPoly, e: u32| (0..e).fold(c(vec![1]), |acc, _| acc.mul(u));
    let mut acc = UniPoly::new(Vec::new());
    for (powers, coeff) in p.named_terms() {
        let Elem::Rat(q) = coeff else {
            return Err(Error::Internal("expected rational coefficients".into()));
        };
        let mut term = UniPoly::new(vec![q]);
        let mut deg = 0;
        for (var, e) in powers {
            let base = match var.as_str() {
                "x" => &xn,
                "y" => &yn,
                other => return Err(Error::UnboundVariable(other.to_string())),
            };
            term = term.mul(&pow(base, e));
            deg += e;
        }
        acc = acc.add(&term.mul(&pow(&den, n - deg)));
    }
    Ok(acc)
}

/// Degree of `(a, b)` on the real circle, with the two-chart itinerary.
pub fn circle_degree_details(a: &MultiPoly, b: &MultiPoly) -> Result<WindingDetails> {
    let (pa, pb) = (circle_payload(a)?, circle_payload(b)?);
    let n = pa.total_degree().max(pb.total_degree());
    let one = rat(1, 1);
    let mut pieces = Vec::with_capacity(2);
    for chart in 0..2 {
        let piece = Piece {
            f1: chart_poly(&pa, chart, n)?,
            f2: chart_poly(&pb, chart, n)?,
            lo: -one.clone(),
            hi: one.clone(),
        };
        if norm_root_count(&piece) != 0 {
            return Err(Error::Precondition(format!(
                "the row vanishes at a point of the circle (chart {})",
                chart + 1
            )));
        }
        pieces.push(piece);
    }
    walk(&pieces)
}

pub fn circle_degree_pair(a: &MultiPoly, b: &MultiPoly) -> Result<i64> {
    Ok(circle_degree_details(a, b)?.winding)
}

pub fn circle_degree(r: &UnimodRow) -> Result<i64> {
    circle_degree_pair(&r.a, &r.b)
}

/// `(a + bi)(c + di)` reduced in the ring of the entries.
pub fn complex_product(
    (a, b): (&MultiPoly, &MultiPoly),
    (c, d): (&MultiPoly, &MultiPoly),
) -> (MultiPoly, MultiPoly) {
    (&(a * c) - &(b * d), &(a * d) + &(b * c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(s: &str) -> MultiPoly {
        parse_poly(s, &Ring::circle()).unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(circle_degree_pair(&circ("1"), &circ("0")).unwrap(), 0);
        assert_eq!(circle_degree_pair(&circ("x"), &circ("y")).unwrap(), 1);
        assert_eq!(circle_degree_pair(&circ("x"), &circ("-y")).unwrap(), -1);
        assert_eq!(circle_degree_pair(&circ("x^2 - y^2"), &circ("2*x*y")).unwrap(), 2);
        let r = UnimodRow::new(circ("x"), circ("y"), circ("x"), circ("y")).unwrap();
        assert_eq!(circle_degree(&r).unwrap(), 1);
        assert!(circle_degree_pair(&circ("x"), &circ("0")).is_err());
    }

    #[test]
    fn product_degrees_add() {
        let (x, y) = (circ("x"), circ("y"));
        let (a, b) = complex_product((&x, &y), (&x, &y));
        let (c, d) = complex_product((&a, &b), (&x, &y));
        assert_eq!(circle_degree_pair(&c, &d).unwrap(), 3);
    }

    #[test]
    fn chart_images() {
        let ch = circle_charts();
        for kind in [ChartKind::U, ChartKind::V] {
            let uinv = ch.pole_inverse(kind);
            let img = ch.to_eta(kind, &uinv).unwrap();
            let want = frac(Elem::Poly(parse_poly("1/2 + 1/2*eta^2", &Ring::rationals()).unwrap()), 0);
            assert_eq!(img.value(), &ch.eta.canonical(want));
            let chart = ch.chart(kind);
            let x = RingElement::coordinate(chart, "x").unwrap();
            let pole = RingElement::new(chart, frac(ch.pole(kind).clone(), 0));
            let eta = RingElement::coordinate(&ch.eta, ETA).unwrap();
            let lhs = ch.to_eta(kind, &x).unwrap();
            let rhs = eta.mul(&ch.to_eta(kind, &pole).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            for e in [x, pole, uinv] {
                let back = ch.from_eta(kind, &ch.to_eta(kind, &e).unwrap()).unwrap();
                assert_eq!(back, e);
            }
        }
    }

    #[test]
    fn u_times_v_is_x_squared() {
        let ch = circle_charts();
        let x2 = ch.a.canonical(Elem::Poly(parse_poly("x^2", &Ring::rationals()).unwrap()));
        assert_eq!(ch.a.mul(&ch.u, &ch.v), x2);
        assert!(matches!(ch.a_uv.descriptor(), crate::ring::RingDescriptor::Localization { .. }));
    }
}
