//! Checks that a matrix over a double localization `R_st` is the product of
//! the images of factors defined over `R_s` and `R_t`.

use std::collections::BTreeMap;

use crate::matrix::Mat2;
use crate::poly::MultiPoly;
use crate::report::Report;
use crate::ring::{localization_equal, Elem, Ring, RingDescriptor, RingElement};

/// Splitting data: `s*u + t*v = 1` in `base`; `sigma` over `base[1/(st)]`,
/// `psi1` over `base[1/s]`, `psi2` over `base[1/t]`, all polynomial in `var`.
#[derive(Debug, Clone)]
pub struct QuillenSplit {
    pub base: Ring,
    pub s: Elem,
    pub t: Elem,
    pub u: Elem,
    pub v: Elem,
    pub var: String,
    pub sigma: Mat2,
    pub psi1: Mat2,
    pub psi2: Mat2,
}

fn localized_at<'a>(m: &'a Mat2, base: &Ring, den: &Elem) -> Option<&'a Ring> {
    match m.ring().descriptor() {
        RingDescriptor::Localization { base: b, denominator } if b == base && denominator == den => {
            Some(m.ring())
        }
        _ => None,
    }
}

/// `a / s^n  ->  a * other^n / (s * other)^n`.
fn widen(m: &Mat2, target: &Ring, base: &Ring, other: &Elem) -> Mat2 {
    m.map(|p| {
        p.map_coeffs(target, |c| match c {
            Elem::Frac { num, power } => Elem::Frac {
                num: Box::new(base.mul(num, &base.pow(other, *power))),
                power: *power,
            },
            _ => unreachable!("localization payload"),
        })
    })
}

fn coefficient_map(p: &MultiPoly) -> BTreeMap<Vec<(String, u32)>, Elem> {
    p.named_terms().into_iter().collect()
}

fn entries_equal(x: &MultiPoly, y: &MultiPoly) -> bool {
    let ring = x.ring();
    let (mx, my) = (coefficient_map(x), coefficient_map(y));
    let zero = ring.zero();
    mx.keys().chain(my.keys()).all(|k| {
        let a = RingElement::new(ring, mx.get(k).unwrap_or(&zero).clone());
        let b = RingElement::new(ring, my.get(k).unwrap_or(&zero).clone());
        localization_equal(&a, &b).unwrap_or(false)
    })
}

fn det_is_unit(m: &Mat2) -> bool {
    let d = m.det();
    d.constant_value().is_some_and(|c| m.ring().inverse(&c).is_ok())
}

/// Itemized check of the splitting; every failed condition is a named violation.
pub fn quillen_split_verify(q: &QuillenSplit) -> Report {
    let mut r = Report::new();
    let base = &q.base;
    let st = base.mul(&q.s, &q.t);
    let rings = (
        localized_at(&q.sigma, base, &st),
        localized_at(&q.psi1, base, &q.s),
        localized_at(&q.psi2, base, &q.t),
    );
    r.check("domain", base.is_domain(), || format!("{base} is not an integral domain"));
    r.check("sigma-ring", rings.0.is_some(), || format!("sigma lives over {}", q.sigma.ring()));
    r.check("psi1-ring", rings.1.is_some(), || format!("psi1 lives over {}", q.psi1.ring()));
    r.check("psi2-ring", rings.2.is_some(), || format!("psi2 lives over {}", q.psi2.ring()));
    let (Some(r_st), Some(_), Some(_)) = rings else {
        return r;
    };
    let comax = base.add(&base.mul(&q.s, &q.u), &base.mul(&q.t, &q.v));
    r.check("comaximal", base.is_one(&comax), || {
        format!("s*u + t*v = {}", base.format(&comax))
    });
    for (name, m) in [("sigma", &q.sigma), ("psi1", &q.psi1), ("psi2", &q.psi2)] {
        let at0 = m.at(&q.var, 0);
        r.check(&format!("{name}-at-zero"), at0.is_identity(), || format!("{name}(0) = {at0}"));
        r.check(&format!("{name}-det-unit"), det_is_unit(m), || {
            format!("det {name} = {} is not a unit", m.det())
        });
    }
    let left = widen(&q.psi1, r_st, base, &q.t);
    let right = widen(&q.psi2, r_st, base, &q.s);
    let prod = left.mul_unchecked(&right);
    for i in 0..2 {
        for j in 0..2 {
            let (got, want) = (prod.get(i, j), q.sigma.get(i, j));
            r.check(&format!("product-entry-{}{}", i + 1, j + 1), entries_equal(got, want), || {
                format!("psi1 psi2 gives {got}, sigma has {want}")
            });
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;

    fn setup(c2: i64) -> QuillenSplit {
        let base = Ring::polynomial(Ring::rationals(), &["y"]).unwrap();
        let q = Ring::rationals();
        let y = parse_poly("y", &q).unwrap();
        let s = Elem::Poly(y.clone());
        let t = Elem::Poly(parse_poly("1 - y", &q).unwrap());
        let r_s = Ring::localization(base.clone(), s.clone()).unwrap();
        let r_t = Ring::localization(base.clone(), t.clone()).unwrap();
        let r_st = Ring::localization(base.clone(), base.mul(&s, &t)).unwrap();
        let x_over = |ring: &Ring, k: i64| {
            parse_poly(&format!("{k}*X"), &base).unwrap().localize(ring, 1).unwrap()
        };
        QuillenSplit {
            base: base.clone(),
            s,
            t,
            u: base.one(),
            v: base.one(),
            var: "X".into(),
            sigma: Mat2::e12(x_over(&r_st, 1)),
            psi1: Mat2::e12(x_over(&r_s, 1)),
            psi2: Mat2::e12(x_over(&r_t, c2)),
        }
    }

    #[test]
    fn partial_fractions_split() {
        let rep = quillen_split_verify(&setup(1));
        assert!(rep.is_ok(), "{rep}");
    }

    #[test]
    fn perturbed_factor_is_rejected() {
        let rep = quillen_split_verify(&setup(2));
        assert_eq!(rep.violation_names(), vec!["product-entry-12"]);
    }
}
