//! Fractions `a / s^n` over an integral domain, kept with `n` minimal.

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring, RingDescriptor, RingElement};

fn parts(e: &Elem) -> (&Elem, u32) {
    match e {
        Elem::Frac { num, power } => (num, *power),
        _ => panic!("not a fraction payload"),
    }
}

/// Cancels factors of the denominator from the numerator while possible.
pub(super) fn reduce(base: &Ring, s: &Elem, mut num: Elem, mut power: u32) -> Elem {
    if base.is_zero(&num) {
        return Elem::Frac {
            num: Box::new(num),
            power: 0,
        };
    }
    while power > 0 {
        match base.exact_div(&num, s) {
            Some(q) => {
                num = q;
                power -= 1;
            }
            None => break,
        }
    }
    Elem::Frac {
        num: Box::new(num),
        power,
    }
}

pub(super) fn add(base: &Ring, s: &Elem, a: &Elem, b: &Elem) -> Elem {
    let (na, pa) = parts(a);
    let (nb, pb) = parts(b);
    let top = pa.max(pb);
    let lhs = base.mul(na, &base.pow(s, top - pa));
    let rhs = base.mul(nb, &base.pow(s, top - pb));
    reduce(base, s, base.add(&lhs, &rhs), top)
}

pub(super) fn mul(base: &Ring, s: &Elem, a: &Elem, b: &Elem) -> Elem {
    let (na, pa) = parts(a);
    let (nb, pb) = parts(b);
    reduce(base, s, base.mul(na, nb), pa + pb)
}

/// `a / s^n` is a unit iff `a` divides some power of `s`.
pub(super) fn inverse(base: &Ring, s: &Elem, a: &Elem) -> Result<Elem> {
    let (num, power) = parts(a);
    if base.is_zero(num) {
        return Err(Error::NotAUnit("zero has no inverse".into()));
    }
    let bound = base.size_hint(num) + 1;
    let mut s_pow = base.one();
    for n in 0..=bound {
        if let Some(q) = base.exact_div(&s_pow, num) {
            // s^power / num = q s^power / s^n
            let top = base.mul(&q, &base.pow(s, power));
            return Ok(reduce(base, s, top, n));
        }
        s_pow = base.mul(&s_pow, s);
    }
    Err(Error::NotAUnit(format!(
        "numerator {} divides no power of the denominator {}",
        base.format(num),
        base.format(s)
    )))
}

/// Equality in a localization by cross-multiplication in the base domain.
pub fn localization_equal(x: &RingElement, y: &RingElement) -> Result<bool> {
    if x.ring() != y.ring() {
        return Err(Error::mismatch(x.ring(), y.ring()));
    }
    let RingDescriptor::Localization { base, denominator } = x.ring().descriptor() else {
        return Err(Error::Precondition(format!(
            "{} is not a localization",
            x.ring()
        )));
    };
    let (nx, px) = parts(x.value());
    let (ny, py) = parts(y.value());
    let lhs = base.mul(nx, &base.pow(denominator, py));
    let rhs = base.mul(ny, &base.pow(denominator, px));
    Ok(lhs == rhs)
}
