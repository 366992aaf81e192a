//! Explicit homotopies between loops: evaluation and section maps for a
//! polynomial parameter, nilpotent lifting and contraction, graded
//! deformation, product rings and basepoint shifting. Every construction is
//! verified before it is returned.

mod graded;
mod nil;

pub use graded::{graded_homotopy, swan_weibel_map};
pub use nil::{
    connect_to_identity, contract_nil_loop, elementary_decomposition, factor_with,
    kernel_contraction, lift_loop_mod_nil, ElemFactorization, FormulaVariant,
};

use crate::error::{Error, Result};
use crate::loops::{verify_homotopy, verify_loop, HomotopyCert, LoopRep};
use crate::matrix::Mat2;
use crate::poly::MultiPoly;
use crate::report::Report;
use crate::ring::{Elem, Ring, RingDescriptor};

/// Fails when `var` already occurs in one of the matrices.
pub(crate) fn ensure_fresh(var: &str, ms: &[&Mat2]) -> Result<()> {
    if ms.iter().any(|m| m.vars().iter().any(|v| v == var)) {
        return Err(Error::Precondition(format!("variable `{var}` is not fresh")));
    }
    Ok(())
}

/// Substitutes `param := value` and revalidates the loop.
pub fn eval_loop_at(a: &LoopRep, param: &str, value: &MultiPoly) -> Result<LoopRep> {
    if param == a.loop_var() {
        return Err(Error::Precondition(format!("`{param}` is the loop variable")));
    }
    if value.ring() != a.ring() {
        return Err(Error::mismatch(value.ring(), a.ring()));
    }
    verify_loop(&a.matrix().subs(param, value), a.loop_var())
}

/// `M = a(X(1-W)) theta(T, 1-W)^-1 b(XW)`: a certificate from `a` to `b`
/// given `theta` relating their evaluations at `X = 0`.
pub fn polyring_injectivity_homotopy(
    a: &LoopRep,
    b: &LoopRep,
    theta: &HomotopyCert,
    param: &str,
) -> Result<HomotopyCert> {
    let t = a.loop_var();
    let w = theta.homotopy_var.as_str();
    if a.ring() != b.ring() {
        return Err(Error::mismatch(a.ring(), b.ring()));
    }
    if theta.matrix.ring() != a.ring() {
        return Err(Error::mismatch(theta.matrix.ring(), a.ring()));
    }
    let ring = a.ring();
    let zero = MultiPoly::zero(ring);
    let mut pre = Report::new();
    pre.check("loop-variable", b.loop_var() == t && theta.loop_var == t, || {
        format!("expected loop variable `{t}` throughout")
    });
    pre.check(
        "fresh-homotopy-variable",
        w != param && w != t && !a.matrix().vars().iter().chain(&b.matrix().vars()).any(|v| v == w),
        || format!("`{w}` occurs in the loops"),
    );
    pre.merge("theta", verify_homotopy(theta));
    let a0 = a.matrix().subs(param, &zero);
    let b0 = b.matrix().subs(param, &zero);
    pre.check("theta-start", theta.start == a0, || {
        format!("theta starts at {}, a({param}=0) is {a0}", theta.start)
    });
    pre.check("theta-end", theta.end == b0, || {
        format!("theta ends at {}, b({param}=0) is {b0}", theta.end)
    });
    pre.into_precondition()?;

    let x = MultiPoly::var(ring, param);
    let wv = MultiPoly::var(ring, w);
    let one = MultiPoly::one(ring);
    let one_minus_w = &one - &wv;
    let a_part = a.matrix().subs(param, &(&x * &one_minus_w));
    let theta_part = theta.matrix.subs(w, &one_minus_w).sl2_inverse()?;
    let b_part = b.matrix().subs(param, &(&x * &wv));
    let m = a_part.mul_unchecked(&theta_part).mul_unchecked(&b_part);
    let cert = HomotopyCert::new(m, t, w, a.matrix().clone(), b.matrix().clone());
    let r = verify_homotopy(&cert);
    if !r.is_ok() {
        return Err(Error::Internal(r.to_string()));
    }
    Ok(cert)
}

/// `a((X - 1) S + 1)`: a certificate from `a(X = 1)` (at `S = 0`) to `a` (at `S = 1`).
pub fn basepoint_shift_homotopy(a: &LoopRep, param: &str, s: &str) -> Result<HomotopyCert> {
    if param == a.loop_var() || s == a.loop_var() || s == param {
        return Err(Error::Precondition("variables must be distinct".into()));
    }
    ensure_fresh(s, &[a.matrix()])?;
    let ring = a.ring();
    let x = MultiPoly::var(ring, param);
    let sv = MultiPoly::var(ring, s);
    let one = MultiPoly::one(ring);
    let shifted = &(&(&x - &one) * &sv) + &one;
    let m = a.matrix().subs(param, &shifted);
    let start = a.matrix().at(param, 1);
    let cert = HomotopyCert::new(m, a.loop_var(), s, start, a.matrix().clone());
    let r = verify_homotopy(&cert);
    if !r.is_ok() {
        return Err(Error::Internal(r.to_string()));
    }
    Ok(cert)
}

/// Component-wise projection of a loop over `R x S`.
pub fn product_split(a: &LoopRep) -> Result<(LoopRep, LoopRep)> {
    let RingDescriptor::Product(l, r) = a.ring().descriptor() else {
        return Err(Error::Precondition(format!("{} is not a product ring", a.ring())));
    };
    let left = a.matrix().map(|p| {
        p.map_coeffs(l, |c| match c {
            Elem::Pair(x, _) => (**x).clone(),
            _ => unreachable!("product payload"),
        })
    });
    let right = a.matrix().map(|p| {
        p.map_coeffs(r, |c| match c {
            Elem::Pair(_, y) => (**y).clone(),
            _ => unreachable!("product payload"),
        })
    });
    Ok((verify_loop(&left, a.loop_var())?, verify_loop(&right, a.loop_var())?))
}

/// Pairs two loops in the same variable into a loop over the product ring.
pub fn product_join(left: &LoopRep, right: &LoopRep) -> Result<LoopRep> {
    if left.loop_var() != right.loop_var() {
        return Err(Error::Precondition("loop variables differ".into()));
    }
    let (lr, rr) = (left.ring().clone(), right.ring().clone());
    let prod = Ring::product(lr.clone(), rr.clone());
    let mut entries = Vec::with_capacity(4);
    for i in 0..2 {
        for j in 0..2 {
            let l = left.matrix().get(i, j).map_coeffs(&prod, |c| {
                Elem::Pair(Box::new(c.clone()), Box::new(rr.zero()))
            });
            let r = right.matrix().get(i, j).map_coeffs(&prod, |c| {
                Elem::Pair(Box::new(lr.zero()), Box::new(c.clone()))
            });
            entries.push(&l + &r);
        }
    }
    let [a, b, c, d]: [MultiPoly; 4] = entries.try_into().expect("four entries");
    verify_loop(&Mat2::new(a, b, c, d)?, left.loop_var())
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

    fn e12_loop(s: &str) -> LoopRep {
        verify_loop(&Mat2::e12(p(s)), "T").unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let a = e12_loop("X*T*(T-1)");
        assert!(eval_loop_at(&a, "X", &p("0")).unwrap().is_constant_identity());
        assert_eq!(eval_loop_at(&a, "X", &p("1")).unwrap(), e12_loop("T*(T-1)"));
        let b = e12_loop("T*(T-1)");
        assert_eq!(eval_loop_at(&b, "X", &p("0")).unwrap(), b);
    }

    #[test]
    fn injectivity_homotopy_examples() {
        let a = e12_loop("X*T*(T-1)");
        let theta = HomotopyCert::constant(&eval_loop_at(&a, "X", &p("0")).unwrap(), "W");
        let m = polyring_injectivity_homotopy(&a, &a, &theta, "X").unwrap();
        assert_eq!(m.start, *a.matrix());
        let b = e12_loop("X^2*T*(T-1)");
        let m = polyring_injectivity_homotopy(&a, &b, &theta, "X").unwrap();
        assert_eq!(m.end, *b.matrix());
        let mut bad = theta.clone();
        bad.end = Mat2::e12(p("T"));
        assert!(matches!(
            polyring_injectivity_homotopy(&a, &b, &bad, "X"),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn basepoint_shift_examples() {
        let a = e12_loop("X*T*(T-1)");
        let c = basepoint_shift_homotopy(&a, "X", "S").unwrap();
        assert_eq!(c.start, Mat2::e12(p("T*(T-1)")));
        let b = e12_loop("T*(T-1)");
        let c = basepoint_shift_homotopy(&b, "X", "S").unwrap();
        assert_eq!(c.matrix, *b.matrix());
    }

    #[test]
    fn product_split_join() {
        let r = Ring::dual(2).unwrap();
        let left = e12_loop("T*(T-1)");
        let right = LoopRep::constant(&r, "T");
        let joined = product_join(&left, &right).unwrap();
        let (l, rr) = product_split(&joined).unwrap();
        assert_eq!(l, left);
        assert_eq!(rr, right);
        let id = LoopRep::constant(joined.ring(), "T");
        let (l, rr) = product_split(&id).unwrap();
        assert!(l.is_constant_identity() && rr.is_constant_identity());
        assert!(product_split(&left).is_err());
    }
}
