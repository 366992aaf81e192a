//! Matrices congruent to the identity modulo the nilradical of a dual-number ring.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::loops::{verify_homotopy, verify_loop, HomotopyCert, LoopRep};
use crate::matrix::{ElemKind, Mat2};
use crate::poly::MultiPoly;
use crate::report::Report;
use crate::ring::Ring;

use super::ensure_fresh;

/// Which reading of the six-factor product is used.
///
/// With `d = 1 + a4` and `x = (1 + a1) - d^-1 a12 a21`, the product is
/// `U(c1) L(c2) U(-x) L(a4) U(1) L(x - 1)`. `Displayed` takes
/// `c1 = d^-1 a21, c2 = x^-1 a12`; that multiplies out to the transpose of the
/// input unless `a12 = a21`. `Transposed` swaps the two roles and always works.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormulaVariant {
    Displayed,
    Transposed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElemFactorization {
    pub factors: Vec<(ElemKind, MultiPoly)>,
    pub target: Mat2,
    pub variant: FormulaVariant,
    /// `c1..c5` of the normalized shape
    /// `E12(c1) E21(c2) E12(-1 + c3) E21(c4) E12(1) E21(c5)`.
    pub coefficients: [MultiPoly; 5],
}

impl ElemFactorization {
    pub fn product(&self) -> Mat2 {
        let mut acc = Mat2::identity(self.target.ring());
        for (kind, p) in &self.factors {
            acc = acc.mul_unchecked(&Mat2::elementary(*kind, p.clone()));
        }
        acc
    }
}

/// Itemized check that `m` is congruent to the identity modulo eps.
fn congruence_report(m: &Mat2) -> Report {
    let mut r = Report::new();
    if m.ring().dual_order().is_none() {
        r.fail("ring", format!("expected a dual-number ring, got {}", m.ring()));
        return r;
    }
    let red = m.reduce_nil();
    for (i, j) in red.diff_positions(&Mat2::identity(red.ring())) {
        r.fail(
            format!("entry-{i}{j}"),
            format!("{} is not {} modulo eps", m.get(i - 1, j - 1), u8::from(i == j)),
        );
    }
    if r.checks.is_empty() {
        r.pass("congruent");
    }
    r
}

fn check_congruent(m: &Mat2) -> Result<()> {
    let r = congruence_report(m);
    if r.is_ok() {
        Ok(())
    } else {
        Err(Error::NotCongruent(r.to_string()))
    }
}

/// The six factors for one formula variant, without verification.
pub fn factor_with(alpha: &Mat2, variant: FormulaVariant) -> Result<ElemFactorization> {
    check_congruent(alpha)?;
    let det = alpha.det();
    if !det.is_one() {
        return Err(Error::NotSpecial(det.to_string()));
    }
    let ring = alpha.ring();
    let one = MultiPoly::one(ring);
    let [[e11, a12], [a21, e22]] = alpha.rows().clone();
    let a4 = &e22 - &one;
    let d_inv = e22.try_inverse()?;
    let x = &e11 - &(&(&d_inv * &a12) * &a21);
    let x_inv = x.try_inverse()?;
    let (up, low) = match variant {
        FormulaVariant::Displayed => (&a21, &a12),
        FormulaVariant::Transposed => (&a12, &a21),
    };
    let c1 = &d_inv * up;
    let c2 = &x_inv * low;
    let c3 = &one - &x;
    let c5 = &x - &one;
    let factors = vec![
        (ElemKind::E12, c1.clone()),
        (ElemKind::E21, c2.clone()),
        (ElemKind::E12, -&x),
        (ElemKind::E21, a4.clone()),
        (ElemKind::E12, one),
        (ElemKind::E21, c5.clone()),
    ];
    Ok(ElemFactorization {
        factors,
        target: alpha.clone(),
        variant,
        coefficients: [c1, c2, c3, a4, c5],
    })
}

/// Six-factor elementary decomposition of a matrix congruent to the identity
/// modulo eps. Tries the displayed formula first, then the transposed one;
/// the returned factorization multiplies back to `alpha` exactly.
pub fn elementary_decomposition(alpha: &Mat2) -> Result<ElemFactorization> {
    let mut last = None;
    for variant in [FormulaVariant::Displayed, FormulaVariant::Transposed] {
        let f = factor_with(alpha, variant)?;
        let p = f.product();
        if p == *alpha {
            return Ok(f);
        }
        last = Some(p);
    }
    Err(Error::DecompositionMismatch {
        expected: alpha.to_string(),
        actual: last.map(|m| m.to_string()).unwrap_or_default(),
    })
}

/// `E12(c1 s) E21(c2 s) E12(-1 + c3 s) E21(c4 s) E12(1) E21(c5 s)` for a symbol `s`.
fn scaled_product(f: &ElemFactorization, s: &MultiPoly) -> Mat2 {
    let ring = f.target.ring();
    let one = MultiPoly::one(ring);
    let [c1, c2, c3, c4, c5] = &f.coefficients;
    let factors = [
        Mat2::e12(c1 * s),
        Mat2::e21(c2 * s),
        Mat2::e12(&(c3 * s) - &one),
        Mat2::e21(c4 * s),
        Mat2::e12(one.clone()),
        Mat2::e21(c5 * s),
    ];
    factors
        .iter()
        .fold(Mat2::identity(ring), |acc, m| acc.mul_unchecked(m))
}

/// A path `beta(X)` with `beta(0) = I`, `beta(1) = alpha`, congruent to the
/// identity modulo eps for every `X`.
pub fn connect_to_identity(alpha: &Mat2, var: &str) -> Result<Mat2> {
    ensure_fresh(var, &[alpha])?;
    let f = elementary_decomposition(alpha)?;
    let x = MultiPoly::var(alpha.ring(), var);
    let beta = scaled_product(&f, &x);
    let mut r = Report::new();
    let b0 = beta.at(var, 0);
    r.check("start", b0.is_identity(), || format!("{var}=0 gives {b0}"));
    let b1 = beta.at(var, 1);
    r.check("end", b1 == *alpha, || format!("{var}=1 gives {b1}"));
    r.merge("path", congruence_report(&beta));
    if !r.is_ok() {
        return Err(Error::Internal(r.to_string()));
    }
    Ok(beta)
}

/// Contracts a loop congruent to the identity modulo eps: a certificate in
/// `(loop_var, homotopy_var)` from the constant loop to `a`.
pub fn contract_nil_loop(a: &LoopRep, homotopy_var: &str) -> Result<HomotopyCert> {
    ensure_fresh(homotopy_var, &[a.matrix()])?;
    if homotopy_var == a.loop_var() {
        return Err(Error::Precondition("homotopy variable equals the loop variable".into()));
    }
    let f = elementary_decomposition(a.matrix())?;
    let t = MultiPoly::var(a.ring(), homotopy_var);
    let beta = scaled_product(&f, &t);
    let cert = HomotopyCert::new(
        beta,
        a.loop_var(),
        homotopy_var,
        Mat2::identity(a.ring()),
        a.matrix().clone(),
    );
    let mut r = verify_homotopy(&cert);
    r.merge("path", congruence_report(&cert.matrix));
    if !r.is_ok() {
        return Err(Error::Internal(r.to_string()));
    }
    Ok(cert)
}

/// Lifts a rational loop to `target` given an entry-wise lift. The
/// determinant is corrected on the first column and the endpoints by
/// connecting matrices, so the result is a loop reducing to `beta_bar`.
pub fn lift_loop_mod_nil(beta_bar: &LoopRep, target: &Ring, chosen_lift: &Mat2) -> Result<LoopRep> {
    if target.dual_order().is_none() {
        return Err(Error::Precondition(format!("lift target {target} is not a dual-number ring")));
    }
    if chosen_lift.ring() != target {
        return Err(Error::mismatch(chosen_lift.ring(), target));
    }
    let red = chosen_lift.reduce_nil();
    if red != *beta_bar.matrix() {
        let at: Vec<String> = red
            .diff_positions(beta_bar.matrix())
            .iter()
            .map(|(i, j)| format!("entry-{i}{j}"))
            .collect();
        return Err(Error::WrongLift(format!("reduction differs at {}", at.join(", "))));
    }
    let x = beta_bar.loop_var();
    let det_inv = chosen_lift.det().try_inverse()?;
    let [[f1, f3], [f2, f4]] = chosen_lift.rows().clone();
    let alpha = Mat2::new(&det_inv * &f1, f3, &det_inv * &f2, f4)?;
    debug_assert!(alpha.det().is_one());

    let theta1 = connect_to_identity(&alpha.at(x, 0), x)?;
    let theta2 = connect_to_identity(&alpha.at(x, 1), x)?;
    let one = MultiPoly::one(target);
    let flip = &one - &MultiPoly::var(target, x);
    let theta1_flipped = theta1.subs(x, &flip).sl2_inverse()?;
    let gamma = theta1_flipped
        .mul_unchecked(&alpha)
        .mul_unchecked(&theta2.sl2_inverse()?);
    let lifted = verify_loop(&gamma, x).map_err(|e| Error::Internal(e.to_string()))?;
    if gamma.reduce_nil() != *beta_bar.matrix() {
        return Err(Error::Internal("corrected lift no longer reduces to the input".into()));
    }
    Ok(lifted)
}

/// Contracts `a` given a lifted two-variable matrix `beta(X, T)` whose
/// reduction deforms the reduction of `a` to the identity.
pub fn kernel_contraction(a: &LoopRep, beta: &Mat2, homotopy_var: &str) -> Result<HomotopyCert> {
    let x = a.loop_var();
    let t = homotopy_var;
    if beta.ring() != a.ring() {
        return Err(Error::mismatch(beta.ring(), a.ring()));
    }
    ensure_fresh(t, &[a.matrix()])?;
    let mut pre = Report::new();
    let d = beta.det();
    pre.check("beta-det", d.is_one(), || format!("determinant is {d}"));
    for (name, v) in [("beta-loop-start", 0), ("beta-loop-end", 1)] {
        let e = beta.at(x, v);
        pre.check(name, e.is_identity(), || format!("{x}={v} gives {e}"));
    }
    let start = beta.at(t, 0).mul_unchecked(&a.matrix().adjugate());
    let end = beta.at(t, 1);
    for (name, m) in [("start-congruence", &start), ("end-congruence", &end)] {
        let c = congruence_report(m);
        pre.check(name, c.is_ok(), || c.to_string());
    }
    pre.into_precondition()?;

    let gamma1 = contract_nil_loop(&verify_loop(&start, x)?, t)?;
    let gamma2 = contract_nil_loop(&verify_loop(&end, x)?, t)?;
    let one = MultiPoly::one(a.ring());
    let flip = &one - &MultiPoly::var(a.ring(), t);
    let g1 = gamma1.matrix.subs(t, &flip).sl2_inverse()?;
    let big = g1
        .mul_unchecked(beta)
        .mul_unchecked(&gamma2.matrix.sl2_inverse()?);
    let cert = HomotopyCert::new(big, x, t, a.matrix().clone(), Mat2::identity(a.ring()));
    let r = verify_homotopy(&cert);
    if !r.is_ok() {
        return Err(Error::Internal(r.to_string()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;

    fn dual(k: usize) -> Ring {
        Ring::dual(k).unwrap()
    }

    fn m(r: &Ring, e: [&str; 4]) -> Mat2 {
        let p = |s: &str| parse_poly(s, r).unwrap();
        Mat2::new(p(e[0]), p(e[1]), p(e[2]), p(e[3])).unwrap()
    }

    #[test]
    fn identity_factors_trivially() {
        let r = dual(2);
        let f = elementary_decomposition(&Mat2::identity(&r)).unwrap();
        assert_eq!(f.variant, FormulaVariant::Displayed);
        assert!(f.coefficients.iter().all(MultiPoly::is_zero));
        assert!(f.product().is_identity());
    }

    #[test]
    fn diagonal_example() {
        let r = dual(2);
        let alpha = m(&r, ["1 + eps", "0", "0", "1 - eps"]);
        let f = elementary_decomposition(&alpha).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let expected = vec![
            (ElemKind::E12, p("0")),
            (ElemKind::E21, p("0")),
            (ElemKind::E12, p("-(1 + eps)")),
            (ElemKind::E21, p("-eps")),
            (ElemKind::E12, p("1")),
            (ElemKind::E21, p("eps")),
        ];
        assert_eq!(f.factors, expected);
        assert_eq!(f.product(), alpha);
        let beta = connect_to_identity(&alpha, "X").unwrap();
        assert_eq!(beta.at("X", 1), alpha);
    }

    #[test]
    fn asymmetric_input_needs_the_transposed_reading() {
        let r = dual(2);
        let alpha = m(&r, ["1", "eps", "0", "1"]);
        let displayed = factor_with(&alpha, FormulaVariant::Displayed).unwrap();
        assert_eq!(displayed.product(), alpha.transpose());
        let f = elementary_decomposition(&alpha).unwrap();
        assert_eq!(f.variant, FormulaVariant::Transposed);
    }

    #[test]
    fn non_congruent_input_is_rejected() {
        let r = dual(2);
        let alpha = m(&r, ["1", "1", "0", "1"]);
        assert!(matches!(elementary_decomposition(&alpha), Err(Error::NotCongruent(_))));
    }

    #[test]
    fn nil_loop_contractions() {
        let r = dual(2);
        let a = verify_loop(&m(&r, ["1", "eps*X*(X-1)", "0", "1"]), "X").unwrap();
        let c = contract_nil_loop(&a, "T").unwrap();
        assert_eq!(c.matrix, m(&r, ["1", "eps*X*(X-1)*T", "0", "1"]));
        let b = Mat2::e12(parse_poly("eps*X*(X-1)", &r).unwrap())
            .mul(&Mat2::e21(parse_poly("eps*X^2*(X-1)", &r).unwrap()))
            .unwrap();
        let b = verify_loop(&b, "X").unwrap();
        assert!(verify_homotopy(&contract_nil_loop(&b, "T").unwrap()).is_ok());
    }

    #[test]
    fn lift_with_determinant_correction() {
        let r = dual(2);
        let q = Ring::rationals();
        let bar = verify_loop(&Mat2::identity(&q), "X").unwrap();
        let chosen = m(&r, ["1", "0", "eps*X", "1 + eps*X"]);
        let lifted = lift_loop_mod_nil(&bar, &r, &chosen).unwrap();
        assert!(lifted.matrix().reduce_nil().is_identity());
        let same = lift_loop_mod_nil(&bar, &r, &Mat2::identity(&r)).unwrap();
        assert!(same.is_constant_identity());
        let wrong = m(&r, ["1", "X", "0", "1"]);
        assert!(matches!(lift_loop_mod_nil(&bar, &r, &wrong), Err(Error::WrongLift(_))));
    }

    #[test]
    fn kernel_contraction_examples() {
        let r = dual(2);
        let a = verify_loop(&m(&r, ["1", "eps*X*(X-1)", "0", "1"]), "X").unwrap();
        let beta = m(&r, ["1", "eps*X*(X-1)*(1-T)", "0", "1"]);
        let c = kernel_contraction(&a, &beta, "T").unwrap();
        assert_eq!(c.start, *a.matrix());
        let id = LoopRep::constant(&r, "X");
        let c = kernel_contraction(&id, &Mat2::identity(&r), "T").unwrap();
        assert!(c.matrix.is_identity());
        let bad = m(&r, ["1", "eps*X*(1-T)", "0", "1"]);
        match kernel_contraction(&a, &bad, "T") {
            Err(Error::PreconditionFailed(rep)) => assert!(rep.has_violation("beta-loop-end")),
            other => panic!("{other:?}"),
        }
    }
}
