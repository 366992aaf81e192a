//! Random instances for tests and benchmarks: polynomials, loops, nilpotent
//! matrices and unimodular rows. Seed the generator for reproducible corpora.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::gamma::{verify_unimodular, UnimodRow};
use crate::loops::{loop_power, loop_product, verify_loop, LoopRep};
use crate::matrix::{ElemKind, Mat2};
use crate::poly::MultiPoly;
use crate::ring::Ring;
use crate::winding::generator_loop;

/// `n/d` with `|n| <= 5`, `1 <= d <= 3`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-5..=5)), BigInt::from(rng.gen_range(1..=3)))
}

/// A random polynomial in `vars` of total degree at most `max_deg`, with at
/// most `terms` terms and small rational coefficients.
pub fn poly<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, vars: &[&str], max_deg: u32, terms: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(ring);
    for _ in 0..rng.gen_range(1..=terms.max(1)) {
        let mut left = rng.gen_range(0..=max_deg);
        let mut powers = Vec::new();
        for v in vars {
            if left == 0 {
                break;
            }
            let e = rng.gen_range(0..=left);
            left -= e;
            powers.push((*v, e));
        }
        let c = ring.from_rational(&small_rational(rng)).expect("ring contains Q");
        p = &p + &MultiPoly::monomial(ring, &powers, c);
    }
    p
}

/// `var (var - 1) f` for a random `f`: vanishes at both endpoints.
pub fn vanishing<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, var: &str, others: &[&str], max_deg: u32) -> MultiPoly {
    let mut vars = vec![var];
    vars.extend_from_slice(others);
    let x = MultiPoly::var(ring, var);
    let f = poly(rng, ring, &vars, max_deg, 3);
    &(&x * &(&x - &MultiPoly::one(ring))) * &f
}

fn random_kind<R: Rng + ?Sized>(rng: &mut R) -> ElemKind {
    if rng.gen_bool(0.5) {
        ElemKind::E12
    } else {
        ElemKind::E21
    }
}

/// A product of `factors` elementary matrices whose arguments vanish at
/// `var = 0, 1`; always a loop in `var`.
pub fn elementary_loop<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, var: &str, others: &[&str], factors: usize) -> LoopRep {
    let mut m = Mat2::identity(ring);
    for _ in 0..factors {
        let e = Mat2::elementary(random_kind(rng), vanishing(rng, ring, var, others, 2));
        m = m.mul(&e).expect("same ring");
    }
    verify_loop(&m, var).expect("elementary products are loops")
}

/// A rational loop in `T`: a generator power (`|k| <= 3`) times a short
/// elementary loop, in random order.
pub fn generator_word<R: Rng + ?Sized>(rng: &mut R) -> (LoopRep, i64) {
    let k = rng.gen_range(-3..=3);
    let g = loop_power(&generator_loop(), k);
    let n = rng.gen_range(0..=2);
    let e = elementary_loop(rng, &Ring::rationals(), "T", &[], n);
    let l = if rng.gen_bool(0.5) {
        loop_product(&g, &e)
    } else {
        loop_product(&e, &g)
    };
    (l.expect("same ring and variable"), k)
}

/// `eps * p` for a random rational `p` in `vars` over `Q[eps]/(eps^k)`.
pub fn nilpotent<R: Rng + ?Sized>(rng: &mut R, ring: &Ring, vars: &[&str], max_deg: u32) -> MultiPoly {
    let eps = MultiPoly::constant(ring, ring.coordinate("eps").expect("dual ring"));
    let k = ring.dual_order().expect("dual ring");
    let mut out = MultiPoly::zero(ring);
    for j in 1..k {
        if rng.gen_bool(0.7) {
            out = &out + &(&eps.pow(j as u32) * &poly(rng, ring, vars, max_deg, 2));
        }
    }
    out
}

/// A constant matrix over `Q[eps]/(eps^k)` congruent to the identity: a
/// product of elementary factors with nilpotent arguments and a diagonal
/// `diag(u, u^-1)` with `u = 1 + nilpotent`.
pub fn nil_matrix<R: Rng + ?Sized>(rng: &mut R, order: usize) -> Mat2 {
    let ring = Ring::dual(order).expect("order >= 2");
    let one = MultiPoly::one(&ring);
    let u = &one + &nilpotent(rng, &ring, &[], 0);
    let ui = u.try_inverse().expect("1 + nilpotent is a unit");
    let zero = MultiPoly::zero(&ring);
    let mut m = Mat2::new(u, zero.clone(), zero, ui).expect("same ring");
    for _ in 0..rng.gen_range(1..=4) {
        let e = Mat2::elementary(random_kind(rng), nilpotent(rng, &ring, &[], 0));
        m = if rng.gen_bool(0.5) { m.mul(&e) } else { e.mul(&m) }.expect("same ring");
    }
    m
}

/// A loop in `var` over `Q[eps]/(eps^k)` congruent to the identity.
pub fn nil_loop<R: Rng + ?Sized>(rng: &mut R, order: usize, var: &str) -> LoopRep {
    let ring = Ring::dual(order).expect("order >= 2");
    let mut m = Mat2::identity(&ring);
    for _ in 0..rng.gen_range(1..=3) {
        let x = MultiPoly::var(&ring, var);
        let v = &(&x * &(&x - &MultiPoly::one(&ring))) * &nilpotent(rng, &ring, &[var], 2);
        m = m.mul(&Mat2::elementary(random_kind(rng), v)).expect("same ring");
    }
    verify_loop(&m, var).expect("vanishing elementary factors give a loop")
}

/// A unimodular row over the rationals in `var`: the first column of a
/// random product of elementary matrices, with the witness read off the
/// product.
pub fn unimodular_row<R: Rng + ?Sized>(rng: &mut R, var: &str) -> UnimodRow {
    let ring = Ring::rationals();
    let mut m = Mat2::identity(&ring);
    for _ in 0..rng.gen_range(1..=3) {
        let e = Mat2::elementary(random_kind(rng), poly(rng, &ring, &[var], 2, 2));
        m = m.mul(&e).expect("same ring");
    }
    let (a, b) = m.column(0);
    let b1 = m.get(1, 1).clone();
    let b2 = -m.get(0, 1);
    verify_unimodular(&a, &b, Some((&b1, &b2))).expect("columns of SL2 matrices are unimodular")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_satisfy_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 2..=4 {
            let m = nil_matrix(&mut rng, k);
            assert!(m.det().is_one());
            assert!(m.reduce_nil().is_identity());
            let l = nil_loop(&mut rng, k, "X");
            assert!(l.matrix().reduce_nil().is_identity());
        }
        let (w, _) = generator_word(&mut rng);
        assert_eq!(w.loop_var(), "T");
        let r = unimodular_row(&mut rng, "T");
        assert_eq!(r.ring(), &Ring::rationals());
    }
}
