//! Dense univariate polynomials over Q with Sturm-sequence root counting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ring::Ring;

/// Coefficients lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly(Vec<BigRational>);

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl UniPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly(c)
    }

    /// Reads a polynomial over Q (or Z) in at most the one variable `var`.
    pub fn from_multi(p: &MultiPoly, var: &str) -> Result<Self> {
        if let Some(other) = p.vars().iter().find(|v| *v != var) {
            return Err(Error::Precondition(format!(
                "{p} is not univariate in `{var}` (mentions `{other}`)"
            )));
        }
        let terms = p.rational_terms().ok_or_else(|| {
            Error::Precondition(format!("{p} does not have rational coefficients"))
        })?;
        let deg = terms.iter().map(|(e, _)| *e).max().unwrap_or(0) as usize;
        let mut c = vec![BigRational::zero(); deg + 1];
        for (e, q) in terms {
            c[e as usize] = q;
        }
        Ok(Self::new(c))
    }

    pub fn to_multi(&self, var: &str) -> MultiPoly {
        let q = Ring::rationals();
        let t = MultiPoly::var(&q, var);
        let mut acc = MultiPoly::zero(&q);
        for c in self.0.iter().rev() {
            acc = &(&acc * &t) + &MultiPoly::from_rational(&q, c).expect("rational");
        }
        acc
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero")
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly(Vec::new());
        }
        let mut c = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn neg(&self) -> Self {
        UniPoly(self.0.iter().map(|c| -c).collect())
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (UniPoly(Vec::new()), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        let lead = d.lead();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / lead;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] = &r[k + j] - &c * dc;
                }
            }
            q[k] = c;
        }
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().clone();
        UniPoly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        IntPoly::from_rational(self).gcd(&IntPoly::from_rational(other)).to_rational().monic()
    }

    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::new(vec![rat(1)]), UniPoly(Vec::new()));
        let (mut t0, mut t1) = (UniPoly(Vec::new()), UniPoly::new(vec![rat(1)]));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.add(&q.mul(&s1).neg());
            let t2 = t0.add(&q.mul(&t1).neg());
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = UniPoly::new(vec![r0.lead().recip()]);
        (r0.mul(&l), s0.mul(&l), t0.mul(&l))
    }

    /// Same roots, each simple.
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    /// Sturm chain `p, p', -rem(p, p'), ...`; each member is a positive
    /// multiple of the classical one, so sign variations agree.
    pub fn sturm_chain(&self) -> Vec<IntPoly> {
        IntPoly::from_rational(self).sturm_chain()
    }
}

/// Primitive integer polynomial standing in for a positive multiple of a
/// rational one. Only signs are read off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn from_rational(u: &UniPoly) -> Self {
        let l = u.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly(u.0.iter().map(|c| c.numer() * (&l / c.denom())).collect()).primitive()
    }

    pub fn to_rational(&self) -> UniPoly {
        UniPoly::new(self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Divides by the positive content and trims zeros.
    fn primitive(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        let g = self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in &mut self.0 {
                *c /= &g;
            }
        }
        self
    }

    fn derivative(&self) -> Self {
        IntPoly(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()).primitive()
    }

    fn neg(&self) -> Self {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    /// Primitive part of the remainder of `|lc(d)|^k * self` by `d`.
    fn prem(&self, d: &Self) -> Self {
        let dd = d.degree();
        let lead = d.0.last().expect("nonzero divisor");
        let (scale, sign) = (lead.abs(), lead.signum());
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.last().expect("nonempty").clone();
            let shift = r.len() - 1 - dd;
            for c in r.iter_mut() {
                *c *= &scale;
            }
            let f = &top * &sign;
            for (j, dc) in d.0.iter().enumerate() {
                r[shift + j] -= &f * dc;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            let g = r.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            if !g.is_zero() && !g.is_one() {
                for c in &mut r {
                    *c /= &g;
                }
            }
        }
        IntPoly(r).primitive()
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = r;
        }
        a
    }

    fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let r = chain[n - 2].prem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        chain
    }

    /// Sign of the value at `x`, by fraction-free Horner evaluation.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let Some((top, rest)) = self.0.split_last() else {
            return 0;
        };
        let (n, d) = (x.numer(), x.denom());
        let mut acc = top.clone();
        let mut dpow = d.clone();
        for c in rest.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        match acc.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        }
    }
}

pub(crate) fn variations(chain: &[IntPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

pub(crate) fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}
