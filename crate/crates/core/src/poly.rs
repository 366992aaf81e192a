//! Sparse multivariate polynomials over a [`Ring`].
//!
//! Exponent vectors are dense over a sorted list of variable names; only
//! variables that actually occur are kept, so two polynomials are equal
//! exactly when their term maps are.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring, RingDescriptor, NILPOTENT};

/// Exponent vector, ordered graded-lexicographically (first variable most significant).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct MultiPoly {
    ring: Ring,
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Elem>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.ring, self)
    }
}

impl MultiPoly {
    pub fn zero(ring: &Ring) -> Self {
        MultiPoly {
            ring: ring.clone(),
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, ring.one())
    }

    pub fn from_i64(ring: &Ring, n: i64) -> Self {
        Self::constant(ring, ring.from_i64(n))
    }

    pub fn from_rational(ring: &Ring, q: &BigRational) -> Result<Self> {
        Ok(Self::constant(ring, ring.from_rational(q)?))
    }

    pub fn constant(ring: &Ring, c: Elem) -> Self {
        let mut p = Self::zero(ring);
        let c = ring.canonical(c);
        if !ring.is_zero(&c) {
            p.terms.insert(Monomial(Vec::new()), c);
        }
        p
    }

    pub fn var(ring: &Ring, name: &str) -> Self {
        Self::monomial(ring, &[(name, 1)], ring.one())
    }

    /// `coeff * prod name^exp`.
    pub fn monomial(ring: &Ring, powers: &[(&str, u32)], coeff: Elem) -> Self {
        let mut exps: BTreeMap<String, u32> = BTreeMap::new();
        for (name, e) in powers {
            *exps.entry(name.to_string()).or_default() += e;
        }
        exps.retain(|_, e| *e > 0);
        let vars: Vec<String> = exps.keys().cloned().collect();
        let mono = Monomial(exps.values().copied().collect());
        let mut p = MultiPoly {
            ring: ring.clone(),
            vars,
            terms: BTreeMap::new(),
        };
        let coeff = ring.canonical(coeff);
        if !ring.is_zero(&coeff) {
            p.terms.insert(mono, coeff);
        }
        p.prune()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.vars.iter().any(|v| v == name)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term() == self.ring.one()
    }

    /// The coefficient if the polynomial is constant.
    pub fn constant_value(&self) -> Option<Elem> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn constant_term(&self) -> Elem {
        let zero = Monomial(vec![0; self.vars.len()]);
        self.terms
            .get(&zero)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Terms with their variable/exponent pairs, highest monomial first.
    pub fn named_terms(&self) -> Vec<(Vec<(String, u32)>, Elem)> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let powers = self
                    .vars
                    .iter()
                    .zip(&m.0)
                    .filter(|(_, e)| **e > 0)
                    .map(|(v, e)| (v.clone(), *e))
                    .collect();
                (powers, c.clone())
            })
            .collect()
    }

    fn leading(&self) -> Option<(&Monomial, &Elem)> {
        self.terms.iter().next_back()
    }

    fn prune(mut self) -> Self {
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if used.iter().all(|u| *u) {
            return self;
        }
        let vars = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, u)| **u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(m, c)| {
                let e = m.0.iter().zip(&used).filter(|(_, u)| **u).map(|(e, _)| *e).collect();
                (Monomial(e), c)
            })
            .collect();
        MultiPoly {
            ring: self.ring,
            vars,
            terms,
        }
    }

    fn merged_vars(&self, other: &Self) -> Vec<String> {
        let set: BTreeSet<&String> = self.vars.iter().chain(&other.vars).collect();
        set.into_iter().cloned().collect()
    }

    /// Term map re-expressed over a superset of this polynomial's variables.
    fn aligned(&self, vars: &[String]) -> BTreeMap<Monomial, Elem> {
        if vars == self.vars.as_slice() {
            return self.terms.clone();
        }
        let index: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; vars.len()];
                for (k, &i) in index.iter().enumerate() {
                    e[i] = m.0[k];
                }
                (Monomial(e), c.clone())
            })
            .collect()
    }

    fn assert_same_ring(&self, other: &Self) {
        assert!(
            self.ring == other.ring,
            "polynomial ring mismatch: {} vs {}",
            self.ring,
            other.ring
        );
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::mismatch(&self.ring, &other.ring));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self * other)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        self.assert_same_ring(other);
        let vars = self.merged_vars(other);
        let mut terms = self.aligned(&vars);
        for (m, c) in other.aligned(&vars) {
            let c = if negate { self.ring.neg(&c) } else { c };
            match terms.get_mut(&m) {
                Some(existing) => {
                    let sum = self.ring.add(existing, &c);
                    if self.ring.is_zero(&sum) {
                        terms.remove(&m);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    terms.insert(m, c);
                }
            }
        }
        MultiPoly {
            ring: self.ring.clone(),
            vars,
            terms,
        }
        .prune()
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let vars = self.merged_vars(other);
        let a = self.aligned(&vars);
        let b = other.aligned(&vars);
        let mut terms: BTreeMap<Monomial, Elem> = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let prod = self.ring.mul(ca, cb);
                if self.ring.is_zero(&prod) {
                    continue;
                }
                let m = Monomial(ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect());
                match terms.get_mut(&m) {
                    Some(existing) => *existing = self.ring.add(existing, &prod),
                    None => {
                        terms.insert(m, prod);
                    }
                }
            }
        }
        terms.retain(|_, c| !self.ring.is_zero(c));
        MultiPoly {
            ring: self.ring.clone(),
            vars,
            terms,
        }
        .prune()
    }

    pub fn scale(&self, c: &Elem) -> Self {
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            let p = self.ring.mul(a, c);
            if !self.ring.is_zero(&p) {
                terms.insert(m.clone(), p);
            }
        }
        MultiPoly {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            terms,
        }
        .prune()
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution of variables by polynomials over the same ring.
    pub fn substitute(&self, bindings: &BTreeMap<String, MultiPoly>) -> Result<Self> {
        for b in bindings.values() {
            self.check(b)?;
        }
        if !self.vars.iter().any(|v| bindings.contains_key(v)) {
            return Ok(self.clone());
        }
        let images: Vec<MultiPoly> = self
            .vars
            .iter()
            .map(|v| {
                bindings
                    .get(v)
                    .cloned()
                    .unwrap_or_else(|| Self::var(&self.ring, v))
            })
            .collect();
        let mut cache: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![Self::one(&self.ring), p.clone()])
            .collect();
        let mut acc = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut term = Self::constant(&self.ring, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                term = &term * &cache[i][e as usize];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Substitutes a single variable.
    pub fn subs(&self, name: &str, value: &MultiPoly) -> Self {
        let mut b = BTreeMap::new();
        b.insert(name.to_string(), value.clone());
        self.substitute(&b).expect("same ring")
    }

    /// Substitutes an integer value for a variable.
    pub fn at(&self, name: &str, value: i64) -> Self {
        self.subs(name, &Self::from_i64(&self.ring, value))
    }

    /// Coefficients with respect to `name`: entry `e` is the coefficient of `name^e`.
    pub fn split_var(&self, name: &str) -> Vec<MultiPoly> {
        let Some(i) = self.vars.iter().position(|v| v == name) else {
            return vec![self.clone()];
        };
        let d = self.degree_in(name) as usize;
        let mut buckets: Vec<BTreeMap<Monomial, Elem>> = vec![BTreeMap::new(); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            buckets[k].insert(Monomial(e), c.clone());
        }
        buckets
            .into_iter()
            .map(|terms| {
                MultiPoly {
                    ring: self.ring.clone(),
                    vars: self.vars.clone(),
                    terms,
                }
                .prune()
            })
            .collect()
    }

    /// Inverse of [`split_var`](Self::split_var).
    pub fn join_var(ring: &Ring, parts: Vec<MultiPoly>, name: &str) -> Self {
        let x = Self::var(ring, name);
        let mut acc = Self::zero(ring);
        let mut power = Self::one(ring);
        for (k, p) in parts.into_iter().enumerate() {
            if k > 0 {
                power = &power * &x;
            }
            if !p.is_zero() {
                acc = &acc + &(&p * &power);
            }
        }
        acc
    }

    /// Applies `f` to every coefficient, producing a polynomial over `target`.
    pub fn map_coeffs(&self, target: &Ring, f: impl Fn(&Elem) -> Elem) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let img = target.canonical(f(c));
            if !target.is_zero(&img) {
                terms.insert(m.clone(), img);
            }
        }
        MultiPoly {
            ring: target.clone(),
            vars: self.vars.clone(),
            terms,
        }
        .prune()
    }

    /// Multiplies every term by `weight(monomial)`-dependent factors; used for
    /// grading-type homomorphisms. `f` maps each term to a polynomial summand.
    pub fn map_terms(&self, f: impl Fn(&[(String, u32)], &Elem) -> MultiPoly) -> Self {
        let mut acc = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let powers: Vec<(String, u32)> = self
                .vars
                .iter()
                .zip(&m.0)
                .map(|(v, e)| (v.clone(), *e))
                .collect();
            acc = &acc + &f(&powers, c);
        }
        acc
    }

    /// `self / d` when the division is exact; coefficients must lie in a domain.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() || self.ring != d.ring {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let vars = self.merged_vars(d);
        if !d.vars.iter().all(|v| self.vars.contains(v)) {
            return None;
        }
        let (lm, lc) = {
            let (m, c) = d.leading().expect("nonzero");
            let aligned = d.aligned(&vars);
            let m = aligned
                .keys()
                .next_back()
                .cloned()
                .unwrap_or_else(|| m.clone());
            (m, c.clone())
        };
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.ring);
        let mut steps = 0usize;
        while !rem.is_zero() {
            steps += 1;
            if steps > 100_000 {
                return None;
            }
            let aligned = rem.aligned(&vars);
            let (m, c) = aligned.iter().next_back().expect("nonzero");
            if !lm.divides(m) {
                return None;
            }
            let qc = self.ring.exact_div(c, &lc)?;
            let exps: Vec<(&str, u32)> = vars
                .iter()
                .zip(m.0.iter().zip(&lm.0))
                .map(|(v, (a, b))| (v.as_str(), a - b))
                .collect();
            let t = Self::monomial(&self.ring, &exps, qc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Inverse in the polynomial ring, when it exists. Over dual numbers a
    /// polynomial is a unit exactly when it reduces to a nonzero constant.
    pub fn try_inverse(&self) -> Result<MultiPoly> {
        if let Some(k) = self.ring.dual_order() {
            let reduced = self.reduce_nil();
            let Some(Elem::Rat(c)) = reduced.constant_value() else {
                return Err(Error::NotAUnit(format!(
                    "{self} does not reduce to a constant modulo eps"
                )));
            };
            if c.is_zero() {
                return Err(Error::NotAUnit(format!("{self} is nilpotent")));
            }
            let c_inv = self.ring.from_rational(&c.recip())?;
            let minus_n = &Self::one(&self.ring) - &self.scale(&c_inv);
            let mut term = Self::one(&self.ring);
            let mut sum = term.clone();
            for _ in 1..k {
                term = &term * &minus_n;
                sum = &sum + &term;
            }
            return Ok(sum.scale(&c_inv));
        }
        match self.constant_value() {
            Some(c) => Ok(Self::constant(&self.ring, self.ring.inverse(&c)?)),
            None => Err(Error::NotAUnit(format!("{self} is not a constant unit"))),
        }
    }

    /// Coefficient-wise image modulo the nilradical of a dual-number ring.
    pub fn reduce_nil(&self) -> MultiPoly {
        let r = self.ring.clone();
        self.map_coeffs(&Ring::rationals(), |c| Elem::Rat(r.reduce_dual(c)))
    }

    /// Coefficient-wise embedding of a rational polynomial into `target`.
    pub fn embed(&self, target: &Ring) -> Result<MultiPoly> {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let img = match c {
                Elem::Rat(q) => target.from_rational(q)?,
                Elem::Int(n) => target.from_int(n),
                _ => {
                    return Err(Error::mismatch(&self.ring, target));
                }
            };
            let mut p = MultiPoly {
                ring: target.clone(),
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
            if !target.is_zero(&img) {
                p.terms.insert(m.clone(), img);
            }
            out = &out + &p.prune();
        }
        Ok(out)
    }

    /// The image of `self / s^power` in the localization `target = base[1/s]`,
    /// where `self` lives over `base`.
    pub fn localize(&self, target: &Ring, power: u32) -> Result<MultiPoly> {
        let RingDescriptor::Localization { base, .. } = target.descriptor() else {
            return Err(Error::Precondition(format!("{target} is not a localization")));
        };
        if *base != self.ring {
            return Err(Error::mismatch(&self.ring, base));
        }
        Ok(self.map_coeffs(target, |c| Elem::Frac {
            num: Box::new(c.clone()),
            power,
        }))
    }

    /// Rewrites the polynomial over `Q`, promoting the coefficient ring's
    /// generators (`eps`, coordinates) to ordinary variables. Not available
    /// for localizations and products.
    pub fn flatten(&self) -> Option<MultiPoly> {
        let q = Ring::rationals();
        match self.ring.descriptor() {
            RingDescriptor::Rationals => Some(self.clone()),
            RingDescriptor::Integers => Some(self.map_coeffs(&q, |c| match c {
                Elem::Int(n) => Elem::Rat(BigRational::from_integer(n.clone())),
                _ => unreachable!(),
            })),
            RingDescriptor::Dual { .. } => {
                let mut acc = Self::zero(&q);
                for (m, c) in &self.terms {
                    let Elem::Dual(coeffs) = c else { unreachable!() };
                    let mono = self.monomial_poly(&q, m);
                    for (j, a) in coeffs.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        let e = Self::monomial(&q, &[(NILPOTENT, j as u32)], Elem::Rat(a.clone()));
                        acc = &acc + &(&e * &mono);
                    }
                }
                Some(acc)
            }
            RingDescriptor::Poly { .. } | RingDescriptor::Quotient { .. } => {
                let mut acc = Self::zero(&q);
                for (m, c) in &self.terms {
                    let Elem::Poly(inner) = c else { unreachable!() };
                    acc = &acc + &(&inner.flatten()? * &self.monomial_poly(&q, m));
                }
                Some(acc)
            }
            RingDescriptor::Localization { .. } | RingDescriptor::Product(..) => None,
        }
    }

    fn monomial_poly(&self, ring: &Ring, m: &Monomial) -> MultiPoly {
        let powers: Vec<(&str, u32)> = self
            .vars
            .iter()
            .zip(&m.0)
            .map(|(v, e)| (v.as_str(), *e))
            .collect();
        Self::monomial(ring, &powers, ring.one())
    }

    /// Rational coefficients as a map keyed by exponent, for univariate use.
    pub(crate) fn rational_terms(&self) -> Option<Vec<(u32, BigRational)>> {
        if self.vars.len() > 1 {
            return None;
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let e = m.0.first().copied().unwrap_or(0);
                match c {
                    Elem::Rat(q) => Some((e, q.clone())),
                    Elem::Int(n) => Some((e, BigRational::from_integer(n.clone()))),
                    _ => None,
                }
            })
            .collect()
    }

    /// Common-denominator form of a polynomial over a localization:
    /// returns `(numerator over the base ring, n)` with `self = numerator / s^n`.
    pub fn over_common_denominator(&self) -> Option<(MultiPoly, u32)> {
        let RingDescriptor::Localization { base, denominator } = self.ring.descriptor() else {
            return None;
        };
        let top = self
            .terms
            .values()
            .map(|c| match c {
                Elem::Frac { power, .. } => *power,
                _ => 0,
            })
            .max()
            .unwrap_or(0);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let Elem::Frac { num, power } = c else { unreachable!() };
            let scaled = base.mul(num, &base.pow(denominator, top - power));
            terms.insert(m.clone(), scaled);
        }
        Some((
            MultiPoly {
                ring: base.clone(),
                vars: self.vars.clone(),
                terms,
            },
            top,
        ))
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.map_coeffs(&self.ring, |c| self.ring.neg(c))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(flat) = self.flatten() {
            return f.write_str(&format_rational_poly(&flat, &self.ring.coordinate_names()));
        }
        if let Some((num, n)) = self.over_common_denominator() {
            let RingDescriptor::Localization { base, denominator } = self.ring.descriptor() else {
                unreachable!()
            };
            return if n == 0 {
                write!(f, "{num}")
            } else {
                write!(f, "({num})/({})^{n}", base.format(denominator))
            };
        }
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .named_terms()
            .into_iter()
            .map(|(powers, c)| {
                let mono: Vec<String> = powers.iter().map(|(v, e)| power_str(v, *e)).collect();
                if mono.is_empty() {
                    self.ring.format(&c)
                } else {
                    format!("{}*{}", self.ring.format(&c), mono.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn power_str(v: &str, e: u32) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

/// Canonical text of a polynomial over `Q`: terms in descending graded-lex order.
/// Coefficient-ring generators listed in `front` are written first in each monomial.
fn format_rational_poly(p: &MultiPoly, front: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (powers, c)) in p.named_terms().into_iter().enumerate() {
        let Elem::Rat(c) = c else { unreachable!() };
        let negative = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let (mut mono, rest): (Vec<_>, Vec<_>) = powers.iter().partition(|(v, _)| front.contains(v));
        mono.extend(rest);
        let mono: Vec<String> = mono.iter().map(|(v, e)| power_str(v, *e)).collect();
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono.join("*"));
        } else {
            out.push_str(&format!("{mag}*{}", mono.join("*")));
        }
    }
    out
}
