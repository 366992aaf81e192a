//! Exact coefficient rings.
//!
//! A [`Ring`] is a cheap, shareable handle to a [`RingDescriptor`]; ring
//! elements are bare [`Elem`] payloads whose meaning is fixed by the ring
//! that operates on them. Every operation returns a canonical payload, so
//! structural equality of payloads is equality in the ring.

mod dual;
mod localization;
mod quotient;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

pub use localization::localization_equal;

/// Name of the nilpotent generator of the dual-number rings.
pub const NILPOTENT: &str = "eps";

/// Structural description of a supported coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingDescriptor {
    Integers,
    Rationals,
    /// `Q[eps]/(eps^order)`.
    Dual { order: usize },
    /// Polynomial ring over `Integers` or `Rationals` in sorted, named coordinates.
    Poly { base: Ring, vars: Vec<String> },
    /// `base / (relation)` with `relation` monic in `var`; `base` is a `Poly` ring.
    Quotient {
        base: Ring,
        relation: MultiPoly,
        var: String,
    },
    /// `base[1/denominator]` over an integral domain.
    Localization { base: Ring, denominator: Elem },
    Product(Ring, Ring),
}

/// Canonical payload of a ring element. The owning [`Ring`] gives it meaning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    /// Exactly `order` coefficients, lowest power of eps first.
    Dual(Vec<BigRational>),
    /// Element of a `Poly` ring, or the reduced representative in a `Quotient`.
    Poly(MultiPoly),
    /// `num / denominator^power` with `power` minimal.
    Frac { num: Box<Elem>, power: u32 },
    Pair(Box<Elem>, Box<Elem>),
}

/// Shared handle to a ring descriptor.
#[derive(Clone)]
pub struct Ring(Arc<RingDescriptor>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.descriptor() {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::Rationals => write!(f, "Q"),
            RingDescriptor::Dual { order } => write!(f, "Q[eps]/(eps^{order})"),
            RingDescriptor::Poly { base, vars } => write!(f, "{base}[{}]", vars.join(", ")),
            RingDescriptor::Quotient { base, relation, .. } => write!(f, "{base}/({relation})"),
            RingDescriptor::Localization { base, denominator } => {
                write!(f, "{base}_({})", base.format(denominator))
            }
            RingDescriptor::Product(l, r) => write!(f, "{l} x {r}"),
        }
    }
}

impl Ring {
    fn new(d: RingDescriptor) -> Self {
        Ring(Arc::new(d))
    }

    pub fn integers() -> Self {
        Self::new(RingDescriptor::Integers)
    }

    pub fn rationals() -> Self {
        Self::new(RingDescriptor::Rationals)
    }

    pub fn dual(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidDescriptor(format!(
                "dual-number order must be at least 2, got {order}"
            )));
        }
        Ok(Self::new(RingDescriptor::Dual { order }))
    }

    pub fn polynomial(base: Ring, vars: &[&str]) -> Result<Self> {
        if !matches!(
            base.descriptor(),
            RingDescriptor::Integers | RingDescriptor::Rationals
        ) {
            return Err(Error::InvalidDescriptor(format!(
                "polynomial rings are supported over Z or Q only, not {base}"
            )));
        }
        let mut vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        vars.sort();
        vars.dedup();
        if vars.is_empty() {
            return Err(Error::InvalidDescriptor("polynomial ring without variables".into()));
        }
        if let Some(bad) = vars.iter().find(|v| !crate::expr::is_identifier(v) || *v == NILPOTENT) {
            return Err(Error::InvalidDescriptor(format!("bad coordinate name `{bad}`")));
        }
        Ok(Self::new(RingDescriptor::Poly { base, vars }))
    }

    /// `base / (relation)`; `relation` is an element of the polynomial ring `base`
    /// and must be monic in `var`.
    pub fn quotient(base: Ring, relation: &Elem, var: &str) -> Result<Self> {
        let RingDescriptor::Poly { vars, .. } = base.descriptor() else {
            return Err(Error::InvalidDescriptor(format!(
                "quotient base must be a polynomial ring, not {base}"
            )));
        };
        if !vars.iter().any(|v| v == var) {
            return Err(Error::InvalidDescriptor(format!(
                "designated variable `{var}` is not a coordinate of {base}"
            )));
        }
        let Elem::Poly(relation) = relation else {
            return Err(Error::InvalidDescriptor("relation is not a polynomial".into()));
        };
        quotient::check_monic(relation, var)?;
        Ok(Self::new(RingDescriptor::Quotient {
            base: base.clone(),
            relation: relation.clone(),
            var: var.to_string(),
        }))
    }

    /// `base[1/denominator]`; `base` must be an integral domain and the
    /// denominator nonzero.
    pub fn localization(base: Ring, denominator: Elem) -> Result<Self> {
        if !base.is_domain() {
            return Err(Error::InvalidDescriptor(format!(
                "localization base {base} is not an integral domain"
            )));
        }
        if matches!(base.descriptor(), RingDescriptor::Localization { .. }) {
            return Err(Error::InvalidDescriptor("nested localizations are not supported".into()));
        }
        if base.is_zero(&denominator) {
            return Err(Error::InvalidDescriptor("localization at zero".into()));
        }
        Ok(Self::new(RingDescriptor::Localization { base, denominator }))
    }

    pub fn product(left: Ring, right: Ring) -> Self {
        Self::new(RingDescriptor::Product(left, right))
    }

    /// The coordinate ring of the real circle, `Q[x, y]/(x^2 + y^2 - 1)`,
    /// reduced so that `y` appears with degree below 2.
    pub fn circle() -> Self {
        let base = Ring::polynomial(Ring::rationals(), &["x", "y"]).expect("valid coordinates");
        let x = MultiPoly::var(&Ring::rationals(), "x");
        let y = MultiPoly::var(&Ring::rationals(), "y");
        let g = &(&(&x * &x) + &(&y * &y)) - &MultiPoly::one(&Ring::rationals());
        Ring::quotient(base, &Elem::Poly(g), "y").expect("monic relation")
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.0
    }

    pub fn is_domain(&self) -> bool {
        match self.descriptor() {
            RingDescriptor::Integers | RingDescriptor::Rationals | RingDescriptor::Poly { .. } => true,
            // Irreducibility of the relation is the caller's responsibility.
            RingDescriptor::Quotient { .. } => true,
            RingDescriptor::Localization { .. } => true,
            RingDescriptor::Dual { .. } | RingDescriptor::Product(..) => false,
        }
    }

    pub fn dual_order(&self) -> Option<usize> {
        match self.descriptor() {
            RingDescriptor::Dual { order } => Some(*order),
            _ => None,
        }
    }

    /// Coefficient ring of the polynomial representatives of a `Poly` or `Quotient` ring.
    fn poly_coefficients(&self) -> &Ring {
        match self.descriptor() {
            RingDescriptor::Poly { base, .. } => base,
            RingDescriptor::Quotient { base, .. } => base.poly_coefficients(),
            _ => unreachable!("not a polynomial-backed ring"),
        }
    }

    pub fn zero(&self) -> Elem {
        self.from_int(&BigInt::zero())
    }

    pub fn one(&self) -> Elem {
        self.from_int(&BigInt::one())
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_int(&BigInt::from(n))
    }

    pub fn from_int(&self, n: &BigInt) -> Elem {
        match self.descriptor() {
            RingDescriptor::Integers => Elem::Int(n.clone()),
            _ => self
                .from_rational(&BigRational::from_integer(n.clone()))
                .expect("integers embed in every supported ring"),
        }
    }

    /// Image of a rational number; fails only for non-integers in `Z`.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        Ok(match self.descriptor() {
            RingDescriptor::Integers => {
                if !q.is_integer() {
                    return Err(Error::Precondition(format!("{q} is not an integer")));
                }
                Elem::Int(q.to_integer())
            }
            RingDescriptor::Rationals => Elem::Rat(q.clone()),
            RingDescriptor::Dual { order } => {
                let mut c = vec![BigRational::zero(); *order];
                c[0] = q.clone();
                Elem::Dual(c)
            }
            RingDescriptor::Poly { base, .. } => {
                Elem::Poly(MultiPoly::constant(base, base.from_rational(q)?))
            }
            RingDescriptor::Quotient { .. } => {
                let base = self.poly_coefficients();
                Elem::Poly(MultiPoly::constant(base, base.from_rational(q)?))
            }
            RingDescriptor::Localization { base, .. } => Elem::Frac {
                num: Box::new(base.from_rational(q)?),
                power: 0,
            },
            RingDescriptor::Product(l, r) => {
                Elem::Pair(Box::new(l.from_rational(q)?), Box::new(r.from_rational(q)?))
            }
        })
    }

    /// Names that resolve to ring elements in expressions (`eps`, polynomial coordinates).
    pub fn coordinate_names(&self) -> Vec<String> {
        match self.descriptor() {
            RingDescriptor::Dual { .. } => vec![NILPOTENT.to_string()],
            RingDescriptor::Poly { vars, .. } => vars.clone(),
            RingDescriptor::Quotient { base, .. } | RingDescriptor::Localization { base, .. } => {
                base.coordinate_names()
            }
            _ => Vec::new(),
        }
    }

    pub fn coordinate(&self, name: &str) -> Option<Elem> {
        match self.descriptor() {
            RingDescriptor::Dual { order } if name == NILPOTENT => {
                let mut c = vec![BigRational::zero(); *order];
                c[1] = BigRational::one();
                Some(Elem::Dual(c))
            }
            RingDescriptor::Poly { base, vars } if vars.iter().any(|v| v == name) => {
                Some(Elem::Poly(MultiPoly::var(base, name)))
            }
            RingDescriptor::Quotient { base, .. } => {
                let e = base.coordinate(name)?;
                Some(self.canonical(e))
            }
            RingDescriptor::Localization { base, .. } => Some(Elem::Frac {
                num: Box::new(base.coordinate(name)?),
                power: 0,
            }),
            _ => None,
        }
    }

    /// Brings a payload to canonical form (quotient reduction, fraction cancellation).
    pub fn canonical(&self, e: Elem) -> Elem {
        match (self.descriptor(), e) {
            (RingDescriptor::Quotient { relation, var, .. }, Elem::Poly(p)) => {
                Elem::Poly(quotient::reduce(&p, relation, var))
            }
            (RingDescriptor::Localization { base, denominator }, Elem::Frac { num, power }) => {
                localization::reduce(base, denominator, *num, power)
            }
            (RingDescriptor::Product(l, r), Elem::Pair(a, b)) => {
                Elem::Pair(Box::new(l.canonical(*a)), Box::new(r.canonical(*b)))
            }
            (_, e) => e,
        }
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        match e {
            Elem::Int(n) => n.is_zero(),
            Elem::Rat(q) => q.is_zero(),
            Elem::Dual(c) => c.iter().all(Zero::is_zero),
            Elem::Poly(p) => p.is_zero(),
            Elem::Frac { num, .. } => match self.descriptor() {
                RingDescriptor::Localization { base, .. } => base.is_zero(num),
                _ => unreachable!(),
            },
            Elem::Pair(a, b) => match self.descriptor() {
                RingDescriptor::Product(l, r) => l.is_zero(a) && r.is_zero(b),
                _ => unreachable!(),
            },
        }
    }

    pub fn is_one(&self, e: &Elem) -> bool {
        *e == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self.descriptor(), a, b) {
            (_, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (_, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (_, Elem::Dual(x), Elem::Dual(y)) => Elem::Dual(dual::add(x, y)),
            (_, Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x + y),
            (RingDescriptor::Localization { base, denominator }, Elem::Frac { .. }, Elem::Frac { .. }) => {
                localization::add(base, denominator, a, b)
            }
            (RingDescriptor::Product(l, r), Elem::Pair(a1, a2), Elem::Pair(b1, b2)) => {
                Elem::Pair(Box::new(l.add(a1, b1)), Box::new(r.add(a2, b2)))
            }
            _ => panic!("element payloads do not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self.descriptor(), a) {
            (_, Elem::Int(x)) => Elem::Int(-x),
            (_, Elem::Rat(x)) => Elem::Rat(-x),
            (_, Elem::Dual(x)) => Elem::Dual(x.iter().map(|c| -c).collect()),
            (_, Elem::Poly(x)) => Elem::Poly(-x),
            (RingDescriptor::Localization { base, .. }, Elem::Frac { num, power }) => Elem::Frac {
                num: Box::new(base.neg(num)),
                power: *power,
            },
            (RingDescriptor::Product(l, r), Elem::Pair(x, y)) => {
                Elem::Pair(Box::new(l.neg(x)), Box::new(r.neg(y)))
            }
            _ => panic!("element payload does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self.descriptor(), a, b) {
            (_, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (_, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (_, Elem::Dual(x), Elem::Dual(y)) => Elem::Dual(dual::mul(x, y)),
            (RingDescriptor::Poly { .. }, Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x * y),
            (RingDescriptor::Quotient { relation, var, .. }, Elem::Poly(x), Elem::Poly(y)) => {
                Elem::Poly(quotient::reduce(&(x * y), relation, var))
            }
            (RingDescriptor::Localization { base, denominator }, Elem::Frac { .. }, Elem::Frac { .. }) => {
                localization::mul(base, denominator, a, b)
            }
            (RingDescriptor::Product(l, r), Elem::Pair(a1, a2), Elem::Pair(b1, b2)) => {
                Elem::Pair(Box::new(l.mul(a1, b1)), Box::new(r.mul(a2, b2)))
            }
            _ => panic!("element payloads do not belong to {self}"),
        }
    }

    pub fn pow(&self, a: &Elem, mut exp: u32) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplicative inverse, or a not-a-unit error naming the obstruction.
    pub fn inverse(&self, a: &Elem) -> Result<Elem> {
        match (self.descriptor(), a) {
            (_, Elem::Int(x)) => {
                if x.is_one() || (-x).is_one() {
                    Ok(Elem::Int(x.clone()))
                } else {
                    Err(Error::NotAUnit(format!("{x} is not invertible in Z")))
                }
            }
            (_, Elem::Rat(x)) => {
                if x.is_zero() {
                    Err(Error::NotAUnit("zero has no inverse".into()))
                } else {
                    Ok(Elem::Rat(x.recip()))
                }
            }
            (_, Elem::Dual(x)) => dual::inverse(x).map(Elem::Dual),
            (RingDescriptor::Poly { base, .. } | RingDescriptor::Quotient { base, .. }, Elem::Poly(p)) => {
                // Units of Z[..] and Q[..] are the constant units; the same holds for
                // the supported quotient domains up to the relation.
                let _ = base;
                match p.constant_value() {
                    Some(c) => Ok(Elem::Poly(MultiPoly::constant(p.ring(), p.ring().inverse(&c)?))),
                    None if p.is_zero() => Err(Error::NotAUnit("zero has no inverse".into())),
                    None => self.quotient_inverse(p),
                }
            }
            (RingDescriptor::Localization { base, denominator }, Elem::Frac { .. }) => {
                localization::inverse(base, denominator, a)
            }
            (RingDescriptor::Product(l, r), Elem::Pair(x, y)) => Ok(Elem::Pair(
                Box::new(l.inverse(x)?),
                Box::new(r.inverse(y)?),
            )),
            _ => panic!("element payload does not belong to {self}"),
        }
    }

    fn quotient_inverse(&self, p: &MultiPoly) -> Result<Elem> {
        if let RingDescriptor::Quotient { .. } = self.descriptor() {
            if let Some(q) = self.exact_div(&self.one(), &Elem::Poly(p.clone())) {
                return Ok(q);
            }
        }
        Err(Error::NotAUnit(format!("{p} is not a constant unit")))
    }

    /// `a / b` when `b` divides `a` exactly; defined on integral domains.
    pub fn exact_div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        if self.is_zero(b) {
            return None;
        }
        match (self.descriptor(), a, b) {
            (_, Elem::Int(x), Elem::Int(y)) => {
                let (q, r) = x.div_rem(y);
                r.is_zero().then_some(Elem::Int(q))
            }
            (_, Elem::Rat(x), Elem::Rat(y)) => Some(Elem::Rat(x / y)),
            (RingDescriptor::Poly { .. }, Elem::Poly(x), Elem::Poly(y)) => {
                x.exact_div(y).map(Elem::Poly)
            }
            (RingDescriptor::Quotient { relation, var, .. }, Elem::Poly(x), Elem::Poly(y)) => {
                quotient::exact_div(x, y, relation, var).map(Elem::Poly)
            }
            (RingDescriptor::Localization { .. }, _, _) => {
                self.inverse(b).ok().map(|inv| self.mul(a, &inv))
            }
            _ => None,
        }
    }

    /// A size measure used to bound unit searches in localizations.
    pub(crate) fn size_hint(&self, a: &Elem) -> u32 {
        match a {
            Elem::Int(x) => x.bits() as u32,
            Elem::Rat(_) => 0,
            Elem::Poly(p) => p.total_degree(),
            Elem::Dual(_) => 0,
            Elem::Frac { num, .. } => match self.descriptor() {
                RingDescriptor::Localization { base, .. } => base.size_hint(num),
                _ => 0,
            },
            Elem::Pair(..) => 0,
        }
    }

    /// Human-readable rendering; parseable for every ring except localizations
    /// and products.
    pub fn format(&self, e: &Elem) -> String {
        match e {
            Elem::Int(n) => n.to_string(),
            Elem::Rat(q) => q.to_string(),
            Elem::Dual(_) | Elem::Poly(_) => MultiPoly::constant(self, e.clone()).to_string(),
            Elem::Frac { num, power } => match self.descriptor() {
                RingDescriptor::Localization { base, denominator } => {
                    if *power == 0 {
                        base.format(num)
                    } else {
                        format!("({})/({})^{}", base.format(num), base.format(denominator), power)
                    }
                }
                _ => unreachable!(),
            },
            Elem::Pair(a, b) => match self.descriptor() {
                RingDescriptor::Product(l, r) => format!("({}; {})", l.format(a), r.format(b)),
                _ => unreachable!(),
            },
        }
    }

    /// Constant coefficient of a dual number (its image modulo the nilradical).
    pub(crate) fn reduce_dual(&self, e: &Elem) -> BigRational {
        match e {
            Elem::Dual(c) => c[0].clone(),
            _ => panic!("not a dual number"),
        }
    }
}

/// An element together with its ring; the checked, user-facing arithmetic surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    ring: Ring,
    value: Elem,
}

/// Arithmetic selector for [`ring_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl RingElement {
    pub fn new(ring: &Ring, value: Elem) -> Self {
        let value = ring.canonical(value);
        RingElement {
            ring: ring.clone(),
            value,
        }
    }

    pub fn from_i64(ring: &Ring, n: i64) -> Self {
        Self::new(ring, ring.from_i64(n))
    }

    pub fn from_rational(ring: &Ring, q: &BigRational) -> Result<Self> {
        Ok(Self::new(ring, ring.from_rational(q)?))
    }

    pub fn coordinate(ring: &Ring, name: &str) -> Result<Self> {
        ring.coordinate(name)
            .map(|e| Self::new(ring, e))
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn into_value(self) -> Elem {
        self.value
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::mismatch(&self.ring, &other.ring));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        ring_arith(ArithOp::Add, self, other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        ring_arith(ArithOp::Sub, self, other)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        ring_arith(ArithOp::Mul, self, other)
    }

    pub fn neg(&self) -> Self {
        RingElement {
            ring: self.ring.clone(),
            value: self.ring.neg(&self.value),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.value))
    }
}

/// Checked ring arithmetic. `Neg` ignores `y` beyond the ring check.
pub fn ring_arith(op: ArithOp, x: &RingElement, y: &RingElement) -> Result<RingElement> {
    x.check(y)?;
    let r = &x.ring;
    let value = match op {
        ArithOp::Add => r.add(&x.value, &y.value),
        ArithOp::Sub => r.sub(&x.value, &y.value),
        ArithOp::Mul => r.mul(&x.value, &y.value),
        ArithOp::Neg => r.neg(&x.value),
    };
    Ok(RingElement {
        ring: r.clone(),
        value,
    })
}

/// Inverse of a unit; dual numbers use the truncated geometric series.
pub fn invert_unit(x: &RingElement) -> Result<RingElement> {
    Ok(RingElement {
        ring: x.ring.clone(),
        value: x.ring.inverse(&x.value)?,
    })
}

/// Image of a dual number in `Q = Q[eps]/(eps)`.
pub fn nilradical_reduce(x: &RingElement) -> Result<RingElement> {
    if x.ring.dual_order().is_none() {
        return Err(Error::Precondition(format!(
            "nilradical reduction expects a dual-number ring, got {}",
            x.ring
        )));
    }
    Ok(RingElement {
        ring: Ring::rationals(),
        value: Elem::Rat(x.ring.reduce_dual(&x.value)),
    })
}
