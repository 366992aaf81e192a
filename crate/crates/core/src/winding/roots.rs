//! Real-root isolation by Sturm sequences and bisection.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

use super::upoly::{half, variations, IntPoly, UniPoly};

/// One isolated root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RootInterval {
    /// The root itself, met exactly at a bisection point or domain end.
    Exact(#[serde(serialize_with = "ser_rat")] BigRational),
    /// Exactly one root in the half-open interval `(lo, hi]`, and `hi` is not a root.
    Open {
        #[serde(serialize_with = "ser_rat")]
        lo: BigRational,
        #[serde(serialize_with = "ser_rat")]
        hi: BigRational,
    },
}

fn ser_rat<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl RootInterval {
    pub fn start(&self) -> &BigRational {
        match self {
            RootInterval::Exact(r) => r,
            RootInterval::Open { lo, .. } => lo,
        }
    }

    pub fn end(&self) -> &BigRational {
        match self {
            RootInterval::Exact(r) => r,
            RootInterval::Open { hi, .. } => hi,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RootInterval::Exact(_))
    }

    pub fn width(&self) -> BigRational {
        self.end() - self.start()
    }

    /// Whether `x` can be the isolated root.
    pub fn may_contain(&self, x: &BigRational) -> bool {
        match self {
            RootInterval::Exact(r) => r == x,
            RootInterval::Open { lo, hi } => lo < x && x <= hi,
        }
    }
}

/// Squarefree part and its Sturm chain, shared by isolation and refinement.
#[derive(Debug, Clone)]
pub(crate) struct SturmData {
    squarefree: IntPoly,
    chain: Vec<IntPoly>,
}

impl SturmData {
    pub(crate) fn new(p: &UniPoly) -> Self {
        let chain = p.squarefree().sturm_chain();
        let squarefree = chain[0].clone();
        SturmData { squarefree, chain }
    }

    fn v(&self, x: &BigRational) -> usize {
        variations(&self.chain, x)
    }

    /// Distinct roots in `(a, b]`.
    pub(crate) fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.v(a) - self.v(b)
    }

    fn is_root(&self, x: &BigRational) -> bool {
        self.squarefree.sign_at(x) == 0
    }

    /// Distinct roots in the closed interval `[a, b]`.
    pub(crate) fn count_closed(&self, a: &BigRational, b: &BigRational) -> usize {
        self.count(a, b) + usize::from(self.is_root(a))
    }

    pub(crate) fn isolate(&self, lo: &BigRational, hi: &BigRational) -> Vec<RootInterval> {
        let mut out = Vec::new();
        if self.is_root(lo) {
            out.push(RootInterval::Exact(lo.clone()));
        }
        self.split(lo, hi, self.count(lo, hi), &mut out);
        out
    }

    fn split(&self, a: &BigRational, b: &BigRational, c: usize, out: &mut Vec<RootInterval>) {
        match c {
            0 => {}
            1 if self.is_root(b) => out.push(RootInterval::Exact(b.clone())),
            1 => out.push(RootInterval::Open {
                lo: a.clone(),
                hi: b.clone(),
            }),
            _ => {
                let m = (a + b) * half();
                let left = self.count(a, &m);
                self.split(a, &m, left, out);
                self.split(&m, b, c - left, out);
            }
        }
    }

    /// One bisection step.
    pub(crate) fn bisect(&self, iv: &RootInterval) -> RootInterval {
        let RootInterval::Open { lo, hi } = iv else {
            return iv.clone();
        };
        let m = (lo + hi) * half();
        if self.is_root(&m) {
            RootInterval::Exact(m)
        } else if self.count(lo, &m) == 1 {
            RootInterval::Open { lo: lo.clone(), hi: m }
        } else {
            RootInterval::Open { lo: m, hi: hi.clone() }
        }
    }

    pub(crate) fn refine(&self, iv: &RootInterval, width: &BigRational) -> RootInterval {
        let mut cur = iv.clone();
        while !cur.is_exact() && cur.width() > *width {
            cur = self.bisect(&cur);
        }
        cur
    }
}

/// Isolating intervals for the real roots of a univariate polynomial in a
/// closed domain, sorted and pairwise disjoint.
#[derive(Debug, Clone)]
pub struct RootIsolation {
    pub polynomial: MultiPoly,
    pub var: String,
    pub domain: (BigRational, BigRational),
    pub intervals: Vec<RootInterval>,
    sturm: SturmData,
}

impl RootIsolation {
    /// Number of distinct roots in the domain certified by the Sturm count.
    pub fn sturm_count(&self) -> usize {
        let (lo, hi) = &self.domain;
        self.sturm.count_closed(lo, hi)
    }

    /// Bisects every interval until it is at most `width` wide.
    pub fn refine(&mut self, width: &BigRational) {
        for iv in &mut self.intervals {
            *iv = self.sturm.refine(iv, width);
        }
    }
}

/// Isolates the roots of `p` (univariate in `var`, rational coefficients) in `[lo, hi]`.
pub fn isolate_real_roots_in(
    p: &MultiPoly,
    var: &str,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<RootIsolation> {
    if p.is_zero() {
        return Err(Error::Precondition("cannot isolate the roots of the zero polynomial".into()));
    }
    if lo > hi {
        return Err(Error::Precondition(format!("empty domain [{lo}, {hi}]")));
    }
    let u = UniPoly::from_multi(p, var)?;
    let sturm = SturmData::new(&u);
    let intervals = sturm.isolate(lo, hi);
    Ok(RootIsolation {
        polynomial: p.clone(),
        var: var.to_string(),
        domain: (lo.clone(), hi.clone()),
        intervals,
        sturm,
    })
}

/// Root isolation on the unit interval.
pub fn isolate_real_roots(p: &MultiPoly, var: &str) -> Result<RootIsolation> {
    isolate_real_roots_in(p, var, &BigRational::zero(), &BigRational::from_integer(1.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::ring::Ring;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &Ring::rationals()).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn linear_root() {
        let iso = isolate_real_roots(&p("T - 1/2"), "T").unwrap();
        assert_eq!(iso.intervals.len(), 1);
        assert!(iso.intervals[0].may_contain(&r(1, 2)));
    }

    #[test]
    fn no_real_roots() {
        let iso = isolate_real_roots(&p("T^2 + 1"), "T").unwrap();
        assert!(iso.intervals.is_empty());
        assert_eq!(iso.sturm_count(), 0);
    }

    #[test]
    fn roots_at_both_ends_and_middle() {
        let iso = isolate_real_roots(&p("4*T*(1-T)*(2*T-1)"), "T").unwrap();
        assert_eq!(iso.sturm_count(), 3);
        let found: Vec<_> = iso.intervals.clone();
        assert_eq!(found.len(), 3);
        assert!(found[0].may_contain(&r(0, 1)));
        assert!(found[1].may_contain(&r(1, 2)));
        assert!(found[2].may_contain(&r(1, 1)));
    }

    #[test]
    fn refinement_narrows_intervals() {
        let mut iso = isolate_real_roots(&p("T^2 - 1/2"), "T").unwrap();
        let w = r(1, 1000);
        iso.refine(&w);
        assert_eq!(iso.intervals.len(), 1);
        let iv = &iso.intervals[0];
        assert!(iv.width() <= w);
        let lo = iv.start().clone();
        let hi = iv.end().clone();
        assert!(&lo * &lo < r(1, 2) && &hi * &hi > r(1, 2));
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(isolate_real_roots(&p("0"), "T").is_err());
    }
}
