//! Exact winding numbers of polynomial loops in the punctured plane, the
//! winding homomorphism on loops over Q, the explicit generator and the free
//! homotopy between the two ways of multiplying loops.
//!
//! Orientation is counterclockwise: `t -> (cos 2 pi t, sin 2 pi t)` winds +1.

mod roots;
mod upoly;
mod walk;
pub mod oracle;

pub use roots::{isolate_real_roots, isolate_real_roots_in, RootInterval, RootIsolation};
pub use upoly::UniPoly;
pub use walk::{Stop, WindingDetails};

pub(crate) use walk::{common_zero, norm_root_count, walk, Piece};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::parse_poly;
use crate::loops::{verify_loop, LoopRep};
use crate::matrix::Mat2;
use crate::poly::MultiPoly;
use crate::report::Report;
use crate::ring::{Ring, RingDescriptor};

/// A closed polynomial path `t -> (f1(t), f2(t))`, `t` in `[0, 1]`, over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneLoop {
    pub f1: MultiPoly,
    pub f2: MultiPoly,
    pub var: String,
    u1: UniPoly,
    u2: UniPoly,
}

fn over_rationals(p: &MultiPoly) -> Result<MultiPoly> {
    match p.ring().descriptor() {
        RingDescriptor::Rationals => Ok(p.clone()),
        RingDescriptor::Integers => p.embed(&Ring::rationals()),
        _ => Err(Error::Precondition(format!(
            "plane loops need rational coefficients, got {}",
            p.ring()
        ))),
    }
}

impl PlaneLoop {
    /// Checks that both coordinates are univariate over Q and that the path is closed.
    pub fn new(f1: MultiPoly, f2: MultiPoly, var: &str) -> Result<Self> {
        let f1 = over_rationals(&f1)?;
        let f2 = over_rationals(&f2)?;
        let u1 = UniPoly::from_multi(&f1, var)?;
        let u2 = UniPoly::from_multi(&f2, var)?;
        let (zero, one) = (BigRational::zero(), BigRational::one());
        for (name, u) in [("f1", &u1), ("f2", &u2)] {
            if u.eval(&zero) != u.eval(&one) {
                return Err(Error::Precondition(format!(
                    "{name} is not closed: {name}(0) = {}, {name}(1) = {}",
                    u.eval(&zero),
                    u.eval(&one)
                )));
            }
        }
        Ok(PlaneLoop {
            f1,
            f2,
            var: var.to_string(),
            u1,
            u2,
        })
    }

    pub fn from_strs(f1: &str, f2: &str, var: &str) -> Result<Self> {
        let q = Ring::rationals();
        Self::new(parse_poly(f1, &q)?, parse_poly(f2, &q)?, var)
    }

    /// The first column of a loop.
    pub fn first_column(a: &LoopRep) -> Result<Self> {
        let (f1, f2) = a.matrix().column(0);
        Self::new(f1, f2, a.loop_var())
    }

    pub fn eval(&self, t: &BigRational) -> (BigRational, BigRational) {
        (self.u1.eval(t), self.u2.eval(t))
    }

    /// `f1^2 + f2^2`.
    pub fn norm_squared(&self) -> MultiPoly {
        &(&self.f1 * &self.f1) + &(&self.f2 * &self.f2)
    }

    pub(crate) fn coordinates(&self) -> (&UniPoly, &UniPoly) {
        (&self.u1, &self.u2)
    }

    fn piece(&self) -> Piece {
        Piece {
            f1: self.u1.clone(),
            f2: self.u2.clone(),
            lo: BigRational::zero(),
            hi: BigRational::one(),
        }
    }
}

/// Evidence that a plane loop avoids the origin on `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonvanishingCert {
    pub norm_squared: String,
    pub sturm_root_count: usize,
    pub value_at_zero: String,
}

/// Accepts iff `f1^2 + f2^2` has no root in `[0, 1]` and is positive at 0.
/// A rejection names an isolating interval of a common zero.
pub fn nonvanishing_on_unit_interval(l: &PlaneLoop) -> Result<NonvanishingCert> {
    let piece = l.piece();
    let count = norm_root_count(&piece);
    let (a, b) = l.eval(&BigRational::zero());
    let at_zero = &a * &a + &b * &b;
    if count == 0 && at_zero > BigRational::zero() {
        return Ok(NonvanishingCert {
            norm_squared: l.norm_squared().to_string(),
            sturm_root_count: 0,
            value_at_zero: at_zero.to_string(),
        });
    }
    let place = match common_zero(&piece) {
        Some(RootInterval::Exact(r)) => format!("at {r}"),
        Some(RootInterval::Open { lo, hi }) => format!("in ({lo}, {hi}]"),
        None => "somewhere in [0, 1]".into(),
    };
    Err(Error::Precondition(format!("the loop meets the origin {place}")))
}

/// Winding number together with its quadrant itinerary.
pub fn winding_details(l: &PlaneLoop) -> Result<WindingDetails> {
    nonvanishing_on_unit_interval(l)?;
    walk(&[l.piece()])
}

pub fn winding_number(l: &PlaneLoop) -> Result<i64> {
    Ok(winding_details(l)?.winding)
}

/// Winding number of the first column of a loop over Q.
pub fn eta(a: &LoopRep) -> Result<i64> {
    winding_number(&PlaneLoop::first_column(a)?)
}

pub const GENERATOR_ENTRIES: [&str; 4] = [
    "1 + 4*T*(1-T)*(T^2-T-1)",
    "T*(1-T)*(2*T-1)*(24*T^2-24*T-29)",
    "4*T*(1-T)*(2*T-1)",
    "1 + 4*T*(1-T)*(24*T^2-24*T+1)",
];

/// The matrix exactly as printed in the source, whose lower-right entry reads
/// `1 + 4T(1-T)(24T^2 - 24T - 1)`. Its determinant is not 1.
pub const GENERATOR_ENTRIES_AS_PRINTED: [&str; 4] = [
    GENERATOR_ENTRIES[0],
    GENERATOR_ENTRIES[1],
    GENERATOR_ENTRIES[2],
    "1 + 4*T*(1-T)*(24*T^2-24*T-1)",
];

fn matrix_from(entries: [&str; 4]) -> Mat2 {
    let q = Ring::rationals();
    let [a, b, c, d] = entries.map(|s| parse_poly(s, &q).expect("static entry parses"));
    Mat2::new(a, b, c, d).expect("same ring")
}

pub fn generator_matrix_as_printed() -> Mat2 {
    matrix_from(GENERATOR_ENTRIES_AS_PRINTED)
}

/// A loop in `SL_2(Q[T])` whose first column winds once around the origin.
pub fn generator_loop() -> LoopRep {
    verify_loop(&matrix_from(GENERATOR_ENTRIES), "T").expect("generator is a loop")
}

/// The pair map `H(t, s)` between the first column of `a * b` (at `s = 1`) and
/// the complex product of the two first columns (at `s = 0`).
#[derive(Debug, Clone)]
pub struct FreeHomotopy {
    pub h1: MultiPoly,
    pub h2: MultiPoly,
    pub loop_var: String,
    pub homotopy_var: String,
    pub report: Report,
}

impl FreeHomotopy {
    /// The plane loop `H(., s)` at an integer value of `s`.
    pub fn at(&self, s: i64) -> Result<PlaneLoop> {
        PlaneLoop::new(
            self.h1.at(&self.homotopy_var, s),
            self.h2.at(&self.homotopy_var, s),
            &self.loop_var,
        )
    }
}

/// `H = (f1 f1' + (s g1 - (1-s) f2) f2', f2 f1' + (s g2 + (1-s) f1) f2')` for
/// `a = [[f1, g1], [f2, g2]]` and `b = [[f1', g1'], [f2', g2']]`, with the
/// identity `f1 H2 - f2 H1 = (s + (1-s)(f1^2 + f2^2)) f2'` checked by expansion.
pub fn free_homotopy_h(a: &LoopRep, b: &LoopRep, s: &str) -> Result<FreeHomotopy> {
    let ring = Ring::rationals();
    let a = verify_loop(&a.matrix().embed(&ring)?, a.loop_var())?;
    let b = verify_loop(&b.matrix().embed(&ring)?, b.loop_var())?;
    let t = a.loop_var();
    if b.loop_var() != t {
        return Err(Error::Precondition("loop variables differ".into()));
    }
    if s == t || a.matrix().vars().iter().chain(&b.matrix().vars()).any(|v| v == s) {
        return Err(Error::Precondition(format!("`{s}` is not a fresh variable")));
    }
    let m = a.matrix();
    let (f1, g1, f2, g2) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let (p1, p2) = b.matrix().column(0);
    let sv = MultiPoly::var(&ring, s);
    let one = MultiPoly::one(&ring);
    let rest = &one - &sv;

    let h1 = &(f1 * &p1) + &(&(&(&sv * g1) - &(&rest * f2)) * &p2);
    let h2 = &(f2 * &p1) + &(&(&(&sv * g2) + &(&rest * f1)) * &p2);

    let mut report = Report::new();
    let lhs = &(f1 * &h2) - &(f2 * &h1);
    let rhs = &(&sv + &(&rest * &(&(f1 * f1) + &(f2 * f2)))) * &p2;
    report.check("identity", lhs == rhs, || format!("{lhs} != {rhs}"));
    let prod = m.mul(b.matrix())?;
    let (c1, c2) = prod.column(0);
    report.check("s=1", h1.at(s, 1) == c1 && h2.at(s, 1) == c2, || {
        "H(t, 1) is not the first column of the product".into()
    });
    let k1 = &(f1 * &p1) - &(f2 * &p2);
    let k2 = &(f2 * &p1) + &(f1 * &p2);
    report.check("s=0", h1.at(s, 0) == k1 && h2.at(s, 0) == k2, || {
        "H(t, 0) is not the complex product of the columns".into()
    });
    let closed = h1.at(t, 0) == h1.at(t, 1) && h2.at(t, 0) == h2.at(t, 1);
    report.check("closed", closed, || "H(0, s) != H(1, s)".into());
    if !report.is_ok() {
        return Err(Error::Internal(report.to_string()));
    }
    Ok(FreeHomotopy {
        h1,
        h2,
        loop_var: t.to_string(),
        homotopy_var: s.to_string(),
        report,
    })
}
