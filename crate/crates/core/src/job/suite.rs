//! Built-in worked examples, re-run on demand.

use serde::Serialize;

use crate::error::Result;
use crate::expr::parse_poly;
use crate::gamma::{
    circle_charts, circle_degree_pair, complete_row, gamma_product, quillen_split_verify,
    verify_unimodular, ChartKind, QuillenSplit,
};
use crate::homotopy::{
    basepoint_shift_homotopy, connect_to_identity, contract_nil_loop, elementary_decomposition,
    graded_homotopy, polyring_injectivity_homotopy, product_join, product_split,
};
use crate::loops::{loop_power, loop_product, verify_homotopy, verify_loop, HomotopyCert, LoopRep};
use crate::matrix::Mat2;
use crate::poly::MultiPoly;
use crate::report::Report;
use crate::ring::{Ring, RingElement};
use crate::winding::{eta, free_homotopy_h, generator_loop};

#[derive(Debug, Clone, Serialize)]
pub struct SuiteCase {
    pub name: String,
    pub anchor: String,
    pub passed: bool,
    pub detail: String,
}

type Case = (&'static str, &'static str, fn() -> Result<Report>);

fn p(s: &str, r: &Ring) -> MultiPoly {
    parse_poly(s, r).expect("built-in expression parses")
}

fn m(r: &Ring, e: [&str; 4]) -> Mat2 {
    let [a, b, c, d] = e.map(|s| p(s, r));
    Mat2::new(a, b, c, d).expect("built-in matrix")
}

fn lp(r: &Ring, e: [&str; 4], var: &str) -> Result<LoopRep> {
    verify_loop(&m(r, e), var)
}

fn dual2() -> Ring {
    Ring::dual(2).expect("order 2")
}

fn q() -> Ring {
    Ring::rationals()
}

fn factor_identity() -> Result<Report> {
    let r = dual2();
    let f = elementary_decomposition(&Mat2::identity(&r))?;
    let mut rep = Report::new();
    rep.check("product", f.product().is_identity(), || "identity does not round-trip".into());
    Ok(rep)
}

fn factor_diagonal() -> Result<Report> {
    let r = dual2();
    let alpha = m(&r, ["1 + eps", "0", "0", "1 - eps"]);
    let f = elementary_decomposition(&alpha)?;
    let path = connect_to_identity(&alpha, "X")?;
    let mut rep = Report::new();
    rep.check("product", f.product() == alpha, || "factors do not multiply back".into());
    rep.check("path-start", path.at("X", 0).is_identity(), || "path does not start at I".into());
    rep.check("path-end", path.at("X", 1) == alpha, || "path does not end at alpha".into());
    Ok(rep)
}

fn factor_asymmetric() -> Result<Report> {
    let r = Ring::dual(3)?;
    let alpha = m(&r, ["1 + eps", "eps^2", "2*eps", "1 - eps + eps^2 - 2*eps^3"]);
    let mut rep = Report::new();
    let det = alpha.det();
    rep.check("det", det.is_one(), || format!("det = {det}"));
    let f = elementary_decomposition(&alpha)?;
    rep.check("product", f.product() == alpha, || "factors do not multiply back".into());
    Ok(rep)
}

fn nil_contraction() -> Result<Report> {
    let r = dual2();
    let a = lp(&r, ["1", "eps*X*(X-1)", "0", "1"], "X")?;
    let b = Mat2::e21(p("eps*X^2*(X-1)", &r));
    let ab = verify_loop(&a.matrix().mul(&b)?, "X")?;
    let mut rep = Report::new();
    for (name, l) in [("single", &a), ("pair", &ab)] {
        rep.merge(name, verify_homotopy(&contract_nil_loop(l, "T")?));
    }
    Ok(rep)
}

fn injectivity_construction() -> Result<Report> {
    let r = q();
    let a = lp(&r, ["1", "X*T*(T-1)", "0", "1"], "T")?;
    let b = lp(&r, ["1", "X^2*T*(T-1)", "0", "1"], "T")?;
    let theta = HomotopyCert::constant(&verify_loop(&a.matrix().at("X", 0), "T")?, "W");
    let c = polyring_injectivity_homotopy(&a, &b, &theta, "X")?;
    Ok(verify_homotopy(&c))
}

fn graded_cases() -> Result<Report> {
    let r = q();
    let b = lp(&r, ["1", "x1*X*(X-1)", "0", "1"], "X")?;
    let (c, beta0) = graded_homotopy(&b, &["x1"], "T")?;
    let mut rep = verify_homotopy(&c);
    rep.check("degree-zero", beta0.is_constant_identity(), || {
        format!("degree-zero part is {}", beta0.matrix())
    });
    let e = Mat2::e12(p("x1*X*(X-1)", &r)).mul(&Mat2::e21(p("(x1^2 + 1)*X*(X-1)", &r)))?;
    let b2 = verify_loop(&e, "X")?;
    let (c2, _) = graded_homotopy(&b2, &["x1"], "T")?;
    rep.merge("mixed", verify_homotopy(&c2));
    Ok(rep)
}

fn basepoint_shift() -> Result<Report> {
    let r = q();
    let a = lp(&r, ["1", "X*T*(T-1)", "0", "1"], "T")?;
    let c = basepoint_shift_homotopy(&a, "X", "S")?;
    let mut rep = verify_homotopy(&c);
    let expected = m(&r, ["1", "T*(T-1)", "0", "1"]);
    rep.check("start", c.start == expected, || format!("start is {}", c.start));
    Ok(rep)
}

fn product_rings() -> Result<Report> {
    let r = q();
    let a = lp(&r, ["1", "T*(T-1)", "0", "1"], "T")?;
    let id = LoopRep::constant(&r, "T");
    let joined = product_join(&a, &id)?;
    let (x, y) = product_split(&joined)?;
    let mut rep = Report::new();
    rep.check("left", x.matrix() == a.matrix(), || "left component changed".into());
    rep.check("right", y.is_constant_identity(), || "right component changed".into());
    Ok(rep)
}

fn generator_case() -> Result<Report> {
    let g = generator_loop();
    let mut rep = Report::new();
    let det = g.matrix().det();
    rep.check("det", det.is_one(), || format!("det = {det}"));
    let start = g.matrix().at("T", 0);
    rep.check("endpoints", start.is_identity() && g.matrix().at("T", 1).is_identity(), || {
        "endpoints are not the identity".into()
    });
    let e = eta(&g)?;
    rep.check("eta-magnitude", e.abs() == 1, || format!("eta = {e}"));
    for k in -3..=3i64 {
        let ek = eta(&loop_power(&g, k))?;
        rep.check(format!("eta-power-{k}"), ek == k * e, || format!("eta(g^{k}) = {ek}"));
    }
    let h = free_homotopy_h(&g, &g, "s")?;
    rep.merge("free-homotopy", h.report);
    let gg = loop_product(&g, &g)?;
    rep.check("homomorphism", eta(&gg)? == 2 * e, || "eta(g g) != 2 eta(g)".into());
    Ok(rep)
}

fn partial_fractions() -> Result<Report> {
    use crate::ring::Elem;
    let base = Ring::polynomial(q(), &["y"])?;
    let s = Elem::Poly(p("y", &q()));
    let t = Elem::Poly(p("1 - y", &q()));
    let r_s = Ring::localization(base.clone(), s.clone())?;
    let r_t = Ring::localization(base.clone(), t.clone())?;
    let r_st = Ring::localization(base.clone(), base.mul(&s, &t))?;
    let over = |ring: &Ring| p("X", &base).localize(ring, 1);
    let split = QuillenSplit {
        sigma: Mat2::e12(over(&r_st)?),
        psi1: Mat2::e12(over(&r_s)?),
        psi2: Mat2::e12(over(&r_t)?),
        var: "X".into(),
        u: base.one(),
        v: base.one(),
        base,
        s,
        t,
    };
    Ok(quillen_split_verify(&split))
}

fn gamma_products() -> Result<Report> {
    let r = q();
    let row = |a: &str, b: &str, w: (&str, &str)| {
        verify_unimodular(&p(a, &r), &p(b, &r), Some((&p(w.0, &r), &p(w.1, &r))))
    };
    let x = row("2", "3", ("2", "-1"))?;
    let y = row("4", "5", ("-1", "1"))?;
    let prod = gamma_product(&x, &y)?;
    let mut rep = Report::new();
    rep.check("worked-product", prod.a == p("13", &r) && prod.b == p("22", &r), || {
        format!("got {prod}")
    });
    rep.check("completion", complete_row(&x) == m(&r, ["2", "1", "3", "2"]), || {
        "completion differs".into()
    });
    let id = row("1", "0", ("1", "0"))?;
    let z = row("T", "1 - T", ("1", "1"))?;
    let e = gamma_product(&id, &z)?;
    rep.check("identity", e.a == z.a && e.b == z.b, || format!("[1, 0] * {z} = {e}"));
    Ok(rep)
}

fn circle_case() -> Result<Report> {
    let a = Ring::circle();
    let mut rep = Report::new();
    for (f, g, want) in [("1", "0", 0), ("x", "y", 1), ("x", "-y", -1), ("x^2 - y^2", "2*x*y", 2)] {
        let d = circle_degree_pair(&p(f, &a), &p(g, &a))?;
        rep.check(format!("degree({f}, {g})"), d == want, || format!("got {d}, expected {want}"));
    }
    let ch = circle_charts();
    for kind in [ChartKind::U, ChartKind::V] {
        let ring = ch.chart(kind);
        for name in ["x", "y"] {
            let e = RingElement::coordinate(ring, name)?;
            let back = ch.from_eta(kind, &ch.to_eta(kind, &e)?)?;
            rep.check(format!("round-trip-{kind:?}-{name}"), back == e, || {
                format!("{name} comes back as {back}")
            });
        }
    }
    Ok(rep)
}

const CASES: &[Case] = &[
    ("factor-identity", "elementary factorization over dual numbers", factor_identity),
    ("factor-diagonal", "elementary factorization over dual numbers", factor_diagonal),
    ("factor-general", "elementary factorization over dual numbers", factor_asymmetric),
    ("nil-contraction", "contraction of loops congruent to the identity", nil_contraction),
    ("injectivity", "polynomial-parameter homotopy construction", injectivity_construction),
    ("graded", "graded deformation to degree zero", graded_cases),
    ("basepoint-shift", "basepoint shift along the parameter", basepoint_shift),
    ("product-ring", "loops over a product ring", product_rings),
    ("generator", "generator of the real loop group", generator_case),
    ("partial-fractions", "splitting over a double localization", partial_fractions),
    ("gamma-product", "product of unimodular rows", gamma_products),
    ("circle", "circle charts and degrees", circle_case),
];

/// Runs every built-in case; the report has one check per case.
pub fn paper_suite() -> (Vec<SuiteCase>, Report) {
    let mut report = Report::new();
    let cases: Vec<SuiteCase> = CASES
        .iter()
        .map(|(name, anchor, run)| {
            let (passed, detail) = match run() {
                Ok(r) => (r.is_ok(), r.to_string()),
                Err(e) => (false, e.to_string()),
            };
            report.check(*name, passed, || detail.clone());
            SuiteCase {
                name: name.to_string(),
                anchor: anchor.to_string(),
                passed,
                detail,
            }
        })
        .collect();
    (cases, report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_case_passes() {
        let (cases, report) = paper_suite();
        for c in &cases {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert!(report.is_ok());
    }
}
