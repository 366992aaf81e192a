use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gamma::{
    circle_degree_details, complete_row, gamma_equiv_verify, gamma_product, quillen_split_verify,
    GammaEquivCert, QuillenSplit,
};
use crate::homotopy::{
    basepoint_shift_homotopy, connect_to_identity, contract_nil_loop, elementary_decomposition,
    graded_homotopy, lift_loop_mod_nil, polyring_injectivity_homotopy, product_split,
};
use crate::loops::{loop_product, loop_report, verify_homotopy, verify_loop, LoopRep};
use crate::matrix::Mat2;
use crate::report::Report;
use crate::ring::Ring;
use crate::winding::oracle::numeric_winding_oracle;
use crate::winding::{eta, isolate_real_roots, winding_details, PlaneLoop, RootIsolation};

use super::schema::{
    cert_json, field, matrix_json, parse_cert, parse_element, parse_matrix, parse_pair, parse_row,
    parse_value, row_json, str_field,
};
use super::{paper_suite, Ctx};

type Out = Result<(Value, Report)>;

/// Input loops that fail validation are precondition violations of the command.
fn input_loop(m: &Mat2, var: &str) -> Result<LoopRep> {
    verify_loop(m, var).map_err(|e| match e {
        Error::Rejected(r) => Error::PreconditionFailed(r),
        other => other,
    })
}

fn matrix(ctx: &Ctx, key: &str) -> Result<Mat2> {
    parse_matrix(field(ctx.payload, key)?, &ctx.ring)
}

fn var<'a>(ctx: &'a Ctx, key: &str, default: &'a str) -> Result<&'a str> {
    str_field(ctx.payload, key, default)
}

fn passed(name: &str) -> Report {
    let mut r = Report::new();
    r.pass(name);
    r
}

pub(crate) fn dispatch(command: &str, ctx: &Ctx) -> Out {
    match command {
        "verify-loop" => verify_loop_cmd(ctx),
        "verify-homotopy" => verify_homotopy_cmd(ctx),
        "loop-mul" => loop_mul(ctx),
        "winding" => winding(ctx),
        "eta" => eta_cmd(ctx),
        "oracle" => oracle(ctx),
        "decompose-nil" => decompose_nil(ctx),
        "connect-identity" => connect_identity(ctx),
        "contract-nil" => contract_nil(ctx),
        "lift-nil" => lift_nil(ctx),
        "injectivity-homotopy" => injectivity(ctx),
        "swan-weibel" => swan_weibel(ctx),
        "basepoint-shift" => basepoint_shift(ctx),
        "product-split" => product_split_cmd(ctx),
        "gamma-mul" => gamma_mul(ctx),
        "complete" => complete(ctx),
        "gamma-equiv" => gamma_equiv(ctx),
        "quillen-check" => quillen_check(ctx),
        "circle-degree" => circle_degree_cmd(ctx),
        "paper-suite" => {
            let (cases, report) = paper_suite();
            Ok((serde_json::to_value(cases).expect("cases serialize"), report))
        }
        other => Err(Error::Schema(format!("unknown command `{other}`"))),
    }
}

fn verify_loop_cmd(ctx: &Ctx) -> Out {
    let m = matrix(ctx, "matrix")?;
    let r = loop_report(&m, var(ctx, "loop_var", "T")?);
    Ok((json!({ "loop": r.is_ok() }), r))
}

fn verify_homotopy_cmd(ctx: &Ctx) -> Out {
    let cert = parse_cert(&Value::Object(ctx.payload.clone()), &ctx.ring)?;
    let r = verify_homotopy(&cert);
    Ok((json!({ "certificate": r.is_ok() }), r))
}

fn loop_mul(ctx: &Ctx) -> Out {
    let v = var(ctx, "loop_var", "T")?;
    let a = input_loop(&matrix(ctx, "left")?, v)?;
    let b = input_loop(&matrix(ctx, "right")?, v)?;
    let p = loop_product(&a, &b)?;
    Ok((json!({ "product": matrix_json(p.matrix()) }), passed("loop")))
}

fn isolation_json(iso: &RootIsolation) -> Value {
    json!({
        "polynomial": iso.polynomial.to_string(),
        "sturm_count": iso.sturm_count(),
        "intervals": iso.intervals,
    })
}

fn plane_loop(ctx: &Ctx) -> Result<PlaneLoop> {
    let (f1, f2) = parse_pair(field(ctx.payload, "loop")?, &ctx.ring)?;
    PlaneLoop::new(f1, f2, var(ctx, "var", "T")?)
}

fn winding(ctx: &Ctx) -> Out {
    let l = plane_loop(ctx)?;
    let d = winding_details(&l)?;
    let mut result = json!({
        "winding": d.winding,
        "quarter_turns": d.quarter_turns,
        "itinerary": d.itinerary,
    });
    if let Some(w) = &ctx.refine_width {
        let mut roots = Vec::new();
        for p in [&l.f1, &l.f2] {
            if !p.is_zero() {
                let mut iso = isolate_real_roots(p, &l.var)?;
                iso.refine(w);
                roots.push(isolation_json(&iso));
            }
        }
        result["roots"] = Value::Array(roots);
    }
    let mut r = Report::new();
    r.check("quarter-turns", d.quarter_turns % 4 == 0, || {
        format!("{} quarter turns", d.quarter_turns)
    });
    Ok((result, r))
}

fn eta_cmd(ctx: &Ctx) -> Out {
    let a = input_loop(&matrix(ctx, "matrix")?, var(ctx, "loop_var", "T")?)?;
    Ok((json!({ "eta": eta(&a)? }), passed("first-column")))
}

fn oracle(ctx: &Ctx) -> Out {
    let l = plane_loop(ctx)?;
    let samples = match ctx.payload.get("samples") {
        Some(v) => v
            .as_u64()
            .ok_or_else(|| Error::Schema("`samples` must be a positive integer".into()))?
            as usize,
        None => ctx.samples,
    };
    let o = numeric_winding_oracle(&l, samples)?;
    Ok((serde_json::to_value(o).expect("oracle serializes"), passed("resolution")))
}

fn decompose_nil(ctx: &Ctx) -> Out {
    let m = matrix(ctx, "matrix")?;
    let f = elementary_decomposition(&m)?;
    let factors: Vec<Value> = f
        .factors
        .iter()
        .map(|(k, p)| json!({ "kind": k, "arg": p.to_string() }))
        .collect();
    let mut r = Report::new();
    r.check("round-trip", f.product() == m, || "factors do not multiply back".into());
    Ok((
        json!({
            "variant": f.variant,
            "factors": factors,
            "coefficients": f.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }),
        r,
    ))
}

fn connect_identity(ctx: &Ctx) -> Out {
    let m = matrix(ctx, "matrix")?;
    let path = connect_to_identity(&m, var(ctx, "var", "X")?)?;
    Ok((json!({ "path": matrix_json(&path) }), passed("endpoints")))
}

fn contract_nil(ctx: &Ctx) -> Out {
    let a = input_loop(&matrix(ctx, "matrix")?, var(ctx, "loop_var", "X")?)?;
    let c = contract_nil_loop(&a, var(ctx, "homotopy_var", "T")?)?;
    let r = verify_homotopy(&c);
    Ok((cert_json(&c), r))
}

fn lift_nil(ctx: &Ctx) -> Out {
    let v = var(ctx, "loop_var", "X")?;
    let q = Ring::rationals();
    let bar = input_loop(&parse_matrix(field(ctx.payload, "loop")?, &q)?, v)?;
    let lift = match ctx.payload.get("lift") {
        Some(l) => parse_matrix(l, &ctx.ring)?,
        None => bar.matrix().embed(&ctx.ring)?,
    };
    let out = lift_loop_mod_nil(&bar, &ctx.ring, &lift)?;
    let mut r = loop_report(out.matrix(), v);
    r.check("reduces", out.matrix().reduce_nil() == *bar.matrix(), || {
        "lift does not reduce to the input".into()
    });
    Ok((json!({ "lift": matrix_json(out.matrix()) }), r))
}

fn injectivity(ctx: &Ctx) -> Out {
    let t = var(ctx, "loop_var", "T")?;
    let a = input_loop(&matrix(ctx, "a")?, t)?;
    let b = input_loop(&matrix(ctx, "b")?, t)?;
    let theta = parse_cert(field(ctx.payload, "theta")?, &ctx.ring)?;
    let c = polyring_injectivity_homotopy(&a, &b, &theta, var(ctx, "param", "X")?)?;
    Ok((cert_json(&c), verify_homotopy(&c)))
}

fn swan_weibel(ctx: &Ctx) -> Out {
    let b = input_loop(&matrix(ctx, "matrix")?, var(ctx, "loop_var", "X")?)?;
    let graded: Vec<&str> = field(ctx.payload, "graded")?
        .as_array()
        .ok_or_else(|| Error::Schema("`graded` must be a list of names".into()))?
        .iter()
        .map(|v| v.as_str().ok_or_else(|| Error::Schema("names must be strings".into())))
        .collect::<Result<_>>()?;
    let (c, beta0) = graded_homotopy(&b, &graded, var(ctx, "homotopy_var", "T")?)?;
    let mut out = cert_json(&c);
    out["degree_zero"] = matrix_json(beta0.matrix());
    Ok((out, verify_homotopy(&c)))
}

fn basepoint_shift(ctx: &Ctx) -> Out {
    let a = input_loop(&matrix(ctx, "matrix")?, var(ctx, "loop_var", "T")?)?;
    let c = basepoint_shift_homotopy(&a, var(ctx, "param", "X")?, var(ctx, "homotopy_var", "S")?)?;
    Ok((cert_json(&c), verify_homotopy(&c)))
}

fn product_split_cmd(ctx: &Ctx) -> Out {
    let a = input_loop(&matrix(ctx, "matrix")?, var(ctx, "loop_var", "T")?)?;
    let (l, r) = product_split(&a)?;
    Ok((
        json!({ "left": matrix_json(l.matrix()), "right": matrix_json(r.matrix()) }),
        passed("components"),
    ))
}

fn gamma_mul(ctx: &Ctx) -> Out {
    let r = parse_row(field(ctx.payload, "left")?, &ctx.ring)?;
    let s = parse_row(field(ctx.payload, "right")?, &ctx.ring)?;
    let p = gamma_product(&r, &s)?;
    Ok((json!({ "product": row_json(&p) }), passed("witness")))
}

fn complete(ctx: &Ctx) -> Out {
    let row = parse_row(field(ctx.payload, "row")?, &ctx.ring)?;
    let m = complete_row(&row);
    let mut r = Report::new();
    let det = m.det();
    r.check("det", det.is_one(), || format!("det = {det}"));
    Ok((json!({ "completion": matrix_json(&m), "row": row_json(&row) }), r))
}

fn gamma_equiv(ctx: &Ctx) -> Out {
    let cert = GammaEquivCert {
        beta: matrix(ctx, "beta")?,
        path_var: var(ctx, "path_var", "S")?.to_string(),
        alpha: matrix(ctx, "alpha")?,
        row_in: parse_row(field(ctx.payload, "row_in")?, &ctx.ring)?,
        row_out: parse_row(field(ctx.payload, "row_out")?, &ctx.ring)?,
    };
    let r = gamma_equiv_verify(&cert);
    Ok((json!({ "equivalent": r.is_ok() }), r))
}

fn quillen_check(ctx: &Ctx) -> Out {
    let base = ctx.ring.clone();
    let el = |k: &str| parse_element(field(ctx.payload, k)?, &base);
    let (s, t, u, v) = (el("s")?, el("t")?, el("u")?, el("v")?);
    let loc = |d| Ring::localization(base.clone(), d);
    let r_s = loc(s.clone())?;
    let r_t = loc(t.clone())?;
    let r_st = loc(base.mul(&s, &t))?;
    let split = QuillenSplit {
        sigma: parse_matrix(field(ctx.payload, "sigma")?, &r_st)?,
        psi1: parse_matrix(field(ctx.payload, "psi1")?, &r_s)?,
        psi2: parse_matrix(field(ctx.payload, "psi2")?, &r_t)?,
        var: var(ctx, "var", "X")?.to_string(),
        base,
        s,
        t,
        u,
        v,
    };
    let r = quillen_split_verify(&split);
    Ok((json!({ "split": r.is_ok() }), r))
}

fn circle_degree_cmd(ctx: &Ctx) -> Out {
    if ctx.ring != Ring::circle() {
        return Err(Error::Precondition(format!("{} is not the circle ring", ctx.ring)));
    }
    let row = field(ctx.payload, "row")?;
    let (a, b) = match row.get("witness") {
        Some(_) => {
            let r = parse_row(row, &ctx.ring)?;
            (r.a, r.b)
        }
        None => {
            let obj = super::schema::as_object(row, "row")?;
            (
                parse_value(field(obj, "a")?, &ctx.ring)?,
                parse_value(field(obj, "b")?, &ctx.ring)?,
            )
        }
    };
    let d = circle_degree_details(&a, &b)?;
    let mut r = Report::new();
    r.check("quarter-turns", d.quarter_turns % 4 == 0, || {
        format!("{} quarter turns", d.quarter_turns)
    });
    Ok((
        json!({ "degree": d.winding, "quarter_turns": d.quarter_turns, "itinerary": d.itinerary }),
        r,
    ))
}
