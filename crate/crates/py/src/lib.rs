//! Python bindings. Errors surface as subclasses of `Pi1Error`, split the
//! same way as the command-line exit codes.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

use pi1sl2_core as core;
use core::job::schema::{matrix_json, parse_ring};
use core::{ElemKind, LoopRep, Mat2, MultiPoly, PlaneLoop, UnimodRow};

create_exception!(pi1sl2, Pi1Error, PyValueError, "Base class of all toolkit errors.");
create_exception!(pi1sl2, ParseError, Pi1Error, "Malformed expression, descriptor or job.");
create_exception!(pi1sl2, VerificationError, Pi1Error, "An exact check failed.");
create_exception!(pi1sl2, PreconditionError, Pi1Error, "An input violates an operation's precondition.");

fn err(e: core::Error) -> PyErr {
    let msg = e.to_string();
    match core::job::exit_code(&e) {
        2 => ParseError::new_err(msg),
        1 => VerificationError::new_err(msg),
        _ => PreconditionError::new_err(msg),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn ring_or_default(ring: Option<&Ring>) -> core::Ring {
    ring.map(|r| r.0.clone()).unwrap_or_else(core::Ring::rationals)
}

/// A coefficient ring. Build one with the static constructors or from a
/// JSON descriptor.
#[pyclass(frozen, eq, from_py_object, module = "pi1sl2")]
#[derive(Clone, PartialEq)]
pub struct Ring(core::Ring);

#[pymethods]
impl Ring {
    #[staticmethod]
    fn rationals() -> Self {
        Ring(core::Ring::rationals())
    }

    #[staticmethod]
    fn integers() -> Self {
        Ring(core::Ring::integers())
    }

    /// `Q[eps]/(eps^order)`.
    #[staticmethod]
    fn dual(order: usize) -> PyResult<Self> {
        core::Ring::dual(order).map(Ring).map_err(err)
    }

    /// `Q[x, y]/(x^2 + y^2 - 1)`.
    #[staticmethod]
    fn circle() -> Self {
        Ring(core::Ring::circle())
    }

    #[staticmethod]
    #[pyo3(signature = (vars, base = None))]
    fn polynomial(vars: Vec<String>, base: Option<&Ring>) -> PyResult<Self> {
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        core::Ring::polynomial(ring_or_default(base), &names).map(Ring).map_err(err)
    }

    /// A JSON descriptor such as `{"kind": "dual", "order": 3}`, or a bare
    /// kind such as `"rationals"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let v = serde_json::from_str(text).unwrap_or_else(|_| Value::String(text.into()));
        parse_ring(&v).map(Ring).map_err(err)
    }

    fn coordinate_names(&self) -> Vec<String> {
        self.0.coordinate_names()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ring({})", self.0)
    }
}

/// A polynomial over a ring, parsed from text.
#[pyclass(frozen, eq, from_py_object, module = "pi1sl2")]
#[derive(Clone, PartialEq)]
pub struct Poly(MultiPoly);

fn poly_arg(obj: &Bound<'_, PyAny>, ring: &core::Ring) -> PyResult<MultiPoly> {
    if let Ok(p) = obj.extract::<PyRef<Poly>>() {
        return Ok(p.0.clone());
    }
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(MultiPoly::from_i64(ring, n));
    }
    let text: String = obj.extract()?;
    core::parse_poly(&text, ring).map_err(err)
}

fn combine(
    a: &MultiPoly,
    other: &Bound<'_, PyAny>,
    f: fn(&MultiPoly, &MultiPoly) -> core::Result<MultiPoly>,
) -> PyResult<Poly> {
    let b = poly_arg(other, a.ring())?;
    f(a, &b).map(Poly).map_err(err)
}

#[pymethods]
impl Poly {
    #[new]
    #[pyo3(signature = (text, ring = None))]
    fn new(text: &str, ring: Option<&Ring>) -> PyResult<Self> {
        core::parse_poly(text, &ring_or_default(ring)).map(Poly).map_err(err)
    }

    #[getter]
    fn ring(&self) -> Ring {
        Ring(self.0.ring().clone())
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.0.vars().to_vec()
    }

    fn total_degree(&self) -> u32 {
        self.0.total_degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Substitute a polynomial (or text, or integer) for a variable.
    fn subs(&self, var: &str, value: &Bound<'_, PyAny>) -> PyResult<Self> {
        let v = poly_arg(value, self.0.ring())?;
        Ok(Poly(self.0.subs(var, &v)))
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        combine(&self.0, other, MultiPoly::checked_add)
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__add__(other)
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        combine(&self.0, other, MultiPoly::checked_sub)
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Poly(-&self.__sub__(other)?.0))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        combine(&self.0, other, MultiPoly::checked_mul)
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(other)
    }

    fn __neg__(&self) -> Self {
        Poly(-&self.0)
    }

    fn __pow__(&self, exp: u32, _modulo: Option<&Bound<'_, PyAny>>) -> Self {
        Poly(self.0.pow(exp))
    }

    fn __str__(&self) -> String {
        core::print_canonical(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", core::print_canonical(&self.0))
    }
}

/// A 2x2 matrix with polynomial entries.
#[pyclass(frozen, eq, from_py_object, module = "pi1sl2")]
#[derive(Clone, PartialEq)]
pub struct Matrix(Mat2);

#[pymethods]
impl Matrix {
    /// `rows` is `[[a, b], [c, d]]`; entries may be `Poly`, text or integers.
    #[new]
    #[pyo3(signature = (rows, ring = None))]
    fn new(rows: Vec<Vec<Bound<'_, PyAny>>>, ring: Option<&Ring>) -> PyResult<Self> {
        let ring = ring_or_default(ring);
        if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
            return Err(ParseError::new_err("a matrix must be [[a, b], [c, d]]"));
        }
        let e = |i: usize, j: usize| poly_arg(&rows[i][j], &ring);
        Mat2::new(e(0, 0)?, e(0, 1)?, e(1, 0)?, e(1, 1)?).map(Matrix).map_err(err)
    }

    /// `[[1, p], [0, 1]]` for kind `"E12"`, `[[1, 0], [p, 1]]` for `"E21"`.
    #[staticmethod]
    #[pyo3(signature = (kind, p, ring = None))]
    fn elementary(kind: &str, p: &Bound<'_, PyAny>, ring: Option<&Ring>) -> PyResult<Self> {
        let kind = match kind {
            "E12" | "e12" => ElemKind::E12,
            "E21" | "e21" => ElemKind::E21,
            other => return Err(ParseError::new_err(format!("unknown elementary kind `{other}`"))),
        };
        Ok(Matrix(Mat2::elementary(kind, poly_arg(p, &ring_or_default(ring))?)))
    }

    #[staticmethod]
    #[pyo3(signature = (ring = None))]
    fn identity(ring: Option<&Ring>) -> Self {
        Matrix(Mat2::identity(&ring_or_default(ring)))
    }

    fn det(&self) -> Poly {
        Poly(self.0.det())
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(Matrix).map_err(err)
    }

    fn transpose(&self) -> Self {
        Matrix(self.0.transpose())
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    fn entry(&self, i: usize, j: usize) -> PyResult<Poly> {
        if i > 1 || j > 1 {
            return Err(pyo3::exceptions::PyIndexError::new_err("indices are 0 or 1"));
        }
        Ok(Poly(self.0.get(i, j).clone()))
    }

    fn subs(&self, var: &str, value: &Bound<'_, PyAny>) -> PyResult<Self> {
        let v = poly_arg(value, self.0.ring())?;
        Ok(Matrix(self.0.subs(var, &v)))
    }

    /// Entries as canonical strings.
    fn rows(&self) -> Vec<Vec<String>> {
        self.0.rows().iter().map(|r| r.iter().map(core::print_canonical).collect()).collect()
    }

    fn __matmul__(&self, other: &Matrix) -> PyResult<Self> {
        self.0.mul(&other.0).map(Matrix).map_err(err)
    }

    fn __mul__(&self, other: &Matrix) -> PyResult<Self> {
        self.__matmul__(other)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Matrix({})", matrix_json(&self.0))
    }
}

/// A verified loop: determinant 1 and the identity at both ends.
#[pyclass(frozen, from_py_object, module = "pi1sl2")]
#[derive(Clone)]
pub struct Loop(LoopRep);

#[pymethods]
impl Loop {
    /// Verifies `matrix` as a loop in `var`; raises `VerificationError`
    /// otherwise.
    #[new]
    #[pyo3(signature = (matrix, var = "T"))]
    fn new(matrix: &Matrix, var: &str) -> PyResult<Self> {
        core::verify_loop(&matrix.0, var).map(Loop).map_err(err)
    }

    #[getter]
    fn matrix(&self) -> Matrix {
        Matrix(self.0.matrix().clone())
    }

    #[getter]
    fn var(&self) -> String {
        self.0.loop_var().to_string()
    }

    /// Winding number of the first column (rational loops only).
    fn eta(&self) -> PyResult<i64> {
        core::eta(&self.0).map_err(err)
    }

    fn inverse(&self) -> Self {
        Loop(core::loop_inverse(&self.0))
    }

    fn __mul__(&self, other: &Loop) -> PyResult<Self> {
        core::loop_product(&self.0, &other.0).map(Loop).map_err(err)
    }

    fn __pow__(&self, k: i64, _modulo: Option<&Bound<'_, PyAny>>) -> Self {
        Loop(core::loop_power(&self.0, k))
    }

    fn __str__(&self) -> String {
        self.0.matrix().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Loop({}, var='{}')", matrix_json(self.0.matrix()), self.0.loop_var())
    }
}

/// A unimodular row `(a, b)` with witness `a*b1 + b*b2 = 1`.
#[pyclass(frozen, eq, from_py_object, module = "pi1sl2")]
#[derive(Clone, PartialEq)]
pub struct Row(UnimodRow);

#[pymethods]
impl Row {
    /// Without a witness one is searched for (univariate rows over a field).
    #[new]
    #[pyo3(signature = (a, b, witness = None, ring = None))]
    fn new(
        a: &Bound<'_, PyAny>,
        b: &Bound<'_, PyAny>,
        witness: Option<(Bound<'_, PyAny>, Bound<'_, PyAny>)>,
        ring: Option<&Ring>,
    ) -> PyResult<Self> {
        let ring = ring_or_default(ring);
        let (a, b) = (poly_arg(a, &ring)?, poly_arg(b, &ring)?);
        let w = match witness {
            Some((b1, b2)) => Some((poly_arg(&b1, &ring)?, poly_arg(&b2, &ring)?)),
            None => None,
        };
        core::verify_unimodular(&a, &b, w.as_ref().map(|(x, y)| (x, y))).map(Row).map_err(err)
    }

    #[getter]
    fn a(&self) -> Poly {
        Poly(self.0.a.clone())
    }

    #[getter]
    fn b(&self) -> Poly {
        Poly(self.0.b.clone())
    }

    #[getter]
    fn witness(&self) -> (Poly, Poly) {
        (Poly(self.0.b1.clone()), Poly(self.0.b2.clone()))
    }

    /// A matrix in `SL2` with this row as its first column.
    fn complete(&self) -> Matrix {
        Matrix(core::complete_row(&self.0))
    }

    /// Degree of the row as a map from the circle (circle ring only).
    fn circle_degree(&self) -> PyResult<i64> {
        core::circle_degree(&self.0).map_err(err)
    }

    fn __mul__(&self, other: &Row) -> PyResult<Self> {
        core::gamma_product(&self.0, &other.0).map(Row).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Row({})", self.0)
    }
}

/// The generating loop of the fundamental group over the reals.
#[pyfunction]
fn generator() -> Loop {
    Loop(core::generator_loop())
}

/// Exact winding number of `t -> (f1(t), f2(t))` on `[0, 1]`.
#[pyfunction]
#[pyo3(signature = (f1, f2, var = "T"))]
fn winding_number(f1: &str, f2: &str, var: &str) -> PyResult<i64> {
    let l = PlaneLoop::from_strs(f1, f2, var).map_err(err)?;
    core::winding_number(&l).map_err(err)
}

/// Floating-point winding estimate on a grid of `samples` intervals.
#[pyfunction]
#[pyo3(signature = (f1, f2, var = "T", samples = 4096))]
fn oracle(f1: &str, f2: &str, var: &str, samples: usize) -> PyResult<f64> {
    let l = PlaneLoop::from_strs(f1, f2, var).map_err(err)?;
    core::numeric_winding_oracle(&l, samples).map(|r| r.value).map_err(err)
}

/// Degree of `(a, b)` as a map from the circle `x^2 + y^2 = 1`; needs no
/// witness, only that the row has no zero on the circle.
#[pyfunction]
fn circle_degree(a: &str, b: &str) -> PyResult<i64> {
    let ring = core::Ring::circle();
    let a = core::parse_poly(a, &ring).map_err(err)?;
    let b = core::parse_poly(b, &ring).map_err(err)?;
    core::gamma::circle_degree_pair(&a, &b).map_err(err)
}

/// Six elementary factors `[(kind, arg)]` of a constant matrix congruent to
/// the identity over dual numbers.
#[pyfunction]
fn decompose_nil(matrix: &Matrix) -> PyResult<Vec<(String, Poly)>> {
    let f = core::elementary_decomposition(&matrix.0).map_err(err)?;
    Ok(f.factors
        .into_iter()
        .map(|(k, p)| {
            let kind = match k {
                ElemKind::E12 => "E12",
                ElemKind::E21 => "E21",
            };
            (kind.to_string(), Poly(p))
        })
        .collect())
}

/// Runs one JSON job and returns the full outcome as a dict.
#[pyfunction]
#[pyo3(signature = (job, ring = None, samples = None))]
fn run_job<'py>(py: Python<'py>, job: &str, ring: Option<&str>, samples: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let opts = core::JobOptions {
        ring: ring.map(|r| serde_json::from_str(r).unwrap_or_else(|_| Value::String(r.into()))),
        samples,
        refine_width: None,
    };
    to_py(py, &core::run_job_str(job, &opts).to_json())
}

/// Re-runs every built-in worked example; a list of dicts.
#[pyfunction]
fn paper_suite<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    let (cases, _) = core::job::paper_suite();
    to_py(py, &serde_json::to_value(cases).expect("cases serialize"))
}

#[pymodule]
fn pi1sl2(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("Pi1Error", py.get_type::<Pi1Error>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("VerificationError", py.get_type::<VerificationError>())?;
    m.add("PreconditionError", py.get_type::<PreconditionError>())?;
    m.add_class::<Ring>()?;
    m.add_class::<Poly>()?;
    m.add_class::<Matrix>()?;
    m.add_class::<Loop>()?;
    m.add_class::<Row>()?;
    m.add_function(wrap_pyfunction!(generator, m)?)?;
    m.add_function(wrap_pyfunction!(winding_number, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(circle_degree, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_nil, m)?)?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    m.add_function(wrap_pyfunction!(paper_suite, m)?)?;
    Ok(())
}
