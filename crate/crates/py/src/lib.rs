//! Python bindings: exact field arithmetic, structure-constant matrices,
//! dialgebras, classification, brute-force search, and the census engine.
//!
//! Elements cross the boundary as literal strings (`"3"`, `"-1/2"`,
//! `"[0,1]"`) or plain integers; censuses and catalog listings come back as
//! JSON strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use dialg::catalog::{self, AlgKind, CharClass, Rep};
use dialg::census;
use dialg::doc;
use dialg::field::{Elem, FieldCtx};
use dialg::msc::{Gl2, Mat2};
use dialg::search;

fn err(e: dialg::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen)]
#[derive(Clone)]
struct Field {
    ctx: FieldCtx,
}

#[pymethods]
impl Field {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Field { ctx: FieldCtx::parse(spec).map_err(err)? })
    }
    #[getter]
    fn characteristic(&self) -> u64 {
        self.ctx.characteristic()
    }
    #[getter]
    fn order(&self) -> Option<u64> {
        self.ctx.order()
    }
    fn add(&self, a: &str, b: &str) -> PyResult<String> {
        self.binop(a, b, FieldCtx::add)
    }
    fn sub(&self, a: &str, b: &str) -> PyResult<String> {
        self.binop(a, b, FieldCtx::sub)
    }
    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        self.binop(a, b, FieldCtx::mul)
    }
    fn div(&self, a: &str, b: &str) -> PyResult<String> {
        self.binop(a, b, FieldCtx::div)
    }
    fn neg(&self, a: &str) -> PyResult<String> {
        let x = self.ctx.parse_literal(a).map_err(err)?;
        Ok(self.ctx.literal(&self.ctx.neg(&x).map_err(err)?))
    }
    fn inv(&self, a: &str) -> PyResult<String> {
        let x = self.ctx.parse_literal(a).map_err(err)?;
        Ok(self.ctx.literal(&self.ctx.inv(&x).map_err(err)?))
    }
    fn square_class_rep(&self, a: &str) -> PyResult<String> {
        let x = self.ctx.parse_literal(a).map_err(err)?;
        Ok(self.ctx.literal(&self.ctx.square_class_rep(&x).map_err(err)?))
    }
    fn elements(&self) -> PyResult<Vec<String>> {
        Ok(self
            .ctx
            .elements()
            .map_err(err)?
            .iter()
            .map(|e| self.ctx.literal(e))
            .collect())
    }
    fn __repr__(&self) -> String {
        format!("Field('{}')", self.ctx.descriptor())
    }
}

impl Field {
    fn binop(
        &self,
        a: &str,
        b: &str,
        op: fn(&FieldCtx, &Elem, &Elem) -> dialg::Result<Elem>,
    ) -> PyResult<String> {
        let x = self.ctx.parse_literal(a).map_err(err)?;
        let y = self.ctx.parse_literal(b).map_err(err)?;
        Ok(self.ctx.literal(&op(&self.ctx, &x, &y).map_err(err)?))
    }
}

fn elem_from_py(ctx: &FieldCtx, v: &Bound<'_, PyAny>) -> PyResult<Elem> {
    if let Ok(i) = v.extract::<i64>() {
        return Ok(ctx.from_int(i));
    }
    let s: String = v.extract()?;
    ctx.parse_literal(&s).map_err(err)
}

fn rows_from_py(ctx: &FieldCtx, rows: &Bound<'_, PyAny>) -> PyResult<dialg::Msc> {
    let outer: Vec<Bound<'_, PyAny>> = rows.extract()?;
    if outer.len() != 2 {
        return Err(PyValueError::new_err("expected two rows of four entries"));
    }
    let mut entries: Vec<Elem> = Vec::with_capacity(8);
    for row in outer {
        let cells: Vec<Bound<'_, PyAny>> = row.extract()?;
        if cells.len() != 4 {
            return Err(PyValueError::new_err("each row needs exactly four entries"));
        }
        for c in cells {
            entries.push(elem_from_py(ctx, &c)?);
        }
    }
    Ok(dialg::Msc::new(ctx, entries.try_into().unwrap()))
}

fn rows_to_py(ctx: &FieldCtx, a: &dialg::Msc) -> [Vec<String>; 2] {
    let e = a.entries();
    [
        e[..4].iter().map(|x| ctx.literal(x)).collect(),
        e[4..].iter().map(|x| ctx.literal(x)).collect(),
    ]
}

fn gl2_to_py(ctx: &FieldCtx, g: &Gl2) -> [Vec<String>; 2] {
    let e = g.mat().entries();
    [
        vec![ctx.literal(&e[0]), ctx.literal(&e[1])],
        vec![ctx.literal(&e[2]), ctx.literal(&e[3])],
    ]
}

fn gl2_from_py(ctx: &FieldCtx, rows: &Bound<'_, PyAny>) -> PyResult<Gl2> {
    let outer: Vec<Vec<Bound<'_, PyAny>>> = rows.extract()?;
    if outer.len() != 2 || outer.iter().any(|r| r.len() != 2) {
        return Err(PyValueError::new_err("expected a 2x2 matrix"));
    }
    let mut e: Vec<Elem> = Vec::with_capacity(4);
    for row in &outer {
        for c in row {
            e.push(elem_from_py(ctx, c)?);
        }
    }
    Gl2::new(Mat2::new(ctx, e.try_into().unwrap())).map_err(err)
}

fn label_to_py(py: Python<'_>, ctx: &FieldCtx, l: &catalog::CanonicalLabel) -> PyObject {
    use pyo3::types::PyDict;
    let d = PyDict::new_bound(py);
    d.set_item("label", l.family).unwrap();
    d.set_item(
        "params",
        l.params.iter().map(|p| ctx.literal(p)).collect::<Vec<_>>(),
    )
    .unwrap();
    d.set_item("char_class", l.char_class.name()).unwrap();
    d.into()
}

/// A 2x4 matrix of structure constants over a field.
#[pyclass(frozen)]
#[derive(Clone)]
struct Msc {
    field: Field,
    inner: dialg::Msc,
}

#[pymethods]
impl Msc {
    #[new]
    fn new(field: Field, rows: &Bound<'_, PyAny>) -> PyResult<Self> {
        let inner = rows_from_py(&field.ctx, rows)?;
        Ok(Msc { field, inner })
    }
    fn rows(&self) -> [Vec<String>; 2] {
        rows_to_py(&self.field.ctx, &self.inner)
    }
    fn is_associative(&self) -> bool {
        self.inner.assoc_matrix_check()
    }
    /// 1-based indices of the failing scalar associativity equations.
    fn failing_equations(&self) -> Vec<usize> {
        dialg::axioms::gse_residuals(&self.inner).failing()
    }
    fn classify(&self, py: Python<'_>) -> PyResult<PyObject> {
        let label = search::classify(&Rep::Alg(self.inner.clone())).map_err(err)?;
        Ok(label_to_py(py, &self.field.ctx, &label))
    }
    fn aut_order(&self) -> PyResult<usize> {
        Ok(search::automorphism_group(&Rep::Alg(self.inner.clone()))
            .map_err(err)?
            .len())
    }
    #[pyo3(signature = (limit = 100))]
    fn aut_elements(&self, limit: usize) -> PyResult<Vec<[Vec<String>; 2]>> {
        Ok(search::automorphism_group(&Rep::Alg(self.inner.clone()))
            .map_err(err)?
            .iter()
            .take(limit)
            .map(|g| gl2_to_py(&self.field.ctx, g))
            .collect())
    }
    /// Basis change by an invertible matrix (rows of literals).
    fn transform(&self, g: &Bound<'_, PyAny>) -> PyResult<Msc> {
        let g = gl2_from_py(&self.field.ctx, g)?;
        let inner = dialg::msc::transform(&g, &self.inner).map_err(err)?;
        Ok(Msc { field: self.field.clone(), inner })
    }
    /// A witness basis change onto `other`, or None.
    fn isomorphism_to(&self, other: &Msc) -> PyResult<Option<[Vec<String>; 2]>> {
        let w = search::isomorphic(&other.inner, &self.inner).map_err(err)?;
        Ok(w.map(|g| gl2_to_py(&self.field.ctx, &g)))
    }
    fn __repr__(&self) -> String {
        let r = self.rows();
        format!(
            "Msc('{}', [{} | {}])",
            self.field.ctx.descriptor(),
            r[0].join(" "),
            r[1].join(" ")
        )
    }
    fn __eq__(&self, other: &Msc) -> bool {
        self.inner == other.inner
    }
}

/// An ordered pair of MSCs: the two dialgebra products.
#[pyclass(frozen)]
#[derive(Clone)]
struct DiMsc {
    field: Field,
    inner: dialg::DiMsc,
}

#[pymethods]
impl DiMsc {
    #[new]
    fn new(field: Field, left: &Bound<'_, PyAny>, right: &Bound<'_, PyAny>) -> PyResult<Self> {
        let l = rows_from_py(&field.ctx, left)?;
        let r = rows_from_py(&field.ctx, right)?;
        let inner = dialg::DiMsc::new(l, r).map_err(err)?;
        Ok(DiMsc { field, inner })
    }
    fn left(&self) -> [Vec<String>; 2] {
        rows_to_py(&self.field.ctx, self.inner.left())
    }
    fn right(&self) -> [Vec<String>; 2] {
        rows_to_py(&self.field.ctx, self.inner.right())
    }
    fn is_diassociative(&self) -> bool {
        self.inner.dia_check()
    }
    /// The five per-axiom verdicts, in order.
    fn axiom_verdicts(&self) -> Vec<bool> {
        self.inner.residuals().iter().map(|r| r.is_zero()).collect()
    }
    fn classify(&self, py: Python<'_>) -> PyResult<PyObject> {
        let label = search::classify(&Rep::Dia(self.inner.clone())).map_err(err)?;
        Ok(label_to_py(py, &self.field.ctx, &label))
    }
    fn aut_order(&self) -> PyResult<usize> {
        Ok(search::automorphism_group(&Rep::Dia(self.inner.clone()))
            .map_err(err)?
            .len())
    }
    fn isomorphism_to(&self, other: &DiMsc) -> PyResult<Option<[Vec<String>; 2]>> {
        let w = search::dia_isomorphic(&other.inner, &self.inner).map_err(err)?;
        Ok(w.map(|g| gl2_to_py(&self.field.ctx, &g)))
    }
    fn __repr__(&self) -> String {
        format!("DiMsc('{}', ...)", self.field.ctx.descriptor())
    }
    fn __eq__(&self, other: &DiMsc) -> bool {
        self.inner == other.inner
    }
}

/// Parse an algebra description document; returns an Msc or a DiMsc.
#[pyfunction]
fn parse_doc(py: Python<'_>, text: &str) -> PyResult<PyObject> {
    let doc = doc::parse_algebra(text).map_err(err)?;
    let field = Field { ctx: doc.ctx.clone() };
    match doc.content {
        Rep::Alg(inner) => Ok(Msc { field, inner }.into_py(py)),
        Rep::Dia(inner) => Ok(DiMsc { field, inner }.into_py(py)),
    }
}

fn kind_from_str(kind: &str) -> PyResult<AlgKind> {
    match kind {
        "general" => Ok(AlgKind::General),
        "assoc" => Ok(AlgKind::Associative),
        "dia" => Ok(AlgKind::Diassociative),
        _ => Err(PyValueError::new_err("kind must be general, assoc or dia")),
    }
}

/// Run a census; returns the full report as a JSON string.
#[pyfunction]
#[pyo3(signature = (field, kind, jobs = 1))]
fn run_census(field: &str, kind: &str, jobs: usize) -> PyResult<String> {
    let ctx = FieldCtx::parse(field).map_err(err)?;
    let report = match kind_from_str(kind)? {
        AlgKind::Associative => census::census_associative(&ctx, jobs),
        AlgKind::Diassociative => census::census_diassociative(&ctx, jobs),
        AlgKind::General => census::census_general(&ctx, jobs),
    }
    .map_err(err)?;
    Ok(report.to_json())
}

/// Catalog representatives over a finite field (or symbolic templates over
/// Q), as a JSON string.
#[pyfunction]
fn reps(field: &str, kind: &str) -> PyResult<String> {
    let ctx = FieldCtx::parse(field).map_err(err)?;
    let kind = kind_from_str(kind)?;
    let class = CharClass::of(&ctx);
    if ctx.order().is_some() {
        let out: Vec<serde_json::Value> = catalog::representatives(class, kind, &ctx)
            .map_err(err)?
            .iter()
            .map(|(label, rep)| {
                let body = match rep {
                    Rep::Alg(a) => serde_json::json!({ "msc": rows_to_py(&ctx, a) }),
                    Rep::Dia(d) => serde_json::json!({
                        "dimsc": [rows_to_py(&ctx, d.left()), rows_to_py(&ctx, d.right())]
                    }),
                };
                let side: Vec<String> = catalog::templates(class, kind)
                    .into_iter()
                    .find(|i| i.family == label.family)
                    .map(|i| i.side_conditions)
                    .unwrap_or_default();
                let mut v = serde_json::json!({
                    "family": label.family,
                    "char_class": label.char_class,
                    "kind": kind,
                    "params": label.params.iter().map(|p| ctx.literal(p)).collect::<Vec<_>>(),
                    "side_conditions": side,
                });
                v.as_object_mut().unwrap().extend(body.as_object().unwrap().clone());
                v
            })
            .collect();
        serde_json::to_string_pretty(&out).map_err(|e| PyValueError::new_err(e.to_string()))
    } else {
        let infos = catalog::templates(class, kind);
        serde_json::to_string_pretty(&infos).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

/// The four-class correspondence report as a JSON string.
#[pyfunction]
fn wi_report(field: &str) -> PyResult<String> {
    let ctx = FieldCtx::parse(field).map_err(err)?;
    let report = census::verify_wi_correspondence(&ctx).map_err(err)?;
    serde_json::to_string_pretty(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn dialg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Msc>()?;
    m.add_class::<DiMsc>()?;
    m.add_function(wrap_pyfunction!(parse_doc, m)?)?;
    m.add_function(wrap_pyfunction!(run_census, m)?)?;
    m.add_function(wrap_pyfunction!(reps, m)?)?;
    m.add_function(wrap_pyfunction!(wi_report, m)?)?;
    Ok(())
}
