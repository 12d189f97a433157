//! Python bindings: quadratic algebras, free-operad dimensions, operad cohomomorphisms,
//! graph validation and the acceptance suites.
//!
//! Structured results cross the boundary as JSON strings; `json.loads` them on the Python side.

use opcohom::collections::standard::{binary_regular, binary_symmetric};
use opcohom::free::presentation::{associative, commutative};
use opcohom::free::{check_triple_laws, ClassCatalog, FreeOperad};
use opcohom::graph::canon::graph_canonical;
use opcohom::graph::{Graph, GraphMorphism};
use opcohom::labeling::{Caps, GammaPreset, Signature};
use opcohom::linalg::Q;
use opcohom::operad_cohom::{check_cohom, cohom_operads, unit_presented, weight_profile, Presented};
use opcohom::palg::{free_p_algebra, AlgebraOperad};
use opcohom::quadratic::{self, cohom, AlgebraPresentation};
use opcohom::{acceptance, Error};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Value};
use std::sync::Arc;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Invariant(_) | Error::CapExceeded(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for opcohom::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn json_text(v: &Value) -> PyResult<String> {
    serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

fn parse_json(text: &str) -> PyResult<Value> {
    serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn preset(name: &str) -> PyResult<GammaPreset> {
    name.parse::<GammaPreset>().py()
}

/// A quadratic (or N-homogeneous) algebra given by generators and relations.
#[pyclass(name = "Algebra", module = "opcohom_py", frozen, skip_from_py_object)]
struct PyAlgebra {
    inner: AlgebraPresentation,
}

impl From<AlgebraPresentation> for PyAlgebra {
    fn from(inner: AlgebraPresentation) -> Self {
        PyAlgebra { inner }
    }
}

#[pymethods]
impl PyAlgebra {
    /// Parses the `.alg` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        AlgebraPresentation::parse(text).py().map(Into::into)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        AlgebraPresentation::from_json(&parse_json(text)?).py().map(Into::into)
    }

    #[staticmethod]
    #[pyo3(signature = (names, degree = 2))]
    fn free(names: Vec<String>, degree: usize) -> Self {
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        quadratic::free_algebra(&refs, degree).into()
    }

    /// `k[t]`, one generator and no relations, read as an algebra of the given degree.
    #[staticmethod]
    #[pyo3(signature = (degree = 2))]
    fn polynomial_line(degree: usize) -> Self {
        quadratic::polynomial_line(degree).into()
    }

    /// Quantum affine space in `dim` variables; `q` is a rational such as `"2"` or `"-1/3"`.
    #[staticmethod]
    #[pyo3(signature = (q, dim = 2))]
    fn quantum_space(q: &str, dim: usize) -> PyResult<Self> {
        let q: Q = q.parse().map_err(|_| PyValueError::new_err(format!("not a rational: {q}")))?;
        Ok(quadratic::quantum_space(&q, dim).into())
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.names()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree
    }

    #[getter]
    fn relations(&self) -> Vec<String> {
        self.inner.relation_strings()
    }

    fn dual(&self) -> PyResult<Self> {
        self.inner.dual().py().map(Into::into)
    }

    fn white(&self, other: &PyAlgebra) -> PyResult<Self> {
        self.inner.white_product(&other.inner).py().map(Into::into)
    }

    fn black(&self, other: &PyAlgebra) -> PyResult<Self> {
        self.inner.black_product(&other.inner).py().map(Into::into)
    }

    /// `cohom(self, other)`.
    fn cohom(&self, other: &PyAlgebra) -> PyResult<Self> {
        cohom::cohom(&self.inner, &other.inner).py().map(|c| c.algebra.into())
    }

    fn coend(&self) -> PyResult<Self> {
        cohom::coend(&self.inner).py().map(|c| c.algebra.into())
    }

    /// Dimensions of the graded components in degrees `0..=cap`.
    #[pyo3(signature = (cap = 4))]
    fn hilbert(&self, cap: usize) -> Vec<usize> {
        self.inner.hilbert(cap)
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn to_latex(&self) -> String {
        self.inner.to_latex()
    }

    fn to_json(&self) -> PyResult<String> {
        json_text(&self.inner.to_json())
    }

    fn __eq__(&self, other: &PyAlgebra) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Algebra(generators={:?}, degree={}, relations={})", self.inner.names(), self.inner.degree, self.inner.relation_strings().len())
    }
}

fn caps(arity: usize, weight: usize, genus: u32) -> Caps {
    Caps { max_arity: arity, max_weight: weight, max_genus: genus }
}

fn free_operad(preset_name: &str, generators: &str, c: Caps) -> PyResult<FreeOperad> {
    let p = preset(preset_name)?;
    if !p.admissible_signature(Signature::new(0, 1, 2)) {
        return Err(PyValueError::new_err(format!("{p} has no binary corolla with one output")));
    }
    let gens = match generators {
        "binary_sym" => binary_symmetric(p),
        "binary_regular" => binary_regular(p),
        other => return Err(PyValueError::new_err(format!("unknown generator choice `{other}`; use binary_sym or binary_regular"))),
    };
    FreeOperad::new(Arc::new(ClassCatalog::new(p, c).py()?), &gens).py()
}

/// Total dimension of the free operad per signature, keyed `g{genus}_o{outputs}_i{inputs}`.
#[pyfunction]
#[pyo3(signature = (preset, generators = "binary_sym", arity = 4, weight = 3, genus = 0))]
fn free_operad_dims(preset: &str, generators: &str, arity: usize, weight: usize, genus: u32) -> PyResult<Vec<(String, usize)>> {
    let op = free_operad(preset, generators, caps(arity, weight, genus))?;
    Ok(op.components.keys().map(|s| (format!("g{}_o{}_i{}", s.genus, s.outputs, s.inputs), op.dim(s))).collect())
}

/// Whether the free construction satisfies the monad laws at the given caps.
#[pyfunction]
#[pyo3(signature = (preset, generators = "binary_sym", arity = 4, weight = 3, genus = 0))]
fn triple_laws_hold(preset: &str, generators: &str, arity: usize, weight: usize, genus: u32) -> PyResult<bool> {
    let op = free_operad(preset, generators, caps(arity, weight, genus))?;
    Ok(check_triple_laws(&op).py()?.holds())
}

fn builtin(name: &str, cat: &Arc<ClassCatalog>) -> PyResult<Presented> {
    let from_pair = |(pres, free): (_, FreeOperad)| Presented::new(pres, free.catalog.clone());
    match name {
        "associative" => from_pair(associative(cat.preset, cat.caps).py()?).py(),
        "commutative" if cat.preset == GammaPreset::Ordinary => from_pair(commutative(cat.caps).py()?).py(),
        "commutative" => Err(PyValueError::new_err(format!("the commutative operad is provided on ordinary, not {}", cat.preset))),
        "unit" => unit_presented(cat.clone()).py(),
        other => Err(PyValueError::new_err(format!("unknown built-in operad `{other}`"))),
    }
}

/// Cohomomorphism operad of two built-in operads (`associative`, `commutative`, `unit`), as JSON.
#[pyfunction]
#[pyo3(signature = (a, b, preset = "ordinary", arity = 4, weight = 3, genus = 0))]
fn operad_cohom(a: &str, b: &str, preset: &str, arity: usize, weight: usize, genus: u32) -> PyResult<String> {
    let p = self::preset(preset)?;
    let cat = Arc::new(ClassCatalog::new(p, caps(arity, weight, genus)).py()?);
    let (a, b) = (builtin(a, &cat)?, builtin(b, &cat)?);
    let r = cohom_operads(&a, &b).py()?;
    let checks = check_cohom(&a, &b, &r).py()?;
    let dims: Vec<Value> = weight_profile(&r.operad.algebra.collection).iter().map(|(s, w)| json!({ "signature": s, "by_weight": w })).collect();
    let rels: Vec<Value> = r.relations.iter().map(|(s, sub)| json!({ "signature": s, "relations": sub.dim() })).collect();
    json_text(&json!({ "preset": p, "dims": dims, "relation_counts": rels, "checks": checks }))
}

/// Dimensions of the free algebra on `generators` over a built-in operad, degrees `1..=degree`.
#[pyfunction]
#[pyo3(signature = (operad, generators, degree = 4))]
fn free_p_algebra_dims(operad: &str, generators: usize, degree: usize) -> PyResult<Vec<usize>> {
    let c = caps(degree, degree.saturating_sub(1).max(1), 0);
    let cat = Arc::new(ClassCatalog::new(GammaPreset::Ordinary, c).py()?);
    let p = AlgebraOperad::with_diagonal(builtin(operad, &cat)?).py()?;
    let f = free_p_algebra(&p, generators, degree).py()?;
    Ok(f.algebra.dims[1..].to_vec())
}

/// Violations of the graph or morphism axioms for a JSON document; empty when valid.
#[pyfunction]
fn validate_graph(text: &str) -> PyResult<Vec<String>> {
    let v = parse_json(text)?;
    let report = if v.get("source").is_some() {
        serde_json::from_value::<GraphMorphism>(v).map_err(|e| PyValueError::new_err(e.to_string()))?.validate()
    } else {
        serde_json::from_value::<Graph>(v).map_err(|e| PyValueError::new_err(e.to_string()))?.validate()
    };
    Ok(report.violations)
}

/// Isomorphism-invariant key of a graph; equal keys mean isomorphic graphs.
#[pyfunction]
fn canonical_key(text: &str) -> PyResult<Vec<u64>> {
    let g: Graph = serde_json::from_value(parse_json(text)?).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(graph_canonical(&g).py()?.0)
}

/// Runs an acceptance suite (or `"all"`); one `(id, suite, passed, summary)` per criterion.
#[pyfunction]
#[pyo3(signature = (suite = "all"))]
fn run_acceptance(py: Python<'_>, suite: &str) -> PyResult<Vec<(u8, String, bool, String)>> {
    let results = py.detach(|| acceptance::run(suite)).py()?;
    Ok(results.into_iter().map(|c| (c.id, c.suite.to_string(), c.passed, c.summary)).collect())
}

#[pymodule]
fn opcohom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(free_operad_dims, m)?)?;
    m.add_function(wrap_pyfunction!(triple_laws_hold, m)?)?;
    m.add_function(wrap_pyfunction!(operad_cohom, m)?)?;
    m.add_function(wrap_pyfunction!(free_p_algebra_dims, m)?)?;
    m.add_function(wrap_pyfunction!(validate_graph, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_key, m)?)?;
    m.add_function(wrap_pyfunction!(run_acceptance, m)?)?;
    m.add("PRESETS", GammaPreset::ALL.iter().map(|p| p.to_string()).collect::<Vec<_>>())?;
    Ok(())
}
