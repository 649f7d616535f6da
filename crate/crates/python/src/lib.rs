//! Python bindings. Coordinates go in as anything whose `str()` is an integer,
//! a decimal or `p/q` (so `int`, `str` and `fractions.Fraction` all work) and
//! come back as `"p/q"` strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use statespace::distinguish::{
    decompose, distinguishable, hyperplane_witness_from_effects, max_distinguishable, verify_hyperplane_witness,
};
use statespace::models::{self, ModelPoint};
use statespace::polytope::{contains, generate, load_polytope, Containment, PolytopeSpec};
use statespace::symmetry::{automorphism_group, fixed_point, invariant_gram, is_vertex_transitive, verify_m_orthogonal};
use statespace::theorems::{analyze_polytope, classify, default_corpus, theorem_suite};
use statespace::{Error, Point, Scalar, VPolytope};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn scalar(obj: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    obj.str()?.to_str()?.parse().map_err(err)
}

fn point(obj: &Bound<'_, PyAny>) -> PyResult<Point> {
    let coords = obj.try_iter()?.map(|c| scalar(&c?)).collect::<PyResult<Vec<_>>>()?;
    Ok(Point::new(coords))
}

fn points(obj: &Bound<'_, PyAny>) -> PyResult<Vec<Point>> {
    obj.try_iter()?.map(|p| point(&p?)).collect()
}

fn coords(p: &Point) -> Vec<String> {
    p.coords().iter().map(Scalar::to_string).collect()
}

#[pyclass(name = "Polytope", module = "pystatespace")]
struct PyPolytope {
    inner: VPolytope,
}

#[pymethods]
impl PyPolytope {
    /// Convex hull of the given points; non-extreme points are dropped.
    #[new]
    fn new(vertices: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyPolytope { inner: VPolytope::from_points(points(vertices)?).map_err(err)? })
    }

    /// Builds a generator spec such as `"polygon(6)"` or `"prism(simplex(2))"`.
    #[staticmethod]
    fn generate(spec: &str) -> PyResult<Self> {
        let spec: PolytopeSpec = spec.parse().map_err(err)?;
        Ok(PyPolytope { inner: generate(&spec).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPolytope { inner: load_polytope(text).map_err(err)?.polytope })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn vertices(&self) -> Vec<Vec<String>> {
        self.inner.vertices().iter().map(coords).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!("Polytope(dim={}, vertices={})", self.inner.dim(), self.inner.vertex_count())
    }

    fn is_simplex(&self) -> bool {
        self.inner.is_simplex()
    }

    /// `"outside"`, `"boundary"` or `"interior"`.
    fn locate(&self, p: &Bound<'_, PyAny>) -> PyResult<&'static str> {
        Ok(match contains(&self.inner, &point(p)?).map_err(err)?.kind {
            Containment::Outside => "outside",
            Containment::Boundary => "boundary",
            Containment::RelativeInterior => "interior",
        })
    }

    fn distinguishable(&self, pts: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(distinguishable(&self.inner, &points(pts)?).map_err(err)?.is_some())
    }

    /// Effects as `(gradient, offset)` pairs, or `None` when indistinguishable.
    fn effects(&self, pts: &Bound<'_, PyAny>) -> PyResult<Option<Vec<(Vec<String>, String)>>> {
        let w = distinguishable(&self.inner, &points(pts)?).map_err(err)?;
        Ok(w.map(|w| {
            w.effects
                .iter()
                .map(|e| (e.gradient.iter().map(Scalar::to_string).collect(), e.offset.to_string()))
                .collect()
        }))
    }

    /// Converts the LP witness to hyperplanes and checks every condition exactly.
    fn hyperplane_witness_verified(&self, pts: &Bound<'_, PyAny>) -> PyResult<bool> {
        let pts = points(pts)?;
        let Some(w) = distinguishable(&self.inner, &pts).map_err(err)? else { return Ok(false) };
        let hw = hyperplane_witness_from_effects(&self.inner, &pts, &w).map_err(err)?;
        Ok(verify_hyperplane_witness(&self.inner, &pts, &hw))
    }

    /// `(k, sets)` with each set as vertex indices.
    fn max_distinguishable(&self) -> PyResult<(usize, Vec<Vec<usize>>)> {
        let m = max_distinguishable(&self.inner).map_err(err)?;
        Ok((m.k, m.sets))
    }

    /// `[(vertex, weight), ...]` or `None`.
    fn decompose(&self, p: &Bound<'_, PyAny>) -> PyResult<Option<Vec<(Vec<String>, String)>>> {
        let d = decompose(&self.inner, &point(p)?).map_err(err)?;
        Ok(d.map(|d| d.terms.iter().map(|t| (coords(&t.vertex), t.weight.to_string())).collect()))
    }

    fn automorphism_order(&self) -> PyResult<usize> {
        Ok(automorphism_group(&self.inner).map_err(err)?.order())
    }

    fn is_vertex_transitive(&self) -> PyResult<bool> {
        let g = automorphism_group(&self.inner).map_err(err)?;
        Ok(is_vertex_transitive(&g, &self.inner).0)
    }

    /// `(point, unique, interior)`.
    fn fixed_point(&self) -> PyResult<(Vec<String>, bool, bool)> {
        let g = automorphism_group(&self.inner).map_err(err)?;
        let r = fixed_point(&self.inner, &g).map_err(err)?;
        Ok((coords(&r.point), r.unique, r.interior))
    }

    /// `(matrix, invariant)` for the group-averaged inner product.
    fn invariant_gram(&self) -> PyResult<(Vec<Vec<String>>, bool)> {
        let g = automorphism_group(&self.inner).map_err(err)?;
        let m = invariant_gram(&g, self.inner.dim());
        let rows = m.entries.to_rows().iter().map(|r| r.iter().map(Scalar::to_string).collect()).collect();
        Ok((rows, verify_m_orthogonal(&g, &m)))
    }

    fn classify(&self) -> PyResult<String> {
        Ok(classify(&self.inner).map_err(err)?.label.to_string())
    }

    /// Full analysis as a JSON document.
    #[pyo3(signature = (trials = 100, seed = 0))]
    fn analyze(&self, trials: usize, seed: u64) -> PyResult<String> {
        let a = analyze_polytope(&self.inner, trials, seed).map_err(err)?;
        serde_json::to_string(&a).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

fn model_point(coords: Vec<f64>) -> ModelPoint {
    ModelPoint::new(coords)
}

type FloatTerms = Vec<(Vec<f64>, f64)>;

fn float_terms(d: &models::ModelDecomposition) -> FloatTerms {
    d.terms.iter().map(|t| (t.point.0.clone(), t.weight)).collect()
}

#[pyfunction]
fn ball_distinguishable(dim: usize, pts: Vec<Vec<f64>>) -> PyResult<bool> {
    let pts: Vec<ModelPoint> = pts.into_iter().map(model_point).collect();
    models::ball_distinguishable(dim, &pts).map_err(err)
}

#[pyfunction]
fn ball_decompose(dim: usize, p: Vec<f64>) -> PyResult<FloatTerms> {
    Ok(float_terms(&models::ball_decompose(dim, &model_point(p)).map_err(err)?))
}

#[pyfunction]
fn cylinder_distinguishable(pts: Vec<Vec<f64>>) -> PyResult<bool> {
    let pts: Vec<ModelPoint> = pts.into_iter().map(model_point).collect();
    models::cylinder_distinguishable(&pts).map_err(err)
}

#[pyfunction]
fn cylinder_decompose(p: Vec<f64>) -> PyResult<Option<FloatTerms>> {
    Ok(models::cylinder_decompose(&model_point(p)).map_err(err)?.as_ref().map(float_terms))
}

/// Runs the theorem suite on the default corpus; returns `(passed, json)`.
#[pyfunction]
#[pyo3(signature = (trials = 100, seed = 0))]
fn verify_default_corpus(trials: usize, seed: u64) -> PyResult<(bool, String)> {
    let r = theorem_suite(&default_corpus(), trials, seed).map_err(err)?;
    let passed = r.passed() && r.conjecture.counterexample.is_none();
    let text = serde_json::to_string(&r).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((passed, text))
}

#[pymodule]
fn pystatespace(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolytope>()?;
    m.add_function(wrap_pyfunction!(ball_distinguishable, m)?)?;
    m.add_function(wrap_pyfunction!(ball_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(cylinder_distinguishable, m)?)?;
    m.add_function(wrap_pyfunction!(cylinder_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(verify_default_corpus, m)?)?;
    Ok(())
}
