use std::str::FromStr;

use mono::colorsim::{self, Statistic};
use mono::error::Error;
use mono::extremal;
use mono::graph::{FamilySpec, Graph};
use mono::limits::{self, ColorRegime, LawSource, LimitLaw};
use mono::moments::{self, MomentKind, MomentRequest};
use mono::{spectral, stats};
use num_traits::ToPrimitive;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e.exit_code() {
        3 | 4 => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// An immutable simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::from_edge_list(n, &edges).map_err(py_err)? })
    }

    /// Builds a graph from a family spec such as "complete:10" or "er:50:0.1:seed3".
    #[staticmethod]
    fn family(spec: &str) -> PyResult<Self> {
        let spec = FamilySpec::from_str(spec).map_err(py_err)?;
        Ok(PyGraph { inner: spec.generate().map_err(py_err)? })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: Graph::parse_edge_list(text).map_err(py_err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

fn stat(s: &str) -> PyResult<Statistic> {
    Statistic::from_str(s).map_err(py_err)
}

/// Monochromatic counts of `samples` seeded uniform colorings.
#[pyfunction]
#[pyo3(signature = (graph, colors, samples, seed, stat = "edges"))]
fn simulate(graph: &PyGraph, colors: u32, samples: usize, seed: u64, stat: &str) -> PyResult<Vec<u64>> {
    let run = colorsim::simulate(&graph.inner, colors, self::stat(stat)?, samples, seed).map_err(py_err)?;
    Ok(run.raw)
}

/// Exact law as `{value: "p/q"}`.
#[pyfunction]
#[pyo3(signature = (graph, colors, stat = "edges"))]
fn exact_distribution(graph: &PyGraph, colors: u32, stat: &str) -> PyResult<Vec<(u64, String)>> {
    let pmf = colorsim::exact_distribution(&graph.inner, colors, self::stat(stat)?).map_err(py_err)?;
    Ok(pmf.into_iter().map(|(v, p)| (v, p.to_string())).collect())
}

/// `P(no monochromatic edge in K_n)` with `c` colors.
#[pyfunction]
fn no_match_probability(n: u64, c: u64) -> PyResult<f64> {
    let p = colorsim::no_match_probability(n, c).map_err(py_err)?;
    Ok(p.to_f64().unwrap_or(0.0))
}

/// Fractional stable number as "p/q" and the per-vertex solution.
#[pyfunction]
fn gamma(graph: &PyGraph) -> (String, Vec<&'static str>) {
    let sol = extremal::gamma(&graph.inner);
    (sol.gamma.to_string(), sol.phi_strings())
}

#[pyfunction]
fn condition_report(graph: &PyGraph) -> PyResult<String> {
    let r = extremal::condition_report(&graph.inner).map_err(py_err)?;
    Ok(serde_json::to_string(&r).unwrap())
}

#[pyfunction]
fn eigenvalues(graph: &PyGraph) -> PyResult<Vec<f64>> {
    Ok(spectral::eigenvalues(&graph.inner).map_err(py_err)?.eigenvalues)
}

/// Exact conditional moment as "p/q"; kind is raw_n, raw_m, central_z or central_w.
#[pyfunction]
fn conditional_moment(graph: &PyGraph, kind: &str, k: usize, c: u64) -> PyResult<(String, bool)> {
    let kind = match kind {
        "raw_n" => MomentKind::RawN,
        "raw_m" => MomentKind::RawM,
        "central_z" => MomentKind::CentralZ,
        "central_w" => MomentKind::CentralW,
        other => return Err(PyValueError::new_err(format!("unknown moment kind {other:?}"))),
    };
    let v = moments::conditional_moment(&graph.inner, MomentRequest { kind, k, c }).map_err(py_err)?;
    Ok((v.value.to_string(), v.scaled))
}

/// Limit law as JSON. Pass `colors` for a fixed palette or `growing`
/// (`m/c` limit, `float("inf")` allowed) for a growing one.
#[pyfunction]
#[pyo3(signature = (source, colors = None, growing = None))]
fn limit_for(source: &Bound<'_, PyAny>, colors: Option<u32>, growing: Option<f64>) -> PyResult<String> {
    let regime = match (colors, growing) {
        (Some(c), None) => ColorRegime::Fixed(c),
        (None, Some(l)) if l.is_infinite() => ColorRegime::Growing(None),
        (None, Some(l)) => ColorRegime::Growing(Some(l)),
        _ => return Err(PyValueError::new_err("give exactly one of colors and growing")),
    };
    let law = if let Ok(g) = source.cast::<PyGraph>() {
        limits::limit_for(LawSource::Graph(&g.get().inner), regime)
    } else {
        let spec = FamilySpec::from_str(&source.extract::<String>()?).map_err(py_err)?;
        limits::limit_for(LawSource::Family(&spec), regime)
    };
    Ok(serde_json::to_string(&law.map_err(py_err)?).unwrap())
}

fn law(json: &str) -> PyResult<LimitLaw> {
    let law: LimitLaw = serde_json::from_str(json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    law.validate().map_err(py_err)?;
    Ok(law)
}

#[pyfunction]
fn sample_law(law_json: &str, count: usize, seed: u64) -> PyResult<Vec<f64>> {
    limits::sample_law(&law(law_json)?, count, seed).map_err(py_err)
}

#[pyfunction]
fn law_pmf(law_json: &str, k: i64) -> PyResult<f64> {
    limits::law_pmf(&law(law_json)?, k).map_err(py_err)
}

#[pyfunction]
fn law_cdf(law_json: &str, x: f64) -> PyResult<f64> {
    limits::law_cdf(&law(law_json)?, x).map_err(py_err)
}

/// Total variation distance between two samples of integers.
#[pyfunction]
fn tv_distance(a: Vec<i64>, b: Vec<i64>) -> f64 {
    let pmf = |xs: Vec<i64>| {
        let mut counts = std::collections::BTreeMap::new();
        for x in xs {
            *counts.entry(x).or_insert(0u64) += 1;
        }
        stats::Pmf::from_counts(counts)
    };
    stats::tv_distance(&pmf(a), &pmf(b))
}

#[pymodule]
fn monochrome(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(exact_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(no_match_probability, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(condition_report, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(conditional_moment, m)?)?;
    m.add_function(wrap_pyfunction!(limit_for, m)?)?;
    m.add_function(wrap_pyfunction!(sample_law, m)?)?;
    m.add_function(wrap_pyfunction!(law_pmf, m)?)?;
    m.add_function(wrap_pyfunction!(law_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(tv_distance, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
