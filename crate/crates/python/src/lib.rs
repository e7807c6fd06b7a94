//! Python bindings: groups, Cayley graphs, the named families, the
//! congruence solver and the census driver.

use hatp3::autgroup::{aut_stabilizer, cayley_isomorphic};
use hatp3::cayley::{build_graph, CayleyGraph, ExportFormat};
use hatp3::census::{run_census, verify_theorem, CensusMode, CensusSpec};
use hatp3::classify::{self, EqSystem};
use hatp3::families::FamilyParams;
use hatp3::pgroup::{format_set, parse_set, symmetrize, GroupDescriptor, GroupElement, GroupKind};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Group", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGroup {
    desc: GroupDescriptor,
}

#[pymethods]
impl PyGroup {
    /// `kind` is "g1" or "g2".
    #[new]
    fn new(kind: &str, p: u32) -> PyResult<Self> {
        let kind: GroupKind = kind.parse().map_err(err)?;
        Ok(PyGroup {
            desc: GroupDescriptor::new(kind, p).map_err(err)?,
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.desc.p
    }

    #[getter]
    fn kind(&self) -> String {
        self.desc.kind.to_string()
    }

    fn order(&self) -> usize {
        self.desc.order()
    }

    fn element(&self, word: &str) -> PyResult<PyElement> {
        Ok(PyElement {
            el: self.desc.parse_element(word).map_err(err)?,
        })
    }

    fn generates(&self, words: &str) -> PyResult<bool> {
        let set = parse_set(&self.desc, words).map_err(err)?;
        Ok(self.desc.generates(&set))
    }

    /// Order of the stabilizer of the symmetrized set in Aut(G).
    fn aut_stabilizer_order(&self, words: &str) -> PyResult<usize> {
        let set = symmetrize(&parse_set(&self.desc, words).map_err(err)?);
        Ok(aut_stabilizer(self.desc, &set).map_err(err)?.order)
    }

    /// Cayley graph on the given words plus their inverses.
    fn cayley_graph(&self, words: &str) -> PyResult<PyCayleyGraph> {
        let set = symmetrize(&parse_set(&self.desc, words).map_err(err)?);
        Ok(PyCayleyGraph {
            graph: build_graph(self.desc, &set).map_err(err)?,
        })
    }

    /// `(a_image, b_image)` of an automorphism mapping the first set onto
    /// the second, or None.
    fn isomorphic(&self, first: &str, second: &str) -> PyResult<Option<(String, String)>> {
        let s = symmetrize(&parse_set(&self.desc, first).map_err(err)?);
        let t = symmetrize(&parse_set(&self.desc, second).map_err(err)?);
        let w = cayley_isomorphic(self.desc, &s, &t).map_err(err)?;
        Ok(w.map(|a| (a.image_a().to_string(), a.image_b().to_string())))
    }

    fn __repr__(&self) -> String {
        format!("Group('{}', {})", self.desc.kind, self.desc.p)
    }
}

#[pyclass(name = "Element", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyElement {
    el: GroupElement,
}

#[pymethods]
impl PyElement {
    fn exponents(&self) -> (u32, u32, u32) {
        self.el.exponents()
    }

    fn inverse(&self) -> Self {
        PyElement { el: self.el.inverse() }
    }

    fn pow(&self, n: i64) -> Self {
        PyElement { el: self.el.pow(n) }
    }

    fn order(&self) -> u32 {
        self.el.order()
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<Self> {
        Ok(PyElement {
            el: self.el.try_mul(&other.el).map_err(err)?,
        })
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.el == other.el
    }

    fn __hash__(&self) -> u64 {
        self.el.index() as u64
    }

    fn __str__(&self) -> String {
        self.el.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element('{}')", self.el)
    }
}

#[pyclass(name = "CayleyGraph", frozen)]
struct PyCayleyGraph {
    graph: CayleyGraph,
}

#[pymethods]
impl PyCayleyGraph {
    #[getter]
    fn n(&self) -> usize {
        self.graph.n()
    }

    fn connection_set(&self) -> Vec<String> {
        format_set(self.graph.connection_set())
    }

    fn valency(&self) -> Option<usize> {
        self.graph.graph().regular_degree()
    }

    fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<u32>> {
        if v >= self.graph.n() {
            return Err(err(format!("vertex {v} out of range")));
        }
        Ok(self.graph.graph().neighbors(v).to_vec())
    }

    /// Order of the full automorphism group.
    fn automorphism_order(&self) -> PyResult<u128> {
        let (_, group) = classify::graph_profile(self.graph.graph()).map_err(err)?;
        Ok(group.order())
    }

    /// Dict with vertex/edge/arc orbit counts, valency and class name.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let profile = classify::transitivity_profile(&self.graph).map_err(err)?;
        to_py(py, &profile)
    }

    /// "graph6", "dot" or "json".
    fn export(&self, format: &str) -> PyResult<String> {
        let f: ExportFormat = format.parse().map_err(err)?;
        self.graph.export(f).map_err(err)
    }
}

/// Γ^{j,k}(p) on G1, or Γ_{4,k}(p) on G2 when `j` is None.
#[pyfunction]
#[pyo3(signature = (p, k, j=None, unit=None))]
fn family(p: u32, k: u32, j: Option<u32>, unit: Option<u32>) -> PyResult<PyCayleyGraph> {
    let f = match j {
        Some(j) => FamilyParams::gamma_jk(p, j, k, unit),
        None => FamilyParams::gamma4k(p, k, unit),
    }
    .map_err(err)?;
    Ok(PyCayleyGraph { graph: f.graph() })
}

/// List of (i, j, k) solutions of "v6", "v8_klein" or "v8_cyclic".
#[pyfunction]
fn solve_eqs(p: u32, system: &str) -> PyResult<Vec<(u32, u32, u32)>> {
    let system: EqSystem = system.parse().map_err(err)?;
    Ok(classify::solve_eqs(p, system).map_err(err)?.solutions)
}

/// Census report as a dict.
#[pyfunction]
#[pyo3(signature = (group, p, valency, full=false, families_only=false, jobs=None, big=false, cross_check_every=None))]
#[allow(clippy::too_many_arguments)]
fn census<'py>(
    py: Python<'py>,
    group: &str,
    p: u32,
    valency: usize,
    full: bool,
    families_only: bool,
    jobs: Option<usize>,
    big: bool,
    cross_check_every: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let kind: GroupKind = group.parse().map_err(err)?;
    let mut spec = CensusSpec::new(GroupDescriptor::new(kind, p).map_err(err)?, valency);
    spec.normalize = !full;
    spec.mode = if families_only {
        CensusMode::FamiliesOnly
    } else {
        CensusMode::Exhaustive
    };
    spec.jobs = jobs;
    spec.big = big;
    spec.cross_check_every = cross_check_every.filter(|&n| n > 0);
    let report = py.detach(|| run_census(&spec)).map_err(err)?;
    to_py(py, &report)
}

/// Existence and class-count check at (p, valency) as a dict with a boolean "pass".
#[pyfunction]
#[pyo3(signature = (p, valency, big=false, jobs=None))]
fn verify<'py>(py: Python<'py>, p: u32, valency: usize, big: bool, jobs: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| verify_theorem(p, valency, big, jobs)).map_err(err)?;
    to_py(py, &r)
}

#[pymodule]
fn pyhatp3(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyCayleyGraph>()?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(solve_eqs, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
