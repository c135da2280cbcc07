//! Python bindings. Permutations cross the boundary as 1-based image lists.

use num_bigint::BigUint;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

use symsplit::apps::dlog::{self, CyclicGroupInstance};
use symsplit::apps::graph::{self, AdjacencyMatrix};
use symsplit::apps::hashed::{self, Arrangement, HashedArrayOracle};
use symsplit::splitting::{self, PlanKind, SideStream, SizeTarget, SubgroupSpec};
use symsplit::{Budget, LogMagnitude, PermCursor, SplitPlan, Verdict};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(
    name = "Permutation",
    module = "pysymsplit",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyPermutation {
    inner: symsplit::Permutation,
}

impl From<symsplit::Permutation> for PyPermutation {
    fn from(inner: symsplit::Permutation) -> Self {
        Self { inner }
    }
}

#[pymethods]
impl PyPermutation {
    /// Builds from a 1-based image list, e.g. `[2, 3, 1]`.
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        symsplit::Permutation::from_one_based(&images)
            .map(Self::from)
            .map_err(value_err)
    }

    #[staticmethod]
    fn identity(n: usize) -> PyResult<Self> {
        symsplit::Permutation::identity(n)
            .map(Self::from)
            .map_err(value_err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse::<symsplit::Permutation>()
            .map(Self::from)
            .map_err(value_err)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn images(&self) -> Vec<usize> {
        self.inner.one_based()
    }

    /// Image of the 1-based point `i`.
    fn apply(&self, i: usize) -> PyResult<usize> {
        if i == 0 || i > self.inner.degree() {
            return Err(PyIndexError::new_err(format!("point {i} out of range")));
        }
        Ok(self.inner.apply(i - 1) + 1)
    }

    /// `self` first, then `other`.
    fn compose(&self, other: PyRef<'_, PyPermutation>) -> PyResult<Self> {
        self.inner
            .compose(&other.inner)
            .map(Self::from)
            .map_err(value_err)
    }

    fn invert(&self) -> Self {
        self.inner.invert().into()
    }

    fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    fn __mul__(&self, other: PyRef<'_, PyPermutation>) -> PyResult<Self> {
        self.compose(other)
    }

    fn __len__(&self) -> usize {
        self.inner.degree()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.inner.one_based())
    }
}

#[pyclass(name = "SplitPlan", module = "pysymsplit", frozen)]
pub struct PySplitPlan {
    inner: SplitPlan,
}

#[pymethods]
impl PySplitPlan {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().name()
    }

    /// `(k, ell)` for subgroup plans, `(k, 0)` for bidirectional ones.
    #[getter]
    fn params(&self) -> Option<(usize, usize)> {
        match self.inner.kind() {
            PlanKind::SubgroupTransversal(spec) => Some((spec.k(), spec.ell())),
            PlanKind::Bidirectional { k } => Some((*k, 0)),
            PlanKind::Randomized { .. } => None,
        }
    }

    #[getter]
    fn size_a(&self) -> BigUint {
        self.inner.size_a().clone()
    }

    #[getter]
    fn size_b(&self) -> BigUint {
        self.inner.size_b().clone()
    }

    #[getter]
    fn ratio(&self) -> f64 {
        self.inner.ratio()
    }

    #[getter]
    fn is_deterministic(&self) -> bool {
        self.inner.is_deterministic()
    }

    fn side_a(&self) -> PySideIter {
        PySideIter {
            stream: self.inner.stream_a(),
        }
    }

    fn side_b(&self) -> PySideIter {
        PySideIter {
            stream: self.inner.stream_b(),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("<SplitPlan {}>", self.inner)
    }
}

/// Streams one side of a plan lazily.
#[pyclass(name = "SideIter", module = "pysymsplit")]
pub struct PySideIter {
    stream: SideStream,
}

#[pymethods]
impl PySideIter {
    fn __iter__(slf: PyRef<'_, Self>) -> PyRef<'_, Self> {
        slf
    }

    fn __next__(&mut self) -> Option<PyPermutation> {
        self.stream.advance().cloned().map(PyPermutation::from)
    }
}

fn size_target(target_log: Option<f64>) -> SizeTarget {
    match target_log {
        Some(x) => SizeTarget::Log(LogMagnitude(x)),
        None => SizeTarget::SqrtFactorial,
    }
}

/// `(k, ell)` of the subgroup whose order is closest to the target.
#[pyfunction]
#[pyo3(signature = (n, target_log = None))]
fn choose_subgroup_params(n: usize, target_log: Option<f64>) -> PyResult<(usize, usize)> {
    let spec = splitting::choose_subgroup_params(n, size_target(target_log)).map_err(value_err)?;
    Ok((spec.k(), spec.ell()))
}

#[pyfunction]
#[pyo3(signature = (n, target_log = None))]
fn plan(n: usize, target_log: Option<f64>) -> PyResult<PySplitPlan> {
    let spec = splitting::choose_subgroup_params(n, size_target(target_log)).map_err(value_err)?;
    subgroup_plan(spec.n(), spec.k(), spec.ell())
}

#[pyfunction]
fn subgroup_plan(n: usize, k: usize, ell: usize) -> PyResult<PySplitPlan> {
    let spec = SubgroupSpec::new(n, k, ell).map_err(value_err)?;
    let inner = SplitPlan::subgroup_transversal(spec).map_err(value_err)?;
    Ok(PySplitPlan { inner })
}

#[pyfunction]
fn bidirectional_split(n: usize) -> PyResult<PySplitPlan> {
    splitting::bidirectional_split(n)
        .map(|inner| PySplitPlan { inner })
        .map_err(value_err)
}

#[pyfunction]
fn random_split(n: usize, count: usize, seed: u64) -> PyResult<PySplitPlan> {
    splitting::random_split(n, count, seed)
        .map(|inner| PySplitPlan { inner })
        .map_err(value_err)
}

#[pyfunction]
fn solve_half_factorial(n: u64) -> PyResult<f64> {
    symsplit::solve_half_factorial(n).map_err(value_err)
}

fn graph_from(n: usize, edges: Vec<(usize, usize)>) -> PyResult<AdjacencyMatrix> {
    let zero_based = edges
        .into_iter()
        .map(|(u, v)| {
            if u == 0 || v == 0 {
                Err(PyValueError::new_err("vertices are 1-based"))
            } else {
                Ok((u - 1, v - 1))
            }
        })
        .collect::<PyResult<Vec<_>>>()?;
    AdjacencyMatrix::from_edges(n, &zero_based).map_err(value_err)
}

fn verdict_tuple(v: Verdict) -> (&'static str, Option<PyPermutation>) {
    match v {
        Verdict::Found(g) => ("found", Some(g.into())),
        Verdict::NoneProved => ("none_proved", None),
        Verdict::NoneEvidence => ("none_evidence", None),
    }
}

/// Looks for `g` relabeling graph `(n1, edges1)` into `(n2, edges2)`.
///
/// Returns `(verdict, witness)` with verdict one of `"found"`,
/// `"none_proved"`, `"none_evidence"`.
#[pyfunction]
#[pyo3(signature = (n1, edges1, n2, edges2, budget_bytes = None, entries = None, threads = 1))]
#[allow(clippy::too_many_arguments)]
fn graph_iso(
    py: Python<'_>,
    n1: usize,
    edges1: Vec<(usize, usize)>,
    n2: usize,
    edges2: Vec<(usize, usize)>,
    budget_bytes: Option<u64>,
    entries: Option<u64>,
    threads: usize,
) -> PyResult<(&'static str, Option<PyPermutation>)> {
    let m = graph_from(n1, edges1)?;
    let g = graph_from(n2, edges2)?;
    let budget = Budget {
        entries,
        memory_cap_bytes: budget_bytes,
        threads,
    };
    let res = py
        .detach(|| graph::graph_iso(&m, &g, &budget))
        .map_err(value_err)?;
    Ok(verdict_tuple(res.verdict))
}

/// Scrambles a hidden array of `n` objects by `hidden`, then recovers the
/// permutation through the keyed hash oracle alone.
#[pyfunction]
#[pyo3(signature = (hidden, seed = 0, key = 0))]
fn hashed_array_recover(
    hidden: PyRef<'_, PyPermutation>,
    seed: u64,
    key: u64,
) -> PyResult<Option<PyPermutation>> {
    let n = hidden.inner.degree();
    let oracle = HashedArrayOracle::new(n, key).map_err(value_err)?;
    let r = Arrangement::scrambled(n, seed).map_err(value_err)?;
    let s = r.permuted(&hidden.inner);
    let rep = hashed::hashed_array_solve(&oracle, &r, &s, &Budget::default()).map_err(value_err)?;
    Ok(rep.witness().cloned().map(PyPermutation::from))
}

fn instance(p: u64, a: u64, b: u64, order: Option<u64>) -> PyResult<CyclicGroupInstance> {
    match order {
        Some(n) => CyclicGroupInstance::in_subgroup(p, a, b, n),
        None => CyclicGroupInstance::new(p, a, b),
    }
    .map_err(value_err)
}

/// Least `x` with `a^x = b (mod p)`.
#[pyfunction]
#[pyo3(signature = (p, a, b, order = None))]
fn classic_bsgs(p: u64, a: u64, b: u64, order: Option<u64>) -> PyResult<u64> {
    dlog::classic_bsgs(&instance(p, a, b, order)?).map_err(value_err)
}

/// Same answer as `classic_bsgs`, computed through the unit-action reduction.
#[pyfunction]
#[pyo3(signature = (p, a, b, order = None))]
fn dl_reduction(p: u64, a: u64, b: u64, order: Option<u64>) -> PyResult<u64> {
    dlog::dl_reduction(&instance(p, a, b, order)?, dlog::unit_action_search)
        .map(|r| r.exponent)
        .map_err(value_err)
}

#[pyfunction]
fn jacobsthal(n: u64) -> u64 {
    dlog::jacobsthal(n)
}

#[pymodule]
fn pysymsplit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PySplitPlan>()?;
    m.add_class::<PySideIter>()?;
    m.add_function(wrap_pyfunction!(choose_subgroup_params, m)?)?;
    m.add_function(wrap_pyfunction!(plan, m)?)?;
    m.add_function(wrap_pyfunction!(subgroup_plan, m)?)?;
    m.add_function(wrap_pyfunction!(bidirectional_split, m)?)?;
    m.add_function(wrap_pyfunction!(random_split, m)?)?;
    m.add_function(wrap_pyfunction!(solve_half_factorial, m)?)?;
    m.add_function(wrap_pyfunction!(graph_iso, m)?)?;
    m.add_function(wrap_pyfunction!(hashed_array_recover, m)?)?;
    m.add_function(wrap_pyfunction!(classic_bsgs, m)?)?;
    m.add_function(wrap_pyfunction!(dl_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(jacobsthal, m)?)?;
    Ok(())
}
