//! Python bindings: semigroup and monomial ideals, spec analysis, and the
//! series/theorem helpers.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fibercone::analysis::analyze;
use fibercone::hilbert;
use fibercone::monomial::{Monomial, MonomialIdeal as CoreMonomialIdeal};
use fibercone::multiplicity::{self, FitOptions};
use fibercone::report;
use fibercone::semigroup::{self, NumericalSemigroup as CoreSemigroup, SemigroupIdeal as CoreSemigroupIdeal};
use fibercone::spec::RingSpec;
use fibercone::{Error, IndexSearch};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Syntax { .. } | Error::Semantic(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

#[pyclass(name = "NumericalSemigroup", frozen)]
struct NumericalSemigroup(Arc<CoreSemigroup>);

#[pymethods]
impl NumericalSemigroup {
    #[new]
    fn new(gens: Vec<u32>) -> PyResult<Self> {
        Ok(Self(Arc::new(CoreSemigroup::new(&gens).map_err(py_err)?)))
    }

    fn gens(&self) -> Vec<u32> {
        self.0.gens().to_vec()
    }

    fn multiplicity(&self) -> u32 {
        self.0.multiplicity()
    }

    fn conductor(&self) -> u32 {
        self.0.conductor()
    }

    fn gaps(&self) -> Vec<u32> {
        self.0.gaps()
    }

    fn __contains__(&self, n: u32) -> bool {
        self.0.contains(n)
    }

    fn __repr__(&self) -> String {
        format!("NumericalSemigroup({:?})", self.0.gens())
    }
}

#[pyclass(name = "SemigroupIdeal", frozen)]
struct SemigroupIdeal(CoreSemigroupIdeal);

#[pymethods]
impl SemigroupIdeal {
    #[new]
    fn new(ring: &NumericalSemigroup, gens: Vec<u32>) -> PyResult<Self> {
        Ok(Self(CoreSemigroupIdeal::new(ring.0.clone(), &gens).map_err(py_err)?))
    }

    fn mingens(&self) -> Vec<u32> {
        self.0.mingens().to_vec()
    }

    fn mu(&self) -> usize {
        self.0.mu()
    }

    fn colength(&self) -> u64 {
        self.0.colength()
    }

    fn power(&self, n: u32) -> Self {
        Self(self.0.power(n))
    }

    /// [μ(I^0), ..., μ(I^n)].
    fn mu_powers(&self, n: u32) -> Vec<u64> {
        semigroup::mu_powers(&self.0, n)
    }

    fn __repr__(&self) -> String {
        format!("SemigroupIdeal({:?}, {:?})", self.0.ambient().gens(), self.0.mingens())
    }
}

#[pyclass(name = "MonomialIdeal", frozen)]
struct MonomialIdeal(CoreMonomialIdeal);

#[pymethods]
impl MonomialIdeal {
    /// Ideal generated by monomials given as exponent vectors.
    #[new]
    fn new(gens: Vec<Vec<u32>>) -> PyResult<Self> {
        let d = gens.first().map_or(0, Vec::len);
        if d == 0 || gens.iter().any(|g| g.len() != d) {
            return Err(PyValueError::new_err("exponent vectors must be non-empty and of equal length"));
        }
        Ok(Self(CoreMonomialIdeal::minimalize(d, gens.iter().map(|g| Monomial::new(g)))))
    }

    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn gens(&self) -> Vec<Vec<u32>> {
        let d = self.0.dim();
        self.0.gens().iter().map(|m| m.exps(d)).collect()
    }

    fn mu(&self) -> usize {
        self.0.mu()
    }

    fn colength(&self) -> PyResult<u64> {
        self.0.colength().map_err(py_err)
    }

    fn power(&self, n: u32) -> Self {
        Self(self.0.power(n))
    }

    fn product(&self, other: &MonomialIdeal) -> Self {
        Self(self.0.product(&other.0))
    }

    fn mu_powers(&self, n: u32) -> Vec<u64> {
        self.0.mu_powers(n)
    }

    /// Mixed multiplicities e_0(m|I), ..., e_d(m|I).
    fn mixed_multiplicities(&self) -> PyResult<Vec<i64>> {
        Ok(multiplicity::fit_bhattacharya(&self.0, FitOptions::default()).map_err(py_err)?.mixed)
    }

    fn __repr__(&self) -> String {
        format!("MonomialIdeal({:?})", self.gens())
    }
}

/// Full flat report for the spec text; keyword arguments override its settings.
#[pyfunction]
#[pyo3(signature = (text, seed=None, trunc=None, samples=None))]
fn analyze_spec<'py>(
    py: Python<'py>,
    text: &str,
    seed: Option<u64>,
    trunc: Option<u32>,
    samples: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let mut spec = RingSpec::parse(text).map_err(py_err)?;
    if let Some(s) = seed {
        spec.config.seed = s;
    }
    if let Some(t) = trunc {
        spec.config.trunc = t;
    }
    if let Some(k) = samples {
        spec.config.samples = k;
    }
    spec.validate().map_err(py_err)?;
    let subject = spec.subject().map_err(py_err)?;
    let r = py.detach(|| analyze(&subject, &spec.config)).map_err(py_err)?;
    let dict = PyDict::new(py);
    for (k, v) in report::flatten(&r).0 {
        dict.set_item(k, v)?;
    }
    Ok(dict)
}

/// h-vector of Σ a_n λ^n = h(λ)/(1-λ)^d.
#[pyfunction]
#[pyo3(signature = (coeffs, d, guard=4))]
fn rational_reconstruct(coeffs: Vec<u64>, d: usize, guard: usize) -> PyResult<Vec<i64>> {
    Ok(hilbert::rational_reconstruct(&coeffs, d, guard).map_err(py_err)?.coeffs().to_vec())
}

/// Predicted numerator 1 + (μ-d)λ + λ^s; `s=None` drops the last term.
#[pyfunction]
#[pyo3(signature = (d, mu, s=None))]
fn predict_theorem(d: usize, mu: u32, s: Option<u32>) -> Vec<i64> {
    let s = s.map_or(IndexSearch::NotFoundUpTo(0), IndexSearch::Found);
    hilbert::predict_theorem(d, mu, s).coeffs().to_vec()
}

#[pymodule]
fn fibercone_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<NumericalSemigroup>()?;
    m.add_class::<SemigroupIdeal>()?;
    m.add_class::<MonomialIdeal>()?;
    m.add_function(wrap_pyfunction!(analyze_spec, m)?)?;
    m.add_function(wrap_pyfunction!(rational_reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(predict_theorem, m)?)?;
    Ok(())
}
