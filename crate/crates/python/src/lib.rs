//! Python bindings for `kostka_core`.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyList;

use kostka_core::compositions::Composition as CoreComposition;
use kostka_core::qexact::QPolynomial as CorePolynomial;
use kostka_core::{abf, affine_weyl, kostka as core_kostka, suites, verlinde, virasoro, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) | Error::Io(_) | Error::NoStabilization { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Laurent polynomial in `q` with exponents on the quarter grid.
#[pyclass(name = "QPolynomial", module = "kostka", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct QPolynomial(CorePolynomial);

#[pymethods]
impl QPolynomial {
    /// Integer coefficients `c_0 + c_1 q + ...`.
    #[new]
    #[pyo3(signature = (coefficients = Vec::new()))]
    fn new(coefficients: Vec<BigInt>) -> Self {
        QPolynomial(CorePolynomial::from_coefficients(coefficients))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(QPolynomial).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("polynomials serialize")
    }

    /// `[(exponent_quarters, coefficient), ...]` in increasing exponent order.
    fn terms(&self) -> Vec<(i64, BigInt)> {
        self.0.terms().map(|(e, c)| (e.quarters(), c.clone())).collect()
    }

    /// Coefficient of `q^n` for integer `n`.
    fn coefficient(&self, n: i64) -> BigInt {
        self.0.coefficient_at(n)
    }

    fn eval_at_one(&self) -> BigInt {
        self.0.eval_at_one()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn substitute_inverse(&self) -> Self {
        QPolynomial(self.0.substitute_inverse())
    }

    fn __add__(&self, other: &Self) -> Self {
        QPolynomial(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        QPolynomial(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        QPolynomial(&self.0 * &other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QPolynomial({})", self.0)
    }
}

/// Multiplicities `m_1, ..., m_k` of the fusion factors `pi_1, ..., pi_k`.
#[pyclass(name = "Composition", module = "kostka", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Composition(CoreComposition);

#[pymethods]
impl Composition {
    #[new]
    fn new(parts: Vec<u32>) -> PyResult<Self> {
        CoreComposition::new(parts).map(Composition).map_err(py_err)
    }

    /// From factor sizes, `"1,1,3"` or `"1^2,3"`.
    #[staticmethod]
    fn from_partition(text: &str) -> PyResult<Self> {
        CoreComposition::from_partition_notation(text).map(Composition).map_err(py_err)
    }

    #[getter]
    fn parts(&self) -> Vec<u32> {
        self.0.parts().to_vec()
    }

    fn weighted_size(&self) -> i64 {
        self.0.weighted_size()
    }

    fn top_degree_h(&self) -> i64 {
        self.0.top_degree_h()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Composition([{}])", self.0)
    }
}

/// `K^{(k)}_{l,m}` by the chosen route: fermionic, charge, bgg or coinvariant.
#[pyfunction]
#[pyo3(signature = (l, m, k, route = "fermionic"))]
fn restricted_kostka(l: i64, m: PyRef<'_, Composition>, k: i64, route: &str) -> PyResult<QPolynomial> {
    let m = &m.0;
    let p = match route {
        "fermionic" => core_kostka::restricted_fermionic(l, m, k),
        "charge" => core_kostka::restricted_alternating(l, m, k, core_kostka::UnrestrictedSource::ChargeOracle)
            .map_err(py_err)?,
        "bgg" => affine_weyl::euler_characteristic_bgg(m, l, k).map_err(py_err)?,
        "coinvariant" => {
            let spec = kostka_core::coinvariant::FunctionalModelSpec::new(l, m, k).map_err(py_err)?;
            kostka_core::coinvariant::restricted_kostka_oracle(&spec).map_err(py_err)?
        }
        other => return Err(PyValueError::new_err(format!("unknown route '{other}'"))),
    };
    Ok(QPolynomial(p))
}

#[pyfunction]
fn unrestricted_kostka(l: i64, m: PyRef<'_, Composition>) -> PyResult<QPolynomial> {
    core_kostka::unrestricted(l, &m.0).map(QPolynomial).map_err(py_err)
}

#[pyfunction]
fn reversed_restricted(l: i64, m: PyRef<'_, Composition>, k: i64) -> PyResult<QPolynomial> {
    core_kostka::reversed_restricted(l, &m.0, k).map(QPolynomial).map_err(py_err)
}

#[pyfunction]
fn fusion_weight_char(m: PyRef<'_, Composition>, alpha: i64) -> PyResult<QPolynomial> {
    core_kostka::fusion_weight_char(&m.0, alpha).map(QPolynomial).map_err(py_err)
}

/// Verlinde constants `c_{l,m}` for `l = 0..=k`.
#[pyfunction]
fn structure_constants(m: PyRef<'_, Composition>, k: i64) -> PyResult<Vec<BigInt>> {
    verlinde::structure_constants(&m.0, k).map(|v| v.coefficients).map_err(py_err)
}

fn series_tuple(s: &kostka_core::qexact::QSeriesTruncated) -> (String, Vec<BigInt>) {
    (s.offset().to_string(), s.coefficients().to_vec())
}

/// `(offset, [c_0, ..., c_order])` of `chi_{r,s}(p, p')`.
#[pyfunction]
fn rocha_caridi(p: i64, p_prime: i64, r: i64, s: i64, order: usize) -> PyResult<(String, Vec<BigInt>)> {
    let mm = virasoro::MinimalModel::new(p, p_prime, r, s).map_err(py_err)?;
    Ok(series_tuple(&virasoro::rocha_caridi(&mm, order).series))
}

#[pyfunction]
fn branching_via_kostka_limit(i: i64, j: i64, k: i64, l: i64, order: usize) -> PyResult<(String, Vec<BigInt>)> {
    virasoro::branching_via_kostka_limit(i, j, k, l, order)
        .map(|b| series_tuple(&b.series))
        .map_err(py_err)
}

/// Fermionic character through `q^order`, by the derived exponent constants.
#[pyfunction]
fn fermionic_character(j: i64, l: i64, k: i64, order: usize) -> PyResult<(String, Vec<BigInt>)> {
    virasoro::fermionic_character_sum(j, l, k, order)
        .map(|f| series_tuple(&f.derived.series))
        .map_err(py_err)
}

#[pyfunction]
fn abf_polynomial(r: i64, b: i64, a: i64, n: i64) -> PyResult<QPolynomial> {
    let lab = abf::AbfLabel::new(r, b, a, n).map_err(py_err)?;
    abf::abf_polynomial(&lab).map(QPolynomial).map_err(py_err)
}

/// Runs a verification suite and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (name, max_weight = None, max_level = None, order = None))]
fn run_suite<'py>(
    py: Python<'py>,
    name: &str,
    max_weight: Option<i64>,
    max_level: Option<i64>,
    order: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = suites::SuiteOptions { max_weight, max_level, order };
    let report = py.detach(|| suites::run_suite(name, &opts)).map_err(py_err)?;
    let text = serde_json::to_string(&report).expect("reports serialize");
    py.import("json")?.call_method1("loads", (text,))
}

#[pymodule]
fn kostka(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<QPolynomial>()?;
    m.add_class::<Composition>()?;
    m.add_function(wrap_pyfunction!(restricted_kostka, m)?)?;
    m.add_function(wrap_pyfunction!(unrestricted_kostka, m)?)?;
    m.add_function(wrap_pyfunction!(reversed_restricted, m)?)?;
    m.add_function(wrap_pyfunction!(fusion_weight_char, m)?)?;
    m.add_function(wrap_pyfunction!(structure_constants, m)?)?;
    m.add_function(wrap_pyfunction!(rocha_caridi, m)?)?;
    m.add_function(wrap_pyfunction!(branching_via_kostka_limit, m)?)?;
    m.add_function(wrap_pyfunction!(fermionic_character, m)?)?;
    m.add_function(wrap_pyfunction!(abf_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("SUITES", PyList::new(m.py(), suites::SUITES)?)?;
    Ok(())
}
