//! Python bindings. Exact values cross the boundary as `int` and
//! `fractions.Fraction`, complex labels as `complex`.

use std::collections::BTreeMap;

use bosonorder::genfun::{self, DEFAULT_EGF_TRUNCATION};
use bosonorder::stirling::{self, DEFAULT_MAX_TERMS};
use bosonorder::{genstirling, pade, sheffer, Error};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(bosonorder_py, BosonOrderError, PyValueError);
create_exception!(bosonorder_py, DivergenceError, BosonOrderError);

fn err(e: Error) -> PyErr {
    match e {
        Error::DivergenceCondition { .. } => DivergenceError::new_err(e.to_string()),
        other => BosonOrderError::new_err(other.to_string()),
    }
}

/// Exact normal form `Σ c (a†)^r a^s`.
#[pyclass(
    name = "NormalForm",
    module = "bosonorder_py",
    eq,
    frozen,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
pub struct PyNormalForm(bosonorder::NormalForm);

#[pymethods]
impl PyNormalForm {
    /// Parses and normal orders an expression such as `"(ad a)^2"`.
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        let e = bosonorder::parse(expr).map_err(|s| err(s.into()))?;
        Ok(PyNormalForm(e.evaluate()))
    }

    #[staticmethod]
    fn monomial(r: usize, s: usize, coeff: BigRational) -> Self {
        PyNormalForm(bosonorder::NormalForm::monomial(r, s, coeff))
    }

    /// `(r, s, coeff)` triples in key order.
    fn terms(&self) -> Vec<(usize, usize, BigRational)> {
        self.0
            .terms()
            .map(|(&(r, s), c)| (r, s, c.clone()))
            .collect()
    }

    fn coeff(&self, r: usize, s: usize) -> BigRational {
        self.0.coeff(r, s)
    }

    fn power(&self, n: usize) -> Self {
        PyNormalForm(self.0.power(n))
    }

    fn excesses(&self) -> Vec<i64> {
        self.0.excesses()
    }

    /// Homogeneous normal forms only.
    fn alpha(&self) -> PyResult<PyAlphaSpec> {
        bosonorder::extract_alpha(&self.0)
            .map(PyAlphaSpec)
            .map_err(err)
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyNormalForm(self.0.multiply(&other.0))
    }

    fn __add__(&self, other: &Self) -> Self {
        PyNormalForm(self.0.add(&other.0))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("NormalForm({:?})", self.0.to_string())
    }
}

/// Excess `d` and coefficients `α_k` of `(a†)^d Σ_k α_k (a†)^k a^k`.
#[pyclass(
    name = "AlphaSpec",
    module = "bosonorder_py",
    eq,
    frozen,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
pub struct PyAlphaSpec(bosonorder::AlphaSpec);

#[pymethods]
impl PyAlphaSpec {
    #[new]
    fn new(d: usize, coeffs: BTreeMap<usize, BigRational>) -> PyResult<Self> {
        bosonorder::AlphaSpec::new(d, coeffs)
            .map(PyAlphaSpec)
            .map_err(err)
    }

    #[staticmethod]
    fn from_expr(expr: &str) -> PyResult<Self> {
        PyNormalForm::new(expr)?.alpha()
    }

    #[getter]
    fn d(&self) -> usize {
        self.0.d()
    }

    #[getter]
    fn coeffs(&self) -> BTreeMap<usize, BigRational> {
        self.0.coeffs().map(|(k, c)| (k, c.clone())).collect()
    }

    fn normal_form(&self) -> PyNormalForm {
        PyNormalForm(self.0.to_normal_form())
    }

    /// Row `n` of the generalized Stirling table as `{k: S(n,k)}`.
    fn stirling_row(&self, n: usize) -> BTreeMap<usize, BigRational> {
        genstirling::GenStirlingTable::by_recurrence(&self.0, n).row_entries(n)
    }

    fn bell_polynomial(&self, n: usize, x: BigRational) -> BigRational {
        genstirling::gen_bell_polynomial(&self.0, n, &x)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("AlphaSpec({})", self.0)
    }
}

#[pyfunction]
fn stirling2(n: usize, k: usize) -> PyResult<BigInt> {
    stirling::stirling2_recurrence(n, k).map_err(err)
}

#[pyfunction]
fn bell_number(n: usize) -> BigInt {
    stirling::bell_number(n)
}

#[pyfunction]
fn bell_polynomial(n: usize, x: BigRational) -> BigRational {
    stirling::bell_polynomial(n, &x)
}

/// `(value, terms)` of the Dobiński series for `B(n, x)`, or of its
/// generalization when `alpha` is given.
#[pyfunction]
#[pyo3(signature = (n, x, eps=1e-12, alpha=None, max_terms=DEFAULT_MAX_TERMS))]
fn dobinski(
    n: usize,
    x: f64,
    eps: f64,
    alpha: Option<PyRef<'_, PyAlphaSpec>>,
    max_terms: usize,
) -> PyResult<(f64, usize)> {
    let s = match alpha {
        Some(a) => genstirling::gen_dobinski_eval_capped(&a.0, n, x, eps, max_terms),
        None => stirling::dobinski_eval_capped(n, x, eps, max_terms),
    }
    .map_err(err)?;
    Ok((s.value, s.terms))
}

#[pyfunction]
fn egf_closed(lam: f64, x: f64) -> PyResult<f64> {
    genfun::egf_bell_closed(lam, x).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (alpha, lam, x, trunc=DEFAULT_EGF_TRUNCATION))]
fn egf_truncated(alpha: &PyAlphaSpec, lam: f64, x: f64, trunc: usize) -> PyResult<f64> {
    genfun::egf_truncated(&bosonorder::EgfQuery {
        alpha: alpha.0.clone(),
        lambda: lam,
        x,
        truncation: trunc,
    })
    .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (alpha, lam, x, eps=1e-12))]
fn egf_d0(alpha: &PyAlphaSpec, lam: f64, x: f64, eps: f64) -> PyResult<f64> {
    Ok(genfun::egf_d0_dobinski(&alpha.0, lam, x, eps)
        .map_err(err)?
        .value)
}

/// `<z| e^{λ H} |z>` from the truncated generating function.
#[pyfunction]
#[pyo3(signature = (alpha, lam, z, trunc=DEFAULT_EGF_TRUNCATION))]
fn coherent_element(
    alpha: &PyAlphaSpec,
    lam: f64,
    z: Complex64,
    trunc: usize,
) -> PyResult<Complex64> {
    let label = bosonorder::CoherentLabel::new(z.re, z.im).map_err(err)?;
    genfun::coherent_matrix_element_exp(&alpha.0, lam, label, trunc).map_err(err)
}

#[pyfunction]
fn transfer_check(f: &PyNormalForm, z: Complex64, zprime: Complex64) -> PyResult<bool> {
    let z = bosonorder::CoherentLabel::new(z.re, z.im).map_err(err)?;
    let zp = bosonorder::CoherentLabel::new(zprime.re, zprime.im).map_err(err)?;
    Ok(genfun::coherent_transfer_check(&f.0, z, zp))
}

/// Exact `[m/n]` approximant as `(numerator, denominator)` coefficient lists.
#[pyfunction]
fn pade_approximant(
    series: Vec<BigRational>,
    m: usize,
    n: usize,
) -> PyResult<(Vec<BigRational>, Vec<BigRational>)> {
    let p = pade::pade_approximant(&series, m, n).map_err(err)?;
    Ok((p.numerator().to_vec(), p.denominator().to_vec()))
}

#[pyfunction]
fn resum_egf(alpha: &PyAlphaSpec, lam: f64, x: f64, m: usize, n: usize) -> PyResult<f64> {
    pade::resum_gen_egf(&alpha.0, lam, x, m, n).map_err(err)
}

/// Exact check of the Sheffer normal-ordering formula for
/// `λ[q(a†) a + v(a†)]`, polynomials given by coefficient lists.
#[pyfunction]
fn verify_sheffer(q: Vec<BigRational>, v: Vec<BigRational>, order: usize) -> PyResult<bool> {
    let q = sheffer::PolySpec::new(bosonorder::Poly::new(q)).map_err(err)?;
    let v = sheffer::PolySpec::new(bosonorder::Poly::new(v)).map_err(err)?;
    sheffer::verify_sheffer(&q, &v, order).map_err(err)
}

#[pymodule]
fn bosonorder_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BosonOrderError", m.py().get_type::<BosonOrderError>())?;
    m.add("DivergenceError", m.py().get_type::<DivergenceError>())?;
    m.add_class::<PyNormalForm>()?;
    m.add_class::<PyAlphaSpec>()?;
    m.add_function(wrap_pyfunction!(stirling2, m)?)?;
    m.add_function(wrap_pyfunction!(bell_number, m)?)?;
    m.add_function(wrap_pyfunction!(bell_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(dobinski, m)?)?;
    m.add_function(wrap_pyfunction!(egf_closed, m)?)?;
    m.add_function(wrap_pyfunction!(egf_truncated, m)?)?;
    m.add_function(wrap_pyfunction!(egf_d0, m)?)?;
    m.add_function(wrap_pyfunction!(coherent_element, m)?)?;
    m.add_function(wrap_pyfunction!(transfer_check, m)?)?;
    m.add_function(wrap_pyfunction!(pade_approximant, m)?)?;
    m.add_function(wrap_pyfunction!(resum_egf, m)?)?;
    m.add_function(wrap_pyfunction!(verify_sheffer, m)?)?;
    Ok(())
}
