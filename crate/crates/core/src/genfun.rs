//! Exponential generating functions of (generalized) Bell polynomials,
//! coherent-state matrix elements, and the coherent-state transfer
//! principle that turns `<z'|F|z> = <z'|z> G(z'*, z)` into `N[F] = :G(a†,a):`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{factorial, from_f64, rat, to_f64};
use crate::error::{Error, Result};
use crate::fock::{apply_normal_form, coherent_state, inner, DEFAULT_FOCK_DIM};
use crate::genstirling::GenStirlingTable;
use crate::series::PowerSeries;
use crate::stirling::{sum_poisson_weighted, SeriesSum, DEFAULT_MAX_TERMS};
use crate::weyl::{AlphaSpec, NormalForm};

/// Largest truncation accepted by the partial-sum evaluators.
pub const MAX_EGF_TRUNCATION: usize = 60;

/// Default number of EGF terms.
pub const DEFAULT_EGF_TRUNCATION: usize = 40;

/// Largest λ-order of [`normal_form_of_exp_number_operator`].
pub const MAX_NORMAL_FORM_ORDER: usize = 20;

/// Relative tolerance of [`coherent_transfer_check`].
pub const TRANSFER_TOLERANCE: f64 = 1e-8;

/// Label `z` of the coherent state `|z>`, with `a|z> = z|z>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherentLabel(Complex64);

impl CoherentLabel {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::InvalidInput("coherent label must be finite".into()));
        }
        Ok(CoherentLabel(Complex64::new(re, im)))
    }

    pub fn real(x: f64) -> Result<Self> {
        CoherentLabel::new(x, 0.0)
    }

    pub fn z(&self) -> Complex64 {
        self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.norm_sqr()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EgfQuery {
    pub alpha: AlphaSpec,
    pub lambda: f64,
    pub x: f64,
    pub truncation: usize,
}

/// `e^{x (e^λ - 1)}`.
pub fn egf_bell_closed(lambda: f64, x: f64) -> Result<f64> {
    let v = (x * lambda.exp_m1()).exp();
    if !v.is_finite() {
        return Err(Error::Overflow("closed Bell generating function"));
    }
    Ok(v)
}

/// Exact λ-expansion of `e^{x (e^λ - 1)}` through `order`.
pub fn egf_bell_closed_series(x: &BigRational, order: usize) -> PowerSeries {
    let mut inner = PowerSeries::exp_identity(order);
    inner = &inner + &PowerSeries::one(order).scale(&rat(-1));
    inner.scale(x).exp()
}

fn exact_x(x: f64) -> Result<BigRational> {
    from_f64(x).ok_or_else(|| Error::InvalidInput(format!("x must be finite, got {x}")))
}

fn check_truncation(truncation: usize) -> Result<()> {
    if truncation == 0 || truncation > MAX_EGF_TRUNCATION {
        return Err(Error::InvalidInput(format!(
            "truncation must lie in 1..={MAX_EGF_TRUNCATION}, got {truncation}"
        )));
    }
    Ok(())
}

/// Exact coefficients `B_α^d(n, x) / n!` for `n = 0..=truncation`.
pub fn egf_coefficients(alpha: &AlphaSpec, x: &BigRational, truncation: usize) -> Vec<BigRational> {
    let table = GenStirlingTable::by_recurrence(alpha, truncation);
    (0..=truncation)
        .map(|n| table.bell_polynomial(n, x) / BigRational::from_integer(factorial(n)))
        .collect()
}

/// Partial sum `Σ_{n=0}^{truncation} B_α^d(n,x) λ^n / n!`.
pub fn egf_truncated(query: &EgfQuery) -> Result<f64> {
    check_truncation(query.truncation)?;
    let x = exact_x(query.x)?;
    let coeffs = egf_coefficients(&query.alpha, &x, query.truncation);
    Ok(coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * query.lambda + to_f64(c)))
}

/// Convergent `d = 0` form `e^{-x} Σ_l exp(λ Σ_k α_k l^(k)) x^l / l!`,
/// valid when `α_N λ < 0`.
pub fn egf_d0_dobinski(alpha: &AlphaSpec, lambda: f64, x: f64, eps: f64) -> Result<SeriesSum> {
    egf_d0_dobinski_capped(alpha, lambda, x, eps, DEFAULT_MAX_TERMS)
}

pub fn egf_d0_dobinski_capped(
    alpha: &AlphaSpec,
    lambda: f64,
    x: f64,
    eps: f64,
    max_terms: usize,
) -> Result<SeriesSum> {
    if alpha.d() != 0 {
        return Err(Error::InvalidInput(format!(
            "the convergent form needs excess 0, got {}",
            alpha.d()
        )));
    }
    let product = to_f64(alpha.leading_coeff()) * lambda;
    if lambda != 0.0 && product >= 0.0 {
        return Err(Error::DivergenceCondition { product });
    }
    let min_index = (2 * alpha.n_max()).max(x.ceil() as usize).max(10);
    sum_poisson_weighted(x, eps, min_index, max_terms, |l| {
        (lambda * alpha.factor_at_f64(l as f64)).exp()
    })
}

/// Truncation of `<z| e^{λ H} |z> = Σ_n B_α^d(n, |z|^2) ((z*)^d λ)^n / n!`.
pub fn coherent_matrix_element_exp(
    alpha: &AlphaSpec,
    lambda: f64,
    z: CoherentLabel,
    truncation: usize,
) -> Result<Complex64> {
    check_truncation(truncation)?;
    let x = exact_x(z.norm_sqr())?;
    let coeffs = egf_coefficients(alpha, &x, truncation);
    let w = z.z().conj().powu(alpha.d() as u32) * lambda;
    Ok(coeffs
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, c| acc * w + to_f64(c)))
}

/// A λ-series whose coefficients are normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormSeries {
    coeffs: Vec<NormalForm>,
}

impl NormalFormSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &NormalForm {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[NormalForm] {
        &self.coeffs
    }

    /// Sum of the truncated series at an exact λ.
    pub fn evaluate(&self, lambda: &BigRational) -> NormalForm {
        let mut acc = NormalForm::zero();
        let mut power = BigRational::one();
        for c in &self.coeffs {
            acc = acc.add(&c.scale(&power));
            power *= lambda;
        }
        acc
    }
}

/// `:e^{a†a (e^λ - 1)}:` expanded through λ^order. The coefficient of λ^m at
/// `(k, k)` is `[λ^m] (e^λ - 1)^k / k!`, computed with exact series algebra.
pub fn normal_form_of_exp_number_operator(order: usize) -> Result<NormalFormSeries> {
    if order == 0 || order > MAX_NORMAL_FORM_ORDER {
        return Err(Error::InvalidInput(format!(
            "order must lie in 1..={MAX_NORMAL_FORM_ORDER}, got {order}"
        )));
    }
    let mut shifted = PowerSeries::exp_identity(order);
    shifted = &shifted + &PowerSeries::one(order).scale(&rat(-1));
    let mut coeffs = vec![NormalForm::zero(); order + 1];
    let mut power = PowerSeries::one(order);
    for k in 0..=order {
        let kf = BigRational::from_integer(factorial(k));
        for (m, slot) in coeffs.iter_mut().enumerate() {
            slot.add_term(k, k, power.coeff(m) / &kf);
        }
        power = &power * &shifted;
    }
    Ok(NormalFormSeries { coeffs })
}

/// `Σ_n F^n λ^n / n!` through `order`, computed in the Weyl algebra.
pub fn exp_series_in_weyl(f: &NormalForm, order: usize) -> NormalFormSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut power = NormalForm::identity();
    for n in 0..=order {
        coeffs.push(power.scale(&BigRational::new(One::one(), factorial(n))));
        power = power.multiply(f);
    }
    NormalFormSeries { coeffs }
}

/// Relative residual of `<z'|F|z> = <z'|z> G(z'*, z)`, with `<z'|F|z>` from a
/// truncated Fock space of dimension `dim` and the scale taken as
/// `|<z'|z>| Σ |c_rs| |z'|^r |z|^s`.
pub fn coherent_transfer_residual(
    f: &NormalForm,
    z: CoherentLabel,
    zprime: CoherentLabel,
    dim: usize,
) -> f64 {
    let (z, zp) = (z.z(), zprime.z());
    let ket = coherent_state(z, dim);
    let image = apply_normal_form(f, &ket);
    let bra = coherent_state(zp, image.len().max(dim));
    let lhs = inner(&bra, &image);

    let overlap = (-(z.norm_sqr() + zp.norm_sqr()) / 2.0 + zp.conj() * z).exp();
    let mut g = Complex64::zero();
    let mut scale = 0.0;
    for (&(r, s), c) in f.terms() {
        let c = to_f64(c);
        g += zp.conj().powu(r as u32) * z.powu(s as u32) * c;
        scale += c.abs() * zp.norm().powi(r as i32) * z.norm().powi(s as i32);
    }
    let rhs = overlap * g;
    let scale = scale * overlap.norm();
    if scale == 0.0 {
        return (lhs - rhs).norm();
    }
    (lhs - rhs).norm() / scale
}

pub fn coherent_transfer_check(f: &NormalForm, z: CoherentLabel, zprime: CoherentLabel) -> bool {
    coherent_transfer_residual(f, z, zprime, DEFAULT_FOCK_DIM) <= TRANSFER_TOLERANCE
}
