//! Normal ordering of `exp(λ [q(a†) a + v(a†)])` for polynomial `q`, `v`.
//!
//! The normal form is `:g(λ, a†) exp([T(λ, a†) - a†] a):` where
//!
//! ```text
//! ∂T/∂λ = q(T),      T(0, x) = x
//! ∂g/∂λ = v(T) g,    g(0, x) = 1
//! ```
//!
//! Both are solved as λ-series whose coefficients are exact polynomials in
//! `x`. [`verify_sheffer`] checks the result against powers of the operator
//! computed in the Weyl algebra.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::genfun::{exp_series_in_weyl, CoherentLabel};
use crate::poly::Poly;
use crate::weyl::NormalForm;

/// Largest degree of a [`PolySpec`].
pub const MAX_POLY_DEGREE: usize = 8;
/// Largest λ-order for the series solvers.
pub const MAX_SERIES_ORDER: usize = 16;
/// Largest λ-order and polynomial degree for [`verify_sheffer`].
pub const MAX_VERIFY_ORDER: usize = 10;
pub const MAX_VERIFY_DEGREE: usize = 4;

/// A polynomial `q` or `v` in the creation operator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolySpec(Poly);

impl PolySpec {
    pub fn new(poly: Poly) -> Result<Self> {
        match poly.degree() {
            Some(deg) if deg > MAX_POLY_DEGREE => Err(Error::InvalidInput(format!(
                "polynomial degree {deg} exceeds {MAX_POLY_DEGREE}"
            ))),
            _ => Ok(PolySpec(poly)),
        }
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        PolySpec::new(Poly::from_integers(coeffs))
    }

    pub fn zero() -> Self {
        PolySpec(Poly::zero())
    }

    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.degree()
    }
}

impl fmt::Display for PolySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Truncated series `Σ_m λ^m F_m(x)` with polynomial slices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    slices: Vec<Poly>,
}

impl BivariateSeries {
    pub fn new(mut slices: Vec<Poly>, order: usize) -> Self {
        slices.resize(order + 1, Poly::zero());
        BivariateSeries { slices }
    }

    pub fn constant(p: Poly, order: usize) -> Self {
        BivariateSeries::new(vec![p], order)
    }

    pub fn order(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn slice(&self, m: usize) -> &Poly {
        &self.slices[m]
    }

    pub fn slices(&self) -> &[Poly] {
        &self.slices
    }

    pub fn truncate(&self, order: usize) -> Self {
        BivariateSeries::new(self.slices[..=order.min(self.order())].to_vec(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        BivariateSeries {
            slices: (0..=order)
                .map(|m| &self.slices[m] + &other.slices[m])
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        BivariateSeries {
            slices: self.slices.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let (a, da) = self.integer_parts();
        let (b, db) = other.integer_parts();
        let mut acc: Vec<Vec<BigInt>> = vec![Vec::new(); order + 1];
        for (i, pa) in a.iter().enumerate().take(order + 1) {
            for (j, pb) in b.iter().enumerate().take(order + 1 - i) {
                if pa.is_empty() || pb.is_empty() {
                    continue;
                }
                let slot = &mut acc[i + j];
                if slot.len() < pa.len() + pb.len() - 1 {
                    slot.resize(pa.len() + pb.len() - 1, BigInt::zero());
                }
                for (k, x) in pa.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (l, y) in pb.iter().enumerate() {
                        slot[k + l] += x * y;
                    }
                }
            }
        }
        let den = da * db;
        let slices = acc
            .into_iter()
            .map(|c| {
                Poly::new(
                    c.into_iter()
                        .map(|v| BigRational::new(v, den.clone()))
                        .collect(),
                )
            })
            .collect();
        BivariateSeries { slices }
    }

    /// Integer numerators of every slice over one common denominator.
    fn integer_parts(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let den = self
            .slices
            .iter()
            .flat_map(|p| p.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .slices
            .iter()
            .map(|p| {
                p.coeffs()
                    .iter()
                    .map(|c| c.numer() * (&den / c.denom()))
                    .collect()
            })
            .collect();
        (nums, den)
    }

    /// `p(self)` with `p` a polynomial in one variable.
    pub fn compose_into(&self, p: &Poly) -> Self {
        let order = self.order();
        let mut acc = BivariateSeries::constant(Poly::zero(), order);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            acc.slices[0] = &acc.slices[0] + &Poly::constant(c.clone());
        }
        acc
    }

    /// λ-series obtained by evaluating every slice at `x`.
    pub fn eval_complex(&self, x: Complex64) -> Vec<Complex64> {
        self.slices.iter().map(|p| p.eval_complex(x)).collect()
    }
}

fn check_order(order: usize, cap: usize) -> Result<()> {
    if order == 0 || order > cap {
        return Err(Error::InvalidInput(format!(
            "series order must lie in 1..={cap}, got {order}"
        )));
    }
    Ok(())
}

/// Solves `∂T/∂λ = q(T)`, `T(0,x) = x` through λ^order.
pub fn solve_t(q: &PolySpec, order: usize) -> Result<BivariateSeries> {
    check_order(order, MAX_SERIES_ORDER)?;
    let mut t = BivariateSeries::new(vec![Poly::x()], order);
    for m in 0..order {
        // [λ^m] q(T) only needs T through order m
        let rhs = t.truncate(m).compose_into(q.poly());
        t.slices[m + 1] = rhs.slices[m].scale(&BigRational::new(One::one(), (m as i64 + 1).into()));
    }
    Ok(t)
}

/// Solves `∂g/∂λ = v(T) g`, `g(0,x) = 1` through λ^order.
pub fn solve_g(q: &PolySpec, v: &PolySpec, order: usize) -> Result<BivariateSeries> {
    let t = solve_t(q, order)?;
    Ok(solve_g_with(&t, v))
}

fn solve_g_with(t: &BivariateSeries, v: &PolySpec) -> BivariateSeries {
    let order = t.order();
    let rate = t.compose_into(v.poly());
    let mut g = BivariateSeries::new(vec![Poly::one()], order);
    for m in 0..order {
        let mut acc = Poly::zero();
        for i in 0..=m {
            acc = &acc + &(&rate.slices[i] * &g.slices[m - i]);
        }
        g.slices[m + 1] = acc.scale(&BigRational::new(One::one(), (m as i64 + 1).into()));
    }
    g
}

/// `q(a†) a + v(a†)` as a normal form.
pub fn sheffer_operator(q: &PolySpec, v: &PolySpec) -> NormalForm {
    let mut nf = NormalForm::zero();
    for (r, c) in q.poly().coeffs().iter().enumerate() {
        nf.add_term(r, 1, c.clone());
    }
    for (r, c) in v.poly().coeffs().iter().enumerate() {
        nf.add_term(r, 0, c.clone());
    }
    nf
}

/// Splits a normal form of the shape `q(a†) a + v(a†)` back into `(q, v)`.
pub fn sheffer_parts(nf: &NormalForm) -> Result<(PolySpec, PolySpec)> {
    let width = nf.terms().map(|(&(r, _), _)| r + 1).max().unwrap_or(0);
    let mut q = vec![BigRational::zero(); width];
    let mut v = vec![BigRational::zero(); width];
    for (&(r, s), c) in nf.terms() {
        match s {
            0 => v[r] = c.clone(),
            1 => q[r] = c.clone(),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "term ad^{r} a^{s} is not linear in a"
                )))
            }
        }
    }
    Ok((PolySpec::new(Poly::new(q))?, PolySpec::new(Poly::new(v))?))
}

/// λ-expansion of `:g(λ,a†) exp([T(λ,a†) - a†] a):` as normal forms.
pub fn sheffer_normal_form_series(
    q: &PolySpec,
    v: &PolySpec,
    order: usize,
) -> Result<Vec<NormalForm>> {
    let t = solve_t(q, order)?;
    let g = solve_g_with(&t, v);
    let shift = t.add(&BivariateSeries::constant(-&Poly::x(), order));
    let mut out = vec![NormalForm::zero(); order + 1];
    let mut power = BivariateSeries::constant(Poly::one(), order);
    for j in 0..=order {
        let weight = BigRational::new(One::one(), factorial(j));
        let term = g.mul(&power).scale(&weight);
        for (m, slice) in term.slices.iter().enumerate() {
            for (r, c) in slice.coeffs().iter().enumerate() {
                out[m].add_term(r, j, c.clone());
            }
        }
        power = power.mul(&shift);
    }
    Ok(out)
}

/// Compares both sides of the Sheffer-type normal-ordering formula
/// coefficient by coefficient through λ^order, exactly.
pub fn verify_sheffer(q: &PolySpec, v: &PolySpec, order: usize) -> Result<bool> {
    check_order(order, MAX_VERIFY_ORDER)?;
    for p in [q, v] {
        if p.degree().is_some_and(|d| d > MAX_VERIFY_DEGREE) {
            return Err(Error::InvalidInput(format!(
                "verification needs degree <= {MAX_VERIFY_DEGREE}"
            )));
        }
    }
    let lhs = exp_series_in_weyl(&sheffer_operator(q, v), order);
    let rhs = sheffer_normal_form_series(q, v, order)?;
    Ok(lhs.coeffs() == rhs.as_slice())
}

fn complex_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|m| (0..=m).map(|i| a[i] * b[m - i]).sum())
        .collect()
}

fn complex_exp(a: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); a.len()];
    out[0] = a[0].exp();
    for m in 1..a.len() {
        let acc: Complex64 = (1..=m).map(|j| a[j] * out[m - j] * j as f64).sum();
        out[m] = acc / m as f64;
    }
    out
}

/// λ-series of `<z| exp(λ[q(a†)a + v(a†)]) |z> = g(λ, z*) exp((T(λ, z*) - z*) z)`.
pub fn sheffer_coherent_egf(
    q: &PolySpec,
    v: &PolySpec,
    z: CoherentLabel,
    order: usize,
) -> Result<Vec<Complex64>> {
    let t = solve_t(q, order)?;
    let g = solve_g_with(&t, v);
    let zc = z.z().conj();
    let mut exponent = t.eval_complex(zc);
    exponent[0] -= zc;
    for c in exponent.iter_mut() {
        *c *= z.z();
    }
    Ok(complex_mul(&g.eval_complex(zc), &complex_exp(&exponent)))
}

/// `λ^m` coefficients of `e^{c λ}`, used by callers comparing against
/// closed forms.
pub fn exp_linear_series(c: Complex64, order: usize) -> Vec<Complex64> {
    (0..=order)
        .map(|m| c.powu(m as u32) / crate::arith::to_f64(&BigRational::from_integer(factorial(m))))
        .collect()
}

/// Convenience: `(q, v)` pair from integer coefficient lists.
pub fn poly_pair(q: &[i64], v: &[i64]) -> Result<(PolySpec, PolySpec)> {
    Ok((PolySpec::from_integers(q)?, PolySpec::from_integers(v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::genfun::normal_form_of_exp_number_operator;

    #[test]
    fn t_examples() {
        let order = 6;
        let t = solve_t(&PolySpec::from_integers(&[0, 1]).unwrap(), order).unwrap();
        for m in 0..=order {
            let expected = Poly::x().scale(&BigRational::new(One::one(), factorial(m)));
            assert_eq!(t.slice(m), &expected);
        }
        let t = solve_t(&PolySpec::from_integers(&[1]).unwrap(), order).unwrap();
        assert_eq!(t.slice(0), &Poly::x());
        assert_eq!(t.slice(1), &Poly::one());
        assert!((2..=order).all(|m| t.slice(m).is_zero()));
        let t = solve_t(&PolySpec::from_integers(&[0, 0, 1]).unwrap(), order).unwrap();
        for m in 0..=order {
            assert_eq!(t.slice(m), &Poly::x().pow(m + 1));
        }
    }

    #[test]
    fn g_examples() {
        let (q, zero) = poly_pair(&[0, 1], &[]).unwrap();
        let g = solve_g(&q, &zero, 5).unwrap();
        assert_eq!(g, BivariateSeries::new(vec![Poly::one()], 5));

        // v(T) = x e^λ gives g = exp(x (e^λ - 1)); [λ^2] = x/2 + x^2/2
        let g = solve_g(&q, &PolySpec::from_integers(&[0, 1]).unwrap(), 5).unwrap();
        assert_eq!(g.slice(1), &Poly::x());
        assert_eq!(
            g.slice(2),
            &Poly::new(vec![rat(0), ratio(1, 2), ratio(1, 2)])
        );

        let (q, v) = poly_pair(&[1], &[1]).unwrap();
        let g = solve_g(&q, &v, 5).unwrap();
        for m in 0..=5 {
            assert_eq!(
                g.slice(m),
                &Poly::constant(BigRational::new(One::one(), factorial(m)))
            );
        }
    }

    #[test]
    fn verify_examples() {
        let (q, v) = poly_pair(&[0, 1], &[]).unwrap();
        assert!(verify_sheffer(&q, &v, 8).unwrap());
        let (q, v) = poly_pair(&[1], &[]).unwrap();
        assert!(verify_sheffer(&q, &v, 8).unwrap());
        let (q, v) = poly_pair(&[0, 0, 1], &[0, 1]).unwrap();
        assert!(verify_sheffer(&q, &v, 6).unwrap());
    }

    #[test]
    fn wrong_flow_is_rejected() {
        // replacing T by its first-order truncation must break the identity
        let (q, v) = poly_pair(&[0, 0, 1], &[]).unwrap();
        let lhs = exp_series_in_weyl(&sheffer_operator(&q, &v), 3);
        let mut rhs = sheffer_normal_form_series(&q, &v, 3).unwrap();
        rhs[2].add_term(3, 1, rat(1));
        assert_ne!(lhs.coeffs(), rhs.as_slice());
    }

    #[test]
    fn reduction_to_number_operator() {
        let (q, v) = poly_pair(&[0, 1], &[]).unwrap();
        let series = sheffer_normal_form_series(&q, &v, 8).unwrap();
        let expected = normal_form_of_exp_number_operator(8).unwrap();
        assert_eq!(series.as_slice(), expected.coeffs());
    }

    #[test]
    fn guards() {
        let big = PolySpec::from_integers(&[0, 0, 0, 0, 0, 1]).unwrap();
        assert!(verify_sheffer(&big, &PolySpec::zero(), 3).is_err());
        assert!(verify_sheffer(&PolySpec::zero(), &PolySpec::zero(), 11).is_err());
        assert!(solve_t(&PolySpec::zero(), 17).is_err());
        assert!(
            PolySpec::from_integers(&[0; 10].iter().chain(&[1]).copied().collect::<Vec<_>>())
                .is_err()
        );
    }

    #[test]
    fn parts_round_trip() {
        let (q, v) = poly_pair(&[1, 0, 2], &[0, -1]).unwrap();
        let nf = sheffer_operator(&q, &v);
        assert_eq!(sheffer_parts(&nf).unwrap(), (q, v));
        assert!(sheffer_parts(&NormalForm::monomial(1, 2, rat(1))).is_err());
    }

    #[test]
    fn coherent_egf_examples() {
        let z = CoherentLabel::real(0.8).unwrap();
        let (q, v) = poly_pair(&[0, 1], &[]).unwrap();
        let series = sheffer_coherent_egf(&q, &v, z, 10).unwrap();
        let exact =
            crate::genfun::egf_bell_closed_series(&crate::arith::from_f64(0.64).unwrap(), 10);
        for m in 0..=10 {
            assert!((series[m].re - crate::arith::to_f64(exact.coeff(m))).abs() < 1e-14);
        }
        assert_eq!(series[0], Complex64::new(1.0, 0.0));

        let (q, v) = poly_pair(&[1], &[]).unwrap();
        let one = CoherentLabel::real(1.0).unwrap();
        let series = sheffer_coherent_egf(&q, &v, one, 8).unwrap();
        let expected = exp_linear_series(Complex64::new(1.0, 0.0), 8);
        for (a, b) in series.iter().zip(&expected) {
            assert!((a - b).norm() < 1e-15);
        }
    }
}
