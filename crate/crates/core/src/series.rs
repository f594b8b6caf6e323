//! Truncated power series in one formal variable with exact coefficients.

use std::ops::{Add, Mul};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{factorial, rat, to_f64};

/// Coefficients `c_0 ..= c_order`; everything above `order` is unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Pads or truncates `coeffs` to the given order.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigRational) -> Self {
        PowerSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    /// `e^λ = Σ λ^m / m!`.
    pub fn exp_identity(order: usize) -> Self {
        PowerSeries::from_fn(order, |m| BigRational::new(One::one(), factorial(m)))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> &BigRational {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(PowerSeries::one(self.order()), |acc, _| &acc * self)
    }

    /// `exp(self)` for a series with vanishing constant term, via
    /// `E' = f' E` solved coefficient by coefficient.
    pub fn exp(&self) -> Self {
        assert!(
            self.coeffs[0].is_zero(),
            "exp of a series needs a zero constant term"
        );
        let order = self.order();
        let mut out = vec![BigRational::zero(); order + 1];
        out[0] = BigRational::one();
        for m in 1..=order {
            let mut acc = BigRational::zero();
            for j in 1..=m {
                acc += rat(j as i64) * &self.coeffs[j] * &out[m - j];
            }
            out[m] = acc / rat(m as i64);
        }
        PowerSeries { coeffs: out }
    }

    /// `self(inner(λ))` for `inner` with vanishing constant term.
    pub fn compose(&self, inner: &PowerSeries) -> Self {
        assert!(inner.coeffs[0].is_zero(), "inner series must vanish at 0");
        let order = self.order().min(inner.order());
        let inner = PowerSeries::from_coeffs(inner.coeffs.clone(), order);
        let mut out = PowerSeries::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            out = &out * &inner;
            out.coeffs[0] += c;
        }
        out
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries::from_fn(order, |m| &self.coeffs[m] + &rhs.coeffs[m])
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }
}
