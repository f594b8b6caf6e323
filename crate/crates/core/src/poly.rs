//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{rat, ratio_string, to_f64};

/// Coefficients in ascending order; trailing zeros are always trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: usize) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * z + to_f64(c))
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * inner) + &Poly::constant(c.clone())
        })
    }

    /// Divides by `(x - root)`, returning quotient and remainder.
    pub fn div_linear(&self, root: &BigRational) -> (Poly, BigRational) {
        if self.coeffs.is_empty() {
            return (Poly::zero(), BigRational::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![BigRational::zero(); n - 1];
        let mut carry = BigRational::zero();
        for i in (0..n).rev() {
            let value = &self.coeffs[i] + &carry * root;
            if i == 0 {
                return (Poly::new(quotient), value);
            }
            quotient[i - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Coefficients `c_k` with `self(x) = Σ c_k x(x-1)...(x-k+1)`, found by
    /// successive division by `x`, `x-1`, `x-2`, ...
    pub fn to_falling_factorial_basis(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        let mut rest = self.clone();
        let mut k = 0i64;
        while !rest.is_zero() {
            let (q, r) = rest.div_linear(&rat(k));
            out.push(r);
            rest = q;
            k += 1;
        }
        out
    }

    /// `x(x-1)...(x-k+1)` shifted by `shift`: `(x+shift)^(k)`.
    pub fn falling_factorial(shift: &BigRational, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, i| {
            let root = shift - rat(i as i64);
            &acc * &Poly::new(vec![root, BigRational::one()])
        })
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        // integer convolution over common denominators, reduced once per slot
        let (a, da) = integer_parts(&self.coeffs);
        let (b, db) = integer_parts(&rhs.coeffs);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let den = da * db;
        Poly::new(
            out.into_iter()
                .map(|v| BigRational::new(v, den.clone()))
                .collect(),
        )
    }
}

fn integer_parts(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (nums, den)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => ratio_string(c),
                1 => format!("{}*x", ratio_string(c)),
                _ => format!("{}*x^{i}", ratio_string(c)),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn arithmetic() {
        let p = Poly::from_integers(&[1, 1]);
        assert_eq!(&p * &p, Poly::from_integers(&[1, 2, 1]));
        assert_eq!(&p - &p, Poly::zero());
        assert_eq!(p.pow(0), Poly::one());
        assert_eq!(Poly::from_integers(&[0, 0, 0]).degree(), None);
        assert_eq!(Poly::from_integers(&[1, 2, 3]).eval(&rat(2)), rat(17));
    }

    #[test]
    fn composition() {
        let sq = Poly::from_integers(&[0, 0, 1]);
        let shift = Poly::from_integers(&[1, 1]);
        assert_eq!(sq.compose(&shift), Poly::from_integers(&[1, 2, 1]));
    }

    #[test]
    fn linear_division() {
        let p = Poly::from_integers(&[-6, 11, -6, 1]); // (x-1)(x-2)(x-3)
        let (q, r) = p.div_linear(&rat(1));
        assert_eq!(r, rat(0));
        assert_eq!(q, Poly::from_integers(&[6, -5, 1]));
        let (_, r) = p.div_linear(&ratio(1, 2));
        assert_eq!(r, p.eval(&ratio(1, 2)));
    }

    #[test]
    fn falling_basis_of_square() {
        // x^2 = x^(1) + x^(2)
        let basis = Poly::from_integers(&[0, 0, 1]).to_falling_factorial_basis();
        assert_eq!(basis, vec![rat(0), rat(1), rat(1)]);
    }

    #[test]
    fn shifted_falling_factorial() {
        let p = Poly::falling_factorial(&rat(2), 2); // (x+2)(x+1)
        assert_eq!(p, Poly::from_integers(&[2, 3, 1]));
    }
}
