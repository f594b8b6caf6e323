//! Stirling numbers of the second kind, Bell numbers and polynomials, and
//! the classical Dobiński series.
//!
//! `S(n,k)` is the coefficient of `(a†)^k a^k` in the normal form of
//! `(a† a)^n`. Conventions at the boundary: `S(0,0) = 1`, `B(0) = 1`,
//! `B(0,x) = 1`, and `S(n,k) = 0` outside `1 <= k <= n` for `n >= 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::arith::{binomial, factorial};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Default cap on the number of terms of any numerically summed series.
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

/// Largest `n` accepted by [`dobinski_eval`]; `k^n` is formed in binary64.
pub const DOBINSKI_MAX_N: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    /// Builds rows `0..=max_n` with `S(n+1,k) = k S(n,k) + S(n,k-1)`.
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 0..max_n {
            let prev = &rows[n];
            let mut row = vec![BigInt::zero(); n + 2];
            for (k, slot) in row.iter_mut().enumerate().skip(1) {
                let stay = prev.get(k).map(|s| s * k).unwrap_or_default();
                *slot = stay + &prev[k - 1];
            }
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// `S(n,0) ..= S(n,n)`.
    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn bell(&self, n: usize) -> BigInt {
        self.rows[n].iter().sum()
    }
}

/// `B(n,x) = Σ_k S(n,k) x^k`, stored by coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellPolynomial {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl BellPolynomial {
    pub fn new(n: usize) -> Self {
        let table = StirlingTable::new(n);
        BellPolynomial {
            n,
            coeffs: table.row(n).to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

fn check_range(n: usize, k: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::OutOfRange { n, k });
    }
    Ok(())
}

pub fn stirling2_recurrence(n: usize, k: usize) -> Result<BigInt> {
    check_range(n, k)?;
    Ok(StirlingTable::new(n).get(n, k))
}

/// `S(n,k) = (1/k!) Σ_{j=1}^k C(k,j) (-1)^(k-j) j^n`.
pub fn stirling2_explicit(n: usize, k: usize) -> Result<BigInt> {
    check_range(n, k)?;
    let mut acc = BigInt::zero();
    for j in 1..=k {
        let term = binomial(k, j) * BigInt::from(j).pow(n as u32);
        if (k - j).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let kf = factorial(k);
    let (q, r) = acc.div_rem(&kf);
    if !r.is_zero() {
        return Err(Error::NonIntegerResult(format!("S({n},{k}) = {acc}/{kf}")));
    }
    Ok(q)
}

pub fn bell_polynomial(n: usize, x: &BigRational) -> BigRational {
    BellPolynomial::new(n).eval(x)
}

pub fn bell_number(n: usize) -> BigInt {
    StirlingTable::new(n).bell(n)
}

/// A numerically summed series together with the number of terms used.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
    pub eps: f64,
}

/// Sums `e^{-x} Σ_l weight(l) x^l / l!`.
///
/// Stops at the first index past `min_index` where two consecutive terms
/// are both below `eps · |partial sum|`.
pub(crate) fn sum_poisson_weighted(
    x: f64,
    eps: f64,
    min_index: usize,
    max_terms: usize,
    mut weight: impl FnMut(usize) -> f64,
) -> Result<SeriesSum> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidInput(format!("x must be positive, got {x}")));
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let ln_x = x.ln();
    // log of e^{-x} x^l / l!
    let mut log_poisson = -x;
    let mut sum = 0.0f64;
    let mut quiet = 0;
    for l in 0..max_terms {
        if l > 0 {
            log_poisson += ln_x - (l as f64).ln();
        }
        let term = weight(l) * log_poisson.exp();
        if !term.is_finite() {
            return Err(Error::Overflow("Dobinski series term"));
        }
        sum += term;
        if l > min_index && term.abs() < eps * sum.abs() {
            quiet += 1;
            if quiet >= 2 {
                return Ok(SeriesSum {
                    value: sum,
                    terms: l + 1,
                    eps,
                });
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NoConvergence { terms: max_terms })
}

/// Classical Dobiński series `e^{-x} Σ_k k^n x^k / k!`.
pub fn dobinski_eval(n: usize, x: f64, eps: f64) -> Result<SeriesSum> {
    dobinski_eval_capped(n, x, eps, DEFAULT_MAX_TERMS)
}

pub fn dobinski_eval_capped(n: usize, x: f64, eps: f64, max_terms: usize) -> Result<SeriesSum> {
    if n > DOBINSKI_MAX_N {
        return Err(Error::InvalidInput(format!(
            "n = {n} exceeds the binary64 limit {DOBINSKI_MAX_N}"
        )));
    }
    let min_index = (2 * n).max(x.ceil() as usize).max(10);
    sum_poisson_weighted(x, eps, min_index, max_terms, |k| (k as f64).powi(n as i32))
}

/// Expands `x^n` in the falling-factorial basis by polynomial division and
/// compares with row `n` of the Stirling table.
pub fn stirling_transform_check(n: usize) -> bool {
    let monomial = Poly::x().pow(n);
    let basis = monomial.to_falling_factorial_basis();
    let table = StirlingTable::new(n);
    (0..=n).all(|k| {
        let expected = BigRational::from_integer(table.get(n, k));
        basis.get(k).cloned().unwrap_or_default() == expected
    })
}
