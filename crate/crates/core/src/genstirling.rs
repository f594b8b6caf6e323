//! Generalized Stirling numbers `S_α^d(n,k)` of a homogeneous boson
//! polynomial `H = (a†)^d Σ_k α_k (a†)^k a^k`, defined by
//!
//! ```text
//! H^n = (a†)^(n d) Σ_{k=N0}^{n N} S_α^d(n,k) (a†)^k a^k
//! ```
//!
//! Three independent constructions are provided: the recurrence obtained
//! from `H · H^n`, the alternating-sum closed form, and the operator route
//! that raises `H` to the `n`-th power in the Weyl algebra.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, falling_factorial_int};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::stirling::{sum_poisson_weighted, SeriesSum, DEFAULT_MAX_TERMS};
use crate::weyl::AlphaSpec;

/// Exact table `S_α^d(n,k)` for `0 <= n <= max_n`.
///
/// Row `n` is stored densely for `0 <= k <= n N`; row 0 is the identity
/// (`S(0,0) = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenStirlingTable {
    alpha: AlphaSpec,
    rows: Vec<Vec<BigRational>>,
}

impl GenStirlingTable {
    pub fn by_recurrence(alpha: &AlphaSpec, max_n: usize) -> Self {
        let big_n = alpha.n_max();
        let d = alpha.d() as i64;
        let mut rows = vec![vec![BigRational::one()]];
        if max_n >= 1 {
            rows.push((0..=big_n).map(|k| alpha.coeff(k)).collect());
        }
        for n in 1..max_n {
            let prev = &rows[n];
            let mut row = vec![BigRational::zero(); (n + 1) * big_n + 1];
            for (k, slot) in row.iter_mut().enumerate() {
                let mut acc = BigRational::zero();
                for (l, a_l) in alpha.coeffs() {
                    for p in 0..=l {
                        // j = k - l + p indexes row n
                        let Some(j) = (k + p).checked_sub(l) else {
                            continue;
                        };
                        let Some(s) = prev.get(j) else { continue };
                        if s.is_zero() {
                            continue;
                        }
                        let weight =
                            binomial(l, p) * falling_factorial_int(n as i64 * d + j as i64, p);
                        acc += a_l * BigRational::from_integer(weight) * s;
                    }
                }
                *slot = acc;
            }
            rows.push(row);
        }
        GenStirlingTable {
            alpha: alpha.clone(),
            rows,
        }
    }

    pub fn by_explicit(alpha: &AlphaSpec, max_n: usize) -> Self {
        let mut rows = vec![vec![BigRational::one()]];
        for n in 1..=max_n {
            rows.push(explicit_row(alpha, n));
        }
        GenStirlingTable {
            alpha: alpha.clone(),
            rows,
        }
    }

    pub fn by_operator(alpha: &AlphaSpec, max_n: usize) -> Result<Self> {
        let big_n = alpha.n_max();
        let mut rows = vec![vec![BigRational::one()]];
        for n in 1..=max_n {
            let entries = gen_stirling_from_operator(alpha, n)?;
            let mut row = vec![BigRational::zero(); n * big_n + 1];
            for (k, v) in entries {
                if k >= row.len() {
                    return Err(Error::NonIntegerResult(format!(
                        "operator row {n} has k={k} beyond nN"
                    )));
                }
                row[k] = v;
            }
            rows.push(row);
        }
        Ok(GenStirlingTable {
            alpha: alpha.clone(),
            rows,
        })
    }

    pub fn alpha(&self) -> &AlphaSpec {
        &self.alpha
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> BigRational {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Dense row `S(n,0) ..= S(n, nN)`.
    pub fn row(&self, n: usize) -> &[BigRational] {
        &self.rows[n]
    }

    /// Nonzero entries of row `n`.
    pub fn row_entries(&self, n: usize) -> BTreeMap<usize, BigRational> {
        self.rows[n]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, v.clone()))
            .collect()
    }

    /// `B_α^d(n, x) = Σ_k S_α^d(n,k) x^k`.
    pub fn bell_polynomial(&self, n: usize, x: &BigRational) -> BigRational {
        self.rows[n]
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn bell_poly(&self, n: usize) -> Poly {
        Poly::new(self.rows[n].clone())
    }
}

/// `Π_{i=1}^n Σ_l α_l (j + (i-1) d)^(l)`.
fn bracket_product(alpha: &AlphaSpec, n: usize, j: i64) -> BigRational {
    let d = alpha.d() as i64;
    (0..n as i64).fold(BigRational::one(), |acc, i| {
        acc * alpha.factor_at(j + i * d)
    })
}

fn explicit_row(alpha: &AlphaSpec, n: usize) -> Vec<BigRational> {
    let top = n * alpha.n_max();
    let products: Vec<BigRational> = (0..=top as i64)
        .map(|j| bracket_product(alpha, n, j))
        .collect();
    (0..=top).map(|k| explicit_entry(&products, k)).collect()
}

fn explicit_entry(products: &[BigRational], k: usize) -> BigRational {
    let mut acc = BigRational::zero();
    for (j, p) in products.iter().enumerate().take(k + 1) {
        let term = BigRational::from_integer(binomial(k, j)) * p;
        if (k - j).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc / BigRational::from_integer(factorial(k))
}

/// Value of `S_α^d(n,k)` from the recurrence; zero outside `[N0, nN]`.
pub fn gen_stirling_recurrence(alpha: &AlphaSpec, n: usize, k: usize) -> BigRational {
    if k > n * alpha.n_max() {
        return BigRational::zero();
    }
    GenStirlingTable::by_recurrence(alpha, n).get(n, k)
}

/// `(1/k!) Σ_{j=0}^k C(k,j) (-1)^(k-j) Π_{i=1}^n Σ_l α_l (j+(i-1)d)^(l)`.
pub fn gen_stirling_explicit(alpha: &AlphaSpec, n: usize, k: usize) -> BigRational {
    let products: Vec<BigRational> = (0..=k as i64)
        .map(|j| bracket_product(alpha, n, j))
        .collect();
    explicit_entry(&products, k)
}

pub fn gen_bell_polynomial(alpha: &AlphaSpec, n: usize, x: &BigRational) -> BigRational {
    GenStirlingTable::by_recurrence(alpha, n).bell_polynomial(n, x)
}

pub fn gen_bell_number(alpha: &AlphaSpec, n: usize) -> BigRational {
    gen_bell_polynomial(alpha, n, &BigRational::one())
}

/// Generalized Dobiński series
/// `e^{-x} Σ_l [Π_{i=1}^n Σ_k α_k (l+(i-1)d)^(k)] x^l / l!`.
pub fn gen_dobinski_eval(alpha: &AlphaSpec, n: usize, x: f64, eps: f64) -> Result<SeriesSum> {
    gen_dobinski_eval_capped(alpha, n, x, eps, DEFAULT_MAX_TERMS)
}

pub fn gen_dobinski_eval_capped(
    alpha: &AlphaSpec,
    n: usize,
    x: f64,
    eps: f64,
    max_terms: usize,
) -> Result<SeriesSum> {
    let degree = n * alpha.n_max();
    let min_index = (2 * degree).max(x.ceil() as usize).max(10);
    let d = alpha.d() as f64;
    sum_poisson_weighted(x, eps, min_index, max_terms, |l| {
        (0..n).fold(1.0, |acc, i| {
            acc * alpha.factor_at_f64(l as f64 + i as f64 * d)
        })
    })
}

/// Expands `Π_{i=1}^n Σ_k α_k (x+(i-1)d)^(k)` as a polynomial, rewrites it
/// in the falling-factorial basis, and compares with row `n`.
pub fn connection_identity_check(alpha: &AlphaSpec, n: usize) -> bool {
    let d = alpha.d() as i64;
    let mut product = Poly::one();
    for i in 0..n as i64 {
        let shift = BigRational::from_integer((i * d).into());
        let factor = alpha.coeffs().fold(Poly::zero(), |acc, (k, a)| {
            &acc + &Poly::falling_factorial(&shift, k).scale(a)
        });
        product = &product * &factor;
    }
    let basis = product.to_falling_factorial_basis();
    let table = GenStirlingTable::by_recurrence(alpha, n);
    let width = basis.len().max(table.row(n).len());
    (0..width).all(|k| basis.get(k).cloned().unwrap_or_default() == table.get(n, k))
}

/// Row `n` read off the Weyl-algebra power `H^n` with the `(a†)^(nd)`
/// prefactor stripped. This is the operator oracle for the module.
pub fn gen_stirling_from_operator(
    alpha: &AlphaSpec,
    n: usize,
) -> Result<BTreeMap<usize, BigRational>> {
    let power = alpha.to_normal_form().power(n);
    let shift = n * alpha.d();
    let mut out = BTreeMap::new();
    for (&(r, s), c) in power.terms() {
        if r != s + shift {
            return Err(Error::MixedExcess {
                first: shift as i64,
                second: r as i64 - s as i64,
            });
        }
        out.insert(s, c.clone());
    }
    Ok(out)
}
