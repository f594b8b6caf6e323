//! Padé approximants `[m/n]` as a summation device for divergent
//! generating functions.
//!
//! The denominator is normalized to `Q(0) = 1` and found from the linear
//! system `Σ_{j=1}^n q_j c_{m+i-j} = -c_{m+i}`, `i = 1..n`. The default
//! solve is exact over the rationals; [`pade_approximant_f64`] is available
//! for larger tables and reports its Taylor-match residual.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{from_f64, to_f64};
use crate::error::{Error, Result};
use crate::genfun::egf_coefficients;
use crate::weyl::AlphaSpec;

/// Relative threshold for [`Error::PoleProximity`].
pub const POLE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadeApproximant {
    num: Vec<BigRational>,
    den: Vec<BigRational>,
}

impl PadeApproximant {
    pub fn m(&self) -> usize {
        self.num.len() - 1
    }

    pub fn n(&self) -> usize {
        self.den.len() - 1
    }

    pub fn numerator(&self) -> &[BigRational] {
        &self.num
    }

    pub fn denominator(&self) -> &[BigRational] {
        &self.den
    }

    /// Taylor coefficients of `num / den` through `order`.
    pub fn taylor(&self, order: usize) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.num.get(k).cloned().unwrap_or_else(BigRational::zero);
            for j in 1..=k.min(self.n()) {
                acc -= &self.den[j] * &out[k - j];
            }
            out.push(acc);
        }
        out
    }
}

fn coeff_at(series: &[BigRational], i: isize) -> BigRational {
    if i < 0 {
        BigRational::zero()
    } else {
        series[i as usize].clone()
    }
}

/// Exact Gaussian elimination; `None` when the matrix is singular.
fn solve_exact(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &f * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc -= &a[r][c] * &x[c];
        }
        x[r] = acc / &a[r][r];
    }
    Some(x)
}

/// Exact `[m/n]` approximant from the `m+n+1` coefficients `c_0..c_{m+n}`.
pub fn pade_approximant(series: &[BigRational], m: usize, n: usize) -> Result<PadeApproximant> {
    if series.len() != m + n + 1 {
        return Err(Error::InvalidInput(format!(
            "[{m}/{n}] needs {} coefficients, got {}",
            m + n + 1,
            series.len()
        )));
    }
    let (mi, ni) = (m as isize, n as isize);
    let matrix: Vec<Vec<BigRational>> = (1..=ni)
        .map(|i| (1..=ni).map(|j| coeff_at(series, mi + i - j)).collect())
        .collect();
    let rhs: Vec<BigRational> = (1..=ni).map(|i| -coeff_at(series, mi + i)).collect();
    let q = solve_exact(matrix, rhs).ok_or(Error::SingularSystem { m, n })?;
    let mut den = vec![BigRational::one()];
    den.extend(q);
    let num = (0..=m)
        .map(|i| (0..=i.min(n)).map(|j| &den[j] * &series[i - j]).sum())
        .collect();
    Ok(PadeApproximant { num, den })
}

fn eval_checked(num: &[f64], den: &[f64], lambda: f64) -> Result<f64> {
    let horner = |c: &[f64]| c.iter().rev().fold(0.0, |acc, v| acc * lambda + v);
    let d = horner(den);
    let scale: f64 = den
        .iter()
        .enumerate()
        .map(|(j, q)| q.abs() * lambda.abs().powi(j as i32))
        .sum();
    if d.abs() < POLE_TOLERANCE * scale {
        return Err(Error::PoleProximity { lambda, value: d });
    }
    Ok(horner(num) / d)
}

/// `num(λ) / den(λ)` in binary64.
pub fn pade_eval(p: &PadeApproximant, lambda: f64) -> Result<f64> {
    let num: Vec<f64> = p.num.iter().map(to_f64).collect();
    let den: Vec<f64> = p.den.iter().map(to_f64).collect();
    eval_checked(&num, &den, lambda)
}

/// Binary64 approximant with the residual of its Taylor match.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPade {
    pub num: Vec<f64>,
    pub den: Vec<f64>,
    /// `max_k |[λ^k](num/den) - c_k|` over `k <= m+n`.
    pub residual: f64,
}

impl FloatPade {
    pub fn eval(&self, lambda: f64) -> Result<f64> {
        eval_checked(&self.num, &self.den, lambda)
    }
}

/// `[m/n]` approximant solved with partial pivoting in binary64.
pub fn pade_approximant_f64(series: &[f64], m: usize, n: usize) -> Result<FloatPade> {
    if series.len() != m + n + 1 {
        return Err(Error::InvalidInput(format!(
            "[{m}/{n}] needs {} coefficients, got {}",
            m + n + 1,
            series.len()
        )));
    }
    let c = |i: isize| if i < 0 { 0.0 } else { series[i as usize] };
    let (mi, ni) = (m as isize, n as isize);
    let mut a: Vec<Vec<f64>> = (1..=ni)
        .map(|i| (1..=ni).map(|j| c(mi + i - j)).collect())
        .collect();
    let mut b: Vec<f64> = (1..=ni).map(|i| -c(mi + i)).collect();
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
            .expect("nonempty");
        if a[pivot][col].abs() <= 1e-14 * scale {
            return Err(Error::SingularSystem { m, n });
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for k in col..n {
                a[r][k] -= f * a[col][k];
            }
            b[r] -= f * b[col];
        }
    }
    let mut q = vec![0.0; n];
    for r in (0..n).rev() {
        let acc = b[r] - (r + 1..n).map(|k| a[r][k] * q[k]).sum::<f64>();
        q[r] = acc / a[r][r];
    }
    let mut den = vec![1.0];
    den.extend(q);
    let num: Vec<f64> = (0..=m)
        .map(|i| (0..=i.min(n)).map(|j| den[j] * series[i - j]).sum())
        .collect();
    let mut taylor: Vec<f64> = Vec::with_capacity(m + n + 1);
    for k in 0..=m + n {
        let mut acc = num.get(k).copied().unwrap_or(0.0);
        for j in 1..=k.min(n) {
            acc -= den[j] * taylor[k - j];
        }
        taylor.push(acc);
    }
    let residual = taylor
        .iter()
        .zip(series)
        .map(|(t, s)| (t - s).abs())
        .fold(0.0, f64::max);
    Ok(FloatPade { num, den, residual })
}

/// `[m/n]` resummation of `Σ_k B_α^0(k, x) λ^k / k!` evaluated at λ.
pub fn resum_gen_egf(alpha: &AlphaSpec, lambda: f64, x: f64, m: usize, n: usize) -> Result<f64> {
    if alpha.d() != 0 {
        return Err(Error::InvalidInput(format!(
            "resummation is defined for excess 0, got {}",
            alpha.d()
        )));
    }
    let x = from_f64(x).ok_or_else(|| Error::InvalidInput("x must be finite".into()))?;
    let series = egf_coefficients(alpha, &x, m + n);
    let p = pade_approximant(&series, m, n)?;
    pade_eval(&p, lambda)
}
