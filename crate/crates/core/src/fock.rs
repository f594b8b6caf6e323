//! Numerical single-mode Fock space used as an independent oracle.
//!
//! Vectors are amplitude lists in the number basis `|0>, |1>, ...`. Applying
//! `a†` grows a vector by one slot, so finite normal forms act without any
//! truncation error beyond that of the input state.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::arith::to_f64;
use crate::weyl::{Generator, NormalForm, Word};

pub const DEFAULT_FOCK_DIM: usize = 64;

/// `e^{-|z|^2/2} Σ_{n<dim} z^n / sqrt(n!) |n>`.
pub fn coherent_state(z: Complex64, dim: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(dim);
    let mut amp = Complex64::new((-z.norm_sqr() / 2.0).exp(), 0.0);
    for n in 0..dim {
        if n > 0 {
            amp = amp * z / (n as f64).sqrt();
        }
        out.push(amp);
    }
    out
}

pub fn apply_annihilate(v: &[Complex64]) -> Vec<Complex64> {
    if v.len() <= 1 {
        return vec![Complex64::zero()];
    }
    (0..v.len() - 1)
        .map(|n| v[n + 1] * ((n + 1) as f64).sqrt())
        .collect()
}

pub fn apply_create(v: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(v.len() + 1);
    out.push(Complex64::zero());
    out.extend(
        v.iter()
            .enumerate()
            .map(|(n, c)| c * ((n + 1) as f64).sqrt()),
    );
    out
}

/// `(a†)^r a^s v`.
pub fn apply_monomial(v: &[Complex64], r: usize, s: usize) -> Vec<Complex64> {
    let mut out = v.to_vec();
    for _ in 0..s {
        out = apply_annihilate(&out);
    }
    for _ in 0..r {
        out = apply_create(&out);
    }
    out
}

/// Applies the letters of `word` right to left.
pub fn apply_word(word: &Word, v: &[Complex64]) -> Vec<Complex64> {
    word.letters()
        .iter()
        .rev()
        .fold(v.to_vec(), |acc, g| match g {
            Generator::Create => apply_create(&acc),
            Generator::Annihilate => apply_annihilate(&acc),
        })
}

pub fn apply_normal_form(nf: &NormalForm, v: &[Complex64]) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for (&(r, s), c) in nf.terms() {
        let part = apply_monomial(v, r, s);
        if out.len() < part.len() {
            out.resize(part.len(), Complex64::zero());
        }
        let c = to_f64(c);
        for (slot, p) in out.iter_mut().zip(part) {
            *slot += p * c;
        }
    }
    out
}

/// `<u|v>` over the common support.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// `<0|w|0>`, computed exactly in the unnormalized basis
/// `|n) = sqrt(n!) |n>` where `a†|n) = |n+1)` and `a|n) = n|n-1)`, on a space
/// of dimension `len(w) + 1`.
pub fn vacuum_expectation(word: &Word) -> BigInt {
    let dim = word.len() + 1;
    let mut state = vec![BigInt::zero(); dim];
    state[0] = BigInt::one();
    for g in word.letters().iter().rev() {
        let mut next = vec![BigInt::zero(); dim];
        match g {
            Generator::Create => {
                next[1..].clone_from_slice(&state[..dim - 1]);
            }
            Generator::Annihilate => {
                for n in 1..dim {
                    next[n - 1] = &state[n] * n;
                }
            }
        }
        state = next;
    }
    state.swap_remove(0)
}

/// Matrix `<m|F|n>` of a normal form on the first `dim` number states.
pub fn operator_matrix(nf: &NormalForm, dim: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for col in 0..dim {
        let mut basis = vec![Complex64::zero(); dim];
        basis[col] = Complex64::one();
        let image = apply_normal_form(nf, &basis);
        for (row, v) in image.into_iter().enumerate().take(dim) {
            m[(row, col)] = v;
        }
    }
    m
}

/// `<z| exp(λ F) |z>` with `F` truncated to `dim` states, using a dense
/// matrix exponential.
pub fn exp_diagonal_element(nf: &NormalForm, lambda: f64, z: Complex64, dim: usize) -> Complex64 {
    let generator = operator_matrix(nf, dim) * Complex64::new(lambda, 0.0);
    let evolution = generator.exp();
    let state = nalgebra::DVector::from_vec(coherent_state(z, dim));
    let image = evolution * &state;
    inner(state.as_slice(), image.as_slice())
}
