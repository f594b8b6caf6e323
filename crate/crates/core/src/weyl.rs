//! Boson ladder-operator words, normal forms, and the Weyl-algebra product.
//!
//! Words are written in operator order: the leftmost letter is the leftmost
//! factor, so `[Create, Annihilate]` is the number operator `a† a`. A
//! [`NormalForm`] is a finite linear combination of normally ordered
//! monomials `(a†)^r a^s` with exact rational coefficients.
//!
//! Two routes to a normal form exist and are kept independent:
//! [`normal_order_word`] exhaustively rewrites `a a† -> a† a + 1` and is the
//! ground-truth oracle, while [`NormalForm::multiply`] uses the closed
//! contraction identity
//! `a^s (a†)^r = Σ_i C(s,i) r^(i) (a†)^(r-i) a^(s-i)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{falling_factorial_int, ratio_string};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `a†`
    Create,
    /// `a`
    Annihilate,
}

impl Generator {
    pub fn symbol(self) -> &'static str {
        match self {
            Generator::Create => "ad",
            Generator::Annihilate => "a",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn new(letters: Vec<Generator>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of creators minus number of annihilators.
    pub fn excess(&self) -> i64 {
        self.0
            .iter()
            .map(|g| match g {
                Generator::Create => 1,
                Generator::Annihilate => -1,
            })
            .sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `(a†)^r a^s` as a word.
    pub fn monomial(r: usize, s: usize) -> Word {
        let mut letters = vec![Generator::Create; r];
        letters.extend(std::iter::repeat_n(Generator::Annihilate, s));
        Word(letters)
    }

    fn first_inversion(&self) -> Option<usize> {
        self.0
            .windows(2)
            .position(|w| w == [Generator::Annihilate, Generator::Create])
    }

    fn creators_annihilators(&self) -> (usize, usize) {
        let r = self.0.iter().filter(|g| **g == Generator::Create).count();
        (r, self.0.len() - r)
    }
}

impl FromIterator<Generator> for Word {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.0.iter().map(|g| g.symbol()).collect();
        f.write_str(&parts.join(" "))
    }
}

type Key = (usize, usize);

/// Exact linear combination of `(a†)^r a^s`, keyed by `(r, s)`.
///
/// Zero coefficients are never stored, so structural equality is equality
/// in the Weyl algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    terms: BTreeMap<(usize, usize), BigRational>,
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm::default()
    }

    pub fn identity() -> Self {
        NormalForm::monomial(0, 0, BigRational::one())
    }

    pub fn monomial(r: usize, s: usize, coeff: BigRational) -> Self {
        let mut nf = NormalForm::zero();
        nf.add_term(r, s, coeff);
        nf
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((usize, usize), BigRational)>,
    {
        let mut nf = NormalForm::zero();
        for ((r, s), c) in terms {
            nf.add_term(r, s, c);
        }
        nf
    }

    pub fn add_term(&mut self, r: usize, s: usize, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((r, s)).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(r, s));
        }
    }

    pub fn coeff(&self, r: usize, s: usize) -> BigRational {
        self.terms
            .get(&(r, s))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for (&(r, s), c) in &other.terms {
            out.add_term(r, s, c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> NormalForm {
        if factor.is_zero() {
            return NormalForm::zero();
        }
        NormalForm {
            terms: self.terms.iter().map(|(k, c)| (*k, c * factor)).collect(),
        }
    }

    /// Coefficients scaled to integers over one common denominator.
    fn integer_parts(&self) -> (Vec<(Key, BigInt)>, BigInt) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .terms
            .iter()
            .map(|(&k, c)| (k, c.numer() * (&den / c.denom())))
            .collect();
        (nums, den)
    }

    /// Normal form of the operator product `self · other`.
    pub fn multiply(&self, other: &NormalForm) -> NormalForm {
        let (lhs, dl) = self.integer_parts();
        let (rhs, dr) = other.integer_parts();
        let mut acc: HashMap<(usize, usize), BigInt> = HashMap::new();
        for ((r1, s1), c1) in &lhs {
            for ((r2, s2), c2) in &rhs {
                let c = c1 * c2;
                // a^{s1} (a†)^{r2} contracted i times, weight C(s1,i) r2^(i)
                let mut weight = BigInt::one();
                for i in 0..=(*s1).min(*r2) {
                    if i > 0 {
                        weight = weight * ((s1 - i + 1) * (r2 - i + 1)) / i;
                    }
                    *acc.entry((r1 + r2 - i, s1 + s2 - i)).or_default() += &c * &weight;
                }
            }
        }
        let den = dl * dr;
        let terms = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, BigRational::new(v, den.clone())))
            .collect();
        NormalForm { terms }
    }

    pub fn power(&self, n: usize) -> NormalForm {
        let mut acc = NormalForm::identity();
        for _ in 0..n {
            acc = acc.multiply(self);
        }
        acc
    }

    /// All distinct values of `r - s` among the stored terms.
    pub fn excesses(&self) -> Vec<i64> {
        let mut e: Vec<i64> = self
            .terms
            .keys()
            .map(|&(r, s)| r as i64 - s as i64)
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    /// Expands back into weighted words, one per monomial.
    pub fn to_words(&self) -> Vec<(BigRational, Word)> {
        self.terms
            .iter()
            .map(|(&(r, s), c)| (c.clone(), Word::monomial(r, s)))
            .collect()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(r, s), c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mut parts = Vec::new();
            let magnitude = c.abs();
            if !magnitude.is_one() || (r == 0 && s == 0) {
                parts.push(ratio_string(&magnitude));
            }
            for (symbol, power) in [("ad", r), ("a", s)] {
                match power {
                    0 => {}
                    1 => parts.push(symbol.to_string()),
                    p => parts.push(format!("{symbol}^{p}")),
                }
            }
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

/// Normal orders a word by exhaustive rewriting of `a a† -> a† a + 1`.
///
/// The leftmost inversion of every pending word is rewritten in each round,
/// and equal words are merged between rounds. Each step lowers the
/// inversion count, so the loop terminates.
pub fn normal_order_word(word: &Word) -> NormalForm {
    let mut pending: HashMap<Word, BigInt> = HashMap::new();
    pending.insert(word.clone(), BigInt::one());
    let mut out = NormalForm::zero();
    while !pending.is_empty() {
        let mut next: HashMap<Word, BigInt> = HashMap::new();
        for (w, c) in pending {
            match w.first_inversion() {
                None => {
                    let (r, s) = w.creators_annihilators();
                    out.add_term(r, s, BigRational::from_integer(c));
                }
                Some(i) => {
                    let mut swapped = w.0.clone();
                    swapped.swap(i, i + 1);
                    let mut contracted = w.0.clone();
                    contracted.drain(i..i + 2);
                    *next.entry(Word(swapped)).or_insert_with(BigInt::zero) += &c;
                    *next.entry(Word(contracted)).or_insert_with(BigInt::zero) += c;
                }
            }
        }
        pending = next;
    }
    out
}

/// Normal form of a weighted sum of words via the rewriting oracle.
pub fn normal_order_words(words: &[(BigRational, Word)]) -> NormalForm {
    words.iter().fold(NormalForm::zero(), |acc, (c, w)| {
        acc.add(&normal_order_word(w).scale(c))
    })
}

/// Homogeneous boson polynomial `(a†)^d Σ_k α_k (a†)^k a^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaSpec {
    d: usize,
    coeffs: BTreeMap<usize, BigRational>,
}

impl AlphaSpec {
    /// Zero coefficients are dropped; at least one must remain.
    pub fn new<I>(d: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, BigRational)>,
    {
        let mut map = BTreeMap::new();
        for (k, c) in coeffs {
            let entry = map.entry(k).or_insert_with(BigRational::zero);
            *entry += c;
        }
        map.retain(|_, c: &mut BigRational| !c.is_zero());
        if map.is_empty() {
            return Err(Error::InvalidAlpha("no nonzero coefficient".into()));
        }
        Ok(AlphaSpec { d, coeffs: map })
    }

    /// Convenience constructor from integer coefficients.
    pub fn with_integers(d: usize, coeffs: &[(usize, i64)]) -> Result<Self> {
        AlphaSpec::new(
            d,
            coeffs
                .iter()
                .map(|&(k, c)| (k, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Smallest `k` with `α_k ≠ 0`.
    pub fn n0(&self) -> usize {
        *self.coeffs.keys().next().expect("nonempty")
    }

    /// Largest `k` with `α_k ≠ 0`.
    pub fn n_max(&self) -> usize {
        *self.coeffs.keys().next_back().expect("nonempty")
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coeff(&self) -> &BigRational {
        self.coeffs.values().next_back().expect("nonempty")
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn to_normal_form(&self) -> NormalForm {
        NormalForm::from_terms(
            self.coeffs
                .iter()
                .map(|(&k, c)| ((self.d + k, k), c.clone())),
        )
    }

    /// `Σ_k α_k m^(k)` for an integer argument.
    pub fn factor_at(&self, m: i64) -> BigRational {
        self.coeffs
            .iter()
            .map(|(&k, c)| c * BigRational::from_integer(falling_factorial_int(m, k)))
            .sum()
    }

    /// `Σ_k α_k x^(k)` in binary64.
    pub fn factor_at_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(&k, c)| crate::arith::to_f64(c) * crate::arith::falling_factorial_f64(x, k))
            .sum()
    }
}

impl fmt::Display for AlphaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self
            .coeffs
            .iter()
            .map(|(k, c)| format!("{k}:{}", ratio_string(c)))
            .collect();
        write!(f, "d={} alpha={}", self.d, parts.join(","))
    }
}

/// Reads `(d, {α_k})` off a homogeneous normal form `Σ α_k (a†)^(d+k) a^k`.
pub fn extract_alpha(nf: &NormalForm) -> Result<AlphaSpec> {
    let excesses = nf.excesses();
    match excesses.as_slice() {
        [] => Err(Error::InvalidAlpha("zero operator".into())),
        [d] if *d < 0 => Err(Error::NegativeExcess(*d)),
        [d] => AlphaSpec::new(*d as usize, nf.terms().map(|(&(_, s), c)| (s, c.clone()))),
        [first, .., last] => Err(Error::MixedExcess {
            first: *first,
            second: *last,
        }),
    }
}
