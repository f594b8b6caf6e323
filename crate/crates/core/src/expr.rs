//! Surface syntax for ladder-operator expressions.
//!
//! ```text
//! expr     := ["-"] term (("+" | "-") term)*
//! term     := [rational] factor+
//! factor   := base ["^" uint]
//! base     := "a" | "ad" | "a†" | "(" expr ")"
//! rational := uint ["/" uint]
//! ```
//!
//! Juxtaposed factors multiply in written order, so `"a ad"` is `a a†`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::ratio_string;
use crate::weyl::{Generator, NormalForm, Word};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at position {position}: expected {}, found {found}", expected.join(" | "))]
pub struct SyntaxError {
    /// Character offset into the input.
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigRational,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub base: Base,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    Gen(Generator),
    Group(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Gen(Generator),
    Int(BigInt),
    Plus,
    Minus,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Gen(g) => format!("'{}'", g.symbol()),
            Tok::Int(n) => format!("'{n}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn err(position: usize, expected: &[&str], found: impl Into<String>) -> SyntaxError {
    SyntaxError {
        position,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found: found.into(),
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((start, tok));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(digits.parse().expect("ascii digits"))));
        } else if c.is_alphabetic() || c == '†' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '†') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let g = match word.as_str() {
                "a" => Generator::Annihilate,
                "ad" | "a†" => Generator::Create,
                _ => return Err(err(start, &["'a'", "'ad'"], format!("'{word}'"))),
            };
            out.push((start, Tok::Gen(g)));
        } else {
            return Err(err(
                start,
                &["operator", "number", "'a'", "'ad'"],
                format!("'{c}'"),
            ));
        }
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> SyntaxError {
        err(self.offset(), expected, self.peek().describe())
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut negate = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negate = true;
        }
        let mut terms = vec![self.term(negate)?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term(false)?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(self.term(true)?);
                }
                _ => return Ok(Expr { terms }),
            }
        }
    }

    fn term(&mut self, negate: bool) -> Result<Term, SyntaxError> {
        let mut coeff = BigRational::one();
        if let Tok::Int(_) = self.peek() {
            coeff = self.rational()?;
        }
        if negate {
            coeff = -coeff;
        }
        let mut factors = Vec::new();
        while matches!(self.peek(), Tok::Gen(_) | Tok::LParen) {
            factors.push(self.factor()?);
        }
        if factors.is_empty() {
            return Err(self.unexpected(&["'a'", "'ad'", "'('"]));
        }
        Ok(Term { coeff, factors })
    }

    fn rational(&mut self) -> Result<BigRational, SyntaxError> {
        let Tok::Int(numer) = self.bump() else {
            unreachable!("caller checked for an integer")
        };
        if *self.peek() != Tok::Slash {
            return Ok(BigRational::from_integer(numer));
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Int(d) if d.is_zero() => Err(err(at, &["nonzero denominator"], "'0'")),
            Tok::Int(d) => Ok(BigRational::new(numer, d)),
            other => Err(err(at, &["denominator"], other.describe())),
        }
    }

    fn factor(&mut self) -> Result<Factor, SyntaxError> {
        let base = match self.bump() {
            Tok::Gen(g) => Base::Gen(g),
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected(&["')'", "'+'", "'-'"]));
                }
                self.bump();
                Base::Group(Box::new(inner))
            }
            _ => unreachable!("caller checked for a factor start"),
        };
        let mut power = 1;
        if *self.peek() == Tok::Caret {
            self.bump();
            let at = self.offset();
            power = match self.bump() {
                Tok::Int(n) => u32::try_from(&n)
                    .map_err(|_| err(at, &["exponent below 2^32"], format!("'{n}'")))?,
                other => return Err(err(at, &["exponent"], other.describe())),
            };
        }
        Ok(Factor { base, power })
    }
}

pub fn parse(input: &str) -> Result<Expr, SyntaxError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0 };
    if *p.peek() == Tok::End {
        return Err(p.unexpected(&["expression"]));
    }
    let expr = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["'+'", "'-'", "end of input"]));
    }
    Ok(expr)
}

impl Expr {
    /// Normal form computed with the closed product formula.
    pub fn evaluate(&self) -> NormalForm {
        self.terms.iter().fold(NormalForm::zero(), |acc, t| {
            let product = t
                .factors
                .iter()
                .fold(NormalForm::identity(), |p, f| p.multiply(&f.evaluate()));
            acc.add(&product.scale(&t.coeff))
        })
    }

    /// Expands into weighted words; normal ordering the result with the
    /// rewriting oracle gives the same operator as [`Expr::evaluate`].
    pub fn flatten(&self) -> Vec<(BigRational, Word)> {
        let mut out = Vec::new();
        for t in &self.terms {
            let mut partial = vec![(t.coeff.clone(), Word::empty())];
            for f in &t.factors {
                let expansion = f.flatten();
                partial = partial
                    .iter()
                    .flat_map(|(c, w)| expansion.iter().map(move |(c2, w2)| (c * c2, w.concat(w2))))
                    .collect();
            }
            out.extend(partial);
        }
        out
    }
}

impl Factor {
    fn evaluate(&self) -> NormalForm {
        let base = match &self.base {
            Base::Gen(Generator::Create) => NormalForm::monomial(1, 0, BigRational::one()),
            Base::Gen(Generator::Annihilate) => NormalForm::monomial(0, 1, BigRational::one()),
            Base::Group(e) => e.evaluate(),
        };
        base.power(self.power as usize)
    }

    fn flatten(&self) -> Vec<(BigRational, Word)> {
        let base = match &self.base {
            Base::Gen(g) => vec![(BigRational::one(), Word::new(vec![*g]))],
            Base::Group(e) => e.flatten(),
        };
        let mut acc = vec![(BigRational::one(), Word::empty())];
        for _ in 0..self.power {
            acc = acc
                .iter()
                .flat_map(|(c, w)| base.iter().map(move |(c2, w2)| (c * c2, w.concat(w2))))
                .collect();
        }
        acc
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let negative = t.coeff.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = t.coeff.abs();
            if !magnitude.is_one() {
                write!(f, "{} ", ratio_string(&magnitude))?;
            }
            let factors: Vec<String> = t.factors.iter().map(|x| x.to_string()).collect();
            f.write_str(&factors.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            Base::Gen(g) => f.write_str(g.symbol())?,
            Base::Group(e) => write!(f, "({e})")?,
        }
        if self.power != 1 {
            write!(f, "^{}", self.power)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::weyl::normal_order_words;
    use Generator::{Annihilate as A, Create as C};

    fn gen(g: Generator) -> Factor {
        Factor {
            base: Base::Gen(g),
            power: 1,
        }
    }

    #[test]
    fn number_operator() {
        let e = parse("ad a").unwrap();
        assert_eq!(
            e,
            Expr {
                terms: vec![Term {
                    coeff: rat(1),
                    factors: vec![gen(C), gen(A)]
                }]
            }
        );
        assert_eq!(parse("a† a").unwrap(), e);
    }

    #[test]
    fn grouped_power() {
        let e = parse("(ad a)^2").unwrap();
        assert_eq!(e.terms.len(), 1);
        let f = &e.terms[0].factors[0];
        assert_eq!(f.power, 2);
        assert_eq!(f.base, Base::Group(Box::new(parse("ad a").unwrap())));
        assert_eq!(e.flatten(), vec![(rat(1), Word::new(vec![C, A, C, A]))]);
    }

    #[test]
    fn two_terms() {
        let e = parse("2 ad^2 a^2 + ad a").unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[0].coeff, rat(2));
        assert_eq!(e.terms[1].coeff, rat(1));
        assert_eq!(e.terms[0].factors[0].power, 2);
    }

    #[test]
    fn signs_and_rationals() {
        let e = parse("-3/6 a - 2 ad + 0 a").unwrap();
        let coeffs: Vec<_> = e.terms.iter().map(|t| t.coeff.clone()).collect();
        assert_eq!(coeffs, vec![ratio(-1, 2), rat(-2), rat(0)]);
        assert_eq!(e.to_string(), "-1/2 a - 2 ad + 0 a");
    }

    #[test]
    fn evaluation_matches_oracle() {
        for src in ["a a ad ad", "(ad a)^3", "a ad", "2 (a + ad)^3 - 1/3 a^2 ad"] {
            let e = parse(src).unwrap();
            assert_eq!(e.evaluate(), normal_order_words(&e.flatten()), "{src}");
        }
    }

    #[test]
    fn syntax_errors() {
        let e = parse("ad +").unwrap_err();
        assert_eq!(e.position, 4);
        assert!(e.expected.contains(&"'a'".to_string()));
        let e = parse("b").unwrap_err();
        assert_eq!(e.position, 0);
        assert!(parse("").is_err());
        assert!(parse("(ad a").is_err());
        assert!(parse("2").is_err());
        assert!(parse("1/0 a").is_err());
        assert!(parse("a ^ x").is_err());
        assert!(parse("a)").is_err());
        assert!(parse("a # b").is_err());
    }

    #[test]
    fn print_round_trip() {
        for src in [
            "a ad",
            "(ad a)^3",
            "2 ad^2 a^2 + ad a",
            "-(a - 2/3 ad)^0 a",
            "a^1",
        ] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{src}");
        }
    }
}
