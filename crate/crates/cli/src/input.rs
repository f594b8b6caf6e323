use bosonorder::stirling::DEFAULT_MAX_TERMS;
use bosonorder::{extract_alpha, parse, AlphaSpec, CoherentLabel, Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub const MAX_TERMS_VAR: &str = "BOSONORDER_MAX_TERMS";

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn require<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| bad(format!("missing required flag --{flag}")))
}

/// `p`, `p/q`, or a plain decimal such as `-0.25`, read exactly.
pub fn rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || bad(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| err())?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let q = BigRational::new(digits, scale);
    Ok(if neg { -q } else { q })
}

pub fn float(s: &str, flag: &str) -> Result<f64> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(bad(format!("--{flag} must be a finite number, got {s:?}"))),
    }
}

/// `re` or `re,im`.
pub fn coherent(s: &str) -> Result<CoherentLabel> {
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (float(re, "z")?, float(im, "z")?),
        None => (float(s, "z")?, 0.0),
    };
    CoherentLabel::new(re, im)
}

/// Either `k:c,k:c,...` with the excess from `--d`, or an operator
/// expression whose normal form is homogeneous.
pub fn alpha(alpha: Option<&str>, d: Option<usize>, expr: Option<&str>) -> Result<AlphaSpec> {
    if let Some(e) = expr {
        return alpha_from_expr(e);
    }
    let text = require(alpha, "alpha")?;
    if text.contains('a') {
        return alpha_from_expr(text);
    }
    let mut pairs = Vec::new();
    for item in text.split(',') {
        let (k, c) = item
            .split_once(':')
            .ok_or_else(|| bad(format!("expected k:coeff in --alpha, got {item:?}")))?;
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad index {k:?} in --alpha")))?;
        pairs.push((k, rational(c)?));
    }
    AlphaSpec::new(d.unwrap_or(0), pairs)
}

fn alpha_from_expr(e: &str) -> Result<AlphaSpec> {
    extract_alpha(&parse(e)?.evaluate())
}

/// Cap on series lengths, taken from the environment when set.
pub fn max_terms() -> Result<usize> {
    match std::env::var(MAX_TERMS_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(bad(format!(
                "{MAX_TERMS_VAR} must be a positive integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(DEFAULT_MAX_TERMS),
    }
}

pub fn positive_eps(eps: Option<f64>) -> Result<f64> {
    let eps = eps.unwrap_or(1e-12);
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(bad(format!("--eps must be positive, got {eps}")));
    }
    Ok(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bosonorder::arith::ratio;

    #[test]
    fn rationals() {
        assert_eq!(rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(rational("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(rational("7").unwrap(), ratio(7, 1));
        assert_eq!(rational(".5").unwrap(), ratio(1, 2));
        assert!(rational("1/0").is_err());
        assert!(rational("1e3").is_err());
        assert!(rational("-").is_err());
    }

    #[test]
    fn alpha_both_ways() {
        let a = alpha(Some("2:1"), Some(0), None).unwrap();
        let b = alpha(Some("ad^2 a^2"), None, None).unwrap();
        assert_eq!(a, b);
        let c = alpha(None, None, Some("ad a + ad")).unwrap_err();
        assert!(matches!(c, Error::MixedExcess { .. }));
    }

    #[test]
    fn coherent_labels() {
        assert_eq!(coherent("0.5,-1").unwrap().z().im, -1.0);
        assert_eq!(coherent("2").unwrap().z().im, 0.0);
        assert!(coherent("x").is_err());
    }
}
