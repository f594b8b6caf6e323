use bosonorder::arith::from_f64;
use bosonorder::genfun::{
    coherent_matrix_element_exp, egf_bell_closed, egf_coefficients, egf_d0_dobinski_capped,
    egf_truncated, DEFAULT_EGF_TRUNCATION,
};
use bosonorder::genstirling::gen_dobinski_eval_capped;
use bosonorder::pade::{pade_approximant, pade_eval};
use bosonorder::sheffer::{
    sheffer_coherent_egf, sheffer_parts, solve_g, solve_t, verify_sheffer, MAX_VERIFY_DEGREE,
    MAX_VERIFY_ORDER,
};
use bosonorder::stirling::{dobinski_eval_capped, stirling2_recurrence};
use bosonorder::{
    parse, BellPolynomial, EgfQuery, Error, GenStirlingTable, Poly, Result, StirlingTable,
};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::input::{self, require};
use crate::record::{exact, exact_int, float, Mode, Record};
use crate::{EgfVariant, NumericKind, Params, TableKind};

const MAX_TABLE_N: usize = 500;
const MAX_GEN_TABLE_N: usize = 40;
const DEFAULT_SHEFFER_ORDER: usize = 6;

fn record(
    command: &str,
    params: &Params,
    extra: &[(&str, &str)],
    mode: Mode,
    result: Value,
) -> Record {
    let mut inputs: Vec<(String, String)> = extra
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    inputs.extend(params.echo());
    Record {
        command: command.to_string(),
        inputs,
        mode,
        result,
    }
}

fn capped(n: usize, cap: usize) -> Result<usize> {
    if n > cap {
        return Err(Error::InvalidInput(format!(
            "--n must be at most {cap}, got {n}"
        )));
    }
    Ok(n)
}

fn poly_value(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(exact).collect())
}

pub fn order(p: &Params) -> Result<Record> {
    let text = require(p.expr.as_deref(), "expr")?;
    let nf = parse(text)?.evaluate();
    let mut terms: Vec<_> = nf.terms().collect();
    terms.sort_by_key(|(&(r, s), _)| (r + s, r));
    let result = terms
        .into_iter()
        .map(|(&(r, s), c)| json!({ "r": r, "s": s, "coeff": exact(c) }))
        .collect();
    Ok(record("order", p, &[], Mode::Exact, Value::Array(result)))
}

pub fn tables(kind: TableKind, p: &Params) -> Result<Record> {
    let (name, result) = match kind {
        TableKind::Stirling => ("stirling", stirling_table(p)?),
        TableKind::Bell => {
            let n = capped(require(p.n, "n")?, MAX_TABLE_N)?;
            let t = StirlingTable::new(n);
            (
                "bell",
                Value::Array((0..=n).map(|i| exact_int(&t.bell(i))).collect()),
            )
        }
        TableKind::Genstirling => ("genstirling", gen_table(p)?),
        TableKind::Genbell => {
            let n = capped(require(p.n, "n")?, MAX_GEN_TABLE_N)?;
            let alpha = input::alpha(p.alpha.as_deref(), p.d, p.expr.as_deref())?;
            let x = match &p.x {
                Some(s) => input::rational(s)?,
                None => BigRational::from_integer(1.into()),
            };
            let t = GenStirlingTable::by_recurrence(&alpha, n);
            let rows = (0..=n)
                .map(|i| json!({ "n": i, "value": exact(&t.bell_polynomial(i, &x)) }))
                .collect();
            ("genbell", Value::Array(rows))
        }
    };
    Ok(record("tables", p, &[("kind", name)], Mode::Exact, result))
}

fn stirling_table(p: &Params) -> Result<Value> {
    let n = capped(require(p.n, "n")?, MAX_TABLE_N)?;
    if let Some(k) = p.k {
        return Ok(json!({ "value": exact_int(&stirling2_recurrence(n, k)?) }));
    }
    let t = StirlingTable::new(n);
    let rows = (1..=n)
        .map(|i| Value::Array(t.row(i)[1..].iter().map(exact_int).collect()))
        .collect();
    Ok(Value::Array(rows))
}

fn gen_table(p: &Params) -> Result<Value> {
    let n = capped(require(p.n, "n")?, MAX_GEN_TABLE_N)?;
    let alpha = input::alpha(p.alpha.as_deref(), p.d, p.expr.as_deref())?;
    let t = GenStirlingTable::by_recurrence(&alpha, n);
    if let Some(k) = p.k {
        return Ok(json!({ "value": exact(&t.get(n, k)) }));
    }
    let rows = (1..=n)
        .map(|i| {
            let entries: Map<String, Value> = t
                .row_entries(i)
                .iter()
                .map(|(k, v)| (k.to_string(), exact(v)))
                .collect();
            json!({ "n": i, "entries": entries })
        })
        .collect();
    Ok(json!({ "alpha": alpha.to_string(), "rows": Value::Array(rows) }))
}

pub fn numeric(kind: NumericKind, variant: Option<EgfVariant>, p: &Params) -> Result<Record> {
    if variant.is_some() && kind != NumericKind::Egf {
        return Err(Error::InvalidInput("only `egf` takes a variant".into()));
    }
    match kind {
        NumericKind::Dobinski => dobinski(p),
        NumericKind::Egf => egf(require(variant, "variant (closed|truncated|d0)")?, p),
        NumericKind::Coherent => coherent(p),
        NumericKind::Pade => pade(p),
        NumericKind::Sheffer => sheffer(p),
    }
}

fn lambda(p: &Params) -> Result<f64> {
    input::float(require(p.lambda.as_deref(), "lambda")?, "lambda")
}

fn x_float(p: &Params) -> Result<f64> {
    input::float(require(p.x.as_deref(), "x")?, "x")
}

fn has_alpha(p: &Params) -> bool {
    p.alpha.is_some() || p.expr.is_some()
}

fn dobinski(p: &Params) -> Result<Record> {
    let n = capped(require(p.n, "n")?, MAX_GEN_TABLE_N)?;
    let xs = require(p.x.as_deref(), "x")?;
    let x = input::float(xs, "x")?;
    let xq = input::rational(xs)?;
    let eps = input::positive_eps(p.eps)?;
    let max_terms = input::max_terms()?;
    let (sum, exact_value, alpha) = if has_alpha(p) {
        let alpha = input::alpha(p.alpha.as_deref(), p.d, p.expr.as_deref())?;
        let sum = gen_dobinski_eval_capped(&alpha, n, x, eps, max_terms)?;
        let t = GenStirlingTable::by_recurrence(&alpha, n);
        (sum, t.bell_polynomial(n, &xq), Some(alpha.to_string()))
    } else {
        let sum = dobinski_eval_capped(n, x, eps, max_terms)?;
        (sum, BellPolynomial::new(n).eval(&xq), None)
    };
    let mut result = Map::new();
    if let Some(a) = alpha {
        result.insert("alpha".into(), Value::String(a));
    }
    result.insert("value".into(), float(sum.value));
    result.insert("exact".into(), exact(&exact_value));
    result.insert("terms".into(), json!(sum.terms));
    result.insert("eps".into(), float(sum.eps));
    result.insert("max_terms".into(), json!(max_terms));
    Ok(record(
        "numeric",
        p,
        &[("kind", "dobinski")],
        Mode::Float,
        Value::Object(result),
    ))
}

fn egf(variant: EgfVariant, p: &Params) -> Result<Record> {
    let lambda = lambda(p)?;
    let x = x_float(p)?;
    let (name, result) = match variant {
        EgfVariant::Closed => (
            "closed",
            json!({ "value": float(egf_bell_closed(lambda, x)?) }),
        ),
        EgfVariant::Truncated => {
            let alpha = input::alpha(p.alpha.as_deref(), p.d, p.expr.as_deref())?;
            let truncation = p.trunc.unwrap_or(DEFAULT_EGF_TRUNCATION);
            let v = egf_truncated(&EgfQuery {
                alpha,
                lambda,
                x,
                truncation,
            })?;
            (
                "truncated",
                json!({ "value": float(v), "trunc": truncation }),
            )
        }
        EgfVariant::D0 => {
            let alpha = input::alpha(p.alpha.as_deref(), p.d, p.expr.as_deref())?;
            let eps = input::positive_eps(p.eps)?;
            let max_terms = input::max_terms()?;
            let s = egf_d0_dobinski_capped(&alpha, lambda, x, eps, max_terms)?;
            (
                "d0",
                json!({
                    "value": float(s.value),
                    "terms": s.terms,
                    "eps": float(s.eps),
                    "max_terms": max_terms,
                }),
            )
        }
    };
    Ok(record(
        "numeric",
        p,
        &[("kind", "egf"), ("variant", name)],
        Mode::Float,
        result,
    ))
}

fn coherent(p: &Params) -> Result<Record> {
    let alpha = input::alpha(p.alpha.as_deref(), p.d, p.expr.as_deref())?;
    let lambda = lambda(p)?;
    let z = input::coherent(require(p.z.as_deref(), "z")?)?;
    let truncation = p.trunc.unwrap_or(DEFAULT_EGF_TRUNCATION);
    let v = coherent_matrix_element_exp(&alpha, lambda, z, truncation)?;
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Overflow("coherent matrix element"));
    }
    let result = json!({ "re": float(v.re), "im": float(v.im), "trunc": truncation });
    Ok(record(
        "numeric",
        p,
        &[("kind", "coherent")],
        Mode::Float,
        result,
    ))
}

fn pade(p: &Params) -> Result<Record> {
    let alpha = input::alpha(p.alpha.as_deref(), p.d, p.expr.as_deref())?;
    let lambda = lambda(p)?;
    let x = from_f64(x_float(p)?).expect("finite");
    let m = require(p.m, "m")?;
    let n = p.pade_n.unwrap_or(m);
    if m + n > bosonorder::genfun::MAX_EGF_TRUNCATION {
        return Err(Error::InvalidInput(format!(
            "m + n must be at most {}",
            bosonorder::genfun::MAX_EGF_TRUNCATION
        )));
    }
    let series = egf_coefficients(&alpha, &x, m + n);
    let approx = pade_approximant(&series, m, n)?;
    let value = pade_eval(&approx, lambda)?;
    let result = json!({
        "value": float(value),
        "m": m,
        "n": n,
        "trunc": m + n,
        "numerator": approx.numerator().iter().map(exact).collect::<Vec<_>>(),
        "denominator": approx.denominator().iter().map(exact).collect::<Vec<_>>(),
    });
    Ok(record(
        "numeric",
        p,
        &[("kind", "pade")],
        Mode::Float,
        result,
    ))
}

fn sheffer(p: &Params) -> Result<Record> {
    let text = require(p.expr.as_deref(), "expr")?;
    let (q, v) = sheffer_parts(&parse(text)?.evaluate())?;
    let order = p.order.unwrap_or(DEFAULT_SHEFFER_ORDER);
    let t = solve_t(&q, order)?;
    let g = solve_g(&q, &v, order)?;
    let checkable = order <= MAX_VERIFY_ORDER
        && [&q, &v]
            .iter()
            .all(|s| s.degree().is_none_or(|d| d <= MAX_VERIFY_DEGREE));
    let verified = if checkable {
        Value::Bool(verify_sheffer(&q, &v, order)?)
    } else {
        Value::Null
    };
    let mut result = Map::new();
    result.insert("q".into(), poly_value(q.poly()));
    result.insert("v".into(), poly_value(v.poly()));
    result.insert("order".into(), json!(order));
    result.insert(
        "T".into(),
        Value::Array(t.slices().iter().map(poly_value).collect()),
    );
    result.insert(
        "g".into(),
        Value::Array(g.slices().iter().map(poly_value).collect()),
    );
    result.insert("verified".into(), verified);
    let mut mode = Mode::Exact;
    if let Some(zs) = &p.z {
        let z = input::coherent(zs)?;
        let series = sheffer_coherent_egf(&q, &v, z, order)?;
        if series
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::Overflow("coherent Sheffer series"));
        }
        let coherent = series
            .iter()
            .map(|c| json!({ "re": float(c.re), "im": float(c.im) }))
            .collect();
        result.insert("coherent".into(), Value::Array(coherent));
        mode = Mode::Float;
    }
    Ok(record(
        "numeric",
        p,
        &[("kind", "sheffer")],
        mode,
        Value::Object(result),
    ))
}
