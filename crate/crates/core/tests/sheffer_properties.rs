use bosonorder::arith::{binomial, rat};
use bosonorder::sheffer::{
    exp_linear_series, poly_pair, sheffer_coherent_egf, sheffer_operator, sheffer_parts, solve_g,
    solve_t, verify_sheffer,
};
use bosonorder::{CoherentLabel, Poly};
use num_complex::Complex64;
use num_rational::BigRational;

const ORDER: usize = 8;

fn pairs() -> Vec<(Vec<i64>, Vec<i64>)> {
    vec![
        (vec![1], vec![0]),
        (vec![0, 1], vec![0]),
        (vec![0, 0, 1], vec![0, 1]),
        (vec![1, 0, 1], vec![1]),
        (vec![0, 1, 1], vec![2, 0, 1]),
        (vec![0, 0, 0, 1], vec![0, 0, 1]),
    ]
}

/// T(λ + μ) = T(μ, T(λ)) coefficientwise in λ^m μ^j.
#[test]
fn flow_property() {
    for (qc, vc) in pairs() {
        let (q, _) = poly_pair(&qc, &vc).unwrap();
        let t = solve_t(&q, ORDER).unwrap();
        for j in 0..=ORDER {
            let inner = t.compose_into(t.slice(j));
            for m in 0..=ORDER - j {
                let c = BigRational::from_integer(binomial(m + j, j));
                assert_eq!(
                    *inner.slice(m),
                    t.slice(m + j).scale(&c),
                    "q={qc:?} m={m} j={j}"
                );
            }
        }
    }
}

/// g(λ + μ) = g(λ) g(μ, T(λ)) coefficientwise in λ^m μ^j.
#[test]
fn cocycle_property() {
    for (qc, vc) in pairs() {
        let (q, v) = poly_pair(&qc, &vc).unwrap();
        let t = solve_t(&q, ORDER).unwrap();
        let g = solve_g(&q, &v, ORDER).unwrap();
        for j in 0..=ORDER {
            let rhs = g.mul(&t.compose_into(g.slice(j)));
            for m in 0..=ORDER - j {
                let c = BigRational::from_integer(binomial(m + j, j));
                assert_eq!(
                    *rhs.slice(m),
                    g.slice(m + j).scale(&c),
                    "q={qc:?} v={vc:?} m={m} j={j}"
                );
            }
        }
    }
}

#[test]
fn translation_and_dilation() {
    // q = 1: T = x + λ
    let (q, v) = poly_pair(&[1], &[0]).unwrap();
    let t = solve_t(&q, ORDER).unwrap();
    assert_eq!(*t.slice(0), Poly::x());
    assert_eq!(*t.slice(1), Poly::one());
    assert!((2..=ORDER).all(|m| t.slice(m).is_zero()));
    let g = solve_g(&q, &v, ORDER).unwrap();
    assert!((1..=ORDER).all(|m| g.slice(m).is_zero()));

    // q = x: T = x e^λ
    let (q, _) = poly_pair(&[0, 1], &[0]).unwrap();
    let t = solve_t(&q, ORDER).unwrap();
    let mut fact = rat(1);
    for m in 0..=ORDER {
        if m > 0 {
            fact *= rat(m as i64);
        }
        assert_eq!(*t.slice(m), Poly::x().scale(&(rat(1) / &fact)));
    }
}

#[test]
fn exact_verification() {
    for (qc, vc) in pairs() {
        let (q, v) = poly_pair(&qc, &vc).unwrap();
        assert!(verify_sheffer(&q, &v, ORDER).unwrap(), "q={qc:?} v={vc:?}");
        let (q2, v2) = sheffer_parts(&sheffer_operator(&q, &v)).unwrap();
        assert_eq!((q2, v2), (q, v));
    }
}

#[test]
fn coherent_egf_of_displacement() {
    // q = 1, v = 0 gives exp(λ a) with <z|e^{λa}|z> = e^{λ z}
    let (q, v) = poly_pair(&[1], &[0]).unwrap();
    let z = CoherentLabel::new(0.7, -0.2).unwrap();
    let got = sheffer_coherent_egf(&q, &v, z, ORDER).unwrap();
    let want = exp_linear_series(z.z(), ORDER);
    for (a, b) in got.iter().zip(&want) {
        assert!((a - b).norm() < 1e-14);
    }
    let one = Complex64::new(1.0, 0.0);
    assert_eq!(got[0], one);
}
