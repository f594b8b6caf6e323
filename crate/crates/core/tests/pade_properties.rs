use bosonorder::arith::{ratio, to_f64};
use bosonorder::pade::{pade_approximant, pade_approximant_f64, pade_eval};
use bosonorder::{Error, Poly};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn series_of(num: &[BigRational], den: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = num.get(k).cloned().unwrap_or_else(BigRational::zero);
        for j in 1..=k.min(den.len() - 1) {
            acc -= &den[j] * &out[k - j];
        }
        out.push(acc);
    }
    out
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| ratio(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn taylor_match(series in prop::collection::vec(small_rational(), 7), m in 0usize..4, n in 0usize..4) {
        let series = &series[..m + n + 1];
        match pade_approximant(series, m, n) {
            Ok(p) => {
                prop_assert_eq!(p.denominator()[0].clone(), BigRational::one());
                prop_assert_eq!(p.taylor(m + n), series.to_vec());
            }
            Err(Error::SingularSystem { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn rational_exactness(
        num in prop::collection::vec(small_rational(), 1..4),
        tail in prop::collection::vec(small_rational(), 0..3),
    ) {
        let mut den = vec![BigRational::one()];
        den.extend(tail);
        let (num, den) = (Poly::new(num), Poly::new(den));
        let m = num.degree().unwrap_or(0);
        let n = den.degree().unwrap_or(0);
        let series = series_of(num.coeffs(), den.coeffs(), m + n + 1);
        match pade_approximant(&series, m, n) {
            Ok(p) => {
                // equal as rational functions: P Q' = P' Q
                let got = &Poly::new(p.numerator().to_vec()) * &den;
                let want = &num * &Poly::new(p.denominator().to_vec());
                prop_assert_eq!(got, want);
            }
            // a common factor of P and Q drops the rank
            Err(Error::SingularSystem { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn coprime_rational_is_recovered_verbatim() {
    // (1 + 2λ - λ^2) / (1 - λ/3 + λ^2/5)
    let num = vec![ratio(1, 1), ratio(2, 1), ratio(-1, 1)];
    let den = vec![ratio(1, 1), ratio(-1, 3), ratio(1, 5)];
    let series = series_of(&num, &den, 5);
    let p = pade_approximant(&series, 2, 2).unwrap();
    assert_eq!(p.numerator(), num.as_slice());
    assert_eq!(p.denominator(), den.as_slice());
    let exact = pade_eval(&p, 0.25).unwrap();
    let fl = pade_approximant_f64(&series.iter().map(to_f64).collect::<Vec<_>>(), 2, 2).unwrap();
    assert!(fl.residual < 1e-12);
    assert!((fl.eval(0.25).unwrap() - exact).abs() < 1e-12);
}

#[test]
fn pole_is_reported() {
    // 1 / (1 - 2λ) has its pole at 1/2
    let series: Vec<BigRational> = (0..2).map(|k| ratio(1 << k, 1)).collect();
    let p = pade_approximant(&series, 0, 1).unwrap();
    assert!(matches!(
        pade_eval(&p, 0.5),
        Err(Error::PoleProximity { .. })
    ));
}
