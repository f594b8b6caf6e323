use bosonorder::arith::{from_f64, to_f64};
use bosonorder::genstirling::{
    connection_identity_check, gen_dobinski_eval, gen_stirling_explicit, GenStirlingTable,
};
use bosonorder::{extract_alpha, normal_order_word, AlphaSpec, Generator, StirlingTable, Word};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn suite() -> Vec<AlphaSpec> {
    [
        (0, vec![(1, 1)]),
        (0, vec![(2, 1)]),
        (1, vec![(1, 1)]),
        (1, vec![(2, 1)]),
        (2, vec![(1, 1)]),
        (0, vec![(1, 1), (2, 1)]),
    ]
    .into_iter()
    .map(|(d, c)| AlphaSpec::with_integers(d, &c).unwrap())
    .collect()
}

#[test]
fn triple_agreement() {
    for alpha in suite() {
        let rec = GenStirlingTable::by_recurrence(&alpha, 5);
        let exp = GenStirlingTable::by_explicit(&alpha, 5);
        let op = GenStirlingTable::by_operator(&alpha, 5).unwrap();
        assert_eq!(rec, exp, "{alpha}");
        assert_eq!(rec, op, "{alpha}");
    }
}

#[test]
fn reduction_to_classical() {
    let alpha = AlphaSpec::with_integers(0, &[(1, 1)]).unwrap();
    let general = GenStirlingTable::by_recurrence(&alpha, 12);
    let classical = StirlingTable::new(12);
    for n in 0..=12 {
        for k in 0..=n {
            assert_eq!(
                general.get(n, k),
                BigRational::from_integer(classical.get(n, k))
            );
        }
    }
}

#[test]
fn summation_range() {
    for alpha in suite() {
        let table = GenStirlingTable::by_recurrence(&alpha, 5);
        for n in 1..=5 {
            for k in 0..alpha.n0() {
                assert!(table.get(n, k).is_zero());
                assert!(gen_stirling_explicit(&alpha, n, k).is_zero());
            }
            let top = n * alpha.n_max();
            assert!(table.get(n, top + 1).is_zero());
            assert!(gen_stirling_explicit(&alpha, n, top + 1).is_zero());
            assert!(gen_stirling_explicit(&alpha, n, top + 3).is_zero());
        }
    }
}

#[test]
fn dobinski_agreement() {
    for alpha in suite() {
        let table = GenStirlingTable::by_recurrence(&alpha, 5);
        for n in 0..=5 {
            for x in [0.5, 1.0, 2.0] {
                let exact = to_f64(&table.bell_polynomial(n, &from_f64(x).unwrap()));
                let approx = gen_dobinski_eval(&alpha, n, x, 1e-12).unwrap().value;
                assert!(
                    (approx - exact).abs() <= 1e-9 * exact.abs(),
                    "{alpha} n={n} x={x}: {approx} vs {exact}"
                );
            }
        }
    }
}

#[test]
fn connection_identity() {
    for alpha in suite() {
        for n in 1..=6 {
            assert!(connection_identity_check(&alpha, n), "{alpha} n={n}");
        }
    }
}

fn homogeneous_word() -> impl Strategy<Value = Word> {
    // ad^d (ad^r a^s) blocks: the excess is kept nonnegative by construction
    (
        0usize..3,
        prop::collection::vec((0usize..3, 0usize..3), 1..3),
    )
        .prop_map(|(d, blocks)| {
            let mut letters = vec![Generator::Create; d];
            let mut balance = 0i64;
            for (r, s) in blocks {
                letters.extend(std::iter::repeat_n(Generator::Create, r));
                letters.extend(std::iter::repeat_n(Generator::Annihilate, s));
                balance += r as i64 - s as i64;
            }
            if balance < 0 {
                letters.splice(
                    0..0,
                    std::iter::repeat_n(Generator::Create, (-balance) as usize),
                );
            }
            Word::new(letters)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Words give integer alphas, hence nonnegative integer tables.
    #[test]
    fn integrality_for_words(w in homogeneous_word()) {
        let nf = normal_order_word(&w);
        let alpha = extract_alpha(&nf).unwrap();
        let table = GenStirlingTable::by_recurrence(&alpha, 4);
        for n in 0..=4 {
            for v in table.row(n) {
                prop_assert!(v.is_integer() && !v.is_negative());
            }
        }
        let op = GenStirlingTable::by_operator(&alpha, 3).unwrap();
        let exp = GenStirlingTable::by_explicit(&alpha, 3);
        let rec = GenStirlingTable::by_recurrence(&alpha, 3);
        prop_assert_eq!(&op, &rec);
        prop_assert_eq!(&exp, &rec);
    }
}
