use bosonorder::arith::rat;
use bosonorder::fock::vacuum_expectation;
use bosonorder::{normal_order_word, Generator, NormalForm, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 0..=max_len).prop_map(|bits| {
        bits.into_iter()
            .map(|b| {
                if b {
                    Generator::Create
                } else {
                    Generator::Annihilate
                }
            })
            .collect()
    })
}

/// Normal form of a word built with the contraction product, letter by letter.
fn via_multiply(w: &Word) -> NormalForm {
    w.letters().iter().fold(NormalForm::identity(), |acc, g| {
        let letter = match g {
            Generator::Create => NormalForm::monomial(1, 0, rat(1)),
            Generator::Annihilate => NormalForm::monomial(0, 1, rat(1)),
        };
        acc.multiply(&letter)
    })
}

proptest! {
    #[test]
    fn excess_is_conserved(w in word(12)) {
        let nf = normal_order_word(&w);
        for (&(r, s), _) in nf.terms() {
            prop_assert_eq!(r as i64 - s as i64, w.excess());
        }
    }

    #[test]
    fn multiply_agrees_with_rewriting(w in word(10)) {
        prop_assert_eq!(via_multiply(&w), normal_order_word(&w));
    }

    #[test]
    fn vacuum_projection(w in word(10)) {
        let nf = normal_order_word(&w);
        prop_assert_eq!(nf.coeff(0, 0), BigRational::from_integer(vacuum_expectation(&w)));
    }

    #[test]
    fn word_homomorphism(u in word(5), v in word(5)) {
        let joined = normal_order_word(&u.concat(&v));
        let product = normal_order_word(&u).multiply(&normal_order_word(&v));
        prop_assert_eq!(joined, product);
    }

    #[test]
    fn coefficients_are_nonnegative_integers(w in word(10)) {
        for (_, c) in normal_order_word(&w).terms() {
            prop_assert!(c.is_integer() && !c.is_negative());
        }
    }

    #[test]
    fn power_agrees_with_repeated_word(w in word(4), n in 0usize..4) {
        let repeated = (0..n).fold(Word::empty(), |acc, _| acc.concat(&w));
        prop_assert_eq!(normal_order_word(&w).power(n), normal_order_word(&repeated));
    }
}

#[test]
fn number_operator_powers_by_rewriting() {
    let n = Word::new(vec![Generator::Create, Generator::Annihilate]);
    let nf = normal_order_word(&n);
    let mut word = Word::empty();
    for k in 0..=7 {
        assert_eq!(normal_order_word(&word), nf.power(k));
        word = word.concat(&n);
    }
}

#[test]
fn vacuum_of_balanced_word() {
    // <0| a^3 ad^3 |0> = 3!
    let w = Word::monomial(0, 3).concat(&Word::monomial(3, 0));
    assert_eq!(vacuum_expectation(&w), BigInt::from(6));
}
