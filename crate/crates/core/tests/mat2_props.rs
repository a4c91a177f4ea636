mod common;

use gamma0_core::mat2::{find_word, Letter, ProjMat, SpecialWord};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn canonicalization_is_idempotent(a in -60i64..60, b in -60i64..60, c in -60i64..60, d in -60i64..60, k in 1i64..7) {
        prop_assume!(a * d - b * c > 0);
        let m = ProjMat::lit(a * k, b * k, c * k, d * k);
        let again = ProjMat::new(m.a().clone(), m.b().clone(), m.c().clone(), m.d().clone()).unwrap();
        prop_assert_eq!(&again, &m);
        prop_assert_eq!(m, ProjMat::lit(a, b, c, d));
    }
}

#[test]
fn word_times_inverse_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [4u64, 11, 18, 20, 24] {
        let letters = common::letters_for(n);
        for _ in 0..60 {
            let w = common::random_word(&mut rng, &letters, 8);
            let both = w.concat(&w.inverse());
            assert!(both.eval().unwrap().is_identity(), "{w}");
        }
    }
}

#[test]
fn word_values_are_primitive_with_positive_det() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in [4u64, 11, 18, 20, 24] {
        let letters = common::letters_for(n);
        for _ in 0..60 {
            let m = common::random_word(&mut rng, &letters, 8).eval().unwrap();
            assert!(m.det() > BigInt::zero());
            let g = m.a().gcd(m.b()).gcd(m.c()).gcd(m.d());
            assert!(g.is_one(), "{m}");
        }
    }
}

#[test]
fn parenthesized_groups() {
    let w: SpecialWord = "(P1/2 H20)^2".parse().unwrap();
    let flat: SpecialWord = "P1/2 H20 P1/2 H20".parse().unwrap();
    assert_eq!(w, flat);
    let inv: SpecialWord = "(Q W4)^-1".parse().unwrap();
    assert_eq!(inv.eval().unwrap(), "W4^-1 Q".parse::<SpecialWord>().unwrap().eval().unwrap());
    assert!("(Q W4".parse::<SpecialWord>().is_err());
    assert!("Q) W4".parse::<SpecialWord>().is_err());
}

#[test]
fn found_words_evaluate_to_target() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let letters = vec![Letter::Q, Letter::W(18), Letter::J(18), Letter::A];
    for _ in 0..20 {
        let w = common::random_word(&mut rng, &letters, 3);
        let target = w.eval().unwrap();
        let found = find_word(&target, &letters, 6).unwrap().expect("a word of length <= 6 exists");
        assert_eq!(found.eval().unwrap(), target);
    }
}
