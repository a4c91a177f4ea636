mod common;

use gamma0_core::modgroup::{
    index_gamma0, index_gamma0_formula, psl2_word, schreier_generators, todd_coxeter, verify_generates_flavor,
    Presentation, SubgroupFlavor, TcOutcome, S, T,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn index_enumeration_matches_formula() {
    for n in 1..=100 {
        assert_eq!(index_gamma0(n), index_gamma0_formula(n), "N = {n}");
    }
}

#[test]
fn schreier_round_trip_and_relators() {
    for n in 1..=30u64 {
        for flavor in [SubgroupFlavor::Gamma0(n), SubgroupFlavor::Gamma1(n)] {
            let gens = schreier_generators(flavor).unwrap();
            let rep = verify_generates_flavor(flavor, &gens, None);
            assert!(rep.generates, "{flavor}: {}", rep.diagnostic);
            let words: Vec<Vec<u8>> = gens.iter().map(|g| psl2_word(g).unwrap().letters()).collect();
            let TcOutcome::Complete(table) = todd_coxeter(&Presentation::psl2(), &words, 100_000) else {
                panic!("enumeration for {flavor} did not finish");
            };
            for i in 0..table.len() {
                assert_eq!(table.apply(i, &[S, S]), i);
                assert_eq!(table.apply(i, &[S, T, S, T, S, T]), i);
            }
        }
    }
}

#[test]
fn psl2_words_multiply_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..500 {
        let n = [1u64, 5, 11, 18, 24][i % 5];
        let m = common::random_gamma0(&mut rng, n, 40);
        let back = psl2_word(&m).unwrap().product();
        assert!(back == m || back == m.negate(), "{m} -> {back}");
    }
}
