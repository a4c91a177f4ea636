use std::collections::BTreeMap;

use gamma0_core::groupring::{GaussRat, SymbolicCoeff};
use gamma0_core::groupring::{
    check_certificate, hecke_symbol, shipped_certificates, Certificate, CertificateMeta, GroupRingElem, Relation,
};
use gamma0_core::mat2::ProjMat;
use num_complex::Complex64;
use proptest::prelude::*;

fn mats() -> Vec<ProjMat> {
    vec![
        ProjMat::identity(),
        ProjMat::minus_identity(),
        ProjMat::lit(1, 1, 0, 1),
        ProjMat::lit(1, 0, 18, 1),
        ProjMat::lit(0, -1, 20, 0),
        ProjMat::lit(3, 0, 0, 1),
        ProjMat::lit(7, -2, 18, -5),
        ProjMat::lit(2, 1, 0, 3),
    ]
}

fn coeff() -> impl Strategy<Value = SymbolicCoeff> {
    (-3i64..=3, -2i64..=2, 0u32..2).prop_map(|(x, y, e)| {
        let base = &SymbolicCoeff::int(x) + &SymbolicCoeff::constant(&GaussRat::int(y) * &GaussRat::i());
        if e == 0 {
            base
        } else {
            &base * &SymbolicCoeff::symbol("lam_H")
        }
    })
}

fn elem() -> impl Strategy<Value = GroupRingElem> {
    proptest::collection::vec((0usize..8, coeff()), 0..4).prop_map(|terms| {
        let ms = mats();
        let mut g = GroupRingElem::zero();
        for (i, c) in terms {
            g.add_term(ms[i].clone(), c);
        }
        g
    })
}

fn relation() -> impl Strategy<Value = Relation> {
    prop_oneof![
        (-3i64..=3).prop_map(|r| Relation::Periodic { r }),
        (1u64..30).prop_map(|n| Relation::Fricke { n }),
        prop::sample::select(vec![2u64, 3, 5]).prop_map(|p| Relation::Hecke { p }),
        prop::sample::select(vec![(3u64, 18u64), (2, 20), (3, 3), (2, 8)]).prop_map(|(p, n)| Relation::Up { p, n }),
        Just(Relation::MinusId),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(x in elem(), y in elem(), z in elem()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&x * &GroupRingElem::one(), x.clone());
        prop_assert_eq!(&GroupRingElem::one() * &x, x.clone());
    }

    #[test]
    fn right_ideal_closure(rel in relation(), m in elem()) {
        let claim = &rel.body() * &m;
        let cert = Certificate { claim, witness: vec![(rel, m)], meta: CertificateMeta::default() };
        prop_assert!(check_certificate(&cert).valid);
    }
}

#[test]
fn numeric_substitution_agrees() {
    let mut subst = BTreeMap::new();
    for (k, v) in [("lam_H", (0.3, -0.8)), ("lam_Q", (1.0, 0.0)), ("lam_J", (0.0, 1.0))] {
        subst.insert(k.to_string(), Complex64::new(v.0, v.1));
    }
    for p in [2u64, 3, 5, 7] {
        subst.insert(hecke_symbol(p), Complex64::new(0.1 * p as f64, -0.2));
    }
    for (name, cert) in shipped_certificates().unwrap() {
        assert!(check_certificate(&cert).valid, "{name}");
        let lhs = cert.claim.eval_coeffs(&subst).expect("all symbols substituted");
        let rhs = cert.witness_sum().eval_coeffs(&subst).expect("all symbols substituted");
        let keys: std::collections::BTreeSet<_> = lhs.keys().chain(rhs.keys()).collect();
        for k in keys {
            let zero = Complex64::new(0.0, 0.0);
            let d = lhs.get(k).unwrap_or(&zero) - rhs.get(k).unwrap_or(&zero);
            assert!(d.norm() < 1e-12, "{name} at {k}");
        }
    }
}
