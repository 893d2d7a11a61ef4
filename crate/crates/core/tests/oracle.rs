mod common;

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use unimod_core::census::enumerate_complexes;
use unimod_core::matrix::design_matrix;
use unimod_core::oracle::{
    circuits, is_unimodular_exact, is_unimodular_randomized, unimodular_via_minors, OracleConfig, OracleVerdict,
};
use unimod_core::{DVector, Error, IntegerMatrix, SimplicialComplex};

fn normalized(mut support: Vec<usize>, mut v: Vec<BigInt>) -> (Vec<usize>, Vec<BigInt>) {
    let mut pairs: Vec<(usize, BigInt)> = support.drain(..).zip(v.drain(..)).collect();
    pairs.sort_by_key(|p| p.0);
    if pairs[0].1.is_negative() {
        for p in &mut pairs {
            p.1 = -&p.1;
        }
    }
    pairs.into_iter().unzip()
}

#[test]
fn exact_oracle_matches_brute_force_on_three_vertices() {
    let cfg = OracleConfig::default();
    for c in enumerate_complexes(3, false).unwrap() {
        let a = design_matrix(&c, &DVector::binary(3)).unwrap();
        let exact = is_unimodular_exact(&a, &cfg).unwrap().is_unimodular();
        assert_eq!(exact, common::brute_force_unimodular(&a), "{c}");
    }
}

#[test]
fn circuits_are_the_brute_force_circuits() {
    let cfg = OracleConfig::default();
    let examples = [
        SimplicialComplex::from_facet_lists(3, &[&[1][..], &[2], &[3]]).unwrap(),
        SimplicialComplex::from_facet_lists(3, &[&[1, 2][..], &[2, 3], &[1, 3]]).unwrap(),
        SimplicialComplex::from_facet_lists(3, &[&[1][..], &[2, 3]]).unwrap(),
    ];
    for c in examples {
        let a = design_matrix(&c, &DVector::binary(3)).unwrap();
        let mut ours: Vec<_> = circuits(&a, None, &cfg)
            .unwrap()
            .into_iter()
            .map(|w| normalized(w.support, w.vector))
            .collect();
        let mut brute: Vec<_> = common::all_circuits(&a).into_iter().map(|(s, v)| normalized(s, v)).collect();
        ours.sort();
        brute.sort();
        assert_eq!(ours, brute, "{c}");
    }
}

#[test]
fn nonbinary_triangle_matches_brute_force() {
    let c = SimplicialComplex::from_facet_lists(3, &[&[1, 2][..], &[2, 3], &[1, 3]]).unwrap();
    let cfg = OracleConfig::default();
    for d in [[3, 2, 2], [2, 3, 2], [3, 3, 2]] {
        let a = design_matrix(&c, &DVector::new(d.to_vec()).unwrap()).unwrap();
        if a.cols() > 16 {
            continue;
        }
        let exact = is_unimodular_exact(&a, &cfg).unwrap().is_unimodular();
        assert_eq!(exact, common::brute_force_unimodular(&a), "{d:?}");
    }
}

#[test]
fn minors_oracle_agrees_with_exact() {
    let cfg = OracleConfig::default();
    for c in enumerate_complexes(3, false).unwrap() {
        let a = design_matrix(&c, &DVector::binary(3)).unwrap();
        let exact = is_unimodular_exact(&a, &cfg).unwrap();
        let minors = unimodular_via_minors(&a, &cfg).unwrap();
        assert_eq!(exact.is_unimodular(), minors.is_unimodular(), "{c}");
        if let OracleVerdict::NonUnimodular(w) = &minors.verdict {
            common::check_witness(&a, w).unwrap();
        }
    }
}

#[test]
fn randomized_runs_repeat_for_a_seed() {
    let c = SimplicialComplex::from_facet_lists(4, &[&[1, 2][..], &[2, 3], &[3, 4]]).unwrap();
    let a = design_matrix(&c, &DVector::binary(4)).unwrap();
    let cfg = OracleConfig::default();
    let first = is_unimodular_randomized(&a, 42, 500, &cfg).unwrap();
    let second = is_unimodular_randomized(&a, 42, 500, &cfg).unwrap();
    assert_eq!(first, second);
    assert!(!first.is_unimodular());
}

#[test]
fn caps_are_size_errors() {
    let c = SimplicialComplex::from_facet_lists(4, &[&[1, 2][..], &[2, 3], &[3, 4], &[1, 4]]).unwrap();
    let a = design_matrix(&c, &DVector::binary(4)).unwrap();
    let tiny = OracleConfig { scan_cap: 10, minors_cap: 10, ..OracleConfig::default() };
    assert!(matches!(is_unimodular_exact(&a, &tiny), Err(Error::Size { .. })));
    assert!(matches!(unimodular_via_minors(&a, &tiny), Err(Error::Size { .. })));
}

fn arb_small_matrix() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..=3, 1usize..=7).prop_flat_map(|(r, c)| {
        prop::collection::vec(-2i64..=2, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            IntegerMatrix::from_rows(&rows).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_matrices_match_brute_force(a in arb_small_matrix()) {
        let cfg = OracleConfig::default();
        let exact = is_unimodular_exact(&a, &cfg).unwrap();
        prop_assert_eq!(exact.is_unimodular(), common::brute_force_unimodular(&a));
        if let OracleVerdict::NonUnimodular(w) = &exact.verdict {
            prop_assert!(common::check_witness(&a, w).is_ok());
        }
        let minors = unimodular_via_minors(&a, &cfg).unwrap();
        prop_assert_eq!(minors.is_unimodular(), exact.is_unimodular());
    }

    #[test]
    fn every_circuit_is_in_the_kernel(a in arb_small_matrix()) {
        for w in circuits(&a, None, &OracleConfig::default()).unwrap() {
            let v = w.full_vector(a.cols());
            prop_assert!(a.apply(&v).iter().all(|x| x == &BigInt::from(0)));
            prop_assert_eq!(common::rank_of_columns(&a, &w.support) + 1, w.support.len());
        }
    }
}
