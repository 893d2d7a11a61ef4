mod common;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use unimod_core::matrix::{complementary_minor_ratio, design_matrix, kernel_spanning_set, lawrence_lift_matrix};
use unimod_core::{DVector, IntegerMatrix, SimplicialComplex, VertexSet};

fn arb_case() -> impl Strategy<Value = (SimplicialComplex, DVector)> {
    (1usize..=4).prop_flat_map(|n| {
        (prop::collection::vec(0u64..1 << n, 0..5), prop::collection::vec(2u64..=3, n)).prop_map(move |(sets, d)| {
            (
                SimplicialComplex::from_facets(n, sets.into_iter().map(VertexSet::from_bits)).unwrap(),
                DVector::new(d).unwrap(),
            )
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_column_hits_each_facet_block_once((c, d) in arb_case()) {
        let a = design_matrix(&c, &d).unwrap();
        let cells: u64 = d.levels().iter().product();
        prop_assert_eq!(a.cols() as u64, cells);
        let mut row = 0;
        for f in c.facets() {
            let block: u64 = f.iter().map(|v| d.level(v)).product();
            for j in 0..a.cols() {
                let ones = (row..row + block as usize).filter(|&i| a.get(i, j).is_one()).count();
                prop_assert_eq!(ones, 1);
            }
            row += block as usize;
        }
        prop_assert_eq!(row, a.rows());
        prop_assert!(a.entries().iter().all(|x| x.is_zero() || x.is_one()));
    }

    #[test]
    fn kernel_spanning_set_spans_the_kernel((c, _d) in arb_case()) {
        let a = design_matrix(&c, &DVector::binary(c.n())).unwrap();
        let k = kernel_spanning_set(&c);
        prop_assert!(a.mul(&k).unwrap().is_zero());
        let cols: Vec<usize> = (0..k.cols()).collect();
        let rank_k = if k.cols() == 0 { 0 } else { common::rank_of_columns(&k, &cols) };
        prop_assert_eq!(rank_k, a.cols() - c.face_count());
    }

    #[test]
    fn lifting_keeps_the_column_count_doubled((c, d) in arb_case()) {
        let a = design_matrix(&c, &d).unwrap();
        let l = lawrence_lift_matrix(&a);
        prop_assert_eq!((l.rows(), l.cols()), (2 * a.rows() + a.cols(), 2 * a.cols()));
    }
}

#[test]
fn complementary_minors_share_a_ratio() {
    // a basis of the row space and of the kernel of the 4-cycle matrix
    let c = SimplicialComplex::from_facet_lists(4, &[&[1, 2][..], &[2, 3], &[3, 4], &[1, 4]]).unwrap();
    let a = design_matrix(&c, &DVector::binary(4)).unwrap();
    let rows = independent_rows(&a);
    let b = a.kernel_lattice_basis();
    let report = complementary_minor_ratio(&rows, &b).unwrap();
    assert!(report.holds(), "{:?}", report.violations);
}

fn independent_rows(a: &IntegerMatrix) -> IntegerMatrix {
    let mut kept: Vec<Vec<i64>> = Vec::new();
    let all = a.to_i64_rows().unwrap();
    for r in all {
        let mut trial = kept.clone();
        trial.push(r.clone());
        let m = IntegerMatrix::from_rows(&trial).unwrap();
        if m.rank() == trial.len() {
            kept = trial;
        }
    }
    IntegerMatrix::from_rows(&kept).unwrap()
}

#[test]
fn identity_has_trivial_kernel() {
    let a = IntegerMatrix::identity(3);
    assert_eq!(a.kernel_lattice_basis().rows(), 0);
    assert_eq!(a.apply(&[BigInt::one(), BigInt::zero(), BigInt::zero()])[0], BigInt::one());
}
