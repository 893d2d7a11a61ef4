use proptest::prelude::*;
use unimod_core::classify::{
    classify_binary, find_forbidden_minor, recognize_nuclear, skeleton_class, Certificate, Method, SkeletonClass,
};
use unimod_core::{NamedComplex, SimplicialComplex, VertexSet};

fn named(s: &str) -> SimplicialComplex {
    s.parse::<NamedComplex>().unwrap().complex().unwrap()
}

#[test]
fn catalog_is_rejected_by_every_method() {
    for kind in NamedComplex::FORBIDDEN {
        let c = kind.complex().unwrap();
        // O6 and O6* have 64 columns; the matrix method falls back to sampling there
        let v = classify_binary(&c, Method::All).unwrap();
        assert!(!v.unimodular, "{kind}");
    }
}

#[test]
fn nuclear_families_are_accepted() {
    for s in ["c4", "disjoint:0,0", "disjoint:2,1", "dmn:1,1", "dmn:2,1", "simplex:3", "simplex:-1", "simplex:-2"] {
        let c = named(s);
        let v = classify_binary(&c, Method::Structural).unwrap();
        assert!(v.unimodular, "{s}");
        assert!(find_forbidden_minor(&c).unwrap().is_none(), "{s}");
    }
}

#[test]
fn matrix_method_certificate_is_a_circuit() {
    let v = classify_binary(&named("p4"), Method::Matrix).unwrap();
    assert!(!v.unimodular);
    assert!(matches!(v.certificate, Certificate::Circuit(_)));
}

#[test]
fn all_method_json_is_stable() {
    let v = classify_binary(&named("c4"), Method::All).unwrap();
    let json = serde_json::to_value(&v).unwrap();
    assert_eq!(json["unimodular"], true);
    assert_eq!(json["method"], "all");
    assert_eq!(json["certificate"]["kind"], "decomposition");
}

fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
    (0usize..=6).prop_flat_map(|n| {
        prop::collection::vec(0u64..1 << n, 0..7)
            .prop_map(move |sets| SimplicialComplex::from_facets(n, sets.into_iter().map(VertexSet::from_bits)).unwrap())
    })
}

proptest! {
    #[test]
    fn structural_and_minors_agree(c in arb_complex()) {
        let s = classify_binary(&c, Method::Structural).unwrap();
        let m = classify_binary(&c, Method::Minors).unwrap();
        prop_assert_eq!(s.unimodular, m.unimodular);
        if let Certificate::ForbiddenMinor(w) = &m.certificate {
            prop_assert!(w.verify(&c));
        }
    }

    #[test]
    fn decompositions_replay(c in arb_complex()) {
        if let Some(d) = recognize_nuclear(&c) {
            prop_assert_eq!(d.replay(c.n()).unwrap(), c);
        }
    }

    #[test]
    fn verdict_survives_duality(c in arb_complex()) {
        let a = classify_binary(&c, Method::Structural).unwrap().unimodular;
        let b = classify_binary(&c.alexander_dual(), Method::Structural).unwrap().unimodular;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn other_skeleton_means_not_unimodular(c in arb_complex()) {
        if skeleton_class(&c) == SkeletonClass::Other {
            prop_assert!(!classify_binary(&c, Method::Minors).unwrap().unimodular);
        }
    }

    #[test]
    fn lawrence_lifting_preserves_unimodularity(c in arb_complex().prop_filter("room", |c| c.n() < 6)) {
        let a = classify_binary(&c, Method::Structural).unwrap().unimodular;
        let b = classify_binary(&c.lawrence().unwrap(), Method::Structural).unwrap().unimodular;
        prop_assert_eq!(a, b);
    }
}
