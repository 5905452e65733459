mod common;

use std::sync::Arc;

use skein::integrability::random_walk;
use skein::invariants::*;
use skein::moves::{apply_move, enumerate_move_sites, make_singular, resolve, sites_for, MoveKind, ResolutionSign};
use skein::tables::{by_name, connected_sum, hopf, left_trefoil, table};
use skein::{Diagram, RingElem};

fn a(exp: i64) -> RingElem {
    RingElem::monomial(1, exp)
}

#[test]
fn ring_examples() {
    assert!((a(2) + RingElem::monomial(-1, 2)).is_zero());
    assert_eq!((a(-1) + a(1)) * a(1), RingElem::one() + a(2));
    assert!((RingElem::from_int(7) + RingElem::from_int(-7)).is_zero());
    assert_eq!(RingElem::zero(), RingElem::from_int(0));
    let big = RingElem::from_int(i64::MAX) * RingElem::from_int(i64::MAX);
    assert_eq!(serde_json::from_str::<RingElem>(&serde_json::to_string(&big).unwrap()).unwrap(), big);
    assert_eq!(
        serde_json::to_string(&(a(-2) + RingElem::from_int(3))).unwrap(),
        r#"{"var":"A","terms":[[-2,"1"],[0,"3"]]}"#
    );
}

#[test]
fn bracket_examples() {
    assert_eq!(kauffman_bracket(&Diagram::unknot()).unwrap(), RingElem::one());
    assert_eq!(kauffman_bracket(&Diagram::unlink(2)).unwrap(), RingElem::monomial(-1, 2) + RingElem::monomial(-1, -2));
    let t = left_trefoil();
    assert_eq!(kauffman_bracket(&t).unwrap(), common::oracle::bracket(&t));
    let s = make_singular(&t, 0).unwrap();
    assert_eq!(kauffman_bracket(&s).unwrap_err().code(), "not_a_link");
}

#[test]
fn bracket_matches_oracle_on_table_and_walks() {
    for e in table() {
        if e.diagram.crossing_count() <= 8 {
            assert_eq!(kauffman_bracket(&e.diagram).unwrap(), common::oracle::bracket(&e.diagram), "{}", e.name);
        }
    }
    for (d, _) in common::move_corpus(&["unknot", "trefoil", "hopf", "figure-eight"], 60, 8, 11) {
        assert_eq!(kauffman_bracket(&d).unwrap(), common::oracle::bracket(&d), "{}", d.to_json());
    }
}

#[test]
fn bracket_local_relation_at_every_crossing() {
    for name in ["trefoil", "figure-eight", "5_2", "hopf", "whitehead", "6_3"] {
        let d = by_name(name).unwrap();
        let whole = kauffman_bracket(&d).unwrap();
        let tuples: Vec<[u32; 4]> = d.crossings().iter().map(|c| c.ends).collect();
        for i in 0..tuples.len() {
            let mut rest = tuples.clone();
            let [p, q, r, s] = rest.remove(i);
            let circles = d.zero_crossing_components();
            let smooth_a = bracket_with_pairings(&rest, &[(p, q), (r, s)], circles);
            let smooth_b = bracket_with_pairings(&rest, &[(p, s), (q, r)], circles);
            assert_eq!(whole, a(1) * smooth_a + a(-1) * smooth_b, "{name} crossing {i}");
        }
    }
}

#[test]
fn jones_examples() {
    assert_eq!(jones_a(&Diagram::unknot()).unwrap(), RingElem::one());
    let curl = apply_move(&Diagram::unknot(), &sites_for(&Diagram::unknot(), MoveKind::R1AddPos)[0]).unwrap();
    assert_eq!(jones_a(&curl).unwrap(), RingElem::one());
    let t = left_trefoil();
    let st = apply_move(&t, &sites_for(&t, MoveKind::R2Add)[0]).unwrap();
    assert_eq!(jones_a(&st).unwrap(), jones_a(&t).unwrap());
    let right = by_name("3_1").unwrap();
    assert_ne!(jones_a(&t).unwrap(), jones_a(&Diagram::unknot()).unwrap());
    assert_ne!(jones_a(&t).unwrap(), jones_a(&right).unwrap());
    assert_eq!(jones_a(&t).unwrap(), jones_a(&right).unwrap().mirror());
}

#[test]
fn jones_matches_reference_table() {
    for e in table() {
        let Some(expected) = &e.jones else { continue };
        assert_eq!(&jones_a(&e.diagram).unwrap(), expected, "{}", e.name);
    }
}

#[test]
fn crossing_cap() {
    let big = by_name("8_1").unwrap();
    assert_eq!(kauffman_bracket_capped(&big, 7).unwrap_err().code(), "crossing_cap");
}

#[test]
fn v2_examples() {
    let unknot = Diagram::unknot();
    assert_eq!(v2_gauss(&unknot).unwrap(), 0);
    assert_eq!(v2_skein_oracle(&unknot, 100).unwrap(), 0);
    let t = left_trefoil();
    assert_eq!(v2_skein_oracle(&t, 1000).unwrap(), 1);
    assert_eq!(v2_gauss(&t).unwrap(), 1);
    let fig8 = by_name("figure-eight").unwrap();
    assert_eq!(v2_gauss(&fig8).unwrap(), v2_skein_oracle(&fig8, 1000).unwrap());
    let sum = connected_sum(&t, &t);
    assert!(sum.validate().ok);
    assert_eq!(sum.components(), 1);
    assert_eq!(v2_skein_oracle(&sum, 10_000).unwrap(), 2);
    assert_eq!(v2_gauss(&sum).unwrap(), 2);
    assert_eq!(v2_gauss(&hopf()).unwrap_err().code(), "not_a_knot");
    assert_eq!(v2_skein_oracle(&by_name("8_18").unwrap(), 1).unwrap_err().code(), "budget_exhausted");
}

#[test]
fn v2_gauss_matches_skein_and_table() {
    for e in table() {
        if e.diagram.components() != 1 {
            continue;
        }
        let g = v2_gauss(&e.diagram).unwrap();
        assert_eq!(g, v2_skein_oracle(&e.diagram, DEFAULT_SKEIN_BUDGET).unwrap(), "{}", e.name);
        assert_eq!(Some(g), e.conway_a2, "{}", e.name);
    }
}

#[test]
fn derived_examples() {
    let jones = singular_invariant("jones").unwrap();
    let kink = make_singular(
        &apply_move(&Diagram::unknot(), &sites_for(&Diagram::unknot(), MoveKind::R1AddPos)[0]).unwrap(),
        0,
    )
    .unwrap();
    assert!(jones.eval(&kink).unwrap().is_zero());
    let t = left_trefoil();
    let s = make_singular(&t, 0).unwrap();
    // the positive resolution is an unknot diagram, the negative one is the trefoil
    let expected = RingElem::one() - jones_a(&t).unwrap();
    assert_eq!(jones.eval(&s).unwrap(), expected);
    assert!(!expected.is_zero());
    let constant = derive_singular(Arc::new(ConstantLink(RingElem::one())));
    assert!(constant.eval(&s).unwrap().is_zero());
    assert!(constant.eval(&kink).unwrap().is_zero());
    assert_eq!(jones.eval(&t).unwrap_err().code(), "wrong_order");
}

#[test]
fn derived_value_is_the_same_on_all_trefoil_singularizations() {
    let t = left_trefoil();
    for name in ["jones", "v2", "const"] {
        let f = singular_invariant(name).unwrap();
        let values: Vec<RingElem> = (0..3).map(|c| f.eval(&make_singular(&t, c).unwrap()).unwrap()).collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]), "{name}");
    }
}

#[test]
fn link_invariants_are_move_invariant() {
    let corpus = common::move_corpus(&["unknot", "trefoil", "figure-eight", "hopf", "whitehead"], 120, 9, 5);
    let jones = Jones::default();
    let v2 = V2Extended;
    for (d, site) in corpus {
        let e = apply_move(&d, &site).unwrap();
        assert_eq!(jones.eval(&d).unwrap(), jones.eval(&e).unwrap(), "{site} on {}", d.to_json());
        assert_eq!(v2.eval(&d).unwrap(), v2.eval(&e).unwrap(), "{site} on {}", d.to_json());
    }
}

#[test]
fn derived_invariants_are_invariant_under_singular_moves() {
    let jones = singular_invariant("jones").unwrap();
    let v2 = singular_invariant("v2").unwrap();
    let mut r = common::rng(17);
    for (i, name) in ["trefoil", "figure-eight", "hopf", "whitehead", "5_2"].iter().cycle().take(25).enumerate() {
        let start = by_name(name).unwrap();
        let c = start.crossings()[i % start.crossing_count()].id;
        let s = make_singular(&start, c).unwrap();
        let (d, _) = random_walk(&s, 3, 8, &mut r);
        let (fj, fv) = (jones.eval(&d).unwrap(), v2.eval(&d).unwrap());
        for site in enumerate_move_sites(&d) {
            let e = apply_move(&d, &site).unwrap();
            assert_eq!(jones.eval(&e).unwrap(), fj, "{site}");
            assert_eq!(v2.eval(&e).unwrap(), fv, "{site}");
        }
    }
}

#[test]
fn names_resolve() {
    for n in SINGULAR_NAMES {
        assert!(singular_invariant(n).is_some(), "{n}");
    }
    assert!(singular_invariant("nope").is_none());
    assert_eq!(link_invariant("jones").unwrap().certificate(), Certificate::ProvenByConstruction);
    assert_eq!(link_invariant("v2").unwrap().certificate(), Certificate::TestVerified);
    let p = singular_invariant("jonesplus").unwrap();
    let s = make_singular(&left_trefoil(), 0).unwrap();
    assert_eq!(p.eval(&s).unwrap(), jones_a(&resolve(&s, 0, ResolutionSign::Plus).unwrap()).unwrap());
}
