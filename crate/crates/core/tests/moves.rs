mod common;

use proptest::prelude::*;
use skein::integrability::random_walk;
use skein::invariants::jones_a;
use skein::moves::*;
use skein::tables::{by_name, hopf, left_trefoil};
use skein::{CrossingKind, Diagram};

fn curl(kind: MoveKind) -> Diagram {
    apply_move(&Diagram::unknot(), &MoveSite::new(kind, vec![0, 0])).unwrap()
}

fn minimal_kink() -> Diagram {
    make_singular(&curl(MoveKind::R1AddPos), 0).unwrap()
}

#[test]
fn kink_resolutions() {
    let k = minimal_kink();
    assert!(is_syntactic_kink(&k, 0));
    let plus = resolve(&k, 0, ResolutionSign::Plus).unwrap();
    assert_eq!(plus, curl(MoveKind::R1AddPos));
    assert_eq!(plus.writhe().unwrap(), 1);
    let zero = resolve(&k, 0, ResolutionSign::Zero).unwrap();
    assert_eq!(zero.components(), 2);
    assert_eq!(zero.crossing_count(), 0);
    assert!(zero.validate().ok);
}

#[test]
fn singularized_trefoil_resolutions() {
    // making a crossing of the all-negative trefoil singular and resolving
    // it negatively gives the trefoil back; the positive resolution is the
    // diagram that simplifies to the unknot
    let t = left_trefoil();
    let s = make_singular(&t, 0).unwrap();
    assert_eq!(resolve(&s, 0, ResolutionSign::Minus).unwrap(), t);
    let plus = resolve(&s, 0, ResolutionSign::Plus).unwrap();
    let out = simplify(&plus, 2000);
    assert_eq!(out.diagram, Diagram::unknot());
    let mut replayed = plus.clone();
    for site in &out.witness {
        replayed = apply_move(&replayed, site).unwrap();
    }
    assert_eq!(replayed, out.diagram);
}

#[test]
fn resolve_rejects_signed_crossing() {
    assert_eq!(resolve(&left_trefoil(), 1, ResolutionSign::Plus).unwrap_err().code(), "not_singular");
    assert_eq!(make_singular(&minimal_kink(), 0).unwrap_err().code(), "singular_crossing");
}

#[test]
fn make_singular_round_trips_byte_identically() {
    for d in [left_trefoil(), hopf(), by_name("figure-eight").unwrap(), by_name("whitehead").unwrap()] {
        for c in d.crossings() {
            let s = make_singular(&d, c.id).unwrap();
            assert_eq!(s.order(), 1);
            let sign = Sign::of(c.kind).unwrap();
            assert_eq!(resolve(&s, c.id, sign.resolution()).unwrap().to_json(), d.to_json());
        }
    }
}

#[test]
fn trefoil_singularizations_are_equivalent() {
    let t = left_trefoil();
    let s: Vec<Diagram> = (0..3).map(|c| make_singular(&t, c).unwrap()).collect();
    for a in &s {
        for b in &s {
            assert_eq!(equivalent(a, b, 2000).answer, Answer::Yes);
        }
    }
}

#[test]
fn crossing_change_examples() {
    let t = left_trefoil();
    for c in 0..3 {
        let (flipped, mid) = crossing_change(&t, c).unwrap();
        assert_eq!(mid, make_singular(&t, c).unwrap());
        assert_eq!(simplify(&flipped, 2000).diagram.crossing_count(), 0);
        assert_eq!(crossing_change(&flipped, c).unwrap().0, t);
    }
    let (neg, mid) = crossing_change(&curl(MoveKind::R1AddPos), 0).unwrap();
    assert_eq!(neg.crossings()[0].kind, CrossingKind::Negative);
    assert!(is_syntactic_kink(&mid, 0));
    assert_eq!(crossing_change(&minimal_kink(), 0).unwrap_err().code(), "singular_crossing");
    assert_eq!(change_to(&t, 0, Sign::Neg).unwrap_err().code(), "noop_change");
}

#[test]
fn apply_move_examples() {
    let c = curl(MoveKind::R1AddPos);
    assert_eq!(c.writhe().unwrap(), 1);
    let removes = sites_for(&c, MoveKind::R1Remove);
    assert_eq!(removes.len(), 1);
    assert_eq!(apply_move(&c, &removes[0]).unwrap(), Diagram::unknot());

    let t = left_trefoil();
    for site in sites_for(&t, MoveKind::R2Add) {
        let s = apply_move(&t, &site).unwrap();
        assert_eq!(s.crossing_count(), 5);
        assert_eq!(jones_a(&s).unwrap(), jones_a(&t).unwrap());
    }
    let err = apply_move(&t, &MoveSite::new(MoveKind::R2Remove, vec![0, 1, 0, 0])).unwrap_err();
    assert_eq!(err.code(), "pattern_mismatch");
}

#[test]
fn site_enumeration() {
    let kinds: Vec<MoveKind> = enumerate_move_sites(&Diagram::unknot()).iter().map(|s| s.kind).collect();
    assert!(kinds.iter().all(|k| matches!(k, MoveKind::R1AddPos | MoveKind::R1AddNeg | MoveKind::R2Add)));
    assert_eq!(sites_for(&curl(MoveKind::R1AddNeg), MoveKind::R1Remove).len(), 1);
    // every arc of an alternating diagram runs from an over- to an
    // under-passage, so no triangle of the standard trefoil admits R3
    assert!(sites_for(&left_trefoil(), MoveKind::R3).is_empty());
    let sites = enumerate_move_sites(&by_name("5_2").unwrap());
    let mut sorted = sites.clone();
    sorted.sort_by(|a, b| (a.kind, &a.location).cmp(&(b.kind, &b.location)));
    assert_eq!(sites, sorted);
}

#[test]
fn r3_appears_after_an_r2() {
    let t = left_trefoil();
    let found = sites_for(&t, MoveKind::R2Add)
        .iter()
        .map(|s| apply_move(&t, s).unwrap())
        .any(|d| !sites_for(&d, MoveKind::R3).is_empty());
    assert!(found);
}

#[test]
fn kink_detection() {
    assert_eq!(is_kink(&minimal_kink(), 0, 0), Answer::Yes);
    let s = make_singular(&left_trefoil(), 0).unwrap();
    assert_eq!(is_kink(&s, 0, 1000), Answer::No);
    let k = minimal_kink();
    let obscured: Vec<Diagram> = sites_for(&k, MoveKind::R2Add)
        .iter()
        .map(|site| apply_move(&k, site).unwrap())
        .filter(|d| !is_syntactic_kink(d, 0))
        .collect();
    assert!(!obscured.is_empty());
    for d in obscured {
        assert_eq!(is_kink(&d, 0, 1000), Answer::Yes);
    }
}

#[test]
fn simplify_examples() {
    assert_eq!(simplify(&curl(MoveKind::R1AddNeg), 100).diagram, Diagram::unknot());
    let pair = apply_move(&Diagram::unknot(), &sites_for(&Diagram::unknot(), MoveKind::R2Add)[0]).unwrap();
    assert_eq!(pair.crossing_count(), 2);
    assert_eq!(simplify(&pair, 100).diagram.crossing_count(), 0);
    let t = left_trefoil();
    let stabilized = apply_move(&t, &sites_for(&t, MoveKind::R2Add)[0]).unwrap();
    let out = simplify(&stabilized, 20_000);
    assert_eq!(out.diagram.crossing_count(), 3);
    assert_eq!(equivalent(&out.diagram, &t, 2000).answer, Answer::Yes);
    assert_eq!(simplify(&stabilized, 20_000), out);
}

#[test]
fn equivalence_examples() {
    let t = left_trefoil();
    assert_eq!(equivalent(&t, &t, 10).answer, Answer::Yes);
    assert_eq!(equivalent(&t, &Diagram::unknot(), 1000).answer, Answer::No);
    assert_eq!(equivalent(&t, &by_name("3_1").unwrap(), 1000).answer, Answer::No);
    assert_eq!(equivalent(&hopf(), &Diagram::unlink(2), 1000).answer, Answer::No);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn moves_preserve_components_order_and_genus(seed in any::<u64>(), which in 0usize..5, singular in any::<bool>()) {
        let names = ["unknot", "trefoil", "figure-eight", "hopf", "whitehead"];
        let start = by_name(names[which]).unwrap();
        let mut r = common::rng(seed);
        let (mut d, _) = random_walk(&start, 3, 8, &mut r);
        if singular && d.crossing_count() > 0 {
            let c = d.crossings()[seed as usize % d.crossing_count()].id;
            d = make_singular(&d, c).unwrap();
        }
        for site in enumerate_move_sites(&d) {
            let e = apply_move(&d, &site).unwrap();
            prop_assert!(e.validate().ok, "{}", site);
            prop_assert_eq!(e.components(), d.components());
            prop_assert_eq!(e.order(), d.order());
            prop_assert_eq!(e.planarity_genus(), 0);
        }
    }

    #[test]
    fn resolutions_differ_only_in_kind(seed in any::<u64>(), which in 0usize..4) {
        let names = ["trefoil", "figure-eight", "hopf", "whitehead"];
        let (d, _) = random_walk(&by_name(names[which]).unwrap(), 3, 8, &mut common::rng(seed));
        let c = d.crossings()[seed as usize % d.crossing_count()].id;
        let s = make_singular(&d, c).unwrap();
        let plus = resolve(&s, c, ResolutionSign::Plus).unwrap();
        let minus = resolve(&s, c, ResolutionSign::Minus).unwrap();
        for (a, b) in plus.crossings().iter().zip(minus.crossings()) {
            prop_assert_eq!(a.id, b.id);
            if a.id != c {
                prop_assert_eq!(a, b);
            } else {
                prop_assert_ne!(a.kind, b.kind);
            }
        }
    }

    #[test]
    fn simplify_witness_replays(seed in any::<u64>(), which in 0usize..4) {
        let names = ["unknot", "trefoil", "hopf", "figure-eight"];
        let (d, _) = random_walk(&by_name(names[which]).unwrap(), 4, 9, &mut common::rng(seed));
        let out = simplify(&d, 3000);
        let mut cur = d.clone();
        for site in &out.witness {
            cur = apply_move(&cur, site).unwrap();
        }
        prop_assert_eq!(cur, out.diagram.clone());
        prop_assert!(out.diagram.crossing_count() <= d.crossing_count());
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let (a, _) = random_walk(&left_trefoil(), 2, 6, &mut r);
        let (b, _) = random_walk(&by_name("figure-eight").unwrap(), 2, 6, &mut r);
        prop_assert_eq!(equivalent(&a, &a, 50).answer, Answer::Yes);
        prop_assert_eq!(equivalent(&a, &b, 200).answer, equivalent(&b, &a, 200).answer);
    }
}
