mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use skein::integrability::{condition2_sides, singularize_all};
use skein::integrator::*;
use skein::invariants::{jones_a, link_invariant, singular_invariant, ConstantSingular, SingularInvariant};
use skein::moves::{is_syntactic_kink, make_singular, simplify, MoveKind, Sign};
use skein::tables::{by_name, hopf, left_trefoil};
use skein::{Diagram, RingElem};

fn change(crossing: u32, to: Sign) -> PathEvent {
    PathEvent::Change { crossing, to }
}

fn path(start: Diagram, events: Vec<PathEvent>) -> HomotopyPath {
    HomotopyPath { start, events }
}

fn all_singular() -> Vec<Arc<dyn SingularInvariant>> {
    let mut fs: Vec<Arc<dyn SingularInvariant>> =
        ["jones", "v2", "jonesplus"].iter().map(|n| singular_invariant(n).unwrap()).collect();
    fs.push(Arc::new(ConstantSingular(RingElem::one())));
    fs
}

#[test]
fn replay_examples() {
    let t = left_trefoil();
    let r = replay(&HomotopyPath::new(t.clone())).unwrap();
    assert_eq!(r.end, t);
    assert!(r.singular.is_empty());

    let r = replay(&path(t.clone(), vec![change(0, Sign::Pos)])).unwrap();
    assert_eq!(simplify(&r.end, 2000).diagram, Diagram::unknot());
    assert_eq!(r.singular.len(), 1);
    assert_eq!(r.singular[0].diagram, make_singular(&t, 0).unwrap());
    assert_eq!(r.singular[0].epsilon, 1);

    let r = replay(&path(t.clone(), vec![change(0, Sign::Pos), change(0, Sign::Neg)])).unwrap();
    assert_eq!(r.end, t);
    assert_eq!(r.singular.iter().map(|e| e.epsilon).collect::<Vec<_>>(), vec![1, -1]);
    assert_eq!(r.singular[0].diagram, r.singular[1].diagram);
}

#[test]
fn replay_errors_name_the_event() {
    let t = left_trefoil();
    let err = replay(&path(t.clone(), vec![change(0, Sign::Pos), change(9, Sign::Pos)])).unwrap_err();
    assert_eq!(err.code(), "path_error");
    assert!(err.to_string().starts_with("event 1"));
    let bad_move = PathEvent::Move {
        kind: MoveKind::R1Remove,
        location: vec![0],
    };
    assert_eq!(replay(&path(t.clone(), vec![bad_move])).unwrap_err().code(), "path_error");
    let s = make_singular(&t, 0).unwrap();
    assert_eq!(replay(&HomotopyPath::new(s)).unwrap_err().code(), "not_a_link");
}

#[test]
fn path_json_round_trips() {
    let p = descending_path(&left_trefoil(), 2000).unwrap();
    let text = p.to_json();
    assert!(text.contains(r#"{"type":"change","crossing":"#));
    assert!(text.contains(r#"{"type":"move","kind":"#));
    assert_eq!(HomotopyPath::parse(&text).unwrap(), p);
}

#[test]
fn evaluate_path_examples() {
    let t = left_trefoil();
    let jones = singular_invariant("jones").unwrap();
    let base = RingElem::from_int(3);
    let walk = random_reversible_path(&t, 6, 8, &mut common::rng(1));
    let moves_only = path(t.clone(), walk.events.into_iter().filter(|e| !e.is_change()).collect());
    if replay(&moves_only).is_ok() {
        assert_eq!(evaluate_path(jones.as_ref(), &moves_only, &base).unwrap(), base);
    }
    let to_unknot = descending_path(&t, 2000).unwrap();
    assert_eq!(replay(&to_unknot).unwrap().end, Diagram::unknot());
    assert_eq!(evaluate_path(jones.as_ref(), &to_unknot, &RingElem::one()).unwrap(), jones_a(&t).unwrap());
    let constant = singular_invariant("const").unwrap();
    assert_eq!(evaluate_path(constant.as_ref(), &to_unknot, &base).unwrap(), base);
}

#[test]
fn palindromes_have_zero_defect_for_every_invariant() {
    for (i, name) in ["unknot", "trefoil", "figure-eight", "hopf"].iter().enumerate() {
        let d = by_name(name).unwrap();
        let there = random_reversible_path(&d, 6, 9, &mut common::rng(i as u64));
        let lp = concat(&there, &reverse(&there).unwrap()).unwrap();
        for f in all_singular() {
            assert!(loop_defect(f.as_ref(), &lp).unwrap().is_zero(), "{name} {}", f.name());
        }
    }
}

#[test]
fn kink_loops() {
    let jones = singular_invariant("jones").unwrap();
    let lp = gen_loop_kink(&Diagram::unknot(), &mut common::rng(3)).unwrap();
    assert_eq!(lp.events.len(), 3);
    let r = replay(&lp).unwrap();
    assert_eq!(r.end, lp.start);
    assert!(is_syntactic_kink(&r.singular[0].diagram, 0));
    for seed in 0..10 {
        let lp = gen_loop_kink(&left_trefoil(), &mut common::rng(seed)).unwrap();
        assert_eq!(replay(&lp).unwrap().end, lp.start);
        assert!(loop_defect(jones.as_ref(), &lp).unwrap().is_zero());
    }
}

#[test]
fn commutator_loops() {
    let t = left_trefoil();
    let lp = gen_loop_commutator(&t, 0, 1).unwrap();
    assert_eq!(lp.events.len(), 4);
    assert!(loop_defect(singular_invariant("jones").unwrap().as_ref(), &lp).unwrap().is_zero());
    assert!(loop_defect(&ConstantSingular(RingElem::one()), &lp).unwrap().is_zero());
    assert_eq!(gen_loop_commutator(&t, 0, 0).unwrap_err().code(), "usage");
    assert_eq!(gen_loop_commutator(&t, 0, 7).unwrap_err().code(), "dangling_crossing");
    let open = path(t.clone(), vec![change(0, Sign::Pos)]);
    assert_eq!(loop_defect(&ConstantSingular(RingElem::one()), &open).unwrap_err().code(), "not_closed");
}

#[test]
fn commutator_defect_is_the_condition2_difference() {
    let plus = singular_invariant("jonesplus").unwrap();
    let seeds = common::named(&["trefoil", "figure-eight", "hopf", "whitehead"]);
    let mut nonzero = 0;
    for s in &seeds {
        let d = &s.diagram;
        let ids: Vec<u32> = d.crossings().iter().map(|c| c.id).collect();
        for &p in &ids {
            for &q in &ids {
                if p == q {
                    continue;
                }
                let lp = gen_loop_commutator(d, p, q).unwrap();
                let x = loop_defect(plus.as_ref(), &lp).unwrap();
                let sp = d.crossing(p).unwrap().kind.sign().unwrap();
                let sq = d.crossing(q).unwrap().kind.sign().unwrap();
                let (lhs, rhs) = condition2_sides(plus.as_ref(), &singularize_all(d, &[p, q]).unwrap(), p, q).unwrap();
                assert_eq!(x, RingElem::from_int(-sp * sq) * (lhs - rhs));
                nonzero += !x.is_zero() as usize;
            }
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn descending_path_examples() {
    assert!(descending_path(&Diagram::unknot(), 10).unwrap().events.is_empty());
    let p = descending_path(&left_trefoil(), 2000).unwrap();
    assert_eq!(p.change_count(), 1);
    assert!(p.events[0].is_change());
    assert_eq!(replay(&p).unwrap().end, Diagram::unknot());
    let p = descending_path(&hopf(), 2000).unwrap();
    assert_eq!(p.change_count(), 1);
    assert_eq!(replay(&p).unwrap().end, Diagram::unlink(2));
    assert_eq!(descending_path(&by_name("8_18").unwrap(), 1).unwrap_err().code(), "budget_exhausted");
}

#[test]
fn integrate_examples() {
    let base = common::jones_unlinks();
    let jones = singular_invariant("jones").unwrap();
    for f in all_singular() {
        let one = BTreeMap::from([(1, RingElem::one())]);
        assert_eq!(integrate(f.as_ref(), &Diagram::unknot(), &one, 10).unwrap().value, RingElem::one());
    }
    for d in [left_trefoil(), hopf(), by_name("whitehead").unwrap(), by_name("7_4").unwrap()] {
        let r = integrate(jones.as_ref(), &d, &base, 20_000).unwrap();
        assert_eq!(r.value, jones_a(&d).unwrap());
    }
    let err = integrate(jones.as_ref(), &hopf(), &BTreeMap::from([(1, RingElem::one())]), 100).unwrap_err();
    assert_eq!(err.code(), "missing_base");
}

#[test]
fn integrated_v2_matches_v2() {
    let v2 = singular_invariant("v2").unwrap();
    let base: BTreeMap<u32, RingElem> = (1..=3).map(|m| (m, RingElem::zero())).collect();
    let v2_link = link_invariant("v2").unwrap();
    for name in ["trefoil", "figure-eight", "5_1", "6_2", "8_19"] {
        let d = by_name(name).unwrap();
        assert_eq!(integrate(v2.as_ref(), &d, &base, 20_000).unwrap().value, v2_link.eval(&d).unwrap(), "{name}");
    }
}

#[test]
fn path_independence_examples() {
    let base = common::jones_unlinks();
    let jones = singular_invariant("jones").unwrap();
    for name in ["trefoil", "figure-eight"] {
        let d = by_name(name).unwrap();
        let r = path_independence_report(jones.as_ref(), &d, &base, 3, 11, 20_000).unwrap();
        assert!(r.all_equal, "{name}");
        assert!(r.witness.is_none());
        assert_eq!(r.paths.len(), 3);
    }
    let plus = singular_invariant("jonesplus").unwrap();
    let r = path_independence_report(plus.as_ref(), &left_trefoil(), &base, 12, 11, 20_000).unwrap();
    assert!(!r.all_equal);
    let w = r.witness.unwrap();
    let a = evaluate_path(plus.as_ref(), &r.paths[w.first].path, &base[&1]).unwrap();
    let b = evaluate_path(plus.as_ref(), &r.paths[w.second].path, &base[&1]).unwrap();
    assert_ne!(a, b);
    let err = path_independence_report(jones.as_ref(), &left_trefoil(), &base, 1, 0, 100).unwrap_err();
    assert_eq!(err.code(), "usage");
}

#[test]
fn path_independence_paths_are_distinct() {
    let jones = singular_invariant("jones").unwrap();
    for name in ["trefoil", "5_2", "hopf"] {
        let d = by_name(name).unwrap();
        let r = path_independence_report(jones.as_ref(), &d, &common::jones_unlinks(), 5, 4, 20_000).unwrap();
        assert!(r.all_equal);
        for (i, p) in r.paths.iter().enumerate() {
            assert_eq!(replay(&p.path).unwrap().end, Diagram::unlink(d.components()));
            for q in &r.paths[..i] {
                assert_ne!(p.path.events, q.path.events, "{name}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sign_rule_and_telescoping(seed in any::<u64>(), which in 0usize..5) {
        let names = ["unknot", "trefoil", "figure-eight", "hopf", "whitehead"];
        let d = by_name(names[which]).unwrap();
        let p = random_reversible_path(&d, 8, 9, &mut common::rng(seed));
        let r = replay(&p).unwrap();
        let changes: Vec<&PathEvent> = p.events.iter().filter(|e| e.is_change()).collect();
        prop_assert_eq!(changes.len(), r.singular.len());
        for (e, s) in changes.iter().zip(&r.singular) {
            let PathEvent::Change { to, .. } = e else { unreachable!() };
            prop_assert_eq!(s.epsilon, if *to == Sign::Pos { 1 } else { -1 });
        }
        for name in ["jones", "v2"] {
            let f = singular_invariant(name).unwrap();
            let big_f = link_invariant(name).unwrap();
            let at_start = evaluate_path(f.as_ref(), &p, &big_f.eval(&r.end).unwrap()).unwrap();
            prop_assert_eq!(at_start, big_f.eval(&d).unwrap());
        }
    }

    #[test]
    fn reversal_concatenation_conjugation(seed in any::<u64>(), which in 0usize..4) {
        let names = ["unknot", "trefoil", "figure-eight", "hopf"];
        let d = by_name(names[which]).unwrap().canonical_relabel();
        let mut r = common::rng(seed);
        let plus = singular_invariant("jonesplus").unwrap();
        let gamma = random_reversible_path(&d, 5, 9, &mut r);
        let end = replay(&gamma).unwrap().end;
        let lp = concat(&gen_loop_commutator(&end, end.crossings()[0].id, end.crossings()[end.crossing_count() - 1].id)
            .unwrap_or_else(|_| HomotopyPath::new(end.clone())), &gen_loop_kink(&end, &mut r).unwrap())
            .unwrap_or_else(|_| HomotopyPath::new(end.clone()));
        let x = loop_defect(plus.as_ref(), &lp).unwrap();
        prop_assert_eq!(loop_defect(plus.as_ref(), &reverse(&lp).unwrap()).unwrap(), -x.clone());
        prop_assert_eq!(loop_defect(plus.as_ref(), &conjugate(&gamma, &lp).unwrap()).unwrap(), x.clone());
        let twice = concat(&lp, &lp).unwrap();
        prop_assert_eq!(loop_defect(plus.as_ref(), &twice).unwrap(), x.clone() + x);
    }
}
