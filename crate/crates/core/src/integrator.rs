//! Homotopy paths: sequences of moves and crossing changes, the signed sums
//! of a singular invariant along them, loop defects, and integration back
//! to a link invariant from the unlink.
//!
//! Sign convention: a change event has `ε = +1` when its resulting crossing
//! is positive. For a path from `L'` (start) to `L` (end) and `f` derived
//! from `F`, every event contributes `ε f = F(after) - F(before)`, so
//! `F(L') = F(L) - Σ ε f`. `evaluate_path` returns that value and
//! `loop_defect` returns `X = Σ ε f`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{ArcId, CrossingId, Diagram};
use crate::error::{Error, Result};
use crate::integrability::{item_rng, random_walk};
use crate::invariants::SingularInvariant;
use crate::moves::{
    apply_move, change_to, enumerate_move_sites, inverse_site, simplify, sites_for, MoveKind, MoveSite, Sign,
};
use crate::ring::RingElem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PathEvent {
    Move { kind: MoveKind, location: Vec<u32> },
    Change { crossing: CrossingId, to: Sign },
}

impl PathEvent {
    pub fn from_site(site: MoveSite) -> Self {
        PathEvent::Move {
            kind: site.kind,
            location: site.location,
        }
    }

    pub fn is_change(&self) -> bool {
        matches!(self, PathEvent::Change { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyPath {
    pub start: Diagram,
    pub events: Vec<PathEvent>,
}

impl HomotopyPath {
    pub fn new(start: Diagram) -> Self {
        HomotopyPath {
            start,
            events: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("paths serialize")
    }

    pub fn change_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_change()).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularEvent {
    /// Position of the change in the event list.
    pub index: usize,
    pub diagram: Diagram,
    pub epsilon: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub end: Diagram,
    pub singular: Vec<SingularEvent>,
}

/// Replays and keeps every intermediate diagram (`events.len() + 1` of them).
fn trace(path: &HomotopyPath) -> Result<(Vec<Diagram>, Vec<SingularEvent>)> {
    path.start.require_link()?;
    let mut states = vec![path.start.clone()];
    let mut singular = Vec::new();
    for (index, event) in path.events.iter().enumerate() {
        let cur = states.last().expect("non-empty");
        let wrap = |e: Error| Error::Path {
            index,
            message: e.to_string(),
        };
        let next = match event {
            PathEvent::Move { kind, location } => {
                apply_move(cur, &MoveSite::new(*kind, location.clone())).map_err(wrap)?
            }
            PathEvent::Change { crossing, to } => {
                let (next, mid) = change_to(cur, *crossing, *to).map_err(wrap)?;
                singular.push(SingularEvent {
                    index,
                    diagram: mid,
                    epsilon: to.epsilon(),
                });
                next
            }
        };
        states.push(next);
    }
    Ok((states, singular))
}

/// The end diagram and, for each change, the double point passed through.
pub fn replay(path: &HomotopyPath) -> Result<Replay> {
    let (mut states, singular) = trace(path)?;
    Ok(Replay {
        end: states.pop().expect("non-empty"),
        singular,
    })
}

/// `Σ ε f` over the singular events, evaluated in parallel.
pub fn signed_sum(f: &dyn SingularInvariant, events: &[SingularEvent]) -> Result<RingElem> {
    let terms = events
        .par_iter()
        .map(|e| {
            let v = f.eval(&e.diagram)?;
            Ok(if e.epsilon > 0 { v } else { -v })
        })
        .collect::<Result<Vec<RingElem>>>()?;
    Ok(terms.into_iter().sum())
}

/// With `base` the value at the end of the path, the value at its start:
/// `base - Σ ε f`.
pub fn evaluate_path(f: &dyn SingularInvariant, path: &HomotopyPath, base: &RingElem) -> Result<RingElem> {
    let r = replay(path)?;
    Ok(base - &signed_sum(f, &r.singular)?)
}

/// `X = Σ ε f` around a closed path.
pub fn loop_defect(f: &dyn SingularInvariant, path: &HomotopyPath) -> Result<RingElem> {
    let r = replay(path)?;
    if r.end != path.start {
        return Err(Error::NotClosed);
    }
    signed_sum(f, &r.singular)
}

/// A curl added positively at a random site, switched, and removed again.
/// The start is canonically relabeled so the loop closes exactly.
pub fn gen_loop_kink(start: &Diagram, rng: &mut impl Rng) -> Result<HomotopyPath> {
    start.require_link()?;
    let start = start.canonical_relabel();
    let sites = sites_for(&start, MoveKind::R1AddPos);
    let site = sites.choose(rng).expect("every diagram has an R1 site").clone();
    let curl = start.next_crossing_id();
    Ok(HomotopyPath {
        start,
        events: vec![
            PathEvent::from_site(site),
            PathEvent::Change {
                crossing: curl,
                to: Sign::Neg,
            },
            PathEvent::Move {
                kind: MoveKind::R1Remove,
                location: vec![curl],
            },
        ],
    })
}

fn sign_of(d: &Diagram, c: CrossingId) -> Result<Sign> {
    let x = d.crossing(c).ok_or(Error::NoSuchCrossing(c))?;
    Sign::of(x.kind).ok_or(Error::SingularCrossing(c))
}

/// Switches `c1`, `c2`, then both back. With signs `s1`, `s2` and double
/// points labeled `(c1, c2)`, `X = -s1 s2 (lhs - rhs)` of the commutation
/// condition.
pub fn gen_loop_commutator(start: &Diagram, c1: CrossingId, c2: CrossingId) -> Result<HomotopyPath> {
    start.require_link()?;
    if c1 == c2 {
        return Err(Error::Usage(format!("commutator needs two distinct crossings, got {c1} twice")));
    }
    let (s1, s2) = (sign_of(start, c1)?, sign_of(start, c2)?);
    let change = |crossing, to| PathEvent::Change { crossing, to };
    Ok(HomotopyPath {
        start: start.clone(),
        events: vec![change(c1, s1.flip()), change(c2, s2.flip()), change(c1, s1), change(c2, s2)],
    })
}

/// The path run backwards. Every move must have an exact inverse.
pub fn reverse(path: &HomotopyPath) -> Result<HomotopyPath> {
    let (states, _) = trace(path)?;
    let mut events = Vec::with_capacity(path.events.len());
    for (i, event) in path.events.iter().enumerate().rev() {
        events.push(match event {
            PathEvent::Change { crossing, to } => PathEvent::Change {
                crossing: *crossing,
                to: to.flip(),
            },
            PathEvent::Move { kind, location } => {
                let site = MoveSite::new(*kind, location.clone());
                let inv = inverse_site(&states[i], &site, &states[i + 1]).ok_or_else(|| Error::Path {
                    index: i,
                    message: format!("move {site} has no exact inverse"),
                })?;
                PathEvent::from_site(inv)
            }
        });
    }
    Ok(HomotopyPath {
        start: states.last().expect("non-empty").clone(),
        events,
    })
}

/// `a` followed by `b`; `b` must start where `a` ends.
pub fn concat(a: &HomotopyPath, b: &HomotopyPath) -> Result<HomotopyPath> {
    let end = replay(a)?.end;
    if end != b.start {
        return Err(Error::Path {
            index: a.events.len(),
            message: "second path does not start where the first ends".into(),
        });
    }
    let mut events = a.events.clone();
    events.extend(b.events.iter().cloned());
    Ok(HomotopyPath {
        start: a.start.clone(),
        events,
    })
}

/// `γ Φ γ⁻¹` for a loop `Φ` based at the end of `γ`.
pub fn conjugate(gamma: &HomotopyPath, lp: &HomotopyPath) -> Result<HomotopyPath> {
    let there = concat(gamma, lp)?;
    concat(&there, &reverse(gamma)?)
}

/// A random path of `len` events whose moves all have exact inverses, so it
/// can be reversed. Roughly a third of the events are crossing changes.
pub fn random_reversible_path(start: &Diagram, len: usize, cap: usize, rng: &mut impl Rng) -> HomotopyPath {
    let mut cur = start.clone();
    let mut events = Vec::new();
    while events.len() < len {
        let signed: Vec<CrossingId> = cur.crossings().iter().map(|c| c.id).collect();
        if !signed.is_empty() && rng.gen_ratio(1, 3) {
            let c = *signed.choose(rng).expect("non-empty");
            let to = sign_of(&cur, c).expect("signed").flip();
            cur = change_to(&cur, c, to).expect("valid change").0;
            events.push(PathEvent::Change { crossing: c, to });
            continue;
        }
        let sites: Vec<MoveSite> = enumerate_move_sites(&cur)
            .into_iter()
            .filter(|s| cur.crossing_count() as i64 + s.kind.crossing_delta() as i64 <= cap as i64)
            .collect();
        let mut kinds: Vec<MoveKind> = sites.iter().map(|s| s.kind).collect();
        kinds.dedup();
        let mut moved = false;
        for _ in 0..8 {
            let Some(&kind) = kinds.choose(rng) else { break };
            let of_kind: Vec<&MoveSite> = sites.iter().filter(|s| s.kind == kind).collect();
            let site = (*of_kind.choose(rng).expect("non-empty")).clone();
            let next = apply_move(&cur, &site).expect("enumerated site applies");
            if inverse_site(&cur, &site, &next).is_some() {
                cur = next;
                events.push(PathEvent::from_site(site));
                moved = true;
                break;
            }
        }
        if !moved && signed.is_empty() {
            let site = sites_for(&cur, MoveKind::R1AddPos).swap_remove(0);
            cur = apply_move(&cur, &site).expect("enumerated site applies");
            events.push(PathEvent::from_site(site));
        }
    }
    HomotopyPath {
        start: start.clone(),
        events,
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

const BASEPOINT_CHOICES: usize = 20_000;

/// Component order and basepoints with the fewest descending violations;
/// the first such choice in lexicographic order wins.
fn best_starts(d: &Diagram) -> Vec<ArcId> {
    let orbits = d.orbits();
    let mut best = d.component_starts();
    let mut fewest = d.descending_violations(&best).len();
    let orders = if orbits.len() <= 4 {
        permutations(orbits.len())
    } else {
        vec![(0..orbits.len()).collect()]
    };
    let mut tried = 0;
    for order in orders {
        let sizes: Vec<usize> = order.iter().map(|&o| orbits[o].len()).collect();
        let mut idx = vec![0usize; order.len()];
        'choices: loop {
            tried += 1;
            if tried > BASEPOINT_CHOICES || fewest == 0 {
                return best;
            }
            let starts: Vec<ArcId> = order.iter().zip(&idx).map(|(&o, &i)| orbits[o][i]).collect();
            let n = d.descending_violations(&starts).len();
            if n < fewest {
                fewest = n;
                best = starts;
            }
            let mut k = idx.len();
            loop {
                if k == 0 {
                    break 'choices;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < sizes[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
    best
}

fn random_starts(d: &Diagram, rng: &mut impl Rng) -> Vec<ArcId> {
    let mut orbits = d.orbits();
    orbits.shuffle(rng);
    orbits.iter().map(|o| *o.choose(rng).expect("orbits are non-empty")).collect()
}

/// Appends changes of `crossings` (in that order) and a simplification to
/// the unlink. Fails if simplification does not reach zero crossings.
fn descend_from(mut path: HomotopyPath, cur: &Diagram, crossings: &[CrossingId], budget: usize) -> Result<HomotopyPath> {
    let mut d = cur.clone();
    for &c in crossings {
        let to = sign_of(&d, c)?.flip();
        d = change_to(&d, c, to)?.0;
        path.events.push(PathEvent::Change { crossing: c, to });
    }
    let s = simplify(&d, budget);
    path.events.extend(s.witness.into_iter().map(PathEvent::from_site));
    if s.diagram.crossing_count() > 0 {
        return Err(Error::Budget(format!(
            "descending diagram simplified only to {} crossings; partial path has {} events",
            s.diagram.crossing_count(),
            path.events.len()
        )));
    }
    Ok(path)
}

/// Crossing changes making `d` descending (basepoints chosen to need the
/// fewest), then moves taking the descending diagram to the crossingless
/// unlink. The path ends literally at the unlink.
pub fn descending_path(d: &Diagram, budget: usize) -> Result<HomotopyPath> {
    d.require_link()?;
    let starts = best_starts(d);
    let bad = d.descending_violations(&starts);
    descend_from(HomotopyPath::new(d.clone()), d, &bad, budget)
}

/// Integrates `f` from the unlink: `base[m] - Σ ε f` along the descending
/// path of the `m`-component diagram `d`.
pub fn integrate(
    f: &dyn SingularInvariant,
    d: &Diagram,
    base: &BTreeMap<u32, RingElem>,
    budget: usize,
) -> Result<IntegrationReport> {
    let m = d.components();
    let b = base.get(&m).ok_or(Error::MissingBase(m))?;
    let path = descending_path(d, budget)?;
    let value = evaluate_path(f, &path, b)?;
    Ok(IntegrationReport {
        value,
        components: m,
        changes: path.change_count(),
        path,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegrationReport {
    pub value: RingElem,
    pub components: u32,
    pub changes: usize,
    pub path: HomotopyPath,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSummary {
    pub strategy: String,
    pub changes: usize,
    pub value: RingElem,
    pub path: HomotopyPath,
}

/// Indices of two paths with different values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisagreementWitness {
    pub first: usize,
    pub second: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathIndependenceReport {
    pub seed: u64,
    pub components: u32,
    pub paths: Vec<PathSummary>,
    pub all_equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<DisagreementWitness>,
}

/// Path `i` of a path-independence run: path 0 is the descending path,
/// the others randomize basepoints, prepend a random walk, or shuffle the
/// order of the changes, drawing from random stream `stream`.
pub fn variant_path(d: &Diagram, i: usize, seed: u64, stream: u64, budget: usize) -> Result<(String, HomotopyPath)> {
    if i == 0 {
        return Ok(("descending".into(), descending_path(d, budget)?));
    }
    let mut rng = item_rng(seed, stream);
    let start = HomotopyPath::new(d.clone());
    match i % 3 {
        1 => {
            let bad = d.descending_violations(&random_starts(d, &mut rng));
            Ok(("random-basepoints".into(), descend_from(start, d, &bad, budget)?))
        }
        2 => {
            let len = rng.gen_range(1..=4);
            let (walked, walk) = random_walk(d, len, d.crossing_count() + 2, &mut rng);
            let mut path = start;
            path.events.extend(walk.into_iter().map(PathEvent::from_site));
            let bad = walked.descending_violations(&random_starts(&walked, &mut rng));
            Ok(("pre-walk".into(), descend_from(path, &walked, &bad, budget)?))
        }
        _ => {
            let mut bad = d.descending_violations(&random_starts(d, &mut rng));
            bad.shuffle(&mut rng);
            Ok(("shuffled-changes".into(), descend_from(start, d, &bad, budget)?))
        }
    }
}

/// Integrates `f` along `k` different paths to the unlink and compares.
pub fn path_independence_report(
    f: &dyn SingularInvariant,
    d: &Diagram,
    base: &BTreeMap<u32, RingElem>,
    k: usize,
    seed: u64,
    budget: usize,
) -> Result<PathIndependenceReport> {
    if k < 2 {
        return Err(Error::Usage(format!("path independence needs at least 2 paths, got {k}")));
    }
    d.require_link()?;
    let m = d.components();
    let b = base.get(&m).ok_or(Error::MissingBase(m))?;
    // variants are drawn sequentially until distinct from all earlier ones
    let mut chosen: Vec<(String, HomotopyPath)> = Vec::with_capacity(k);
    for i in 0..k {
        let mut pick = None;
        for attempt in 0..16u64 {
            // small diagrams have few basepoint variants; fall back to pre-walks
            let strategy = if attempt < 4 || i == 0 { i } else { 2 };
            let candidate = variant_path(d, strategy, seed, i as u64 + attempt * k as u64, budget)?;
            let fresh = chosen.iter().all(|(_, p)| p.events != candidate.1.events);
            if fresh || pick.is_none() {
                pick = Some(candidate);
            }
            if fresh {
                break;
            }
        }
        chosen.push(pick.expect("at least one attempt"));
    }
    let runs = chosen
        .into_par_iter()
        .map(|(strategy, path)| {
            let value = evaluate_path(f, &path, b)?;
            Ok((strategy, path, value))
        })
        .collect::<Result<Vec<_>>>()?;
    let differing = runs.iter().position(|r| r.2 != runs[0].2);
    let witness = differing.map(|j| DisagreementWitness { first: 0, second: j });
    Ok(PathIndependenceReport {
        seed,
        components: m,
        all_equal: witness.is_none(),
        witness,
        paths: runs
            .into_iter()
            .map(|(strategy, path, value)| PathSummary {
                strategy,
                changes: path.change_count(),
                value,
                path,
            })
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventValue {
    pub index: usize,
    pub epsilon: i64,
    pub value: RingElem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopReport {
    pub defect: RingElem,
    pub terms: Vec<EventValue>,
    pub passed: bool,
    pub path: HomotopyPath,
}

/// `loop_defect` with the individual terms.
pub fn audit_loop(f: &dyn SingularInvariant, path: &HomotopyPath) -> Result<LoopReport> {
    let r = replay(path)?;
    if r.end != path.start {
        return Err(Error::NotClosed);
    }
    let terms = r
        .singular
        .par_iter()
        .map(|e| {
            Ok(EventValue {
                index: e.index,
                epsilon: e.epsilon,
                value: f.eval(&e.diagram)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let defect: RingElem = terms
        .iter()
        .map(|t| if t.epsilon > 0 { t.value.clone() } else { -t.value.clone() })
        .sum();
    Ok(LoopReport {
        passed: defect.is_zero(),
        defect,
        terms,
        path: path.clone(),
    })
}
