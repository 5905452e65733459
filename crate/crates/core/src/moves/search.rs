//! Bounded breadth-first searches over the move graph: simplification,
//! kink certification and equivalence.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{apply_move, enumerate_move_sites, is_syntactic_kink, reducing_sites, resolve, Answer, MoveSite, ResolutionSign};
use crate::canon::iso_key;
use crate::diagram::{CrossingId, Diagram};
use crate::invariants::{jones_a, resolution_jones_multiset, DEFAULT_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplifyOutcome {
    pub diagram: Diagram,
    /// Moves taking the input to `diagram`, in order.
    pub witness: Vec<MoveSite>,
    pub expanded: usize,
    /// Whether the node budget ran out before the search finished.
    pub exhausted: bool,
}

struct Node {
    diagram: Diagram,
    parent: Option<(usize, MoveSite)>,
}

struct Explorer {
    nodes: Vec<Node>,
    index: HashMap<Vec<u32>, usize>,
    marked: Vec<CrossingId>,
}

impl Explorer {
    fn new(start: &Diagram, marked: &[CrossingId]) -> Self {
        let mut index = HashMap::new();
        index.insert(iso_key(start, marked), 0);
        Explorer {
            nodes: vec![Node {
                diagram: start.clone(),
                parent: None,
            }],
            index,
            marked: marked.to_vec(),
        }
    }

    fn path_to(&self, mut i: usize) -> Vec<MoveSite> {
        let mut path = Vec::new();
        while let Some((p, site)) = &self.nodes[i].parent {
            path.push(site.clone());
            i = *p;
        }
        path.reverse();
        path
    }
}

fn successors(d: &Diagram, max_crossings: usize) -> Vec<(MoveSite, Diagram)> {
    let sites = if max_crossings > d.crossing_count() {
        enumerate_move_sites(d)
    } else {
        reducing_sites(d)
    };
    sites
        .into_iter()
        .filter(|s| {
            let grows = s.kind.crossing_delta();
            grows <= 0 || d.crossing_count() + grows as usize <= max_crossings
        })
        .filter(|s| !matches!(s.kind, super::MoveKind::R1AddPos | super::MoveKind::R1AddNeg))
        .filter_map(|s| apply_move(d, &s).ok().map(|n| (s, n)))
        .collect()
}

/// Breadth-first search from `start` through diagrams with at most
/// `start + slack` crossings. Returns the index of the first node meeting
/// `target` (smallest crossing count, then serialization, within its level).
fn bfs(
    ex: &mut Explorer,
    slack: usize,
    budget: &mut usize,
    target: &(dyn Fn(&Diagram) -> bool + Sync),
) -> Option<usize> {
    let max = ex.nodes[0].diagram.crossing_count() + slack;
    let mut frontier = vec![0usize];
    while !frontier.is_empty() && *budget > 0 {
        let take = frontier.len().min(*budget);
        *budget -= take;
        let level: Vec<Vec<(MoveSite, Diagram)>> = frontier[..take]
            .par_iter()
            .map(|&i| successors(&ex.nodes[i].diagram, max))
            .collect();
        let mut next = Vec::new();
        let mut hits: Vec<usize> = Vec::new();
        for (&parent, succ) in frontier[..take].iter().zip(level) {
            for (site, d) in succ {
                let key = iso_key(&d, &ex.marked);
                if ex.index.contains_key(&key) {
                    continue;
                }
                let i = ex.nodes.len();
                ex.index.insert(key, i);
                if target(&d) {
                    hits.push(i);
                }
                ex.nodes.push(Node {
                    diagram: d,
                    parent: Some((parent, site)),
                });
                next.push(i);
            }
        }
        if !hits.is_empty() {
            return hits.into_iter().min_by_key(|&i| {
                let d = &ex.nodes[i].diagram;
                (d.crossing_count(), d.to_json())
            });
        }
        frontier = next;
    }
    None
}

/// Reduces the crossing count by breadth-first search: first through moves
/// that add no crossings, then allowing one R2 pair of detour when stuck.
/// The returned witness replays from `d` to the result.
pub fn simplify(d: &Diagram, budget: usize) -> SimplifyOutcome {
    let mut left = budget;
    let mut cur = d.clone();
    let mut witness = Vec::new();
    while cur.crossing_count() > 0 && left > 0 {
        let n = cur.crossing_count();
        let target = move |x: &Diagram| x.crossing_count() < n;
        let mut found = None;
        for slack in [0, 2] {
            let mut ex = Explorer::new(&cur, &[]);
            if let Some(i) = bfs(&mut ex, slack, &mut left, &target) {
                found = Some((ex.nodes[i].diagram.clone(), ex.path_to(i)));
                break;
            }
        }
        match found {
            Some((next, path)) => {
                cur = next;
                witness.extend(path);
            }
            None => break,
        }
    }
    SimplifyOutcome {
        diagram: cur,
        witness,
        expanded: budget - left,
        exhausted: left == 0,
    }
}

/// Whether the double point `p` is a kink: `yes` if a bounded search reaches
/// a diagram where two adjacent ends of `p` are joined by an empty loop,
/// `no` if the Jones values of its two resolutions differ (other double
/// points resolved positively), `unknown` otherwise.
pub fn is_kink(d: &Diagram, p: CrossingId, budget: usize) -> Answer {
    if !d.crossing(p).is_some_and(|c| c.kind.is_singular()) {
        return Answer::Unknown;
    }
    if is_syntactic_kink(d, p) {
        return Answer::Yes;
    }
    if jones_split(d, p) == Some(true) {
        return Answer::No;
    }
    let mut left = budget;
    let target = move |x: &Diagram| is_syntactic_kink(x, p);
    for slack in [0, 2] {
        let mut ex = Explorer::new(d, &[p]);
        if bfs(&mut ex, slack, &mut left, &target).is_some() {
            return Answer::Yes;
        }
    }
    Answer::Unknown
}

fn jones_split(d: &Diagram, p: CrossingId) -> Option<bool> {
    let mut r = d.clone();
    for q in d.singular_ids() {
        if q != p {
            r = resolve(&r, q, ResolutionSign::Plus).ok()?;
        }
    }
    let plus = jones_a(&resolve(&r, p, ResolutionSign::Plus).ok()?).ok()?;
    let minus = jones_a(&resolve(&r, p, ResolutionSign::Minus).ok()?).ok()?;
    Some(plus != minus)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub answer: Answer,
    pub reason: String,
    /// Moves from the first diagram to a diagram isomorphic to the end of
    /// `from_second`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from_first: Option<Vec<MoveSite>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from_second: Option<Vec<MoveSite>>,
}

impl EquivalenceReport {
    fn plain(answer: Answer, reason: &str) -> Self {
        EquivalenceReport {
            answer,
            reason: reason.into(),
            from_first: None,
            from_second: None,
        }
    }
}

/// Semi-decides equivalence: `yes` with witnesses when a bounded search
/// connects the diagrams, `no` when an invariant separates them.
pub fn equivalent(d1: &Diagram, d2: &Diagram, budget: usize) -> EquivalenceReport {
    if iso_key(d1, &[]) == iso_key(d2, &[]) {
        let mut r = EquivalenceReport::plain(Answer::Yes, "identical up to relabeling");
        r.from_first = Some(Vec::new());
        r.from_second = Some(Vec::new());
        return r;
    }
    if d1.components() != d2.components() {
        return EquivalenceReport::plain(Answer::No, "component counts differ");
    }
    if d1.order() != d2.order() {
        return EquivalenceReport::plain(Answer::No, "orders differ");
    }
    if let (Ok(a), Ok(b)) = (
        resolution_jones_multiset(d1, DEFAULT_CAP),
        resolution_jones_multiset(d2, DEFAULT_CAP),
    ) {
        if a != b {
            return EquivalenceReport::plain(Answer::No, "Jones values of the resolutions differ");
        }
    }
    let half = budget / 2;
    let s1 = simplify(d1, half / 2);
    let s2 = simplify(d2, half / 2);
    let explore = |s: &SimplifyOutcome| {
        let mut ex = Explorer::new(&s.diagram, &[]);
        let mut left = half / 2;
        let never = |_: &Diagram| false;
        bfs(&mut ex, 2, &mut left, &never);
        ex
    };
    let (e1, e2) = (explore(&s1), explore(&s2));
    let meet = e1
        .index
        .iter()
        .filter_map(|(k, &i)| e2.index.get(k).map(|&j| (i, j)))
        .min();
    match meet {
        Some((i, j)) => {
            let mut w1 = s1.witness.clone();
            w1.extend(e1.path_to(i));
            let mut w2 = s2.witness.clone();
            w2.extend(e2.path_to(j));
            EquivalenceReport {
                answer: Answer::Yes,
                reason: "bounded search connects the diagrams".into(),
                from_first: Some(w1),
                from_second: Some(w2),
            }
        }
        None => EquivalenceReport::plain(Answer::Unknown, "no connection found within budget"),
    }
}
