//! Standard diagrams: a table of prime knots up to eight crossings (with
//! reference Jones and Conway data) and a few small links.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::diagram::{Crossing, CrossingKind, Diagram};
use crate::ring::RingElem;

#[derive(Clone, Debug, Deserialize)]
pub struct TableEntry {
    pub name: String,
    pub diagram: Diagram,
    /// `z^2` coefficient of the Conway polynomial.
    pub conway_a2: Option<i64>,
    /// Jones polynomial with `t = A^-4`.
    pub jones: Option<RingElem>,
}

static TABLE: OnceLock<Vec<TableEntry>> = OnceLock::new();

pub fn table() -> &'static [TableEntry] {
    TABLE.get_or_init(|| serde_json::from_str(include_str!("../data/knot_table.json")).expect("embedded table parses"))
}

pub fn by_name(name: &str) -> Option<Diagram> {
    match name {
        "unknot" | "0_1" => Some(Diagram::unknot()),
        "trefoil" | "left-trefoil" => Some(left_trefoil()),
        "hopf" => Some(hopf()),
        "figure-eight" => by_name("4_1"),
        "whitehead" => by_name("L5a1"),
        _ => table().iter().find(|e| e.name == name).map(|e| e.diagram.clone()),
    }
}

fn pd(components: u32, tuples: &[(CrossingKind, [u32; 4])]) -> Diagram {
    let cs = tuples
        .iter()
        .enumerate()
        .map(|(i, &(k, e))| Crossing::new(i as u32, k, e))
        .collect();
    Diagram::from_parts(components, 0, cs)
}

/// `X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)`, all crossings negative.
pub fn left_trefoil() -> Diagram {
    use CrossingKind::Negative as N;
    pd(1, &[(N, [1, 4, 2, 5]), (N, [3, 6, 4, 1]), (N, [5, 2, 6, 3])])
}

/// `X(1,3,2,4), X(3,1,4,2)`, both crossings positive.
pub fn hopf() -> Diagram {
    use CrossingKind::Positive as P;
    pd(2, &[(P, [1, 3, 2, 4]), (P, [3, 1, 4, 2])])
}

pub fn figure_eight() -> Diagram {
    by_name("4_1").expect("table has 4_1")
}

pub fn whitehead() -> Diagram {
    by_name("L5a1").expect("table has L5a1")
}

/// Connected sum, joining the first arc of `a` to the first arc of `b`.
pub fn connected_sum(a: &Diagram, b: &Diagram) -> Diagram {
    if a.crossing_count() == 0 {
        return b.clone();
    }
    if b.crossing_count() == 0 {
        return a.clone();
    }
    let shift = a.max_arc();
    let id_shift = a.next_crossing_id();
    let mut cs: Vec<Crossing> = a.crossings().to_vec();
    let first_b = b.crossings().iter().flat_map(|c| c.ends).min().unwrap() + shift;
    cs.extend(b.crossings().iter().map(|c| Crossing::new(c.id + id_shift, c.kind, c.ends.map(|x| x + shift))));
    let first_a = a.crossings().iter().flat_map(|c| c.ends).min().unwrap();
    let head = |cs: &[Crossing], arc: u32| -> (usize, usize) {
        cs.iter()
            .enumerate()
            .find_map(|(i, c)| (0..4).find(|&p| c.ends[p] == arc && c.kind.is_incoming(p)).map(|p| (i, p)))
            .expect("arc has a head")
    };
    let (ha, hb) = (head(&cs, first_a), head(&cs, first_b));
    cs[ha.0].ends[ha.1] = first_b;
    cs[hb.0].ends[hb.1] = first_a;
    let circles = a.zero_crossing_components() + b.zero_crossing_components();
    Diagram::from_parts(0, circles, cs).canonical_relabel()
}
