//! Relabeling-independent keys for diagrams, used to recognise the same
//! diagram reached along different move sequences.

use std::collections::HashMap;

use crate::diagram::{ArcId, CrossingId, CrossingKind, Diagram};

/// A key that is equal for two diagrams that differ only by arc labels and
/// crossing ids. Crossings listed in `marked` are distinguished.
pub fn iso_key(d: &Diagram, marked: &[CrossingId]) -> Vec<u32> {
    let n = d.crossing_count();
    if n == 0 {
        return vec![d.zero_crossing_components(), 0];
    }
    let ends = d.arc_ends();
    let succ = d.successors();
    let head: HashMap<ArcId, usize> = ends
        .iter()
        .filter_map(|(&a, e)| e.head.map(|h| (a, h.crossing)))
        .collect();
    let arcs: Vec<ArcId> = ends.keys().copied().collect();
    let mut best: Option<Vec<u32>> = None;
    for &start in &arcs {
        let key = encode_from(d, start, &arcs, &succ, &head, marked);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.expect("at least one arc")
}

fn encode_from(
    d: &Diagram,
    start: ArcId,
    arcs: &[ArcId],
    succ: &std::collections::BTreeMap<ArcId, ArcId>,
    head: &HashMap<ArcId, usize>,
    marked: &[CrossingId],
) -> Vec<u32> {
    let cs = d.crossings();
    let mut arc_map: HashMap<ArcId, u32> = HashMap::new();
    let mut order: Vec<usize> = Vec::new();
    let mut seen_cross = vec![false; cs.len()];
    let mut walk = |from: ArcId, arc_map: &mut HashMap<ArcId, u32>, order: &mut Vec<usize>| {
        let mut a = from;
        loop {
            let next = arc_map.len() as u32 + 1;
            arc_map.insert(a, next);
            let c = head[&a];
            if !seen_cross[c] {
                seen_cross[c] = true;
                order.push(c);
            }
            a = succ[&a];
            if a == from {
                break;
            }
        }
    };
    walk(start, &mut arc_map, &mut order);
    loop {
        let pending = order
            .iter()
            .flat_map(|&c| cs[c].ends)
            .find(|a| !arc_map.contains_key(a))
            .or_else(|| arcs.iter().copied().find(|a| !arc_map.contains_key(a)));
        match pending {
            Some(a) => walk(a, &mut arc_map, &mut order),
            None => break,
        }
    }
    let mut key = vec![d.zero_crossing_components(), cs.len() as u32];
    for &c in &order {
        let x = &cs[c];
        key.push(match x.kind {
            CrossingKind::Positive => 0,
            CrossingKind::Negative => 1,
            CrossingKind::Singular => 2,
        });
        key.push(marked.contains(&x.id) as u32);
        key.extend(x.ends.iter().map(|a| arc_map[a]));
    }
    key
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Crossing;

    #[test]
    fn relabeled_copies_share_a_key() {
        let t = Diagram::from_parts(
            1,
            0,
            vec![
                Crossing::new(0, CrossingKind::Negative, [1, 4, 2, 5]),
                Crossing::new(1, CrossingKind::Negative, [3, 6, 4, 1]),
                Crossing::new(2, CrossingKind::Negative, [5, 2, 6, 3]),
            ],
        );
        let shifted = Diagram::from_parts(
            1,
            0,
            vec![
                Crossing::new(7, CrossingKind::Negative, [3, 6, 4, 1]),
                Crossing::new(8, CrossingKind::Negative, [5, 2, 6, 3]),
                Crossing::new(9, CrossingKind::Negative, [1, 4, 2, 5]),
            ],
        );
        assert_eq!(iso_key(&t, &[]), iso_key(&shifted, &[]));
        assert_ne!(iso_key(&t, &[0]), iso_key(&t, &[]));
        assert_eq!(iso_key(&t, &[0]), iso_key(&t, &[1]));
    }
}
