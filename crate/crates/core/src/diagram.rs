//! Planar-diagram (PD) codes of oriented links and singular links.
//!
//! A crossing lists its four arc labels counterclockwise. Signed crossings
//! start from the incoming under-strand, as in the usual PD convention.
//! A singular crossing is stored in the form of its positive resolution:
//! the tuple starts at the incoming end of the strand that the other strand
//! crosses from position 3 to position 1. This pins down the direction of
//! both strands locally, so orientation never has to be guessed from the
//! arc numbering.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type ArcId = u32;
pub type CrossingId = u32;

pub const FORMAT: &str = "pdcode-v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CrossingKind {
    #[serde(rename = "pos")]
    Positive,
    #[serde(rename = "neg")]
    Negative,
    #[serde(rename = "sing")]
    Singular,
}

impl CrossingKind {
    /// Whether the arc at tuple position `pos` enters the crossing.
    pub fn is_incoming(self, pos: usize) -> bool {
        match self {
            CrossingKind::Positive | CrossingKind::Singular => pos == 0 || pos == 3,
            CrossingKind::Negative => pos == 0 || pos == 1,
        }
    }

    pub fn sign(self) -> Option<i64> {
        match self {
            CrossingKind::Positive => Some(1),
            CrossingKind::Negative => Some(-1),
            CrossingKind::Singular => None,
        }
    }

    pub fn is_singular(self) -> bool {
        self == CrossingKind::Singular
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CrossingKind::Positive => "pos",
            CrossingKind::Negative => "neg",
            CrossingKind::Singular => "sing",
        }
    }
}

impl fmt::Display for CrossingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub id: CrossingId,
    pub kind: CrossingKind,
    pub ends: [ArcId; 4],
}

impl Crossing {
    pub fn new(id: CrossingId, kind: CrossingKind, ends: [ArcId; 4]) -> Self {
        Self { id, kind, ends }
    }
}

/// An oriented (singular) link diagram. Order 0 diagrams are link diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    components: u32,
    zero_crossing_components: u32,
    crossings: Vec<Crossing>,
}

#[derive(Serialize, Deserialize)]
struct DiagramDoc {
    format: String,
    components: u32,
    zero_crossing_components: u32,
    crossings: Vec<Crossing>,
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramDoc {
            format: FORMAT.to_string(),
            components: self.components,
            zero_crossing_components: self.zero_crossing_components,
            crossings: self.crossings.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = DiagramDoc::deserialize(d)?;
        Diagram::from_doc(doc).map_err(D::Error::custom)
    }
}

/// One named check of [`Diagram::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn failed(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.ok)
            .map(|c| c.name.as_str())
            .collect()
    }
}

/// Where an arc label occurs: crossing index and tuple position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Occurrence {
    pub crossing: usize,
    pub pos: usize,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct ArcEnds {
    /// Occurrence where the arc leaves a crossing (its tail).
    pub tail: Option<Occurrence>,
    /// Occurrence where the arc enters a crossing (its head).
    pub head: Option<Occurrence>,
}

impl Diagram {
    /// Builds a diagram; crossings are sorted by id. No validation beyond
    /// what is needed to store the value.
    pub fn from_parts(components: u32, zero_crossing_components: u32, mut crossings: Vec<Crossing>) -> Self {
        crossings.sort_by_key(|c| c.id);
        Self {
            components,
            zero_crossing_components,
            crossings,
        }
    }

    /// The crossingless `m`-component unlink.
    pub fn unlink(m: u32) -> Self {
        Self::from_parts(m, m, Vec::new())
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// Parses the JSON diagram format. Checks structure and arc pairing;
    /// orientation and numbering are left to [`Diagram::validate`].
    pub fn parse(text: &str) -> Result<Self> {
        let doc: DiagramDoc = serde_json::from_str(text)?;
        Self::from_doc(doc)
    }

    fn from_doc(doc: DiagramDoc) -> Result<Self> {
        if doc.format != FORMAT {
            return Err(Error::Format(doc.format));
        }
        let mut ids: Vec<CrossingId> = doc.crossings.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCrossing(w[0]));
        }
        let mut counts: BTreeMap<ArcId, usize> = BTreeMap::new();
        for c in &doc.crossings {
            for a in c.ends {
                *counts.entry(a).or_default() += 1;
            }
        }
        if let Some((&arc, &count)) = counts.iter().find(|(_, &n)| n != 2) {
            return Err(Error::UnpairedArc { arc, count });
        }
        Ok(Self::from_parts(doc.components, doc.zero_crossing_components, doc.crossings))
    }

    /// Canonical serialization: keys in format order, crossings by id, no whitespace.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serialization is infallible")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, id: CrossingId) -> Option<&Crossing> {
        self.index_of(id).map(|i| &self.crossings[i])
    }

    pub(crate) fn index_of(&self, id: CrossingId) -> Option<usize> {
        self.crossings.binary_search_by_key(&id, |c| c.id).ok()
    }

    pub fn declared_components(&self) -> u32 {
        self.components
    }

    pub fn zero_crossing_components(&self) -> u32 {
        self.zero_crossing_components
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Number of singular crossings.
    pub fn order(&self) -> usize {
        self.crossings.iter().filter(|c| c.kind.is_singular()).count()
    }

    pub fn singular_ids(&self) -> Vec<CrossingId> {
        self.crossings
            .iter()
            .filter(|c| c.kind.is_singular())
            .map(|c| c.id)
            .collect()
    }

    pub fn is_link(&self) -> bool {
        self.order() == 0
    }

    pub fn require_link(&self) -> Result<()> {
        match self.order() {
            0 => Ok(()),
            k => Err(Error::NotALink(k)),
        }
    }

    pub fn max_arc(&self) -> ArcId {
        self.crossings
            .iter()
            .flat_map(|c| c.ends)
            .max()
            .unwrap_or(0)
    }

    pub fn next_crossing_id(&self) -> CrossingId {
        self.crossings.last().map(|c| c.id + 1).unwrap_or(0)
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> Result<i64> {
        self.require_link()?;
        Ok(self.crossings.iter().filter_map(|c| c.kind.sign()).sum())
    }

    /// Number of circles in the source, counted from the arc-succession map.
    pub fn components(&self) -> u32 {
        self.orbits().len() as u32 + self.zero_crossing_components
    }

    pub(crate) fn arc_ends(&self) -> BTreeMap<ArcId, ArcEnds> {
        let mut map: BTreeMap<ArcId, ArcEnds> = BTreeMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for (pos, &a) in c.ends.iter().enumerate() {
                let occ = Occurrence { crossing: ci, pos };
                let e = map.entry(a).or_default();
                if c.kind.is_incoming(pos) {
                    e.head = Some(occ);
                } else {
                    e.tail = Some(occ);
                }
            }
        }
        map
    }

    /// Next arc along the orientation, for every arc. Requires a coherent
    /// orientation (each arc enters once and leaves once).
    pub(crate) fn successors(&self) -> BTreeMap<ArcId, ArcId> {
        self.arc_ends()
            .into_iter()
            .filter_map(|(a, e)| {
                let h = e.head?;
                Some((a, self.crossings[h.crossing].ends[(h.pos + 2) % 4]))
            })
            .collect()
    }

    /// Arc cycles of the succession map, each starting at its smallest label,
    /// ordered by that label.
    pub(crate) fn orbits(&self) -> Vec<Vec<ArcId>> {
        let succ = self.successors();
        let mut seen: HashMap<ArcId, ()> = HashMap::new();
        let mut out = Vec::new();
        for &start in succ.keys() {
            if seen.contains_key(&start) {
                continue;
            }
            let mut orbit = vec![start];
            seen.insert(start, ());
            let mut cur = start;
            while let Some(&next) = succ.get(&cur) {
                if next == start || seen.contains_key(&next) {
                    break;
                }
                seen.insert(next, ());
                orbit.push(next);
                cur = next;
            }
            out.push(orbit);
        }
        out
    }

    /// Lowest arc label of each component, in component order.
    pub fn component_starts(&self) -> Vec<ArcId> {
        self.orbits().into_iter().map(|o| o[0]).collect()
    }

    /// Passages met walking once around the component of `start`:
    /// crossing index and whether the walk passes over there.
    pub(crate) fn passages_from(&self, start: ArcId) -> Vec<(usize, bool)> {
        let ends = self.arc_ends();
        let mut out = Vec::new();
        let mut a = start;
        while let Some(h) = ends.get(&a).and_then(|e| e.head) {
            out.push((h.crossing, h.pos != 0));
            a = self.crossings[h.crossing].ends[(h.pos + 2) % 4];
            if a == start {
                break;
            }
        }
        out
    }

    /// Crossings first reached from below when walking the components from
    /// `starts` in that order; switching them all gives a descending diagram.
    pub fn descending_violations(&self, starts: &[ArcId]) -> Vec<CrossingId> {
        let mut seen = vec![false; self.crossings.len()];
        let mut bad = Vec::new();
        for &s in starts {
            for (c, over) in self.passages_from(s) {
                if !seen[c] {
                    seen[c] = true;
                    if !over && !self.crossings[c].kind.is_singular() {
                        bad.push(self.crossings[c].id);
                    }
                }
            }
        }
        bad
    }

    /// Renumbers arcs: components ordered by their lowest label, each numbered
    /// consecutively from 1 along its orientation starting at that label.
    pub fn canonical_relabel(&self) -> Diagram {
        let mut map: HashMap<ArcId, ArcId> = HashMap::new();
        let mut next = 1;
        for orbit in self.orbits() {
            for a in orbit {
                map.insert(a, next);
                next += 1;
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                id: c.id,
                kind: c.kind,
                ends: c.ends.map(|a| map.get(&a).copied().unwrap_or(a)),
            })
            .collect();
        let components = self.orbits().len() as u32 + self.zero_crossing_components;
        Diagram::from_parts(components, self.zero_crossing_components, crossings)
    }

    /// Runs every structural check and reports each one by name.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let mut push = |name: &str, detail: Option<String>| {
            checks.push(Check {
                name: name.to_string(),
                ok: detail.is_none(),
                detail,
            })
        };

        let mut ids: Vec<CrossingId> = self.crossings.iter().map(|c| c.id).collect();
        ids.dedup();
        push(
            "unique_ids",
            (ids.len() != self.crossings.len()).then(|| "repeated crossing id".to_string()),
        );

        let mut counts: BTreeMap<ArcId, usize> = BTreeMap::new();
        for c in &self.crossings {
            for a in c.ends {
                *counts.entry(a).or_default() += 1;
            }
        }
        let pairing = counts
            .iter()
            .find(|(_, &n)| n != 2)
            .map(|(a, n)| format!("arc {a} appears {n} time(s)"));
        let pairing_ok = pairing.is_none();
        push("arc_pairing", pairing);

        let mut inout: BTreeMap<ArcId, (usize, usize)> = BTreeMap::new();
        for c in &self.crossings {
            for (pos, &a) in c.ends.iter().enumerate() {
                let e = inout.entry(a).or_default();
                if c.kind.is_incoming(pos) {
                    e.0 += 1;
                } else {
                    e.1 += 1;
                }
            }
        }
        let orient = inout
            .iter()
            .find(|(_, &(i, o))| i != 1 || o != 1)
            .map(|(a, (i, o))| {
                format!("arc {a} enters {i} time(s) and leaves {o} time(s) under the declared signs")
            });
        let orient_ok = orient.is_none() && pairing_ok;
        push("sign_orientation", orient);

        if orient_ok {
            let succ = self.successors();
            let mut bad = None;
            for orbit in self.orbits() {
                let lo = orbit[0];
                let hi = lo + orbit.len() as u32 - 1;
                if orbit.iter().copied().max() != Some(hi) {
                    bad = Some(format!("component starting at arc {lo} is not numbered consecutively"));
                    break;
                }
                if let Some(&a) = orbit.iter().find(|&&a| {
                    let want = if a == hi { lo } else { a + 1 };
                    succ[&a] != want
                }) {
                    bad = Some(format!("arc {a} is followed by arc {}", succ[&a]));
                    break;
                }
            }
            push("succession", bad);

            let found = self.orbits().len() as u32 + self.zero_crossing_components;
            push(
                "components",
                (found != self.components)
                    .then(|| format!("declared {} component(s), found {found}", self.components)),
            );
        } else {
            push("succession", Some("skipped: orientation incoherent".into()));
            push("components", Some("skipped: orientation incoherent".into()));
        }

        let ok = checks.iter().all(|c| c.ok);
        ValidationReport { ok, checks }
    }

    /// Genus of the surface carried by the rotation system of the 4-valent
    /// crossing graph; 0 for classical diagrams.
    pub fn planarity_genus(&self) -> u32 {
        let n = self.crossings.len();
        if n == 0 {
            return 0;
        }
        let mates = self.mates();
        let faces = count_orbits(4 * n, |d| {
            let (c, p) = mates[d];
            4 * c + (p + 3) % 4
        });
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (d, &(c, _)) in mates.iter().enumerate() {
            let (a, b) = (find(&mut parent, d / 4), find(&mut parent, c));
            parent[a] = b;
        }
        let graph_components = (0..n).filter(|&i| find(&mut parent, i) == i).count() as i64;
        let chi = n as i64 - 2 * n as i64 + faces as i64;
        ((2 * graph_components - chi) / 2) as u32
    }

    /// For each slot `4*i + pos`, the crossing index and position at the other
    /// end of its arc.
    pub(crate) fn mates(&self) -> Vec<(usize, usize)> {
        let mut first: HashMap<ArcId, (usize, usize)> = HashMap::new();
        let mut mates = vec![(0, 0); 4 * self.crossings.len()];
        for (ci, c) in self.crossings.iter().enumerate() {
            for (pos, &a) in c.ends.iter().enumerate() {
                if let Some((oc, op)) = first.remove(&a) {
                    mates[4 * ci + pos] = (oc, op);
                    mates[4 * oc + op] = (ci, pos);
                } else {
                    first.insert(a, (ci, pos));
                }
            }
        }
        mates
    }
}

fn count_orbits(n: usize, next: impl Fn(usize) -> usize) -> usize {
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut d = s;
        while !seen[d] {
            seen[d] = true;
            d = next(d);
        }
    }
    count
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}
