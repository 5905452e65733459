//! Rewriting calculus on diagrams: resolutions of double points,
//! singularization, crossing changes and the local moves (R1, R2, R3 and
//! the two rigid-vertex slides).
//!
//! Crossing ids survive every move; new crossings take the next free ids.
//! After each rewrite arcs are renumbered canonically, with the first piece of
//! a split arc (along the orientation) keeping the old label. This makes a
//! move followed by its inverse at the image site return the original
//! diagram byte for byte in the common cases.

mod search;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{ArcId, Crossing, CrossingId, CrossingKind, Diagram};
use crate::error::{Error, Result};
use crate::net::{Net, Slot};

pub use search::{equivalent, is_kink, simplify, EquivalenceReport, SimplifyOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    #[serde(rename = "R1_add_pos")]
    R1AddPos,
    #[serde(rename = "R1_add_neg")]
    R1AddNeg,
    #[serde(rename = "R1_remove")]
    R1Remove,
    #[serde(rename = "R2_add")]
    R2Add,
    #[serde(rename = "R2_remove")]
    R2Remove,
    #[serde(rename = "R3")]
    R3,
    #[serde(rename = "S_slide_over")]
    SlideOver,
    #[serde(rename = "S_slide_under")]
    SlideUnder,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::R1AddPos,
        MoveKind::R1AddNeg,
        MoveKind::R1Remove,
        MoveKind::R2Add,
        MoveKind::R2Remove,
        MoveKind::R3,
        MoveKind::SlideOver,
        MoveKind::SlideUnder,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::R1AddPos => "R1_add_pos",
            MoveKind::R1AddNeg => "R1_add_neg",
            MoveKind::R1Remove => "R1_remove",
            MoveKind::R2Add => "R2_add",
            MoveKind::R2Remove => "R2_remove",
            MoveKind::R3 => "R3",
            MoveKind::SlideOver => "S_slide_over",
            MoveKind::SlideUnder => "S_slide_under",
        }
    }

    /// Change in crossing count caused by this kind of move.
    pub fn crossing_delta(self) -> i32 {
        match self {
            MoveKind::R1AddPos | MoveKind::R1AddNeg => 1,
            MoveKind::R1Remove => -1,
            MoveKind::R2Add => 2,
            MoveKind::R2Remove => -2,
            _ => 0,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A move kind plus the ids pinning down where it applies.
///
/// Locations: `R1_add_*` takes `[arc, side]` (`arc = 0` for a crossingless
/// circle); `R1_remove` takes `[crossing]`; `R2_add` takes
/// `[arc_a, forward_a, arc_b, forward_b, over]` naming two darts of one face
/// (or `[0, over]` to fold a crossingless circle); `R2_remove` takes
/// `[c1, c2, crossing, slot]` and `R3` / slides take `[c1, c2, c3, crossing,
/// slot]`, where `(crossing, slot)` is the smallest dart of the face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub location: Vec<u32>,
}

impl MoveSite {
    pub fn new(kind: MoveKind, location: Vec<u32>) -> Self {
        Self { kind, location }
    }

    fn mismatch(&self) -> Error {
        Error::PatternMismatch {
            kind: self.kind.to_string(),
            location: self.location.clone(),
        }
    }
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.kind, self.location)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "pos")]
    Pos,
    #[serde(rename = "neg")]
    Neg,
}

impl Sign {
    pub fn of(kind: CrossingKind) -> Option<Sign> {
        match kind {
            CrossingKind::Positive => Some(Sign::Pos),
            CrossingKind::Negative => Some(Sign::Neg),
            CrossingKind::Singular => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn epsilon(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Pos => "pos",
            Sign::Neg => "neg",
        }
    }

    pub fn resolution(self) -> ResolutionSign {
        match self {
            Sign::Pos => ResolutionSign::Plus,
            Sign::Neg => ResolutionSign::Minus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResolutionSign {
    Plus,
    Minus,
    Zero,
}

/// Three-valued outcome of a bounded search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

fn singular_index(d: &Diagram, p: CrossingId) -> Result<usize> {
    let i = d.index_of(p).ok_or(Error::NoSuchCrossing(p))?;
    if !d.crossings()[i].kind.is_singular() {
        return Err(Error::NotSingular(p));
    }
    Ok(i)
}

fn signed_index(d: &Diagram, c: CrossingId) -> Result<usize> {
    let i = d.index_of(c).ok_or(Error::NoSuchCrossing(c))?;
    if d.crossings()[i].kind.is_singular() {
        return Err(Error::SingularCrossing(c));
    }
    Ok(i)
}

fn with_crossing(d: &Diagram, i: usize, c: Crossing) -> Diagram {
    let mut cs = d.crossings().to_vec();
    cs[i] = c;
    Diagram::from_parts(d.declared_components(), d.zero_crossing_components(), cs)
}

/// Replaces the double point `p` by a positive crossing, a negative crossing
/// or its oriented smoothing.
pub fn resolve(d: &Diagram, p: CrossingId, s: ResolutionSign) -> Result<Diagram> {
    let i = singular_index(d, p)?;
    let [a, b, c, e] = d.crossings()[i].ends;
    match s {
        ResolutionSign::Plus => Ok(with_crossing(d, i, Crossing::new(p, CrossingKind::Positive, [a, b, c, e]))),
        ResolutionSign::Minus => Ok(with_crossing(d, i, Crossing::new(p, CrossingKind::Negative, [e, a, b, c]))),
        ResolutionSign::Zero => {
            let net = Net::from_diagram(d);
            let removed = BTreeSet::from([i]);
            Ok(net
                .splice(&removed, |v, t| if v.out[(t + 1) % 4] { (t + 1) % 4 } else { (t + 3) % 4 })
                .to_diagram())
        }
    }
}

/// Turns the signed crossing `c` into a double point.
pub fn make_singular(d: &Diagram, c: CrossingId) -> Result<Diagram> {
    let i = signed_index(d, c)?;
    let x = &d.crossings()[i];
    let [a, b, e, f] = x.ends;
    let ends = match x.kind {
        CrossingKind::Positive => [a, b, e, f],
        _ => [b, e, f, a],
    };
    Ok(with_crossing(d, i, Crossing::new(c, CrossingKind::Singular, ends)))
}

/// Switches crossing `c`; also returns the double point passed through.
pub fn crossing_change(d: &Diagram, c: CrossingId) -> Result<(Diagram, Diagram)> {
    let i = signed_index(d, c)?;
    let sign = Sign::of(d.crossings()[i].kind).expect("signed");
    let mid = make_singular(d, c)?;
    let flipped = resolve(&mid, c, sign.flip().resolution())?;
    Ok((flipped, mid))
}

/// Sets crossing `c` to `to`; an error if it already has that sign.
pub fn change_to(d: &Diagram, c: CrossingId, to: Sign) -> Result<(Diagram, Diagram)> {
    let i = signed_index(d, c)?;
    if Sign::of(d.crossings()[i].kind) == Some(to) {
        return Err(Error::NoOpChange {
            crossing: c,
            sign: to.as_str(),
        });
    }
    crossing_change(d, c)
}

/// All sites where a move applies, sorted by kind then location.
pub fn enumerate_move_sites(d: &Diagram) -> Vec<MoveSite> {
    let net = Net::from_diagram(d);
    let mut out = Vec::new();
    for kind in MoveKind::ALL {
        out.extend(sites_of_kind(d, &net, kind));
    }
    out
}

/// Sites of moves that do not add crossings.
pub fn reducing_sites(d: &Diagram) -> Vec<MoveSite> {
    let net = Net::from_diagram(d);
    MoveKind::ALL
        .into_iter()
        .filter(|k| k.crossing_delta() <= 0)
        .flat_map(|k| sites_of_kind(d, &net, k))
        .collect()
}

pub fn sites_for(d: &Diagram, kind: MoveKind) -> Vec<MoveSite> {
    sites_of_kind(d, &Net::from_diagram(d), kind)
}

fn sites_of_kind(d: &Diagram, net: &Net, kind: MoveKind) -> Vec<MoveSite> {
    let mut locs: Vec<Vec<u32>> = match kind {
        MoveKind::R1AddPos | MoveKind::R1AddNeg => {
            let mut v = Vec::new();
            if d.zero_crossing_components() > 0 {
                v.extend([vec![0, 0], vec![0, 1]]);
            }
            let arcs: BTreeSet<ArcId> = d.crossings().iter().flat_map(|c| c.ends).collect();
            for a in arcs {
                v.extend([vec![a, 0], vec![a, 1]]);
            }
            v
        }
        MoveKind::R1Remove => net
            .verts
            .iter()
            .enumerate()
            .filter(|(i, v)| v.over.is_some() && has_curl(net, *i))
            .map(|(_, v)| vec![v.id])
            .collect(),
        MoveKind::R2Add => r2_add_sites(d, net),
        MoveKind::R2Remove => net
            .faces()
            .into_iter()
            .filter(|f| bigon_removable(net, f))
            .map(|f| {
                let (c1, c2) = (net.verts[f[0].0].id, net.verts[f[1].0].id);
                let (dc, ds) = min_dart(net, &f);
                vec![c1.min(c2), c1.max(c2), dc, ds]
            })
            .collect(),
        MoveKind::R3 | MoveKind::SlideOver | MoveKind::SlideUnder => net
            .faces()
            .into_iter()
            .filter(|f| triangle_kind(net, f) == Some(kind))
            .map(|f| {
                let mut ids: Vec<u32> = f.iter().map(|s| net.verts[s.0].id).collect();
                ids.sort_unstable();
                let (dc, ds) = min_dart(net, &f);
                ids.extend([dc, ds]);
                ids
            })
            .collect(),
    };
    locs.sort();
    locs.dedup();
    locs.into_iter().map(|l| MoveSite::new(kind, l)).collect()
}

fn has_curl(net: &Net, v: usize) -> bool {
    (0..4).any(|s| {
        let (w, t) = net.verts[v].link[s];
        w == v && (t == (s + 1) % 4 || t == (s + 3) % 4)
    })
}

fn min_dart(net: &Net, face: &[Slot]) -> (u32, u32) {
    face.iter()
        .map(|&(v, s)| (net.verts[v].id, s as u32))
        .min()
        .expect("non-empty face")
}

fn dart_key(net: &Net, d: Slot) -> (u32, u32) {
    (net.label(d), net.is_out(d) as u32)
}

fn r2_add_sites(d: &Diagram, net: &Net) -> Vec<Vec<u32>> {
    let mut v = Vec::new();
    if d.zero_crossing_components() > 0 {
        v.extend([vec![0, 0], vec![0, 1]]);
    }
    for face in net.faces() {
        for i in 0..face.len() {
            for j in i + 1..face.len() {
                let (ka, kb) = (dart_key(net, face[i]), dart_key(net, face[j]));
                if ka.0 == kb.0 {
                    continue;
                }
                let (a, b) = (ka.min(kb), ka.max(kb));
                for over in 0..2 {
                    v.push(vec![a.0, a.1, b.0, b.1, over]);
                }
            }
        }
    }
    v
}

fn bigon_removable(net: &Net, face: &[Slot]) -> bool {
    if face.len() != 2 || face[0].0 == face[1].0 {
        return false;
    }
    let p = face[0];
    let q = net.link(p);
    match (net.is_over(p), net.is_over(q)) {
        (Some(a), Some(b)) => a == b && net.verts[face[1].0].over.is_some(),
        _ => false,
    }
}

fn triangle_kind(net: &Net, face: &[Slot]) -> Option<MoveKind> {
    if face.len() != 3 {
        return None;
    }
    let vs: BTreeSet<usize> = face.iter().map(|s| s.0).collect();
    if vs.len() != 3 {
        return None;
    }
    let singular: Vec<usize> = face.iter().map(|s| s.0).filter(|&v| net.verts[v].over.is_none()).collect();
    let strands: Vec<(Option<bool>, Option<bool>)> = face
        .iter()
        .map(|&p| (net.is_over(p), net.is_over(net.link(p))))
        .collect();
    match singular.len() {
        0 => strands.contains(&(Some(true), Some(true))).then_some(MoveKind::R3),
        1 => strands.iter().find_map(|&s| match s {
            (Some(true), Some(true)) => Some(MoveKind::SlideOver),
            (Some(false), Some(false)) => Some(MoveKind::SlideUnder),
            _ => None,
        }),
        _ => None,
    }
}

fn find_dart(net: &Net, c: u32, s: u32) -> Option<Slot> {
    let v = net.index_of(c)?;
    (s < 4).then_some((v, s as usize))
}

fn face_of(net: &Net, start: Slot) -> Vec<Slot> {
    let mut f = vec![start];
    let mut d = net.next_dart(start);
    while d != start {
        f.push(d);
        d = net.next_dart(d);
    }
    f
}

/// Applies a move at a site; fails with a pattern mismatch if the site does
/// not describe an applicable move of `d`.
pub fn apply_move(d: &Diagram, site: &MoveSite) -> Result<Diagram> {
    let net = Net::from_diagram(d);
    if !sites_of_kind(d, &net, site.kind).contains(site) {
        return Err(site.mismatch());
    }
    let loc = &site.location;
    let out = match site.kind {
        MoveKind::R1AddPos | MoveKind::R1AddNeg => r1_add(d, site.kind == MoveKind::R1AddPos, loc[0], loc[1]),
        MoveKind::R1Remove => {
            let v = net.index_of(loc[0]).ok_or_else(|| site.mismatch())?;
            net.splice(&BTreeSet::from([v]), |_, t| (t + 2) % 4).to_diagram()
        }
        MoveKind::R2Add => {
            let id = d.next_crossing_id();
            if loc.len() == 2 {
                fold_circle(d, loc[1] == 0, id)
            } else {
                let da = dart_by_key(&net, loc[0], loc[1]).ok_or_else(|| site.mismatch())?;
                let db = dart_by_key(&net, loc[2], loc[3]).ok_or_else(|| site.mismatch())?;
                let mut n = net.clone();
                n.push_finger(da, db, loc[4] == 0, id);
                n.to_diagram()
            }
        }
        MoveKind::R2Remove => {
            let v1 = net.index_of(loc[0]).ok_or_else(|| site.mismatch())?;
            let v2 = net.index_of(loc[1]).ok_or_else(|| site.mismatch())?;
            net.splice(&BTreeSet::from([v1, v2]), |_, t| (t + 2) % 4).to_diagram()
        }
        MoveKind::R3 | MoveKind::SlideOver | MoveKind::SlideUnder => {
            let start = find_dart(&net, loc[3], loc[4]).ok_or_else(|| site.mismatch())?;
            let f = face_of(&net, start);
            let mut n = net.clone();
            n.flip_triangle([f[0], f[1], f[2]]);
            n.to_diagram()
        }
    };
    Ok(out)
}

fn dart_by_key(net: &Net, label: u32, fwd: u32) -> Option<Slot> {
    (0..net.verts.len())
        .flat_map(|v| (0..4).map(move |s| (v, s)))
        .find(|&s| net.label(s) == label && net.is_out(s) as u32 == fwd)
}

fn r1_add(d: &Diagram, positive: bool, arc: ArcId, side: u32) -> Diagram {
    let id = d.next_crossing_id();
    let max = d.max_arc();
    let mut cs = d.crossings().to_vec();
    let mut circles = d.zero_crossing_components();
    let (a, x, y) = if arc == 0 {
        circles -= 1;
        (max + 1, max + 2, max + 1)
    } else {
        let (a, x, y) = (arc, max + 1, max + 2);
        'outer: for c in cs.iter_mut() {
            for p in 0..4 {
                if c.ends[p] == a && c.kind.is_incoming(p) {
                    c.ends[p] = y;
                    break 'outer;
                }
            }
        }
        (a, x, y)
    };
    let (kind, ends) = match (positive, side) {
        (true, 0) => (CrossingKind::Positive, [a, y, x, x]),
        (true, _) => (CrossingKind::Positive, [x, x, y, a]),
        (false, 0) => (CrossingKind::Negative, [x, a, y, x]),
        (false, _) => (CrossingKind::Negative, [a, x, x, y]),
    };
    cs.push(Crossing::new(id, kind, ends));
    Diagram::from_parts(0, circles, cs).canonical_relabel()
}

/// Folds a crossingless circle over itself into a two-crossing diagram.
fn fold_circle(d: &Diagram, first_over: bool, id: CrossingId) -> Diagram {
    let m = d.max_arc();
    let [e1, e2, e3, e4] = [m + 1, m + 2, m + 3, m + 4];
    let (x1, x2) = if first_over {
        (
            Crossing::new(id, CrossingKind::Positive, [e3, e1, e4, e4]),
            Crossing::new(id + 1, CrossingKind::Negative, [e2, e1, e3, e2]),
        )
    } else {
        (
            Crossing::new(id, CrossingKind::Negative, [e4, e3, e1, e4]),
            Crossing::new(id + 1, CrossingKind::Positive, [e1, e3, e2, e2]),
        )
    };
    let mut cs = d.crossings().to_vec();
    cs.extend([x1, x2]);
    Diagram::from_parts(0, d.zero_crossing_components() - 1, cs).canonical_relabel()
}

/// Whether the double point `p` has a loop joining two adjacent ends.
pub fn is_syntactic_kink(d: &Diagram, p: CrossingId) -> bool {
    let Some(i) = d.index_of(p) else { return false };
    d.crossings()[i].kind.is_singular() && has_curl(&Net::from_diagram(d), i)
}

/// Finds a site on `after` whose move reproduces `before` exactly.
pub fn inverse_site(before: &Diagram, site: &MoveSite, after: &Diagram) -> Option<MoveSite> {
    let kinds = match site.kind {
        MoveKind::R1AddPos | MoveKind::R1AddNeg => vec![MoveKind::R1Remove],
        MoveKind::R1Remove => vec![MoveKind::R1AddPos, MoveKind::R1AddNeg],
        MoveKind::R2Add => vec![MoveKind::R2Remove],
        MoveKind::R2Remove => vec![MoveKind::R2Add],
        k => vec![k],
    };
    let net = Net::from_diagram(after);
    kinds
        .iter()
        .flat_map(|&k| sites_of_kind(after, &net, k))
        .find(|s| apply_move(after, s).as_ref() == Ok(before))
}
