//! Slot graph of a diagram: every crossing is a 4-valent vertex whose slots
//! are numbered counterclockwise, and every arc is an edge between two slots.
//! Local rewrites are easier to state here than on PD tuples.

use std::collections::{BTreeSet, HashMap};

use crate::diagram::{ArcId, Crossing, CrossingId, CrossingKind, Diagram};

pub(crate) type Slot = (usize, usize);

#[derive(Clone, Debug)]
pub(crate) struct Vertex {
    pub id: CrossingId,
    /// Slot parity of the over-strand; `None` at a singular crossing.
    pub over: Option<usize>,
    pub out: [bool; 4],
    pub link: [Slot; 4],
    pub label: [ArcId; 4],
}

#[derive(Clone, Debug)]
pub(crate) struct Net {
    pub verts: Vec<Vertex>,
    pub circles: u32,
    pub next_label: ArcId,
}

impl Net {
    pub fn from_diagram(d: &Diagram) -> Net {
        let mates = d.mates();
        let verts = d
            .crossings()
            .iter()
            .enumerate()
            .map(|(i, c)| Vertex {
                id: c.id,
                over: match c.kind {
                    CrossingKind::Singular => None,
                    _ => Some(1),
                },
                out: [0, 1, 2, 3].map(|p| !c.kind.is_incoming(p)),
                link: [0, 1, 2, 3].map(|p| mates[4 * i + p]),
                label: c.ends,
            })
            .collect();
        Net {
            verts,
            circles: d.zero_crossing_components(),
            next_label: d.max_arc() + 1,
        }
    }

    /// Rebuilds PD tuples and renumbers arcs canonically.
    pub fn to_diagram(&self) -> Diagram {
        let crossings = self
            .verts
            .iter()
            .map(|v| {
                let ins: Vec<usize> = (0..4).filter(|&s| !v.out[s]).collect();
                let (start, kind) = match v.over {
                    Some(p) => {
                        let u = *ins.iter().find(|&&s| s % 2 != p).expect("under in-slot");
                        let o = *ins.iter().find(|&&s| s % 2 == p).expect("over in-slot");
                        let kind = if (o + 4 - u) % 4 == 3 {
                            CrossingKind::Positive
                        } else {
                            CrossingKind::Negative
                        };
                        (u, kind)
                    }
                    None => {
                        let (a, b) = (ins[0], ins[1]);
                        let u = if (b + 4 - a) % 4 == 3 { a } else { b };
                        (u, CrossingKind::Singular)
                    }
                };
                Crossing::new(v.id, kind, [0, 1, 2, 3].map(|k| v.label[(start + k) % 4]))
            })
            .collect();
        Diagram::from_parts(0, self.circles, crossings).canonical_relabel()
    }

    pub fn index_of(&self, id: CrossingId) -> Option<usize> {
        self.verts.iter().position(|v| v.id == id)
    }

    pub fn fresh_label(&mut self) -> ArcId {
        let l = self.next_label;
        self.next_label += 1;
        l
    }

    fn connect(&mut self, a: Slot, b: Slot, label: ArcId) {
        self.verts[a.0].link[a.1] = b;
        self.verts[b.0].link[b.1] = a;
        self.verts[a.0].label[a.1] = label;
        self.verts[b.0].label[b.1] = label;
    }

    pub fn link(&self, s: Slot) -> Slot {
        self.verts[s.0].link[s.1]
    }

    pub fn is_out(&self, s: Slot) -> bool {
        self.verts[s.0].out[s.1]
    }

    pub fn label(&self, s: Slot) -> ArcId {
        self.verts[s.0].label[s.1]
    }

    /// Whether the strand through slot `s` is the over-strand there.
    pub fn is_over(&self, s: Slot) -> Option<bool> {
        self.verts[s.0].over.map(|p| s.1 % 2 == p)
    }

    /// Next dart around the face on the left.
    pub fn next_dart(&self, d: Slot) -> Slot {
        let (w, t) = self.link(d);
        (w, (t + 3) % 4)
    }

    /// Faces as dart cycles, each starting at its smallest dart, in order of
    /// that dart.
    pub fn faces(&self) -> Vec<Vec<Slot>> {
        let mut seen = vec![[false; 4]; self.verts.len()];
        let mut faces = Vec::new();
        for v in 0..self.verts.len() {
            for s in 0..4 {
                if seen[v][s] {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = (v, s);
                while !seen[d.0][d.1] {
                    seen[d.0][d.1] = true;
                    face.push(d);
                    d = self.next_dart(d);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Deletes the vertices in `remove`, routing each strand through them with
    /// `pass` (in-slot to out-slot). Merged arcs keep the label of their first
    /// piece; strands closing up entirely inside the removed set become
    /// crossingless circles.
    pub fn splice(&self, remove: &BTreeSet<usize>, pass: impl Fn(&Vertex, usize) -> usize) -> Net {
        let mut net = self.clone();
        let mut visited: HashMap<Slot, ()> = HashMap::new();
        for v in 0..self.verts.len() {
            if remove.contains(&v) {
                continue;
            }
            for s in 0..4 {
                if !self.verts[v].out[s] {
                    continue;
                }
                let (mut w, mut t) = self.verts[v].link[s];
                if !remove.contains(&w) {
                    continue;
                }
                while remove.contains(&w) {
                    visited.insert((w, t), ());
                    let o = pass(&self.verts[w], t);
                    visited.insert((w, o), ());
                    (w, t) = self.verts[w].link[o];
                }
                net.connect((v, s), (w, t), self.verts[v].label[s]);
            }
        }
        for &w in remove {
            for t in 0..4 {
                if self.verts[w].out[t] || visited.contains_key(&(w, t)) {
                    continue;
                }
                net.circles += 1;
                let (mut x, mut u) = (w, t);
                while !visited.contains_key(&(x, u)) {
                    visited.insert((x, u), ());
                    let o = pass(&self.verts[x], u);
                    visited.insert((x, o), ());
                    (x, u) = self.verts[x].link[o];
                }
            }
        }
        net.compact(remove);
        net
    }

    fn compact(&mut self, remove: &BTreeSet<usize>) {
        let mut map = vec![usize::MAX; self.verts.len()];
        let mut next = 0;
        for (i, slot) in map.iter_mut().enumerate() {
            if !remove.contains(&i) {
                *slot = next;
                next += 1;
            }
        }
        let verts = std::mem::take(&mut self.verts);
        self.verts = verts
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !remove.contains(i))
            .map(|(_, mut v)| {
                for l in v.link.iter_mut() {
                    l.0 = map[l.0];
                }
                v
            })
            .collect();
    }

    /// Pushes the arc of dart `a` across its face and over or under the arc of
    /// dart `b`, creating a bigon. New crossings get ids `id1`, `id1 + 1`.
    pub fn push_finger(&mut self, a: Slot, b: Slot, a_over: bool, id1: CrossingId) {
        let a_far = self.link(a);
        let b_far = self.link(b);
        let (out_a, out_b) = (self.is_out(a), self.is_out(b));
        let (la, lb) = (self.label(a), self.label(b));
        let n = self.verts.len();
        let (x1, x2) = (n, n + 1);
        let pair = if a_over { 0 } else { 1 };
        let x1_out = [!out_a, !out_b, out_a, out_b];
        let x2_out = [out_a, !out_b, !out_a, out_b];
        for (id, out) in [(id1, x1_out), (id1 + 1, x2_out)] {
            self.verts.push(Vertex {
                id,
                over: Some(pair),
                out,
                link: [(0, 0); 4],
                label: [0; 4],
            });
        }
        // pieces of a in the order va, X1, X2, far end
        let a_pieces = [(a, (x1, 0)), ((x1, 2), (x2, 2)), ((x2, 0), a_far)];
        // pieces of b in the order vb, X2, X1, far end
        let b_pieces = [(b, (x2, 1)), ((x2, 3), (x1, 1)), ((x1, 3), b_far)];
        for (pieces, keep_first, old) in [(a_pieces, out_a, la), (b_pieces, out_b, lb)] {
            let order: [usize; 3] = if keep_first { [0, 1, 2] } else { [2, 1, 0] };
            for (k, &i) in order.iter().enumerate() {
                let label = if k == 0 { old } else { self.fresh_label() };
                self.connect(pieces[i].0, pieces[i].1, label);
            }
        }
    }

    /// Reflects a triangular face through its three crossings (the common
    /// combinatorics of R3 and of sliding a strand past a singular crossing).
    /// `darts` is the face's dart cycle.
    pub fn flip_triangle(&mut self, darts: [Slot; 3]) {
        let old = self.clone();
        let mut moved: HashMap<Slot, Slot> = HashMap::new();
        let mut inner = Vec::new();
        for &p in &darts[..3] {
            let q = old.link(p);
            let p2 = (p.0, (p.1 + 2) % 4);
            let q2 = (q.0, (q.1 + 2) % 4);
            moved.insert(p2, q);
            moved.insert(q2, p);
            inner.push((q2, p2, old.label(p)));
        }
        let mut done: BTreeSet<(Slot, Slot)> = BTreeSet::new();
        let mut outer = Vec::new();
        for &x in moved.keys() {
            let y = old.link(x);
            let key = (x.min(y), x.max(y));
            if done.insert(key) {
                outer.push((x, y, old.label(x)));
            }
        }
        for (x, y, l) in outer {
            let nx = moved.get(&x).copied().unwrap_or(x);
            let ny = moved.get(&y).copied().unwrap_or(y);
            self.connect(nx, ny, l);
        }
        for (x, y, l) in inner {
            self.connect(x, y, l);
        }
    }
}
