//! Kauffman bracket by enumeration of all smoothing states.

use std::collections::{BTreeMap, HashMap};

use crate::diagram::{ArcId, Diagram};
use crate::error::{Error, Result};
use crate::ring::RingElem;

/// Largest crossing count the state sum accepts by default.
pub const DEFAULT_CAP: usize = 14;

/// The loop value `-A^2 - A^-2`.
pub fn delta() -> RingElem {
    RingElem::monomial(-1, 2) + RingElem::monomial(-1, -2)
}

/// Unnormalized bracket `<D>` with `<unknot> = 1`.
pub fn kauffman_bracket(d: &Diagram) -> Result<RingElem> {
    kauffman_bracket_capped(d, DEFAULT_CAP)
}

pub fn kauffman_bracket_capped(d: &Diagram, cap: usize) -> Result<RingElem> {
    d.require_link()?;
    if d.crossing_count() > cap {
        return Err(Error::CrossingCap {
            n: d.crossing_count(),
            cap,
        });
    }
    let tuples: Vec<[ArcId; 4]> = d.crossings().iter().map(|c| c.ends).collect();
    Ok(bracket_with_pairings(&tuples, &[], d.zero_crossing_components()))
}

/// State sum over `crossings` (PD tuples read from the incoming under-strand)
/// with extra arc identifications `pairs` and `circles` free loops. At each
/// crossing `[a, b, c, d]` the A-smoothing joins `a`–`b` and `c`–`d`, the
/// B-smoothing joins `a`–`d` and `b`–`c`.
pub fn bracket_with_pairings(crossings: &[[ArcId; 4]], pairs: &[(ArcId, ArcId)], circles: u32) -> RingElem {
    let mut index: HashMap<ArcId, usize> = HashMap::new();
    for &a in crossings.iter().flatten().chain(pairs.iter().flat_map(|(x, y)| [x, y])) {
        let next = index.len();
        index.entry(a).or_insert(next);
    }
    let m = index.len();
    let tuples: Vec<[usize; 4]> = crossings.iter().map(|t| t.map(|a| index[&a])).collect();
    let fixed: Vec<(usize, usize)> = pairs.iter().map(|(x, y)| (index[x], index[y])).collect();
    let n = tuples.len();

    // (A-count minus B-count, loops) -> number of states
    let mut counts: BTreeMap<(i64, usize), u64> = BTreeMap::new();
    let mut parent = vec![0usize; m];
    for state in 0u64..(1u64 << n) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        for &(x, y) in &fixed {
            union(&mut parent, x, y);
        }
        let mut balance = 0i64;
        for (i, t) in tuples.iter().enumerate() {
            if state >> i & 1 == 0 {
                balance += 1;
                union(&mut parent, t[0], t[1]);
                union(&mut parent, t[2], t[3]);
            } else {
                balance -= 1;
                union(&mut parent, t[0], t[3]);
                union(&mut parent, t[1], t[2]);
            }
        }
        let loops = (0..m).filter(|&i| find(&mut parent, i) == i).count();
        *counts.entry((balance, loops)).or_default() += 1;
    }

    let delta = delta();
    let mut total = RingElem::zero();
    for ((balance, loops), count) in counts {
        let all = loops + circles as usize;
        let term = RingElem::monomial(count, balance) * delta.pow(all.saturating_sub(1) as u32);
        total += &term;
    }
    total
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(p, a), find(p, b));
    if ra != rb {
        p[ra] = rb;
    }
}

/// Jones invariant in the variable `A`: `(-A)^(-3w) <D>`.
pub fn jones_a(d: &Diagram) -> Result<RingElem> {
    jones_a_capped(d, DEFAULT_CAP)
}

pub fn jones_a_capped(d: &Diagram, cap: usize) -> Result<RingElem> {
    let b = kauffman_bracket_capped(d, cap)?;
    Ok(RingElem::neg_a_pow(-3 * d.writhe()?) * b)
}
