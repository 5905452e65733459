//! The degree-2 finite-type knot invariant, by a Gauss-diagram formula and,
//! independently, as the `z^2` coefficient of the Conway polynomial.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::canon::iso_key;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::moves::{crossing_change, resolve, ResolutionSign};
use crate::ring::RingElem;

/// Default node budget for the skein recursion.
pub const DEFAULT_SKEIN_BUDGET: usize = 200_000;

fn require_knot(d: &Diagram) -> Result<()> {
    d.require_link()?;
    match d.components() {
        1 => Ok(()),
        m => Err(Error::NotAKnot(m)),
    }
}

/// Signed count of interleaved crossing pairs seen from the basepoint at the
/// start of arc `start`: pairs met in the order `i` under, `j` over, `i`
/// over, `j` under.
fn based_pair_sum(d: &Diagram, start: u32) -> i64 {
    let seq = d.passages_from(start);
    let n = d.crossing_count();
    let mut first = vec![usize::MAX; n];
    let mut second = vec![usize::MAX; n];
    let mut first_over = vec![false; n];
    for (pos, &(c, over)) in seq.iter().enumerate() {
        if first[c] == usize::MAX {
            first[c] = pos;
            first_over[c] = over;
        } else {
            second[c] = pos;
        }
    }
    let sign: Vec<i64> = d
        .crossings()
        .iter()
        .map(|c| c.kind.sign().unwrap_or(0))
        .collect();
    let mut total = 0;
    for i in 0..n {
        if first_over[i] {
            continue;
        }
        for j in 0..n {
            if !first_over[j] || i == j {
                continue;
            }
            if first[i] < first[j] && first[j] < second[i] && second[i] < second[j] {
                total += sign[i] * sign[j];
            }
        }
    }
    total
}

/// Gauss-diagram formula for v2, averaged over all basepoints. The average
/// must be an integer; anything else is reported as an evaluation error.
pub fn v2_gauss(d: &Diagram) -> Result<i64> {
    require_knot(d)?;
    if d.crossing_count() == 0 {
        return Ok(0);
    }
    let starts: Vec<u32> = d.crossings().iter().flat_map(|c| c.ends).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let sum: i64 = starts.iter().map(|&s| based_pair_sum(d, s)).sum();
    let k = starts.len() as i64;
    if sum % k != 0 {
        return Err(Error::Eval(format!("basepoint average {sum}/{k} is not an integer")));
    }
    Ok(sum / k)
}

/// Conway polynomial (exponents are powers of `z`) by the skein relation
/// `C(L+) - C(L-) = z C(L0)`, switching crossings towards a descending
/// diagram. `budget` bounds the number of distinct diagrams expanded.
pub fn conway_skein(d: &Diagram, budget: usize) -> Result<RingElem> {
    d.require_link()?;
    let mut memo = HashMap::new();
    let mut spent = 0;
    conway_rec(d, &mut memo, &mut spent, budget)
}

fn conway_rec(
    d: &Diagram,
    memo: &mut HashMap<Vec<u32>, RingElem>,
    spent: &mut usize,
    budget: usize,
) -> Result<RingElem> {
    let bad = d.descending_violations(&d.component_starts());
    let Some(&c) = bad.first() else {
        return Ok(if d.components() == 1 {
            RingElem::one()
        } else {
            RingElem::zero()
        });
    };
    let key = iso_key(d, &[]);
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    *spent += 1;
    if *spent > budget {
        return Err(Error::Budget(format!("skein recursion exceeded {budget} nodes")));
    }
    let sign = d.crossing(c).and_then(|x| x.kind.sign()).expect("signed");
    let (switched, mid) = crossing_change(d, c)?;
    let smoothed = resolve(&mid, c, ResolutionSign::Zero)?;
    let s = conway_rec(&switched, memo, spent, budget)?;
    let z0 = RingElem::var() * conway_rec(&smoothed, memo, spent, budget)?;
    let value = if sign > 0 { s + z0 } else { s - z0 };
    memo.insert(key, value.clone());
    Ok(value)
}

/// v2 as the `z^2` coefficient of the Conway polynomial.
pub fn v2_skein_oracle(d: &Diagram, budget: usize) -> Result<i64> {
    require_knot(d)?;
    let c = conway_skein(d, budget)?;
    c.coeff(2)
        .to_i64()
        .ok_or_else(|| Error::Eval("coefficient out of range".into()))
}
