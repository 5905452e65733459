//! A second Kauffman bracket, written independently of the library's state
//! sum: expand the first crossing both ways, renaming arcs as strands join,
//! and count closed loops when no crossings remain.

use std::collections::BTreeMap;

use skein::{Diagram, RingElem};

type Poly = BTreeMap<i64, i64>;

fn add_into(acc: &mut Poly, p: &Poly, shift: i64) {
    for (&e, &c) in p {
        *acc.entry(e + shift).or_default() += c;
    }
    acc.retain(|_, c| *c != 0);
}

fn delta_pow(n: usize) -> Poly {
    let mut p = Poly::from([(0, 1)]);
    for _ in 0..n {
        let mut q = Poly::new();
        for (&e, &c) in &p {
            *q.entry(e + 2).or_default() -= c;
            *q.entry(e - 2).or_default() -= c;
        }
        q.retain(|_, c| *c != 0);
        p = q;
    }
    p
}

/// Joins the strand ends labeled `x` and `y`. Returns whether a loop closed.
fn join(rest: &mut [[u32; 4]], x: u32, y: u32) -> bool {
    if x == y {
        return true;
    }
    for t in rest.iter_mut() {
        for a in t.iter_mut() {
            if *a == y {
                *a = x;
            }
        }
    }
    false
}

fn expand(crossings: &[[u32; 4]], loops: usize) -> Poly {
    let Some((first, rest)) = crossings.split_first() else {
        return delta_pow(loops.saturating_sub(1));
    };
    let [a, b, c, d] = *first;
    let mut out = Poly::new();
    // A-smoothing: a with b, c with d
    let mut r = rest.to_vec();
    let mut l = loops;
    l += join(&mut r, a, b) as usize;
    let (c2, d2) = (rename(c, a, b), rename(d, a, b));
    l += join(&mut r, c2, d2) as usize;
    add_into(&mut out, &expand(&r, l), 1);
    // B-smoothing: a with d, b with c
    let mut r = rest.to_vec();
    let mut l = loops;
    l += join(&mut r, a, d) as usize;
    let (b2, c2) = (rename(b, a, d), rename(c, a, d));
    l += join(&mut r, b2, c2) as usize;
    add_into(&mut out, &expand(&r, l), -1);
    out
}

fn rename(v: u32, keep: u32, gone: u32) -> u32 {
    if v == gone {
        keep
    } else {
        v
    }
}

fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&e, &c) in p {
        for (&f, &k) in q {
            *out.entry(e + f).or_default() += c * k;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn bracket(d: &Diagram) -> RingElem {
    let tuples: Vec<[u32; 4]> = d.crossings().iter().map(|c| c.ends).collect();
    let circles = d.zero_crossing_components() as usize;
    let p = if tuples.is_empty() {
        delta_pow(circles.saturating_sub(1))
    } else {
        mul(&expand(&tuples, 0), &delta_pow(circles))
    };
    p.into_iter().map(|(e, c)| RingElem::monomial(c, e)).sum()
}
