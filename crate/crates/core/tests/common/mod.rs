#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skein::integrability::{random_walk, NamedDiagram};
use skein::invariants::jones_a;
use skein::moves::{enumerate_move_sites, MoveSite};
use skein::tables::by_name;
use skein::{Diagram, RingElem};

pub fn named(names: &[&str]) -> Vec<NamedDiagram> {
    names
        .iter()
        .map(|n| NamedDiagram {
            name: n.to_string(),
            diagram: by_name(n).unwrap_or_else(|| panic!("no diagram {n}")),
        })
        .collect()
}

pub fn jones_unlinks() -> BTreeMap<u32, RingElem> {
    (1..=4).map(|m| (m, jones_a(&Diagram::unlink(m)).unwrap())).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` (diagram, site) pairs: random walks from the seeds, then one
/// more random site on the walked diagram.
pub fn move_corpus(seeds: &[&str], count: usize, cap: usize, seed: u64) -> Vec<(Diagram, MoveSite)> {
    let seeds = named(seeds);
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let start = &seeds[i % seeds.len()].diagram;
            let (d, _) = random_walk(start, 1 + i % 4, cap, &mut r);
            let sites = enumerate_move_sites(&d);
            let site = sites[(i * 7919 + 13) % sites.len()].clone();
            (d, site)
        })
        .collect()
}

pub mod oracle;
