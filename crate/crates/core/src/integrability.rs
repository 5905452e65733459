//! Local integrability conditions for a singular invariant `f`:
//! (1) `f` vanishes on kinks, and (2) for every order-2 diagram
//! `f(L×+) - f(L×-) = f(L+×) - f(L-×)`.
//!
//! Condition (1) is checked on double points certified as kinks: a double
//! point whose two adjacent ends are joined by a loop bounding an empty disc.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{CrossingId, Diagram};
use crate::error::{Error, Result};
use crate::invariants::SingularInvariant;
use crate::moves::{
    apply_move, enumerate_move_sites, is_kink, make_singular, resolve, Answer, MoveKind, MoveSite, ResolutionSign,
};
use crate::ring::RingElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusKind {
    Kink,
    Order2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedDiagram {
    pub name: String,
    pub diagram: Diagram,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusParams {
    pub kind: CorpusKind,
    pub seeds: Vec<NamedDiagram>,
    pub count: usize,
    pub walk_length: usize,
    pub crossing_cap: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusItem {
    pub seed_name: String,
    /// Moves applied to the seed before singularization (for kinks this ends
    /// with the R1 move creating the curl).
    pub walk: Vec<MoveSite>,
    /// Ids of the crossings made singular.
    pub singular: Vec<CrossingId>,
    pub diagram: Diagram,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub params: CorpusParams,
    pub items: Vec<CorpusItem>,
}

/// Per-item generator, independent of every other item so that items can be
/// produced in parallel and in any order.
pub(crate) fn item_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A random walk of `len` moves that keeps the crossing count at most `cap`.
/// Each step picks a move kind uniformly, then a site of that kind.
pub fn random_walk(d: &Diagram, len: usize, cap: usize, rng: &mut impl Rng) -> (Diagram, Vec<MoveSite>) {
    let mut cur = d.clone();
    let mut walk = Vec::new();
    for _ in 0..len {
        let sites: Vec<MoveSite> = enumerate_move_sites(&cur)
            .into_iter()
            .filter(|s| cur.crossing_count() as i64 + s.kind.crossing_delta() as i64 <= cap as i64)
            .collect();
        let mut kinds: Vec<MoveKind> = sites.iter().map(|s| s.kind).collect();
        kinds.dedup();
        let Some(&kind) = kinds.choose(rng) else { break };
        let of_kind: Vec<&MoveSite> = sites.iter().filter(|s| s.kind == kind).collect();
        let site = (*of_kind.choose(rng).expect("non-empty")).clone();
        cur = apply_move(&cur, &site).expect("enumerated site applies");
        walk.push(site);
    }
    (cur, walk)
}

fn kink_item(params: &CorpusParams, index: usize) -> Result<CorpusItem> {
    let mut rng = item_rng(params.seed, index as u64);
    let seed = &params.seeds[index % params.seeds.len()];
    let cap = params.crossing_cap.saturating_sub(1);
    let (walked, mut walk) = random_walk(&seed.diagram, params.walk_length, cap, &mut rng);
    let kind = if rng.gen_bool(0.5) {
        MoveKind::R1AddPos
    } else {
        MoveKind::R1AddNeg
    };
    let sites = crate::moves::sites_for(&walked, kind);
    let site = sites.choose(&mut rng).expect("every diagram has an R1 site").clone();
    let curl = walked.next_crossing_id();
    let curled = apply_move(&walked, &site)?;
    walk.push(site);
    let diagram = make_singular(&curled, curl)?;
    if is_kink(&diagram, curl, 0) != Answer::Yes {
        return Err(Error::Invalid(format!("item {index}: curl {curl} is not a kink")));
    }
    Ok(CorpusItem {
        seed_name: seed.name.clone(),
        walk,
        singular: vec![curl],
        diagram,
    })
}

fn order2_item(params: &CorpusParams, index: usize) -> Result<CorpusItem> {
    let mut rng = item_rng(params.seed, index as u64);
    let seed = &params.seeds[index % params.seeds.len()];
    let (walked, walk) = random_walk(&seed.diagram, params.walk_length, params.crossing_cap, &mut rng);
    let signed: Vec<CrossingId> = walked
        .crossings()
        .iter()
        .filter(|c| !c.kind.is_singular())
        .map(|c| c.id)
        .collect();
    if signed.len() < 2 {
        return Err(Error::Invalid(format!(
            "item {index}: seed {} has {} signed crossing(s) after walking, 2 are needed",
            seed.name,
            signed.len()
        )));
    }
    let picked: Vec<CrossingId> = signed.choose_multiple(&mut rng, 2).copied().collect();
    let diagram = singularize_all(&walked, &picked)?;
    Ok(CorpusItem {
        seed_name: seed.name.clone(),
        walk,
        singular: picked,
        diagram,
    })
}

pub fn singularize_all(d: &Diagram, ids: &[CrossingId]) -> Result<Diagram> {
    ids.iter().try_fold(d.clone(), |acc, &c| make_singular(&acc, c))
}

fn generate(params: CorpusParams) -> Result<Corpus> {
    if params.seeds.is_empty() {
        return Err(Error::Usage("corpus needs at least one seed diagram".into()));
    }
    let make = match params.kind {
        CorpusKind::Kink => kink_item,
        CorpusKind::Order2 => order2_item,
    };
    let items = (0..params.count)
        .into_par_iter()
        .map(|i| make(&params, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(Corpus { params, items })
}

/// Order-1 corpus: walk, add a curl, singularize the curl crossing.
pub fn gen_kink_corpus(
    seeds: Vec<NamedDiagram>,
    count: usize,
    walk_length: usize,
    crossing_cap: usize,
    seed: u64,
) -> Result<Corpus> {
    generate(CorpusParams {
        kind: CorpusKind::Kink,
        seeds,
        count,
        walk_length,
        crossing_cap,
        seed,
    })
}

/// Order-2 corpus: walk, then singularize two distinct crossings.
pub fn gen_order2_corpus(
    seeds: Vec<NamedDiagram>,
    count: usize,
    walk_length: usize,
    crossing_cap: usize,
    seed: u64,
) -> Result<Corpus> {
    generate(CorpusParams {
        kind: CorpusKind::Order2,
        seeds,
        count,
        walk_length,
        crossing_cap,
        seed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    Kink,
    Commutation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub index: usize,
    pub diagram: Diagram,
    /// `[p, q]` for the commutation condition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labeling: Option<[CrossingId; 2]>,
    pub lhs: Option<RingElem>,
    pub rhs: Option<RingElem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub items_tested: usize,
    pub failures: Vec<Failure>,
    pub passed: bool,
}

impl ConditionReport {
    fn from_failures(condition: Condition, items_tested: usize, failures: Vec<Failure>) -> Self {
        let passed = failures.is_empty();
        ConditionReport {
            condition,
            items_tested,
            failures,
            passed,
        }
    }
}

fn error_failure(index: usize, diagram: &Diagram, labeling: Option<[CrossingId; 2]>, e: Error) -> Failure {
    Failure {
        index,
        diagram: diagram.clone(),
        labeling,
        lhs: None,
        rhs: None,
        error: Some(e.to_string()),
    }
}

/// Condition (1): `f(item) = 0` on every item.
pub fn check_condition1(f: &dyn SingularInvariant, corpus: &Corpus) -> ConditionReport {
    let failures: Vec<Vec<Failure>> = corpus
        .items
        .par_iter()
        .enumerate()
        .map(|(i, item)| {
            let d = &item.diagram;
            if d.order() != 1 {
                let e = Error::WrongOrder {
                    expected: 1,
                    got: d.order(),
                };
                return vec![error_failure(i, d, None, e)];
            }
            match f.eval(d) {
                Ok(v) if v.is_zero() => vec![],
                Ok(v) => vec![Failure {
                    index: i,
                    diagram: d.clone(),
                    labeling: None,
                    lhs: Some(v),
                    rhs: Some(RingElem::zero()),
                    error: None,
                }],
                Err(e) => vec![error_failure(i, d, None, e)],
            }
        })
        .collect();
    ConditionReport::from_failures(Condition::Kink, corpus.items.len(), failures.into_iter().flatten().collect())
}

/// The two sides of condition (2) with double points labeled `(p, q)`:
/// `f(L×+) - f(L×-)` resolves `q`, `f(L+×) - f(L-×)` resolves `p`.
pub fn condition2_sides(
    f: &dyn SingularInvariant,
    d: &Diagram,
    p: CrossingId,
    q: CrossingId,
) -> Result<(RingElem, RingElem)> {
    let diff = |x: CrossingId| -> Result<RingElem> {
        let plus = f.eval(&resolve(d, x, ResolutionSign::Plus)?)?;
        let minus = f.eval(&resolve(d, x, ResolutionSign::Minus)?)?;
        Ok(plus - minus)
    };
    Ok((diff(q)?, diff(p)?))
}

/// Condition (2) on every order-2 item, under both labelings of its double
/// points.
pub fn check_condition2(f: &dyn SingularInvariant, corpus: &Corpus) -> ConditionReport {
    let failures: Vec<Vec<Failure>> = corpus
        .items
        .par_iter()
        .enumerate()
        .map(|(i, item)| {
            let d = &item.diagram;
            let ids = d.singular_ids();
            if ids.len() != 2 {
                let e = Error::WrongOrder {
                    expected: 2,
                    got: ids.len(),
                };
                return vec![error_failure(i, d, None, e)];
            }
            let mut out = Vec::new();
            for (p, q) in [(ids[0], ids[1]), (ids[1], ids[0])] {
                match condition2_sides(f, d, p, q) {
                    Ok((lhs, rhs)) if lhs == rhs => {}
                    Ok((lhs, rhs)) => out.push(Failure {
                        index: i,
                        diagram: d.clone(),
                        labeling: Some([p, q]),
                        lhs: Some(lhs),
                        rhs: Some(rhs),
                        error: None,
                    }),
                    Err(e) => out.push(error_failure(i, d, Some([p, q]), e)),
                }
            }
            out
        })
        .collect();
    ConditionReport::from_failures(
        Condition::Commutation,
        corpus.items.len(),
        failures.into_iter().flatten().collect(),
    )
}

pub fn check(f: &dyn SingularInvariant, corpus: &Corpus, condition: Condition) -> ConditionReport {
    match condition {
        Condition::Kink => check_condition1(f, corpus),
        Condition::Commutation => check_condition2(f, corpus),
    }
}
