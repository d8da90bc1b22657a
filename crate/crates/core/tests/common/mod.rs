#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use surfalg_core::brauer::BrauerGraph;
use surfalg_core::io::{load_brauer, load_quiver};
use surfalg_core::perm::canonical_rotation;
use surfalg_core::presentation::AlgebraPresentation;
use surfalg_core::{ArrowId, OrbitDecomposition, Relation, WeightedBiserialQuiver};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

pub fn quiver(name: &str) -> WeightedBiserialQuiver {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    load_quiver(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn brauer(name: &str) -> BrauerGraph {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    load_brauer(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Same quiver, new weights keyed by any orbit member.
pub fn reweighted(w: &WeightedBiserialQuiver, weights: &[(&str, u32)]) -> WeightedBiserialQuiver {
    let map: BTreeMap<ArrowId, u32> = weights.iter().map(|(a, m)| (ArrowId::from(*a), *m)).collect();
    WeightedBiserialQuiver::new(w.bq().clone(), map).unwrap()
}

/// Orbits as rotation-normalized string cycles.
pub fn cycles(d: &OrbitDecomposition) -> BTreeSet<Vec<String>> {
    d.orbits().iter().map(|o| canonical_rotation(&o.iter().map(|a| a.to_string()).collect::<Vec<_>>())).collect()
}

pub fn expected_cycles(list: &[&[&str]]) -> BTreeSet<Vec<String>> {
    list.iter().map(|o| canonical_rotation(&o.iter().map(|a| a.to_string()).collect::<Vec<_>>())).collect()
}

/// `word` repeated `k` times, joined by `*`.
pub fn pow(word: &str, k: u32) -> String {
    vec![word; k as usize].join("*")
}

/// Relation set with binomials of scalar 1 stored as unordered pairs.
pub fn normalized(pres: &AlgebraPresentation) -> BTreeSet<String> {
    pres.relations
        .iter()
        .map(|r| match r {
            Relation::Zero { left } => format!("{left} = 0"),
            Relation::Binomial { left, scalar, right } if scalar.is_one() => {
                let (a, b) = (left.to_string(), right.to_string());
                if a <= b {
                    format!("{a} = {b}")
                } else {
                    format!("{b} = {a}")
                }
            }
            Relation::Binomial { left, scalar, right } => format!("{left} = {scalar} * {right}"),
        })
        .collect()
}

/// Expected relations written as `"lhs = rhs"` / `"lhs = 0"` with scalar 1.
pub fn expected(rels: &[String]) -> BTreeSet<String> {
    rels.iter()
        .map(|r| {
            let (a, b) = r.split_once(" = ").unwrap();
            if b == "0" || a <= b {
                format!("{a} = {b}")
            } else {
                format!("{b} = {a}")
            }
        })
        .collect()
}

pub fn corpus_member(seed: u64) -> WeightedBiserialQuiver {
    surfalg_core::weighted::random_weighted(1 + (seed % 6) as usize, seed, 3).unwrap()
}
