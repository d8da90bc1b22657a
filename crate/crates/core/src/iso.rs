//! Exhaustive isomorphism search for (weighted) biserial quivers.
//!
//! An arrow bijection commuting with `f` and `bar` is determined by the image
//! of a single arrow, because `f` and `bar` act transitively on the arrows of
//! a connected 2-regular quiver. The search therefore tries every image of
//! one root arrow and propagates.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ids::{ArrowId, VertexId};
use crate::quiver::BiserialQuiver;
use crate::weighted::WeightedBiserialQuiver;

pub const DEFAULT_SIZE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub vertices: BTreeMap<VertexId, VertexId>,
    pub arrows: BTreeMap<ArrowId, ArrowId>,
}

impl Isomorphism {
    pub fn inverse(&self) -> Self {
        Self {
            vertices: self.vertices.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
            arrows: self.arrows.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }
}

/// Extends `root -> image` along `f`, `f⁻¹` and `bar`; `None` on conflict.
fn propagate(a: &BiserialQuiver, b: &BiserialQuiver, root: &ArrowId, image: &ArrowId) -> Option<Isomorphism> {
    let a_finv = a.f().inverse();
    let b_finv = b.f().inverse();
    let mut arrows: BTreeMap<ArrowId, ArrowId> = BTreeMap::new();
    let mut used: BTreeSet<ArrowId> = BTreeSet::new();
    let mut stack = vec![(root.clone(), image.clone())];
    while let Some((x, y)) = stack.pop() {
        match arrows.get(&x) {
            Some(prev) if *prev == y => continue,
            Some(_) => return None,
            None => {}
        }
        if !used.insert(y.clone()) {
            return None;
        }
        stack.push((a.f().apply(&x).clone(), b.f().apply(&y).clone()));
        stack.push((a_finv.apply(&x).clone(), b_finv.apply(&y).clone()));
        stack.push((a.bar().apply(&x).clone(), b.bar().apply(&y).clone()));
        arrows.insert(x, y);
    }
    let mut vertices: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for (x, y) in &arrows {
        for (u, v) in [(a.source(x), b.source(y)), (a.target(x), b.target(y))] {
            match vertices.get(u) {
                Some(prev) if prev != v => return None,
                Some(_) => {}
                None => {
                    vertices.insert(u.clone(), v.clone());
                }
            }
        }
    }
    let distinct: BTreeSet<&VertexId> = vertices.values().collect();
    if distinct.len() != vertices.len() || vertices.len() != a.vertex_count() {
        return None;
    }
    Some(Isomorphism { vertices, arrows })
}

fn search(
    a: &BiserialQuiver,
    b: &BiserialQuiver,
    limit: usize,
    accept: impl Fn(&Isomorphism) -> bool,
) -> Result<Option<Isomorphism>> {
    let actual = a.vertex_count().max(b.vertex_count());
    if actual > limit {
        return Err(Error::SizeLimitExceeded { limit, actual });
    }
    if a.vertex_count() != b.vertex_count() || a.f_orbits().lengths() != b.f_orbits().lengths() || a.g_orbits().lengths() != b.g_orbits().lengths() {
        return Ok(None);
    }
    let root = a.arrow_ids().next().expect("nonempty quiver");
    for image in b.arrow_ids() {
        if let Some(iso) = propagate(a, b, root, image) {
            if accept(&iso) {
                return Ok(Some(iso));
            }
        }
    }
    Ok(None)
}

/// Isomorphism of biserial quivers `(Q, f)` ignoring weights.
pub fn isomorphic_unweighted(a: &BiserialQuiver, b: &BiserialQuiver, limit: usize) -> Result<Option<Isomorphism>> {
    search(a, b, limit, |_| true)
}

/// Isomorphism preserving source, target, `f`, orbit weights, nonzero border
/// scalars and parameters (an absent parameter function counts as `c ≡ 1`).
pub fn isomorphic(a: &WeightedBiserialQuiver, b: &WeightedBiserialQuiver) -> Result<Option<Isomorphism>> {
    isomorphic_bounded(a, b, DEFAULT_SIZE_LIMIT)
}

pub fn isomorphic_bounded(a: &WeightedBiserialQuiver, b: &WeightedBiserialQuiver, limit: usize) -> Result<Option<Isomorphism>> {
    search(a.bq(), b.bq(), limit, |iso| {
        let weights_ok = iso.arrows.iter().all(|(x, y)| a.weight(x) == b.weight(y) && a.param(x) == b.param(y));
        let border_ok = iso.vertices.iter().all(|(u, v)| a.border_value(u) == b.border_value(v));
        weights_ok && border_ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weighted::random_weighted;

    #[test]
    fn every_quiver_is_isomorphic_to_itself() {
        for seed in 0..50 {
            let w = random_weighted(1 + (seed % 6) as usize, seed, 3).unwrap();
            let iso = isomorphic(&w, &w).unwrap().expect("identity");
            assert_eq!(iso.arrows.len(), w.bq().arrow_count());
        }
    }

    #[test]
    fn relabeling_is_detected_and_witness_inverts() {
        let w = random_weighted(5, 11, 3).unwrap();
        let bq = w.bq().relabel(|v| VertexId::new(format!("V{v}")), |a| ArrowId::new(format!("z{a}"))).unwrap();
        let weights = w.weights().iter().map(|(a, m)| (ArrowId::new(format!("z{a}")), *m)).collect();
        let r = WeightedBiserialQuiver::new(bq, weights).unwrap();
        let there = isomorphic(&w, &r).unwrap().unwrap();
        let back = isomorphic(&r, &w).unwrap().unwrap();
        assert_eq!(there.vertices.len(), 5);
        assert_eq!(back.vertices.len(), 5);
        let inv = there.inverse();
        for (x, y) in &inv.arrows {
            assert_eq!(there.arrows[y], *x);
        }
    }

    #[test]
    fn different_weights_are_not_isomorphic() {
        let bq = BiserialQuiver::from_cycles(
            &[("a1", "1", "2"), ("b1", "1", "2"), ("a2", "2", "3"), ("b2", "2", "3"), ("a3", "3", "1"), ("b3", "3", "1")],
            &[&["a1", "a2", "a3"], &["b1", "b2", "b3"]],
        )
        .unwrap();
        let one = WeightedBiserialQuiver::uniform(bq.clone(), 1).unwrap();
        let two = WeightedBiserialQuiver::uniform(bq, 2).unwrap();
        assert!(isomorphic(&one, &two).unwrap().is_none());
    }

    #[test]
    fn size_limit_is_enforced() {
        let w = random_weighted(13, 1, 1).unwrap();
        assert_eq!(isomorphic(&w, &w).unwrap_err().name(), "SizeLimitExceeded");
        assert!(isomorphic_bounded(&w, &w, 20).unwrap().is_some());
    }
}
