//! Permutations of arrow sets and their canonical cycle decompositions.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::ids::ArrowId;

/// A bijection of a finite set of arrows onto itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: BTreeMap<ArrowId, ArrowId>,
}

impl Permutation {
    /// Checks that `map` is a bijection of its key set.
    pub fn new(map: BTreeMap<ArrowId, ArrowId>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (a, b) in &map {
            if !map.contains_key(b) {
                return Err(Error::NotBijective(format!("image `{b}` of `{a}` is not in the domain")));
            }
            if !seen.insert(b) {
                return Err(Error::NotBijective(format!("`{b}` has two preimages")));
            }
        }
        Ok(Self { map })
    }

    pub(crate) fn from_map_unchecked(map: BTreeMap<ArrowId, ArrowId>) -> Self {
        debug_assert!(Self::new(map.clone()).is_ok());
        Self { map }
    }

    pub fn identity<'a>(arrows: impl IntoIterator<Item = &'a ArrowId>) -> Self {
        Self { map: arrows.into_iter().map(|a| (a.clone(), a.clone())).collect() }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = &ArrowId> {
        self.map.keys()
    }

    pub fn as_map(&self) -> &BTreeMap<ArrowId, ArrowId> {
        &self.map
    }

    /// Image of `a`. Panics if `a` is outside the domain.
    pub fn apply(&self, a: &ArrowId) -> &ArrowId {
        &self.map[a]
    }

    pub fn get(&self, a: &ArrowId) -> Option<&ArrowId> {
        self.map.get(a)
    }

    pub fn inverse(&self) -> Self {
        Self { map: self.map.iter().map(|(a, b)| (b.clone(), a.clone())).collect() }
    }

    /// `self` after `other`: `a -> self(other(a))`.
    pub fn after(&self, other: &Permutation) -> Self {
        Self { map: other.map.iter().map(|(a, b)| (a.clone(), self.map[b].clone())).collect() }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Permutation::identity(self.map.keys());
        for _ in 0..k {
            out = self.after(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }

    pub fn orbits(&self) -> OrbitDecomposition {
        OrbitDecomposition::of(self)
    }
}

/// Cycles of a permutation in canonical form: each cycle starts at its
/// lexicographically smallest arrow and cycles are sorted by that arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    orbits: Vec<Vec<ArrowId>>,
    index: BTreeMap<ArrowId, (usize, usize)>,
}

impl OrbitDecomposition {
    fn of(perm: &Permutation) -> Self {
        let mut visited = BTreeSet::new();
        let mut orbits = Vec::new();
        // keys iterate in order, so the first unvisited arrow is the minimum of its cycle
        for start in perm.map.keys() {
            if visited.contains(start) {
                continue;
            }
            let mut cycle = vec![start.clone()];
            visited.insert(start);
            let mut cur = &perm.map[start];
            while cur != start {
                visited.insert(cur);
                cycle.push(cur.clone());
                cur = &perm.map[cur];
            }
            orbits.push(cycle);
        }
        let mut index = BTreeMap::new();
        for (i, orbit) in orbits.iter().enumerate() {
            for (j, a) in orbit.iter().enumerate() {
                index.insert(a.clone(), (i, j));
            }
        }
        Self { orbits, index }
    }

    pub fn orbits(&self) -> &[Vec<ArrowId>] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// (orbit number, position within the orbit).
    pub fn position(&self, a: &ArrowId) -> Option<(usize, usize)> {
        self.index.get(a).copied()
    }

    pub fn orbit_of(&self, a: &ArrowId) -> &[ArrowId] {
        &self.orbits[self.index[a].0]
    }

    /// The canonical representative (smallest member) of the orbit of `a`.
    pub fn representative(&self, a: &ArrowId) -> &ArrowId {
        &self.orbits[self.index[a].0][0]
    }

    pub fn orbit_len(&self, a: &ArrowId) -> usize {
        self.orbit_of(a).len()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &ArrowId> {
        self.orbits.iter().map(|o| &o[0])
    }

    /// Orbit lengths, sorted ascending.
    pub fn lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.orbits.iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    }
}

/// Rotates a cyclic sequence so that its smallest element comes first.
pub fn canonical_rotation<T: Ord + Clone>(cycle: &[T]) -> Vec<T> {
    let Some((k, _)) = cycle.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)) else {
        return Vec::new();
    };
    cycle[k..].iter().chain(&cycle[..k]).cloned().collect()
}
