//! 2-regular quivers and biserial quivers `(Q, f)`.
//!
//! A biserial quiver carries three permutations of its arrows: `f` (given),
//! the involution `bar` swapping the two arrows that share a source, and
//! `g = bar ∘ f`. Both `f` and `g` send an arrow to one that starts where it
//! ends.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Diagnostics, Error, Result, Violation};
use crate::ids::{ArrowId, VertexId};
use crate::perm::{OrbitDecomposition, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub id: ArrowId,
    pub source: VertexId,
    pub target: VertexId,
}

impl Arrow {
    pub fn new(id: impl Into<ArrowId>, source: impl Into<VertexId>, target: impl Into<VertexId>) -> Self {
        Self { id: id.into(), source: source.into(), target: target.into() }
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A finite quiver with unique, declared identifiers. No degree constraints
/// are imposed here; see [`BiserialQuiver`] for the 2-regular case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: BTreeSet<VertexId>,
    arrows: BTreeMap<ArrowId, Arrow>,
}

impl Quiver {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>, arrows: impl IntoIterator<Item = Arrow>) -> Result<Self> {
        let (q, violations) = Self::collect(vertices, arrows);
        if violations.is_empty() {
            Ok(q)
        } else {
            Err(Error::Invalid(Diagnostics(violations)))
        }
    }

    fn collect(
        vertices: impl IntoIterator<Item = VertexId>,
        arrows: impl IntoIterator<Item = Arrow>,
    ) -> (Self, Vec<Violation>) {
        let mut violations = Vec::new();
        let mut vs = BTreeSet::new();
        for v in vertices {
            if !vs.insert(v.clone()) {
                violations.push(Violation::DuplicateVertex(v));
            }
        }
        let mut map = BTreeMap::new();
        for a in arrows {
            for v in [&a.source, &a.target] {
                if !vs.contains(v) {
                    violations.push(Violation::UnknownVertex { arrow: a.id.clone(), vertex: v.clone() });
                }
            }
            if map.contains_key(&a.id) {
                violations.push(Violation::DuplicateArrow(a.id.clone()));
            } else {
                map.insert(a.id.clone(), a);
            }
        }
        (Self { vertices: vs, arrows: map }, violations)
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.arrows.values()
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = &ArrowId> {
        self.arrows.keys()
    }

    pub fn arrow(&self, id: &ArrowId) -> Option<&Arrow> {
        self.arrows.get(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Connected components of the underlying undirected graph.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut adj: BTreeMap<&VertexId, Vec<&VertexId>> = self.vertices.iter().map(|v| (v, Vec::new())).collect();
        for a in self.arrows.values() {
            if let Some(list) = adj.get_mut(&a.source) {
                list.push(&a.target);
            }
            if let Some(list) = adj.get_mut(&a.target) {
                list.push(&a.source);
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in &self.vertices {
            if seen.contains(v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![v];
            seen.insert(v);
            while let Some(x) = stack.pop() {
                comp.insert(x.clone());
                for &y in &adj[x] {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

/// A validated connected 2-regular quiver with an admissible permutation `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiserialQuiver {
    quiver: Quiver,
    f: Permutation,
    bar: Permutation,
    g: Permutation,
    f_orbits: OrbitDecomposition,
    g_orbits: OrbitDecomposition,
    outgoing: BTreeMap<VertexId, [ArrowId; 2]>,
}

impl BiserialQuiver {
    /// Validates raw data, reporting every violated invariant at once.
    pub fn new(quiver: Quiver, f: BTreeMap<ArrowId, ArrowId>) -> Result<Self> {
        let mut violations = Vec::new();
        if quiver.vertices.is_empty() {
            violations.push(Violation::Empty);
        }
        let mut outgoing: BTreeMap<VertexId, Vec<ArrowId>> = quiver.vertices.iter().map(|v| (v.clone(), Vec::new())).collect();
        let mut incoming: BTreeMap<&VertexId, usize> = quiver.vertices.iter().map(|v| (v, 0)).collect();
        for a in quiver.arrows.values() {
            outgoing.get_mut(&a.source).expect("declared").push(a.id.clone());
            *incoming.get_mut(&a.target).expect("declared") += 1;
        }
        for v in &quiver.vertices {
            let (o, i) = (outgoing[v].len(), incoming[v]);
            if o != 2 || i != 2 {
                violations.push(Violation::NotTwoRegular { vertex: v.clone(), outgoing: o, incoming: i });
            }
        }

        let domain_ok = f.len() == quiver.arrows.len() && f.keys().all(|a| quiver.arrows.contains_key(a));
        let perm = if !domain_ok {
            let missing: Vec<&str> = quiver.arrows.keys().filter(|a| !f.contains_key(*a)).map(|a| a.as_str()).collect();
            let extra: Vec<&str> = f.keys().filter(|a| !quiver.arrows.contains_key(*a)).map(|a| a.as_str()).collect();
            violations.push(Violation::NotBijective(format!(
                "f must be defined exactly on the arrows (missing: [{}], unknown: [{}])",
                missing.join(", "),
                extra.join(", ")
            )));
            None
        } else {
            match Permutation::new(f) {
                Ok(p) => Some(p),
                Err(Error::NotBijective(why)) => {
                    violations.push(Violation::NotBijective(why));
                    None
                }
                Err(e) => unreachable!("{e}"),
            }
        };
        if let Some(p) = &perm {
            for (a, b) in p.as_map() {
                if quiver.arrows[b].source != quiver.arrows[a].target {
                    violations.push(Violation::NotAdmissible { arrow: a.clone(), image: b.clone() });
                }
            }
        }
        let components = quiver.components().len();
        if components > 1 {
            violations.push(Violation::Disconnected { components });
        }
        if !violations.is_empty() {
            return Err(Error::Invalid(Diagnostics(violations)));
        }

        let f = perm.expect("checked above");
        let outgoing: BTreeMap<VertexId, [ArrowId; 2]> = outgoing
            .into_iter()
            .map(|(v, list)| {
                let [a, b]: [ArrowId; 2] = list.try_into().expect("2-regular");
                (v, [a, b])
            })
            .collect();
        let mut bar = BTreeMap::new();
        for [a, b] in outgoing.values() {
            bar.insert(a.clone(), b.clone());
            bar.insert(b.clone(), a.clone());
        }
        let bar = Permutation::from_map_unchecked(bar);
        let g = bar.after(&f);
        Ok(Self { f_orbits: f.orbits(), g_orbits: g.orbits(), quiver, f, bar, g, outgoing })
    }

    /// Convenience constructor from `(id, source, target)` triples and `f` pairs.
    pub fn from_lists(arrows: &[(&str, &str, &str)], f: &[(&str, &str)]) -> Result<Self> {
        let vertices: BTreeSet<VertexId> = arrows.iter().flat_map(|(_, s, t)| [VertexId::from(*s), VertexId::from(*t)]).collect();
        let quiver = Quiver::new(vertices, arrows.iter().map(|(a, s, t)| Arrow::new(*a, *s, *t)))?;
        Self::new(quiver, f.iter().map(|(a, b)| (ArrowId::from(*a), ArrowId::from(*b))).collect())
    }

    /// Like [`from_lists`](Self::from_lists) with `f` given by its cycles.
    pub fn from_cycles(arrows: &[(&str, &str, &str)], f_cycles: &[&[&str]]) -> Result<Self> {
        let mut pairs = Vec::new();
        for cycle in f_cycles {
            for (i, a) in cycle.iter().enumerate() {
                pairs.push((*a, cycle[(i + 1) % cycle.len()]));
            }
        }
        Self::from_lists(arrows, &pairs)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn f(&self) -> &Permutation {
        &self.f
    }

    pub fn g(&self) -> &Permutation {
        &self.g
    }

    pub fn bar(&self) -> &Permutation {
        &self.bar
    }

    pub fn f_orbits(&self) -> &OrbitDecomposition {
        &self.f_orbits
    }

    pub fn g_orbits(&self) -> &OrbitDecomposition {
        &self.g_orbits
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.quiver.vertices
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = &ArrowId> {
        self.quiver.arrows.keys()
    }

    pub fn arrow(&self, a: &ArrowId) -> Result<&Arrow> {
        self.quiver.arrows.get(a).ok_or_else(|| Error::UnknownArrow(a.clone()))
    }

    pub fn contains_arrow(&self, a: &ArrowId) -> bool {
        self.quiver.arrows.contains_key(a)
    }

    pub fn source(&self, a: &ArrowId) -> &VertexId {
        &self.quiver.arrows[a].source
    }

    pub fn target(&self, a: &ArrowId) -> &VertexId {
        &self.quiver.arrows[a].target
    }

    /// The two arrows starting at `v`, in id order.
    pub fn outgoing(&self, v: &VertexId) -> &[ArrowId; 2] {
        &self.outgoing[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrow_count()
    }

    pub fn is_loop(&self, a: &ArrowId) -> bool {
        self.quiver.arrows[a].is_loop()
    }

    pub fn has_loops(&self) -> bool {
        self.quiver.arrows.values().any(Arrow::is_loop)
    }

    /// One-vertex quivers are valid but excluded from the surface operations.
    pub fn is_single_vertex(&self) -> bool {
        self.vertex_count() == 1
    }

    /// `f³ = id`.
    pub fn is_triangulation(&self) -> bool {
        self.arrow_ids().all(|a| self.f.apply(self.f.apply(self.f.apply(a))) == a)
    }

    /// Loops fixed by `f`.
    pub fn border_loops(&self) -> Vec<&ArrowId> {
        self.arrow_ids().filter(|a| self.is_loop(a) && self.f.apply(a) == *a).collect()
    }

    /// Vertices carrying an `f`-fixed loop.
    pub fn border_vertices(&self) -> BTreeSet<VertexId> {
        self.border_loops().into_iter().map(|a| self.source(a).clone()).collect()
    }

    /// The `f`-orbits of length 3 that contain a loop.
    pub fn self_folded_triangles(&self) -> Result<Vec<Vec<ArrowId>>> {
        if !self.is_triangulation() {
            return Err(Error::NotTriangulation);
        }
        Ok(self
            .f_orbits
            .orbits()
            .iter()
            .filter(|o| o.len() == 3 && o.iter().any(|a| self.is_loop(a)))
            .cloned()
            .collect())
    }

    /// Relabels every arrow and vertex; the maps must be injective on their domains.
    pub fn relabel(&self, vertex: impl Fn(&VertexId) -> VertexId, arrow: impl Fn(&ArrowId) -> ArrowId) -> Result<Self> {
        let quiver = Quiver::new(
            self.vertices().iter().map(&vertex),
            self.quiver.arrows().map(|a| Arrow { id: arrow(&a.id), source: vertex(&a.source), target: vertex(&a.target) }),
        )?;
        Self::new(quiver, self.f.as_map().iter().map(|(a, b)| (arrow(a), arrow(b))).collect())
    }
}

/// Validates raw data into a [`BiserialQuiver`].
pub fn validate(quiver: Quiver, f: BTreeMap<ArrowId, ArrowId>) -> Result<BiserialQuiver> {
    BiserialQuiver::new(quiver, f)
}

/// `g = bar ∘ f` as a plain permutation.
pub fn derive_g(bq: &BiserialQuiver) -> Permutation {
    bq.g().clone()
}

const GENERATION_ATTEMPTS: usize = 10_000;

/// A seeded random connected biserial quiver on `n_vertices` vertices
/// `v0, v1, …` with arrows `a0, a1, …`.
///
/// Out-slots are paired with a shuffled list of in-slots; at every vertex
/// one random bit decides which incoming arrow `f` sends to which outgoing
/// arrow. Disconnected draws are resampled.
pub fn random_biserial_quiver(n_vertices: usize, seed: u64) -> Result<BiserialQuiver> {
    assert!(n_vertices >= 1, "a quiver needs at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices: Vec<VertexId> = (0..n_vertices).map(|i| VertexId::new(format!("v{i}"))).collect();
    let width = (2 * n_vertices - 1).to_string().len();
    let arrow_ids: Vec<ArrowId> = (0..2 * n_vertices).map(|k| ArrowId::new(format!("a{k:0width$}"))).collect();
    for _ in 0..GENERATION_ATTEMPTS {
        let sources: Vec<usize> = (0..2 * n_vertices).map(|k| k / 2).collect();
        let mut targets = sources.clone();
        targets.shuffle(&mut rng);
        let arrows: Vec<Arrow> = (0..2 * n_vertices)
            .map(|k| Arrow { id: arrow_ids[k].clone(), source: vertices[sources[k]].clone(), target: vertices[targets[k]].clone() })
            .collect();
        let mut f = BTreeMap::new();
        for v in 0..n_vertices {
            let inc: Vec<usize> = (0..2 * n_vertices).filter(|&k| targets[k] == v).collect();
            let out = [2 * v, 2 * v + 1];
            let flip: bool = rng.random();
            let (x, y) = if flip { (out[1], out[0]) } else { (out[0], out[1]) };
            f.insert(arrow_ids[inc[0]].clone(), arrow_ids[x].clone());
            f.insert(arrow_ids[inc[1]].clone(), arrow_ids[y].clone());
        }
        let quiver = Quiver::new(vertices.clone(), arrows)?;
        if quiver.components().len() != 1 {
            continue;
        }
        return BiserialQuiver::new(quiver, f);
    }
    Err(Error::GenerationFailed { attempts: GENERATION_ATTEMPTS })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk() -> BiserialQuiver {
        BiserialQuiver::from_cycles(
            &[
                ("alpha", "1", "3"),
                ("beta", "3", "4"),
                ("gamma", "4", "1"),
                ("sigma", "2", "4"),
                ("delta", "4", "3"),
                ("omega", "3", "2"),
                ("xi", "1", "1"),
                ("eta", "2", "2"),
            ],
            &[&["alpha", "beta", "gamma"], &["sigma", "delta", "omega"], &["xi"], &["eta"]],
        )
        .unwrap()
    }

    fn names(o: &[ArrowId]) -> Vec<&str> {
        o.iter().map(|a| a.as_str()).collect()
    }

    #[test]
    fn disk_quiver_validates_with_expected_g_orbits() {
        let q = disk();
        let g = q.g_orbits();
        assert_eq!(g.len(), 2);
        // (α ω η σ γ ξ) rotated to its smallest id
        assert_eq!(names(g.orbit_of(&"alpha".into())), ["alpha", "omega", "eta", "sigma", "gamma", "xi"]);
        assert_eq!(names(g.orbit_of(&"beta".into())), ["beta", "delta"]);
        assert!(q.is_triangulation());
        assert_eq!(q.border_vertices(), ["1", "2"].into_iter().map(VertexId::from).collect());
        assert!(q.self_folded_triangles().unwrap().is_empty());
    }

    #[test]
    fn one_vertex_with_swapped_loops() {
        let q = BiserialQuiver::from_cycles(&[("alpha", "1", "1"), ("beta", "1", "1")], &[&["alpha", "beta"]]).unwrap();
        assert!(q.is_single_vertex());
        assert_eq!(q.g().apply(&"alpha".into()).as_str(), "alpha");
        assert_eq!(q.g().apply(&"beta".into()).as_str(), "beta");
        assert!(q.border_vertices().is_empty());
    }

    #[test]
    fn three_outgoing_arrows_is_not_two_regular() {
        let err = BiserialQuiver::from_lists(
            &[("a", "1", "1"), ("b", "1", "2"), ("c", "1", "2"), ("d", "2", "1")],
            &[("a", "b"), ("b", "d"), ("c", "d"), ("d", "a")],
        )
        .unwrap_err();
        let Error::Invalid(diag) = err else { panic!("expected diagnostics") };
        assert!(diag.contains("NotTwoRegular"));
        // every violation is reported, not just the first
        assert!(diag.contains("NotBijective"));
    }

    #[test]
    fn inadmissible_and_disconnected() {
        let err = BiserialQuiver::from_lists(
            &[("a", "1", "1"), ("b", "1", "1"), ("c", "2", "2"), ("d", "2", "2")],
            &[("a", "c"), ("c", "a"), ("b", "b"), ("d", "d")],
        )
        .unwrap_err();
        let Error::Invalid(diag) = err else { panic!() };
        assert!(diag.contains("NotAdmissible"));
        assert!(diag.contains("Disconnected"));
        assert!(!diag.contains("NotTwoRegular"));
    }

    #[test]
    fn undeclared_vertex_and_duplicate_arrow() {
        let err = Quiver::new(["1".into()], [Arrow::new("a", "1", "2"), Arrow::new("a", "1", "1")]).unwrap_err();
        let Error::Invalid(diag) = err else { panic!() };
        assert!(diag.contains("UnknownVertex"));
        assert!(diag.contains("DuplicateArrow"));
    }

    #[test]
    fn self_folded_needs_triangulation() {
        let q = BiserialQuiver::from_cycles(
            &[("a", "1", "2"), ("b", "2", "1"), ("c", "1", "1"), ("d", "2", "2")],
            &[&["a", "d", "b", "c"]],
        )
        .unwrap();
        assert_eq!(q.self_folded_triangles().unwrap_err(), Error::NotTriangulation);
    }

    #[test]
    fn random_quivers_are_deterministic_and_valid() {
        let a = random_biserial_quiver(5, 42).unwrap();
        let b = random_biserial_quiver(5, 42).unwrap();
        assert_eq!(a, b);
        let one = random_biserial_quiver(1, 7).unwrap();
        assert_eq!(one.arrow_count(), 2);
        assert!(one.quiver().arrows().all(Arrow::is_loop));
    }

    #[test]
    fn random_quivers_pass_validation_on_many_seeds() {
        for seed in 0..1000 {
            let q = random_biserial_quiver(4, seed).unwrap();
            assert_eq!(q.arrow_count(), 8);
            let raw = q.quiver().clone();
            assert!(validate(raw, q.f().as_map().clone()).is_ok());
        }
    }
}
