//! Brauer graphs as ribbon graphs and their correspondence with biserial
//! quivers.
//!
//! Every edge has two half-edges; a loop edge puts both at the same vertex,
//! so it occurs twice in that vertex's cyclic order. Under the
//! correspondence, edges become quiver vertices, half-edges become arrows,
//! and the rotation at each ribbon vertex becomes `g`.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ids::{ArrowId, EdgeId, HalfEdgeId, RibbonVertexId, VertexId};
use crate::perm::canonical_rotation;
use crate::quiver::{Arrow, BiserialQuiver, Quiver};
use crate::weighted::WeightedBiserialQuiver;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonVertex {
    pub multiplicity: u32,
    /// Cyclic order of attached half-edges, rotated so the smallest comes first.
    pub cyclic_order: Vec<HalfEdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerGraph {
    vertices: BTreeMap<RibbonVertexId, RibbonVertex>,
    edges: BTreeMap<EdgeId, [HalfEdgeId; 2]>,
    attachment: BTreeMap<HalfEdgeId, RibbonVertexId>,
    edge_of: BTreeMap<HalfEdgeId, EdgeId>,
    succ: BTreeMap<HalfEdgeId, HalfEdgeId>,
}

impl BrauerGraph {
    pub fn new(
        vertices: impl IntoIterator<Item = (RibbonVertexId, u32, Vec<HalfEdgeId>)>,
        edges: impl IntoIterator<Item = (EdgeId, [HalfEdgeId; 2])>,
    ) -> Result<Self> {
        let bad = |s: String| Err(Error::InvalidBrauerGraph(s));
        let mut vs = BTreeMap::new();
        let mut attachment = BTreeMap::new();
        let mut succ = BTreeMap::new();
        for (id, multiplicity, order) in vertices {
            if multiplicity == 0 {
                return bad(format!("vertex `{id}` has multiplicity 0"));
            }
            if order.is_empty() {
                return bad(format!("vertex `{id}` has no half-edges"));
            }
            for (i, h) in order.iter().enumerate() {
                if attachment.insert(h.clone(), id.clone()).is_some() {
                    return bad(format!("half-edge `{h}` appears twice in the cyclic orders"));
                }
                succ.insert(h.clone(), order[(i + 1) % order.len()].clone());
            }
            let cyclic_order = canonical_rotation(&order);
            if vs.insert(id.clone(), RibbonVertex { multiplicity, cyclic_order }).is_some() {
                return bad(format!("vertex `{id}` declared twice"));
            }
        }
        let mut es = BTreeMap::new();
        let mut edge_of = BTreeMap::new();
        for (id, [h1, h2]) in edges {
            if h1 == h2 {
                return bad(format!("edge `{id}` uses half-edge `{h1}` twice"));
            }
            for h in [&h1, &h2] {
                if !attachment.contains_key(h) {
                    return bad(format!("half-edge `{h}` of edge `{id}` is in no cyclic order"));
                }
                if edge_of.insert(h.clone(), id.clone()).is_some() {
                    return bad(format!("half-edge `{h}` belongs to two edges"));
                }
            }
            let pair = if h1 <= h2 { [h1, h2] } else { [h2, h1] };
            if es.insert(id.clone(), pair).is_some() {
                return bad(format!("edge `{id}` declared twice"));
            }
        }
        if let Some(h) = attachment.keys().find(|h| !edge_of.contains_key(*h)) {
            return bad(format!("half-edge `{h}` belongs to no edge"));
        }
        if es.is_empty() {
            return bad("a Brauer graph needs at least one edge".into());
        }
        let g = Self { vertices: vs, edges: es, attachment, edge_of, succ };
        if g.component_count() != 1 {
            return bad("graph is disconnected".into());
        }
        Ok(g)
    }

    fn component_count(&self) -> usize {
        let mut parent: BTreeMap<&RibbonVertexId, &RibbonVertexId> = self.vertices.keys().map(|v| (v, v)).collect();
        fn find<'a>(p: &BTreeMap<&'a RibbonVertexId, &'a RibbonVertexId>, mut v: &'a RibbonVertexId) -> &'a RibbonVertexId {
            while p[v] != v {
                v = p[v];
            }
            v
        }
        for [h1, h2] in self.edges.values() {
            let a = find(&parent, &self.attachment[h1]);
            let b = find(&parent, &self.attachment[h2]);
            parent.insert(a, b);
        }
        self.vertices.keys().filter(|v| find(&parent, v) == *v).count()
    }

    pub fn vertices(&self) -> &BTreeMap<RibbonVertexId, RibbonVertex> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<EdgeId, [HalfEdgeId; 2]> {
        &self.edges
    }

    pub fn vertex_of(&self, h: &HalfEdgeId) -> &RibbonVertexId {
        &self.attachment[h]
    }

    pub fn edge_of(&self, h: &HalfEdgeId) -> &EdgeId {
        &self.edge_of[h]
    }

    /// Next half-edge in the cyclic order at its vertex.
    pub fn successor(&self, h: &HalfEdgeId) -> &HalfEdgeId {
        &self.succ[h]
    }

    /// The other half-edge of the same edge.
    pub fn opposite(&self, h: &HalfEdgeId) -> &HalfEdgeId {
        let [a, b] = &self.edges[&self.edge_of[h]];
        if a == h {
            b
        } else {
            a
        }
    }

    pub fn half_edges(&self) -> impl Iterator<Item = &HalfEdgeId> {
        self.attachment.keys()
    }

    /// Number of half-edges at `v` (a loop edge counts twice).
    pub fn valency(&self, v: &RibbonVertexId) -> usize {
        self.vertices[v].cyclic_order.len()
    }
}

/// The weighted biserial quiver of a Brauer graph: one vertex per edge, one
/// arrow per half-edge `h` from its edge to the edge of its cyclic successor.
pub fn brauer_to_biserial(graph: &BrauerGraph) -> Result<WeightedBiserialQuiver> {
    let vertices: Vec<VertexId> = graph.edges.keys().map(|e| VertexId::new(e.as_str())).collect();
    let arrows: Vec<Arrow> = graph
        .half_edges()
        .map(|h| Arrow::new(h.as_str(), graph.edge_of(h).as_str(), graph.edge_of(graph.successor(h)).as_str()))
        .collect();
    // g = successor and g = bar ∘ f, so f = bar ∘ g.
    let f = graph
        .half_edges()
        .map(|h| (ArrowId::new(h.as_str()), ArrowId::new(graph.opposite(graph.successor(h)).as_str())))
        .collect();
    let bq = BiserialQuiver::new(Quiver::new(vertices, arrows)?, f)?;
    let weights = graph
        .vertices
        .values()
        .map(|v| (ArrowId::new(v.cyclic_order[0].as_str()), v.multiplicity))
        .collect();
    WeightedBiserialQuiver::new(bq, weights)
}

/// The Brauer graph of a weighted biserial quiver. Ribbon vertices are named
/// after the smallest arrow of their `g`-orbit.
pub fn biserial_to_brauer(wbq: &WeightedBiserialQuiver) -> BrauerGraph {
    biserial_to_brauer_named(wbq, |orbit| RibbonVertexId::new(orbit[0].as_str()))
}

pub(crate) fn biserial_to_brauer_named(wbq: &WeightedBiserialQuiver, name: impl Fn(&[ArrowId]) -> RibbonVertexId) -> BrauerGraph {
    let bq = wbq.bq();
    let vertices: Vec<_> = bq
        .g_orbits()
        .orbits()
        .iter()
        .map(|o| (name(o), wbq.weight(&o[0]), o.iter().map(|a| HalfEdgeId::new(a.as_str())).collect()))
        .collect();
    let edges: Vec<_> = bq
        .vertices()
        .iter()
        .map(|v| {
            let [a, b] = bq.outgoing(v);
            (EdgeId::new(v.as_str()), [HalfEdgeId::new(a.as_str()), HalfEdgeId::new(b.as_str())])
        })
        .collect();
    BrauerGraph::new(vertices, edges).expect("a valid biserial quiver yields a valid Brauer graph")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopKind {
    /// `g(α) = α`: the edge is the only one at a vertex of the Brauer graph.
    External,
    /// A loop arrow with `g(α) ≠ α`: the edge is a loop of the Brauer graph.
    Internal,
    NotALoop,
}

/// Classifies the arrow (half-edge) `h` of the quiver of `graph`.
pub fn classify_loop(graph: &BrauerGraph, h: &ArrowId) -> Result<LoopKind> {
    let h = HalfEdgeId::new(h.as_str());
    if !graph.attachment.contains_key(&h) {
        return Err(Error::UnknownArrow(ArrowId::new(h.as_str())));
    }
    let next = graph.successor(&h);
    Ok(if *next == h {
        LoopKind::External
    } else if graph.edge_of(next) == graph.edge_of(&h) {
        LoopKind::Internal
    } else {
        LoopKind::NotALoop
    })
}

/// One walk per `f`-orbit: the sources of its arrows in orbit order.
pub fn green_walks(bq: &BiserialQuiver) -> Vec<Vec<VertexId>> {
    bq.f_orbits().orbits().iter().map(|o| o.iter().map(|a| bq.source(a).clone()).collect()).collect()
}

pub const DEFAULT_RIBBON_LIMIT: usize = 12;

/// Half-edge bijection commuting with the rotation and the edge involution
/// and preserving multiplicities, if one exists. Bounded by edge count.
pub fn ribbon_isomorphic(a: &BrauerGraph, b: &BrauerGraph, limit: usize) -> Result<Option<BTreeMap<HalfEdgeId, HalfEdgeId>>> {
    let actual = a.edges.len().max(b.edges.len());
    if actual > limit {
        return Err(Error::SizeLimitExceeded { limit, actual });
    }
    if a.edges.len() != b.edges.len() || a.vertices.len() != b.vertices.len() {
        return Ok(None);
    }
    let a_pred: BTreeMap<&HalfEdgeId, &HalfEdgeId> = a.succ.iter().map(|(x, y)| (y, x)).collect();
    let b_pred: BTreeMap<&HalfEdgeId, &HalfEdgeId> = b.succ.iter().map(|(x, y)| (y, x)).collect();
    let root = a.half_edges().next().expect("nonempty");
    'candidates: for image in b.half_edges() {
        let mut map: BTreeMap<HalfEdgeId, HalfEdgeId> = BTreeMap::new();
        let mut used = BTreeSet::new();
        let mut stack = vec![(root, image)];
        while let Some((x, y)) = stack.pop() {
            match map.get(x) {
                Some(prev) if prev == y => continue,
                Some(_) => continue 'candidates,
                None => {}
            }
            if !used.insert(y) || a.vertices[a.vertex_of(x)].multiplicity != b.vertices[b.vertex_of(y)].multiplicity {
                continue 'candidates;
            }
            map.insert(x.clone(), y.clone());
            stack.push((a.successor(x), b.successor(y)));
            stack.push((a_pred[x], b_pred[y]));
            stack.push((a.opposite(x), b.opposite(y)));
        }
        if map.len() == a.attachment.len() {
            return Ok(Some(map));
        }
    }
    Ok(None)
}

/// A seeded random connected ribbon graph with `n_edges` edges and
/// multiplicities in `1..=max_multiplicity`. Half-edges `h0, h1, …` are paired
/// into edges `(h0 h1), (h2 h3), …`; the rotation is a uniform permutation.
pub fn random_ribbon_graph(n_edges: usize, seed: u64, max_multiplicity: u32) -> Result<BrauerGraph> {
    assert!(n_edges >= 1, "a Brauer graph needs at least one edge");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * n_edges;
    let width = (n - 1).to_string().len();
    let half: Vec<HalfEdgeId> = (0..n).map(|k| HalfEdgeId::new(format!("h{k:0width$}"))).collect();
    let edges: Vec<(EdgeId, [HalfEdgeId; 2])> =
        (0..n_edges).map(|e| (EdgeId::new(format!("e{e}")), [half[2 * e].clone(), half[2 * e + 1].clone()])).collect();
    for _ in 0..10_000 {
        let mut image: Vec<usize> = (0..n).collect();
        image.shuffle(&mut rng);
        let mut seen = vec![false; n];
        let mut vertices = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut order = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                order.push(half[k].clone());
                k = image[k];
            }
            let id = RibbonVertexId::new(format!("u{}", vertices.len()));
            vertices.push((id, rng.random_range(1..=max_multiplicity.max(1)), order));
        }
        // one edge between two valency-1 vertices of multiplicity 1 is the excluded K[X]/(X²)
        if n_edges == 1 && vertices.len() == 2 && vertices.iter().all(|v| v.1 == 1) {
            vertices[0].1 = 2;
        }
        match BrauerGraph::new(vertices, edges.clone()) {
            Ok(g) => return Ok(g),
            Err(Error::InvalidBrauerGraph(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationFailed { attempts: 10_000 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vertices: &[(&str, u32, &[&str])], edges: &[(&str, &str, &str)]) -> BrauerGraph {
        BrauerGraph::new(
            vertices.iter().map(|(id, m, order)| ((*id).into(), *m, order.iter().map(|h| (*h).into()).collect())),
            edges.iter().map(|(id, a, b)| ((*id).into(), [(*a).into(), (*b).into()])),
        )
        .unwrap()
    }

    fn tree(m: u32, n: u32) -> BrauerGraph {
        graph(&[("a", m, &["alpha"]), ("b", n, &["beta"])], &[("1", "alpha", "beta")])
    }

    #[test]
    fn brauer_tree_gives_two_fixed_loops() {
        let w = brauer_to_biserial(&tree(2, 3)).unwrap();
        let bq = w.bq();
        assert!(bq.is_single_vertex());
        assert_eq!(bq.g_orbits().lengths(), [1, 1]);
        assert_eq!(bq.f().apply(&"alpha".into()).as_str(), "beta");
        assert_eq!(w.weight(&"alpha".into()), 2);
        assert_eq!(w.weight(&"beta".into()), 3);
        let g = tree(2, 3);
        assert_eq!(classify_loop(&g, &"alpha".into()).unwrap(), LoopKind::External);
        assert!(classify_loop(&g, &"nope".into()).is_err());
    }

    #[test]
    fn loop_edge_gives_swapped_loops() {
        let g = graph(&[("a", 4, &["alpha", "beta"])], &[("1", "alpha", "beta")]);
        let w = brauer_to_biserial(&g).unwrap();
        assert_eq!(w.bq().g().apply(&"alpha".into()).as_str(), "beta");
        assert_eq!(w.weights().len(), 1);
        assert_eq!(classify_loop(&g, &"alpha".into()).unwrap(), LoopKind::Internal);
    }

    #[test]
    fn invalid_graphs() {
        let r = BrauerGraph::new([("a".into(), 1, vec!["x".into()])], [("1".into(), ["x".into(), "y".into()])]);
        assert_eq!(r.unwrap_err().name(), "InvalidBrauerGraph");
        let r = BrauerGraph::new(
            [("a".into(), 1, vec!["x".into()]), ("b".into(), 1, vec!["y".into()]), ("c".into(), 1, vec!["z".into(), "w".into()])],
            [("1".into(), ["x".into(), "y".into()]), ("2".into(), ["z".into(), "w".into()])],
        );
        assert_eq!(r.unwrap_err().name(), "InvalidBrauerGraph");
        let r = BrauerGraph::new([("a".into(), 0, vec!["x".into(), "y".into()])], [("1".into(), ["x".into(), "y".into()])]);
        assert!(r.is_err());
    }

    #[test]
    fn round_trip_on_random_graphs() {
        for seed in 0..100 {
            let g = random_ribbon_graph(1 + (seed % 8) as usize, seed, 3).unwrap();
            let back = biserial_to_brauer(&brauer_to_biserial(&g).unwrap());
            assert!(ribbon_isomorphic(&g, &back, 12).unwrap().is_some(), "seed {seed}");
        }
    }

    #[test]
    fn ribbon_iso_sees_multiplicity_and_rotation() {
        assert!(ribbon_isomorphic(&tree(2, 3), &tree(3, 2), 12).unwrap().is_some());
        assert!(ribbon_isomorphic(&tree(2, 3), &tree(2, 2), 12).unwrap().is_none());
        // star with three edges in two different cyclic orders are isomorphic (one vertex of valency 3)
        let a = graph(
            &[("c", 1, &["p", "q", "r"]), ("x", 1, &["p2"]), ("y", 1, &["q2"]), ("z", 2, &["r2"])],
            &[("1", "p", "p2"), ("2", "q", "q2"), ("3", "r", "r2")],
        );
        let b = graph(
            &[("c", 1, &["p", "r", "q"]), ("x", 1, &["p2"]), ("y", 1, &["q2"]), ("z", 2, &["r2"])],
            &[("1", "p", "p2"), ("2", "q", "q2"), ("3", "r", "r2")],
        );
        assert!(ribbon_isomorphic(&a, &b, 12).unwrap().is_some());
    }

    #[test]
    fn green_walks_follow_f_orbits() {
        let w = brauer_to_biserial(&tree(2, 3)).unwrap();
        let walks = green_walks(w.bq());
        assert_eq!(walks, vec![vec![VertexId::from("1"), VertexId::from("1")]]);
    }
}
