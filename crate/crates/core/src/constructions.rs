//! Idempotent reduction, the star and sharp constructions, barycentric
//! division of Brauer graphs, and the periodic envelope.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::brauer::{biserial_to_brauer_named, brauer_to_biserial, BrauerGraph};
use crate::error::{Error, Result};
use crate::ids::{atom, ArrowId, RibbonVertexId, VertexId};
use crate::iso::isomorphic_unweighted;
use crate::quiver::{Arrow, BiserialQuiver, Quiver};
use crate::weighted::WeightedBiserialQuiver;

/// A nonempty set of vertices; reduction keeps exactly these.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IdempotentSelection {
    selected: BTreeSet<VertexId>,
}

impl IdempotentSelection {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let selected: BTreeSet<VertexId> = vertices.into_iter().collect();
        if selected.is_empty() {
            return Err(Error::EmptySelection);
        }
        Ok(Self { selected })
    }

    /// Every vertex of `bq`.
    pub fn all(bq: &BiserialQuiver) -> Self {
        Self { selected: bq.vertices().clone() }
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.selected
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.selected.contains(v)
    }
}

/// The shortest `g`-run `α g(α) … g^p(α)` ending at a selected vertex.
pub fn g_run(bq: &BiserialQuiver, sel: &IdempotentSelection, a: &ArrowId) -> Vec<ArrowId> {
    let mut run = vec![a.clone()];
    let mut cur = a;
    while !sel.contains(bq.target(cur)) {
        cur = bq.g().apply(cur);
        run.push(cur.clone());
    }
    run
}

/// Keeps the selected vertices and replaces every arrow `α` starting there by
/// its `g`-run (the new arrow keeps the name `α`). The reduced `f` sends `α`
/// to the run beginning with `f` of the run's last arrow. Weights, border
/// scalars and parameters are inherited. Returns the connected components,
/// ordered by their smallest vertex.
pub fn reduce(wbq: &WeightedBiserialQuiver, sel: &IdempotentSelection) -> Result<Vec<WeightedBiserialQuiver>> {
    let bq = wbq.bq();
    if let Some(v) = sel.vertices().iter().find(|v| !bq.vertices().contains(*v)) {
        return Err(Error::UnknownVertex(v.clone()));
    }
    let mut arrows = Vec::new();
    let mut f = BTreeMap::new();
    for a in bq.arrow_ids().filter(|a| sel.contains(bq.source(a))) {
        let run = g_run(bq, sel, a);
        let last = run.last().expect("nonempty run");
        arrows.push(Arrow { id: a.clone(), source: bq.source(a).clone(), target: bq.target(last).clone() });
        f.insert(a.clone(), bq.f().apply(last).clone());
    }
    let whole = Quiver::new(sel.vertices().iter().cloned(), arrows.clone())?;
    let mut out = Vec::new();
    for comp in whole.components() {
        let comp_arrows: Vec<Arrow> = arrows.iter().filter(|a| comp.contains(&a.source)).cloned().collect();
        let comp_f = comp_arrows.iter().map(|a| (a.id.clone(), f[&a.id].clone())).collect();
        let q = BiserialQuiver::new(Quiver::new(comp.iter().cloned(), comp_arrows.clone())?, comp_f)?;
        let weights = comp_arrows.iter().map(|a| (a.id.clone(), wbq.weight(&a.id))).collect();
        let mut reduced = WeightedBiserialQuiver::new(q, weights)?;
        if let Some(border) = wbq.border() {
            let kept = border.iter().filter(|(v, _)| comp.contains(*v)).map(|(v, b)| (v.clone(), b.clone())).collect();
            reduced = reduced.with_border(kept)?;
        }
        if wbq.params().is_some() {
            reduced = reduced.with_params(comp_arrows.iter().map(|a| (a.id.clone(), wbq.param(&a.id))).collect())?;
        }
        out.push(reduced);
    }
    Ok(out)
}

/// Where an arrow of a star-type construction came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Origin {
    Prime(ArrowId),
    DoublePrime(ArrowId),
    Eps(ArrowId),
    Kept(ArrowId),
}

impl Origin {
    fn original(&self) -> Option<&ArrowId> {
        match self {
            Origin::Prime(a) | Origin::DoublePrime(a) | Origin::Kept(a) => Some(a),
            Origin::Eps(_) => None,
        }
    }
}

pub(crate) fn new_vertex(a: &ArrowId) -> VertexId {
    VertexId::new(format!("x_{}", atom(a.as_str())))
}

pub(crate) fn prime(a: &ArrowId) -> ArrowId {
    ArrowId::new(format!("{}'", atom(a.as_str())))
}

pub(crate) fn double_prime(a: &ArrowId) -> ArrowId {
    ArrowId::new(format!("{}''", atom(a.as_str())))
}

pub(crate) fn eps(a: &ArrowId) -> ArrowId {
    ArrowId::new(format!("eps_{}", atom(a.as_str())))
}

/// The star construction applied to every arrow outside `kept`, which must be
/// a union of `f`-orbits; kept arrows survive unchanged with `f*(β) = f(β)`.
pub(crate) fn star_with_kept(
    wbq: &WeightedBiserialQuiver,
    kept: &BTreeSet<ArrowId>,
    carry_border: bool,
) -> Result<(WeightedBiserialQuiver, BTreeMap<ArrowId, Origin>)> {
    let bq = wbq.bq();
    let f = bq.f();
    debug_assert!(kept.iter().all(|a| kept.contains(f.apply(a))));

    let mut vertex_names: BTreeSet<VertexId> = bq.vertices().clone();
    let mut arrows = Vec::new();
    let mut origin = BTreeMap::new();
    let mut fstar = BTreeMap::new();
    for a in bq.arrow_ids() {
        if kept.contains(a) {
            arrows.push(bq.arrow(a)?.clone());
            origin.insert(a.clone(), Origin::Kept(a.clone()));
            fstar.insert(a.clone(), f.apply(a).clone());
            continue;
        }
        let x = new_vertex(a);
        if !vertex_names.insert(x.clone()) {
            return Err(Error::NameCollision(x.to_string()));
        }
        let fa = f.apply(a);
        arrows.push(Arrow { id: prime(a), source: bq.source(a).clone(), target: x.clone() });
        arrows.push(Arrow { id: double_prime(a), source: x.clone(), target: bq.target(a).clone() });
        arrows.push(Arrow { id: eps(a), source: new_vertex(fa), target: x });
        origin.insert(prime(a), Origin::Prime(a.clone()));
        origin.insert(double_prime(a), Origin::DoublePrime(a.clone()));
        origin.insert(eps(a), Origin::Eps(a.clone()));
        fstar.insert(double_prime(a), prime(fa));
        fstar.insert(prime(fa), eps(a));
        fstar.insert(eps(a), double_prime(a));
    }
    if origin.len() != arrows.len() {
        let mut seen = BTreeSet::new();
        let dup = arrows.iter().find(|a| !seen.insert(&a.id)).expect("duplicate arrow id");
        return Err(Error::NameCollision(dup.id.to_string()));
    }
    let star = BiserialQuiver::new(Quiver::new(vertex_names, arrows)?, fstar)?;
    let weights = star
        .g_orbits()
        .orbits()
        .iter()
        .map(|o| {
            let m = o.iter().find_map(|a| origin[a].original()).map_or(1, |a| wbq.weight(a));
            (o[0].clone(), m)
        })
        .collect();
    let mut out = WeightedBiserialQuiver::new(star, weights)?;
    if carry_border {
        if let Some(border) = wbq.border() {
            out = out.with_border(border.clone())?;
        }
    }
    Ok((out, origin))
}

/// The star construction: one new vertex `x_α` and arrows `α'`, `α''`, `ε_α`
/// per arrow. The result is a triangulation quiver without `f`-fixed loops.
pub fn star(wbq: &WeightedBiserialQuiver) -> Result<WeightedBiserialQuiver> {
    Ok(star_with_kept(wbq, &BTreeSet::new(), false)?.0)
}

/// Star applied only to arrows outside `f`-fixed loops and loopless `f`-orbits of length 3.
pub fn star_minimal(wbq: &WeightedBiserialQuiver) -> Result<WeightedBiserialQuiver> {
    let bq = wbq.bq();
    let kept: BTreeSet<ArrowId> = bq
        .f_orbits()
        .orbits()
        .iter()
        .filter(|o| (o.len() == 1 && bq.is_loop(&o[0])) || (o.len() == 3 && o.iter().all(|a| !bq.is_loop(a))))
        .flatten()
        .cloned()
        .collect();
    Ok(star_with_kept(wbq, &kept, true)?.0)
}

/// Star that keeps every border loop verbatim and carries the border function.
pub fn sharp(wbq: &WeightedBiserialQuiver) -> Result<WeightedBiserialQuiver> {
    let bq = wbq.bq();
    let kept: BTreeSet<ArrowId> = bq.border_loops().into_iter().cloned().collect();
    if kept.is_empty() {
        return Err(Error::EmptyBorder);
    }
    if bq.is_single_vertex() {
        return Err(Error::TooSmall);
    }
    Ok(star_with_kept(wbq, &kept, true)?.0)
}

pub fn double_star(wbq: &WeightedBiserialQuiver) -> Result<WeightedBiserialQuiver> {
    star(&star(wbq)?)
}

/// The Brauer graph of the star of `Γ`'s quiver. Original ribbon vertices
/// keep their names and multiplicities; each `f`-orbit `F` adds a vertex
/// `F_<a>` of multiplicity 1, where `a` is the smallest arrow of `F`.
pub fn barycentric_division(graph: &BrauerGraph) -> Result<BrauerGraph> {
    let (starred, origin) = star_with_kept(&brauer_to_biserial(graph)?, &BTreeSet::new(), false)?;
    let mut names = BTreeSet::new();
    let mut name_of = BTreeMap::new();
    for o in starred.bq().g_orbits().orbits() {
        let name = match o.iter().find_map(|a| origin[a].original()) {
            Some(a) => graph.vertex_of(&a.as_str().into()).clone(),
            None => {
                let first = o.iter().filter_map(|a| match &origin[a] {
                    Origin::Eps(b) => Some(b),
                    _ => None,
                });
                RibbonVertexId::new(format!("F_{}", atom(first.min().expect("eps orbit").as_str())))
            }
        };
        if !names.insert(name.clone()) {
            return Err(Error::NameCollision(name.to_string()));
        }
        name_of.insert(o[0].clone(), name);
    }
    Ok(biserial_to_brauer_named(&starred, |o| name_of[&o[0]].clone()))
}

/// A weighted triangulation quiver with trivial parameters whose algebra
/// contains the original one as an idempotent subalgebra at `selection`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    pub wbq: WeightedBiserialQuiver,
    pub selection: IdempotentSelection,
    /// How many times the star construction was applied.
    pub stars: usize,
}

fn envelope_ready(w: &WeightedBiserialQuiver) -> bool {
    w.bq().is_triangulation() && w.bq().arrow_ids().all(|a| w.mn(a) >= 3) && !is_singular_tetrahedral(w)
}

/// Applies star until the weighted triangulation relations are defined
/// (every `m_α n_α ≥ 3`). One application suffices for inputs without
/// loops or short `f`-orbits; three always suffice.
pub fn periodic_envelope(wbq: &WeightedBiserialQuiver) -> Result<Envelope> {
    let selection = IdempotentSelection::all(wbq.bq());
    let mut cur = wbq.clone().without_extras();
    for stars in 1..=3 {
        cur = star(&cur)?;
        if envelope_ready(&cur) {
            return Ok(Envelope { wbq: cur.with_trivial_params(), selection, stars });
        }
    }
    unreachable!("the triple star always has m*n >= 3 on every arrow")
}

/// The tetrahedral triangulation quiver: six vertices, twelve arrows and
/// four triangular `f`-orbits, every `g`-orbit of length 3.
pub fn tetrahedral_quiver() -> BiserialQuiver {
    BiserialQuiver::from_cycles(
        &[
            ("delta", "1", "5"),
            ("nu", "1", "6"),
            ("epsilon", "2", "5"),
            ("rho", "2", "6"),
            ("sigma", "3", "2"),
            ("alpha", "3", "1"),
            ("gamma", "4", "1"),
            ("beta", "4", "2"),
            ("xi", "5", "3"),
            ("eta", "5", "4"),
            ("omega", "6", "4"),
            ("mu", "6", "3"),
        ],
        &[&["gamma", "delta", "eta"], &["beta", "rho", "omega"], &["sigma", "epsilon", "xi"], &["nu", "mu", "alpha"]],
    )
    .expect("tetrahedral quiver is valid")
}

/// All weights and parameters 1 on a quiver isomorphic to the tetrahedral one.
pub fn is_singular_tetrahedral(wbq: &WeightedBiserialQuiver) -> bool {
    let bq = wbq.bq();
    if bq.vertex_count() != 6 || !bq.is_triangulation() {
        return false;
    }
    if !bq.arrow_ids().all(|a| wbq.weight(a) == 1 && wbq.param(a).is_one()) {
        return false;
    }
    matches!(isomorphic_unweighted(bq, &tetrahedral_quiver(), 6), Ok(Some(_)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::isomorphic;
    use crate::weighted::random_weighted;

    fn names(o: &[ArrowId]) -> Vec<&str> {
        o.iter().map(|a| a.as_str()).collect()
    }

    fn tree(m: u32, n: u32) -> WeightedBiserialQuiver {
        let bq = BiserialQuiver::from_cycles(&[("alpha", "1", "1"), ("beta", "1", "1")], &[&["alpha", "beta"]]).unwrap();
        WeightedBiserialQuiver::new(bq, [("alpha".into(), m), ("beta".into(), n)].into()).unwrap()
    }

    #[test]
    fn star_of_brauer_tree() {
        let s = star(&tree(2, 3)).unwrap();
        let bq = s.bq();
        assert_eq!(bq.vertex_count(), 3);
        let g: Vec<Vec<&str>> = bq.g_orbits().orbits().iter().map(|o| names(o)).collect();
        assert_eq!(g, vec![vec!["alpha'", "alpha''"], vec!["beta'", "beta''"], vec!["eps_alpha", "eps_beta"]]);
        assert_eq!(s.weight(&"alpha'".into()), 2);
        assert_eq!(s.weight(&"beta''".into()), 3);
        assert_eq!(s.weight(&"eps_beta".into()), 1);
        assert!(bq.is_triangulation());
        assert!(bq.border_loops().is_empty());
    }

    #[test]
    fn reduce_all_is_identity_and_empty_selection_fails() {
        let w = random_weighted(5, 3, 3).unwrap();
        let r = reduce(&w, &IdempotentSelection::all(w.bq())).unwrap();
        assert_eq!(r, vec![w.clone()]);
        assert_eq!(IdempotentSelection::new([]).unwrap_err(), Error::EmptySelection);
        let bad = IdempotentSelection::new(["nope".into()]).unwrap();
        assert_eq!(reduce(&w, &bad).unwrap_err().name(), "UnknownVertex");
    }

    #[test]
    fn star_round_trip_on_random_quivers() {
        for seed in 0..60 {
            let w = random_weighted(1 + (seed % 6) as usize, seed, 3).unwrap();
            let s = star(&w).unwrap();
            assert_eq!(s.bq().vertex_count(), w.bq().vertex_count() + w.bq().arrow_count());
            let back = reduce(&s, &IdempotentSelection::all(w.bq())).unwrap();
            assert_eq!(back.len(), 1);
            assert!(isomorphic(&back[0], &w).unwrap().is_some(), "seed {seed}");
        }
    }

    #[test]
    fn minimal_star_keeps_triangles_and_border() {
        let bq = BiserialQuiver::from_cycles(
            &[("a", "1", "3"), ("b", "3", "4"), ("c", "4", "1"), ("s", "2", "4"), ("d", "4", "3"), ("w", "3", "2"), ("x", "1", "1"), ("e", "2", "2")],
            &[&["a", "b", "c"], &["s", "d", "w"], &["x"], &["e"]],
        )
        .unwrap();
        let w = WeightedBiserialQuiver::uniform(bq, 1).unwrap();
        let m = star_minimal(&w).unwrap();
        assert_eq!(m.bq().vertex_count(), 4);
        let s = sharp(&w).unwrap();
        assert_eq!(s.bq().vertex_count(), 4 + 6);
        assert_eq!(s.bq().border_vertices(), w.bq().border_vertices());
    }

    #[test]
    fn sharp_preconditions() {
        assert_eq!(sharp(&tree(2, 3)).unwrap_err(), Error::EmptyBorder);
        let bq = BiserialQuiver::from_cycles(&[("alpha", "1", "1"), ("beta", "1", "1")], &[&["alpha"], &["beta"]]).unwrap();
        assert_eq!(sharp(&WeightedBiserialQuiver::uniform(bq, 2).unwrap()).unwrap_err(), Error::TooSmall);
    }

    #[test]
    fn names_are_parenthesized_when_starring_twice() {
        let ds = double_star(&tree(1, 2)).unwrap();
        assert!(ds.bq().contains_arrow(&"(alpha')'".into()));
        assert!(ds.bq().contains_arrow(&"eps_(eps_alpha)".into()));
        assert!(ds.bq().vertices().contains(&VertexId::from("x_(alpha'')")));
    }

    #[test]
    fn name_collision_is_reported() {
        let bq = BiserialQuiver::from_cycles(&[("a", "x_a", "x_a"), ("b", "x_a", "x_a")], &[&["a", "b"]]).unwrap();
        let w = WeightedBiserialQuiver::uniform(bq, 2).unwrap();
        assert_eq!(star(&w).unwrap_err(), Error::NameCollision("x_a".into()));
    }

    #[test]
    fn tetrahedral_detection() {
        let t = WeightedBiserialQuiver::uniform(tetrahedral_quiver(), 1).unwrap();
        assert_eq!(t.bq().g_orbits().lengths(), [3; 4]);
        assert!(is_singular_tetrahedral(&t));
        assert!(!is_singular_tetrahedral(&WeightedBiserialQuiver::uniform(tetrahedral_quiver(), 2).unwrap()));
    }

    #[test]
    fn envelope_counts_stars() {
        assert_eq!(periodic_envelope(&tree(2, 3)).unwrap().stars, 2);
        let fixed = BiserialQuiver::from_cycles(&[("alpha", "1", "1"), ("beta", "1", "1")], &[&["alpha"], &["beta"]]).unwrap();
        assert_eq!(periodic_envelope(&WeightedBiserialQuiver::uniform(fixed, 1).unwrap()).unwrap().stars, 3);
    }
}
