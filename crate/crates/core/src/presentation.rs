//! Relation sets of the biserial, border and weighted triangulation algebras
//! of a weighted biserial quiver, with basis enumeration, dimension, Cartan
//! matrix and Gabriel quiver for the special biserial kinds.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ids::{ArrowId, VertexId};
use crate::quiver::{Arrow, Quiver};
use crate::scalar::Scalar;
use crate::weighted::WeightedBiserialQuiver;

/// A path given by its start vertex and arrows; no arrows means `e_start`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: VertexId,
    pub arrows: Vec<ArrowId>,
}

impl Path {
    pub fn stationary(v: VertexId) -> Self {
        Self { start: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, wbq: &WeightedBiserialQuiver) -> VertexId {
        match self.arrows.last() {
            Some(a) => wbq.bq().target(a).clone(),
            None => self.start.clone(),
        }
    }

    pub fn concat(&self, other: &Path) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().cloned());
        Path { start: self.start.clone(), arrows }
    }

    /// Consecutive arrows compose and the first starts at `start`.
    pub fn is_valid(&self, wbq: &WeightedBiserialQuiver) -> bool {
        let bq = wbq.bq();
        let mut at = &self.start;
        for a in &self.arrows {
            if !bq.contains_arrow(a) || bq.source(a) != at {
                return false;
            }
            at = bq.target(a);
        }
        bq.vertices().contains(&self.start)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            return write!(f, "e_{}", self.start);
        }
        let words: Vec<&str> = self.arrows.iter().map(|a| a.as_str()).collect();
        f.write_str(&words.join("*"))
    }
}

impl Serialize for Path {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// `left = 0`.
    Zero { left: Path },
    /// `left = scalar * right`, both sides parallel.
    Binomial { left: Path, scalar: Scalar, right: Path },
}

impl Relation {
    pub fn left(&self) -> &Path {
        match self {
            Relation::Zero { left } | Relation::Binomial { left, .. } => left,
        }
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self, Relation::Zero { .. })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Zero { left } => write!(f, "{left} = 0"),
            Relation::Binomial { left, scalar, right } => write!(f, "{left} = {scalar} * {right}"),
        }
    }
}

impl Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PresentationKind {
    Biserial,
    Border,
    WeightedTriangulation,
}

impl fmt::Display for PresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresentationKind::Biserial => "biserial",
            PresentationKind::Border => "border",
            PresentationKind::WeightedTriangulation => "weighted-triangulation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub wbq: WeightedBiserialQuiver,
    pub kind: PresentationKind,
    pub relations: Vec<Relation>,
}

impl AlgebraPresentation {
    /// Arrows with `m_α n_α = 1`; only the special biserial kinds drop them.
    pub fn virtual_loops(&self) -> Vec<ArrowId> {
        match self.kind {
            PresentationKind::WeightedTriangulation => Vec::new(),
            _ => self.wbq.virtual_loops(),
        }
    }

    pub fn gabriel_arrows(&self) -> Vec<ArrowId> {
        let virtuals: BTreeSet<ArrowId> = self.virtual_loops().into_iter().collect();
        self.wbq.bq().arrow_ids().filter(|a| !virtuals.contains(*a)).cloned().collect()
    }

    /// One relation per line.
    pub fn to_text(&self) -> String {
        self.relations.iter().map(|r| format!("{r}\n")).collect()
    }
}

/// `B_α = (α g(α) … g^{n_α−1}(α))^{m_α}`.
pub fn cycle_b(wbq: &WeightedBiserialQuiver, a: &ArrowId) -> Result<Path> {
    let bq = wbq.bq();
    bq.arrow(a)?;
    let g = bq.g();
    let mut arrows = Vec::with_capacity(wbq.mn(a));
    let mut cur = a;
    for _ in 0..wbq.mn(a) {
        arrows.push(cur.clone());
        cur = g.apply(cur);
    }
    Ok(Path { start: bq.source(a).clone(), arrows })
}

/// `A_α`, the prefix of `B_α` of length `m_α n_α − 1`.
pub fn path_a(wbq: &WeightedBiserialQuiver, a: &ArrowId) -> Result<Path> {
    let mut b = cycle_b(wbq, a)?;
    if b.len() < 2 {
        return Err(Error::TooShort(a.clone()));
    }
    b.arrows.pop();
    Ok(b)
}

fn single(wbq: &WeightedBiserialQuiver, arrows: &[&ArrowId]) -> Path {
    Path { start: wbq.bq().source(arrows[0]).clone(), arrows: arrows.iter().map(|a| (*a).clone()).collect() }
}

/// `B_α = B_ᾱ` once per vertex, the smaller arrow on the left.
fn socle_binomials(wbq: &WeightedBiserialQuiver) -> Vec<Relation> {
    let one = wbq.field().one();
    wbq.bq()
        .vertices()
        .iter()
        .map(|v| {
            let [a, b] = wbq.bq().outgoing(v);
            Relation::Binomial {
                left: cycle_b(wbq, a).expect("arrow"),
                scalar: one.clone(),
                right: cycle_b(wbq, b).expect("arrow"),
            }
        })
        .collect()
}

/// `αf(α) = 0` for every arrow and `B_α = B_ᾱ` for every vertex.
pub fn relations_biserial(wbq: &WeightedBiserialQuiver) -> Result<AlgebraPresentation> {
    let bq = wbq.bq();
    let mut relations: Vec<Relation> =
        bq.arrow_ids().map(|a| Relation::Zero { left: single(wbq, &[a, bq.f().apply(a)]) }).collect();
    relations.extend(socle_binomials(wbq));
    Ok(AlgebraPresentation { wbq: wbq.clone(), kind: PresentationKind::Biserial, relations })
}

/// Like the biserial relations, but each border loop `α` satisfies
/// `α² = b_{s(α)} B_α` (which is `α² = 0` when the scalar vanishes).
pub fn relations_border(wbq: &WeightedBiserialQuiver) -> Result<AlgebraPresentation> {
    let bq = wbq.bq();
    let border_loops: BTreeSet<&ArrowId> = bq.border_loops().into_iter().collect();
    if border_loops.is_empty() {
        return Err(Error::EmptyBorder);
    }
    let mut relations = Vec::new();
    for a in bq.arrow_ids() {
        let left = single(wbq, &[a, bq.f().apply(a)]);
        let b = wbq.border_value(bq.source(a));
        if border_loops.contains(a) && !b.is_zero() {
            relations.push(Relation::Binomial { left, scalar: b, right: cycle_b(wbq, a)? });
        } else {
            relations.push(Relation::Zero { left });
        }
    }
    relations.extend(socle_binomials(wbq));
    Ok(AlgebraPresentation { wbq: wbq.clone(), kind: PresentationKind::Border, relations })
}

/// `αf(α) = c_ᾱ A_ᾱ` and `βf(β)g(f(β)) = 0` for every arrow. An absent
/// parameter function counts as `c ≡ 1`.
pub fn relations_weighted_triangulation(wbq: &WeightedBiserialQuiver) -> Result<AlgebraPresentation> {
    let bq = wbq.bq();
    if !bq.is_triangulation() {
        return Err(Error::NotTriangulation);
    }
    let small: Vec<ArrowId> = bq.arrow_ids().filter(|a| wbq.mn(a) < 3).cloned().collect();
    if !small.is_empty() {
        return Err(Error::WeightTooSmall(small));
    }
    let (f, g, bar) = (bq.f(), bq.g(), bq.bar());
    let mut relations = Vec::new();
    for a in bq.arrow_ids() {
        let abar = bar.apply(a);
        relations.push(Relation::Binomial {
            left: single(wbq, &[a, f.apply(a)]),
            scalar: wbq.param(abar),
            right: path_a(wbq, abar)?,
        });
    }
    for b in bq.arrow_ids() {
        let fb = f.apply(b);
        relations.push(Relation::Zero { left: single(wbq, &[b, fb, g.apply(fb)]) });
    }
    Ok(AlgebraPresentation { wbq: wbq.clone(), kind: PresentationKind::WeightedTriangulation, relations })
}

/// Dispatches on `kind`.
pub fn relations(wbq: &WeightedBiserialQuiver, kind: PresentationKind) -> Result<AlgebraPresentation> {
    match kind {
        PresentationKind::Biserial => relations_biserial(wbq),
        PresentationKind::Border => relations_border(wbq),
        PresentationKind::WeightedTriangulation => relations_weighted_triangulation(wbq),
    }
}

fn special_biserial(pres: &AlgebraPresentation) -> Result<()> {
    match pres.kind {
        PresentationKind::WeightedTriangulation => {
            Err(Error::UnsupportedKind("basis enumeration needs a biserial or border presentation".into()))
        }
        _ => Ok(()),
    }
}

/// Per vertex: `e_i`, the proper nonempty prefixes of `B_α` and `B_ᾱ`, and
/// one socle path (the longer of the two cycles, the smaller arrow on ties).
pub fn basis_paths(pres: &AlgebraPresentation) -> Result<Vec<Path>> {
    special_biserial(pres)?;
    let wbq = &pres.wbq;
    let mut out = Vec::new();
    for v in wbq.bq().vertices() {
        out.push(Path::stationary(v.clone()));
        let [a, b] = wbq.bq().outgoing(v);
        let (ba, bb) = (cycle_b(wbq, a)?, cycle_b(wbq, b)?);
        for c in [&ba, &bb] {
            for k in 1..c.len() {
                out.push(Path { start: v.clone(), arrows: c.arrows[..k].to_vec() });
            }
        }
        out.push(if bb.len() > ba.len() { bb } else { ba });
    }
    Ok(out)
}

/// `Σ m_O n_O²`, valid for every kind.
pub fn dimension(pres: &AlgebraPresentation) -> u64 {
    pres.wbq.dimension()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    pub vertices: Vec<VertexId>,
    /// `entries[i][j]` counts basis paths from `vertices[i]` to `vertices[j]`.
    pub entries: Vec<Vec<u64>>,
}

impl CartanMatrix {
    pub fn total(&self) -> u64 {
        self.entries.iter().flatten().sum()
    }
}

pub fn cartan_matrix(pres: &AlgebraPresentation) -> Result<CartanMatrix> {
    let basis = basis_paths(pres)?;
    let vertices: Vec<VertexId> = pres.wbq.bq().vertices().iter().cloned().collect();
    let index: BTreeMap<&VertexId, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut entries = vec![vec![0u64; vertices.len()]; vertices.len()];
    for p in &basis {
        entries[index[&p.start]][index[&p.end(&pres.wbq)]] += 1;
    }
    Ok(CartanMatrix { vertices, entries })
}

/// The quiver with virtual loops removed.
pub fn gabriel_quiver(pres: &AlgebraPresentation) -> Result<Quiver> {
    special_biserial(pres)?;
    let bq = pres.wbq.bq();
    let arrows: Vec<Arrow> = pres.gabriel_arrows().iter().map(|a| bq.arrow(a).expect("arrow").clone()).collect();
    Quiver::new(bq.vertices().iter().cloned(), arrows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::BiserialQuiver;
    use crate::weighted::random_weighted;

    fn markov(m: u32) -> WeightedBiserialQuiver {
        let bq = BiserialQuiver::from_cycles(
            &[("a1", "1", "2"), ("b1", "1", "2"), ("a2", "2", "3"), ("b2", "2", "3"), ("a3", "3", "1"), ("b3", "3", "1")],
            &[&["a1", "a2", "a3"], &["b1", "b2", "b3"]],
        )
        .unwrap();
        WeightedBiserialQuiver::uniform(bq, m).unwrap()
    }

    fn tree(m: u32, n: u32) -> WeightedBiserialQuiver {
        let bq = BiserialQuiver::from_cycles(&[("alpha", "1", "1"), ("beta", "1", "1")], &[&["alpha", "beta"]]).unwrap();
        WeightedBiserialQuiver::new(bq, [("alpha".into(), m), ("beta".into(), n)].into()).unwrap()
    }

    #[test]
    fn cycles_and_their_prefixes() {
        let w = markov(1);
        assert_eq!(cycle_b(&w, &"a1".into()).unwrap().to_string(), "a1*b2*a3*b1*a2*b3");
        assert_eq!(path_a(&w, &"a1".into()).unwrap().to_string(), "a1*b2*a3*b1*a2");
        let t = tree(1, 4);
        assert_eq!(cycle_b(&t, &"beta".into()).unwrap().to_string(), "beta*beta*beta*beta");
        assert_eq!(path_a(&t, &"alpha".into()).unwrap_err(), Error::TooShort("alpha".into()));
    }

    #[test]
    fn truncated_polynomial_basis() {
        let pres = relations_biserial(&tree(1, 4)).unwrap();
        assert_eq!(basis_paths(&pres).unwrap().len(), 5);
        assert_eq!(cartan_matrix(&pres).unwrap().entries, vec![vec![5]]);
        assert_eq!(pres.virtual_loops(), vec![ArrowId::from("alpha")]);
        assert_eq!(gabriel_quiver(&pres).unwrap().arrow_count(), 1);
    }

    #[test]
    fn markov_counts() {
        let pres = relations_biserial(&markov(1)).unwrap();
        assert_eq!(pres.relations.len(), 9);
        assert_eq!(basis_paths(&pres).unwrap().len(), 36);
        let c = cartan_matrix(&pres).unwrap();
        assert!(c.entries.iter().all(|row| row.iter().sum::<u64>() == 12));
        let wt = relations_weighted_triangulation(&markov(1)).unwrap();
        assert_eq!(wt.relations.len(), 12);
        assert_eq!(wt.relations[0].to_string(), "a1*a2 = 1 * b1*a2*b3*a1*b2");
        assert_eq!(basis_paths(&wt).unwrap_err().name(), "UnsupportedKind");
    }

    #[test]
    fn weighted_preconditions() {
        assert_eq!(relations_weighted_triangulation(&tree(1, 4)).unwrap_err(), Error::NotTriangulation);
        let bq = BiserialQuiver::from_cycles(&[("alpha", "1", "1"), ("beta", "1", "1")], &[&["alpha"], &["beta"]]).unwrap();
        let w = WeightedBiserialQuiver::uniform(bq, 1).unwrap();
        let err = relations_weighted_triangulation(&w).unwrap_err();
        assert_eq!(err, Error::WeightTooSmall(vec!["alpha".into(), "beta".into()]));
    }

    #[test]
    fn every_relation_is_well_formed_on_random_quivers() {
        for seed in 0..200 {
            let w = random_weighted(1 + (seed % 8) as usize, seed, 3).unwrap();
            let pres = relations_biserial(&w).unwrap();
            assert_eq!(pres.relations.len(), w.bq().arrow_count() + w.bq().vertex_count());
            for r in &pres.relations {
                assert!(r.left().is_valid(&w));
                if let Relation::Binomial { left, right, .. } = r {
                    assert!(right.is_valid(&w));
                    assert_eq!(left.start, right.start);
                    assert_eq!(left.end(&w), right.end(&w));
                }
            }
            let basis = basis_paths(&pres).unwrap();
            assert_eq!(basis.len() as u64, dimension(&pres));
            assert_eq!(cartan_matrix(&pres).unwrap().total(), dimension(&pres));
        }
    }
}
