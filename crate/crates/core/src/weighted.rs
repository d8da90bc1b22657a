//! Biserial quivers with a weight per `g`-orbit, plus the optional border
//! function (scalars on border vertices) and parameter function (nonzero
//! scalars per `g`-orbit).

use std::collections::{BTreeMap, BTreeSet};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ids::{ArrowId, VertexId};
use crate::quiver::{random_biserial_quiver, BiserialQuiver};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedBiserialQuiver {
    bq: BiserialQuiver,
    weights: BTreeMap<ArrowId, u32>,
    border: Option<BTreeMap<VertexId, Scalar>>,
    params: Option<BTreeMap<ArrowId, Scalar>>,
}

/// Re-keys a per-orbit map by canonical orbit representatives. Any member
/// of an orbit may be used as key; two keys in one orbit must agree.
fn normalize<T: Clone + PartialEq + std::fmt::Display>(
    bq: &BiserialQuiver,
    raw: BTreeMap<ArrowId, T>,
    what: &str,
) -> Result<BTreeMap<ArrowId, T>, String> {
    let mut out: BTreeMap<ArrowId, T> = BTreeMap::new();
    for (a, v) in raw {
        if !bq.contains_arrow(&a) {
            return Err(format!("{what} key `{a}` is not an arrow"));
        }
        let rep = bq.g_orbits().representative(&a).clone();
        match out.get(&rep) {
            Some(old) if *old != v => {
                return Err(format!("conflicting {what} values {old} and {v} on the g-orbit of `{rep}`"));
            }
            _ => {
                out.insert(rep, v);
            }
        }
    }
    let missing: Vec<&str> = bq.g_orbits().representatives().filter(|r| !out.contains_key(*r)).map(|r| r.as_str()).collect();
    if !missing.is_empty() {
        return Err(format!("{what} missing for the g-orbits of [{}]", missing.join(", ")));
    }
    Ok(out)
}

impl WeightedBiserialQuiver {
    /// `weights` may be keyed by any member of each `g`-orbit.
    pub fn new(bq: BiserialQuiver, weights: BTreeMap<ArrowId, u32>) -> Result<Self> {
        let weights = normalize(&bq, weights, "weight").map_err(Error::InvalidWeights)?;
        if let Some((a, _)) = weights.iter().find(|(_, m)| **m == 0) {
            return Err(Error::InvalidWeights(format!("weight of the g-orbit of `{a}` must be at least 1")));
        }
        let w = Self { bq, weights, border: None, params: None };
        if w.bq.is_single_vertex() && w.bq.arrow_ids().all(|a| w.mn(a) == 1) {
            return Err(Error::ExcludedDegenerate);
        }
        Ok(w)
    }

    /// Every `g`-orbit gets weight `m`.
    pub fn uniform(bq: BiserialQuiver, m: u32) -> Result<Self> {
        let weights = bq.g_orbits().representatives().map(|r| (r.clone(), m)).collect();
        Self::new(bq, weights)
    }

    /// Attaches a border function. Keys must be border vertices; border
    /// vertices left out carry the scalar zero.
    pub fn with_border(mut self, border: BTreeMap<VertexId, Scalar>) -> Result<Self> {
        let allowed = self.bq.border_vertices();
        if let Some(v) = border.keys().find(|v| !allowed.contains(*v)) {
            return Err(Error::InvalidBorder(format!("`{v}` is not a border vertex")));
        }
        self.border = Some(border);
        self.check_field()?;
        Ok(self)
    }

    /// Attaches a parameter function; keys may be any orbit member, values nonzero.
    pub fn with_params(mut self, params: BTreeMap<ArrowId, Scalar>) -> Result<Self> {
        let params = normalize(&self.bq, params, "parameter").map_err(Error::InvalidParams)?;
        if let Some((a, _)) = params.iter().find(|(_, c)| c.is_zero()) {
            return Err(Error::InvalidParams(format!("parameter of the g-orbit of `{a}` is zero")));
        }
        self.params = Some(params);
        self.check_field()?;
        Ok(self)
    }

    /// The parameter function `c ≡ 1` over the current field.
    pub fn with_trivial_params(self) -> Self {
        let one = self.field().one();
        let params = self.bq.g_orbits().representatives().map(|r| (r.clone(), one.clone())).collect();
        Self { params: Some(params), ..self }
    }

    pub fn without_extras(self) -> Self {
        Self { border: None, params: None, ..self }
    }

    fn check_field(&self) -> Result<()> {
        let mut fields = BTreeSet::new();
        fields.extend(self.border.iter().flat_map(|b| b.values()).map(Scalar::field));
        fields.extend(self.params.iter().flat_map(|p| p.values()).map(Scalar::field));
        if fields.len() > 1 {
            return Err(Error::InvalidScalar("border and parameter scalars must lie in one field".into()));
        }
        Ok(())
    }

    pub fn bq(&self) -> &BiserialQuiver {
        &self.bq
    }

    /// Weights keyed by canonical `g`-orbit representative.
    pub fn weights(&self) -> &BTreeMap<ArrowId, u32> {
        &self.weights
    }

    pub fn border(&self) -> Option<&BTreeMap<VertexId, Scalar>> {
        self.border.as_ref()
    }

    pub fn params(&self) -> Option<&BTreeMap<ArrowId, Scalar>> {
        self.params.as_ref()
    }

    /// Coefficient field of the border and parameter scalars (rationals if none).
    pub fn field(&self) -> Field {
        self.border
            .iter()
            .flat_map(|b| b.values())
            .chain(self.params.iter().flat_map(|p| p.values()))
            .map(Scalar::field)
            .next()
            .unwrap_or(Field::Rationals)
    }

    /// `m_α`.
    pub fn weight(&self, a: &ArrowId) -> u32 {
        self.weights[self.bq.g_orbits().representative(a)]
    }

    /// `n_α`, the length of the `g`-orbit of `α`.
    pub fn orbit_len(&self, a: &ArrowId) -> usize {
        self.bq.g_orbits().orbit_len(a)
    }

    /// `m_α · n_α`, the length of `B_α`.
    pub fn mn(&self, a: &ArrowId) -> usize {
        self.weight(a) as usize * self.orbit_len(a)
    }

    pub fn is_virtual(&self, a: &ArrowId) -> bool {
        self.mn(a) == 1
    }

    pub fn virtual_loops(&self) -> Vec<ArrowId> {
        self.bq.arrow_ids().filter(|a| self.is_virtual(a)).cloned().collect()
    }

    /// `b_v`, zero when no value is recorded.
    pub fn border_value(&self, v: &VertexId) -> Scalar {
        self.border.as_ref().and_then(|b| b.get(v).cloned()).unwrap_or_else(|| self.field().zero())
    }

    /// `c_α`, one when no parameter function is attached.
    pub fn param(&self, a: &ArrowId) -> Scalar {
        let rep = self.bq.g_orbits().representative(a);
        self.params.as_ref().map(|p| p[rep].clone()).unwrap_or_else(|| self.field().one())
    }

    /// `Σ m_O n_O²` over the `g`-orbits.
    pub fn dimension(&self) -> u64 {
        self.bq.g_orbits().orbits().iter().map(|o| self.weight(&o[0]) as u64 * (o.len() as u64).pow(2)).sum()
    }
}

/// A seeded random weighted biserial quiver with weights in `1..=max_weight`.
/// The single excluded degenerate case is avoided by raising one weight.
pub fn random_weighted(n_vertices: usize, seed: u64, max_weight: u32) -> Result<WeightedBiserialQuiver> {
    let bq = random_biserial_quiver(n_vertices, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x005e_ed0f_3e16);
    let max_weight = max_weight.max(1);
    let mut weights: BTreeMap<ArrowId, u32> =
        bq.g_orbits().representatives().map(|r| (r.clone(), rng.random_range(1..=max_weight))).collect();
    let degenerate = bq.is_single_vertex() && bq.g_orbits().orbits().iter().all(|o| o.len() == 1 && weights[&o[0]] == 1);
    if degenerate {
        *weights.values_mut().next().expect("two orbits") = 2;
    }
    WeightedBiserialQuiver::new(bq, weights)
}
