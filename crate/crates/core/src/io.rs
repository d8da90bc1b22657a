//! JSON documents for weighted biserial quivers and Brauer graphs.
//!
//! Unknown fields are rejected, `format_version` must be `"1"`, and load
//! errors carry a JSON pointer to the offending field. Saving produces a
//! canonical form (sorted ids, weights keyed by orbit representative), so
//! loading and saving a canonical document reproduces it byte for byte.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brauer::BrauerGraph;
use crate::error::{Error, Violation};
use crate::ids::{ArrowId, EdgeId, HalfEdgeId, RibbonVertexId, VertexId};
use crate::quiver::{Arrow, BiserialQuiver, Quiver};
use crate::scalar::Scalar;
use crate::weighted::WeightedBiserialQuiver;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowRecord {
    pub id: ArrowId,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDocument {
    pub format_version: String,
    pub vertices: Vec<VertexId>,
    pub arrows: Vec<ArrowRecord>,
    pub f: BTreeMap<ArrowId, ArrowId>,
    pub weights: BTreeMap<ArrowId, u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub border: Option<BTreeMap<VertexId, Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<BTreeMap<ArrowId, Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RibbonVertexRecord {
    pub id: RibbonVertexId,
    pub multiplicity: u32,
    pub cyclic_order: Vec<HalfEdgeId>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: EdgeId,
    pub half_edges: [HalfEdgeId; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BrauerGraphDocument {
    pub format_version: String,
    pub vertices: Vec<RibbonVertexRecord>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("MalformedDocument at `{pointer}`: {message}")]
    Malformed { pointer: String, message: String },
    #[error("{error} (at `{pointer}`)")]
    Invalid { pointer: String, error: Error },
}

impl LoadError {
    pub fn pointer(&self) -> &str {
        match self {
            LoadError::Malformed { pointer, .. } | LoadError::Invalid { pointer, .. } => pointer,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LoadError::Malformed { .. } => "MalformedDocument",
            LoadError::Invalid { error, .. } => error.name(),
        }
    }
}

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, LoadError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let mut pointer = String::new();
        for seg in e.path().iter() {
            use serde_path_to_error::Segment;
            match seg {
                Segment::Seq { index } => pointer.push_str(&format!("/{index}")),
                Segment::Map { key } => pointer.push_str(&format!("/{}", escape(key))),
                Segment::Enum { variant } => pointer.push_str(&format!("/{}", escape(variant))),
                Segment::Unknown => {}
            }
        }
        LoadError::Malformed { pointer, message: e.into_inner().to_string() }
    })?;
    de.end().map_err(|e| LoadError::Malformed { pointer: String::new(), message: e.to_string() })?;
    Ok(value)
}

fn check_version(v: &str) -> Result<(), LoadError> {
    if v != FORMAT_VERSION {
        return Err(LoadError::Malformed {
            pointer: "/format_version".into(),
            message: format!("unsupported format_version `{v}`, expected `{FORMAT_VERSION}`"),
        });
    }
    Ok(())
}

impl QuiverDocument {
    pub fn parse(text: &str) -> Result<Self, LoadError> {
        let doc: Self = parse(text)?;
        check_version(&doc.format_version)?;
        Ok(doc)
    }

    /// Canonical document for `wbq`.
    pub fn from_wbq(wbq: &WeightedBiserialQuiver) -> Self {
        let bq = wbq.bq();
        Self {
            format_version: FORMAT_VERSION.into(),
            vertices: bq.vertices().iter().cloned().collect(),
            arrows: bq
                .quiver()
                .arrows()
                .map(|a| ArrowRecord { id: a.id.clone(), source: a.source.clone(), target: a.target.clone() })
                .collect(),
            f: bq.f().as_map().clone(),
            weights: wbq.weights().clone(),
            border: wbq.border().cloned(),
            params: wbq.params().cloned(),
            metadata: None,
        }
    }

    fn locate(&self, error: Error) -> LoadError {
        let vertex_at = |v: &VertexId| match self.vertices.iter().position(|x| x == v) {
            Some(i) => format!("/vertices/{i}"),
            None => "/vertices".into(),
        };
        let arrow_at = |a: &ArrowId| match self.arrows.iter().rposition(|x| x.id == *a) {
            Some(i) => format!("/arrows/{i}"),
            None => "/arrows".into(),
        };
        let pointer = match &error {
            Error::Invalid(diag) => match diag.0.first() {
                Some(Violation::DuplicateVertex(v)) | Some(Violation::NotTwoRegular { vertex: v, .. }) => vertex_at(v),
                Some(Violation::DuplicateArrow(a)) => arrow_at(a),
                Some(Violation::UnknownVertex { arrow, .. }) => arrow_at(arrow),
                Some(Violation::NotAdmissible { arrow, .. }) => format!("/f/{}", escape(arrow.as_str())),
                Some(Violation::NotBijective(_)) => "/f".into(),
                Some(Violation::Disconnected { .. }) | Some(Violation::Empty) | None => "/vertices".into(),
            },
            Error::InvalidWeights(_) | Error::ExcludedDegenerate => "/weights".into(),
            Error::InvalidBorder(_) => "/border".into(),
            Error::InvalidParams(_) => "/params".into(),
            Error::InvalidScalar(_) => if self.params.is_some() { "/params" } else { "/border" }.into(),
            _ => String::new(),
        };
        LoadError::Invalid { pointer, error }
    }

    pub fn to_wbq(&self) -> Result<WeightedBiserialQuiver, LoadError> {
        let build = || -> Result<WeightedBiserialQuiver, Error> {
            let arrows = self.arrows.iter().map(|a| Arrow { id: a.id.clone(), source: a.source.clone(), target: a.target.clone() });
            let bq = BiserialQuiver::new(Quiver::new(self.vertices.iter().cloned(), arrows)?, self.f.clone())?;
            let mut w = WeightedBiserialQuiver::new(bq, self.weights.clone())?;
            if let Some(b) = &self.border {
                w = w.with_border(b.clone())?;
            }
            if let Some(p) = &self.params {
                w = w.with_params(p.clone())?;
            }
            Ok(w)
        };
        build().map_err(|e| self.locate(e))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

impl BrauerGraphDocument {
    pub fn parse(text: &str) -> Result<Self, LoadError> {
        let doc: Self = parse(text)?;
        check_version(&doc.format_version)?;
        Ok(doc)
    }

    pub fn from_graph(graph: &BrauerGraph) -> Self {
        Self {
            format_version: FORMAT_VERSION.into(),
            vertices: graph
                .vertices()
                .iter()
                .map(|(id, v)| RibbonVertexRecord { id: id.clone(), multiplicity: v.multiplicity, cyclic_order: v.cyclic_order.clone() })
                .collect(),
            edges: graph.edges().iter().map(|(id, h)| EdgeRecord { id: id.clone(), half_edges: h.clone() }).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<BrauerGraph, LoadError> {
        BrauerGraph::new(
            self.vertices.iter().map(|v| (v.id.clone(), v.multiplicity, v.cyclic_order.clone())),
            self.edges.iter().map(|e| (e.id.clone(), e.half_edges.clone())),
        )
        .map_err(|error| LoadError::Invalid { pointer: String::new(), error })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

/// Either kind of document, told apart by the presence of `edges`.
#[derive(Debug, Clone)]
pub enum AnyDocument {
    Quiver(Box<WeightedBiserialQuiver>),
    Brauer(BrauerGraph),
}

pub fn load_quiver(text: &str) -> Result<WeightedBiserialQuiver, LoadError> {
    QuiverDocument::parse(text)?.to_wbq()
}

pub fn load_brauer(text: &str) -> Result<BrauerGraph, LoadError> {
    BrauerGraphDocument::parse(text)?.to_graph()
}

pub fn load_any(text: &str) -> Result<AnyDocument, LoadError> {
    let value: serde_json::Value = parse(text)?;
    if value.get("edges").is_some() {
        Ok(AnyDocument::Brauer(load_brauer(text)?))
    } else {
        Ok(AnyDocument::Quiver(Box::new(load_quiver(text)?)))
    }
}

pub fn save_quiver(wbq: &WeightedBiserialQuiver) -> String {
    QuiverDocument::from_wbq(wbq).to_json()
}

pub fn save_brauer(graph: &BrauerGraph) -> String {
    BrauerGraphDocument::from_graph(graph).to_json()
}
