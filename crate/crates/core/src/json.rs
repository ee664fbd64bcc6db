//! JSON interchange for the algebra objects.
//!
//! The tagged document family
//!
//! ```json
//! {"kind": "ring",  "size": n, "add": [[...]], "mul": [[...]]}
//! {"kind": "brace", "size": n, "add": [[...]], "mul": [[...]]}
//! {"kind": "ybmap", "size": n, "carrier": [...], "sigma": [[...]], "tau": [[...]]}
//! ```
//!
//! uses row-major tables with entries in `0..n`; the identity must be
//! element 0, and `tau` is serialized with outer index `y`. Point maps are
//! `{"carrier": [...], "image": [...]}`, factorizations
//! `{"ring": <ring doc>, "S": [...], "I": [...]}`, ideals `{"J": [...]}`.
//! Validation runs on load: a document that parses but violates an axiom is
//! rejected with the axiom's witness.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brace::{BraceSide, SubsetError, SubsetX};
use crate::reflection::{PointMap, ReflectError};
use crate::yang_baxter::{YangBaxterMap, YbError};
use crate::{BraceError, FiniteBrace, FiniteRing, RingError, Table, TableError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Brace(#[from] BraceError),
    #[error(transparent)]
    Yb(#[from] YbError),
    #[error(transparent)]
    Subset(#[from] SubsetError),
    #[error(transparent)]
    Reflect(#[from] ReflectError),
    #[error("{0}")]
    Mismatch(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Ring(TablesDoc),
    Brace(TablesDoc),
    YbMap(YbDoc),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TablesDoc {
    pub size: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct YbDoc {
    pub size: usize,
    pub carrier: Vec<usize>,
    pub sigma: Vec<Vec<usize>>,
    pub tau: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointMapDoc {
    pub carrier: Vec<usize>,
    pub image: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorizationDoc {
    pub ring: Document,
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    #[serde(rename = "I")]
    pub i: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealDoc {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
}

pub fn parse_document(text: &str) -> Result<Document, JsonError> {
    Ok(serde_json::from_str(text)?)
}

fn tables(doc: &TablesDoc) -> Result<(Table, Table), JsonError> {
    let add = Table::from_rows(&doc.add)?;
    let mul = Table::from_rows(&doc.mul)?;
    if add.size() != doc.size || mul.size() != doc.size {
        return Err(JsonError::Mismatch(format!(
            "declared size {} does not match table size {}",
            doc.size,
            add.size()
        )));
    }
    Ok((add, mul))
}

pub fn ring_from_doc(doc: &TablesDoc) -> Result<FiniteRing, JsonError> {
    let (add, mul) = tables(doc)?;
    Ok(FiniteRing::from_tables(add, mul)?)
}

pub fn brace_from_doc(doc: &TablesDoc) -> Result<FiniteBrace, JsonError> {
    let (add, mul) = tables(doc)?;
    let side = match doc.side.as_deref() {
        None | Some("left") => BraceSide::Left,
        Some("right") => BraceSide::Right,
        Some(other) => {
            return Err(JsonError::Mismatch(format!("unknown brace side {other:?}")))
        }
    };
    Ok(FiniteBrace::from_tables(add, mul, side)?)
}

pub fn ybmap_from_doc(doc: &YbDoc) -> Result<YangBaxterMap, JsonError> {
    let carrier = SubsetX::new(doc.size, doc.carrier.iter().copied())?;
    Ok(YangBaxterMap::from_tables(carrier, &doc.sigma, &doc.tau)?)
}

pub fn ring_to_doc(ring: &FiniteRing) -> Document {
    Document::Ring(TablesDoc {
        size: ring.size(),
        add: ring.add_table().rows(),
        mul: ring.mul_table().rows(),
        side: None,
    })
}

pub fn brace_to_doc(brace: &FiniteBrace) -> Document {
    Document::Brace(TablesDoc {
        size: brace.size(),
        add: brace.add_table().rows(),
        mul: brace.mul_table().rows(),
        side: match brace.side() {
            BraceSide::Left => None,
            BraceSide::Right => Some("right".to_string()),
        },
    })
}

pub fn ybmap_to_doc(r: &YangBaxterMap) -> Document {
    Document::YbMap(YbDoc {
        size: r.carrier().ground_size(),
        carrier: r.carrier().members().to_vec(),
        sigma: r.sigma_rows(),
        tau: r.tau_rows(),
    })
}

/// Rebuild a point map over a known carrier; the document's member list
/// must coincide with it.
pub fn point_map_for(doc: &PointMapDoc, carrier: &SubsetX) -> Result<PointMap, JsonError> {
    let mut declared = doc.carrier.clone();
    declared.sort_unstable();
    if declared != carrier.members() {
        return Err(JsonError::Mismatch(
            "point map carrier differs from the solution carrier".to_string(),
        ));
    }
    // image entries follow the document's carrier order; reorder to sorted
    let mut image = vec![0; carrier.len()];
    for (slot, &x) in doc.carrier.iter().enumerate() {
        let pos = carrier.position(x).expect("member checked above");
        image[pos] = doc.image.get(slot).copied().ok_or_else(|| {
            JsonError::Mismatch("image list shorter than carrier".to_string())
        })?;
    }
    if doc.image.len() != carrier.len() {
        return Err(JsonError::Mismatch("image list longer than carrier".to_string()));
    }
    Ok(PointMap::new(carrier.clone(), image)?)
}

pub fn point_map_to_doc(map: &PointMap) -> PointMapDoc {
    PointMapDoc { carrier: map.carrier().members().to_vec(), image: map.image().to_vec() }
}
