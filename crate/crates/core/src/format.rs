//! Curve file format: a JSON document with `components` and `edges`.
//!
//! ```json
//! {
//!   "components": [{"id": 0, "genus": 2, "flags": ["Smooth"]}],
//!   "edges": [{"a": 0, "b": 1, "mult": 3}]
//! }
//! ```
//!
//! Two optional keys are accepted as well: `honestly_hyperelliptic`
//! (a curve-level boolean assertion) and `meta` (string map, used by the
//! random generator to record its algorithm and seed). Any other key is
//! rejected. Canonical output sorts components by id and edges by endpoint
//! pair, writes each edge with `a < b`, and merges repeated pairs.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::curve::{check_flags, check_ids, ComponentRecord, CurveGraph, Flag, Issue};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub components: Vec<ComponentEntry>,
    pub edges: Vec<EdgeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub honestly_hyperelliptic: Option<bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub id: i64,
    pub genus: i64,
    #[serde(default)]
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub a: i64,
    pub b: i64,
    pub mult: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub issues: Vec<Issue>,
    /// Absent when structural issues prevent building the graph.
    pub connected: Option<bool>,
    pub arithmetic_genus: Option<i64>,
}

/// Lists every structural problem of a document without repairing any.
pub fn validate_curve(doc: &CurveDocument) -> ValidationReport {
    match to_curve(doc) {
        Ok(g) => g.validate(),
        Err(Error::InvalidCurve(issues)) => ValidationReport {
            valid: false,
            issues,
            connected: None,
            arithmetic_genus: None,
        },
        Err(other) => unreachable!("to_curve only reports structural issues: {other}"),
    }
}

impl CurveGraph {
    pub fn validate(&self) -> ValidationReport {
        let connected = self.is_connected();
        ValidationReport {
            valid: true,
            issues: Vec::new(),
            connected: Some(connected),
            arithmetic_genus: Some(self.total_genus()),
        }
    }
}

fn document_issues(doc: &CurveDocument) -> Vec<Issue> {
    let mut issues = Vec::new();
    check_ids(doc.components.iter().map(|c| c.id), &mut issues);
    let ids: BTreeSet<i64> = doc.components.iter().map(|c| c.id).collect();
    for c in &doc.components {
        if c.genus < 0 {
            issues.push(Issue::NegativeGenus {
                component: c.id,
                genus: c.genus,
            });
        }
        let mut flags = BTreeSet::new();
        for name in &c.flags {
            match Flag::parse(name) {
                Some(f) => {
                    flags.insert(f);
                }
                None => issues.push(Issue::UnknownFlag {
                    component: c.id,
                    flag: name.clone(),
                }),
            }
        }
        if c.genus >= 0 {
            check_flags(c.id, c.genus, &flags, &mut issues);
        }
    }
    for e in &doc.edges {
        if e.a == e.b {
            issues.push(Issue::SelfLoop { component: e.a });
        } else if !ids.contains(&e.a) || !ids.contains(&e.b) {
            issues.push(Issue::UnknownEndpoint { a: e.a, b: e.b });
        } else if e.mult <= 0 {
            issues.push(Issue::NonPositiveMultiplicity {
                a: e.a,
                b: e.b,
                mult: e.mult,
            });
        }
    }
    issues
}

/// Converts a parsed document into a curve, reporting every structural
/// issue at once.
pub fn to_curve(doc: &CurveDocument) -> Result<CurveGraph> {
    let issues = document_issues(doc);
    if !issues.is_empty() {
        return Err(Error::InvalidCurve(issues));
    }
    let components = doc
        .components
        .iter()
        .map(|c| ComponentRecord {
            id: c.id as usize,
            genus: u32::try_from(c.genus).unwrap_or(u32::MAX),
            flags: c.flags.iter().filter_map(|f| Flag::parse(f)).collect(),
        })
        .collect();
    let edges = doc.edges.iter().map(|e| {
        (
            e.a as usize,
            e.b as usize,
            u32::try_from(e.mult).unwrap_or(u32::MAX),
        )
    });
    let g = CurveGraph::with_status(components, edges, doc.honestly_hyperelliptic)?;
    Ok(g.with_meta(doc.meta.clone()))
}

/// Canonical document for a curve.
pub fn to_document(g: &CurveGraph) -> CurveDocument {
    CurveDocument {
        components: g
            .components()
            .iter()
            .map(|c| ComponentEntry {
                id: c.id as i64,
                genus: i64::from(c.genus),
                flags: c.flags.iter().map(|f| f.as_str().to_string()).collect(),
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeEntry {
                a: e.a as i64,
                b: e.b as i64,
                mult: i64::from(e.mult),
            })
            .collect(),
        honestly_hyperelliptic: explicit_status(g),
        meta: g.meta().clone(),
    }
}

// An irreducible curve whose status only comes from its component flag
// does not need the curve-level key.
fn explicit_status(g: &CurveGraph) -> Option<bool> {
    match g.hyperelliptic() {
        Some(true) if g.num_components() == 1 && g.component(0).has(Flag::HonestlyHyperelliptic) => None,
        other => other,
    }
}

/// Parses a document; syntax errors carry line and column.
pub fn parse_document(text: &str) -> Result<CurveDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_curve(text: &str) -> Result<CurveGraph> {
    to_curve(&parse_document(text)?)
}

/// Canonical text: pretty JSON, two-space indent, trailing newline.
pub fn serialize_curve(g: &CurveGraph) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(g)).expect("document serializes");
    s.push('\n');
    s
}
