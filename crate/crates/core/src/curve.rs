//! Genus-weighted dual multigraph of a reduced nodal curve.
//!
//! Vertices are irreducible components carrying their arithmetic genus
//! (singularities of a component are absorbed into that number), edges are
//! transverse nodes between two distinct components. Every numerical
//! invariant here is exact integer arithmetic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComponentId = usize;

/// User-asserted properties of a component. None of them can be derived
/// from the dual graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Flag {
    Smooth,
    BrillNoetherGeneral,
    HonestlyHyperelliptic,
}

impl Flag {
    pub const ALL: [Flag; 3] = [
        Flag::Smooth,
        Flag::BrillNoetherGeneral,
        Flag::HonestlyHyperelliptic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Flag::Smooth => "Smooth",
            Flag::BrillNoetherGeneral => "BrillNoetherGeneral",
            Flag::HonestlyHyperelliptic => "HonestlyHyperelliptic",
        }
    }

    pub fn parse(s: &str) -> Option<Flag> {
        Flag::ALL.into_iter().find(|f| f.as_str() == s)
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub id: ComponentId,
    pub genus: u32,
    pub flags: BTreeSet<Flag>,
}

impl ComponentRecord {
    pub fn new(id: ComponentId, genus: u32) -> Self {
        ComponentRecord {
            id,
            genus,
            flags: BTreeSet::new(),
        }
    }

    pub fn with_flag(mut self, flag: Flag) -> Self {
        self.flags.insert(flag);
        self
    }

    pub fn has(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    /// Genus zero means the component is a projective line.
    pub fn is_rational(&self) -> bool {
        self.genus == 0
    }
}

/// `mult` distinct nodes joining components `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: ComponentId,
    pub b: ComponentId,
    pub mult: u32,
}

/// A structural defect found while building or validating a curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Issue {
    NoComponents,
    DuplicateId { id: i64 },
    NonContiguousIds { expected: usize, found: i64 },
    NegativeGenus { component: i64, genus: i64 },
    SelfLoop { component: i64 },
    NonPositiveMultiplicity { a: i64, b: i64, mult: i64 },
    UnknownEndpoint { a: i64, b: i64 },
    UnknownFlag { component: i64, flag: String },
    FlagContradiction { component: i64, reason: String },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::NoComponents => write!(f, "curve has no components"),
            Issue::DuplicateId { id } => write!(f, "component id {id} appears more than once"),
            Issue::NonContiguousIds { expected, found } => {
                write!(f, "component ids must be 0..V-1: expected {expected}, found {found}")
            }
            Issue::NegativeGenus { component, genus } => {
                write!(f, "component {component} has negative genus {genus}")
            }
            Issue::SelfLoop { component } => write!(
                f,
                "edge {component}-{component} is a self-loop; own nodes belong in the genus"
            ),
            Issue::NonPositiveMultiplicity { a, b, mult } => {
                write!(f, "edge {a}-{b} has multiplicity {mult}; must be positive")
            }
            Issue::UnknownEndpoint { a, b } => {
                write!(f, "edge {a}-{b} references a missing component")
            }
            Issue::UnknownFlag { component, flag } => {
                write!(f, "component {component} carries unknown flag {flag:?}")
            }
            Issue::FlagContradiction { component, reason } => {
                write!(f, "component {component}: {reason}")
            }
        }
    }
}

/// Dual graph of a reduced nodal curve. Immutable once built; every
/// constructor rejects structural defects instead of repairing them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveGraph {
    components: Vec<ComponentRecord>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(ComponentId, u32)>>,
    hyperelliptic: Option<bool>,
    meta: BTreeMap<String, String>,
}

impl CurveGraph {
    /// Builds a curve from component records and `(a, b, mult)` node
    /// groups. Repeated pairs are merged by adding multiplicities.
    pub fn new(
        components: Vec<ComponentRecord>,
        edges: impl IntoIterator<Item = (ComponentId, ComponentId, u32)>,
    ) -> Result<Self> {
        Self::with_status(components, edges, None)
    }

    /// As [`CurveGraph::new`], additionally recording whether the curve is
    /// asserted honestly hyperelliptic (`None` = unasserted).
    pub fn with_status(
        mut components: Vec<ComponentRecord>,
        edges: impl IntoIterator<Item = (ComponentId, ComponentId, u32)>,
        hyperelliptic: Option<bool>,
    ) -> Result<Self> {
        let mut issues = Vec::new();
        components.sort_by_key(|c| c.id);
        check_ids(components.iter().map(|c| c.id as i64), &mut issues);
        for c in &components {
            check_flags(c.id as i64, i64::from(c.genus), &c.flags, &mut issues);
        }
        let n = components.len();
        let mut merged: BTreeMap<(ComponentId, ComponentId), u64> = BTreeMap::new();
        for (a, b, mult) in edges {
            if a == b {
                issues.push(Issue::SelfLoop { component: a as i64 });
                continue;
            }
            if a >= n || b >= n {
                issues.push(Issue::UnknownEndpoint {
                    a: a as i64,
                    b: b as i64,
                });
                continue;
            }
            if mult == 0 {
                issues.push(Issue::NonPositiveMultiplicity {
                    a: a as i64,
                    b: b as i64,
                    mult: 0,
                });
                continue;
            }
            *merged.entry((a.min(b), a.max(b))).or_default() += u64::from(mult);
        }
        if n == 1 && hyperelliptic == Some(false) && components[0].has(Flag::HonestlyHyperelliptic) {
            issues.push(Issue::FlagContradiction {
                component: 0,
                reason: "flagged HonestlyHyperelliptic but the curve is asserted not honestly hyperelliptic".into(),
            });
        }
        if !issues.is_empty() {
            return Err(Error::InvalidCurve(issues));
        }

        let edges: Vec<Edge> = merged
            .into_iter()
            .map(|((a, b), mult)| Edge {
                a,
                b,
                mult: u32::try_from(mult).expect("multiplicity overflow"),
            })
            .collect();
        let mut adjacency = vec![Vec::new(); n];
        for e in &edges {
            adjacency[e.a].push((e.b, e.mult));
            adjacency[e.b].push((e.a, e.mult));
        }
        // an irreducible curve inherits its component's assertion
        let hyperelliptic = hyperelliptic.or_else(|| {
            (n == 1 && components[0].has(Flag::HonestlyHyperelliptic)).then_some(true)
        });
        Ok(CurveGraph {
            components,
            edges,
            adjacency,
            hyperelliptic,
            meta: BTreeMap::new(),
        })
    }

    pub fn with_meta(mut self, meta: BTreeMap<String, String>) -> Self {
        self.meta = meta;
        self
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Total number of nodes, i.e. the summed edge multiplicity.
    pub fn num_nodes(&self) -> i64 {
        self.edges.iter().map(|e| i64::from(e.mult)).sum()
    }

    pub fn components(&self) -> &[ComponentRecord] {
        &self.components
    }

    pub fn component(&self, id: ComponentId) -> &ComponentRecord {
        &self.components[id]
    }

    pub fn genera(&self) -> Vec<u32> {
        self.components.iter().map(|c| c.genus).collect()
    }

    /// Edges in canonical order, `a < b`, sorted by endpoints.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, id: ComponentId) -> &[(ComponentId, u32)] {
        &self.adjacency[id]
    }

    /// Number of nodes lying on component `id`.
    pub fn degree(&self, id: ComponentId) -> i64 {
        self.adjacency[id].iter().map(|&(_, m)| i64::from(m)).sum()
    }

    /// Honest hyperellipticity as asserted by the user.
    pub fn hyperelliptic(&self) -> Option<bool> {
        self.hyperelliptic
    }

    pub fn has_rational_component(&self) -> bool {
        self.components.iter().any(ComponentRecord::is_rational)
    }

    /// p_a(C) = sum of genera + E - V + 1.
    pub fn total_genus(&self) -> i64 {
        let genera: i64 = self.components.iter().map(|c| i64::from(c.genus)).sum();
        genera + self.num_nodes() - self.num_components() as i64 + 1
    }

    /// Number of connected pieces of the underlying graph.
    pub fn connected_pieces(&self) -> usize {
        let mut seen = vec![false; self.num_components()];
        let mut pieces = 0;
        for start in 0..self.num_components() {
            if !seen[start] {
                pieces += 1;
                self.flood(start, &mut seen, |_| true);
            }
        }
        pieces
    }

    pub fn is_connected(&self) -> bool {
        self.connected_pieces() == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        match self.connected_pieces() {
            1 => Ok(()),
            components => Err(Error::Disconnected { components }),
        }
    }

    /// Whether the components with `mask[v]` set induce a connected subgraph.
    /// An empty selection is not connected.
    pub fn is_induced_connected(&self, mask: &[bool]) -> bool {
        let Some(start) = mask.iter().position(|&m| m) else {
            return false;
        };
        let mut seen = vec![false; self.num_components()];
        let reached = self.flood(start, &mut seen, |v| mask[v]);
        reached == mask.iter().filter(|&&m| m).count()
    }

    fn flood(&self, start: ComponentId, seen: &mut [bool], allowed: impl Fn(ComponentId) -> bool) -> usize {
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut reached = 0;
        while let Some(v) = queue.pop_front() {
            reached += 1;
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] && allowed(w) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        reached
    }

    /// Multiplicity of edges with both ends selected by `mask`.
    pub fn internal_nodes(&self, mask: &[bool]) -> i64 {
        self.edges
            .iter()
            .filter(|e| mask[e.a] && mask[e.b])
            .map(|e| i64::from(e.mult))
            .sum()
    }

    /// Multiplicity of edges with exactly one end selected by `mask`.
    pub fn boundary_nodes(&self, mask: &[bool]) -> i64 {
        self.edges
            .iter()
            .filter(|e| mask[e.a] != mask[e.b])
            .map(|e| i64::from(e.mult))
            .sum()
    }

    /// Arithmetic genus of a subcurve. Disconnected subcurves are handled by
    /// Euler-characteristic additivity, so the value may be negative.
    pub fn arithmetic_genus(&self, b: &Subcurve) -> Result<i64> {
        let mask = self.mask_of(b)?;
        Ok(self.genus_of_mask(&mask))
    }

    pub(crate) fn genus_of_mask(&self, mask: &[bool]) -> i64 {
        let (genera, count) = self
            .components
            .iter()
            .filter(|c| mask[c.id])
            .fold((0i64, 0i64), |(g, n), c| (g + i64::from(c.genus), n + 1));
        genera + self.internal_nodes(mask) - count + 1
    }

    /// A.B for a decomposition: the number of nodes joining the two sides.
    pub fn intersection_product(&self, d: &Decomposition) -> Result<i64> {
        let mask = self.mask_of(d.a())?;
        self.mask_of(d.b())?;
        if d.a().len() + d.b().len() != self.num_components() {
            return Err(Error::ImproperDecomposition);
        }
        Ok(self.boundary_nodes(&mask))
    }

    /// deg of the dualizing sheaf restricted to `b`:
    /// 2 p_a(b) - 2 + (nodes joining `b` to its complement).
    pub fn canonical_degree_on(&self, b: &Subcurve) -> Result<i64> {
        self.require_connected()?;
        let mask = self.mask_of(b)?;
        Ok(2 * self.genus_of_mask(&mask) - 2 + self.boundary_nodes(&mask))
    }

    pub(crate) fn mask_of(&self, b: &Subcurve) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.num_components()];
        for &v in b.members() {
            if v >= mask.len() {
                return Err(Error::UnknownComponent(v));
            }
            mask[v] = true;
        }
        Ok(mask)
    }

    /// Degree of the dualizing sheaf on a single component.
    pub fn canonical_degree_at(&self, id: ComponentId) -> i64 {
        2 * i64::from(self.components[id].genus) - 2 + self.degree(id)
    }
}

/// A nonempty set of components, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subcurve(Vec<ComponentId>);

impl Subcurve {
    pub fn new(members: impl IntoIterator<Item = ComponentId>) -> Result<Self> {
        let set: BTreeSet<ComponentId> = members.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptySubcurve);
        }
        Ok(Subcurve(set.into_iter().collect()))
    }

    pub fn whole(g: &CurveGraph) -> Self {
        Subcurve((0..g.num_components()).collect())
    }

    pub fn single(id: ComponentId) -> Self {
        Subcurve(vec![id])
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        Subcurve(
            mask.iter()
                .enumerate()
                .filter_map(|(i, &m)| m.then_some(i))
                .collect(),
        )
    }

    pub fn members(&self) -> &[ComponentId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: ComponentId) -> bool {
        self.0.binary_search(&id).is_ok()
    }
}

impl fmt::Display for Subcurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

/// C = A u B with both sides nonempty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    a: Subcurve,
    b: Subcurve,
}

impl Decomposition {
    /// Side A is `a`; side B is its complement in `g`.
    pub fn new(g: &CurveGraph, a: impl IntoIterator<Item = ComponentId>) -> Result<Self> {
        let a = Subcurve::new(a).map_err(|_| Error::ImproperDecomposition)?;
        let mask = g.mask_of(&a)?;
        Self::from_mask(&mask)
    }

    pub(crate) fn from_mask(mask_a: &[bool]) -> Result<Self> {
        let inside = mask_a.iter().filter(|&&m| m).count();
        if inside == 0 || inside == mask_a.len() {
            return Err(Error::ImproperDecomposition);
        }
        let complement: Vec<bool> = mask_a.iter().map(|m| !m).collect();
        Ok(Decomposition {
            a: Subcurve::from_mask(mask_a),
            b: Subcurve::from_mask(&complement),
        })
    }

    pub fn a(&self) -> &Subcurve {
        &self.a
    }

    pub fn b(&self) -> &Subcurve {
        &self.b
    }

    /// The same decomposition with the sides exchanged.
    pub fn swapped(&self) -> Self {
        Decomposition {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// Orientation with component 0 on side A.
    pub fn normalized(self) -> Self {
        if self.a.contains(0) {
            self
        } else {
            self.swapped()
        }
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.a, self.b)
    }
}

/// Partition of the components into k >= 2 nonempty parts, ordered by
/// smallest member (restricted-growth order).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetPartition {
    parts: Vec<Subcurve>,
    crossing_edges: i64,
}

impl SetPartition {
    pub fn new(g: &CurveGraph, parts: Vec<Subcurve>) -> Result<Self> {
        let n = g.num_components();
        let mut labels = vec![usize::MAX; n];
        for (j, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::MalformedPartition(format!("part {j} is empty")));
            }
            for &v in part.members() {
                if v >= n {
                    return Err(Error::UnknownComponent(v));
                }
                if labels[v] != usize::MAX {
                    return Err(Error::MalformedPartition(format!(
                        "component {v} lies in more than one part"
                    )));
                }
                labels[v] = j;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::MalformedPartition(format!(
                "component {v} is not covered"
            )));
        }
        Self::from_labels(g, &labels)
    }

    /// Builds a partition from one label per component; labels need not be
    /// normalized.
    pub fn from_labels(g: &CurveGraph, labels: &[usize]) -> Result<Self> {
        if labels.len() != g.num_components() {
            return Err(Error::MalformedPartition(format!(
                "{} labels for {} components",
                labels.len(),
                g.num_components()
            )));
        }
        let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
        let mut parts: Vec<Vec<ComponentId>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            let next = renumber.len();
            let j = *renumber.entry(l).or_insert(next);
            if j == parts.len() {
                parts.push(Vec::new());
            }
            parts[j].push(v);
        }
        if parts.len() < 2 {
            return Err(Error::MalformedPartition("need at least two parts".into()));
        }
        let crossing_edges = g
            .edges()
            .iter()
            .filter(|e| labels[e.a] != labels[e.b])
            .map(|e| i64::from(e.mult))
            .sum();
        Ok(SetPartition {
            parts: parts.into_iter().map(Subcurve).collect(),
            crossing_edges,
        })
    }

    pub fn singletons(g: &CurveGraph) -> Result<Self> {
        let labels: Vec<usize> = (0..g.num_components()).collect();
        Self::from_labels(g, &labels)
    }

    pub fn parts(&self) -> &[Subcurve] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Total multiplicity of nodes joining distinct parts.
    pub fn crossing_edges(&self) -> i64 {
        self.crossing_edges
    }

    /// Restricted growth string: label of each component's part.
    pub fn labels(&self) -> Vec<usize> {
        let n: usize = self.parts.iter().map(Subcurve::len).sum();
        let mut labels = vec![0; n];
        for (j, part) in self.parts.iter().enumerate() {
            for &v in part.members() {
                labels[v] = j;
            }
        }
        labels
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" | "))
    }
}

pub(crate) fn check_ids(ids: impl Iterator<Item = i64>, issues: &mut Vec<Issue>) {
    let ids: Vec<i64> = ids.collect();
    if ids.is_empty() {
        issues.push(Issue::NoComponents);
        return;
    }
    let mut seen = BTreeSet::new();
    for &id in &ids {
        if !seen.insert(id) {
            issues.push(Issue::DuplicateId { id });
        }
    }
    for (expected, &found) in seen.iter().enumerate() {
        if found != expected as i64 {
            issues.push(Issue::NonContiguousIds { expected, found });
            break;
        }
    }
}

pub(crate) fn check_flags(component: i64, genus: i64, flags: &BTreeSet<Flag>, issues: &mut Vec<Issue>) {
    if genus == 0 && flags.contains(&Flag::HonestlyHyperelliptic) {
        issues.push(Issue::FlagContradiction {
            component,
            reason: "a genus-0 component cannot be HonestlyHyperelliptic".into(),
        });
    }
}
