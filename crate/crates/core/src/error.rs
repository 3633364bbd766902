use thiserror::Error;

use crate::curve::{ComponentId, Issue};
use crate::koszul::Provenance;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid curve: {}", format_issues(.0))]
    InvalidCurve(Vec<Issue>),

    #[error("curve is disconnected ({components} connected pieces)")]
    Disconnected { components: usize },

    #[error("subcurve is empty")]
    EmptySubcurve,

    #[error("component id {0} is not part of the curve")]
    UnknownComponent(ComponentId),

    #[error("decomposition is improper: both sides must be nonempty and disjoint, covering every component")]
    ImproperDecomposition,

    #[error("set partition is malformed: {0}")]
    MalformedPartition(String),

    #[error("arithmetic genus {found} is below the required minimum {required}")]
    GenusTooSmall { required: i64, found: i64 },

    #[error("operation requires at least {required} components, curve has {found}")]
    TooFewComponents { required: usize, found: usize },

    #[error("{what}: size {size} exceeds the enumeration guard {guard}")]
    GuardExceeded {
        what: &'static str,
        size: usize,
        guard: usize,
    },

    #[error("decomposition has A.B = {product} but the connectivity number is {m}")]
    NotMinimal { product: i64, m: i64 },

    #[error("side {side} of the decomposition has arithmetic genus {genus} (needs >= 1)")]
    RationalSide { side: char, genus: i64 },

    #[error("part {part} of the partition is not connected")]
    PartDisconnected { part: usize },

    #[error("part {part} of the partition has arithmetic genus {genus} (needs >= 1)")]
    PartGenus { part: usize, genus: i64 },

    #[error("degree {degree} on component {component} leaves the window [0, {max}]")]
    DegreeWindow {
        component: ComponentId,
        degree: i64,
        max: i64,
    },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("contradiction at K({p},{q}): {existing:?} claims {existing_value}, {incoming:?} claims {incoming_value}")]
    Contradiction {
        p: usize,
        q: usize,
        existing: Provenance,
        existing_value: &'static str,
        incoming: Provenance,
        incoming_value: &'static str,
    },

    #[error("inconsistent Clifford bounds: {0}")]
    InconsistentBounds(String),

    #[error("generator precondition failed: {0}")]
    Generator(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that signal an internal contradiction between
    /// independently derived claims rather than bad input.
    pub fn is_contradiction(&self) -> bool {
        matches!(
            self,
            Error::Contradiction { .. } | Error::InconsistentBounds(_)
        )
    }
}

fn format_issues(issues: &[Issue]) -> String {
    issues
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
