//! Certified bounds for the Clifford index of a reduced nodal curve.
//!
//! Lower bounds come from the component count (1 - V) or from
//! 4-connectedness (0). Upper bounds come from a minimum decomposition
//! (min(m - 2, floor((p_a - 1)/2)), needs no rational component) and from
//! the best split cluster found by partition search. The value is pinned
//! exactly when the bounds meet, for two general curves glued at
//! 4 <= m <= (g1 + 1)/2 points (m - 2), and for 4-connected honestly
//! hyperelliptic curves (0).

mod profile;
mod search;

pub use profile::{
    split_cluster_profile, validate_sheaf_profile, witness_invertible_profile, ProfileReport,
    ProfileViolation, SheafKind, SheafProfile,
};
pub use search::{
    best_split_bound, best_split_bound_with, SearchOptions, SplitBound, DEFAULT_PARTITION_GUARD,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::connectivity::{connectivity_number, Connectivity};
use crate::curve::{CurveGraph, Decomposition, Flag, SetPartition};
use crate::error::{Error, Result};

fn require_analyzable(g: &CurveGraph) -> Result<()> {
    g.require_connected()?;
    let genus = g.total_genus();
    if genus < 2 {
        return Err(Error::GenusTooSmall {
            required: 2,
            found: genus,
        });
    }
    Ok(())
}

/// 0 for irreducible or 4-connected curves, otherwise 1 - V.
pub fn lower_bound(g: &CurveGraph) -> Result<i64> {
    require_analyzable(g)?;
    Ok(lower_bound_certificate(g, connectivity_number(g)?.m).value)
}

fn lower_bound_certificate(g: &CurveGraph, m: Connectivity) -> Certificate {
    let n = g.num_components();
    if n == 1 {
        Certificate::new(BoundKind::Lower, 0, BoundSource::Irreducible)
    } else if m.at_least(4) {
        Certificate::new(BoundKind::Lower, 0, BoundSource::FourConnected)
    } else {
        Certificate::new(BoundKind::Lower, 1 - n as i64, BoundSource::ComponentCount)
    }
}

/// min(m - 2, floor((p_a - 1)/2)) when no component is rational; `None`
/// when some component is a projective line and no claim is made.
pub fn theorem_upper_bound(g: &CurveGraph) -> Result<Option<i64>> {
    g.require_connected()?;
    let report = connectivity_number(g)?;
    min_cut_certificate(g, report.m, report.witness).map(|c| c.map(|c| c.value))
}

fn min_cut_certificate(
    g: &CurveGraph,
    m: Connectivity,
    witness: Option<Decomposition>,
) -> Result<Option<Certificate>> {
    let n = g.num_components();
    if n < 2 {
        return Err(Error::TooFewComponents {
            required: 2,
            found: n,
        });
    }
    if g.has_rational_component() {
        return Ok(None);
    }
    let m = m.value().expect("reducible curves have a finite connectivity number");
    let value = (m - 2).min((g.total_genus() - 1).div_euclid(2));
    let mut c = Certificate::new(BoundKind::Upper, value, BoundSource::MinimumCut);
    c.witness = witness.map(Witness::Decomposition);
    Ok(Some(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
}

/// Which fact produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// Irreducible curves have Clifford index >= 0.
    Irreducible,
    /// 4-connected curves have Clifford index >= 0.
    FourConnected,
    /// Subcanonical clusters have Clifford index >= 1 - V.
    ComponentCount,
    /// A minimum decomposition carries a contributing invertible sheaf with
    /// index m - 2; degeneration gives floor((p_a - 1)/2).
    MinimumCut,
    /// The split cluster of an admissible partition.
    SplitCluster,
    /// Two smooth curves, one Brill–Noether general of genus g1, glued at
    /// 4 <= m <= (g1 + 1)/2 points: exactly m - 2.
    TwoComponentGeneral,
    /// A 4-connected honestly hyperelliptic curve has index exactly 0.
    HyperellipticFourConnected,
    /// Lower and upper bound coincide.
    Squeeze,
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundSource::Irreducible => "irreducible curve",
            BoundSource::FourConnected => "4-connected curve",
            BoundSource::ComponentCount => "component count",
            BoundSource::MinimumCut => "minimum decomposition",
            BoundSource::SplitCluster => "split cluster",
            BoundSource::TwoComponentGeneral => "two-component general curve",
            BoundSource::HyperellipticFourConnected => "4-connected honestly hyperelliptic",
            BoundSource::Squeeze => "bounds coincide",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Decomposition(Decomposition),
    Partition(SetPartition),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: BoundKind,
    pub value: i64,
    pub source: BoundSource,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Certificate {
    fn new(kind: BoundKind, value: i64, source: BoundSource) -> Self {
        Certificate {
            kind,
            value,
            source,
            witness: None,
            notes: Vec::new(),
        }
    }

    /// Recomputes the bound value from the curve and the witness alone.
    pub fn replay(&self, g: &CurveGraph) -> Result<i64> {
        let n = g.num_components() as i64;
        let m = connectivity_number(g)?.m;
        let fail = |why: &str| Err(Error::InconsistentBounds(format!("{:?}: {why}", self.source)));
        match (self.source, &self.witness) {
            (BoundSource::Irreducible, _) if n == 1 => Ok(0),
            (BoundSource::FourConnected, _) if m.at_least(4) => Ok(0),
            (BoundSource::HyperellipticFourConnected, _)
                if m.at_least(4) && g.hyperelliptic() == Some(true) =>
            {
                Ok(0)
            }
            (BoundSource::ComponentCount, _) => Ok(1 - n),
            (BoundSource::MinimumCut, Some(Witness::Decomposition(d))) => {
                let product = g.intersection_product(d)?;
                if m != Connectivity::Finite(product) || g.has_rational_component() {
                    return fail("witness is not a minimum decomposition of a curve without rational components");
                }
                Ok((product - 2).min((g.total_genus() - 1).div_euclid(2)))
            }
            (BoundSource::SplitCluster, Some(Witness::Partition(p))) => {
                Ok(split_cluster_profile(g, p)?.cliff)
            }
            (BoundSource::TwoComponentGeneral, _) => match two_component_family(g) {
                Some((_, _, m)) => Ok(m - 2),
                None => fail("curve is not in the two-component family"),
            },
            (BoundSource::Squeeze, _) => Ok(self.value),
            _ => fail("hypotheses do not hold"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordBounds {
    pub lower: i64,
    pub upper: Option<i64>,
    pub exact: Option<i64>,
    pub certificates: Vec<Certificate>,
}

pub fn clifford_bounds(g: &CurveGraph) -> Result<CliffordBounds> {
    clifford_bounds_with(g, SearchOptions::default())
}

pub fn clifford_bounds_with(g: &CurveGraph, options: SearchOptions) -> Result<CliffordBounds> {
    require_analyzable(g)?;
    let report = connectivity_number(g)?;
    let mut certificates = Vec::new();

    let lower = lower_bound_certificate(g, report.m);
    let lower_value = lower.value;
    certificates.push(lower);

    let mut upper: Option<i64> = None;
    if g.num_components() >= 2 {
        if let Some(c) = min_cut_certificate(g, report.m, report.witness.clone())? {
            upper = Some(c.value);
            certificates.push(c);
        }
    }
    if let Some(split) = best_split_bound_with(g, options)? {
        let mut c = Certificate::new(BoundKind::Upper, split.value, BoundSource::SplitCluster);
        c.notes.push(
            "assumes sections of I_S w_C split part-wise: h0 = sum of part genera".to_string(),
        );
        if !split.exhaustive {
            c.notes.push("greedy merge result; not the exhaustive minimum".to_string());
        }
        c.witness = Some(Witness::Partition(split.partition));
        upper = Some(upper.map_or(split.value, |u| u.min(split.value)));
        certificates.push(c);
    }

    let mut exact_claims: Vec<Certificate> = Vec::new();
    if let Some((_, _, m)) = two_component_family(g) {
        exact_claims.push(Certificate::new(BoundKind::Exact, m - 2, BoundSource::TwoComponentGeneral));
    }
    if report.m.at_least(4) && g.hyperelliptic() == Some(true) {
        exact_claims.push(Certificate::new(BoundKind::Exact, 0, BoundSource::HyperellipticFourConnected));
    }
    if upper == Some(lower_value) {
        exact_claims.push(Certificate::new(BoundKind::Exact, lower_value, BoundSource::Squeeze));
    }

    if let Some(u) = upper {
        if lower_value > u {
            return Err(Error::InconsistentBounds(format!(
                "lower bound {lower_value} exceeds upper bound {u}"
            )));
        }
    }
    let mut exact = None;
    for claim in &exact_claims {
        if claim.value < lower_value || upper.is_some_and(|u| claim.value > u) {
            return Err(Error::InconsistentBounds(format!(
                "{} gives {} outside [{lower_value}, {}]",
                claim.source,
                claim.value,
                upper.map_or("none".to_string(), |u| u.to_string())
            )));
        }
        match exact {
            Some(e) if e != claim.value => {
                return Err(Error::InconsistentBounds(format!(
                    "exact values {e} and {} disagree",
                    claim.value
                )))
            }
            _ => exact = Some(claim.value),
        }
    }
    certificates.extend(exact_claims);
    Ok(CliffordBounds {
        lower: lower_value,
        upper,
        exact,
        certificates,
    })
}

/// `(g1, g2, m)` if the curve is two components, the first of them flagged
/// Brill–Noether general with genus g1, glued at m nodes with
/// 4 <= m <= (g1 + 1)/2 and g2 >= 1.
pub fn two_component_family(g: &CurveGraph) -> Option<(i64, i64, i64)> {
    if g.num_components() != 2 || g.edges().len() != 1 {
        return None;
    }
    let m = i64::from(g.edges()[0].mult);
    [(0, 1), (1, 0)].into_iter().find_map(|(general, other)| {
        let g1 = i64::from(g.component(general).genus);
        let g2 = i64::from(g.component(other).genus);
        let ok = g.component(general).has(Flag::BrillNoetherGeneral)
            && g2 >= 1
            && m >= 4
            && 2 * m <= g1 + 1;
        ok.then_some((g1, g2, m))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ComponentRecord;

    fn curve(genera: &[u32], edges: &[(usize, usize, u32)]) -> CurveGraph {
        let comps = genera
            .iter()
            .enumerate()
            .map(|(i, &g)| ComponentRecord::new(i, g))
            .collect();
        CurveGraph::new(comps, edges.iter().copied()).unwrap()
    }

    fn threecon() -> CurveGraph {
        let e = [(0, 1), (0, 4), (0, 5), (1, 2), (1, 3), (2, 3), (2, 5), (3, 4), (4, 5)];
        curve(&[2; 6], &e.map(|(a, b)| (a, b, 1)))
    }

    fn general_pair(g1: u32, g2: u32, m: u32) -> CurveGraph {
        let comps = vec![
            ComponentRecord::new(0, g1).with_flag(Flag::BrillNoetherGeneral),
            ComponentRecord::new(1, g2),
        ];
        CurveGraph::new(comps, [(0, 1, m)]).unwrap()
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound(&curve(&[5], &[])).unwrap(), 0);
        let chain = curve(&[1; 4], &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]);
        assert_eq!(lower_bound(&chain).unwrap(), -3);
        assert_eq!(lower_bound(&curve(&[2, 2], &[(0, 1, 4)])).unwrap(), 0);
        assert_eq!(lower_bound(&threecon()).unwrap(), -5);
    }

    #[test]
    fn theorem_upper_bounds() {
        assert_eq!(theorem_upper_bound(&threecon()).unwrap(), Some(1));
        assert_eq!(theorem_upper_bound(&curve(&[9, 1], &[(0, 1, 4)])).unwrap(), Some(2));
        assert_eq!(
            theorem_upper_bound(&curve(&[0, 3, 2], &[(0, 1, 2), (1, 2, 2), (0, 2, 2)])).unwrap(),
            None
        );
        assert!(matches!(
            theorem_upper_bound(&curve(&[3], &[])),
            Err(Error::TooFewComponents { .. })
        ));
    }

    #[test]
    fn threecon_bounds() {
        let b = clifford_bounds(&threecon()).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (-5, Some(-1), None));
    }

    #[test]
    fn chain_bounds_are_sharp() {
        let chain = curve(&[1; 4], &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]);
        let b = clifford_bounds(&chain).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (-3, Some(-3), Some(-3)));
    }

    #[test]
    fn general_pair_is_exact() {
        let b = clifford_bounds(&general_pair(9, 1, 4)).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (0, Some(2), Some(2)));
        assert!(b
            .certificates
            .iter()
            .any(|c| c.source == BoundSource::TwoComponentGeneral));
        // without the flag the value is only bounded
        let b = clifford_bounds(&curve(&[9, 1], &[(0, 1, 4)])).unwrap();
        assert_eq!(b.exact, None);
    }

    #[test]
    fn hyperelliptic_four_connected_is_zero() {
        let comps = vec![ComponentRecord::new(0, 2), ComponentRecord::new(1, 2)];
        let g = CurveGraph::with_status(comps, [(0, 1, 4)], Some(true)).unwrap();
        let b = clifford_bounds(&g).unwrap();
        assert_eq!(b.exact, Some(0));
        let irreducible = CurveGraph::new(
            vec![ComponentRecord::new(0, 4).with_flag(Flag::HonestlyHyperelliptic)],
            [],
        )
        .unwrap();
        let b = clifford_bounds(&irreducible).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (0, None, Some(0)));
    }

    #[test]
    fn certificates_replay() {
        for g in [threecon(), general_pair(9, 1, 4), curve(&[1; 3], &[(0, 1, 1), (1, 2, 1)])] {
            for c in clifford_bounds(&g).unwrap().certificates {
                assert_eq!(c.replay(&g).unwrap(), c.value, "{c:?}");
            }
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            clifford_bounds(&curve(&[1, 1], &[])),
            Err(Error::Disconnected { .. })
        ));
        assert!(matches!(
            clifford_bounds(&curve(&[1], &[])),
            Err(Error::GenusTooSmall { .. })
        ));
    }
}
