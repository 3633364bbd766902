//! Numerical profiles of rank-1 sheaves: multidegree, h0, h1 and the
//! Clifford index deg - 2 h0 + 2.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::connectivity::{connectivity_number, Connectivity};
use crate::curve::{ComponentId, CurveGraph, Decomposition, SetPartition};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SheafKind {
    /// I_S w_C where S is the set of nodes joining distinct parts of a
    /// partition.
    SplitCluster,
    /// O_C(D) with D a general canonical divisor on one side of a minimum
    /// decomposition.
    WitnessInvertible,
    UserSupplied,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafProfile {
    pub kind: SheafKind,
    /// Whether the sheaf is declared invertible; invertible sheaves in the
    /// canonical degree window always satisfy h0 <= deg/2 + 1.
    #[serde(default)]
    pub invertible: bool,
    /// Degree of the restriction to each component, modulo torsion.
    pub per_component_degree: BTreeMap<ComponentId, i64>,
    /// Nodes where the sheaf is not locally free; each adds one to the
    /// degree beyond the multidegree sum.
    #[serde(default)]
    pub singular_nodes: i64,
    pub degree: i64,
    pub h0: i64,
    pub h1: i64,
    pub cliff: i64,
}

impl SheafProfile {
    /// Contributes to the Clifford index of the curve.
    pub fn contributes(&self) -> bool {
        self.h0 >= 2 && self.h1 >= 2
    }
}

/// One failed constraint of a profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum ProfileViolation {
    MissingComponent { component: ComponentId },
    UnknownComponent { component: ComponentId },
    DegreeWindow { component: ComponentId, degree: i64, max: i64 },
    DegreeSum { stated: i64, sum: i64 },
    NegativeCohomology { h0: i64, h1: i64 },
    RiemannRoch { euler: i64, expected: i64 },
    CliffordFormula { stated: i64, computed: i64 },
    InvertibleClifford { degree: i64, h0: i64 },
}

impl ProfileViolation {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileViolation::MissingComponent { .. } => "missing_component",
            ProfileViolation::UnknownComponent { .. } => "unknown_component",
            ProfileViolation::DegreeWindow { .. } => "degree_window",
            ProfileViolation::DegreeSum { .. } => "degree_sum",
            ProfileViolation::NegativeCohomology { .. } => "negative_cohomology",
            ProfileViolation::RiemannRoch { .. } => "riemann_roch",
            ProfileViolation::CliffordFormula { .. } => "clifford_formula",
            ProfileViolation::InvertibleClifford { .. } => "invertible_clifford",
        }
    }
}

impl fmt::Display for ProfileViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileViolation::MissingComponent { component } => {
                write!(f, "no degree given for component {component}")
            }
            ProfileViolation::UnknownComponent { component } => {
                write!(f, "degree given for nonexistent component {component}")
            }
            ProfileViolation::DegreeWindow { component, degree, max } => write!(
                f,
                "degree window: degree {degree} on component {component} outside [0, {max}]"
            ),
            ProfileViolation::DegreeSum { stated, sum } => write!(
                f,
                "degree sum: stated degree {stated} but component degrees sum to {sum}"
            ),
            ProfileViolation::NegativeCohomology { h0, h1 } => {
                write!(f, "negative cohomology: h0 = {h0}, h1 = {h1}")
            }
            ProfileViolation::RiemannRoch { euler, expected } => write!(
                f,
                "Riemann-Roch: h0 - h1 = {euler} but deg + 1 - p_a = {expected}"
            ),
            ProfileViolation::CliffordFormula { stated, computed } => write!(
                f,
                "Clifford formula: stated cliff {stated} but deg - 2 h0 + 2 = {computed}"
            ),
            ProfileViolation::InvertibleClifford { degree, h0 } => write!(
                f,
                "Clifford inequality for invertible sheaves: h0 = {h0} exceeds deg/2 + 1 with deg = {degree}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub valid: bool,
    pub contributes: bool,
    pub violations: Vec<ProfileViolation>,
}

/// Checks a profile against the curve: degree window on each component,
/// degree sum, Riemann–Roch, the Clifford formula, and for invertible
/// sheaves the Clifford inequality.
pub fn validate_sheaf_profile(g: &CurveGraph, p: &SheafProfile) -> Result<ProfileReport> {
    g.require_connected()?;
    let mut violations = Vec::new();
    for id in 0..g.num_components() {
        match p.per_component_degree.get(&id) {
            None => violations.push(ProfileViolation::MissingComponent { component: id }),
            Some(&degree) => {
                let max = g.canonical_degree_at(id);
                if degree < 0 || degree > max {
                    violations.push(ProfileViolation::DegreeWindow {
                        component: id,
                        degree,
                        max,
                    });
                }
            }
        }
    }
    for &id in p.per_component_degree.keys() {
        if id >= g.num_components() {
            violations.push(ProfileViolation::UnknownComponent { component: id });
        }
    }
    let sum: i64 = p.per_component_degree.values().sum::<i64>() + p.singular_nodes;
    if sum != p.degree {
        violations.push(ProfileViolation::DegreeSum {
            stated: p.degree,
            sum,
        });
    }
    if p.h0 < 0 || p.h1 < 0 {
        violations.push(ProfileViolation::NegativeCohomology { h0: p.h0, h1: p.h1 });
    }
    let expected = p.degree + 1 - g.total_genus();
    if p.h0 - p.h1 != expected {
        violations.push(ProfileViolation::RiemannRoch {
            euler: p.h0 - p.h1,
            expected,
        });
    }
    let computed = p.degree - 2 * p.h0 + 2;
    if computed != p.cliff {
        violations.push(ProfileViolation::CliffordFormula {
            stated: p.cliff,
            computed,
        });
    }
    if p.invertible && computed < 0 {
        violations.push(ProfileViolation::InvertibleClifford {
            degree: p.degree,
            h0: p.h0,
        });
    }
    Ok(ProfileReport {
        valid: violations.is_empty(),
        contributes: p.contributes(),
        violations,
    })
}

/// Profile of I_S w_C where S is every node joining two distinct parts.
///
/// Each part must be connected of positive arithmetic genus; then the
/// sections split part-wise, h0 = sum of the parts' genera and
/// Riemann–Roch forces h1 = k, so cliff = crossing - 2k + 2.
pub fn split_cluster_profile(g: &CurveGraph, p: &SetPartition) -> Result<SheafProfile> {
    g.require_connected()?;
    let labels = p.labels();
    let mut h0 = 0;
    for (j, part) in p.parts().iter().enumerate() {
        let mask = g.mask_of(part)?;
        if !g.is_induced_connected(&mask) {
            return Err(Error::PartDisconnected { part: j });
        }
        let genus = g.genus_of_mask(&mask);
        if genus < 1 {
            return Err(Error::PartGenus { part: j, genus });
        }
        h0 += genus;
    }
    let mut per_component_degree = BTreeMap::new();
    for id in 0..g.num_components() {
        let crossing: i64 = g
            .neighbors(id)
            .iter()
            .filter(|&&(w, _)| labels[w] != labels[id])
            .map(|&(_, m)| i64::from(m))
            .sum();
        let degree = g.canonical_degree_at(id) - crossing;
        if degree < 0 {
            return Err(Error::DegreeWindow {
                component: id,
                degree,
                max: g.canonical_degree_at(id),
            });
        }
        per_component_degree.insert(id, degree);
    }
    let degree = 2 * g.total_genus() - 2 - p.crossing_edges();
    Ok(SheafProfile {
        kind: SheafKind::SplitCluster,
        invertible: false,
        per_component_degree,
        singular_nodes: p.crossing_edges(),
        degree,
        h0,
        h1: p.num_parts() as i64,
        cliff: degree - 2 * h0 + 2,
    })
}

/// The sheaf realizing cliff = m - 2 on a minimum decomposition A u B with
/// both sides of positive genus: w_C on A, trivial on B, so
/// h0 = 1 + p_a(A) and h1 = 1 + p_a(B).
///
/// For m = 1 the single node P is a base point of the canonical system and
/// the witness is I_P w_C instead (not invertible, cliff = -1).
pub fn witness_invertible_profile(g: &CurveGraph, d: &Decomposition) -> Result<SheafProfile> {
    let report = connectivity_number(g)?;
    let product = g.intersection_product(d)?;
    if report.m != Connectivity::Finite(product) {
        return Err(Error::NotMinimal {
            product,
            m: report.m.value().unwrap_or(i64::MAX),
        });
    }
    let genus_a = g.arithmetic_genus(d.a())?;
    let genus_b = g.arithmetic_genus(d.b())?;
    for (side, genus) in [('A', genus_a), ('B', genus_b)] {
        if genus < 1 {
            return Err(Error::RationalSide { side, genus });
        }
    }
    if product == 1 {
        let partition = SetPartition::new(g, vec![d.a().clone(), d.b().clone()])?;
        return split_cluster_profile(g, &partition);
    }
    let mut per_component_degree = BTreeMap::new();
    for id in 0..g.num_components() {
        let degree = if d.a().contains(id) {
            g.canonical_degree_at(id)
        } else {
            0
        };
        if degree < 0 {
            return Err(Error::DegreeWindow {
                component: id,
                degree,
                max: g.canonical_degree_at(id),
            });
        }
        per_component_degree.insert(id, degree);
    }
    let degree = g.canonical_degree_on(d.a())?;
    let h0 = 1 + genus_a;
    Ok(SheafProfile {
        kind: SheafKind::WitnessInvertible,
        invertible: true,
        per_component_degree,
        singular_nodes: 0,
        degree,
        h0,
        h1: 1 + genus_b,
        cliff: degree - 2 * h0 + 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{ComponentRecord, Subcurve};

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

    fn chain(n: usize) -> CurveGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
        curve(&vec![1; n], &edges)
    }

    #[test]
    fn threecon_singleton_split() {
        let g = threecon();
        let p = split_cluster_profile(&g, &SetPartition::singletons(&g).unwrap()).unwrap();
        assert_eq!((p.cliff, p.h0, p.h1, p.degree), (-1, 12, 6, 21));
        // degree 9 cluster
        assert_eq!(2 * g.total_genus() - 2 - p.degree, 9);
        assert!(validate_sheaf_profile(&g, &p).unwrap().valid);
    }

    #[test]
    fn chain_singleton_split() {
        let g = chain(4);
        let p = split_cluster_profile(&g, &SetPartition::singletons(&g).unwrap()).unwrap();
        assert_eq!(p.cliff, -3);
        assert_eq!(p.h0, g.total_genus());
        assert_eq!(p.h0, 4);
    }

    #[test]
    fn threecon_balanced_split_and_witness() {
        let g = threecon();
        let d = Decomposition::new(&g, [0, 4, 5]).unwrap();
        let part = SetPartition::new(&g, vec![d.a().clone(), d.b().clone()]).unwrap();
        assert_eq!(split_cluster_profile(&g, &part).unwrap().cliff, 1);
        let w = witness_invertible_profile(&g, &d).unwrap();
        assert_eq!((w.degree, w.h0, w.h1, w.cliff), (15, 8, 8, 1));
        assert!(w.invertible);
        let r = validate_sheaf_profile(&g, &w).unwrap();
        assert!(r.valid && r.contributes, "{r:?}");
    }

    #[test]
    fn two_component_witness() {
        let g = curve(&[5, 3], &[(0, 1, 4)]);
        let d = Decomposition::new(&g, [0]).unwrap();
        let w = witness_invertible_profile(&g, &d).unwrap();
        assert_eq!(w.cliff, 2);
        assert_eq!(w.h0, 6);
    }

    #[test]
    fn chain_witness_is_the_node_ideal() {
        let g = chain(3);
        let d = Decomposition::new(&g, [0]).unwrap();
        let w = witness_invertible_profile(&g, &d).unwrap();
        assert_eq!(w.kind, SheafKind::SplitCluster);
        assert_eq!(w.cliff, -1);
        assert_eq!(w.degree, 2 * g.total_genus() - 3);
        assert!(validate_sheaf_profile(&g, &w).unwrap().valid);
    }

    #[test]
    fn witness_needs_minimal_decomposition() {
        let g = threecon();
        let d = Decomposition::new(&g, [0, 1]).unwrap();
        assert!(matches!(
            witness_invertible_profile(&g, &d),
            Err(Error::NotMinimal { product: 4, m: 3 })
        ));
        let g = curve(&[0, 3], &[(0, 1, 2)]);
        let d = Decomposition::new(&g, [0]).unwrap();
        assert!(matches!(
            witness_invertible_profile(&g, &d),
            Err(Error::RationalSide { side: 'A', .. })
        ));
    }

    #[test]
    fn split_rejects_bad_parts() {
        let g = chain(3);
        let p = SetPartition::from_labels(&g, &[0, 1, 0]).unwrap();
        assert!(matches!(
            split_cluster_profile(&g, &p),
            Err(Error::PartDisconnected { part: 0 })
        ));
        let g = curve(&[1, 0, 1], &[(0, 1, 1), (1, 2, 1)]);
        let p = SetPartition::singletons(&g).unwrap();
        assert!(matches!(
            split_cluster_profile(&g, &p),
            Err(Error::PartGenus { part: 1, genus: 0 })
        ));
    }

    #[test]
    fn split_rejects_leaf_rational_in_part() {
        // P1 hanging off an elliptic curve inside one part gets degree -1
        let g = curve(&[0, 1, 2], &[(0, 1, 1), (1, 2, 1)]);
        let p = SetPartition::from_labels(&g, &[0, 0, 1]).unwrap();
        assert!(matches!(
            split_cluster_profile(&g, &p),
            Err(Error::DegreeWindow { component: 0, degree: -1, .. })
        ));
    }

    fn structure_sheaf(g: &CurveGraph) -> SheafProfile {
        SheafProfile {
            kind: SheafKind::UserSupplied,
            invertible: true,
            per_component_degree: (0..g.num_components()).map(|i| (i, 0)).collect(),
            singular_nodes: 0,
            degree: 0,
            h0: 1,
            h1: g.total_genus(),
            cliff: 0,
        }
    }

    #[test]
    fn structure_and_canonical_profiles() {
        let g = threecon();
        let r = validate_sheaf_profile(&g, &structure_sheaf(&g)).unwrap();
        assert!(r.valid);
        assert!(!r.contributes);
        let canonical = SheafProfile {
            kind: SheafKind::UserSupplied,
            invertible: true,
            per_component_degree: (0..6).map(|i| (i, g.canonical_degree_at(i))).collect(),
            singular_nodes: 0,
            degree: 30,
            h0: 16,
            h1: 1,
            cliff: 0,
        };
        let r = validate_sheaf_profile(&g, &canonical).unwrap();
        assert!(r.valid && !r.contributes);
        assert_eq!(
            g.canonical_degree_on(&Subcurve::whole(&g)).unwrap(),
            canonical.degree
        );
    }

    #[test]
    fn invertible_profile_violating_clifford() {
        // p_a = 10: two genus-3 curves meeting in 5 points
        let g = curve(&[3, 3], &[(0, 1, 5)]);
        assert_eq!(g.total_genus(), 10);
        let p = SheafProfile {
            kind: SheafKind::UserSupplied,
            invertible: true,
            per_component_degree: BTreeMap::from([(0, 3), (1, 3)]),
            singular_nodes: 0,
            degree: 6,
            h0: 5,
            h1: 8,
            cliff: -2,
        };
        let r = validate_sheaf_profile(&g, &p).unwrap();
        assert!(!r.valid);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].name(), "invertible_clifford");
    }

    #[test]
    fn riemann_roch_violation_named() {
        let g = threecon();
        let mut p = structure_sheaf(&g);
        p.h1 += 1;
        let r = validate_sheaf_profile(&g, &p).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].name(), "riemann_roch");
    }
}
