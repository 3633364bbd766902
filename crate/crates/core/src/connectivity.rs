//! Numerical connectedness of the dual graph.
//!
//! A curve is m-connected when every proper decomposition C = A u B has
//! A.B >= m; the largest such m is the weighted global minimum cut. It is
//! computed with Stoer–Wagner for every size; small curves additionally get
//! an exhaustive list of all minimum decompositions, which also fixes a
//! canonical witness.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::{CurveGraph, Decomposition};
use crate::error::{Error, Result};

/// Largest curve for which bipartitions are enumerated exhaustively.
pub const DEFAULT_CUT_GUARD: usize = 22;

// masks are u64 with component 0 pinned to side A
const MAX_ENUMERABLE: usize = 63;

/// Connectivity number of a curve. Irreducible curves have no proper
/// decomposition, so every m-connectedness claim holds vacuously.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connectivity {
    Finite(i64),
    Infinite,
}

impl Connectivity {
    pub fn value(self) -> Option<i64> {
        match self {
            Connectivity::Finite(m) => Some(m),
            Connectivity::Infinite => None,
        }
    }

    pub fn at_least(self, m: i64) -> bool {
        match self {
            Connectivity::Finite(v) => v >= m,
            Connectivity::Infinite => true,
        }
    }
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectivity::Finite(m) => write!(f, "{m}"),
            Connectivity::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub m: Connectivity,
    pub witness: Option<Decomposition>,
    /// Every decomposition with A.B = m, when the curve is within the
    /// enumeration guard.
    pub all_min_decompositions: Option<Vec<Decomposition>>,
}

pub fn connectivity_number(g: &CurveGraph) -> Result<ConnectivityReport> {
    connectivity_number_with_guard(g, DEFAULT_CUT_GUARD)
}

/// Stoer–Wagner for the value; when `g` has at most `guard` components the
/// minimum decompositions are enumerated and the canonical one becomes the
/// witness, otherwise the witness is the cut Stoer–Wagner found.
pub fn connectivity_number_with_guard(g: &CurveGraph, guard: usize) -> Result<ConnectivityReport> {
    g.require_connected()?;
    let n = g.num_components();
    if n == 1 {
        return Ok(irreducible_report());
    }
    let (m, side) = stoer_wagner(g);
    if n <= guard.min(MAX_ENUMERABLE) {
        let masks = masks_with_crossing(g, m);
        debug_assert!(!masks.is_empty(), "Stoer–Wagner value {m} not attained");
        return Ok(enumerated_report(n, m, &masks));
    }
    Ok(ConnectivityReport {
        m: Connectivity::Finite(m),
        witness: Some(Decomposition::from_mask(&side)?.normalized()),
        all_min_decompositions: None,
    })
}

pub fn is_m_connected(g: &CurveGraph, m: i64) -> Result<bool> {
    if m < 1 {
        return Err(Error::Hypothesis(format!("m must be at least 1, got {m}")));
    }
    Ok(connectivity_number(g)?.m.at_least(m))
}

/// Exhaustive oracle: scans all 2^(V-1) - 1 bipartitions.
pub fn min_cut_bruteforce(g: &CurveGraph) -> Result<ConnectivityReport> {
    min_cut_bruteforce_with_guard(g, DEFAULT_CUT_GUARD)
}

pub fn min_cut_bruteforce_with_guard(g: &CurveGraph, guard: usize) -> Result<ConnectivityReport> {
    g.require_connected()?;
    let n = g.num_components();
    if n > guard.min(MAX_ENUMERABLE) {
        return Err(Error::GuardExceeded {
            what: "bipartition enumeration",
            size: n,
            guard: guard.min(MAX_ENUMERABLE),
        });
    }
    if n == 1 {
        return Ok(irreducible_report());
    }
    let mut best = i64::MAX;
    let mut at_best = Vec::new();
    for_each_bipartition(g, |mask, crossing| {
        if crossing < best {
            best = crossing;
            at_best.clear();
        }
        if crossing == best {
            at_best.push(mask);
        }
    });
    Ok(enumerated_report(n, best, &at_best))
}

fn irreducible_report() -> ConnectivityReport {
    ConnectivityReport {
        m: Connectivity::Infinite,
        witness: None,
        all_min_decompositions: Some(Vec::new()),
    }
}

fn enumerated_report(n: usize, m: i64, masks: &[u64]) -> ConnectivityReport {
    let witness = masks
        .iter()
        .copied()
        .min_by_key(|&b| witness_key(n, b))
        .map(|b| mask_to_decomposition(n, b));
    let mut sorted: Vec<u64> = masks.to_vec();
    sorted.sort_by_key(|&b| witness_key(n, b));
    ConnectivityReport {
        m: Connectivity::Finite(m),
        witness,
        all_min_decompositions: Some(sorted.into_iter().map(|b| mask_to_decomposition(n, b)).collect()),
    }
}

/// Tie-break among minimum decompositions: most balanced side sizes first,
/// then the lexicographically smallest membership vector (x_i = 1 iff
/// component i lies on side B; x_0 = 0 always).
fn witness_key(n: usize, b_mask: u64) -> (usize, u64) {
    let b = b_mask.count_ones() as usize;
    (n - 2 * b.min(n - b), b_mask.reverse_bits())
}

fn mask_to_decomposition(n: usize, b_mask: u64) -> Decomposition {
    let side_a: Vec<bool> = (0..n).map(|v| b_mask & (1 << v) == 0).collect();
    Decomposition::from_mask(&side_a).expect("proper bipartition")
}

/// Visits every proper bipartition (component 0 on side A) in Gray-code
/// order, passing the side-B mask and its crossing multiplicity.
fn for_each_bipartition(g: &CurveGraph, mut visit: impl FnMut(u64, i64)) {
    let n = g.num_components();
    let mut b_mask: u64 = 0;
    let mut crossing: i64 = 0;
    for step in 1u64..(1u64 << (n - 1)) {
        let v = step.trailing_zeros() as usize + 1;
        let v_in_b = b_mask & (1 << v) != 0;
        for &(w, mult) in g.neighbors(v) {
            let w_in_b = b_mask & (1 << w) != 0;
            if w_in_b == v_in_b {
                crossing += i64::from(mult);
            } else {
                crossing -= i64::from(mult);
            }
        }
        b_mask ^= 1 << v;
        visit(b_mask, crossing);
    }
}

fn masks_with_crossing(g: &CurveGraph, m: i64) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_bipartition(g, |mask, crossing| {
        if crossing == m {
            out.push(mask);
        }
    });
    out
}

/// Stoer–Wagner minimum cut on the dense weight matrix. Returns the cut
/// value and one side of a minimum cut. Ties in the maximum-adjacency order
/// are broken by the lowest index, so the result is deterministic.
pub fn stoer_wagner(g: &CurveGraph) -> (i64, Vec<bool>) {
    let n = g.num_components();
    assert!(n >= 2, "minimum cut needs two components");
    let mut weight = vec![vec![0i64; n]; n];
    for e in g.edges() {
        weight[e.a][e.b] += i64::from(e.mult);
        weight[e.b][e.a] += i64::from(e.mult);
    }
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = i64::MAX;
    let mut best_group = Vec::new();

    while active.len() > 1 {
        let mut added = vec![false; n];
        let mut attach = vec![0i64; n];
        let mut prev = active[0];
        let mut last = active[0];
        let mut last_weight = 0;
        for _ in 0..active.len() {
            let mut pick = usize::MAX;
            for &u in &active {
                if !added[u] && (pick == usize::MAX || attach[u] > attach[pick]) {
                    pick = u;
                }
            }
            added[pick] = true;
            prev = last;
            last = pick;
            last_weight = attach[pick];
            for &u in &active {
                if !added[u] {
                    attach[u] += weight[pick][u];
                }
            }
        }
        if last_weight < best {
            best = last_weight;
            best_group = groups[last].clone();
        }
        for &u in &active {
            weight[prev][u] += weight[last][u];
            weight[u][prev] = weight[prev][u];
        }
        weight[prev][prev] = 0;
        let moved = std::mem::take(&mut groups[last]);
        groups[prev].extend(moved);
        active.retain(|&u| u != last);
    }

    let mut side = vec![false; n];
    for v in best_group {
        side[v] = true;
    }
    (best, side)
}

/// Three-valued answer for properties that may depend on unasserted flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalGeometry {
    pub base_point_free: bool,
    pub very_ample: Answer,
    /// Decompositions with A.B = 1; each node there is a base point of the
    /// canonical system.
    pub base_point_witnesses: Vec<Decomposition>,
    /// Decompositions with A.B = 2; the canonical map does not separate the
    /// two nodes.
    pub separation_failures: Vec<Decomposition>,
}

/// Base-point-freeness and very ampleness of the dualizing sheaf, decided
/// from connectivity (and the honest-hyperellipticity assertion).
pub fn canonical_geometry(g: &CurveGraph) -> Result<CanonicalGeometry> {
    g.require_connected()?;
    let genus = g.total_genus();
    if genus < 2 {
        return Err(Error::GenusTooSmall {
            required: 2,
            found: genus,
        });
    }
    let m = connectivity_number(g)?.m;
    let base_point_witnesses = decompositions_with_crossing(g, 1);
    let separation_failures = decompositions_with_crossing(g, 2);
    let very_ample = if !m.at_least(3) || g.hyperelliptic() == Some(true) {
        Answer::No
    } else if g.hyperelliptic() == Some(false) {
        Answer::Yes
    } else {
        Answer::Unknown
    };
    Ok(CanonicalGeometry {
        base_point_free: base_point_witnesses.is_empty(),
        very_ample,
        base_point_witnesses,
        separation_failures,
    })
}

/// All decompositions with A.B exactly `k`, for small `k`, in polynomial
/// time: choose edges of total multiplicity `k` to cut, then 2-colour the
/// remaining pieces so that every chosen edge crosses.
pub fn decompositions_with_crossing(g: &CurveGraph, k: i64) -> Vec<Decomposition> {
    let n = g.num_components();
    if n < 2 || k < 1 {
        return Vec::new();
    }
    let mut found: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut chosen = Vec::new();
    choose_edges(g, k, 0, &mut chosen, &mut |cut: &[usize]| {
        let pieces = pieces_without(g, cut);
        let count = pieces.iter().max().map_or(0, |&p| p + 1);
        // piece of component 0 stays on side A
        for colouring in 0u64..(1u64 << (count - 1)) {
            let side_b = |piece: usize| piece > 0 && colouring & (1 << (piece - 1)) != 0;
            let crosses_all = cut.iter().all(|&i| {
                let e = g.edges()[i];
                side_b(pieces[e.a]) != side_b(pieces[e.b])
            });
            if crosses_all && colouring != 0 {
                let side_a: Vec<bool> = pieces.iter().map(|&p| !side_b(p)).collect();
                found.insert(side_a);
            }
        }
    });
    let mut out: Vec<Decomposition> = found
        .into_iter()
        .map(|side_a| Decomposition::from_mask(&side_a).expect("proper bipartition"))
        .collect();
    out.sort_by(|x, y| x.a().cmp(y.a()));
    out
}

fn choose_edges(
    g: &CurveGraph,
    remaining: i64,
    from: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        visit(chosen);
        return;
    }
    for i in from..g.edges().len() {
        let mult = i64::from(g.edges()[i].mult);
        if mult <= remaining {
            chosen.push(i);
            choose_edges(g, remaining - mult, i + 1, chosen, visit);
            chosen.pop();
        }
    }
}

/// Connected-piece label of each component after deleting edges `cut`;
/// pieces are numbered by smallest member.
fn pieces_without(g: &CurveGraph, cut: &[usize]) -> Vec<usize> {
    let n = g.num_components();
    let removed: BTreeSet<(usize, usize)> = cut
        .iter()
        .map(|&i| (g.edges()[i].a, g.edges()[i].b))
        .collect();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(w, _) in g.neighbors(v) {
                if label[w] == usize::MAX && !removed.contains(&(v.min(w), v.max(w))) {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    label
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

    #[test]
    fn chain_has_m_one() {
        let g = curve(&[1, 1, 1, 1], &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]);
        let r = connectivity_number(&g).unwrap();
        assert_eq!(r.m, Connectivity::Finite(1));
        assert_eq!(r.all_min_decompositions.unwrap().len(), 3);
        let d = Decomposition::new(&g, [0]).unwrap();
        assert_eq!(g.intersection_product(&d).unwrap(), 1);
    }

    #[test]
    fn threecon_witness_is_the_balanced_cut() {
        let g = threecon();
        let r = connectivity_number(&g).unwrap();
        assert_eq!(r.m, Connectivity::Finite(3));
        let w = r.witness.unwrap();
        assert_eq!(w.a().members(), &[0, 4, 5]);
        assert_eq!(w.b().members(), &[1, 2, 3]);
        // six singleton cuts plus the balanced one
        assert_eq!(r.all_min_decompositions.unwrap().len(), 7);
        assert!(is_m_connected(&g, 3).unwrap());
        assert!(!is_m_connected(&g, 4).unwrap());
    }

    #[test]
    fn two_components_m_nodes() {
        for m in 1..7 {
            let g = curve(&[3, 2], &[(0, 1, m)]);
            assert_eq!(connectivity_number(&g).unwrap().m, Connectivity::Finite(i64::from(m)));
        }
    }

    #[test]
    fn k4_bruteforce() {
        let g = curve(
            &[1; 4],
            &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)],
        );
        let r = min_cut_bruteforce(&g).unwrap();
        assert_eq!(r.m, Connectivity::Finite(3));
        assert_eq!(r.all_min_decompositions.unwrap().len(), 4);
    }

    #[test]
    fn irreducible_is_infinitely_connected() {
        let g = curve(&[4], &[]);
        let r = connectivity_number(&g).unwrap();
        assert_eq!(r.m, Connectivity::Infinite);
        assert!(r.witness.is_none());
        assert!(is_m_connected(&g, 100).unwrap());
    }

    #[test]
    fn disconnected_rejected() {
        let g = curve(&[1, 1], &[]);
        assert!(matches!(connectivity_number(&g), Err(Error::Disconnected { .. })));
    }

    #[test]
    fn guard_applies_to_bruteforce_only() {
        let g = threecon();
        assert!(matches!(
            min_cut_bruteforce_with_guard(&g, 5),
            Err(Error::GuardExceeded { .. })
        ));
        let r = connectivity_number_with_guard(&g, 5).unwrap();
        assert_eq!(r.m, Connectivity::Finite(3));
        assert!(r.all_min_decompositions.is_none());
        let w = r.witness.unwrap();
        assert!(w.a().contains(0));
        assert_eq!(g.intersection_product(&w).unwrap(), 3);
    }

    #[test]
    fn chain_of_elliptic_curves_has_base_points() {
        let g = curve(&[1, 1, 1], &[(0, 1, 1), (1, 2, 1)]);
        let geo = canonical_geometry(&g).unwrap();
        assert!(!geo.base_point_free);
        assert_eq!(geo.base_point_witnesses.len(), 2);
        assert_eq!(geo.very_ample, Answer::No);
    }

    #[test]
    fn threecon_very_ample_when_not_hyperelliptic() {
        let g = threecon();
        assert_eq!(canonical_geometry(&g).unwrap().very_ample, Answer::Unknown);
        let g = CurveGraph::with_status(g.components().to_vec(), g.edges().iter().map(|e| (e.a, e.b, e.mult)), Some(false)).unwrap();
        let geo = canonical_geometry(&g).unwrap();
        assert!(geo.base_point_free);
        assert_eq!(geo.very_ample, Answer::Yes);
        assert!(geo.separation_failures.is_empty());
    }

    #[test]
    fn two_disconnected_curve_fails_separation() {
        // two genus-2 curves meeting in two points
        let g = CurveGraph::with_status(
            vec![ComponentRecord::new(0, 2), ComponentRecord::new(1, 2)],
            [(0, 1, 2)],
            Some(false),
        )
        .unwrap();
        let geo = canonical_geometry(&g).unwrap();
        assert!(geo.base_point_free);
        assert_eq!(geo.very_ample, Answer::No);
        assert_eq!(geo.separation_failures.len(), 1);
    }

    #[test]
    fn low_genus_rejected() {
        let g = curve(&[0, 0], &[(0, 1, 2)]);
        assert!(matches!(canonical_geometry(&g), Err(Error::GenusTooSmall { .. })));
    }

    #[test]
    fn small_crossings_match_enumeration() {
        let g = curve(
            &[1, 0, 2, 1, 1],
            &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 2), (3, 4, 1)],
        );
        for k in 1..=2 {
            let fast: BTreeSet<Decomposition> =
                decompositions_with_crossing(&g, k).into_iter().collect();
            let mut slow = BTreeSet::new();
            for_each_bipartition(&g, |mask, crossing| {
                if crossing == k {
                    slow.insert(mask_to_decomposition(5, mask));
                }
            });
            assert_eq!(fast, slow, "k = {k}");
        }
    }
}
