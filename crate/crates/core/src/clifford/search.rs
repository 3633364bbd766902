//! Search for the partition whose split cluster has the smallest Clifford
//! index, crossing - 2k + 2.
//!
//! A partition is admissible when every part is connected with positive
//! arithmetic genus and the induced multidegree stays nonnegative (a
//! rational component needs at least two nodes inside its own part). Then
//! h0 = sum of the parts' genera >= k >= 2 and h1 = k >= 2, so the sheaf
//! contributes.

use serde::{Deserialize, Serialize};

use crate::curve::{CurveGraph, SetPartition};
use crate::error::{Error, Result};

/// Largest curve for which all set partitions are enumerated.
pub const DEFAULT_PARTITION_GUARD: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub guard: usize,
    /// Beyond the guard, run the greedy merge instead of failing.
    pub allow_heuristic: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            guard: DEFAULT_PARTITION_GUARD,
            allow_heuristic: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitBound {
    pub value: i64,
    pub partition: SetPartition,
    /// True when the value is the exact minimum over admissible partitions;
    /// false for the greedy result.
    pub exhaustive: bool,
}

pub fn best_split_bound(g: &CurveGraph) -> Result<Option<SplitBound>> {
    best_split_bound_with(g, SearchOptions::default())
}

/// Minimizes crossing - 2k + 2 over admissible partitions. Ties go to the
/// smallest k, then the lexicographically smallest restricted growth string.
pub fn best_split_bound_with(g: &CurveGraph, options: SearchOptions) -> Result<Option<SplitBound>> {
    g.require_connected()?;
    let n = g.num_components();
    if n <= options.guard {
        let best = ExactSearch::new(g).run();
        return best
            .map(|(value, labels)| {
                Ok(SplitBound {
                    value,
                    partition: SetPartition::from_labels(g, &labels)?,
                    exhaustive: true,
                })
            })
            .transpose();
    }
    if !options.allow_heuristic {
        return Err(Error::GuardExceeded {
            what: "set-partition enumeration",
            size: n,
            guard: options.guard,
        });
    }
    greedy_merge(g)
        .map(|labels| {
            let partition = SetPartition::from_labels(g, &labels)?;
            Ok(SplitBound {
                value: partition.crossing_edges() - 2 * partition.num_parts() as i64 + 2,
                partition,
                exhaustive: false,
            })
        })
        .transpose()
}

struct ExactSearch<'a> {
    g: &'a CurveGraph,
    labels: Vec<usize>,
    best: Option<(i64, usize, Vec<usize>)>,
    // scratch for union-find at the leaves
    parent: Vec<usize>,
}

impl<'a> ExactSearch<'a> {
    fn new(g: &'a CurveGraph) -> Self {
        let n = g.num_components();
        ExactSearch {
            g,
            labels: vec![0; n],
            best: None,
            parent: vec![0; n],
        }
    }

    fn run(mut self) -> Option<(i64, Vec<usize>)> {
        if self.g.num_components() >= 2 {
            self.assign(1, 1);
        }
        self.best.map(|(value, _, labels)| (value, labels))
    }

    // restricted growth strings in lexicographic order
    fn assign(&mut self, v: usize, parts: usize) {
        if v == self.labels.len() {
            self.evaluate(parts);
            return;
        }
        for label in 0..=parts {
            self.labels[v] = label;
            self.assign(v + 1, parts.max(label + 1));
        }
    }

    fn evaluate(&mut self, k: usize) {
        if k < 2 {
            return;
        }
        let Some(value) = admissible_value(self.g, &self.labels, k, &mut self.parent) else {
            return;
        };
        let better = match &self.best {
            None => true,
            Some((v, bk, _)) => (value, k) < (*v, *bk),
        };
        if better {
            self.best = Some((value, k, self.labels.clone()));
        }
    }
}

/// crossing - 2k + 2 if the labelling (k parts) is admissible.
fn admissible_value(g: &CurveGraph, labels: &[usize], k: usize, parent: &mut [usize]) -> Option<i64> {
    let n = labels.len();
    let mut genus = vec![0i64; k];
    let mut size = vec![0i64; k];
    let mut internal_degree = vec![0i64; n];
    for (v, &l) in labels.iter().enumerate() {
        genus[l] += i64::from(g.component(v).genus);
        size[l] += 1;
        parent[v] = v;
    }
    let mut crossing = 0;
    for e in g.edges() {
        let mult = i64::from(e.mult);
        if labels[e.a] == labels[e.b] {
            genus[labels[e.a]] += mult;
            internal_degree[e.a] += mult;
            internal_degree[e.b] += mult;
            union(parent, e.a, e.b);
        } else {
            crossing += mult;
        }
    }
    // p_a(part) = genera + internal nodes - size + 1
    if (0..k).any(|j| genus[j] - size[j] + 1 < 1) {
        return None;
    }
    if (0..n).any(|v| 2 * i64::from(g.component(v).genus) - 2 + internal_degree[v] < 0) {
        return None;
    }
    let roots = (0..n).filter(|&v| find(parent, v) == v).count();
    if roots != k {
        return None;
    }
    Some(crossing - 2 * k as i64 + 2)
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Greedy merge from the singleton partition: first absorb inadmissible
/// parts into their most strongly attached neighbour, then keep merging the
/// pair joined by the most nodes while that lowers crossing - 2k + 2
/// (i.e. while they share at least three nodes).
fn greedy_merge(g: &CurveGraph) -> Option<Vec<usize>> {
    let n = g.num_components();
    let mut labels: Vec<usize> = (0..n).collect();
    loop {
        let parts = distinct(&labels);
        if parts.len() < 2 {
            return None;
        }
        let weights = part_weights(g, &labels);
        let merge = match parts.iter().find(|&&p| !part_ok(g, &labels, p)) {
            Some(&bad) => weights
                .iter()
                .filter(|&(&(x, y), _)| x == bad || y == bad)
                .max_by_key(|&(&pair, &w)| (w, std::cmp::Reverse(pair)))
                .map(|(&pair, _)| pair),
            None => weights
                .iter()
                .filter(|&(_, &w)| w >= 3)
                .max_by_key(|&(&pair, &w)| (w, std::cmp::Reverse(pair)))
                .map(|(&pair, _)| pair),
        };
        match merge {
            Some((x, y)) => {
                for l in labels.iter_mut() {
                    if *l == y {
                        *l = x;
                    }
                }
            }
            None => break,
        }
    }
    let parts = distinct(&labels);
    let mut scratch = vec![0; n];
    let normalized = normalize(&labels);
    admissible_value(g, &normalized, parts.len(), &mut scratch).map(|_| normalized)
}

fn distinct(labels: &[usize]) -> Vec<usize> {
    let mut parts: Vec<usize> = labels.to_vec();
    parts.sort_unstable();
    parts.dedup();
    parts
}

fn normalize(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::BTreeMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}

/// Node counts between pairs of parts (x < y).
fn part_weights(g: &CurveGraph, labels: &[usize]) -> std::collections::BTreeMap<(usize, usize), i64> {
    let mut weights = std::collections::BTreeMap::new();
    for e in g.edges() {
        let (x, y) = (labels[e.a], labels[e.b]);
        if x != y {
            *weights.entry((x.min(y), x.max(y))).or_insert(0) += i64::from(e.mult);
        }
    }
    weights
}

fn part_ok(g: &CurveGraph, labels: &[usize], part: usize) -> bool {
    let mask: Vec<bool> = labels.iter().map(|&l| l == part).collect();
    if g.genus_of_mask(&mask) < 1 {
        return false;
    }
    (0..labels.len()).filter(|&v| mask[v]).all(|v| {
        let inside: i64 = g
            .neighbors(v)
            .iter()
            .filter(|&&(w, _)| mask[w])
            .map(|&(_, m)| i64::from(m))
            .sum();
        2 * i64::from(g.component(v).genus) - 2 + inside >= 0
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

    #[test]
    fn threecon_best_is_singletons() {
        let e = [(0, 1), (0, 4), (0, 5), (1, 2), (1, 3), (2, 3), (2, 5), (3, 4), (4, 5)];
        let g = curve(&[2; 6], &e.map(|(a, b)| (a, b, 1)));
        let b = best_split_bound(&g).unwrap().unwrap();
        assert_eq!(b.value, -1);
        assert_eq!(b.partition.num_parts(), 6);
        assert!(b.exhaustive);
    }

    #[test]
    fn chain_best_is_singletons() {
        for n in 2..=8 {
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
            let g = curve(&vec![1; n], &edges);
            let b = best_split_bound(&g).unwrap().unwrap();
            assert_eq!(b.value, 1 - n as i64);
            assert_eq!(b.partition.num_parts(), n);
        }
    }

    #[test]
    fn two_components_unique_bipartition() {
        for m in 1..6 {
            let g = curve(&[1, 1], &[(0, 1, m)]);
            let b = best_split_bound(&g).unwrap().unwrap();
            assert_eq!(b.value, i64::from(m) - 2);
        }
    }

    #[test]
    fn none_when_nothing_admissible() {
        let g = curve(&[0, 0], &[(0, 1, 3)]);
        assert_eq!(best_split_bound(&g).unwrap(), None);
        let g = curve(&[5], &[]);
        assert_eq!(best_split_bound(&g).unwrap(), None);
    }

    #[test]
    fn guard_and_heuristic() {
        let edges: Vec<_> = (1..15).map(|i| (i - 1, i, 1)).collect();
        let g = curve(&[1; 15], &edges);
        assert!(matches!(
            best_split_bound(&g),
            Err(Error::GuardExceeded { size: 15, guard: 12, .. })
        ));
        let b = best_split_bound_with(
            &g,
            SearchOptions {
                guard: 12,
                allow_heuristic: true,
            },
        )
        .unwrap()
        .unwrap();
        assert!(!b.exhaustive);
        assert_eq!(b.value, -14);
    }

    #[test]
    fn heuristic_absorbs_rational_components() {
        // the rational component must join the neighbour it meets twice
        let g = curve(&[1, 0, 1, 1], &[(0, 1, 2), (1, 2, 1), (2, 3, 1)]);
        let labels = greedy_merge(&g).unwrap();
        assert_eq!(labels, vec![0, 0, 1, 2]);
        let mut scratch = vec![0; 4];
        let k = distinct(&labels).len();
        assert_eq!(admissible_value(&g, &labels, k, &mut scratch), Some(-2));
        // rational bridges leave nothing admissible
        let g = curve(&[1, 0, 1, 0, 1], &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1)]);
        assert_eq!(greedy_merge(&g), None);
        assert_eq!(best_split_bound(&g).unwrap(), None);
    }
}
