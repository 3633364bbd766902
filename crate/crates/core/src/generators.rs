//! Example curves and seeded random instances.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{ComponentRecord, CurveGraph, Flag};
use crate::error::{Error, Result};

/// Edges of the 3-regular six-component example.
pub const THREECON_EDGES: [(usize, usize); 9] = [
    (0, 1),
    (0, 4),
    (0, 5),
    (1, 2),
    (1, 3),
    (2, 3),
    (2, 5),
    (3, 4),
    (4, 5),
];

/// A generated curve together with any caveats about its parameters.
#[derive(Debug, Clone)]
pub struct Generated {
    pub curve: CurveGraph,
    pub warnings: Vec<String>,
}

fn smooth(id: usize, genus: u32) -> ComponentRecord {
    ComponentRecord::new(id, genus).with_flag(Flag::Smooth)
}

/// Smooth curves C_0, ..., C_{N-1} with C_i . C_{i+1} = 1.
pub fn gen_chain(genera: &[u32]) -> Result<Generated> {
    if genera.len() < 2 {
        return Err(Error::Generator(format!(
            "a chain needs at least 2 components, got {}",
            genera.len()
        )));
    }
    let warnings = genera
        .iter()
        .enumerate()
        .filter(|&(_, &g)| g == 0)
        .map(|(i, _)| format!("component {i} has genus 0; chain components should have positive genus"))
        .collect();
    let comps = genera.iter().enumerate().map(|(i, &g)| smooth(i, g)).collect();
    let edges = (1..genera.len()).map(|i| (i - 1, i, 1));
    Ok(Generated {
        curve: CurveGraph::new(comps, edges)?,
        warnings,
    })
}

/// Six components of genus >= 2 meeting along [`THREECON_EDGES`].
pub fn gen_threecon(genera: &[u32]) -> Result<CurveGraph> {
    if genera.len() != 6 {
        return Err(Error::Generator(format!("expected 6 genera, got {}", genera.len())));
    }
    if let Some((i, &g)) = genera.iter().enumerate().find(|&(_, &g)| g < 2) {
        return Err(Error::Generator(format!("component {i} has genus {g}, need at least 2")));
    }
    let comps = genera.iter().enumerate().map(|(i, &g)| smooth(i, g)).collect();
    CurveGraph::new(comps, THREECON_EDGES.map(|(a, b)| (a, b, 1)))
}

/// C_1 (genus g1, Brill–Noether general iff `general`) and C_2 (genus g2)
/// meeting transversally in m points.
pub fn gen_two_component(g1: u32, g2: u32, m: u32, general: bool) -> Result<CurveGraph> {
    if m < 1 {
        return Err(Error::Generator("the components must meet in at least one point".into()));
    }
    let mut first = smooth(0, g1);
    if general {
        first = first.with_flag(Flag::BrillNoetherGeneral);
    }
    CurveGraph::new(vec![first, smooth(1, g2)], [(0, 1, m)])
}

/// A connected random curve: a random spanning tree, then the remaining
/// `edge_budget - (n - 1)` nodes placed between uniformly random pairs.
/// Deterministic in `seed`.
pub fn gen_random(seed: u64, n: usize, edge_budget: usize, genus_range: (u32, u32)) -> Result<CurveGraph> {
    let (lo, hi) = genus_range;
    if n < 1 {
        return Err(Error::Generator("need at least one component".into()));
    }
    if lo > hi {
        return Err(Error::Generator(format!("empty genus range [{lo}, {hi}]")));
    }
    if edge_budget < n - 1 {
        return Err(Error::Generator(format!(
            "edge budget {edge_budget} cannot connect {n} components"
        )));
    }
    if n == 1 && edge_budget > 0 {
        return Err(Error::Generator("a single component has no room for nodes".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comps = (0..n)
        .map(|i| ComponentRecord::new(i, rng.gen_range(lo..=hi)))
        .collect();
    let mut edges = Vec::with_capacity(edge_budget);
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v, 1));
    }
    for _ in n - 1..edge_budget {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        edges.push((a, b, 1));
    }
    let meta = BTreeMap::from([
        ("generator".to_string(), "chacha8-rand0.8".to_string()),
        ("seed".to_string(), seed.to_string()),
        ("components".to_string(), n.to_string()),
        ("edge_budget".to_string(), edge_budget.to_string()),
        ("genus_range".to_string(), format!("{lo}..={hi}")),
    ]);
    Ok(CurveGraph::new(comps, edges)?.with_meta(meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{connectivity_number, Connectivity};

    #[test]
    fn chains() {
        let c = gen_chain(&[1, 1, 1, 1]).unwrap();
        assert_eq!(c.curve.total_genus(), 4);
        assert!(c.warnings.is_empty());
        assert_eq!(gen_chain(&[2, 3]).unwrap().curve.total_genus(), 5);
        assert_eq!(gen_chain(&[1, 0, 1]).unwrap().warnings.len(), 1);
        assert!(gen_chain(&[3]).is_err());
    }

    #[test]
    fn threecon() {
        let g = gen_threecon(&[2; 6]).unwrap();
        assert_eq!(g.total_genus(), 16);
        assert!((0..6).all(|v| g.degree(v) == 3));
        assert!(gen_threecon(&[2, 2, 2, 2, 2, 1]).is_err());
        assert!(gen_threecon(&[2; 5]).is_err());
    }

    #[test]
    fn two_component() {
        let g = gen_two_component(9, 1, 4, true).unwrap();
        assert_eq!(g.total_genus(), 13);
        assert!(g.component(0).has(Flag::BrillNoetherGeneral));
        let g = gen_two_component(1, 1, 1, false).unwrap();
        assert_eq!(g.total_genus(), 2);
        assert!(!g.component(0).has(Flag::BrillNoetherGeneral));
    }

    #[test]
    fn random_is_deterministic_and_connected() {
        let tree = gen_random(0, 5, 4, (1, 3)).unwrap();
        assert_eq!(tree.num_nodes(), 4);
        assert_eq!(connectivity_number(&tree).unwrap().m, Connectivity::Finite(1));
        let a = gen_random(7, 6, 12, (1, 2)).unwrap();
        let b = gen_random(7, 6, 12, (1, 2)).unwrap();
        assert_eq!(a, b);
        assert!(a.is_connected());
        assert_eq!(a.num_nodes(), 12);
        assert!(a.genera().iter().all(|&g| (1..=2).contains(&g)));
        assert!(gen_random(1, 4, 2, (1, 1)).is_err());
        assert!(gen_random(1, 1, 1, (1, 1)).is_err());
    }
}
