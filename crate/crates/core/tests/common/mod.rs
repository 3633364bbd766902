// Shared fixtures and brute-force oracles. Everything here is computed from
// the raw component/edge lists, never through the library's own algorithms.
#![allow(dead_code)]

use nodal_core::generators::{gen_chain, gen_random, gen_threecon, gen_two_component};
use nodal_core::CurveGraph;

/// Raw description: genera and (a, b, mult) node groups.
#[derive(Debug, Clone)]
pub struct Raw {
    pub genera: Vec<i64>,
    pub edges: Vec<(usize, usize, i64)>,
}

impl Raw {
    pub fn of(g: &CurveGraph) -> Raw {
        Raw {
            genera: g.genera().into_iter().map(i64::from).collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| (e.a, e.b, i64::from(e.mult)))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.genera.len()
    }

    /// p_a of the subcurve on `side`: genera + internal nodes - size + 1.
    pub fn genus(&self, side: &[bool]) -> i64 {
        let genera: i64 = (0..self.n()).filter(|&i| side[i]).map(|i| self.genera[i]).sum();
        let inner: i64 = self
            .edges
            .iter()
            .filter(|&&(a, b, _)| side[a] && side[b])
            .map(|&(_, _, m)| m)
            .sum();
        let size = side.iter().filter(|&&s| s).count() as i64;
        genera + inner - size + 1
    }

    pub fn crossing(&self, side: &[bool]) -> i64 {
        self.edges
            .iter()
            .filter(|&&(a, b, _)| side[a] != side[b])
            .map(|&(_, _, m)| m)
            .sum()
    }

    pub fn connected(&self, side: &[bool]) -> bool {
        let Some(start) = side.iter().position(|&s| s) else {
            return false;
        };
        let mut seen = vec![false; self.n()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(a, b, _) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && side[y] && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        (0..self.n()).all(|i| !side[i] || seen[i])
    }

    /// Minimum crossing over all proper bipartitions, and every side A
    /// (containing component 0) attaining it.
    pub fn min_cut(&self) -> Option<(i64, Vec<Vec<bool>>)> {
        let n = self.n();
        if n < 2 {
            return None;
        }
        let mut best: Option<(i64, Vec<Vec<bool>>)> = None;
        for mask in 1u64..1 << (n - 1) {
            // bit i set: component i + 1 is on side B; component 0 stays on A
            let side: Vec<bool> = (0..n).map(|i| i == 0 || mask >> (i - 1) & 1 == 0).collect();
            let c = self.crossing(&side);
            match &mut best {
                Some((v, all)) if c == *v => all.push(side),
                Some((v, _)) if c > *v => {}
                _ => best = Some((c, vec![side])),
            }
        }
        best
    }

    /// Best split value by enumerating every set partition with an explicit
    /// "next restricted growth string" iteration.
    pub fn best_split(&self) -> Option<i64> {
        let n = self.n();
        if n < 2 {
            return None;
        }
        let mut rgs = vec![0usize; n];
        let mut best = None;
        loop {
            if let Some(v) = self.split_value(&rgs) {
                best = Some(best.map_or(v, |b: i64| b.min(v)));
            }
            // increment: rightmost position that may grow
            let mut i = n - 1;
            loop {
                if i == 0 {
                    return best;
                }
                let prefix_max = *rgs[..i].iter().max().unwrap();
                if rgs[i] <= prefix_max {
                    rgs[i] += 1;
                    for r in rgs.iter_mut().skip(i + 1) {
                        *r = 0;
                    }
                    break;
                }
                i -= 1;
            }
        }
    }

    /// crossing - 2k + 2 when every part is connected with positive genus
    /// and no component gets negative degree.
    pub fn split_value(&self, labels: &[usize]) -> Option<i64> {
        let k = labels.iter().max().unwrap() + 1;
        if k < 2 {
            return None;
        }
        for part in 0..k {
            let side: Vec<bool> = labels.iter().map(|&l| l == part).collect();
            if !self.connected(&side) || self.genus(&side) < 1 {
                return None;
            }
        }
        for v in 0..self.n() {
            let inside: i64 = self
                .edges
                .iter()
                .filter(|&&(a, b, _)| (a == v || b == v) && labels[a] == labels[b])
                .map(|&(_, _, m)| m)
                .sum();
            if 2 * self.genera[v] - 2 + inside < 0 {
                return None;
            }
        }
        let crossing: i64 = self
            .edges
            .iter()
            .filter(|&&(a, b, _)| labels[a] != labels[b])
            .map(|&(_, _, m)| m)
            .sum();
        Some(crossing - 2 * k as i64 + 2)
    }
}

pub fn threecon() -> CurveGraph {
    gen_threecon(&[2; 6]).unwrap()
}

pub fn chain(n: usize) -> CurveGraph {
    gen_chain(&vec![1; n]).unwrap().curve
}

/// Seeded random curve with 2..=max_n components.
pub fn random_curve(seed: u64, max_n: usize, genus_range: (u32, u32)) -> CurveGraph {
    let n = 2 + (seed as usize * 7919) % (max_n - 1);
    let extra = (seed as usize * 104_729) % (2 * n + 1);
    gen_random(seed, n, n - 1 + extra, genus_range).unwrap()
}

/// The fixed corpus: worked examples plus seeded random curves.
pub fn corpus() -> Vec<CurveGraph> {
    let mut out = vec![threecon(), gen_threecon(&[2, 3, 2, 4, 2, 5]).unwrap()];
    out.extend((2..=8).map(chain));
    out.push(gen_chain(&[2, 3]).unwrap().curve);
    for (g1, g2, m) in [(9, 1, 4), (7, 1, 4), (11, 2, 5), (5, 3, 4), (4, 4, 2)] {
        out.push(gen_two_component(g1, g2, m, true).unwrap());
    }
    out.extend((0..60).map(|s| random_curve(s, 8, (1, 3))));
    out.extend((100..130).map(|s| random_curve(s, 7, (0, 2))));
    out
}

pub fn all_sides(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (1u64..(1 << n) - 1).map(move |mask| (0..n).map(|i| mask >> i & 1 == 1).collect())
}
