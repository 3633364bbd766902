//! Predicted shape of the Koszul table K_{p,q}(C, w_C).
//!
//! Entries are three-valued and carry the fact that produced them. Every
//! write goes through [`BettiShape::assert_range`], which closes the grid
//! under duality (p,1) <-> (g-2-p,2) and monotonicity, and fails hard when a
//! Zero meets a Nonzero.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clifford::{clifford_bounds, two_component_family, CliffordBounds};
use crate::connectivity::{connectivity_number, Answer, Connectivity};
use crate::curve::CurveGraph;
use crate::error::{Error, Result};
use crate::generators::gen_two_component;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Zero,
    Nonzero,
    Unknown,
}

impl Value {
    fn name(self) -> &'static str {
        match self {
            Value::Zero => "zero",
            Value::Nonzero => "nonzero",
            Value::Unknown => "unknown",
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Value::Zero => '0',
            Value::Nonzero => '*',
            Value::Unknown => '?',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Normal generation, the q = 0 and q = 3 rows.
    Structural,
    /// Nonvanishing below p_a - Cliff - 2 (4-connected, not honestly
    /// hyperelliptic, no rational components).
    CliffordNonvanishing,
    /// Nonvanishing up to p_a - m (no rational components).
    ConnectivityNonvanishing,
    /// Green's conjecture, assumed.
    GreenConjectural,
    /// Green's conjecture where it is a theorem (two general components).
    GreenProven,
    /// Mirrored from the dual entry.
    Duality,
}

impl Provenance {
    pub fn is_conjectural(self) -> bool {
        self == Provenance::GreenConjectural
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub value: Value,
    pub provenance: Option<Provenance>,
}

const UNKNOWN: Entry = Entry {
    value: Value::Unknown,
    provenance: None,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiShape {
    genus: usize,
    /// rows[q][p] for q = 0..=3, p = 0..=g-2
    rows: Vec<Vec<Entry>>,
    /// Whether the structural facts (normal generation, duality base) were
    /// applicable to this curve.
    established: bool,
    warnings: Vec<String>,
}

impl BettiShape {
    /// All-Unknown grid of genus `g`.
    pub fn unknown(g: usize) -> Result<Self> {
        if g < 3 {
            return Err(Error::GenusTooSmall {
                required: 3,
                found: g as i64,
            });
        }
        Ok(BettiShape {
            genus: g,
            rows: vec![vec![UNKNOWN; g - 1]; 4],
            established: false,
            warnings: Vec::new(),
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Largest column index, g - 2.
    pub fn last(&self) -> usize {
        self.genus - 2
    }

    pub fn is_established(&self) -> bool {
        self.established
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn entry(&self, p: usize, q: usize) -> Entry {
        if q > 3 || p > self.last() {
            return Entry {
                value: Value::Zero,
                provenance: Some(Provenance::Structural),
            };
        }
        self.rows[q][p]
    }

    pub fn value(&self, p: usize, q: usize) -> Value {
        self.entry(p, q).value
    }

    pub fn row(&self, q: usize) -> &[Entry] {
        &self.rows[q]
    }

    /// Marks K_{p,q} for p in `lo..=hi` (clamped to the grid) and closes.
    pub fn assert_range(
        &mut self,
        q: usize,
        lo: usize,
        hi: usize,
        value: Value,
        provenance: Provenance,
    ) -> Result<()> {
        assert!(q <= 3 && value != Value::Unknown);
        for p in lo..=hi.min(self.last()) {
            self.set(p, q, value, provenance)?;
        }
        self.close()
    }

    fn set(&mut self, p: usize, q: usize, value: Value, provenance: Provenance) -> Result<bool> {
        let cur = self.rows[q][p];
        match cur.value {
            Value::Unknown => {}
            v if v == value => {
                // a proof beats a conjecture
                let upgrade = cur.provenance.is_some_and(Provenance::is_conjectural)
                    && !provenance.is_conjectural();
                if !upgrade {
                    return Ok(false);
                }
            }
            v => {
                return Err(Error::Contradiction {
                    p,
                    q,
                    existing: cur.provenance.unwrap_or(Provenance::Structural),
                    existing_value: v.name(),
                    incoming: provenance,
                    incoming_value: value.name(),
                })
            }
        }
        self.rows[q][p] = Entry {
            value,
            provenance: Some(provenance),
        };
        Ok(true)
    }

    /// Duality and monotonicity to a fixpoint. Monotonicity runs on p >= 1
    /// in row 1 and p <= g-3 in row 2, since K_{0,1} and its dual vanish
    /// regardless of the rest of the row.
    fn close(&mut self) -> Result<()> {
        let last = self.last();
        loop {
            let mut changed = false;
            for p in 0..=last {
                for (q, dq) in [(1, 2), (2, 1)] {
                    let e = self.rows[q][p];
                    if let (Value::Zero | Value::Nonzero, Some(src)) = (e.value, e.provenance) {
                        let prov = if src.is_conjectural() { src } else { Provenance::Duality };
                        changed |= self.set(last - p, dq, e.value, prov)?;
                    }
                }
            }
            for p in 1..=last {
                let e = self.rows[1][p];
                let Some(src) = e.provenance else { continue };
                match e.value {
                    Value::Zero => {
                        for p2 in p + 1..=last {
                            changed |= self.set(p2, 1, Value::Zero, src)?;
                        }
                    }
                    Value::Nonzero => {
                        for p2 in 1..p {
                            changed |= self.set(p2, 1, Value::Nonzero, src)?;
                        }
                    }
                    Value::Unknown => {}
                }
            }
            for p in 0..last {
                let e = self.rows[2][p];
                let Some(src) = e.provenance else { continue };
                match e.value {
                    Value::Zero => {
                        for p2 in 0..p {
                            changed |= self.set(p2, 2, Value::Zero, src)?;
                        }
                    }
                    Value::Nonzero => {
                        for p2 in p + 1..last {
                            changed |= self.set(p2, 2, Value::Nonzero, src)?;
                        }
                    }
                    Value::Unknown => {}
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Fixed-width table, rows q = 0..3, columns p.
    pub fn render(&self) -> String {
        let width = self.last().to_string().len().max(1);
        let mut out = format!("{:>3} |", "q\\p");
        for p in 0..=self.last() {
            out += &format!(" {p:>width$}");
        }
        out.push('\n');
        out += &format!("{}\n", "-".repeat(5 + (self.last() + 1) * (width + 1)));
        for q in 0..=3 {
            out += &format!("{q:>3} |");
            for e in &self.rows[q] {
                out += &format!(" {:>width$}", e.value.symbol());
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BettiShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulHypotheses {
    pub three_connected: bool,
    pub four_connected: bool,
    pub not_hyperelliptic: Answer,
    pub no_rational_components: bool,
    pub m: Connectivity,
    pub cliff_lower: Option<i64>,
    pub cliff_upper: Option<i64>,
    pub cliff_exact: Option<i64>,
}

impl KoszulHypotheses {
    /// A 4-connected curve with Clifford index known to be positive is not
    /// honestly hyperelliptic (that would force index 0).
    pub fn derive(g: &CurveGraph, bounds: &CliffordBounds) -> Result<Self> {
        let m = connectivity_number(g)?.m;
        let four_connected = m.at_least(4);
        let not_hyperelliptic = match g.hyperelliptic() {
            Some(true) => Answer::No,
            Some(false) => Answer::Yes,
            None if four_connected && bounds.exact.is_some_and(|c| c > 0) => Answer::Yes,
            None => Answer::Unknown,
        };
        Ok(KoszulHypotheses {
            three_connected: m.at_least(3),
            four_connected,
            not_hyperelliptic,
            no_rational_components: !g.has_rational_component(),
            m,
            cliff_lower: Some(bounds.lower),
            cliff_upper: bounds.upper,
            cliff_exact: bounds.exact,
        })
    }
}

/// The structural grid: K_{0,0} and K_{g-2,3} nonzero, the rest of rows 0
/// and 3 zero, K_{0,1} = K_{0,2} = 0. Needs a 3-connected curve that is not
/// honestly hyperelliptic; otherwise the grid stays Unknown with a warning.
pub fn base_shape(g: usize, h: &KoszulHypotheses) -> Result<BettiShape> {
    let mut s = BettiShape::unknown(g)?;
    if !(h.three_connected && h.not_hyperelliptic == Answer::Yes) {
        s.warnings.push(format!(
            "structural facts need a 3-connected curve that is not honestly hyperelliptic \
             (3-connected: {}, not honestly hyperelliptic: {})",
            h.three_connected, h.not_hyperelliptic
        ));
        return Ok(s);
    }
    s.established = true;
    let last = s.last();
    s.assert_range(0, 0, 0, Value::Nonzero, Provenance::Structural)?;
    s.assert_range(0, 1, last, Value::Zero, Provenance::Structural)?;
    s.assert_range(3, last, last, Value::Nonzero, Provenance::Structural)?;
    if last > 0 {
        s.assert_range(3, 0, last - 1, Value::Zero, Provenance::Structural)?;
    }
    s.assert_range(1, 0, 0, Value::Zero, Provenance::Structural)?;
    s.assert_range(2, 0, 0, Value::Zero, Provenance::Structural)?;
    s.warnings
        .push("row q = 0 follows the normal-generation convention".to_string());
    Ok(s)
}

/// Nonvanishing of K_{p,1}: for 1 <= p <= p_a - m when no component is
/// rational, and for 1 <= p <= p_a - cliffUpper - 2 on 4-connected curves
/// of genus >= 4 that are not honestly hyperelliptic.
pub fn apply_nonvanishing(mut s: BettiShape, h: &KoszulHypotheses) -> Result<BettiShape> {
    let g = s.genus as i64;
    let mut applied = false;
    if h.no_rational_components {
        if let Some(m) = h.m.value() {
            if g - m >= 1 {
                s.assert_range(1, 1, (g - m) as usize, Value::Nonzero, Provenance::ConnectivityNonvanishing)?;
            }
            applied = true;
        }
    }
    // genus 3 is left out: the cluster computing the index may degenerate there
    if g >= 4 && h.four_connected && h.not_hyperelliptic == Answer::Yes && h.no_rational_components {
        if let Some(c) = h.cliff_upper {
            if g - c - 2 >= 1 {
                s.assert_range(1, 1, (g - c - 2) as usize, Value::Nonzero, Provenance::CliffordNonvanishing)?;
            }
            applied = true;
        }
    }
    if !applied {
        s.warnings
            .push("no nonvanishing statement applies to this curve".to_string());
    }
    Ok(s)
}

/// Green's vanishing K_{p,1} = 0 for p >= p_a - cliff - 1.
pub fn apply_green_vanishing(mut s: BettiShape, cliff: i64, proven: bool) -> Result<BettiShape> {
    let g = s.genus as i64;
    let from = (g - cliff - 1).max(1);
    let provenance = if proven {
        Provenance::GreenProven
    } else {
        Provenance::GreenConjectural
    };
    if from <= s.last() as i64 {
        s.assert_range(1, from as usize, s.last(), Value::Zero, provenance)?;
    }
    Ok(s)
}

/// Full pipeline for a curve: structural grid, nonvanishing, then Green's
/// vanishing (proven for two general components, conjectural for other
/// 4-connected curves that are not honestly hyperelliptic with known
/// Clifford index).
pub fn predict_shape(g: &CurveGraph, bounds: &CliffordBounds) -> Result<BettiShape> {
    let genus = g.total_genus();
    if genus < 3 {
        return Err(Error::GenusTooSmall {
            required: 3,
            found: genus,
        });
    }
    let h = KoszulHypotheses::derive(g, bounds)?;
    let s = base_shape(genus as usize, &h)?;
    let mut s = apply_nonvanishing(s, &h)?;
    if let Some(cliff) = h.cliff_exact {
        if two_component_family(g).is_some() {
            s = apply_green_vanishing(s, cliff, true)?;
        } else if h.four_connected && h.not_hyperelliptic == Answer::Yes && s.established {
            s = apply_green_vanishing(s, cliff, false)?;
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub g1: i64,
    pub g2: i64,
    pub m: i64,
    pub arithmetic_genus: i64,
    pub cliff: i64,
    /// Vanishing threshold on the general component side.
    pub threshold_c2: i64,
    /// Vanishing threshold on the other side.
    pub threshold_c1: i64,
    /// First p with K_{p,1} = 0.
    pub vanishing_from: i64,
    pub verdict: bool,
}

impl fmt::Display for ProofTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "g1 = {}, g2 = {}, m = {}", self.g1, self.g2, self.m)?;
        writeln!(f, "p_a            {:>4}", self.arithmetic_genus)?;
        writeln!(f, "Cliff          {:>4}", self.cliff)?;
        writeln!(f, "threshold C2   {:>4}", self.threshold_c2)?;
        writeln!(f, "threshold C1   {:>4}", self.threshold_c1)?;
        writeln!(f, "K_p,1 = 0 for  p >= {}", self.vanishing_from)?;
        write!(f, "verdict        {}", if self.verdict { "pass" } else { "fail" })
    }
}

/// Green's conjecture for C1 (general, genus g1) and C2 (genus g2) glued at
/// m points, 4 <= m <= (g1 + 1)/2: builds the curve and its q = 1 row and
/// checks both vanishing thresholds stay at or below g1 + g2.
pub fn green2_certificate(g1: i64, g2: i64, m: i64) -> Result<(CurveGraph, BettiShape, ProofTrace)> {
    if m < 4 {
        return Err(Error::Hypothesis(format!("m = {m} is below 4")));
    }
    if 2 * m > g1 + 1 {
        return Err(Error::Hypothesis(format!(
            "m = {m} exceeds (g1 + 1)/2: 2m = {} > g1 + 1 = {}",
            2 * m,
            g1 + 1
        )));
    }
    if g2 < 1 {
        return Err(Error::Hypothesis(format!("g2 = {g2} is below 1")));
    }
    let to_u32 = |x: i64| u32::try_from(x).map_err(|_| Error::Hypothesis(format!("{x} is out of range")));
    let curve = gen_two_component(to_u32(g1)?, to_u32(g2)?, to_u32(m)?, true)?;
    let bounds = clifford_bounds(&curve)?;
    let cliff = bounds
        .exact
        .ok_or_else(|| Error::InconsistentBounds("two-component family without exact index".into()))?;
    let shape = predict_shape(&curve, &bounds)?;

    let arithmetic_genus = curve.total_genus();
    let threshold_c2 = g1 + g2;
    let threshold_c1 = g2 + g1 + m - (g1 + 1) / 2;
    let vanishing_from = arithmetic_genus - cliff - 1;
    let row_ok = (0..=shape.last()).all(|p| {
        let expected = if p == 0 || p as i64 >= vanishing_from {
            Value::Zero
        } else {
            Value::Nonzero
        };
        shape.value(p, 1) == expected
    });
    let verdict = threshold_c2.max(threshold_c1) <= g1 + g2 && vanishing_from == g1 + g2 && row_ok;
    let trace = ProofTrace {
        g1,
        g2,
        m,
        arithmetic_genus,
        cliff,
        threshold_c2,
        threshold_c1,
        vanishing_from,
        verdict,
    };
    Ok((curve, shape, trace))
}
