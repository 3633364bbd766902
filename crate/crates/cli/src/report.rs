use std::fmt::Write as _;

use nodal_core::clifford::{clifford_bounds_with, CliffordBounds, SearchOptions, Witness, DEFAULT_PARTITION_GUARD};
use nodal_core::connectivity::{
    canonical_geometry, connectivity_number_with_guard, CanonicalGeometry, ConnectivityReport, DEFAULT_CUT_GUARD,
};
use nodal_core::koszul::{predict_shape, BettiShape};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{load_curve, Failure};

#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions {
    pub betti: bool,
    pub partition_guard: usize,
    pub cut_guard: usize,
    pub heuristic: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            betti: false,
            partition_guard: DEFAULT_PARTITION_GUARD,
            cut_guard: DEFAULT_CUT_GUARD,
            heuristic: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSummary {
    pub components: usize,
    pub nodes: i64,
    pub arithmetic_genus: i64,
    pub genera: Vec<u32>,
    pub honestly_hyperelliptic: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool: String,
    pub version: String,
    pub input_sha256: String,
    pub summary: CurveSummary,
    pub connectivity: ConnectivityReport,
    pub geometry: Option<CanonicalGeometry>,
    pub bounds: Option<CliffordBounds>,
    pub betti: Option<BettiShape>,
    pub warnings: Vec<String>,
}

pub fn analyze(text: &str, options: AnalyzeOptions) -> Result<AnalysisReport, Failure> {
    let g = load_curve(text)?;
    let mut warnings = Vec::new();
    let connectivity = connectivity_number_with_guard(&g, options.cut_guard)?;
    if connectivity.all_min_decompositions.is_none() && g.num_components() > 1 {
        warnings.push(format!(
            "{} components exceed the cut enumeration limit {}; one minimum decomposition is shown",
            g.num_components(),
            options.cut_guard
        ));
    }
    let genus = g.total_genus();
    let (geometry, bounds) = if genus >= 2 {
        let search = SearchOptions {
            guard: options.partition_guard,
            allow_heuristic: options.heuristic,
        };
        (Some(canonical_geometry(&g)?), Some(clifford_bounds_with(&g, search)?))
    } else {
        warnings.push(format!("p_a = {genus}: canonical geometry and Clifford bounds need p_a >= 2"));
        (None, None)
    };
    let betti = match (&bounds, options.betti) {
        (Some(b), true) if genus >= 3 => {
            let shape = predict_shape(&g, b)?;
            warnings.extend(shape.warnings().iter().cloned());
            Some(shape)
        }
        (_, true) => {
            warnings.push(format!("p_a = {genus}: Koszul table prediction needs p_a >= 3"));
            None
        }
        _ => None,
    };
    Ok(AnalysisReport {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        input_sha256: hex::encode(Sha256::digest(text.as_bytes())),
        summary: CurveSummary {
            components: g.num_components(),
            nodes: g.num_nodes(),
            arithmetic_genus: genus,
            genera: g.genera(),
            honestly_hyperelliptic: g.hyperelliptic(),
        },
        connectivity,
        geometry,
        bounds,
        betti,
        warnings,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl AnalysisReport {
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let sm = &self.summary;
        let genera: Vec<String> = sm.genera.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{} {}  sha256 {}", self.tool, self.version, self.input_sha256);
        let _ = writeln!(s, "components        {}", sm.components);
        let _ = writeln!(s, "nodes             {}", sm.nodes);
        let _ = writeln!(s, "genera            {}", genera.join(","));
        let _ = writeln!(s, "arithmetic genus  {}", sm.arithmetic_genus);
        let _ = writeln!(s, "connectivity m    {}", self.connectivity.m);
        if let Some(w) = &self.connectivity.witness {
            let _ = writeln!(s, "minimum cut       {w}");
        }
        if let Some(all) = &self.connectivity.all_min_decompositions {
            let _ = writeln!(s, "minimum cuts      {}", all.len());
        }
        if let Some(geo) = &self.geometry {
            let _ = writeln!(s, "base point free   {}", yes_no(geo.base_point_free));
            let _ = writeln!(s, "very ample        {}", geo.very_ample);
        }
        if let Some(b) = &self.bounds {
            let upper = b.upper.map_or("none".to_string(), |u| u.to_string());
            let _ = writeln!(s, "Clifford index    [{}, {upper}]", b.lower);
            match b.exact {
                Some(e) => {
                    let _ = writeln!(s, "exact             {e}");
                }
                None => {
                    let _ = writeln!(s, "exact             unknown");
                }
            }
            for c in &b.certificates {
                let _ = write!(s, "  {:?} {:>4}  {}", c.kind, c.value, c.source);
                match &c.witness {
                    Some(Witness::Decomposition(d)) => {
                        let _ = write!(s, "  {d}");
                    }
                    Some(Witness::Partition(p)) => {
                        let _ = write!(s, "  {p}");
                    }
                    None => {}
                }
                s.push('\n');
                for note in &c.notes {
                    let _ = writeln!(s, "      note: {note}");
                }
            }
        }
        if let Some(shape) = &self.betti {
            let _ = writeln!(s, "\nKoszul table shape (0 zero, * nonzero, ? unknown):");
            s += &shape.render();
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        s
    }
}
