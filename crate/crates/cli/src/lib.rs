//! Commands behind the `nodal` binary. Each returns its rendered output or
//! a [`Failure`] carrying the exit code.

pub mod report;

use std::fmt::Write as _;

use nodal_core::clifford::{validate_sheaf_profile, SheafProfile};
use nodal_core::connectivity::connectivity_number;
use nodal_core::format::{parse_document, serialize_curve, to_curve, validate_curve};
use nodal_core::koszul::green2_certificate;
use nodal_core::{CurveGraph, Error};
use serde::Serialize;

pub use report::{analyze, AnalyzeOptions, AnalysisReport};

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CONTRADICTION: u8 = 3;
pub const EXIT_GUARD: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Contradiction { .. } | Error::InconsistentBounds(_) => EXIT_CONTRADICTION,
            Error::GuardExceeded { .. } => EXIT_GUARD,
            _ => EXIT_INPUT,
        };
        let message = match &e {
            Error::InvalidCurve(issues) => {
                let mut s = String::from("invalid curve:");
                for issue in issues {
                    let _ = write!(s, "\n  {issue}");
                }
                s
            }
            Error::GuardExceeded { .. } => format!("{e} (raise the limit or pass --heuristic)"),
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

pub type Outcome = Result<String, Failure>;

pub fn to_structured<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Reads and validates a curve file, listing every structural issue.
pub fn load_curve(text: &str) -> Result<CurveGraph, Failure> {
    let doc = parse_document(text)?;
    let report = validate_curve(&doc);
    if !report.valid {
        return Err(Error::InvalidCurve(report.issues).into());
    }
    let g = to_curve(&doc)?;
    if !g.is_connected() {
        return Err(Failure::input(format!(
            "curve is disconnected ({} connected pieces); the analyses need a connected curve",
            g.connected_pieces()
        )));
    }
    Ok(g)
}

/// Canonical file text plus a one-line summary.
pub fn generated(g: &CurveGraph) -> Result<(String, String), Failure> {
    let m = connectivity_number(g)?.m;
    let summary = format!(
        "p_a = {}, m = {m}, components = {}, nodes = {}",
        g.total_genus(),
        g.num_components(),
        g.num_nodes()
    );
    Ok((serialize_curve(g), summary))
}

pub fn green2(g1: i64, g2: i64, m: i64, format: Format) -> Outcome {
    let (_, shape, trace) = green2_certificate(g1, g2, m)?;
    Ok(match format {
        Format::Text => format!("{trace}\n\nKoszul table shape (0 zero, * nonzero, ? unknown):\n{}", shape.render()),
        Format::Structured => to_structured(&serde_json::json!({ "trace": trace, "shape": shape })),
    })
}

/// Validates a profile file against a curve file. A profile that breaks a
/// constraint is reported and fails with the input-error code.
pub fn validate_sheaf(curve_text: &str, profile_text: &str, format: Format) -> Outcome {
    let g = load_curve(curve_text)?;
    let profile: SheafProfile = serde_json::from_str(profile_text)
        .map_err(|e| Failure::input(format!("malformed profile: {e}")))?;
    let report = validate_sheaf_profile(&g, &profile)?;
    let out = match format {
        Format::Structured => to_structured(&report),
        Format::Text => {
            let mut s = format!(
                "profile: {}\ncontributes: {}\n",
                if report.valid { "valid" } else { "invalid" },
                if report.contributes { "yes" } else { "no" }
            );
            for v in &report.violations {
                let _ = writeln!(s, "violated {}: {v}", v.name());
            }
            s
        }
    };
    if report.valid {
        Ok(out)
    } else {
        Err(Failure {
            code: EXIT_INPUT,
            message: out.trim_end().to_string(),
        })
    }
}
