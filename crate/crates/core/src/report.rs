//! Report documents and their table / structured renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::bifurcation::BifurcationVerdict;
use crate::euler::EulerSO2;
use crate::spectral::SpectrumEntry;

pub const SCHEMA_VERSION: u32 = 1;

/// How a single index was obtained by the `bif` command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BifMethod {
    /// Closed form under `a9`.
    ClosedForm,
    /// deg(−Id, V₁) − deg(−Id, V₂), up to an invertible factor.
    KernelDifference,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexedParameter {
    pub lambda0: f64,
    pub bif: EulerSO2,
    /// Other parameters (by λ₀) which together with this one have indices summing to Θ.
    pub bounded_escape_sets: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum ReportBody {
    Spectrum {
        domain: String,
        complete_up_to: f64,
        entries: Vec<SpectrumEntry>,
    },
    LambdaSet {
        window: (f64, f64),
        lambda: Vec<f64>,
    },
    Analyze {
        window: (f64, f64),
        verdicts: Vec<BifurcationVerdict>,
    },
    Bif {
        lambda0: f64,
        method: BifMethod,
        bif: EulerSO2,
    },
    Rabinowitz {
        indices: Vec<EulerSO2>,
        sum: EulerSO2,
        excludes_bounded: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        parameters: Option<Vec<IndexedParameter>>,
    },
    MorseDegree {
        degree: BTreeMap<String, i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        euler_so2: Option<EulerSO2>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lifted: Option<BTreeMap<String, i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        compared_with: Option<BTreeMap<String, i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        differs: Option<bool>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: ReportBody,
}

impl Report {
    pub fn new(body: ReportBody) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            body,
        }
    }

    pub fn to_structured(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        match &self.body {
            ReportBody::Spectrum {
                domain,
                complete_up_to,
                entries,
            } => {
                let _ = writeln!(
                    out,
                    "Neumann spectrum ({domain}), complete up to {complete_up_to}"
                );
                let _ = writeln!(
                    out,
                    "{:>4}  {:>20}  {:>3}  {:>4}  rep",
                    "k", "eigenvalue", "l", "root"
                );
                for (i, e) in entries.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "{:>4}  {:>20.12}  {:>3}  {:>4}  {}",
                        i + 1,
                        e.eigenvalue,
                        e.angular_index,
                        e.root_index,
                        e.rep
                    );
                }
            }
            ReportBody::LambdaSet { window, lambda } => {
                let _ = writeln!(
                    out,
                    "Λ ∩ [{}, {}]: {} member(s)",
                    window.0,
                    window.1,
                    lambda.len()
                );
                for l in lambda {
                    let _ = writeln!(out, "  {l:.12}");
                }
            }
            ReportBody::Analyze { window, verdicts } => {
                let _ = writeln!(out, "Verdicts on [{}, {}]", window.0, window.1);
                let _ = writeln!(
                    out,
                    "{:>16}  {:>5}  {:<12}  {:<24}  {:<10}  {:<24}  {:<20}  V2",
                    "lambda0", "in Λ", "glob", "justification", "unbounded", "bif", "V1"
                );
                for v in verdicts {
                    let bif = v.bif.as_ref().map_or("-".to_string(), |b| b.to_string());
                    let _ = writeln!(
                        out,
                        "{:>16.10}  {:>5}  {:<12}  {:<24}  {:<10}  {:<24}  {:<20}  {}",
                        v.lambda0,
                        v.in_lambda,
                        format!("{:?}", v.glob),
                        format!("{:?}", v.justification),
                        format!("{:?}", v.unbounded),
                        bif,
                        v.kernel.v1.to_string(),
                        v.kernel.v2
                    );
                }
            }
            ReportBody::Bif {
                lambda0,
                method,
                bif,
            } => {
                let _ = writeln!(out, "BIF({lambda0}) = {bif}  [{method:?}]");
            }
            ReportBody::Rabinowitz {
                indices,
                sum,
                excludes_bounded,
                parameters,
            } => {
                if let Some(params) = parameters {
                    for p in params {
                        let _ = writeln!(out, "  λ₀ = {:.10}: {}", p.lambda0, p.bif);
                        for set in &p.bounded_escape_sets {
                            let _ = writeln!(out, "      Θ-sum with {set:?}");
                        }
                    }
                } else {
                    for i in indices {
                        let _ = writeln!(out, "  {i}");
                    }
                }
                let _ = writeln!(out, "sum = {sum}");
                let _ = writeln!(
                    out,
                    "bounded continuum through all of these parameters: {}",
                    if *excludes_bounded {
                        "excluded"
                    } else {
                        "not excluded"
                    }
                );
            }
            ReportBody::MorseDegree {
                degree,
                euler_so2,
                lifted,
                compared_with,
                differs,
            } => {
                let _ = writeln!(out, "degree:");
                for (c, n) in degree {
                    let _ = writeln!(out, "  {c:<16} {n:>6}");
                }
                if let Some(e) = euler_so2 {
                    let _ = writeln!(out, "as an element of U(SO(2)): {e}");
                }
                if let Some(l) = lifted {
                    let _ = writeln!(out, "lifted:");
                    for (c, n) in l {
                        let _ = writeln!(out, "  {c:<16} {n:>6}");
                    }
                }
                if let (Some(other), Some(d)) = (compared_with, differs) {
                    let _ = writeln!(
                        out,
                        "compared with {other:?}: {}",
                        if *d { "different" } else { "equal" }
                    );
                }
            }
        }
        out
    }
}
