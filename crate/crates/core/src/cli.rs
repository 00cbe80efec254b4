//! Command-line front end: argument parsing, pipeline orchestration and output.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::bifurcation::{
    analyze, bif_a9, bif_difference, bounded_escape_sets, rabinowitz_excludes_bounded,
};
use crate::config::{read_document, AnalysisConfig, OutputFormat};
use crate::error::{Error, Result};
use crate::euler::EulerSO2;
use crate::morse::{
    compare_orbit_degrees, degree_from_orbits, lift_degree, ClassTable, OrbitDatum,
};
use crate::report::{BifMethod, IndexedParameter, Report, ReportBody};
use crate::spectral::cache::RootCache;
use crate::spectral::{DomainKind, Spectrum};
use crate::system::{DomainSpec, SystemModel, SystemSpec};

#[derive(Debug, Parser)]
#[command(
    name = "eqbif",
    version,
    about = "Global bifurcation of orbits for symmetric Neumann elliptic systems"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Configuration document (JSON or TOML).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Parameter value λ₀ for `bif`.
    #[arg(long, global = true, value_name = "REAL", allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Parameter window [LO, HI].
    #[arg(long, global = true, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
    pub window: Option<Vec<f64>>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Compute or require the spectrum up to this eigenvalue.
    #[arg(long, global = true, value_name = "REAL")]
    pub max_eigenvalue: Option<f64>,
    /// Root bisection tolerance (relative).
    #[arg(long, global = true, value_name = "REAL")]
    pub tol: Option<f64>,
    /// Eigenvalue merge / λb = α matching tolerance (relative).
    #[arg(long, global = true, value_name = "REAL")]
    pub merge_tol: Option<f64>,
    /// Root cache file, created if missing.
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Neumann spectrum of the configured domain (the unit disk by default).
    Spectrum,
    /// Candidate bifurcation parameters Λ inside the window.
    LambdaSet,
    /// Verdicts for every candidate parameter inside the window.
    Analyze,
    /// Bifurcation index at --lambda.
    Bif,
    /// Whether a set of indices can sum to Θ.
    Rabinowitz {
        /// JSON array of U(SO(2)) elements; defaults to the indices of Λ ∩ window.
        #[arg(long, value_name = "PATH")]
        indices: Option<PathBuf>,
    },
    /// Degree of a special Morse function from its critical orbits.
    MorseDegree {
        /// Orbit data: [{"class": ..., "morse_index": ...}, ...].
        #[arg(long, value_name = "PATH")]
        orbits: Option<PathBuf>,
        /// Second orbit set to compare against.
        #[arg(long, value_name = "PATH")]
        compare: Option<PathBuf>,
        /// Class table {"h_class": "g_class", ...}.
        #[arg(long, value_name = "PATH")]
        table: Option<PathBuf>,
    },
}

/// Output of a successful run.
pub struct Outcome {
    pub report: Report,
    pub format: OutputFormat,
    /// Diagnostics for stderr.
    pub notices: Vec<String>,
}

impl Outcome {
    pub fn render(&self) -> String {
        match self.format {
            OutputFormat::Table => self.report.to_table(),
            OutputFormat::Structured => self.report.to_structured(),
        }
    }
}

fn doc<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    serde_json::from_value(read_document(path)?)
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

/// Merges flags over the configuration document.
pub fn resolve_config(g: &GlobalArgs) -> Result<AnalysisConfig> {
    let mut cfg = match &g.config {
        Some(p) => AnalysisConfig::load(p)?,
        None => AnalysisConfig::default(),
    };
    if let Some(w) = &g.window {
        cfg.window = Some((w[0], w[1]));
    }
    if let Some(l) = g.lambda {
        cfg.lambda = Some(l);
    }
    if let Some(f) = g.format {
        cfg.output_format = f;
    }
    if let Some(b) = g.max_eigenvalue {
        cfg.spectrum_bound = Some(b);
    }
    if let Some(t) = g.tol {
        cfg.tolerances.root = t;
    }
    if let Some(t) = g.merge_tol {
        cfg.tolerances.merge = t;
    }
    if let Some(c) = &g.cache {
        cfg.cache = Some(c.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

struct Session {
    cfg: AnalysisConfig,
    cache: Option<RootCache>,
    notices: Vec<String>,
}

impl Session {
    fn new(cfg: AnalysisConfig) -> Result<Self> {
        let mut notices = Vec::new();
        let cache = match &cfg.cache {
            Some(p) => {
                let (c, notice) = RootCache::open(p, cfg.tolerances.root)?;
                notices.extend(notice);
                Some(c)
            }
            None => None,
        };
        Ok(Self {
            cfg,
            cache,
            notices,
        })
    }

    fn finish(&mut self) -> Result<()> {
        if let (Some(c), Some(p)) = (&self.cache, &self.cfg.cache) {
            if c.is_dirty() {
                c.save(p)?;
            }
        }
        Ok(())
    }

    fn system(&self) -> Result<&SystemSpec> {
        self.cfg
            .system
            .as_ref()
            .ok_or_else(|| Error::Validation("this command needs a \"system\" in --config".into()))
    }

    fn window(&self) -> Result<(f64, f64)> {
        self.cfg
            .window
            .ok_or_else(|| Error::Validation("this command needs --window LO HI".into()))
    }

    /// The model with a disk spectrum reaching `needed` (or the configured bound).
    fn model(&mut self, needed: f64) -> Result<SystemModel> {
        let spec = self.system()?.clone();
        let bound = self
            .cfg
            .spectrum_bound
            .unwrap_or_else(|| (needed * (1.0 + 1e-6) + 1e-9).max(1.0));
        SystemModel::build(
            spec,
            self.cfg.tolerances,
            bound,
            self.cfg.base_dir.as_deref(),
            self.cache.as_mut(),
        )
    }

    fn window_model(&mut self) -> Result<(SystemModel, (f64, f64))> {
        let (lo, hi) = self.window()?;
        let needed = self.system()?.required_eigenvalue_bound(lo, hi);
        Ok((self.model(needed)?, (lo, hi)))
    }
}

fn spectrum_body(s: &mut Session) -> Result<ReportBody> {
    let tol = s.cfg.tolerances;
    let spectrum = match s.cfg.system.as_ref().map(|sys| &sys.domain) {
        None | Some(DomainSpec::Disk) => {
            let bound = s.cfg.spectrum_bound.ok_or_else(|| {
                Error::Validation(
                    "the disk spectrum needs --max-eigenvalue or spectrum_bound".into(),
                )
            })?;
            Spectrum::disk(bound, &tol, s.cache.as_mut())?
        }
        Some(_) => s.model(0.0)?.spectrum,
    };
    let domain = match spectrum.domain {
        DomainKind::Disk => "disk".to_string(),
        DomainKind::Ball { dim } => format!("ball:{dim}"),
        DomainKind::Custom => "custom".to_string(),
    };
    Ok(ReportBody::Spectrum {
        domain,
        complete_up_to: spectrum.complete_up_to,
        entries: spectrum.entries,
    })
}

fn rabinowitz_body(s: &mut Session, indices: Option<&PathBuf>) -> Result<ReportBody> {
    let given: Option<Vec<EulerSO2>> = match indices {
        Some(p) => Some(doc(p)?),
        None => s.cfg.indices.clone(),
    };
    if let Some(indices) = given {
        let sum: EulerSO2 = indices.iter().sum();
        return Ok(ReportBody::Rabinowitz {
            excludes_bounded: rabinowitz_excludes_bounded(&indices),
            sum,
            indices,
            parameters: None,
        });
    }
    let (model, (lo, hi)) = s.window_model()?;
    let lambdas: Vec<f64> = model
        .lambda_set(lo, hi)?
        .into_iter()
        .filter(|&l| l != 0.0)
        .collect();
    let indices = lambdas
        .iter()
        .map(|&l| bif_a9(&model, l))
        .collect::<Result<Vec<_>>>()?;
    let mut parameters = Vec::with_capacity(lambdas.len());
    for (i, (&lambda0, bif)) in lambdas.iter().zip(&indices).enumerate() {
        let sets = bounded_escape_sets(&indices, i)?;
        parameters.push(IndexedParameter {
            lambda0,
            bif: bif.clone(),
            bounded_escape_sets: sets
                .into_iter()
                .map(|set| {
                    set.into_iter()
                        .filter(|&j| j != i)
                        .map(|j| lambdas[j])
                        .collect()
                })
                .collect(),
        });
    }
    Ok(ReportBody::Rabinowitz {
        excludes_bounded: rabinowitz_excludes_bounded(&indices),
        sum: indices.iter().sum(),
        indices,
        parameters: Some(parameters),
    })
}

fn morse_body(
    s: &Session,
    orbits: Option<&PathBuf>,
    compare: Option<&PathBuf>,
    table: Option<&PathBuf>,
) -> Result<ReportBody> {
    let orbits: Vec<OrbitDatum> =
        match orbits {
            Some(p) => doc(p)?,
            None => s.cfg.orbits.clone().ok_or_else(|| {
                Error::Validation("morse-degree needs --orbits or \"orbits\"".into())
            })?,
        };
    let other: Option<Vec<OrbitDatum>> = match compare {
        Some(p) => Some(doc(p)?),
        None => s.cfg.compare_orbits.clone(),
    };
    let table: Option<ClassTable> = match table {
        Some(p) => Some(doc(p)?),
        None => s.cfg.class_table.clone(),
    };
    let degree = degree_from_orbits(&orbits);
    let other_degree = other.as_deref().map(degree_from_orbits);
    let lifted = table
        .as_ref()
        .map(|t| lift_degree(&degree, t))
        .transpose()?;
    let differs = match (&other_degree, &table) {
        (Some(o), Some(t)) => Some(compare_orbit_degrees(&degree, o, t)?),
        (Some(o), None) => Some(&degree != o),
        _ => None,
    };
    Ok(ReportBody::MorseDegree {
        euler_so2: degree.to_euler_so2().ok(),
        degree: degree.into(),
        lifted: lifted.map(Into::into),
        compared_with: other_degree.map(Into::into),
        differs,
    })
}

/// Runs one subcommand.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = resolve_config(&cli.global)?;
    let format = cfg.output_format;
    let mut s = Session::new(cfg)?;
    let body = match &cli.command {
        Command::Spectrum => spectrum_body(&mut s)?,
        Command::LambdaSet => {
            let (model, window) = s.window_model()?;
            ReportBody::LambdaSet {
                window,
                lambda: model.lambda_set(window.0, window.1)?,
            }
        }
        Command::Analyze => {
            let (model, window) = s.window_model()?;
            ReportBody::Analyze {
                window,
                verdicts: analyze(&model, window.0, window.1)?,
            }
        }
        Command::Bif => {
            let lambda0 = s
                .cfg
                .lambda
                .ok_or_else(|| Error::Validation("bif needs --lambda".into()))?;
            let needed = s.system()?.required_eigenvalue_bound(lambda0, lambda0);
            let model = s.model(needed)?;
            let (method, bif) = if model.spec.a9 {
                (BifMethod::ClosedForm, bif_a9(&model, lambda0)?)
            } else {
                (
                    BifMethod::KernelDifference,
                    bif_difference(&model, lambda0)?,
                )
            };
            ReportBody::Bif {
                lambda0,
                method,
                bif,
            }
        }
        Command::Rabinowitz { indices } => rabinowitz_body(&mut s, indices.as_ref())?,
        Command::MorseDegree {
            orbits,
            compare,
            table,
        } => morse_body(&s, orbits.as_ref(), compare.as_ref(), table.as_ref())?,
    };
    s.finish()?;
    Ok(Outcome {
        report: Report::new(body),
        format,
        notices: s.notices,
    })
}
