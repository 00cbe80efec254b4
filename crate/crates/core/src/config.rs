//! Analysis configuration documents (JSON or TOML).

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::euler::EulerSO2;
use crate::morse::{ClassTable, OrbitDatum};
use crate::spectral::Tolerances;
use crate::system::SystemSpec;

/// Reads a structured document. `.toml` files are TOML, anything else is tried
/// as JSON first and TOML second.
pub fn read_document(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text, path.extension().and_then(|e| e.to_str()))
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

fn parse_document(text: &str, ext: Option<&str>) -> std::result::Result<Value, String> {
    let from_toml = |t: &str| {
        toml::from_str::<toml::Value>(t)
            .map_err(|e| e.to_string())
            .and_then(|v| serde_json::to_value(v).map_err(|e| e.to_string()))
    };
    if ext == Some("toml") {
        return from_toml(text);
    }
    match serde_json::from_str(text) {
        Ok(v) => Ok(v),
        Err(json_err) => from_toml(text).map_err(|_| json_err.to_string()),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Table,
    Structured,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    system: Option<Value>,
    #[serde(default)]
    window: Option<(f64, f64)>,
    #[serde(default)]
    output_format: Option<OutputFormat>,
    #[serde(default)]
    tolerances: Option<Tolerances>,
    #[serde(default)]
    spectrum_bound: Option<f64>,
    #[serde(default)]
    lambda: Option<f64>,
    #[serde(default)]
    indices: Option<Vec<EulerSO2>>,
    #[serde(default)]
    orbits: Option<Vec<OrbitDatum>>,
    #[serde(default)]
    compare_orbits: Option<Vec<OrbitDatum>>,
    #[serde(default)]
    class_table: Option<ClassTable>,
    #[serde(default)]
    cache: Option<PathBuf>,
}

/// Everything a run needs. Every field may also come from a command-line flag.
#[derive(Clone, Debug, Default)]
pub struct AnalysisConfig {
    pub system: Option<SystemSpec>,
    pub window: Option<(f64, f64)>,
    pub output_format: OutputFormat,
    pub tolerances: Tolerances,
    pub spectrum_bound: Option<f64>,
    pub lambda: Option<f64>,
    pub indices: Option<Vec<EulerSO2>>,
    pub orbits: Option<Vec<OrbitDatum>>,
    pub compare_orbits: Option<Vec<OrbitDatum>>,
    pub class_table: Option<ClassTable>,
    pub cache: Option<PathBuf>,
    /// Directory against which relative paths in the document resolve.
    pub base_dir: Option<PathBuf>,
}

impl AnalysisConfig {
    pub fn from_value(v: &Value, base_dir: Option<&Path>) -> Result<Self> {
        let raw: RawConfig =
            serde_json::from_value(v.clone()).map_err(|e| Error::Schema(format!("config: {e}")))?;
        let resolve = |p: PathBuf| match base_dir {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p,
        };
        let cfg = AnalysisConfig {
            system: raw
                .system
                .as_ref()
                .map(SystemSpec::from_value)
                .transpose()?,
            window: raw.window,
            output_format: raw.output_format.unwrap_or_default(),
            tolerances: raw.tolerances.unwrap_or_default(),
            spectrum_bound: raw.spectrum_bound,
            lambda: raw.lambda,
            indices: raw.indices,
            orbits: raw.orbits,
            compare_orbits: raw.compare_orbits,
            class_table: raw.class_table,
            cache: raw.cache.map(resolve),
            base_dir: base_dir.map(Path::to_path_buf),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_value(&read_document(path)?, path.parent())
    }

    pub fn validate(&self) -> Result<()> {
        self.tolerances.validate()?;
        if let Some((lo, hi)) = self.window {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::Validation(format!(
                    "window [{lo}, {hi}] needs finite lo < hi"
                )));
            }
        }
        if let Some(b) = self.spectrum_bound {
            if !(b > 0.0) || !b.is_finite() {
                return Err(Error::Validation(format!(
                    "spectrum bound {b} must be positive"
                )));
            }
        }
        if let Some(l) = self.lambda {
            if !l.is_finite() {
                return Err(Error::Validation(format!("λ = {l} is not finite")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn toml_and_json_agree() {
        let toml_text = r#"
window = [0.0, 10.0]
output_format = "structured"

[system]
p1 = 2
p2 = 0
mu_b0 = 0
a9 = true
b1 = [{ value = 1, mult = 2 }]
domain = { type = "disk" }
"#;
        let from_toml = parse_document(toml_text, Some("toml")).unwrap();
        let from_json = json!({
            "window": [0.0, 10.0], "output_format": "structured",
            "system": {"p1": 2, "p2": 0, "mu_b0": 0, "a9": true,
                       "b1": [{"value": 1, "mult": 2}], "domain": {"type": "disk"}}
        });
        assert_eq!(from_toml, from_json);
        let cfg = AnalysisConfig::from_value(&from_toml, None).unwrap();
        assert_eq!(cfg.output_format, OutputFormat::Structured);
        assert_eq!(cfg.system.unwrap().p1, 2);
    }

    #[test]
    fn rejects_bad_configs() {
        let bad_window = json!({"window": [2.0, 1.0]});
        assert!(matches!(
            AnalysisConfig::from_value(&bad_window, None),
            Err(Error::Validation(_))
        ));
        let bad_tol = json!({"tolerances": {"root": -1.0}});
        assert!(matches!(
            AnalysisConfig::from_value(&bad_tol, None),
            Err(Error::Validation(_))
        ));
        let unknown = json!({"windw": [0, 1]});
        assert!(matches!(
            AnalysisConfig::from_value(&unknown, None),
            Err(Error::Schema(_))
        ));
    }
}
