//! On-disk cache of radial roots, keyed by the tolerances that produced them.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::roots::GRID_STEP;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootRecord {
    pub dim: u32,
    pub l: u32,
    pub root_index: u64,
    pub x: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coverage {
    pub dim: u32,
    pub l: u32,
    /// All roots with x ≤ this bound are recorded.
    pub up_to: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootCache {
    pub root_tol: f64,
    pub grid_step: f64,
    pub records: Vec<RootRecord>,
    pub coverage: Vec<Coverage>,
    #[serde(skip)]
    dirty: bool,
}

impl RootCache {
    pub fn new(root_tol: f64) -> Self {
        Self {
            root_tol,
            grid_step: GRID_STEP,
            records: Vec::new(),
            coverage: Vec::new(),
            dirty: false,
        }
    }

    /// Reads `path` if it exists. A file written with other tolerances, or one that
    /// cannot be parsed, is discarded and a notice is returned.
    pub fn open(path: &Path, root_tol: f64) -> Result<(Self, Option<String>)> {
        if !path.exists() {
            return Ok((Self::new(root_tol), None));
        }
        let text = fs::read_to_string(path)?;
        match serde_json::from_str::<RootCache>(&text) {
            Ok(mut cache) => {
                if cache.ensure_fresh(root_tol) {
                    Ok((
                        cache,
                        Some(format!(
                            "root cache {} was built with different tolerances; regenerating",
                            path.display()
                        )),
                    ))
                } else {
                    Ok((cache, None))
                }
            }
            Err(e) => Ok((
                Self::new(root_tol),
                Some(format!(
                    "root cache {} is unreadable ({e}); regenerating",
                    path.display()
                )),
            )),
        }
    }

    /// Drops everything if the metadata does not match; returns whether it did.
    pub fn ensure_fresh(&mut self, root_tol: f64) -> bool {
        if self.root_tol == root_tol && self.grid_step == GRID_STEP {
            return false;
        }
        *self = Self::new(root_tol);
        self.dirty = true;
        true
    }

    pub fn is_dirty(&self) -> bool {
        self.dirty
    }

    pub fn covers(&self, dim: u32, l: u32, x_bound: f64) -> bool {
        self.coverage
            .iter()
            .any(|c| c.dim == dim && c.l == l && c.up_to >= x_bound)
    }

    /// Replaces the roots for (dim, l) with `xs`, complete up to `x_bound`.
    pub fn store(&mut self, dim: u32, l: u32, x_bound: f64, xs: &[f64]) {
        self.records.retain(|r| !(r.dim == dim && r.l == l));
        self.records
            .extend(xs.iter().enumerate().map(|(i, &x)| RootRecord {
                dim,
                l,
                root_index: i as u64 + 1,
                x,
            }));
        self.coverage.retain(|c| !(c.dim == dim && c.l == l));
        self.coverage.push(Coverage {
            dim,
            l,
            up_to: x_bound,
        });
        self.records
            .sort_by(|a, b| (a.dim, a.l, a.root_index).cmp(&(b.dim, b.l, b.root_index)));
        self.coverage.sort_by_key(|c| (c.dim, c.l));
        self.dirty = true;
    }

    pub fn roots_below(&self, dim: u32, l: u32, x_bound: f64) -> Vec<f64> {
        let by_index: BTreeMap<u64, f64> = self
            .records
            .iter()
            .filter(|r| r.dim == dim && r.l == l && r.x <= x_bound)
            .map(|r| (r.root_index, r.x))
            .collect();
        by_index.into_values().collect()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("cache serializes");
        fs::write(path, text + "\n")?;
        Ok(())
    }
}
