//! Neumann Laplacian spectra on invariant domains.
//!
//! The unit disk is computed from the roots of J_l′; the N-ball (N ≥ 3) and
//! arbitrary invariant domains are ingested from user documents.

pub mod bessel;
pub mod cache;
pub mod roots;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::euler::SO2Rep;
use cache::RootCache;
use roots::{find_roots, RadialCondition, RootQuery};

pub use bessel::{bessel_j, bessel_j_prime};
pub use roots::neumann_radial_roots;

/// Numerical tolerances shared by spectrum construction and Λ matching.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Bisection stops once the bracket is narrower than `root · max(1, x)`.
    pub root: f64,
    /// Eigenvalues (and λ·b = α matches) closer than `merge · max(1, |α|)` coincide.
    pub merge: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            root: 1e-13,
            merge: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        if !(self.root > 0.0) || !(self.merge > 0.0) {
            return Err(Error::Validation(format!(
                "tolerances must be positive (root {}, merge {})",
                self.root, self.merge
            )));
        }
        Ok(())
    }

    /// |a − b| < merge · max(1, |a|, |b|).
    pub fn same(&self, a: f64, b: f64) -> bool {
        (a - b).abs() < self.merge * 1f64.max(a.abs()).max(b.abs())
    }
}

/// Label of a nontrivial irreducible representation of the domain's symmetry group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IrrepLabel {
    /// SO(2) acting on ℝ² with rotation number k ≥ 1 (disk).
    Rotation(u64),
    /// Degree-l spherical harmonics, l ≥ 1 (N-ball).
    Harmonic(u64),
    /// Any other user-named irreducible.
    Named(String),
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::Rotation(k) => write!(f, "rot:{k}"),
            IrrepLabel::Harmonic(l) => write!(f, "sph:{l}"),
            IrrepLabel::Named(s) => f.write_str(s),
        }
    }
}

impl FromStr for IrrepLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let numbered = |rest: &str| -> Result<u64> {
            match rest.parse::<u64>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(Error::Schema(format!(
                    "irreducible label {s:?} needs a positive integer index"
                ))),
            }
        };
        if let Some(rest) = s.strip_prefix("rot:") {
            Ok(IrrepLabel::Rotation(numbered(rest)?))
        } else if let Some(rest) = s.strip_prefix("sph:") {
            Ok(IrrepLabel::Harmonic(numbered(rest)?))
        } else if s.is_empty() || s == "trivial" {
            Err(Error::Schema(format!(
                "{s:?} is not a nontrivial irreducible label"
            )))
        } else {
            Ok(IrrepLabel::Named(s.to_string()))
        }
    }
}

/// An orthogonal representation: a trivial part plus a multiset of labeled
/// nontrivial irreducibles. Zero multiplicities are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RepDescriptor {
    trivial: u64,
    irreps: BTreeMap<IrrepLabel, u64>,
}

impl RepDescriptor {
    pub fn trivial(dim: u64) -> Self {
        Self {
            trivial: dim,
            irreps: BTreeMap::new(),
        }
    }

    pub fn irreducible(label: IrrepLabel, mult: u64) -> Self {
        let mut out = Self::default();
        out.add(label, mult);
        out
    }

    pub fn new(trivial: u64, irreps: impl IntoIterator<Item = (IrrepLabel, u64)>) -> Self {
        let mut out = Self::trivial(trivial);
        for (label, m) in irreps {
            out.add(label, m);
        }
        out
    }

    fn add(&mut self, label: IrrepLabel, m: u64) {
        if m > 0 {
            *self.irreps.entry(label).or_default() += m;
        }
    }

    pub fn trivial_dim(&self) -> u64 {
        self.trivial
    }

    pub fn irreducibles(&self) -> &BTreeMap<IrrepLabel, u64> {
        &self.irreps
    }

    pub fn is_zero(&self) -> bool {
        self.trivial == 0 && self.irreps.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn oplus(&self, other: &RepDescriptor) -> RepDescriptor {
        let mut out = self.clone();
        out.trivial += other.trivial;
        for (label, &m) in &other.irreps {
            out.add(label.clone(), m);
        }
        out
    }

    /// Direct sum of `n` copies.
    pub fn repeat(&self, n: u64) -> RepDescriptor {
        if n == 0 {
            return RepDescriptor::default();
        }
        RepDescriptor {
            trivial: self.trivial * n,
            irreps: self
                .irreps
                .iter()
                .map(|(l, &m)| (l.clone(), m * n))
                .collect(),
        }
    }

    /// Same nontrivial part and trivial dimensions of equal parity.
    pub fn equiv_mod_even_trivial(&self, other: &RepDescriptor) -> bool {
        self.irreps == other.irreps && self.trivial % 2 == other.trivial % 2
    }

    /// Lossless view as an SO(2)-representation; only rotation labels qualify.
    pub fn to_so2(&self) -> Result<SO2Rep> {
        let mut rot = Vec::with_capacity(self.irreps.len());
        for (label, &m) in &self.irreps {
            match label {
                IrrepLabel::Rotation(k) => rot.push((*k, m)),
                other => {
                    return Err(Error::UnsupportedDomain(format!(
                        "irreducible {other} has no SO(2) rotation number"
                    )))
                }
            }
        }
        Ok(SO2Rep::new(self.trivial, rot))
    }
}

impl From<&SO2Rep> for RepDescriptor {
    fn from(v: &SO2Rep) -> Self {
        RepDescriptor::new(
            v.trivial_dim(),
            v.rotation_mults()
                .iter()
                .map(|(&k, &m)| (IrrepLabel::Rotation(k), m)),
        )
    }
}

impl fmt::Display for RepDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if self.trivial > 0 {
            parts.push(format!("triv×{}", self.trivial));
        }
        parts.extend(self.irreps.iter().map(|(l, m)| format!("{l}×{m}")));
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// Wire form: `{"trivial": t, "irreps": {"rot:1": m, ...}}`; the SO(2)
/// shorthand `{"trivial": t, "rot": {"k": m}}` is accepted on input.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRep {
    #[serde(default)]
    trivial: i64,
    #[serde(default)]
    irreps: BTreeMap<String, i64>,
    #[serde(default, skip_serializing)]
    rot: BTreeMap<String, i64>,
}

impl RawRep {
    fn validate(self) -> Result<RepDescriptor> {
        let count = |what: &str, n: i64| -> Result<u64> {
            u64::try_from(n)
                .map_err(|_| Error::Validation(format!("negative multiplicity {n} for {what}")))
        };
        let mut out = RepDescriptor::trivial(count("trivial part", self.trivial)?);
        for (label, m) in self.irreps {
            let m = count(&label, m)?;
            out.add(label.parse()?, m);
        }
        for (k, m) in self.rot {
            let m = count(&k, m)?;
            out.add(format!("rot:{k}").parse()?, m);
        }
        Ok(out)
    }
}

impl Serialize for RepDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawRep {
            trivial: self.trivial as i64,
            irreps: self
                .irreps
                .iter()
                .map(|(l, &m)| (l.to_string(), m as i64))
                .collect(),
            rot: BTreeMap::new(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RepDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RawRep::deserialize(d)?
            .validate()
            .map_err(serde::de::Error::custom)
    }
}

/// One distinct Neumann eigenvalue and its eigenspace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub eigenvalue: f64,
    /// Angular index l of the radial equation (smallest one after merging).
    pub angular_index: u64,
    /// Position among the positive roots for this l; 0 marks the constant mode α = 0.
    pub root_index: u64,
    pub rep: RepDescriptor,
    /// The eigenvalue as an exact integer, when the source supplied one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<i64>,
}

impl SpectrumEntry {
    /// α = 0 with the constant functions as eigenspace.
    pub fn constants() -> Self {
        Self {
            eigenvalue: 0.0,
            angular_index: 0,
            root_index: 0,
            rep: RepDescriptor::trivial(1),
            exact: Some(0),
        }
    }
}

/// Sorts by eigenvalue and merges neighbours within the merge tolerance,
/// summing their representations.
pub fn merge_entries(mut entries: Vec<SpectrumEntry>, tol: &Tolerances) -> Vec<SpectrumEntry> {
    entries.sort_by(|a, b| a.eigenvalue.total_cmp(&b.eigenvalue));
    let mut out: Vec<SpectrumEntry> = Vec::with_capacity(entries.len());
    for e in entries {
        match out.last_mut() {
            Some(last) if tol.same(last.eigenvalue, e.eigenvalue) => {
                last.rep = last.rep.oplus(&e.rep);
                if e.angular_index < last.angular_index {
                    last.angular_index = e.angular_index;
                    last.root_index = e.root_index;
                }
                if last.exact != e.exact {
                    last.exact = None;
                }
            }
            _ => out.push(e),
        }
    }
    out
}

/// The Neumann spectrum of the unit disk up to `max_eigenvalue`.
pub fn disk_spectrum(max_eigenvalue: f64, tol: &Tolerances) -> Result<Vec<SpectrumEntry>> {
    disk_spectrum_cached(max_eigenvalue, tol, None)
}

/// As [`disk_spectrum`], reusing and extending `cache` when given.
pub fn disk_spectrum_cached(
    max_eigenvalue: f64,
    tol: &Tolerances,
    cache: Option<&mut RootCache>,
) -> Result<Vec<SpectrumEntry>> {
    if !(max_eigenvalue > 0.0) || !max_eigenvalue.is_finite() {
        return Err(Error::Domain(format!(
            "spectrum bound {max_eigenvalue} must be positive and finite"
        )));
    }
    tol.validate()?;
    let x_max = max_eigenvalue.sqrt();
    // the first root of J_l′ exceeds l, so larger l contribute nothing
    let top = x_max.floor() as u32;

    let per_l = |l: u32| -> Result<Vec<f64>> {
        let cond = RadialCondition::new(l, 2)?;
        Ok(find_roots(&cond, RootQuery::Below(x_max), tol.root)?
            .into_iter()
            .map(|r| r.x)
            .collect())
    };

    let roots: Vec<(u32, Vec<f64>)> = match cache {
        Some(cache) => {
            cache.ensure_fresh(tol.root);
            let missing: Vec<u32> = (0..=top).filter(|&l| !cache.covers(2, l, x_max)).collect();
            let fresh = missing
                .par_iter()
                .map(|&l| per_l(l).map(|xs| (l, xs)))
                .collect::<Result<Vec<_>>>()?;
            for (l, xs) in fresh {
                cache.store(2, l, x_max, &xs);
            }
            (0..=top)
                .map(|l| (l, cache.roots_below(2, l, x_max)))
                .collect()
        }
        None => (0..=top)
            .into_par_iter()
            .map(|l| per_l(l).map(|xs| (l, xs)))
            .collect::<Result<Vec<_>>>()?,
    };

    let mut entries = vec![SpectrumEntry::constants()];
    for (l, xs) in roots {
        let rep = if l == 0 {
            RepDescriptor::trivial(1)
        } else {
            RepDescriptor::irreducible(IrrepLabel::Rotation(l as u64), 1)
        };
        for (i, x) in xs.into_iter().enumerate() {
            let eigenvalue = x * x;
            if eigenvalue <= max_eigenvalue {
                entries.push(SpectrumEntry {
                    eigenvalue,
                    angular_index: l as u64,
                    root_index: i as u64 + 1,
                    rep: rep.clone(),
                    exact: None,
                });
            }
        }
    }
    Ok(merge_entries(entries, tol))
}

/// Whether the eigenspace of `entry` on the unit `dim`-ball is a nontrivial
/// SO(N)-representation.
///
/// Positive angular index always is. For angular index 0 the eigenspace is
/// nontrivial exactly when √α does not solve J_ν′(x) − (ν/x) J_ν(x) = 0,
/// ν = (N−2)/2, i.e. when α is not a radial (rotation-invariant) eigenvalue.
pub fn ball_rep_nontrivial(entry: &SpectrumEntry, dim: u32, tol: &Tolerances) -> Result<bool> {
    if dim < 3 {
        return Err(Error::Domain(format!("ball dimension {dim} must be ≥ 3")));
    }
    if entry.eigenvalue == 0.0 {
        return Ok(false);
    }
    if entry.angular_index >= 1 {
        return Ok(true);
    }
    let cond = RadialCondition::new(0, dim)?;
    let x = entry.eigenvalue.sqrt();
    let radial = find_roots(&cond, RootQuery::Below(x + 1.0), tol.root)?;
    Ok(!radial.iter().any(|r| tol.same(r.x * r.x, entry.eigenvalue)))
}

/// A user-supplied spectrum document.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomDoc {
    #[serde(default)]
    domain: Option<String>,
    entries: Vec<CustomEntry>,
    /// Eigenvalues up to this bound are all listed; defaults to the largest one.
    #[serde(default)]
    complete_up_to: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomEntry {
    eigenvalue: serde_json::Number,
    rep: RawRep,
    #[serde(default)]
    angular_index: Option<u64>,
    #[serde(default)]
    root_index: Option<u64>,
}

/// A validated custom spectrum and the bound up to which it is complete.
#[derive(Clone, Debug, PartialEq)]
pub struct CustomSpectrum {
    pub entries: Vec<SpectrumEntry>,
    pub complete_up_to: f64,
}

/// Parses and validates a custom spectrum document.
///
/// Entries must be listed in non-decreasing order and contain α = 0 with the
/// one-dimensional trivial representation; near-equal eigenvalues are merged.
pub fn load_custom_spectrum(doc: &Value, tol: &Tolerances) -> Result<Vec<SpectrumEntry>> {
    Ok(load_custom_spectrum_doc(doc, tol)?.entries)
}

pub fn load_custom_spectrum_doc(doc: &Value, tol: &Tolerances) -> Result<CustomSpectrum> {
    let raw: CustomDoc =
        serde_json::from_value(doc.clone()).map_err(|e| Error::Schema(e.to_string()))?;
    if let Some(d) = raw.domain.as_deref() {
        if !matches!(d, "custom" | "ball" | "disk") {
            return Err(Error::Schema(format!("unknown spectrum domain {d:?}")));
        }
    }
    let mut entries = Vec::with_capacity(raw.entries.len());
    for (i, e) in raw.entries.into_iter().enumerate() {
        let exact = e.eigenvalue.as_i64();
        let eigenvalue = e
            .eigenvalue
            .as_f64()
            .ok_or_else(|| Error::Schema(format!("entry {i}: eigenvalue is not a number")))?;
        if !(eigenvalue >= 0.0) || !eigenvalue.is_finite() {
            return Err(Error::Validation(format!(
                "entry {i}: eigenvalue {eigenvalue} must be finite and ≥ 0"
            )));
        }
        let rep = e.rep.validate()?;
        if rep.is_zero() {
            return Err(Error::Validation(format!("entry {i}: empty eigenspace")));
        }
        entries.push(SpectrumEntry {
            eigenvalue,
            angular_index: e.angular_index.unwrap_or(0),
            root_index: e.root_index.unwrap_or(i as u64),
            rep,
            exact,
        });
    }
    for w in entries.windows(2) {
        if w[1].eigenvalue < w[0].eigenvalue && !tol.same(w[0].eigenvalue, w[1].eigenvalue) {
            return Err(Error::Validation(format!(
                "eigenvalues out of order: {} listed after {}",
                w[1].eigenvalue, w[0].eigenvalue
            )));
        }
    }
    let entries = merge_entries(entries, tol);
    match entries.first() {
        Some(first) if first.eigenvalue == 0.0 => {
            if first.rep != RepDescriptor::trivial(1) {
                return Err(Error::Validation(format!(
                    "the α = 0 eigenspace must be the constants (trivial, dim 1), got {}",
                    first.rep
                )));
            }
        }
        _ => {
            return Err(Error::Validation(
                "a Neumann spectrum must contain the eigenvalue 0".into(),
            ))
        }
    }
    let largest = entries.last().map_or(0.0, |e| e.eigenvalue);
    let complete_up_to = raw.complete_up_to.unwrap_or(largest);
    if !(complete_up_to >= 0.0) {
        return Err(Error::Validation(format!(
            "complete_up_to {complete_up_to} must be ≥ 0"
        )));
    }
    Ok(CustomSpectrum {
        entries,
        complete_up_to,
    })
}

/// Which symmetry/geometry a spectrum belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum DomainKind {
    Disk,
    Ball { dim: u32 },
    Custom,
}

/// A materialized spectrum: ascending distinct eigenvalues, complete up to a bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub domain: DomainKind,
    pub entries: Vec<SpectrumEntry>,
    pub complete_up_to: f64,
}

impl Spectrum {
    pub fn disk(
        max_eigenvalue: f64,
        tol: &Tolerances,
        cache: Option<&mut RootCache>,
    ) -> Result<Self> {
        Ok(Self {
            domain: DomainKind::Disk,
            entries: disk_spectrum_cached(max_eigenvalue, tol, cache)?,
            complete_up_to: max_eigenvalue,
        })
    }

    pub fn from_custom(domain: DomainKind, custom: CustomSpectrum) -> Self {
        Self {
            domain,
            entries: custom.entries,
            complete_up_to: custom.complete_up_to,
        }
    }

    /// Fails unless every eigenvalue up to `needed` is known.
    pub fn require(&self, needed: f64, tol: &Tolerances) -> Result<()> {
        if needed > self.complete_up_to && !tol.same(needed, self.complete_up_to) {
            return Err(Error::InsufficientSpectrum {
                needed,
                available: self.complete_up_to,
            });
        }
        Ok(())
    }

    /// Whether the eigenspace is a nontrivial representation of the symmetry group.
    pub fn is_nontrivial(&self, entry: &SpectrumEntry, tol: &Tolerances) -> Result<bool> {
        match self.domain {
            DomainKind::Ball { dim } => ball_rep_nontrivial(entry, dim, tol),
            DomainKind::Disk | DomainKind::Custom => Ok(!entry.rep.is_trivial()),
        }
    }

    /// V(n): direct sum of the first `n` eigenspaces (α₁ = 0 first).
    pub fn cumulative_rep(&self, n: usize) -> RepDescriptor {
        self.entries
            .iter()
            .take(n)
            .fold(RepDescriptor::default(), |acc, e| acc.oplus(&e.rep))
    }

    /// 1-based position of α in the spectrum.
    pub fn index_of(&self, alpha: f64, tol: &Tolerances) -> Option<usize> {
        self.entries
            .iter()
            .position(|e| tol.same(e.eigenvalue, alpha))
            .map(|i| i + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn disk_spectrum_small_bounds() {
        let s = disk_spectrum(10.0, &tol()).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[0], SpectrumEntry::constants());
        assert!((s[1].eigenvalue - 3.38996).abs() < 1e-4);
        assert_eq!(
            s[1].rep,
            RepDescriptor::irreducible(IrrepLabel::Rotation(1), 1)
        );
        assert!((s[2].eigenvalue - 9.32836).abs() < 1e-4);
        assert_eq!(
            s[2].rep,
            RepDescriptor::irreducible(IrrepLabel::Rotation(2), 1)
        );

        let s = disk_spectrum(15.0, &tol()).unwrap();
        assert_eq!(s.len(), 4);
        assert!((s[3].eigenvalue - 14.68197).abs() < 1e-4);
        assert_eq!(s[3].rep, RepDescriptor::trivial(1));
        assert_eq!((s[3].angular_index, s[3].root_index), (0, 1));

        let s = disk_spectrum(0.5, &tol()).unwrap();
        assert_eq!(s, vec![SpectrumEntry::constants()]);

        assert!(disk_spectrum(0.0, &tol()).is_err());
    }

    #[test]
    fn disk_spectrum_is_prefix_stable() {
        let short = disk_spectrum(40.0, &tol()).unwrap();
        let long = disk_spectrum(90.0, &tol()).unwrap();
        assert_eq!(short[..], long[..short.len()]);
        assert!(long[short.len()].eigenvalue > 40.0);
    }

    #[test]
    fn merging_sums_representations() {
        let a = SpectrumEntry {
            eigenvalue: 5.0,
            angular_index: 2,
            root_index: 1,
            rep: RepDescriptor::irreducible(IrrepLabel::Rotation(2), 1),
            exact: None,
        };
        let mut b = a.clone();
        b.eigenvalue = 5.0 + 1e-9;
        b.angular_index = 1;
        b.rep = RepDescriptor::irreducible(IrrepLabel::Rotation(1), 1);
        let merged = merge_entries(vec![a, b], &tol());
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].angular_index, 1);
        assert_eq!(
            merged[0].rep,
            RepDescriptor::new(
                0,
                [(IrrepLabel::Rotation(1), 1), (IrrepLabel::Rotation(2), 1)]
            )
        );
    }

    #[test]
    fn ball_nontriviality() {
        let t = tol();
        assert!(!ball_rep_nontrivial(&SpectrumEntry::constants(), 3, &t).unwrap());

        let mut e = SpectrumEntry {
            eigenvalue: 7.0,
            angular_index: 1,
            root_index: 1,
            rep: RepDescriptor::irreducible(IrrepLabel::Harmonic(1), 1),
            exact: None,
        };
        assert!(ball_rep_nontrivial(&e, 3, &t).unwrap());

        // feed back a root of the rotation-invariant condition
        let x = neumann_radial_roots(0, 3, 2, t.root).unwrap()[1];
        e.eigenvalue = x * x;
        e.angular_index = 0;
        e.rep = RepDescriptor::trivial(1);
        assert!(!ball_rep_nontrivial(&e, 3, &t).unwrap());

        e.eigenvalue = x * x + 0.5;
        assert!(ball_rep_nontrivial(&e, 3, &t).unwrap());

        let x4 = neumann_radial_roots(0, 4, 1, t.root).unwrap()[0];
        e.eigenvalue = x4 * x4;
        assert!(!ball_rep_nontrivial(&e, 4, &t).unwrap());
        assert!(ball_rep_nontrivial(&e, 3, &t).unwrap());

        assert!(ball_rep_nontrivial(&e, 2, &t).is_err());
    }

    #[test]
    fn custom_spectrum_loading() {
        let t = tol();
        let doc = json!({
            "domain": "custom",
            "entries": [
                {"eigenvalue": 0, "rep": {"trivial": 1}},
                {"eigenvalue": 2.5, "rep": {"irreps": {"rot:1": 1}}, "angular_index": 1, "root_index": 1}
            ]
        });
        let s = load_custom_spectrum(&doc, &t).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].exact, Some(0));
        assert_eq!(s[1].rep.to_so2().unwrap(), SO2Rep::rotation(1, 1));

        let no_zero = json!({"entries": [{"eigenvalue": 1.0, "rep": {"trivial": 1}}]});
        assert!(matches!(
            load_custom_spectrum(&no_zero, &t),
            Err(Error::Validation(_))
        ));

        let descending = json!({"entries": [
            {"eigenvalue": 0, "rep": {"trivial": 1}},
            {"eigenvalue": 4.0, "rep": {"trivial": 1}},
            {"eigenvalue": 3.0, "rep": {"trivial": 1}}
        ]});
        assert!(matches!(
            load_custom_spectrum(&descending, &t),
            Err(Error::Validation(_))
        ));

        let negative = json!({"entries": [
            {"eigenvalue": 0, "rep": {"trivial": 1}},
            {"eigenvalue": 3.0, "rep": {"irreps": {"rot:2": -1}}}
        ]});
        assert!(matches!(
            load_custom_spectrum(&negative, &t),
            Err(Error::Validation(_))
        ));

        let malformed = json!({"entries": [{"eigenvalue": "zero"}]});
        assert!(matches!(
            load_custom_spectrum(&malformed, &t),
            Err(Error::Schema(_))
        ));

        let duplicate = json!({"entries": [
            {"eigenvalue": 0, "rep": {"trivial": 1}},
            {"eigenvalue": 3.0, "rep": {"rot": {"1": 1}}},
            {"eigenvalue": 3.0000000001, "rep": {"irreps": {"rot:2": 1}}}
        ]});
        let s = load_custom_spectrum(&duplicate, &t).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].rep.to_so2().unwrap(), SO2Rep::new(0, [(1, 1), (2, 1)]));
    }

    #[test]
    fn rep_descriptor_roundtrip_and_labels() {
        let r = RepDescriptor::new(
            2,
            [
                (IrrepLabel::Rotation(3), 1),
                (IrrepLabel::Harmonic(2), 4),
                (IrrepLabel::Named("A2".into()), 1),
            ],
        );
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"trivial":2,"irreps":{"A2":1,"rot:3":1,"sph:2":4}}"#);
        assert_eq!(serde_json::from_str::<RepDescriptor>(&s).unwrap(), r);
        assert!(r.to_so2().is_err());
        assert!("rot:0".parse::<IrrepLabel>().is_err());
        assert!("trivial".parse::<IrrepLabel>().is_err());
    }
}
