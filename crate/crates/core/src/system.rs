//! Spectral model of the elliptic system −AΔu = ∇_u F(u, λ) with Neumann data:
//! linearization eigenvalues, the candidate parameter set Λ, and kernel representations.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::spectral::cache::RootCache;
use crate::spectral::{
    load_custom_spectrum_doc, DomainKind, RepDescriptor, Spectrum, SpectrumEntry, Tolerances,
};

/// An eigenvalue of B₁ or B₂ with its multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct BEigen {
    pub value: f64,
    pub mult: u64,
    /// Set when the value was given as an integer.
    pub exact: Option<i64>,
}

impl BEigen {
    pub fn new(value: f64, mult: u64) -> Self {
        Self {
            value,
            mult,
            exact: None,
        }
    }

    pub fn int(value: i64, mult: u64) -> Self {
        Self {
            value: value as f64,
            mult,
            exact: Some(value),
        }
    }
}

/// Where the Laplacian spectrum of the domain comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum SpectrumSource {
    Inline(Value),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub enum DomainSpec {
    /// Unit disk; the spectrum is computed.
    Disk,
    /// Unit N-ball, N ≥ 3, with a user-supplied spectrum.
    Ball { dim: u32, spectrum: SpectrumSource },
    /// Any other invariant domain with a user-supplied spectrum.
    Custom { spectrum: SpectrumSource },
}

/// Which diagonal block of B an eigenvalue belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Block {
    B1,
    B2,
}

/// Algebraic data of the system: A = diag(−I_{p₁}, I_{p₂}), B = diag(B₁, B₂).
#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec {
    pub p1: u64,
    pub p2: u64,
    pub b1: Vec<BEigen>,
    pub b2: Vec<BEigen>,
    /// Multiplicity of 0 in σ(B), i.e. the dimension of the orbit of u₀.
    pub mu_b0: u64,
    pub domain: DomainSpec,
    /// σ(B₁) = {0^{μ}, 1^{p₁−μ}} and σ(B₂) = {1^{p₂}}.
    pub a9: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBEigen {
    value: serde_json::Number,
    mult: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDomain {
    #[serde(rename = "type")]
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spectrum: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spectrum_file: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystemSpec {
    p1: i64,
    p2: i64,
    #[serde(default)]
    b1: Vec<RawBEigen>,
    #[serde(default)]
    b2: Vec<RawBEigen>,
    #[serde(default)]
    mu_b0: i64,
    domain: RawDomain,
    #[serde(default)]
    a9: bool,
}

fn nonneg(name: &str, n: i64) -> Result<u64> {
    u64::try_from(n).map_err(|_| Error::Validation(format!("{name} must be ≥ 0, got {n}")))
}

fn eigen_list(name: &str, raw: Vec<RawBEigen>) -> Result<Vec<BEigen>> {
    let mut merged: Vec<BEigen> = Vec::new();
    for r in raw {
        let value = r.value.as_f64().filter(|v| v.is_finite()).ok_or_else(|| {
            Error::Validation(format!("{name}: eigenvalue {} is not finite", r.value))
        })?;
        let mult = nonneg(&format!("{name} multiplicity"), r.mult)?;
        if mult == 0 {
            return Err(Error::Validation(format!(
                "{name}: multiplicity of {value} must be positive"
            )));
        }
        let exact = r.value.as_i64();
        match merged.iter_mut().find(|e| e.value == value) {
            Some(e) => e.mult += mult,
            None => merged.push(BEigen { value, mult, exact }),
        }
    }
    merged.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(merged)
}

fn raw_eigen(list: &[BEigen]) -> Vec<RawBEigen> {
    list.iter()
        .map(|e| RawBEigen {
            value: match e.exact {
                Some(i) => i.into(),
                None => serde_json::Number::from_f64(e.value).expect("finite"),
            },
            mult: e.mult as i64,
        })
        .collect()
}

impl SpectrumSource {
    fn from_raw(spectrum: Option<Value>, file: Option<String>) -> Result<Self> {
        match (spectrum, file) {
            (Some(v), None) => Ok(SpectrumSource::Inline(v)),
            (None, Some(f)) => Ok(SpectrumSource::File(f.into())),
            _ => Err(Error::Schema(
                "domain needs exactly one of \"spectrum\" or \"spectrum_file\"".into(),
            )),
        }
    }

    fn into_raw(self) -> (Option<Value>, Option<String>) {
        match self {
            SpectrumSource::Inline(v) => (Some(v), None),
            SpectrumSource::File(p) => (None, Some(p.to_string_lossy().into_owned())),
        }
    }

    /// Reads the document; relative paths resolve against `base_dir`.
    pub fn load(&self, base_dir: Option<&Path>) -> Result<Value> {
        match self {
            SpectrumSource::Inline(v) => Ok(v.clone()),
            SpectrumSource::File(p) => {
                let path = match base_dir {
                    Some(dir) if p.is_relative() => dir.join(p),
                    _ => p.clone(),
                };
                crate::config::read_document(&path)
            }
        }
    }
}

impl SystemSpec {
    /// Parses and validates a system document.
    pub fn from_value(v: &Value) -> Result<Self> {
        let raw: RawSystemSpec =
            serde_json::from_value(v.clone()).map_err(|e| Error::Schema(format!("system: {e}")))?;
        let domain = match raw.domain.kind.as_str() {
            "disk" => {
                if raw.domain.spectrum.is_some()
                    || raw.domain.spectrum_file.is_some()
                    || raw.domain.dim.is_some()
                {
                    return Err(Error::Schema(
                        "the disk domain takes no spectrum or dim".into(),
                    ));
                }
                DomainSpec::Disk
            }
            "ball" => DomainSpec::Ball {
                dim: raw
                    .domain
                    .dim
                    .ok_or_else(|| Error::Schema("ball domain needs \"dim\"".into()))?,
                spectrum: SpectrumSource::from_raw(raw.domain.spectrum, raw.domain.spectrum_file)?,
            },
            "custom" => DomainSpec::Custom {
                spectrum: SpectrumSource::from_raw(raw.domain.spectrum, raw.domain.spectrum_file)?,
            },
            other => return Err(Error::Schema(format!("unknown domain type {other:?}"))),
        };
        let spec = SystemSpec {
            p1: nonneg("p1", raw.p1)?,
            p2: nonneg("p2", raw.p2)?,
            b1: eigen_list("b1", raw.b1)?,
            b2: eigen_list("b2", raw.b2)?,
            mu_b0: nonneg("mu_b0", raw.mu_b0)?,
            domain,
            a9: raw.a9,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_value(&self) -> Value {
        let (kind, dim, source) = match self.domain.clone() {
            DomainSpec::Disk => ("disk", None, None),
            DomainSpec::Ball { dim, spectrum } => ("ball", Some(dim), Some(spectrum)),
            DomainSpec::Custom { spectrum } => ("custom", None, Some(spectrum)),
        };
        let (spectrum, spectrum_file) = source.map_or((None, None), SpectrumSource::into_raw);
        serde_json::to_value(RawSystemSpec {
            p1: self.p1 as i64,
            p2: self.p2 as i64,
            b1: raw_eigen(&self.b1),
            b2: raw_eigen(&self.b2),
            mu_b0: self.mu_b0 as i64,
            domain: RawDomain {
                kind: kind.into(),
                dim,
                spectrum,
                spectrum_file,
            },
            a9: self.a9,
        })
        .expect("system spec serializes")
    }

    /// The system satisfying `a9` on the given domain.
    pub fn a9(p1: u64, p2: u64, mu_b0: u64, domain: DomainSpec) -> Result<Self> {
        if mu_b0 > p1 {
            return Err(Error::Validation(format!(
                "mu_b0 = {mu_b0} exceeds p1 = {p1}"
            )));
        }
        let mut b1 = Vec::new();
        if mu_b0 > 0 {
            b1.push(BEigen::int(0, mu_b0));
        }
        if p1 > mu_b0 {
            b1.push(BEigen::int(1, p1 - mu_b0));
        }
        let b2 = if p2 > 0 {
            vec![BEigen::int(1, p2)]
        } else {
            Vec::new()
        };
        let spec = SystemSpec {
            p1,
            p2,
            b1,
            b2,
            mu_b0,
            domain,
            a9: true,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let total = |l: &[BEigen]| l.iter().map(|e| e.mult).sum::<u64>();
        if self.p1 + self.p2 == 0 {
            return Err(Error::Validation("p1 + p2 must be ≥ 1".into()));
        }
        if total(&self.b1) != self.p1 {
            return Err(Error::Validation(format!(
                "b1 multiplicities sum to {}, expected p1 = {}",
                total(&self.b1),
                self.p1
            )));
        }
        if total(&self.b2) != self.p2 {
            return Err(Error::Validation(format!(
                "b2 multiplicities sum to {}, expected p2 = {}",
                total(&self.b2),
                self.p2
            )));
        }
        for e in self.b1.iter().chain(&self.b2) {
            if e.mult == 0 || !e.value.is_finite() {
                return Err(Error::Validation(format!(
                    "invalid eigenvalue {} ×{}",
                    e.value, e.mult
                )));
            }
        }
        let zeros = self.zero_multiplicity(Block::B1) + self.zero_multiplicity(Block::B2);
        if self.mu_b0 > zeros {
            return Err(Error::Validation(format!(
                "mu_b0 = {} exceeds the multiplicity {zeros} of 0 in σ(B)",
                self.mu_b0
            )));
        }
        if let DomainSpec::Ball { dim, .. } = self.domain {
            if dim < 3 {
                return Err(Error::Validation(format!(
                    "ball dimension {dim} must be ≥ 3"
                )));
            }
        }
        if self.a9 {
            let mults = |l: &[BEigen]| -> BTreeMap<i64, u64> {
                l.iter()
                    .map(|e| {
                        (
                            if e.value == 0.0 {
                                0
                            } else if e.value == 1.0 {
                                1
                            } else {
                                -1
                            },
                            e.mult,
                        )
                    })
                    .collect()
            };
            let mut want1 = BTreeMap::new();
            if self.mu_b0 > 0 {
                want1.insert(0, self.mu_b0);
            }
            if self.p1 > self.mu_b0 {
                want1.insert(1, self.p1 - self.mu_b0);
            }
            let mut want2 = BTreeMap::new();
            if self.p2 > 0 {
                want2.insert(1, self.p2);
            }
            if self.b1.len() != want1.len() || mults(&self.b1) != want1 || mults(&self.b2) != want2
            {
                return Err(Error::Validation(
                    "a9 requires σ(B₁) = {0^mu_b0, 1^(p1−mu_b0)} and σ(B₂) = {1^p2}".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn block(&self, block: Block) -> &[BEigen] {
        match block {
            Block::B1 => &self.b1,
            Block::B2 => &self.b2,
        }
    }

    fn zero_multiplicity(&self, block: Block) -> u64 {
        self.block(block)
            .iter()
            .filter(|e| e.value == 0.0)
            .map(|e| e.mult)
            .sum()
    }

    /// (m⁺(B), m⁻(B)): summed multiplicities of the positive and negative eigenvalues of B.
    pub fn morse_indices(&self) -> (u64, u64) {
        let all = self.b1.iter().chain(&self.b2);
        let plus = all.clone().filter(|e| e.value > 0.0).map(|e| e.mult).sum();
        let minus = all.filter(|e| e.value < 0.0).map(|e| e.mult).sum();
        (plus, minus)
    }

    /// (q₁, q₂) = (p₁ − μ_B(0), p₂).
    pub fn exponents(&self) -> (u64, u64) {
        (self.p1 - self.mu_b0, self.p2)
    }

    /// Largest α that a parameter in `[lo, hi]` can pair with through λb = ±α.
    pub fn required_eigenvalue_bound(&self, lo: f64, hi: f64) -> f64 {
        let mut need = 0f64;
        for e in &self.b1 {
            need = need.max(lo * e.value).max(hi * e.value);
        }
        for e in &self.b2 {
            need = need.max(-lo * e.value).max(-hi * e.value);
        }
        need
    }
}

/// One eigenvalue of the linearization on the eigenspace of α_k paired with b_j.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearizationEigenvalue {
    /// (α_k − λb_j)/(1+α_k) on the B₁ block, (−α_k − λb_j)/(1+α_k) on the B₂ block.
    pub value: f64,
    /// Real dimension of the eigenspace times μ_{B_i}(b_j), when the
    /// dimensions of its irreducibles are known.
    pub multiplicity: Option<u64>,
    /// Whether the numerator vanishes within the merge tolerance.
    pub vanishes: bool,
    /// 1-based index k of α_k in the spectrum.
    pub entry: usize,
    pub block: Block,
    pub b: f64,
    /// The eigenspace repeated μ_{B_i}(b_j) times.
    pub rep: RepDescriptor,
}

/// Kernel of the Hessian on the normal slice at λ₀, split by block.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReps {
    pub v1: RepDescriptor,
    pub v2: RepDescriptor,
}

impl KernelReps {
    pub fn is_zero(&self) -> bool {
        self.v1.is_zero() && self.v2.is_zero()
    }
}

/// A member of Λ, exact when both α and b were supplied as integers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaMember {
    pub value: f64,
    pub exact: Option<Ratio<i64>>,
}

/// A system together with a materialized spectrum.
#[derive(Clone, Debug)]
pub struct SystemModel {
    pub spec: SystemSpec,
    pub spectrum: Spectrum,
    pub tol: Tolerances,
}

impl SystemModel {
    pub fn new(spec: SystemSpec, spectrum: Spectrum, tol: Tolerances) -> Result<Self> {
        spec.validate()?;
        tol.validate()?;
        let compatible = matches!(
            (&spec.domain, spectrum.domain),
            (DomainSpec::Disk, DomainKind::Disk) | (DomainSpec::Custom { .. }, DomainKind::Custom)
        ) || matches!((&spec.domain, spectrum.domain),
                (DomainSpec::Ball { dim, .. }, DomainKind::Ball { dim: d }) if *dim == d);
        if !compatible {
            return Err(Error::Validation(format!(
                "spectrum of {:?} does not belong to the system's domain",
                spectrum.domain
            )));
        }
        Ok(Self {
            spec,
            spectrum,
            tol,
        })
    }

    /// Materializes the spectrum: computed up to `disk_bound` on the disk,
    /// loaded from the referenced document otherwise.
    pub fn build(
        spec: SystemSpec,
        tol: Tolerances,
        disk_bound: f64,
        base_dir: Option<&Path>,
        cache: Option<&mut RootCache>,
    ) -> Result<Self> {
        let spectrum = match &spec.domain {
            DomainSpec::Disk => Spectrum::disk(disk_bound, &tol, cache)?,
            DomainSpec::Ball { dim, spectrum } => Spectrum::from_custom(
                DomainKind::Ball { dim: *dim },
                load_custom_spectrum_doc(&spectrum.load(base_dir)?, &tol)?,
            ),
            DomainSpec::Custom { spectrum } => Spectrum::from_custom(
                DomainKind::Custom,
                load_custom_spectrum_doc(&spectrum.load(base_dir)?, &tol)?,
            ),
        };
        Self::new(spec, spectrum, tol)
    }

    fn blocks(&self) -> impl Iterator<Item = (Block, &BEigen)> {
        self.spec
            .b1
            .iter()
            .map(|b| (Block::B1, b))
            .chain(self.spec.b2.iter().map(|b| (Block::B2, b)))
    }

    /// λb = α on B₁, λb = −α on B₂, within the merge tolerance.
    fn pair_matches(&self, lambda: f64, block: Block, b: f64, alpha: f64) -> bool {
        let target = match block {
            Block::B1 => alpha,
            Block::B2 => -alpha,
        };
        self.tol.same(lambda * b, target)
    }

    /// Ambient dimension used to size spherical-harmonic irreducibles.
    fn ambient_dim(&self) -> Option<u32> {
        match self.spectrum.domain {
            DomainKind::Disk => Some(2),
            DomainKind::Ball { dim } => Some(dim),
            DomainKind::Custom => None,
        }
    }

    /// Eigenvalues of the linearization on ⊕_{k ≤ k_max} H_k at λ.
    ///
    /// Pairs of α = 0 with b = 0 are left out: they span the tangent space of the
    /// orbit of trivial solutions, not the normal slice.
    pub fn linearization_eigenvalues(
        &self,
        lambda: f64,
        k_max: usize,
    ) -> Result<Vec<LinearizationEigenvalue>> {
        if k_max == 0 || k_max > self.spectrum.entries.len() {
            return Err(Error::Precondition(format!(
                "k_max = {k_max} outside 1..={}",
                self.spectrum.entries.len()
            )));
        }
        let mut out = Vec::new();
        for (k, entry) in self.spectrum.entries[..k_max].iter().enumerate() {
            let alpha = entry.eigenvalue;
            let dim = rep_dim(&entry.rep, self.ambient_dim());
            for (block, b) in self.blocks() {
                if alpha == 0.0 && b.value == 0.0 {
                    continue;
                }
                let numerator = match block {
                    Block::B1 => alpha - lambda * b.value,
                    Block::B2 => -alpha - lambda * b.value,
                };
                out.push(LinearizationEigenvalue {
                    value: numerator / (1.0 + alpha),
                    multiplicity: dim.map(|d| d * b.mult),
                    vanishes: self.pair_matches(lambda, block, b.value, alpha),
                    entry: k + 1,
                    block,
                    b: b.value,
                    rep: entry.rep.repeat(b.mult),
                });
            }
        }
        Ok(out)
    }

    fn members(&self, lo: f64, hi: f64) -> Vec<LambdaMember> {
        let mut out = Vec::new();
        for entry in &self.spectrum.entries {
            for (block, b) in self.blocks() {
                if b.value == 0.0 {
                    continue;
                }
                let sign = match block {
                    Block::B1 => 1,
                    Block::B2 => -1,
                };
                // normalize −0 so that 0 ∈ Λ prints and sorts as 0
                let value = sign as f64 * entry.eigenvalue / b.value + 0.0;
                let exact = match (entry.exact, b.exact) {
                    (Some(a), Some(bb)) => Some(Ratio::new(sign * a, bb)),
                    _ => None,
                };
                if value >= lo && value <= hi {
                    out.push(LambdaMember { value, exact });
                }
            }
        }
        out.sort_by(|a, b| a.value.total_cmp(&b.value));
        let mut merged: Vec<LambdaMember> = Vec::with_capacity(out.len());
        for m in out {
            let duplicate =
                merged
                    .last()
                    .is_some_and(|last: &LambdaMember| match (last.exact, m.exact) {
                        (Some(x), Some(y)) => x == y,
                        _ => self.tol.same(last.value, m.value),
                    });
            if !duplicate {
                merged.push(m);
            }
        }
        merged
    }

    /// Λ ∩ [lo, hi] in ascending order, with exactness information.
    pub fn lambda_members(&self, lo: f64, hi: f64) -> Result<Vec<LambdaMember>> {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Validation(format!(
                "window [{lo}, {hi}] is not a bounded interval"
            )));
        }
        self.spectrum
            .require(self.spec.required_eigenvalue_bound(lo, hi), &self.tol)?;
        Ok(self.members(lo, hi))
    }

    /// Λ ∩ [lo, hi] in ascending order.
    pub fn lambda_set(&self, lo: f64, hi: f64) -> Result<Vec<f64>> {
        Ok(self
            .lambda_members(lo, hi)?
            .into_iter()
            .map(|m| m.value)
            .collect())
    }

    /// Whether some pair (α, b) satisfies λb = ±α.
    pub fn is_member(&self, lambda: f64) -> Result<bool> {
        Ok(!self.kernel_reps(lambda)?.is_zero())
    }

    /// V₁(λ₀) and V₂(λ₀).
    pub fn kernel_reps(&self, lambda0: f64) -> Result<KernelReps> {
        if !lambda0.is_finite() {
            return Err(Error::Validation(format!("λ₀ = {lambda0} is not finite")));
        }
        self.spectrum.require(
            self.spec.required_eigenvalue_bound(lambda0, lambda0),
            &self.tol,
        )?;
        let mut out = KernelReps::default();
        for entry in &self.spectrum.entries {
            for (block, b) in self.blocks() {
                if b.value == 0.0 || !self.pair_matches(lambda0, block, b.value, entry.eigenvalue) {
                    continue;
                }
                let part = entry.rep.repeat(b.mult);
                match block {
                    Block::B1 => out.v1 = out.v1.oplus(&part),
                    Block::B2 => out.v2 = out.v2.oplus(&part),
                }
            }
        }
        Ok(out)
    }

    /// 1-based index k₀ with α_{k₀} = |λ₀| (matched within tolerance).
    pub fn entry_index(&self, alpha: f64) -> Option<usize> {
        self.spectrum.index_of(alpha, &self.tol)
    }

    pub fn entry(&self, k: usize) -> Option<&SpectrumEntry> {
        k.checked_sub(1).and_then(|i| self.spectrum.entries.get(i))
    }

    /// Real dimension of a representation of the domain's symmetry group, if known.
    pub fn rep_dim(&self, rep: &RepDescriptor) -> Option<u64> {
        rep_dim(rep, self.ambient_dim())
    }
}

/// Real dimension: rotation irreducibles are 2-dimensional; degree-l harmonics in
/// N variables have dimension C(N+l−1, l) − C(N+l−3, l−2); named irreducibles are unknown.
pub fn rep_dim(rep: &RepDescriptor, ambient: Option<u32>) -> Option<u64> {
    use crate::spectral::IrrepLabel;
    let mut total = rep.trivial_dim();
    for (label, &m) in rep.irreducibles() {
        let d = match label {
            IrrepLabel::Rotation(_) => 2,
            IrrepLabel::Harmonic(l) => harmonic_dim(ambient?, *l),
            IrrepLabel::Named(_) => return None,
        };
        total += d * m;
    }
    Some(total)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn harmonic_dim(n: u32, l: u64) -> u64 {
    let n = n as u64;
    let lower = if l >= 2 {
        binomial(n + l - 3, l - 2)
    } else {
        0
    };
    binomial(n + l - 1, l) - lower
}

/// Half the distance from λ₀ to the nearest other member; 1 for a singleton.
pub fn epsilon_gap(lambda0: f64, members: &[f64], tol: &Tolerances) -> Result<f64> {
    let pos = members
        .iter()
        .position(|&m| tol.same(m, lambda0))
        .ok_or(Error::NotAMember(lambda0))?;
    let here = members[pos];
    let gap = members
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pos)
        .map(|(_, &m)| (m - here).abs())
        .fold(f64::INFINITY, f64::min);
    Ok(if gap.is_finite() { gap / 2.0 } else { 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::IrrepLabel;
    use serde_json::json;

    const A2: f64 = 3.38996;

    fn disk_a9(p1: u64, p2: u64, mu: u64, bound: f64) -> SystemModel {
        let spec = SystemSpec::a9(p1, p2, mu, DomainSpec::Disk).unwrap();
        SystemModel::build(spec, Tolerances::default(), bound, None, None).unwrap()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-4)
    }

    #[test]
    fn lambda_set_under_a9() {
        let m = disk_a9(2, 0, 0, 20.0);
        let l = m.lambda_set(0.0, 15.0).unwrap();
        assert!(close(&l, &[0.0, A2, 9.32836, 14.68197]), "{l:?}");

        let m = disk_a9(0, 1, 0, 20.0);
        let l = m.lambda_set(-10.0, 0.0).unwrap();
        assert!(close(&l, &[-9.32836, -A2, 0.0]), "{l:?}");

        let m = disk_a9(1, 1, 1, 20.0);
        assert!(close(&m.lambda_set(-4.0, 4.0).unwrap(), &[-A2, 0.0]));
    }

    #[test]
    fn lambda_set_without_nonzero_b_is_empty() {
        let spec = SystemSpec::from_value(&json!({
            "p1": 1, "p2": 1, "b1": [{"value": 0, "mult": 1}], "b2": [{"value": 0, "mult": 1}],
            "mu_b0": 2, "domain": {"type": "disk"}
        }))
        .unwrap();
        let m = SystemModel::build(spec, Tolerances::default(), 10.0, None, None).unwrap();
        assert!(m.lambda_set(-5.0, 5.0).unwrap().is_empty());
        assert!(m.kernel_reps(0.0).unwrap().is_zero());
    }

    #[test]
    fn insufficient_spectrum() {
        let m = disk_a9(1, 0, 0, 10.0);
        assert!(m.lambda_set(0.0, 9.0).is_ok());
        assert!(matches!(
            m.lambda_set(0.0, 20.0),
            Err(Error::InsufficientSpectrum { .. })
        ));
    }

    #[test]
    fn kernel_reps_examples() {
        let m = disk_a9(2, 0, 0, 10.0);
        let a2 = m.spectrum.entries[1].eigenvalue;
        let k = m.kernel_reps(a2).unwrap();
        assert_eq!(k.v1, RepDescriptor::irreducible(IrrepLabel::Rotation(1), 2));
        assert!(k.v2.is_zero());
        assert!(m.kernel_reps(5.0).unwrap().is_zero());

        let m = disk_a9(0, 3, 0, 10.0);
        let k = m.kernel_reps(-a2).unwrap();
        assert!(k.v1.is_zero());
        assert_eq!(k.v2, RepDescriptor::irreducible(IrrepLabel::Rotation(1), 3));
    }

    #[test]
    fn linearization_examples() {
        let m = disk_a9(2, 1, 0, 10.0);
        let a2 = m.spectrum.entries[1].eigenvalue;
        let eig = m.linearization_eigenvalues(a2, 3).unwrap();
        let zeros: Vec<_> = eig.iter().filter(|e| e.vanishes).collect();
        assert_eq!(zeros.len(), 1);
        assert_eq!(zeros[0].multiplicity, Some(4));
        assert!(zeros[0].value.abs() < 1e-12);
        for e in eig.iter().filter(|e| e.block == Block::B2) {
            assert!(e.value < 0.0);
        }
        for e in m.linearization_eigenvalues(0.0, 3).unwrap() {
            if e.block == Block::B1 {
                assert!(e.value >= 0.0);
            }
        }
    }

    #[test]
    fn epsilon_gap_examples() {
        let t = Tolerances::default();
        assert!((epsilon_gap(A2, &[0.0, A2, 9.32836], &t).unwrap() - 1.69498).abs() < 1e-12);
        assert_eq!(epsilon_gap(0.0, &[0.0], &t).unwrap(), 1.0);
        assert!(matches!(
            epsilon_gap(1.0, &[0.0], &t),
            Err(Error::NotAMember(_))
        ));
    }

    #[test]
    fn exact_members_from_integer_data() {
        let spec = SystemSpec::from_value(&json!({
            "p1": 2, "p2": 0, "b1": [{"value": 2, "mult": 1}, {"value": 4, "mult": 1}],
            "domain": {"type": "custom", "spectrum": {"entries": [
                {"eigenvalue": 0, "rep": {"trivial": 1}},
                {"eigenvalue": 2, "rep": {"irreps": {"rot:1": 1}}},
                {"eigenvalue": 4, "rep": {"irreps": {"rot:2": 1}}}
            ], "complete_up_to": 10}}
        }))
        .unwrap();
        let m = SystemModel::build(spec, Tolerances::default(), 1.0, None, None).unwrap();
        let members = m.lambda_members(0.0, 2.0).unwrap();
        let values: Vec<f64> = members.iter().map(|x| x.value).collect();
        assert_eq!(values, vec![0.0, 0.5, 1.0, 2.0]);
        assert!(members.iter().all(|x| x.exact.is_some()));
        // α = 2 with b = 2 and α = 4 with b = 4 both give λ = 1
        let k = m.kernel_reps(1.0).unwrap();
        assert_eq!(
            k.v1,
            RepDescriptor::new(
                0,
                [(IrrepLabel::Rotation(1), 1), (IrrepLabel::Rotation(2), 1)]
            )
        );
    }

    #[test]
    fn spec_validation() {
        let base = json!({"p1": 2, "p2": 1, "b1": [{"value": 1, "mult": 2}],
                          "b2": [{"value": 1, "mult": 1}], "mu_b0": 0,
                          "domain": {"type": "disk"}, "a9": true});
        let spec = SystemSpec::from_value(&base).unwrap();
        assert_eq!(SystemSpec::from_value(&spec.to_value()).unwrap(), spec);

        let mut bad = base.clone();
        bad["p1"] = json!(3);
        assert!(matches!(
            SystemSpec::from_value(&bad),
            Err(Error::Validation(_))
        ));

        let mut bad = base.clone();
        bad["b1"] = json!([{"value": 2, "mult": 2}]);
        assert!(matches!(
            SystemSpec::from_value(&bad),
            Err(Error::Validation(_))
        ));

        let mut bad = base.clone();
        bad["mu_b0"] = json!(1);
        assert!(matches!(
            SystemSpec::from_value(&bad),
            Err(Error::Validation(_))
        ));

        let mut bad = base.clone();
        bad["domain"] = json!({"type": "torus"});
        assert!(matches!(
            SystemSpec::from_value(&bad),
            Err(Error::Schema(_))
        ));

        let zero = json!({"p1": 0, "p2": 0, "domain": {"type": "disk"}});
        assert!(matches!(
            SystemSpec::from_value(&zero),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn harmonic_dimensions() {
        assert_eq!(harmonic_dim(3, 0), 1);
        assert_eq!(harmonic_dim(3, 1), 3);
        assert_eq!(harmonic_dim(3, 2), 5);
        assert_eq!(harmonic_dim(4, 2), 9);
        assert_eq!(harmonic_dim(2, 3), 2);
    }
}
