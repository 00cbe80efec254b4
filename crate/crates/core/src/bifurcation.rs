//! Global-bifurcation verdicts, exact bifurcation indices in U(SO(2)), the
//! Rabinowitz exclusion test and unboundedness of continua.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::{deg_minus_id, EulerSO2, SO2Rep};
use crate::spectral::{RepDescriptor, SpectrumEntry};
use crate::system::{KernelReps, SystemModel};

/// Largest Λ for which all index subsets are enumerated.
pub const MAX_SUBSET_CANDIDATES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Glob {
    Bifurcates,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Justification {
    /// V₁(λ₀) and V₂(λ₀) differ beyond even trivial summands.
    RepNonEquivalence,
    /// λ₀ = 0, decided by the parity of m⁺(B) + m⁻(B).
    ZeroCaseParity,
    /// No kernel on the normal slice.
    KernelEmpty,
    /// V₁(λ₀) ≅ V₂(λ₀) up to even trivial summands; the test is silent.
    EquivalentModEvenTrivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Unbounded {
    Unbounded,
    NoVerdict,
}

/// What a bounded continuum from ±α_{k₀} would have to satisfy, given
/// q_sign > 0 even and a nontrivial eigenspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedConsequences {
    /// Name of the opposite exponent, "q1" or "q2".
    pub other_exponent: String,
    /// A bounded continuum forces the opposite exponent to be positive and odd.
    pub other_must_be_positive_odd: bool,
    /// Whether the opposite exponent actually is positive and odd.
    pub other_is_positive_odd: bool,
    /// A bounded continuum returns to trivial solutions at parameters of this sign.
    pub meets_parameters_of_sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnboundedReport {
    pub verdict: Unbounded,
    pub q1: u64,
    pub q2: u64,
    pub eigenspace_nontrivial: bool,
    /// Some nontrivial solutions emanate from ±α_{k₀} (q_sign > 0, nontrivial eigenspace).
    pub continuum_nonempty: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounded_consequences: Option<BoundedConsequences>,
}

/// The full report for one parameter value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BifurcationVerdict {
    pub lambda0: f64,
    pub in_lambda: bool,
    pub kernel: KernelReps,
    pub glob: Glob,
    pub justification: Justification,
    /// Exact index in U(SO(2)); present under `a9` on SO(2)-typed spectra.
    pub bif: Option<EulerSO2>,
    pub unbounded: Unbounded,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounded_consequences: Option<BoundedConsequences>,
}

/// Sufficient test for λ₀ ≠ 0: V₁(λ₀) ≇ V₂(λ₀) modulo even trivial summands.
pub fn check_glob(model: &SystemModel, lambda0: f64) -> Result<(Glob, Justification)> {
    if lambda0 == 0.0 {
        return Err(Error::Precondition("check_glob needs λ₀ ≠ 0".into()));
    }
    Ok(glob_from_kernel(&model.kernel_reps(lambda0)?))
}

/// Decision from the kernel representations alone.
pub fn glob_from_kernel(kernel: &KernelReps) -> (Glob, Justification) {
    if kernel.is_zero() {
        (Glob::Inconclusive, Justification::KernelEmpty)
    } else if kernel.v1.equiv_mod_even_trivial(&kernel.v2) {
        (Glob::Inconclusive, Justification::EquivalentModEvenTrivial)
    } else {
        (Glob::Bifurcates, Justification::RepNonEquivalence)
    }
}

/// λ₀ = 0 bifurcates when (−1)^{m⁺(B)} ≠ (−1)^{m⁻(B)}.
pub fn check_glob_zero(model: &SystemModel) -> (Glob, Justification) {
    let (plus, minus) = model.spec.morse_indices();
    if plus + minus == 0 {
        return (Glob::Inconclusive, Justification::KernelEmpty);
    }
    let glob = if (plus + minus) % 2 == 1 {
        Glob::Bifurcates
    } else {
        Glob::Inconclusive
    };
    (glob, Justification::ZeroCaseParity)
}

fn so2(rep: &RepDescriptor) -> Result<SO2Rep> {
    rep.to_so2()
}

fn so2_entry(model: &SystemModel, k: usize) -> Result<SO2Rep> {
    let entry = model
        .entry(k)
        .ok_or_else(|| Error::Precondition(format!("no eigenvalue with index {k}")))?;
    so2(&entry.rep)
}

/// deg(−Id, V₁) − deg(−Id, V₂) for λ₀ > 0, the reverse for λ₀ < 0.
/// Nonzero exactly when the bifurcation index is nonzero.
pub fn bif_difference(model: &SystemModel, lambda0: f64) -> Result<EulerSO2> {
    if lambda0 == 0.0 {
        return Err(Error::Precondition("bif_difference needs λ₀ ≠ 0".into()));
    }
    let kernel = model.kernel_reps(lambda0)?;
    let d1 = deg_minus_id(&so2(&kernel.v1)?);
    let d2 = deg_minus_id(&so2(&kernel.v2)?);
    Ok(if lambda0 > 0.0 { d1 - d2 } else { d2 - d1 })
}

fn require_a9(model: &SystemModel) -> Result<()> {
    if !model.spec.a9 {
        return Err(Error::Precondition(
            "the system does not satisfy `a9`".into(),
        ));
    }
    Ok(())
}

/// Exact bifurcation index under `a9`, with V(n) = ⊕_{k≤n} V(α_k) and q₁ = p₁ − μ_B(0), q₂ = p₂:
///
/// * λ₀ = α_{k₀} > 0: deg(V(k₀−1))^{q₁} ⋆ (deg(V(α_{k₀}))^{q₁} − 𝕀)
/// * λ₀ = −α_{k₀} < 0: deg(V(k₀))^{−q₂} ⋆ (deg(V(α_{k₀}))^{q₂} − 𝕀)
/// * λ₀ = 0: ((−1)^{q₁} − (−1)^{q₂})·𝕀
///
/// where deg(V) = deg(−Id, B(V)).
pub fn bif_a9(model: &SystemModel, lambda0: f64) -> Result<EulerSO2> {
    require_a9(model)?;
    let (q1, q2) = model.spec.exponents();
    let sign = |q: u64| if q % 2 == 0 { 1 } else { -1 };
    if lambda0 == 0.0 {
        return Ok(EulerSO2::from_unit(sign(q1) - sign(q2)));
    }
    let q = if lambda0 > 0.0 { q1 } else { q2 };
    let k0 = match model.entry_index(lambda0.abs()) {
        Some(k) if k >= 2 && q > 0 => k,
        _ => return Err(Error::Precondition(format!("λ₀ = {lambda0} is not in Λ"))),
    };
    let here = deg_minus_id(&so2_entry(model, k0)?);
    let jump = here.pow(q as i64)? - EulerSO2::unit();
    let below = if lambda0 > 0.0 { k0 - 1 } else { k0 };
    let cumulative = deg_minus_id(&so2(&model.spectrum.cumulative_rep(below))?);
    let exponent = if lambda0 > 0.0 {
        q1 as i64
    } else {
        -(q2 as i64)
    };
    Ok(cumulative.pow(exponent)? * jump)
}

/// True when the indices cannot sum to Θ, so a bounded continuum meeting exactly
/// these parameters is ruled out.
pub fn rabinowitz_excludes_bounded(indices: &[EulerSO2]) -> bool {
    !indices.iter().sum::<EulerSO2>().is_zero()
}

/// Subsets of `candidates` that contain `anchor` and whose indices sum to Θ,
/// i.e. the parameter sets a bounded continuum from `anchor` could still meet.
/// Each subset is returned as sorted positions into `candidates`.
pub fn bounded_escape_sets(candidates: &[EulerSO2], anchor: usize) -> Result<Vec<Vec<usize>>> {
    let n = candidates.len();
    if n > MAX_SUBSET_CANDIDATES {
        return Err(Error::TooManyCandidates(n, MAX_SUBSET_CANDIDATES));
    }
    if anchor >= n {
        return Err(Error::Precondition(format!(
            "anchor {anchor} out of range 0..{n}"
        )));
    }
    let others: Vec<usize> = (0..n).filter(|&i| i != anchor).collect();
    let mut out: Vec<Vec<usize>> = (0u64..1 << others.len())
        .into_par_iter()
        .filter_map(|mask| {
            let mut set: Vec<usize> = others
                .iter()
                .enumerate()
                .filter(|&(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            set.push(anchor);
            set.sort_unstable();
            let picked: Vec<EulerSO2> = set.iter().map(|&i| candidates[i].clone()).collect();
            (!rabinowitz_excludes_bounded(&picked)).then_some(set)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Applies the unboundedness criterion to C(sign·α_{k₀}) under `a9`.
pub fn unbounded_verdict(
    model: &SystemModel,
    entry: &SpectrumEntry,
    sign: i8,
) -> Result<UnboundedReport> {
    require_a9(model)?;
    if sign != 1 && sign != -1 {
        return Err(Error::Precondition(format!("sign must be ±1, got {sign}")));
    }
    let (q1, q2) = model.spec.exponents();
    let nontrivial = model.spectrum.is_nontrivial(entry, &model.tol)?;
    Ok(unbounded_from_exponents(q1, q2, sign, nontrivial))
}

/// The criterion itself, on (q₁, q₂), the sign and nontriviality of V(α_{k₀}).
pub fn unbounded_from_exponents(q1: u64, q2: u64, sign: i8, nontrivial: bool) -> UnboundedReport {
    let (mine, other, other_name) = if sign > 0 {
        (q1, q2, "q2")
    } else {
        (q2, q1, "q1")
    };
    let even = |q: u64| q % 2 == 0;
    let verdict = if nontrivial && mine > 0 && even(mine) && even(other) {
        Unbounded::Unbounded
    } else {
        Unbounded::NoVerdict
    };
    let bounded_consequences =
        (nontrivial && mine > 0 && even(mine)).then(|| BoundedConsequences {
            other_exponent: other_name.to_string(),
            other_must_be_positive_odd: true,
            other_is_positive_odd: other > 0 && !even(other),
            meets_parameters_of_sign: -sign,
        });
    UnboundedReport {
        verdict,
        q1,
        q2,
        eigenspace_nontrivial: nontrivial,
        continuum_nonempty: nontrivial && mine > 0,
        bounded_consequences,
    }
}

fn verdict_at(model: &SystemModel, lambda0: f64) -> Result<BifurcationVerdict> {
    let kernel = model.kernel_reps(lambda0)?;
    let in_lambda = !kernel.is_zero();
    let (glob, justification) = if lambda0 == 0.0 {
        check_glob_zero(model)
    } else {
        glob_from_kernel(&kernel)
    };
    let so2_typed = model
        .spectrum
        .entries
        .iter()
        .all(|e| e.rep.to_so2().is_ok());
    let bif = if model.spec.a9 && so2_typed && (in_lambda || lambda0 == 0.0) {
        Some(bif_a9(model, lambda0)?)
    } else {
        None
    };
    let mut unbounded = Unbounded::NoVerdict;
    let mut bounded_consequences = None;
    if model.spec.a9 && in_lambda && lambda0 != 0.0 {
        if let Some(entry) = model
            .entry_index(lambda0.abs())
            .and_then(|k| model.entry(k))
        {
            let report = unbounded_verdict(model, entry, if lambda0 > 0.0 { 1 } else { -1 })?;
            unbounded = report.verdict;
            bounded_consequences = report.bounded_consequences;
        }
    }
    Ok(BifurcationVerdict {
        lambda0,
        in_lambda,
        kernel,
        glob,
        justification,
        bif,
        unbounded,
        bounded_consequences,
    })
}

/// One verdict per λ₀ ∈ Λ ∩ [lo, hi], plus λ₀ = 0 when the window contains it,
/// ordered by λ₀.
pub fn analyze(model: &SystemModel, lo: f64, hi: f64) -> Result<Vec<BifurcationVerdict>> {
    let mut params = model.lambda_set(lo, hi)?;
    if lo <= 0.0 && 0.0 <= hi && !params.contains(&0.0) {
        params.push(0.0);
        params.sort_by(f64::total_cmp);
    }
    params.par_iter().map(|&l| verdict_at(model, l)).collect()
}
