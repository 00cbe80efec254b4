//! Positive roots of the radial Neumann condition on the unit disk and unit ball.

use std::f64::consts::PI;

use super::bessel::{bessel_j_prime, j_unchecked};
use crate::error::{Error, Result};

/// Grid spacing used to bracket sign changes before bisection.
pub const GRID_STEP: f64 = PI / 8.0;

const MAX_HALVINGS: u32 = 6;
const MAX_BISECTIONS: u32 = 400;

/// The radial equation whose positive roots x give Neumann eigenvalues x².
///
/// On the disk (`dim == 2`) this is J_l′(x) = 0. On the ball (`dim ≥ 3`) only the
/// rotation-invariant condition J_ν′(x) − (ν/x) J_ν(x) = 0, ν = (N−2)/2, is supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RadialCondition {
    dim: u32,
    angular_index: u32,
}

impl RadialCondition {
    pub fn new(angular_index: u32, dim: u32) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Domain(format!("ball dimension {dim} must be ≥ 2")));
        }
        if dim > 2 && angular_index != 0 {
            return Err(Error::UnsupportedDomain(format!(
                "radial condition for angular index {angular_index} on the {dim}-ball"
            )));
        }
        Ok(Self { dim, angular_index })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn angular_index(&self) -> u32 {
        self.angular_index
    }

    /// Bessel order entering the condition.
    pub fn order(&self) -> f64 {
        if self.dim == 2 {
            self.angular_index as f64
        } else {
            (self.dim as f64 - 2.0) / 2.0
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let nu = self.order();
        let d = bessel_j_prime(nu, x).unwrap_or(f64::NAN);
        if self.dim == 2 {
            d
        } else {
            d - nu / x * j_unchecked(nu, x)
        }
    }

    /// J_ν itself, whose zeros interlace with the roots of the condition.
    fn companion(&self, x: f64) -> f64 {
        j_unchecked(self.order(), x)
    }

    /// J_ν has a zero below the first root only for the rotation-invariant
    /// conditions; for l ≥ 1, J_l rises monotonically up to the first root of J_l′.
    fn companion_changes_sign_first(&self) -> bool {
        self.dim > 2 || self.angular_index == 0
    }
}

/// A refined root together with the final bisection bracket.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialRoot {
    pub x: f64,
    pub lo: f64,
    pub hi: f64,
}

/// How far to search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RootQuery {
    /// The first `n` positive roots.
    Count(usize),
    /// All positive roots with x ≤ bound.
    Below(f64),
}

/// The first `count` positive roots of the radial Neumann condition.
///
/// x = 0 is never reported, even when it solves the equation.
pub fn neumann_radial_roots(
    angular_index: u32,
    dim: u32,
    count: usize,
    tol: f64,
) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::Domain("root count must be ≥ 1".into()));
    }
    let cond = RadialCondition::new(angular_index, dim)?;
    Ok(find_roots(&cond, RootQuery::Count(count), tol)?
        .into_iter()
        .map(|r| r.x)
        .collect())
}

/// Scans a grid for sign changes and bisects each bracket down to `tol`
/// (relative to max(1, x)). Interlacing of consecutive roots with the zeros of
/// J_ν is checked afterwards; a violation halves the grid step and rescans.
pub fn find_roots(cond: &RadialCondition, query: RootQuery, tol: f64) -> Result<Vec<RadialRoot>> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "root tolerance {tol} must be positive"
        )));
    }
    let mut step = GRID_STEP;
    for _ in 0..=MAX_HALVINGS {
        let roots = scan(cond, query, step, tol)?;
        if interlaces(cond, &roots) {
            return Ok(roots);
        }
        step /= 2.0;
    }
    Err(Error::Convergence(format!(
        "roots for angular index {} in dimension {} fail to interlace even at step {step}",
        cond.angular_index, cond.dim
    )))
}

fn scan(cond: &RadialCondition, query: RootQuery, step: f64, tol: f64) -> Result<Vec<RadialRoot>> {
    let done = |roots: &[RadialRoot], x: f64| match query {
        RootQuery::Count(n) => roots.len() >= n,
        RootQuery::Below(bound) => x > bound,
    };
    let mut roots = Vec::new();
    // start just off the origin, where the condition may vanish identically
    let mut lo = step / 64.0;
    let mut f_lo = cond.eval(lo);
    let mut i = 1u64;
    while !done(&roots, lo) {
        let hi = i as f64 * step;
        i += 1;
        let f_hi = cond.eval(hi);
        if !f_lo.is_finite() || !f_hi.is_finite() {
            return Err(Error::Convergence(format!(
                "radial condition not finite on [{lo}, {hi}]"
            )));
        }
        if f_hi == 0.0 {
            roots.push(RadialRoot { x: hi, lo: hi, hi });
        } else if f_lo != 0.0 && (f_lo < 0.0) != (f_hi < 0.0) {
            roots.push(bisect(cond, lo, hi, f_lo, tol)?);
        }
        lo = hi;
        f_lo = f_hi;
    }
    if let RootQuery::Below(bound) = query {
        roots.retain(|r| r.x <= bound);
    }
    if let RootQuery::Count(n) = query {
        roots.truncate(n);
    }
    Ok(roots)
}

fn bisect(
    cond: &RadialCondition,
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    tol: f64,
) -> Result<RadialRoot> {
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol * mid.max(1.0) || mid <= lo || mid >= hi {
            return Ok(RadialRoot { x: mid, lo, hi });
        }
        let f_mid = cond.eval(mid);
        if !f_mid.is_finite() {
            return Err(Error::Convergence(format!(
                "radial condition not finite at {mid}"
            )));
        }
        if f_mid == 0.0 {
            return Ok(RadialRoot {
                x: mid,
                lo: mid,
                hi: mid,
            });
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence(format!(
        "bracket [{lo}, {hi}] did not shrink below tolerance {tol}"
    )))
}

/// Between two consecutive roots J_ν has exactly one zero, so its signs at the
/// roots alternate.
fn interlaces(cond: &RadialCondition, roots: &[RadialRoot]) -> bool {
    let Some(first) = roots.first() else {
        return true;
    };
    // J_ν is positive just to the right of the origin for every ν ≥ 0
    let first_negative = cond.companion(first.x) < 0.0;
    if first_negative != cond.companion_changes_sign_first() {
        return false;
    }
    roots
        .windows(2)
        .all(|w| (cond.companion(w[0].x) < 0.0) != (cond.companion(w[1].x) < 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-13;

    #[test]
    fn first_disk_roots() {
        let r = neumann_radial_roots(1, 2, 1, TOL).unwrap();
        assert!((r[0] - 1.8411838).abs() < 1e-6);
        let r = neumann_radial_roots(0, 2, 1, TOL).unwrap();
        assert!((r[0] - 3.8317060).abs() < 1e-6);
        let r = neumann_radial_roots(2, 2, 1, TOL).unwrap();
        assert!((r[0] - 3.0542370).abs() < 1e-6);
    }

    #[test]
    fn ball_condition_reduces_to_next_order_zeros() {
        // J_ν′ − (ν/x) J_ν = −J_{ν+1}, so the 3-ball roots are the zeros of J_{3/2}
        let r = neumann_radial_roots(0, 3, 2, TOL).unwrap();
        assert!((r[0] - 4.493409457909064).abs() < 1e-10);
        assert!((r[1] - 7.725251836937708).abs() < 1e-10);
        for x in r {
            assert!(j_unchecked(1.5, x).abs() < 1e-12);
        }
    }

    #[test]
    fn roots_are_increasing_and_small() {
        for l in 0..6 {
            let cond = RadialCondition::new(l, 2).unwrap();
            let roots = find_roots(&cond, RootQuery::Count(12), TOL).unwrap();
            assert_eq!(roots.len(), 12);
            for w in roots.windows(2) {
                assert!(w[0].x < w[1].x);
            }
            for r in &roots {
                assert!(r.x > 0.0);
                assert!(cond.eval(r.x).abs() < 1e-10);
                if r.lo < r.hi {
                    assert!(cond.eval(r.lo) * cond.eval(r.hi) <= 0.0);
                }
            }
        }
    }

    #[test]
    fn bounded_query() {
        let cond = RadialCondition::new(0, 2).unwrap();
        let roots = find_roots(&cond, RootQuery::Below(8.0), TOL).unwrap();
        let xs: Vec<f64> = roots.iter().map(|r| r.x).collect();
        assert_eq!(xs.len(), 2);
        assert!((xs[1] - 7.01558667).abs() < 1e-7);
        assert!(find_roots(&cond, RootQuery::Below(1.0), TOL)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn unsupported_inputs() {
        assert!(matches!(
            RadialCondition::new(1, 3),
            Err(Error::UnsupportedDomain(_))
        ));
        assert!(matches!(RadialCondition::new(0, 1), Err(Error::Domain(_))));
        assert!(neumann_radial_roots(0, 2, 0, TOL).is_err());
        let cond = RadialCondition::new(0, 2).unwrap();
        assert!(find_roots(&cond, RootQuery::Count(1), 0.0).is_err());
    }
}
