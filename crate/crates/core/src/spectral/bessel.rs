//! Bessel functions of the first kind for integer and half-integer orders.
//!
//! Two evaluation paths are kept: the ascending power series, and Miller's
//! backward recurrence normalized by a sum rule. Each is usable on its own so the
//! pair can cross-check one another.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest argument at which the ascending series is the primary path.
pub const SERIES_CUTOFF: f64 = 4.0;

const RESCALE_ABOVE: f64 = 1e250;

fn check_order(order: f64) -> Result<()> {
    if !(order >= 0.0) || (2.0 * order).fract() != 0.0 {
        return Err(Error::Domain(format!(
            "Bessel order {order} must be a non-negative integer or half-integer"
        )));
    }
    Ok(())
}

fn check_arg(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel argument {x} must be finite and ≥ 0"
        )));
    }
    Ok(())
}

/// J_ν(x) for ν ∈ {0, ½, 1, 3/2, …} and x ≥ 0.
pub fn bessel_j(order: f64, x: f64) -> Result<f64> {
    check_order(order)?;
    check_arg(x)?;
    Ok(j_unchecked(order, x))
}

/// J_ν′(x) = (J_{ν−1}(x) − J_{ν+1}(x)) / 2, with J₀′ = −J₁.
///
/// J_{1/2}′ is unbounded at the origin and returns `+∞` there.
pub fn bessel_j_prime(order: f64, x: f64) -> Result<f64> {
    check_order(order)?;
    check_arg(x)?;
    if x == 0.0 {
        return Ok(match order {
            o if o == 0.5 => f64::INFINITY,
            o if o == 1.0 => 0.5,
            _ => 0.0,
        });
    }
    if order == 0.0 {
        return Ok(-j_unchecked(1.0, x));
    }
    Ok(0.5 * (j_unchecked(order - 1.0, x) - j_unchecked(order + 1.0, x)))
}

/// Dispatches on argument size; accepts the internal order −½ as well.
pub(crate) fn j_unchecked(order: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if order == 0.0 {
            1.0
        } else if order > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    if x <= SERIES_CUTOFF {
        bessel_j_series(order, x)
    } else {
        bessel_j_recurrence(order, x)
    }
}

/// 1/Γ(ν+1) · (x/2)^ν, built as a running product so large orders underflow
/// gracefully instead of overflowing the gamma function.
fn leading_term(order: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    if order.fract() == 0.0 {
        (1..=order as u64).fold(1.0, |t, i| t * half / i as f64)
    } else {
        // Γ(ν+1) for ν = n − ½ starts from Γ(½) = √π
        let mut t = half.powf(-0.5) / PI.sqrt();
        let mut nu = -0.5;
        while nu < order {
            nu += 1.0;
            t *= half / nu;
        }
        t
    }
}

/// Ascending series Σ (−1)^k (x/2)^{2k+ν} / (k! Γ(k+ν+1)).
///
/// Cancellation between terms of size ~e^x/√x costs digits as x grows: full
/// double precision holds to about x = 4, ~1e-13 at x = 12. Order −½ is
/// accepted for x > 0.
pub fn bessel_j_series(order: f64, x: f64) -> f64 {
    if x == 0.0 {
        return j_unchecked(order, 0.0);
    }
    let q = 0.25 * x * x;
    let mut term = leading_term(order, x);
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= -q / (k * (k + order));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && k > 0.5 * x {
            break;
        }
        if k > 500.0 {
            break;
        }
    }
    sum
}

/// Miller's backward recurrence J_{μ−1} = (2μ/x) J_μ − J_{μ+1}.
///
/// Integer orders are normalized with J₀ + 2 Σ J_{2k} = 1; half-integer orders
/// with the elementary forms of J_{±1/2}. Order −½ is accepted for x > 0.
pub fn bessel_j_recurrence(order: f64, x: f64) -> f64 {
    if x == 0.0 {
        return j_unchecked(order, 0.0);
    }
    let half_integer = order.fract() != 0.0;
    // values are indexed by steps above the base order (0 or −½)
    let base = if half_integer { -0.5 } else { 0.0 };
    let target = (order - base).round() as usize;
    let span = target.max(x.ceil() as usize);
    let mut start = span + 30 + (40.0 * span as f64).sqrt().ceil() as usize;
    start += start % 2;

    let mut vals = vec![0.0; target + 2];
    let mut next = 0.0;
    let mut cur = 1e-30;
    let mut even_sum = 0.0;
    for i in (0..=start).rev() {
        if i < vals.len() {
            vals[i] = cur;
        }
        if !half_integer && i % 2 == 0 {
            even_sum += if i == 0 { cur } else { 2.0 * cur };
        }
        if i == 0 {
            break;
        }
        let prev = 2.0 * (base + i as f64) / x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > RESCALE_ABOVE {
            let s = 1.0 / RESCALE_ABOVE;
            cur *= s;
            next *= s;
            even_sum *= s;
            vals.iter_mut().for_each(|v| *v *= s);
        }
    }

    let scale = if half_integer {
        // vals[0] ∝ J_{−1/2} = c·cos x, vals[1] ∝ J_{1/2} = c·sin x
        let c = (2.0 / (PI * x)).sqrt();
        let (f_minus, f_plus) = (vals[0], vals[1]);
        c * (f_minus * x.cos() + f_plus * x.sin()) / (f_minus * f_minus + f_plus * f_plus)
    } else {
        1.0 / even_sum
    };
    vals[target] * scale
}
