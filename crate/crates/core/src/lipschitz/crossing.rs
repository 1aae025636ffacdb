use crate::error::{Error, Result};

use super::plf::{ExtendedReal, GammaParam, PLFunction, Sign};

/// First x at which the piecewise-linear φ (given at `xs`, continued with
/// `tail`) reaches `t`. With `strict`, the first x where φ exceeds `t`
/// instead, i.e. the right limit of the crossing as the level decreases to `t`.
fn first_crossing(xs: &[f64], phis: &[f64], tail: f64, t: f64, strict: bool) -> ExtendedReal {
    let hit = |v: f64| if strict { v > t } else { v >= t };
    if hit(phis[0]) {
        return ExtendedReal::Finite(xs[0]);
    }
    for i in 0..xs.len() - 1 {
        if hit(phis[i + 1]) {
            let slope = (phis[i + 1] - phis[i]) / (xs[i + 1] - xs[i]);
            let x = xs[i] + (t - phis[i]) / slope;
            return ExtendedReal::Finite(x.clamp(xs[i], xs[i + 1]));
        }
    }
    let k = xs.len() - 1;
    if tail > 0.0 {
        ExtendedReal::Finite(xs[k] + ((t - phis[k]) / tail).max(0.0))
    } else {
        ExtendedReal::Infinite
    }
}

/// Values of γx ± g(x) at the breakpoints together with the tail slope.
fn gamma_profile(g: &PLFunction, p: GammaParam, sign: Sign) -> (Vec<f64>, f64) {
    let (gm, s) = (p.gamma(), sign.factor());
    let phis = g
        .breakpoints()
        .iter()
        .zip(g.values())
        .map(|(&x, &v)| gm * x + s * v)
        .collect();
    (phis, gm + s * g.tail_slope())
}

/// Γ±: the least x with γx ± g(x) ≥ t, or +∞ if none.
pub fn gamma_crossing(g: &PLFunction, p: GammaParam, t: f64, sign: Sign) -> ExtendedReal {
    let (phis, tail) = gamma_profile(g, p, sign);
    first_crossing(g.breakpoints(), &phis, tail, t, false)
}

/// ℓ⁺ = min{x : g(λx) − x ≥ t} and ℓ⁻ = min{x : x − g(x)/λ ≥ t}.
///
/// Defined only for nonnegative non-decreasing g; the degree profiles this is
/// applied to need not be 1-Lipschitz.
pub fn ell_crossing(g: &PLFunction, lambda: f64, t: f64, sign: Sign) -> Result<ExtendedReal> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidInput(format!("lambda must be positive, got {lambda}")));
    }
    if !(t > 0.0) {
        return Err(Error::InvalidInput(format!("t must be positive, got {t}")));
    }
    if !g.is_nonnegative() {
        return Err(Error::Precondition("g must be nonnegative".into()));
    }
    if !g.is_nondecreasing() {
        return Err(Error::Precondition("g must be non-decreasing".into()));
    }
    let xs = g.breakpoints();
    let vs = g.values();
    let res = match sign {
        Sign::Plus => {
            // Solve in u = λx, where g(u) − u/λ ≥ t.
            let phis: Vec<f64> = xs.iter().zip(vs).map(|(&x, &v)| v - x / lambda).collect();
            match first_crossing(xs, &phis, g.tail_slope() - 1.0 / lambda, t, false) {
                ExtendedReal::Finite(u) => ExtendedReal::Finite(u / lambda),
                ExtendedReal::Infinite => ExtendedReal::Infinite,
            }
        }
        Sign::Minus => {
            let phis: Vec<f64> = xs.iter().zip(vs).map(|(&x, &v)| x - v / lambda).collect();
            first_crossing(xs, &phis, 1.0 - g.tail_slope() / lambda, t, false)
        }
    };
    Ok(res)
}

/// sup over t ∈ [t_lo, t_hi] of (Γ⁺(t) + Γ⁻(t))/t.
///
/// Between consecutive breakpoint levels of γx ± g(x) both crossings are affine
/// in t, so the ratio is monotone there; the supremum is attained at a level or
/// as a right limit just above one. Every such candidate is evaluated exactly.
pub fn sup_ratio(g: &PLFunction, p: GammaParam, t_lo: f64, t_hi: f64) -> Result<f64> {
    if !(t_lo > 0.0 && t_lo < t_hi && t_hi.is_finite()) {
        return Err(Error::InvalidInput(format!("need 0 < t_lo < t_hi, got [{t_lo}, {t_hi}]")));
    }
    let (plus, plus_tail) = gamma_profile(g, p, Sign::Plus);
    let (minus, minus_tail) = gamma_profile(g, p, Sign::Minus);
    let xs = g.breakpoints();

    let total = |t: f64, strict: bool| -> Result<f64> {
        let a = first_crossing(xs, &plus, plus_tail, t, strict);
        let b = first_crossing(xs, &minus, minus_tail, t, strict);
        match (a, b) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => Ok(a + b),
            (ExtendedReal::Infinite, _) => Err(Error::Unbounded { sign: '+', t }),
            (_, ExtendedReal::Infinite) => Err(Error::Unbounded { sign: '-', t }),
        }
    };
    total(t_hi, false)?;

    let mut levels: Vec<f64> = plus
        .iter()
        .chain(minus.iter())
        .copied()
        .filter(|&c| c > t_lo && c < t_hi)
        .collect();
    levels.push(t_lo);
    levels.push(t_hi);
    levels.sort_by(f64::total_cmp);
    levels.dedup();

    let mut best = total(t_lo, false)? / t_lo;
    for &c in &levels {
        best = best.max(total(c, false)? / c);
        if c < t_hi {
            best = best.max(total(c, true)? / c);
        }
    }
    Ok(best)
}
