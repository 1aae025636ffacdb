use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

use super::plf::{GammaParam, PLFunction, TOL};

/// Replaces g on [0, span] by a ±1-sloped function within distance 1 of it.
///
/// The tracker starts with slope +1 and flips slope each time it drifts to
/// distance 1 from g. Input that is already canonical is returned unchanged.
pub fn canonicalize(g: &PLFunction, span: f64) -> Result<PLFunction> {
    if !(span > 0.0) {
        return Err(Error::InvalidInput(format!("span must be positive, got {span}")));
    }
    if g.is_canonical() {
        return Ok(g.clone());
    }
    let mut turns: Vec<f64> = Vec::new();
    let mut s = 1.0f64;
    // d = g₂ − g at the current position x.
    let (mut x, mut d) = (0.0f64, 0.0f64);
    let bps = g.breakpoints();
    let slopes = g.slopes();
    let mut seg = 0usize;
    while x < span {
        let end = if seg + 1 < bps.len() { bps[seg + 1].min(span) } else { span };
        let m = slopes[seg];
        let rate = 1.0 - s * m;
        if rate > TOL {
            let hit = x + (1.0 - s * d) / rate;
            if hit < end {
                turns.push(hit);
                d = s;
                x = hit;
                s = -s;
                continue;
            }
        }
        d += (s - m) * (end - x);
        x = end;
        if seg + 1 < bps.len() {
            seg += 1;
        } else {
            break;
        }
    }
    let mut xs = vec![0.0];
    let mut ys = vec![0.0];
    let mut slope = 1.0;
    for t in turns {
        let y = ys.last().unwrap() + slope * (t - xs.last().unwrap());
        xs.push(t);
        ys.push(y);
        slope = -slope;
    }
    PLFunction::new(xs, ys, slope)
}

/// Turning points x_1..x_k and values of a canonical function (x_0 = 0 included).
fn turning_points(g: &PLFunction) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    if let Some(why) = g.canonical_violation() {
        return Err(Error::NotCanonical(why));
    }
    let s = g.simplified();
    Ok((s.breakpoints().to_vec(), s.values().to_vec(), s.tail_slope()))
}

/// Index of the first removable extremum, if any.
///
/// Odd i are peaks, dominated when γx_i+g(x_i) ≤ γx_{i−2}+g(x_{i−2}); even i
/// are valleys, dominated when γx_i−g(x_i) ≤ γx_{i−2}−g(x_{i−2}) (the origin
/// counts as valley 0). A removal needs x_{i+1} to exist.
fn first_removable(xs: &[f64], ys: &[f64], gamma: f64) -> Option<usize> {
    let k = xs.len() - 1;
    (2..k).find(|&i| {
        let s = if i % 2 == 1 { 1.0 } else { -1.0 };
        gamma * xs[i] + s * ys[i] <= gamma * xs[i - 2] + s * ys[i - 2]
    })
}

/// Repeatedly removes the first dominated peak or valley.
///
/// A dominated peak x_i is removed by extending the falling piece out of
/// x_{i−2} and the rising piece into x_{i+2} until they meet; valleys
/// symmetrically. Both crossings can only move left.
pub fn remove_extrema(g: &PLFunction, p: GammaParam) -> Result<PLFunction> {
    let (mut xs, mut ys, tail) = turning_points(g)?;
    while let Some(i) = first_removable(&xs, &ys, p.gamma()) {
        let (a, b) = (i - 2, i + 1);
        let s = if i % 2 == 1 { 1.0 } else { -1.0 };
        // Peak: meet y = g_a − (x − x_a) and y = g_b + (x − x_b); valley: mirrored.
        let x_new = (s * ys[a] + xs[a] - s * ys[b] + xs[b]) / 2.0;
        let y_new = ys[a] - s * (x_new - xs[a]);
        xs.splice(i - 1..=i + 1, [x_new]);
        ys.splice(i - 1..=i + 1, [y_new]);
    }
    PLFunction::new(xs, ys, tail)
}

/// Piece lengths, piece ends and crossing levels of a reduced canonical function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BreakpointTrace {
    pub gamma: f64,
    pub piece_lengths: Vec<f64>,
    pub ends: Vec<f64>,
    pub crossing_values: Vec<f64>,
    pub first_slope: i8,
}

/// x_i = t_i/(1+γ) + Σ_{j<i} (2/(1−γ²))·q^{i−j}·t_j with q = (1−γ)/(1+γ).
pub fn ends_from_levels(ts: &[f64], p: GammaParam) -> Vec<f64> {
    let g = p.gamma();
    let q = (1.0 - g) / (1.0 + g);
    let c = 2.0 / (1.0 - g * g);
    // Running sum Σ_{j<i} q^{i−j} t_j.
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        out.push(t / (1.0 + g) + c * acc);
        acc = q * (acc + t);
    }
    out
}

fn exact_ends(ts: &[f64], gamma: f64) -> Result<Vec<(BigRational, BigRational)>> {
    let r = |v: f64| {
        BigRational::from_float(v).ok_or_else(|| Error::Internal(format!("non-finite value {v}")))
    };
    let one = BigRational::one();
    let g = r(gamma)?;
    let q = (&one - &g) / (&one + &g);
    let c = BigRational::from_integer(BigInt::from(2)) / (&one - &g * &g);
    let mut acc = BigRational::zero();
    let mut mag = BigRational::zero();
    let mut out = Vec::with_capacity(ts.len());
    for &t in ts {
        let t = r(t)?;
        let x = &t / (&one + &g) + &c * &acc;
        let scale = t.abs() / (&one + &g) + &c * &mag;
        out.push((x, scale));
        acc = &q * (&acc + &t);
        mag = &q * (&mag + t.abs());
    }
    Ok(out)
}

/// Computes ℓ_i, x_i and t_i = γx_i + (−1)^{i+1}g(x_i) and cross-checks x_i
/// against the closed formula in exact rational arithmetic.
pub fn trace(g: &PLFunction, p: GammaParam) -> Result<BreakpointTrace> {
    let (xs, ys, _) = turning_points(g)?;
    if let Some(i) = first_removable(&xs, &ys, p.gamma()) {
        return Err(Error::Precondition(format!("extremum {i} is removable; reduce first")));
    }
    let gm = p.gamma();
    let k = xs.len() - 1;
    let mut lengths = Vec::with_capacity(k);
    let mut ends = Vec::with_capacity(k);
    let mut ts = Vec::with_capacity(k);
    let (mut x, mut y) = (0.0, 0.0);
    for i in 1..=k {
        let len = xs[i] - xs[i - 1];
        let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
        x += len;
        y += sign * len;
        lengths.push(len);
        ends.push(x);
        ts.push(gm * x + sign * y);
    }
    for (i, (x_exact, scale)) in exact_ends(&ts, gm)?.into_iter().enumerate() {
        let x_formula = x_exact.to_f64().unwrap_or(f64::NAN);
        let tol = 1e-9 * scale.to_f64().unwrap_or(f64::INFINITY).max(1.0);
        if !((x_formula - ends[i]).abs() <= tol) {
            return Err(Error::Internal(format!(
                "closed formula gives x_{} = {x_formula}, trace has {}",
                i + 1,
                ends[i]
            )));
        }
    }
    Ok(BreakpointTrace { gamma: gm, piece_lengths: lengths, ends, crossing_values: ts, first_slope: 1 })
}
