use crate::error::{Error, Result};

use super::plf::{GammaParam, PLFunction};

/// Ratio σ = (1−γ+√(2(1−γ)))/(1+γ) between consecutive zeros.
pub fn sigma(p: GammaParam) -> f64 {
    let g = p.gamma();
    (1.0 - g + (2.0 * (1.0 - g)).sqrt()) / (1.0 + g)
}

/// Self-similar sawtooth with |g(x)| the distance to the nearest σ^i.
///
/// Zeros sit at σ^0..σ^periods; g is nonnegative on [σ^i, σ^{i+1}] for odd i
/// and nonpositive for even i, zero on the run-in [0, 1], and continues past
/// σ^periods along the first half of the next tooth.
pub fn sigma_g(p: GammaParam, periods: usize) -> Result<PLFunction> {
    if p.gamma() >= 0.5 {
        return Err(Error::InvalidInput(format!(
            "sawtooth is only defined for gamma < 1/2, got {}",
            p.gamma()
        )));
    }
    if periods < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 periods, got {periods}")));
    }
    let s = sigma(p);
    let mut xs = vec![0.0, 1.0];
    let mut ys = vec![0.0, 0.0];
    let mut lo = 1.0;
    for i in 0..periods {
        let hi = lo * s;
        let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
        xs.push((lo + hi) / 2.0);
        ys.push(sign * (hi - lo) / 2.0);
        xs.push(hi);
        ys.push(0.0);
        lo = hi;
    }
    let tail = if periods % 2 == 1 { 1.0 } else { -1.0 };
    PLFunction::new(xs, ys, tail)
}

/// Peak level of γx ± g(x) on the i-th tooth: σ^i(γ(σ+1)+σ−1)/2.
pub fn sigma_level(p: GammaParam, i: usize) -> f64 {
    let s = sigma(p);
    s.powi(i as i32) * (p.gamma() * (s + 1.0) + s - 1.0) / 2.0
}

/// A level window [L_0, L_{periods−2}] on which sigma_g's ratio is periodic
/// and both crossings stay inside the constructed teeth.
pub fn sigma_window(p: GammaParam, periods: usize) -> (f64, f64) {
    (sigma_level(p, 0), sigma_level(p, periods.saturating_sub(2)))
}
