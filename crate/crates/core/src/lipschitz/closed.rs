use serde::Serialize;

use crate::error::{Error, Result};

use super::plf::GammaParam;

/// Lower and upper bounds on f(λ) with the exact value where it is known.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FBounds {
    pub lower: f64,
    pub upper: f64,
    pub exact: Option<f64>,
}

/// Closed-form bounds on f(λ); `lambda` may be `f64::INFINITY`.
pub fn f_closed(lambda: f64) -> Result<FBounds> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::InvalidInput(format!("lambda must be nonnegative, got {lambda}")));
    }
    if lambda.is_infinite() {
        return Ok(FBounds { lower: 0.5, upper: 0.5, exact: Some(0.5) });
    }
    let l = lambda;
    let lower = (l + 1.0) / (2.0 * l + 1.0);
    let upper = if l < 3.0 {
        (2.0 * l * l + 3.0 * l + 7.0 + 2.0 * (l + 1.0).sqrt()) / (4.0 * l * l + 4.0 * l + 9.0)
    } else {
        (l + 1.0) / (2.0 * l)
    };
    let exact = (l <= 1.0).then_some(upper);
    Ok(FBounds { lower, upper, exact })
}

/// The σ-construction value of the crossing ratio, an upper bound on h(γ).
pub fn h_upper(p: GammaParam) -> f64 {
    let g = p.gamma();
    if g < 0.5 {
        (2.0 * g * g + 2.0 * g + 8.0 + (32.0 * (1.0 - g)).sqrt()) / (g + 1.0).powi(3)
    } else {
        2.0 / g
    }
}

/// f(λ) = 1 − 1/((2λ/(1+λ)²)·h + 2λ/(1+λ)) for a given value h of the ratio.
pub fn f_from_h(p: GammaParam, h: f64) -> f64 {
    let l = p.lambda();
    1.0 - 1.0 / ((2.0 * l / ((1.0 + l) * (1.0 + l))) * h + 2.0 * l / (1.0 + l))
}

/// The σ-construction bound on h together with the resulting value of f.
pub fn h_upper_and_f(p: GammaParam) -> (f64, f64) {
    let h = h_upper(p);
    (h, f_from_h(p, h))
}
