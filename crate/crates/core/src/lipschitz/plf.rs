use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack used when comparing slopes and segment bounds.
pub const TOL: f64 = 1e-9;

/// Which of the two crossing functionals to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A nonnegative real or +∞ (the minimum of an empty set).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtendedReal {
    Finite(f64),
    Infinite,
}

impl ExtendedReal {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    /// The value as an `f64`, with `Infinite` mapped to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtendedReal::Finite(x) => x,
            ExtendedReal::Infinite => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(x) => Some(x),
            ExtendedReal::Infinite => None,
        }
    }
}

/// The pair γ = (λ−1)/(λ+1), λ = (1+γ)/(1−γ) with γ ∈ (−1, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaParam {
    gamma: f64,
    lambda: f64,
}

impl GammaParam {
    pub fn from_gamma(gamma: f64) -> Result<Self> {
        if !(gamma > -1.0 && gamma < 1.0) {
            return Err(Error::InvalidInput(format!("gamma must lie in (-1, 1), got {gamma}")));
        }
        Ok(GammaParam { gamma, lambda: (1.0 + gamma) / (1.0 - gamma) })
    }

    pub fn from_lambda(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidInput(format!("lambda must lie in (0, inf), got {lambda}")));
        }
        Ok(GammaParam { gamma: (lambda - 1.0) / (lambda + 1.0), lambda })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Continuous piecewise-linear function on [0, ∞) with g(0) = 0.
///
/// Between breakpoints the function interpolates linearly; past the last
/// breakpoint it continues with `tail_slope`. [`PLFunction::new`] enforces the
/// 1-Lipschitz bound; [`PLFunction::new_unconstrained`] only the structure,
/// for degree profiles and similar step-like data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PLFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    tail_slope: f64,
}

impl PLFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>, tail_slope: f64) -> Result<Self> {
        let g = Self::new_unconstrained(breakpoints, values, tail_slope)?;
        g.check_lipschitz()?;
        Ok(g)
    }

    pub fn new_unconstrained(breakpoints: Vec<f64>, values: Vec<f64>, tail_slope: f64) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::InvalidInput("at least one breakpoint is required".into()));
        }
        if breakpoints.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "{} breakpoints but {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints[0] != 0.0 {
            return Err(Error::InvalidInput(format!("first breakpoint must be 0, got {}", breakpoints[0])));
        }
        if values[0] != 0.0 {
            return Err(Error::InvalidInput(format!("g(0) must be 0, got {}", values[0])));
        }
        if breakpoints.iter().chain(values.iter()).any(|v| !v.is_finite()) || !tail_slope.is_finite() {
            return Err(Error::InvalidInput("non-finite breakpoint, value or tail slope".into()));
        }
        if let Some(w) = breakpoints.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(format!(
                "breakpoints must be strictly increasing: {} then {}",
                w[0], w[1]
            )));
        }
        Ok(PLFunction { breakpoints, values, tail_slope })
    }

    /// Builds g from consecutive (length, slope) pieces starting at the origin.
    pub fn from_pieces(pieces: &[(f64, f64)], tail_slope: f64) -> Result<Self> {
        let mut xs = vec![0.0];
        let mut ys = vec![0.0];
        for &(len, slope) in pieces {
            if !(len > 0.0) {
                return Err(Error::InvalidInput(format!("piece length must be positive, got {len}")));
            }
            let (x, y) = (*xs.last().unwrap(), *ys.last().unwrap());
            xs.push(x + len);
            ys.push(y + slope * len);
        }
        Self::new(xs, ys, tail_slope)
    }

    pub fn zero() -> Self {
        PLFunction { breakpoints: vec![0.0], values: vec![0.0], tail_slope: 0.0 }
    }

    pub fn identity() -> Self {
        PLFunction { breakpoints: vec![0.0], values: vec![0.0], tail_slope: 1.0 }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail_slope(&self) -> f64 {
        self.tail_slope
    }

    pub fn last_breakpoint(&self) -> f64 {
        *self.breakpoints.last().unwrap()
    }

    /// Number of finite segments (one fewer than the breakpoints).
    pub fn num_segments(&self) -> usize {
        self.breakpoints.len() - 1
    }

    pub fn segment_slope(&self, i: usize) -> f64 {
        let (x0, x1) = (self.breakpoints[i], self.breakpoints[i + 1]);
        (self.values[i + 1] - self.values[i]) / (x1 - x0)
    }

    /// Slopes of all finite segments followed by the tail slope.
    pub fn slopes(&self) -> Vec<f64> {
        let mut s: Vec<f64> = (0..self.num_segments()).map(|i| self.segment_slope(i)).collect();
        s.push(self.tail_slope);
        s
    }

    pub fn eval(&self, x: f64) -> f64 {
        let bp = &self.breakpoints;
        let last = bp.len() - 1;
        if x >= bp[last] {
            return self.values[last] + self.tail_slope * (x - bp[last]);
        }
        if x <= 0.0 {
            return if last == 0 { self.tail_slope * x } else { self.segment_slope(0) * x };
        }
        let i = bp.partition_point(|&b| b <= x) - 1;
        let t = (x - bp[i]) / (bp[i + 1] - bp[i]);
        self.values[i] + t * (self.values[i + 1] - self.values[i])
    }

    pub fn check_lipschitz(&self) -> Result<()> {
        for i in 0..self.num_segments() {
            let dx = self.breakpoints[i + 1] - self.breakpoints[i];
            let dg = (self.values[i + 1] - self.values[i]).abs();
            if dg > dx + TOL * dx.max(1.0) {
                return Err(Error::NotLipschitz {
                    x0: self.breakpoints[i],
                    x1: self.breakpoints[i + 1],
                    dg,
                    dx,
                });
            }
        }
        if self.tail_slope.abs() > 1.0 + TOL {
            return Err(Error::InvalidInput(format!("tail slope {} outside [-1, 1]", self.tail_slope)));
        }
        Ok(())
    }

    pub fn is_lipschitz(&self) -> bool {
        self.check_lipschitz().is_ok()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= -TOL) && self.tail_slope >= 0.0
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] >= w[0] - TOL) && self.tail_slope >= 0.0
    }

    /// Same function with an extra breakpoint at `x` (no-op if already present).
    pub fn refined(&self, x: f64) -> PLFunction {
        if !(x > 0.0) || self.breakpoints.iter().any(|&b| b == x) {
            return self.clone();
        }
        let y = self.eval(x);
        let i = self.breakpoints.partition_point(|&b| b < x);
        let mut g = self.clone();
        g.breakpoints.insert(i, x);
        g.values.insert(i, y);
        g
    }

    /// Drops breakpoints where the slope does not change (within `TOL`).
    pub fn simplified(&self) -> PLFunction {
        let slopes = self.slopes();
        let mut xs = vec![0.0];
        let mut ys = vec![0.0];
        for i in 1..self.breakpoints.len() {
            if (slopes[i] - slopes[i - 1]).abs() > TOL {
                xs.push(self.breakpoints[i]);
                ys.push(self.values[i]);
            }
        }
        PLFunction { breakpoints: xs, values: ys, tail_slope: self.tail_slope }
    }

    /// Whether g has ±1 slopes alternating from +1 with every finite piece of
    /// length at least 1/2, after dropping collinear breakpoints.
    pub fn is_canonical(&self) -> bool {
        self.canonical_violation().is_none()
    }

    pub(crate) fn canonical_violation(&self) -> Option<String> {
        let g = self.simplified();
        let slopes = g.slopes();
        for (i, &s) in slopes.iter().enumerate() {
            let want = if i % 2 == 0 { 1.0 } else { -1.0 };
            if (s - want).abs() > TOL {
                return Some(format!("piece {} has slope {s}, expected {want}", i + 1));
            }
        }
        for i in 0..g.num_segments() {
            let len = g.breakpoints[i + 1] - g.breakpoints[i];
            if len < 0.5 - TOL {
                return Some(format!("piece {} has length {len} < 1/2", i + 1));
            }
        }
        None
    }

    pub fn max_abs_diff_on(&self, other: &PLFunction, hi: f64) -> f64 {
        let mut xs: Vec<f64> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .copied()
            .filter(|&x| x <= hi)
            .collect();
        xs.push(hi);
        xs.iter().map(|&x| (self.eval(x) - other.eval(x)).abs()).fold(0.0, f64::max)
    }
}
