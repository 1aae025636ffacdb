use num_rational::Rational64;
use serde::Serialize;

use super::bipartite::FlowEngine;
use crate::colorings::{Color, TwoColoring};
use crate::error::{Error, Result};
use crate::graphs::FiniteGraph;
use crate::lipschitz::{f_closed, FBounds, PLFunction};

/// Vertex and edge colors of a graph on 0..n given as K_n minus `absent`.
#[derive(Debug, Clone, PartialEq)]
pub struct TotalColoring {
    vertex_colors: Vec<Color>,
    edges: TwoColoring,
    absent: FiniteGraph,
}

impl TotalColoring {
    pub fn new(vertex_colors: Vec<Color>, edges: TwoColoring, absent: Option<FiniteGraph>) -> Result<Self> {
        let n = vertex_colors.len();
        if edges.n() != n {
            return Err(Error::InvalidInput(format!("{n} vertex colors but the edge coloring has n = {}", edges.n())));
        }
        let absent = absent.unwrap_or_else(|| FiniteGraph::empty(n));
        if absent.n() != n {
            return Err(Error::InvalidInput(format!("absent-edge graph has {} vertices, expected {n}", absent.n())));
        }
        Ok(Self { vertex_colors, edges, absent })
    }

    pub fn n(&self) -> usize {
        self.vertex_colors.len()
    }

    pub fn vertex_color(&self, v: usize) -> Color {
        self.vertex_colors[v]
    }

    pub fn vertex_colors(&self) -> &[Color] {
        &self.vertex_colors
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && !self.absent.has_edge(u, v)
    }

    /// Color of uv, or None if uv is not an edge.
    pub fn edge_color(&self, u: usize, v: usize) -> Option<Color> {
        self.has_edge(u, v).then(|| self.edges.color(u, v))
    }

    /// Largest number of other vertices some vertex is not adjacent to.
    pub fn max_non_neighbors(&self) -> usize {
        (0..self.n()).map(|v| self.absent.degree(v)).max().unwrap_or(0)
    }
}

/// Sorted blue degrees d_1 ≤ … ≤ d_|R| of the red vertices, with the
/// interpolating g (g(0) = 0, g(k) = d_k, constant after |R|).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColoredDegreeProfile {
    pub degrees: Vec<usize>,
    #[serde(skip)]
    pub g: PLFunction,
}

impl ColoredDegreeProfile {
    pub fn new(tc: &TotalColoring) -> Self {
        let n = tc.n();
        let mut degrees: Vec<usize> = (0..n)
            .filter(|&v| tc.vertex_color(v) == Color::Red)
            .map(|v| {
                (0..n)
                    .filter(|&w| tc.vertex_color(w) == Color::Blue && tc.edge_color(v, w) == Some(Color::Blue))
                    .count()
            })
            .collect();
        degrees.sort_unstable();
        let g = if degrees.is_empty() {
            PLFunction::zero()
        } else {
            let xs = (0..=degrees.len()).map(|k| k as f64).collect();
            let ys = std::iter::once(0.0).chain(degrees.iter().map(|&d| d as f64)).collect();
            PLFunction::new_unconstrained(xs, ys, 0.0).expect("integer breakpoints from 0")
        };
        Self { degrees, g }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FindFlowConfig {
    pub epsilon: f64,
    /// Lower end of the t-window as a fraction of n; None picks the default.
    pub gamma: Option<f64>,
    /// Allowed fraction of non-neighbours; None picks γε/100.
    pub eta: Option<f64>,
}

impl Default for FindFlowConfig {
    fn default() -> Self {
        Self { epsilon: 0.05, gamma: None, eta: None }
    }
}

/// Which side of the flow the returned h lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FlowCase {
    /// One vertex color only: t = n, h = 0.
    Degenerate,
    /// C = blue: blue edges between red vertices of [t] and all blue vertices.
    BlueOverRedPrefix,
    /// C = red: red edges between all red vertices and blue vertices of [t].
    RedOverBluePrefix,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FindFlowResult {
    pub t: usize,
    pub color: Color,
    /// Positive flows as (C-colored vertex, C̄-colored vertex, h).
    pub h: Vec<(usize, usize, u64)>,
    pub flow_value: u64,
    /// |C∩[t]|/t + Σ_{v∈C̄∩[t]} Σ_{e∋v} h(e)/(st).
    pub value: Rational64,
    pub case: FlowCase,
    pub f_bounds: FBounds,
    pub gamma: f64,
    pub eta: f64,
    /// The N below which the asymptotic guarantee is not claimed.
    pub n_threshold: u64,
    pub t_range: (usize, usize),
    pub profile: ColoredDegreeProfile,
}

impl FindFlowResult {
    pub fn value_f64(&self) -> f64 {
        *self.value.numer() as f64 / *self.value.denom() as f64
    }
}

/// Default γ: half of the proof's window factor (1−f)/(1 + λ/(1−f)).
fn default_gamma(lambda: f64, f: f64) -> f64 {
    0.5 * (1.0 - f) / (1.0 + lambda / (1.0 - f))
}

/// Sweeps every t in [⌈γn⌉, n] for both colors and returns the flow of
/// largest value; ties go to blue, then to the smaller t.
pub fn findflow(tc: &TotalColoring, r: u64, s: u64, config: &FindFlowConfig) -> Result<FindFlowResult> {
    let n = tc.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty vertex set".into()));
    }
    if r == 0 || s == 0 {
        return Err(Error::InvalidInput(format!("r and s must be positive, got {r}, {s}")));
    }
    if !(config.epsilon > 0.0 && config.epsilon < 1.0) {
        return Err(Error::InvalidInput(format!("epsilon must be in (0, 1), got {}", config.epsilon)));
    }
    let lambda = s as f64 / r as f64;
    let f_bounds = f_closed(lambda)?;
    let f = f_bounds.exact.unwrap_or(f_bounds.upper);
    let gamma = config.gamma.unwrap_or_else(|| default_gamma(lambda, f));
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidInput(format!("gamma must be in [0, 1], got {gamma}")));
    }
    let eta = config.eta.unwrap_or(gamma * config.epsilon / 100.0);
    let missing = tc.max_non_neighbors();
    if missing as f64 > eta * n as f64 + 1e-9 {
        return Err(Error::Precondition(format!(
            "a vertex misses {missing} neighbours, more than ηn = {:.3}",
            eta * n as f64
        )));
    }
    let n_threshold = if gamma > 0.0 { (100.0 / (gamma * lambda * config.epsilon)).ceil() as u64 } else { u64::MAX };
    let t_lo = ((gamma * n as f64).ceil() as usize).clamp(1, n);
    let profile = ColoredDegreeProfile::new(tc);

    let result = |t, color, h, flow_value, value, case| FindFlowResult {
        t,
        color,
        h,
        flow_value,
        value,
        case,
        f_bounds,
        gamma,
        eta,
        n_threshold,
        t_range: (t_lo, n),
        profile: profile.clone(),
    };

    let first = tc.vertex_color(0);
    if tc.vertex_colors().iter().all(|&c| c == first) {
        return Ok(result(n, first, Vec::new(), 0, Rational64::from_integer(1), FlowCase::Degenerate));
    }

    let mut best: Option<(Rational64, Color, usize)> = None;
    for c in [Color::Blue, Color::Red] {
        let mut side = Side::new(tc, c, r, s);
        let mut count_c = 0i64;
        for t in 1..=n {
            let v = t - 1;
            if tc.vertex_color(v) == c {
                count_c += 1;
            } else {
                side.engine.activate(side.local[v]);
                side.engine.augment();
            }
            if t >= t_lo {
                let si = s as i64;
                let val = Rational64::new(count_c * si + side.engine.value() as i64, si * t as i64);
                if best.map_or(true, |(b, _, _)| val > b) {
                    best = Some((val, c, t));
                }
            }
        }
    }
    let (value, color, t) = best.expect("t-window is nonempty");
    let mut side = Side::new(tc, color, r, s);
    for v in (0..t).filter(|&v| tc.vertex_color(v) != color) {
        side.engine.activate(side.local[v]);
    }
    side.engine.augment();
    let h = side.engine.flows().map(|(x, y, f)| (side.xs[x], side.ys[y], f)).collect();
    let case = if color == Color::Blue { FlowCase::BlueOverRedPrefix } else { FlowCase::RedOverBluePrefix };
    Ok(result(t, color, h, side.engine.value(), value, case))
}

/// Flow network for color C: X = C-colored vertices (capacity r), Y =
/// C̄-colored vertices (capacity s), edges of color C between them.
struct Side {
    xs: Vec<usize>,
    ys: Vec<usize>,
    /// Global vertex → index within its side.
    local: Vec<usize>,
    engine: FlowEngine,
}

impl Side {
    fn new(tc: &TotalColoring, c: Color, r: u64, s: u64) -> Self {
        let n = tc.n();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut local = vec![0; n];
        for v in 0..n {
            if tc.vertex_color(v) == c {
                local[v] = xs.len();
                xs.push(v);
            } else {
                local[v] = ys.len();
                ys.push(v);
            }
        }
        let mut edges = Vec::new();
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in ys.iter().enumerate() {
                if tc.edge_color(x, y) == Some(c) {
                    edges.push((i, j));
                }
            }
        }
        let engine = FlowEngine::new(xs.len(), ys.len(), edges, r, s);
        Self { xs, ys, local, engine }
    }
}

/// The three output conditions checked literally on (t, C, h), with the
/// reported value as the target of the third.
pub fn verify_findflow(tc: &TotalColoring, r: u64, s: u64, res: &FindFlowResult) -> Vec<String> {
    let n = tc.n();
    let mut out = Vec::new();
    if res.t == 0 || res.t > n {
        out.push(format!("t = {} outside 1..={n}", res.t));
        return out;
    }
    let c = res.color;
    let mut load = vec![0u64; n];
    for &(u, v, f) in &res.h {
        if u >= n || v >= n {
            out.push(format!("edge ({u}, {v}) leaves the vertex range"));
            continue;
        }
        if f > 0 && (tc.edge_color(u, v) != Some(c) || tc.vertex_color(u) == tc.vertex_color(v)) {
            out.push(format!("h({u}{v}) = {f} on an edge that is not {c:?} between opposite vertex colors"));
        }
        load[u] += f;
        load[v] += f;
    }
    for v in 0..n {
        let cap = if tc.vertex_color(v) == c { r } else { s };
        if load[v] > cap {
            out.push(format!("vertex {v} carries {} > {cap}", load[v]));
        }
    }
    let own = (0..res.t).filter(|&v| tc.vertex_color(v) == c).count() as i64;
    let inflow: u64 = (0..res.t).filter(|&v| tc.vertex_color(v) != c).map(|v| load[v]).sum();
    let value = Rational64::new(own, res.t as i64) + Rational64::new(inflow as i64, (s * res.t as u64) as i64);
    if value < res.value {
        out.push(format!("value {value} is below the reported {}", res.value));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alternating_complete_red_bipartite(n: usize) -> TotalColoring {
        let vc: Vec<Color> = (0..n).map(|v| if v % 2 == 0 { Color::Red } else { Color::Blue }).collect();
        let vc2 = vc.clone();
        let edges = TwoColoring::from_fn(n, move |u, v| if vc2[u] != vc2[v] { Color::Red } else { Color::Blue });
        TotalColoring::new(vc, edges, None).unwrap()
    }

    #[test]
    fn all_red_is_degenerate() {
        let n = 9;
        let tc = TotalColoring::new(vec![Color::Red; n], TwoColoring::monochromatic(n, Color::Red), None).unwrap();
        let res = findflow(&tc, 1, 2, &FindFlowConfig::default()).unwrap();
        assert_eq!((res.t, res.color, res.case), (n, Color::Red, FlowCase::Degenerate));
        assert_eq!(res.value, Rational64::from_integer(1));
        assert!(res.h.is_empty());
    }

    #[test]
    fn red_matching_between_halves() {
        for n in [10, 40] {
            let tc = alternating_complete_red_bipartite(n);
            let full = FindFlowConfig { gamma: Some(1.0), ..Default::default() };
            let res = findflow(&tc, 1, 1, &full).unwrap();
            assert_eq!((res.t, res.flow_value), (n, n as u64 / 2));
            assert!(res.value_f64() >= 1.0 - 1.0 / n as f64, "n = {n}: {}", res.value);
            assert!(verify_findflow(&tc, 1, 1, &res).is_empty());
        }
    }

    #[test]
    fn profile_interpolates_degrees() {
        let tc = alternating_complete_red_bipartite(8);
        let p = ColoredDegreeProfile::new(&tc);
        // Every red–blue edge is red, so every blue degree is 0.
        assert_eq!(p.degrees, vec![0; 4]);
        let vc = vec![Color::Red, Color::Red, Color::Blue, Color::Blue, Color::Blue];
        let edges = TwoColoring::from_fn(5, |u, v| if u == 0 && v >= 3 || u == 1 { Color::Blue } else { Color::Red });
        let p = ColoredDegreeProfile::new(&TotalColoring::new(vc, edges, None).unwrap());
        assert_eq!(p.degrees, vec![2, 3]);
        for (k, want) in [(0.0, 0.0), (1.0, 2.0), (1.5, 2.5), (2.0, 3.0), (7.0, 3.0)] {
            assert_eq!(p.g.eval(k), want);
        }
    }

    #[test]
    fn degree_precondition() {
        let tc = alternating_complete_red_bipartite(10);
        let absent = FiniteGraph::new(10, &[(0, 1), (0, 3), (0, 5)]).unwrap();
        let tc = TotalColoring::new(tc.vertex_colors().to_vec(), tc.edges.clone(), Some(absent)).unwrap();
        let strict = FindFlowConfig { eta: Some(0.1), ..Default::default() };
        assert!(matches!(findflow(&tc, 1, 1, &strict), Err(Error::Precondition(_))));
        let loose = FindFlowConfig { eta: Some(0.3), ..Default::default() };
        let res = findflow(&tc, 1, 1, &loose).unwrap();
        assert!(verify_findflow(&tc, 1, 1, &res).is_empty());
    }

    #[test]
    fn corrupted_flow_is_caught() {
        let tc = alternating_complete_red_bipartite(10);
        let full = FindFlowConfig { gamma: Some(1.0), ..Default::default() };
        let mut res = findflow(&tc, 1, 1, &full).unwrap();
        res.h.push(res.h[0]);
        assert!(!verify_findflow(&tc, 1, 1, &res).is_empty());
    }
}
