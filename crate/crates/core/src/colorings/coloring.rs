use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::Red, Color::Blue];

    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<Color> {
        match c {
            'R' => Some(Color::Red),
            'B' => Some(Color::Blue),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColoringRule {
    /// Edge uv with u < v takes the color of u.
    LeftmostEndpoint(Vec<Color>),
    /// uv is red iff (a − 1) divides v − u.
    Modular(usize),
    /// Upper-triangular colors in row-major order.
    Explicit(Vec<Color>),
}

/// Red/blue edge coloring of the complete graph on vertices 0..n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoColoring {
    n: usize,
    rule: ColoringRule,
}

fn triangle_index(n: usize, u: usize, v: usize) -> usize {
    // Row u holds pairs (u, u+1..n).
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

impl TwoColoring {
    pub fn new(n: usize, rule: ColoringRule) -> Result<Self> {
        match &rule {
            ColoringRule::LeftmostEndpoint(cols) if cols.len() != n => {
                return Err(Error::InvalidInput(format!("{} vertex colors for n = {n}", cols.len())));
            }
            ColoringRule::Modular(a) if *a < 2 => {
                return Err(Error::InvalidInput(format!("modular rule needs a ≥ 2, got {a}")));
            }
            ColoringRule::Explicit(cols) if cols.len() != n * n.saturating_sub(1) / 2 => {
                return Err(Error::InvalidInput(format!("{} edge colors for n = {n}", cols.len())));
            }
            _ => {}
        }
        Ok(Self { n, rule })
    }

    /// Explicit coloring from a color function on pairs u < v.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Color) -> Self {
        let cols = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).map(|(u, v)| f(u, v)).collect();
        Self { n, rule: ColoringRule::Explicit(cols) }
    }

    pub fn monochromatic(n: usize, c: Color) -> Self {
        Self::from_fn(n, |_, _| c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rule(&self) -> &ColoringRule {
        &self.rule
    }

    pub fn color(&self, u: usize, v: usize) -> Color {
        debug_assert!(u != v && u < self.n && v < self.n);
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        match &self.rule {
            ColoringRule::LeftmostEndpoint(cols) => cols[u],
            ColoringRule::Modular(a) => {
                if (v - u) % (a - 1) == 0 {
                    Color::Red
                } else {
                    Color::Blue
                }
            }
            ColoringRule::Explicit(cols) => cols[triangle_index(self.n, u, v)],
        }
    }

    /// Same coloring with every edge given explicitly.
    pub fn to_explicit(&self) -> Self {
        Self::from_fn(self.n, |u, v| self.color(u, v))
    }

    /// Edge ij colored as φ(i)φ(j).
    pub fn pullback(&self, phi: &[usize]) -> Result<Self> {
        if phi.iter().any(|&p| p >= self.n) {
            return Err(Error::InvalidInput("map leaves the vertex range".into()));
        }
        Ok(Self::from_fn(phi.len(), |i, j| self.color(phi[i], phi[j])))
    }

    pub fn to_text(&self) -> String {
        let letters = |cols: &[Color]| cols.iter().map(|c| c.letter()).collect::<String>();
        match &self.rule {
            ColoringRule::LeftmostEndpoint(cols) => format!("{} leftmost\n{}\n", self.n, letters(cols)),
            ColoringRule::Modular(a) => format!("{} modular:{a}\n", self.n),
            ColoringRule::Explicit(cols) => format!("{} explicit\n{}\n", self.n, letters(cols)),
        }
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let mut parts = header.split_whitespace();
        let bad = |msg: String| Error::Parse { line: hl, msg };
        let n: usize = parts
            .next()
            .ok_or_else(|| bad("missing n".into()))?
            .parse()
            .map_err(|e| bad(format!("n: {e}")))?;
        let rule = parts.next().ok_or_else(|| bad("missing rule".into()))?;
        if parts.next().is_some() {
            return Err(bad("unexpected token after rule".into()));
        }
        let mut body = || -> Result<Vec<Color>> {
            let (line, l) = lines.next().ok_or_else(|| bad("missing color string".into()))?;
            l.chars()
                .map(|c| Color::from_letter(c).ok_or(Error::Parse { line, msg: format!("bad color letter {c:?}") }))
                .collect()
        };
        let parsed = if rule == "leftmost" {
            ColoringRule::LeftmostEndpoint(body()?)
        } else if rule == "explicit" {
            ColoringRule::Explicit(if n < 2 { Vec::new() } else { body()? })
        } else if let Some(a) = rule.strip_prefix("modular:") {
            ColoringRule::Modular(a.parse().map_err(|e| bad(format!("modulus: {e}")))?)
        } else {
            return Err(bad(format!("unknown rule {rule:?}")));
        };
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse { line, msg: "trailing content".into() });
        }
        Self::new(n, parsed).map_err(|e| bad(e.to_string()))
    }
}

/// Coloring of K_n in which uv is red iff (a − 1) divides v − u.
pub fn clique_coloring(a: usize, n: usize) -> Result<TwoColoring> {
    TwoColoring::new(n, ColoringRule::Modular(a))
}

/// |S∩[m]|/m at each checkpoint and their maximum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub checkpoints: Vec<(usize, Rational64)>,
    pub max_ratio: Rational64,
}

/// Prefix densities of S (vertex ids 0..n, with [m] = ids below m).
pub fn density(set: &VertexSet, n: usize, checkpoints: &[usize]) -> Result<DensityReport> {
    if checkpoints.is_empty() {
        return Err(Error::InvalidInput("no checkpoints".into()));
    }
    if let Some(&m) = checkpoints.iter().find(|&&m| m == 0 || m > n) {
        return Err(Error::InvalidInput(format!("checkpoint {m} outside 1..={n}")));
    }
    let members = set.as_slice();
    let rows: Vec<(usize, Rational64)> = checkpoints
        .iter()
        .map(|&m| {
            let count = members.partition_point(|&v| v < m);
            (m, Rational64::new(count as i64, m as i64))
        })
        .collect();
    let max_ratio = rows.iter().map(|r| r.1).max().expect("nonempty");
    Ok(DensityReport { checkpoints: rows, max_ratio })
}

/// max over m of |T∩[m]|/m for a set of vertex ids.
pub fn upper_density(members: &[usize]) -> Rational64 {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    // The maximum is attained right after an element.
    sorted
        .iter()
        .enumerate()
        .map(|(k, &v)| Rational64::new(k as i64 + 1, v as i64 + 1))
        .max()
        .unwrap_or_else(|| Rational64::from_integer(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_examples() {
        let all_red = clique_coloring(2, 5).unwrap();
        assert!((0..5).all(|u| (u + 1..5).all(|v| all_red.color(u, v) == Color::Red)));
        let c = clique_coloring(3, 5).unwrap();
        // Vertices 1 and 3 are ids 0 and 2.
        assert_eq!(c.color(0, 2), Color::Red);
        assert_eq!(c.color(0, 1), Color::Blue);
    }

    #[test]
    fn blue_graph_properly_colored_by_residues() {
        let c = clique_coloring(4, 12).unwrap();
        for u in 0..12 {
            for v in u + 1..12 {
                if c.color(u, v) == Color::Blue {
                    assert_ne!(u % 3, v % 3);
                } else {
                    assert_eq!(u % 3, v % 3);
                }
            }
        }
    }

    #[test]
    fn text_round_trips() {
        let cases = [
            TwoColoring::new(4, ColoringRule::LeftmostEndpoint(vec![Color::Blue, Color::Red, Color::Red, Color::Blue]))
                .unwrap(),
            clique_coloring(5, 9).unwrap(),
            TwoColoring::from_fn(5, |u, v| if (u * v) % 3 == 0 { Color::Red } else { Color::Blue }),
            TwoColoring::monochromatic(1, Color::Red),
        ];
        for c in cases {
            let text = c.to_text();
            let back = TwoColoring::parse_text(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.to_text(), text);
        }
    }

    #[test]
    fn parse_rejects_bad_text() {
        assert!(TwoColoring::parse_text("3 leftmost\nRBX\n").is_err());
        assert!(TwoColoring::parse_text("3 leftmost\nRB\n").is_err());
        assert!(TwoColoring::parse_text("3 explicit\nRRR\nR\n").is_err());
        assert!(TwoColoring::parse_text("3 modular:1\n").is_err());
        assert!(TwoColoring::parse_text("3 fancy\n").is_err());
    }

    #[test]
    fn explicit_matches_rule() {
        let c = clique_coloring(3, 7).unwrap();
        let e = c.to_explicit();
        for u in 0..7 {
            for v in 0..7 {
                if u != v {
                    assert_eq!(c.color(u, v), e.color(u, v));
                }
            }
        }
    }

    #[test]
    fn density_examples() {
        let n = 1000;
        let evens: VertexSet = (0..n).filter(|v| v % 2 == 1).collect();
        let r = density(&evens, n, &[100, 500, 1000]).unwrap();
        assert_eq!(r.max_ratio, Rational64::new(1, 2));
        let all: VertexSet = (0..n).collect();
        assert_eq!(density(&all, n, &[10, n]).unwrap().max_ratio, Rational64::from_integer(1));
        let residue: VertexSet = (0..n).filter(|v| v % 4 == 3).collect();
        let r = density(&residue, n, &[400, 800, 1000]).unwrap();
        assert_eq!(r.max_ratio, Rational64::new(1, 4));
        assert!(density(&all, n, &[n + 1]).is_err());
    }

    #[test]
    fn upper_density_of_sets() {
        assert_eq!(upper_density(&[0, 1]), Rational64::from_integer(1));
        assert_eq!(upper_density(&[1, 3]), Rational64::new(1, 2));
        assert_eq!(upper_density(&[]), Rational64::from_integer(0));
    }
}
