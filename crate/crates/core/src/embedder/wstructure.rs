use num_rational::Rational64;
use serde::Serialize;

use crate::colorings::{upper_density, Color, Shade, Shading, TwoColoring};
use crate::error::{Error, Result};

/// Default number of candidate vertices per side examined for each piece.
pub const DEFAULT_WINDOW: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum WComponent {
    /// A vertex whose shade has color C.
    IsolatedVertex { v: usize, shade: usize },
    /// Complete color-C bipartite graph between r vertices of C̄ shade
    /// `x_shade` and s vertices of C shade `y_shade`.
    BipartitePiece { x: Vec<usize>, y: Vec<usize>, x_shade: usize, y_shade: usize },
}

impl WComponent {
    pub fn vertices(&self) -> Vec<usize> {
        match self {
            WComponent::IsolatedVertex { v, .. } => vec![*v],
            WComponent::BipartitePiece { x, y, .. } => x.iter().chain(y).copied().collect(),
        }
    }

    /// Index j of the C-colored shade C_j the component lives in.
    pub fn c_shade(&self) -> usize {
        match self {
            WComponent::IsolatedVertex { shade, .. } => *shade,
            WComponent::BipartitePiece { y_shade, .. } => *y_shade,
        }
    }

    pub fn least_vertex(&self) -> usize {
        self.vertices().into_iter().min().expect("components are nonempty")
    }
}

/// Vertex-disjoint pieces and isolated vertices, all of color C, ordered by
/// least vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WStructure {
    pub color: Color,
    pub r: usize,
    pub s: usize,
    pub components: Vec<WComponent>,
    /// max over m of |V(W) ∩ [m]|/m.
    pub density: Rational64,
}

impl WStructure {
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.components.iter().flat_map(|c| c.vertices()).collect();
        vs.sort_unstable();
        vs
    }

    pub fn num_pieces(&self) -> usize {
        self.components.iter().filter(|c| matches!(c, WComponent::BipartitePiece { .. })).count()
    }

    /// Every structural invariant that fails against the host coloring and shading.
    pub fn violations(&self, chi: &TwoColoring, sh: &Shading) -> Vec<String> {
        let mut out = Vec::new();
        let c = self.color;
        let shade = |v: usize| sh.shades.get(v).copied();
        let mut seen = vec![false; chi.n()];
        for (idx, comp) in self.components.iter().enumerate() {
            for v in comp.vertices() {
                if v >= chi.n() {
                    out.push(format!("component {idx}: vertex {v} outside the host"));
                    return out;
                }
                if std::mem::replace(&mut seen[v], true) {
                    out.push(format!("component {idx}: vertex {v} used twice"));
                }
            }
            match comp {
                WComponent::IsolatedVertex { v, shade: j } => {
                    if shade(*v) != Some(Shade::Colored { color: c, index: *j }) {
                        out.push(format!("isolated vertex {v} is not in shade {}{j}", c.letter()));
                    }
                }
                WComponent::BipartitePiece { x, y, x_shade, y_shade } => {
                    if x.len() != self.r || y.len() != self.s {
                        out.push(format!("piece {idx} has sides {} and {}", x.len(), y.len()));
                    }
                    if x.iter().any(|&v| shade(v) != Some(Shade::Colored { color: c.other(), index: *x_shade })) {
                        out.push(format!("piece {idx}: X side leaves shade {}{x_shade}", c.other().letter()));
                    }
                    if y.iter().any(|&v| shade(v) != Some(Shade::Colored { color: c, index: *y_shade })) {
                        out.push(format!("piece {idx}: Y side leaves shade {}{y_shade}", c.letter()));
                    }
                    if x.iter().any(|&u| y.iter().any(|&v| chi.color(u, v) != c)) {
                        out.push(format!("piece {idx} is not complete in {c:?}"));
                    }
                }
            }
        }
        out
    }
}

/// Greedy W for one color: packs K^C_{r,s} pieces shade pair by shade pair,
/// then adds every remaining C-shaded vertex as an isolated component.
pub fn build_w_for_color(chi: &TwoColoring, sh: &Shading, r: usize, s: usize, c: Color, window: usize) -> Result<WStructure> {
    if r == 0 || s == 0 {
        return Err(Error::InvalidInput(format!("r and s must be positive, got {r}, {s}")));
    }
    if sh.shades.len() != chi.n() {
        return Err(Error::InvalidInput(format!("shading has {} vertices, coloring {}", sh.shades.len(), chi.n())));
    }
    if window < r.max(s) {
        return Err(Error::InvalidInput(format!("window {window} is smaller than max(r, s)")));
    }
    let mut used = vec![false; chi.n()];
    let mut components = Vec::new();
    for j in 1..=sh.a {
        for i in 1..=sh.a {
            let xs = sh.members(c.other(), i);
            let ys = sh.members(c, j);
            while let Some((x, y)) = find_piece(chi, c, &xs, &ys, r, s, window, &used) {
                for &v in x.iter().chain(&y) {
                    used[v] = true;
                }
                components.push(WComponent::BipartitePiece { x, y, x_shade: i, y_shade: j });
            }
        }
    }
    for v in 0..chi.n() {
        if let Shade::Colored { color, index } = sh.shades[v] {
            if color == c && !used[v] {
                components.push(WComponent::IsolatedVertex { v, shade: index });
            }
        }
    }
    components.sort_by_key(|comp| comp.least_vertex());
    let vs: Vec<usize> = components.iter().flat_map(|comp| comp.vertices()).collect();
    Ok(WStructure { color: c, r, s, components, density: upper_density(&vs) })
}

/// First piece in anchor order: the least unused y₀, the first `window`
/// unused X vertices joined to y₀ in color C, and the next window − 1 unused
/// Y vertices with at least r color-C neighbours among those. Y sets containing y₀ are tried in
/// lexicographic order; X takes the r least common neighbours.
#[allow(clippy::too_many_arguments)]
fn find_piece(
    chi: &TwoColoring,
    c: Color,
    xs: &[usize],
    ys: &[usize],
    r: usize,
    s: usize,
    window: usize,
    used: &[bool],
) -> Option<(Vec<usize>, Vec<usize>)> {
    let free_y: Vec<usize> = ys.iter().copied().filter(|&v| !used[v]).collect();
    for (k, &y0) in free_y.iter().enumerate() {
        let cand_x: Vec<usize> = xs.iter().copied().filter(|&u| !used[u] && chi.color(u, y0) == c).take(window).collect();
        if cand_x.len() < r {
            continue;
        }
        let rest: Vec<usize> = free_y[k + 1..]
            .iter()
            .copied()
            .filter(|&y| cand_x.iter().filter(|&&u| chi.color(u, y) == c).count() >= r)
            .take(window - 1)
            .collect();
        let mut pick = vec![y0];
        if let Some(found) = extend_y(chi, c, &cand_x, &rest, 0, s, r, &mut pick) {
            return Some(found);
        }
    }
    None
}

/// Completes `pick` to s vertices from rest[from..] keeping at least r
/// common X neighbours; returns the first success in lexicographic order.
#[allow(clippy::too_many_arguments)]
fn extend_y(
    chi: &TwoColoring,
    c: Color,
    cand_x: &[usize],
    rest: &[usize],
    from: usize,
    s: usize,
    r: usize,
    pick: &mut Vec<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if pick.len() == s {
        let x: Vec<usize> = cand_x.iter().copied().take(r).collect();
        return Some((x, pick.clone()));
    }
    for idx in from..rest.len() {
        let y = rest[idx];
        let common: Vec<usize> = cand_x.iter().copied().filter(|&u| chi.color(u, y) == c).collect();
        if common.len() < r {
            continue;
        }
        pick.push(y);
        if let Some(found) = extend_y(chi, c, &common, rest, idx + 1, s, r, pick) {
            return Some(found);
        }
        pick.pop();
    }
    None
}

/// W for the color with the larger density surrogate; ties go to red.
pub fn build_w(chi: &TwoColoring, sh: &Shading, r: usize, s: usize) -> Result<WStructure> {
    let red = build_w_for_color(chi, sh, r, s, Color::Red, DEFAULT_WINDOW)?;
    let blue = build_w_for_color(chi, sh, r, s, Color::Blue, DEFAULT_WINDOW)?;
    Ok(if red.density >= blue.density { red } else { blue })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::a_good_shading;

    fn labelled(a: usize, labels: &[Shade]) -> Shading {
        Shading { a, min_count: 1, shades: labels.to_vec(), rounds: Vec::new() }
    }

    #[test]
    fn all_red_gives_isolated_vertices() {
        let n = 12;
        let chi = TwoColoring::monochromatic(n, Color::Red);
        let sh = a_good_shading(&chi, 2, Rational64::new(1, 4), 2).unwrap();
        let w = build_w(&chi, &sh, 1, 1).unwrap();
        assert_eq!(w.color, Color::Red);
        assert_eq!(w.num_pieces(), 0);
        assert_eq!(w.components.len(), n);
        assert_eq!(w.density, Rational64::from_integer(1));
        assert!(w.violations(&chi, &sh).is_empty());
    }

    #[test]
    fn planted_k12_pieces_are_recovered() {
        // Three red K_{1,2}: blue-shaded 0, 3, 6 joined in red to the red-shaded
        // pairs {1,2}, {4,5}, {7,8}; every other red–blue edge is blue.
        let n = 9;
        let red_v = |v: usize| v % 3 != 0;
        let chi = TwoColoring::from_fn(n, |u, v| {
            if red_v(u) == red_v(v) {
                if red_v(u) { Color::Red } else { Color::Blue }
            } else if u / 3 == v / 3 {
                Color::Red
            } else {
                Color::Blue
            }
        });
        let shades: Vec<Shade> = (0..n)
            .map(|v| Shade::Colored { color: if red_v(v) { Color::Red } else { Color::Blue }, index: 1 })
            .collect();
        let sh = labelled(2, &shades);
        let w = build_w_for_color(&chi, &sh, 1, 2, Color::Red, DEFAULT_WINDOW).unwrap();
        let pieces: Vec<_> = w
            .components
            .iter()
            .filter_map(|c| match c {
                WComponent::BipartitePiece { x, y, .. } => Some((x.clone(), y.clone())),
                _ => None,
            })
            .collect();
        assert_eq!(pieces, vec![(vec![0], vec![1, 2]), (vec![3], vec![4, 5]), (vec![6], vec![7, 8])]);
        assert_eq!(w.components.len(), 3);
        assert!(w.violations(&chi, &sh).is_empty());
    }

    #[test]
    fn nothing_to_pack_gives_empty_structure() {
        let chi = TwoColoring::monochromatic(5, Color::Blue);
        let sh = labelled(2, &[Shade::X; 5]);
        let w = build_w(&chi, &sh, 1, 1).unwrap();
        assert!(w.components.is_empty());
        assert_eq!(w.density, Rational64::from_integer(0));
    }
}
