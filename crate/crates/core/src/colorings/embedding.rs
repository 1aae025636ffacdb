use num_rational::Rational64;

use super::coloring::{upper_density, Color, TwoColoring};
use crate::error::{Error, Result};
use crate::graphs::{FiniteGraph, GraphFamily};

/// Largest number of host vertices accepted by the exhaustive search.
pub const MAX_BRUTEFORCE_N: usize = 14;

/// Whether h maps bijectively onto `target` with every edge image of color c.
fn embeds_onto(chi: &TwoColoring, h: &FiniteGraph, target: &[usize], c: Color) -> bool {
    fn rec(chi: &TwoColoring, h: &FiniteGraph, target: &[usize], c: Color, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == h.n() {
            return true;
        }
        for (slot, &x) in target.iter().enumerate() {
            if used[slot] {
                continue;
            }
            let ok = h.neighbors(v).iter().filter(|&&w| w < v).all(|&w| chi.color(map[w], x) == c);
            if ok {
                used[slot] = true;
                map.push(x);
                if rec(chi, h, target, c, map, used) {
                    return true;
                }
                map.pop();
                used[slot] = false;
            }
        }
        false
    }
    rec(chi, h, target, c, &mut Vec::with_capacity(h.n()), &mut vec![false; target.len()])
}

/// Densest color-c copy of prefix(family, h_size): its upper density and
/// image, or None if there is no such copy.
///
/// Candidate image sets are visited in decreasing density, so the first one
/// that admits a monochromatic bijection is optimal.
pub fn max_embedding_witness(
    chi: &TwoColoring,
    family: &GraphFamily,
    h_size: usize,
    c: Color,
) -> Result<Option<(Rational64, Vec<usize>)>> {
    let n = chi.n();
    if n > MAX_BRUTEFORCE_N {
        return Err(Error::InvalidInput(format!("exhaustive search limited to n ≤ {MAX_BRUTEFORCE_N}, got {n}")));
    }
    if h_size == 0 || h_size > n {
        return Err(Error::InvalidInput(format!("h_size must be in 1..={n}, got {h_size}")));
    }
    let h = family.prefix(h_size)?;
    let h_size = h.n();
    let mut sets: Vec<(Rational64, Vec<usize>)> = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == h_size {
            let t: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            sets.push((upper_density(&t), t));
        }
    }
    sets.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    Ok(sets.into_iter().find(|(_, t)| embeds_onto(chi, &h, t, c)))
}

/// Best upper density of a color-c copy of prefix(family, h_size), or 0 if none.
pub fn max_embedding_density_in(chi: &TwoColoring, family: &GraphFamily, h_size: usize, c: Color) -> Result<Rational64> {
    Ok(max_embedding_witness(chi, family, h_size, c)?.map_or_else(|| Rational64::from_integer(0), |(d, _)| d))
}

/// Best density over both colors; ties go to red.
pub fn max_embedding_density_bruteforce(chi: &TwoColoring, family: &GraphFamily, h_size: usize) -> Result<(Rational64, Color)> {
    let red = max_embedding_density_in(chi, family, h_size, Color::Red)?;
    let blue = max_embedding_density_in(chi, family, h_size, Color::Blue)?;
    Ok(if red >= blue { (red, Color::Red) } else { (blue, Color::Blue) })
}

#[cfg(test)]
mod tests {
    use super::super::coloring::clique_coloring;
    use super::*;

    #[test]
    fn all_red_identity() {
        let chi = TwoColoring::monochromatic(6, Color::Red);
        let fam = GraphFamily::PathPower(1);
        assert_eq!(max_embedding_density_bruteforce(&chi, &fam, 6).unwrap(), (Rational64::from_integer(1), Color::Red));
    }

    #[test]
    fn modular_triangles_stay_in_residue_classes() {
        let chi = clique_coloring(3, 8).unwrap();
        let k3 = GraphFamily::Explicit(FiniteGraph::complete(3));
        let (d, c) = max_embedding_density_bruteforce(&chi, &k3, 3).unwrap();
        assert_eq!(c, Color::Red);
        let (_, img) = max_embedding_witness(&chi, &k3, 3, Color::Red).unwrap().unwrap();
        assert!(img.iter().all(|v| v % 2 == img[0] % 2));
        // Ids 0, 2, 4 give prefix ratios 1/1, 2/3, 3/5; the whole-window share is 3/8.
        assert_eq!(d, Rational64::from_integer(1));
        assert_eq!(max_embedding_density_in(&chi, &k3, 3, Color::Blue).unwrap(), Rational64::from_integer(0));
    }

    #[test]
    fn no_blue_edge_gives_zero() {
        let chi = TwoColoring::monochromatic(5, Color::Red);
        let d = max_embedding_density_in(&chi, &GraphFamily::Explicit(FiniteGraph::complete(2)), 2, Color::Blue).unwrap();
        assert_eq!(d, Rational64::from_integer(0));
    }

    #[test]
    fn guards() {
        let chi = TwoColoring::monochromatic(15, Color::Red);
        assert!(max_embedding_density_bruteforce(&chi, &GraphFamily::PathPower(1), 3).is_err());
        let chi = TwoColoring::monochromatic(5, Color::Red);
        assert!(max_embedding_density_bruteforce(&chi, &GraphFamily::PathPower(1), 6).is_err());
    }
}
