use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::coloring::{Color, TwoColoring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Shade {
    /// Shade C_index with 1 ≤ index ≤ a.
    Colored { color: Color, index: usize },
    X,
}

/// One pass of the shade-assigning loop.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShadeRound {
    pub color: Color,
    pub index: usize,
    /// Unshaded vertices at the start of the round.
    pub remaining: usize,
    /// Surrogate threshold for "infinite" in this round.
    pub threshold: usize,
    /// Number of vertices colored before the common neighborhood dropped below threshold.
    pub horizon: usize,
    pub assigned: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Shading {
    pub a: usize,
    pub min_count: usize,
    pub shades: Vec<Shade>,
    pub rounds: Vec<ShadeRound>,
}

impl Shading {
    pub fn members(&self, color: Color, index: usize) -> Vec<usize> {
        let want = Shade::Colored { color, index };
        (0..self.shades.len()).filter(|&v| self.shades[v] == want).collect()
    }

    pub fn x_members(&self) -> Vec<usize> {
        (0..self.shades.len()).filter(|&v| self.shades[v] == Shade::X).collect()
    }

    /// Number of nonempty shades of the given color.
    pub fn nonempty_shades(&self, color: Color) -> usize {
        (1..=self.a).filter(|&i| !self.members(color, i).is_empty()).count()
    }

    /// Compact per-vertex labels such as "R1", "B3", "X".
    pub fn labels(&self) -> Vec<String> {
        self.shades
            .iter()
            .map(|s| match s {
                Shade::Colored { color, index } => format!("{}{index}", color.letter()),
                Shade::X => "X".into(),
            })
            .collect()
    }
}

/// Result of the basic coloring of one round.
struct BasicColoring {
    colors: Vec<Color>,
    horizon: usize,
    /// Positions (into V) of the common neighborhood at the horizon.
    common: Vec<usize>,
}

/// Colors V greedily so that the running common neighborhood
/// ∩ N_{c(v)}(v) ∩ V keeps at least `threshold` vertices, taking the larger
/// surviving side (ties red). From the first vertex where neither side
/// survives, the common set is frozen and each remaining vertex takes the
/// color with more neighbours in it.
fn basic_coloring(chi: &TwoColoring, vs: &[usize], threshold: usize) -> BasicColoring {
    let mut common: Vec<usize> = (0..vs.len()).collect();
    let mut colors = Vec::with_capacity(vs.len());
    let mut horizon = vs.len();
    for (k, &v) in vs.iter().enumerate() {
        let (red, blue): (Vec<usize>, Vec<usize>) =
            common.iter().copied().filter(|&j| j != k).partition(|&j| chi.color(v, vs[j]) == Color::Red);
        let (c, side) = if red.len() >= blue.len() { (Color::Red, red) } else { (Color::Blue, blue) };
        if side.len() < threshold {
            horizon = k;
            break;
        }
        colors.push(c);
        common = side;
    }
    for &v in &vs[horizon..] {
        let red = common.iter().filter(|&&j| vs[j] != v && chi.color(v, vs[j]) == Color::Red).count();
        let blue = common.iter().filter(|&&j| vs[j] != v).count() - red;
        colors.push(if red >= blue { Color::Red } else { Color::Blue });
    }
    BasicColoring { colors, horizon, common }
}

/// Finite version of the shade-assigning algorithm.
///
/// "Infinite" is read as "at least max(⌈θ·|V|⌉, min_count) vertices", where V
/// is the set still unshaded in the current round. Each round colors V, picks
/// the color with more members in the frozen common neighborhood (ties red),
/// and gives the vertices of that color the lowest empty shade C_i. When
/// i = a − 1 the other color's vertices become C̄_a and the algorithm stops;
/// fewer than min_count unshaded vertices, or a failure at the first vertex,
/// send the rest to X.
pub fn a_good_shading(chi: &TwoColoring, a: usize, theta: Rational64, min_count: usize) -> Result<Shading> {
    if a < 2 {
        return Err(Error::InvalidInput(format!("a must be at least 2, got {a}")));
    }
    if !(theta > Rational64::from_integer(0) && theta < Rational64::new(1, 2)) {
        return Err(Error::InvalidInput(format!("theta must lie in (0, 1/2), got {theta}")));
    }
    if min_count == 0 {
        return Err(Error::InvalidInput("min_count must be positive".into()));
    }
    let n = chi.n();
    let mut shades: Vec<Option<Shade>> = vec![None; n];
    let mut next = [1usize, 1usize];
    let slot = |c: Color| if c == Color::Red { 0 } else { 1 };
    let mut rounds = Vec::new();

    loop {
        let vs: Vec<usize> = (0..n).filter(|&v| shades[v].is_none()).collect();
        if vs.len() < min_count {
            break;
        }
        let threshold = (theta * vs.len() as i64).ceil().to_integer().max(min_count as i64) as usize;
        let basic = basic_coloring(chi, &vs, threshold);
        if basic.horizon == 0 {
            break;
        }
        let red = basic.common.iter().filter(|&&j| basic.colors[j] == Color::Red).count();
        let dominant = if 2 * red >= basic.common.len() { Color::Red } else { Color::Blue };
        let index = next[slot(dominant)];
        next[slot(dominant)] += 1;
        let mut assigned = 0;
        for (k, &v) in vs.iter().enumerate() {
            if basic.colors[k] == dominant {
                shades[v] = Some(Shade::Colored { color: dominant, index });
                assigned += 1;
            }
        }
        rounds.push(ShadeRound {
            color: dominant,
            index,
            remaining: vs.len(),
            threshold,
            horizon: basic.horizon,
            assigned,
        });
        if index == a - 1 {
            let other = dominant.other();
            for (k, &v) in vs.iter().enumerate() {
                if basic.colors[k] == other {
                    shades[v] = Some(Shade::Colored { color: other, index: a });
                }
            }
            break;
        }
    }
    let shades = shades.into_iter().map(|s| s.unwrap_or(Shade::X)).collect();
    Ok(Shading { a, min_count, shades, rounds })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShadingCheck {
    pub bullet: u8,
    pub color: Color,
    pub index: usize,
    pub subset: Vec<usize>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShadingReport {
    pub passed: bool,
    pub checks: usize,
    /// Smallest common-neighborhood count seen, if anything was checked.
    pub min_found: Option<usize>,
    /// The check attaining `min_found`.
    pub worst: Option<ShadingCheck>,
}

/// Samples finite subsets S and counts common neighbours against the a-good
/// bullets, for every color C and 1 ≤ i ≤ a − 1 with C_i nonempty:
///
/// 1. S ⊆ C_i, counting |∩_{v∈S} N_C(v) ∩ C_i|;
/// 2. S ⊆ C̄_a ∪ C_{i+1} ∪ … ∪ C_{a−1}, counting |∩_{v∈S} N_{C̄}(v) ∩ C_i|.
///
/// Every singleton is checked, then `sample_size` random subsets of size up
/// to `subset_cap` per pool. Passes iff every count is at least min_count.
pub fn verify_shading(
    chi: &TwoColoring,
    sh: &Shading,
    sample_size: usize,
    subset_cap: usize,
    seed: u64,
) -> Result<ShadingReport> {
    if sh.shades.len() != chi.n() {
        return Err(Error::InvalidInput(format!("shading has {} vertices, coloring {}", sh.shades.len(), chi.n())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    let mut worst: Option<ShadingCheck> = None;
    let cap = subset_cap.max(1);
    for color in Color::BOTH {
        for i in 1..sh.a {
            let target = sh.members(color, i);
            if target.is_empty() {
                continue;
            }
            let mut higher = sh.members(color.other(), sh.a);
            for j in i + 1..sh.a {
                higher.extend(sh.members(color, j));
            }
            for (bullet, pool, edge) in [(1u8, &target, color), (2u8, &higher, color.other())] {
                if pool.is_empty() {
                    continue;
                }
                let mut subsets: Vec<Vec<usize>> = pool.iter().map(|&v| vec![v]).collect();
                if cap > 1 && pool.len() > 1 {
                    for _ in 0..sample_size {
                        let k = rng.gen_range(2..=cap.min(pool.len()));
                        let mut s: Vec<usize> = pool.choose_multiple(&mut rng, k).copied().collect();
                        s.sort_unstable();
                        subsets.push(s);
                    }
                }
                for s in subsets {
                    let count = target
                        .iter()
                        .filter(|&&u| s.iter().all(|&v| v != u && chi.color(u, v) == edge))
                        .count();
                    checks += 1;
                    if worst.as_ref().is_none_or(|w| count < w.count) {
                        worst = Some(ShadingCheck { bullet, color, index: i, subset: s, count });
                    }
                }
            }
        }
    }
    let min_found = worst.as_ref().map(|w| w.count);
    Ok(ShadingReport { passed: min_found.is_none_or(|m| m >= sh.min_count), checks, min_found, worst })
}

#[cfg(test)]
mod tests {
    use super::super::coloring::clique_coloring;
    use super::*;

    fn theta() -> Rational64 {
        Rational64::new(1, 10)
    }

    #[test]
    fn all_red_goes_to_first_red_shade() {
        let chi = TwoColoring::monochromatic(60, Color::Red);
        let sh = a_good_shading(&chi, 2, theta(), 5).unwrap();
        assert!(sh.shades.iter().all(|s| *s == Shade::Colored { color: Color::Red, index: 1 }));
        let rep = verify_shading(&chi, &sh, 50, 4, 7).unwrap();
        assert!(rep.passed);
        assert!(rep.min_found.unwrap() >= 55);
    }

    #[test]
    fn tiny_instance_is_all_x() {
        let chi = TwoColoring::monochromatic(4, Color::Red);
        let sh = a_good_shading(&chi, 3, theta(), 10).unwrap();
        assert_eq!(sh.x_members().len(), 4);
        let rep = verify_shading(&chi, &sh, 10, 3, 1).unwrap();
        assert!(rep.passed && rep.checks == 0);
    }

    #[test]
    fn modular_three_uses_few_shades() {
        let chi = clique_coloring(3, 300).unwrap();
        let min_count = 10;
        let sh = a_good_shading(&chi, 3, theta(), min_count).unwrap();
        assert!(sh.nonempty_shades(Color::Red) <= 2);
        assert!(sh.nonempty_shades(Color::Blue) <= 2);
        assert!(sh.x_members().len() <= min_count);
        assert!(sh.rounds.len() <= 2 * 3 - 3);
        assert!(verify_shading(&chi, &sh, 200, 5, 3).unwrap().passed);
    }

    #[test]
    fn corrupted_shading_fails() {
        // All red except a blue star at vertex 7; then relabel 7 as R1.
        let chi = TwoColoring::from_fn(40, |u, v| if u == 7 || v == 7 { Color::Blue } else { Color::Red });
        let mut sh = a_good_shading(&chi, 2, theta(), 5).unwrap();
        assert_ne!(sh.shades[7], Shade::Colored { color: Color::Red, index: 1 });
        sh.shades[7] = Shade::Colored { color: Color::Red, index: 1 };
        let rep = verify_shading(&chi, &sh, 20, 3, 5).unwrap();
        assert!(!rep.passed);
        assert_eq!(rep.worst.unwrap().subset, vec![7]);
    }

    #[test]
    fn rejects_bad_parameters() {
        let chi = TwoColoring::monochromatic(5, Color::Red);
        assert!(a_good_shading(&chi, 1, theta(), 1).is_err());
        assert!(a_good_shading(&chi, 2, Rational64::new(1, 2), 1).is_err());
        assert!(a_good_shading(&chi, 2, theta(), 0).is_err());
    }
}
