use serde::Serialize;

use super::coloring::{Color, ColoringRule, TwoColoring};
use crate::error::{Error, Result};
use crate::lipschitz::{gamma_crossing, ExtendedReal, GammaParam, PLFunction, Sign};

/// Levels i below this are outside the "i large enough" regime of the α+β bound.
pub const BOUND_THRESHOLD: usize = 50;

/// Left-to-right vertex coloring with ⌊(m+g(m))/2⌋ reds among the first m
/// vertices, its α/β indices and the block bijection φ.
///
/// Positions are 1-based (vertex id + 1); α_i, β_i count red/blue vertices.
#[derive(Debug, Clone, Serialize)]
pub struct AdversaryInstance {
    pub s: usize,
    pub r: usize,
    #[serde(skip)]
    pub g: PLFunction,
    pub n: usize,
    pub vertex_colors: Vec<Color>,
    /// Ids of red vertices left to right (r_1 is `red_positions[0]`).
    pub red_positions: Vec<usize>,
    pub blue_positions: Vec<usize>,
    /// α_1, α_2, … for every i at which α_i exists among the n vertices.
    pub alpha: Vec<usize>,
    /// β_1, β_2, … likewise.
    pub beta: Vec<usize>,
    /// Number of leading i with both α_i, β_i defined and α_i + β_i ≤ n.
    pub blocks: usize,
    /// φ(k+1) = vertex id `phi[k]`.
    pub phi: Vec<usize>,
}

/// ⌊(m + g(m))/2⌋ with floating noise snapped away.
fn red_target(g: &PLFunction, m: usize) -> i64 {
    ((m as f64 + g.eval(m as f64)) / 2.0 + 1e-9).floor() as i64
}

/// Least k ≥ from (1-based) such that r·left(k) ≤ s·(k − i), where `left`
/// counts opposite-colored vertices before the k-th vertex of `positions`.
fn first_admissible(positions: &[usize], s: usize, r: usize, i: usize, from: usize) -> Option<usize> {
    (from.max(i)..=positions.len()).find(|&k| {
        let left = positions[k - 1] - (k - 1);
        r * left <= s * (k - i)
    })
}

impl AdversaryInstance {
    pub fn lambda(&self) -> f64 {
        self.s as f64 / self.r as f64
    }

    pub fn gamma(&self) -> GammaParam {
        GammaParam::from_lambda(self.lambda()).expect("positive λ")
    }

    /// The leftmost-endpoint coloring of K_n.
    pub fn coloring(&self) -> TwoColoring {
        TwoColoring::new(self.n, ColoringRule::LeftmostEndpoint(self.vertex_colors.clone()))
            .expect("length matches n")
    }

    /// The coloring pulled back along φ.
    pub fn permuted_coloring(&self) -> TwoColoring {
        self.coloring().pullback(&self.phi).expect("φ is a permutation of the vertex range")
    }

    /// Checks every structural invariant. Violations of the α+β bound chain
    /// below [`BOUND_THRESHOLD`] are recorded but do not fail the check.
    pub fn check_invariants(&self) -> AdversaryCheck {
        let mut failures = Vec::new();
        let mut early = Vec::new();

        let mut reds = 0i64;
        for m in 1..=self.n {
            if self.vertex_colors[m - 1] == Color::Red {
                reds += 1;
            }
            let want = red_target(&self.g, m);
            if reds != want {
                failures.push(format!("prefix {m}: {reds} red, rule gives {want}"));
                break;
            }
        }

        let (s, r) = (self.s, self.r);
        let cond = |positions: &[usize], i: usize, k: usize| r * (positions[k - 1] - (k - 1)) <= s * k.saturating_sub(i) && k >= i;
        for (name, seq, pos) in [("alpha", &self.alpha, &self.red_positions), ("beta", &self.beta, &self.blue_positions)] {
            for (idx, &k) in seq.iter().enumerate() {
                let i = idx + 1;
                if k == 0 || k > pos.len() || !cond(pos, i, k) {
                    failures.push(format!("{name}_{i} = {k} does not satisfy its condition"));
                } else if let Some(smaller) = (1..k).find(|&k2| cond(pos, i, k2)) {
                    failures.push(format!("{name}_{i} = {k} is not minimal ({smaller} qualifies)"));
                }
            }
        }
        if let Some(w) = self.beta.windows(2).position(|w| w[1] <= w[0]) {
            failures.push(format!("beta not strictly increasing at {}", w + 1));
        }

        let mut sorted = self.phi.clone();
        sorted.sort_unstable();
        if sorted != (0..self.n).collect::<Vec<_>>() {
            failures.push("phi is not a permutation".into());
        } else {
            for (idx, (&a, &b)) in self.alpha.iter().zip(&self.beta).take(self.blocks).enumerate() {
                let mut img: Vec<usize> = self.phi[..a + b].to_vec();
                img.sort_unstable();
                let mut want: Vec<usize> =
                    self.red_positions[..a].iter().chain(&self.blue_positions[..b]).copied().collect();
                want.sort_unstable();
                if img != want {
                    failures.push(format!("phi([alpha_{0} + beta_{0}]) is not the block", idx + 1));
                    break;
                }
            }
        }

        let lambda = self.lambda();
        let p = self.gamma();
        let gm = p.gamma();
        let mut checked = 0;
        for (idx, (&a, &b)) in self.alpha.iter().zip(&self.beta).take(self.blocks).enumerate() {
            let i = (idx + 1) as f64;
            let w = 2.0 / (1.0 + lambda) * (lambda * i + 2.0 * lambda + 2.0);
            let (ExtendedReal::Finite(zp), ExtendedReal::Finite(zm)) =
                (gamma_crossing(&self.g, p, w, Sign::Plus), gamma_crossing(&self.g, p, w, Sign::Minus))
            else {
                continue;
            };
            if zp > self.n as f64 || zm > self.n as f64 {
                continue;
            }
            let beta_bound = (1.0 - gm) * zm / 2.0 + w / 2.0 + 2.0;
            let alpha_bound = (1.0 - gm) * zp / 2.0 + w / 2.0;
            let ok = b as f64 <= beta_bound + 1e-9 && a as f64 <= alpha_bound + 1e-9;
            if idx + 1 >= BOUND_THRESHOLD {
                checked += 1;
                if !ok {
                    failures.push(format!(
                        "bound chain fails at i = {}: alpha {a} vs {alpha_bound:.3}, beta {b} vs {beta_bound:.3}",
                        idx + 1
                    ));
                }
            } else if !ok {
                early.push(idx + 1);
            }
        }
        AdversaryCheck { failures, early_bound_violations: early, bound_checked: checked }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdversaryCheck {
    pub failures: Vec<String>,
    /// Levels i below the threshold at which the α+β bound chain fails.
    pub early_bound_violations: Vec<usize>,
    /// Number of levels i ≥ threshold at which the bound chain was evaluated.
    pub bound_checked: usize,
}

impl AdversaryCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds the adversarial left-to-right coloring for λ = s/r.
pub fn adversary(s: usize, r: usize, g: &PLFunction, n: usize) -> Result<AdversaryInstance> {
    if s == 0 || r == 0 {
        return Err(Error::InvalidInput(format!("λ = {s}/{r} must be positive")));
    }
    if n < 4 {
        return Err(Error::InvalidInput(format!("n must be at least 4, got {n}")));
    }
    g.check_lipschitz()?;
    if g.eval(0.0).abs() > 1e-12 {
        return Err(Error::InvalidInput(format!("g(0) must be 0, got {}", g.eval(0.0))));
    }

    let mut colors = Vec::with_capacity(n);
    let mut prev = 0i64;
    for m in 1..=n {
        // 1-Lipschitz g moves the target by 0 or 1 per step; clamp rounding noise.
        let want = red_target(g, m).clamp(prev, prev + 1);
        colors.push(if want > prev { Color::Red } else { Color::Blue });
        prev = want;
    }
    let reds: Vec<usize> = (0..n).filter(|&v| colors[v] == Color::Red).collect();
    let blues: Vec<usize> = (0..n).filter(|&v| colors[v] == Color::Blue).collect();

    let levels = |positions: &[usize]| {
        let mut out = Vec::new();
        let mut from = 1;
        while let Some(k) = first_admissible(positions, s, r, out.len() + 1, from) {
            out.push(k);
            from = k;
        }
        out
    };
    let alpha = levels(&reds);
    let beta = levels(&blues);
    let blocks = alpha.iter().zip(&beta).take_while(|(&a, &b)| a + b <= n).count();

    // φ fills each block [α_j+β_j] with its new red and blue vertices, ascending.
    let mut phi = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let (mut pa, mut pb) = (0, 0);
    for (&a, &b) in alpha.iter().zip(&beta).take(blocks) {
        let mut block: Vec<usize> = reds[pa..a].iter().chain(&blues[pb..b]).copied().collect();
        block.sort_unstable();
        for &v in &block {
            used[v] = true;
        }
        phi.extend(block);
        (pa, pb) = (a, b);
    }
    phi.extend((0..n).filter(|&v| !used[v]));

    Ok(AdversaryInstance {
        s,
        r,
        g: g.clone(),
        n,
        vertex_colors: colors,
        red_positions: reds,
        blue_positions: blues,
        alpha,
        beta,
        blocks,
        phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_function_alternates() {
        let inst = adversary(1, 1, &PLFunction::zero(), 6).unwrap();
        use Color::{Blue as B, Red as R};
        assert_eq!(inst.vertex_colors, vec![B, R, B, R, B, R]);
        assert_eq!(inst.beta[0], 1);
        // Every red vertex has more blue vertices to its left than λ(α − i) allows.
        assert!(inst.alpha.is_empty());
        assert!(inst.check_invariants().passed());
    }

    #[test]
    fn identity_gives_all_red() {
        let inst = adversary(1, 1, &PLFunction::identity(), 10).unwrap();
        assert!(inst.vertex_colors.iter().all(|&c| c == Color::Red));
        assert!(inst.blue_positions.is_empty());
        assert!(inst.beta.is_empty());
        assert_eq!(inst.blocks, 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(adversary(0, 1, &PLFunction::zero(), 10).is_err());
        assert!(adversary(1, 1, &PLFunction::zero(), 3).is_err());
        let steep = PLFunction::new_unconstrained(vec![0.0, 1.0], vec![0.0, 2.0], 0.0).unwrap();
        assert!(matches!(adversary(1, 1, &steep, 10), Err(Error::NotLipschitz { .. })));
    }

    #[test]
    fn larger_instance_passes_invariants() {
        for (s, r) in [(1, 1), (2, 1), (1, 2), (3, 2)] {
            let p = GammaParam::from_lambda(s as f64 / r as f64).unwrap();
            let periods = (4000f64.ln() / crate::lipschitz::sigma(p).ln()).ceil() as usize;
            let g = crate::lipschitz::sigma_g(p, periods).unwrap();
            let inst = adversary(s, r, &g, 2000).unwrap();
            let check = inst.check_invariants();
            assert!(check.passed(), "{:?}", check.failures);
            assert!(inst.blocks > 100, "λ = {s}/{r}: {} blocks", inst.blocks);
            assert!(check.bound_checked > 50);
        }
    }

    #[test]
    fn permuted_coloring_matches_phi() {
        let inst = adversary(1, 1, &PLFunction::zero(), 12).unwrap();
        let c = inst.coloring();
        let p = inst.permuted_coloring();
        for i in 0..12 {
            for j in i + 1..12 {
                assert_eq!(p.color(i, j), c.color(inst.phi[i], inst.phi[j]));
            }
        }
    }
}
