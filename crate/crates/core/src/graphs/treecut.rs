use std::cmp::Ordering;
use std::collections::VecDeque;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use super::finite::{FiniteGraph, VertexSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreecutReport {
    pub subset: VertexSet,
    pub neighborhood_size: usize,
    pub delta: Rational64,
    /// Size bound M = 2/δ.
    pub max_size: Rational64,
    /// Whether the selected component had to be split at its X∩J vertex.
    pub split: bool,
}

/// λ″ = λ/(1 − 2δ(1+λ)), or None when the denominator is not positive.
fn lambda_second(lambda: Rational64, delta: Rational64) -> Option<Rational64> {
    let two = Rational64::from_integer(2);
    let den = Rational64::one() - two * delta * (Rational64::one() + lambda);
    (den > Rational64::zero()).then(|| lambda / den)
}

/// δ = min(1/4, (λ′−λ)/(8(1+λ))), halved until δ + λ″ < λ′.
pub fn default_delta(lambda: Rational64, lambda_prime: Rational64) -> Result<Rational64> {
    if lambda < Rational64::zero() || lambda_prime <= lambda {
        return Err(Error::Precondition(format!("need 0 ≤ λ < λ′, got λ = {lambda}, λ′ = {lambda_prime}")));
    }
    let mut delta = (Rational64::new(1, 4))
        .min((lambda_prime - lambda) / (Rational64::from_integer(8) * (Rational64::one() + lambda)));
    for _ in 0..40 {
        if lambda_second(lambda, delta).is_some_and(|l2| delta + l2 < lambda_prime) {
            return Ok(delta);
        }
        delta /= 2;
    }
    Err(Error::Precondition(format!("no admissible δ found for λ = {lambda}, λ′ = {lambda_prime}")))
}

/// Connected components of the subgraph induced on `alive`, each sorted.
fn components(adj: &[Vec<usize>], alive: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    for s in 0..adj.len() {
        if !alive[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in &adj[v] {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// (|C∩J|, |C∩I|, min vertex) with ordering by ratio, then min vertex.
#[derive(Clone, Copy)]
struct Piece {
    j: usize,
    i: usize,
    min: usize,
}

fn by_ratio(a: &Piece, b: &Piece) -> Ordering {
    // j_a/i_a vs j_b/i_b with i = 0 treated as +∞.
    match (a.i == 0, b.i == 0) {
        (false, false) => (a.j as u128 * b.i as u128).cmp(&(b.j as u128 * a.i as u128)),
        (x, y) => x.cmp(&y),
    }
    .then(a.min.cmp(&b.min))
}

/// Finds I′ ⊆ I with |I′| ≤ 2/δ and |N(I′)| ≤ λ′|I′| inside a forest, given
/// |N(I)| ≤ λ|I|.
///
/// Works in the forest F of I–N(I) edges rooted at the least I-vertex of each
/// component: cuts a set S leaving pieces of fewer than 1/δ vertices, removes
/// X∩I where X = S ∪ parents(S∩J), and returns the I-part of the component of
/// least J/I ratio, splitting it at its X∩J vertex when it is too large.
pub fn treecut(
    forest: &FiniteGraph,
    set: &VertexSet,
    lambda: Rational64,
    lambda_prime: Rational64,
    delta: Option<Rational64>,
) -> Result<TreecutReport> {
    if !forest.is_acyclic() {
        return Err(Error::Precondition("graph is not a forest".into()));
    }
    if set.is_empty() {
        return Err(Error::Precondition("I is empty".into()));
    }
    if let Some(v) = set.iter().find(|&v| v >= forest.n()) {
        return Err(Error::InvalidInput(format!("vertex {v} out of range")));
    }
    if !forest.is_independent(set) {
        return Err(Error::Precondition("I is not independent".into()));
    }
    let j_set = forest.neighborhood(set);
    let (ni, nj) = (set.len() as i64, j_set.len() as i64);
    if Rational64::from_integer(nj) > lambda * ni {
        return Err(Error::Precondition(format!("|N(I)| ≤ λ|I| fails: {nj} > {lambda}·{ni}")));
    }
    if lambda_prime <= lambda {
        return Err(Error::Precondition(format!("λ′ = {lambda_prime} must exceed λ = {lambda}")));
    }
    let delta = match delta {
        Some(d) => d,
        None => default_delta(lambda, lambda_prime)?,
    };
    if delta <= Rational64::zero() {
        return Err(Error::Precondition(format!("δ = {delta} must be positive")));
    }
    match lambda_second(lambda, delta) {
        Some(l2) if delta + l2 < lambda_prime => {}
        Some(l2) => {
            return Err(Error::Precondition(format!(
                "δ + λ/(1−2δ(1+λ)) < λ′ fails: {delta} + {l2} ≥ {lambda_prime}"
            )))
        }
        None => return Err(Error::Precondition(format!("1 − 2δ(1+λ) ≤ 0 for δ = {delta}, λ = {lambda}"))),
    }

    let n = forest.n();
    let in_i: Vec<bool> = (0..n).map(|v| set.contains(v)).collect();
    let in_f: Vec<bool> = (0..n).map(|v| in_i[v] || j_set.contains(v)).collect();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            if !in_f[v] {
                return Vec::new();
            }
            forest.neighbors(v).iter().copied().filter(|&w| in_f[w] && in_i[w] != in_i[v]).collect()
        })
        .collect();

    // Root every component at its least I-vertex; BFS order lists parents first.
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut order = Vec::new();
    for r in set.iter() {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut queue = VecDeque::from([r]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
    }

    // Bottom-up: a vertex whose uncut subtree reaches 1/δ vertices joins S.
    let mut sub = vec![0i64; n];
    let mut in_s = vec![false; n];
    for &v in order.iter().rev() {
        let size = 1 + adj[v].iter().filter(|&&w| parent[w] == v && !in_s[w]).map(|&w| sub[w]).sum::<i64>();
        sub[v] = size;
        if delta * size >= Rational64::one() {
            in_s[v] = true;
        }
    }
    let mut in_x = in_s.clone();
    for v in 0..n {
        if in_s[v] && !in_i[v] {
            in_x[parent[v]] = true;
        }
    }

    let piece = |comp: &[usize]| {
        let i = comp.iter().filter(|&&v| in_i[v]).count();
        Piece { i, j: comp.len() - i, min: comp[0] }
    };
    let alive: Vec<bool> = (0..n).map(|v| in_f[v] && !(in_x[v] && in_i[v])).collect();
    let comps = components(&adj, &alive);
    let best = comps
        .iter()
        .min_by(|a, b| by_ratio(&piece(a), &piece(b)))
        .ok_or_else(|| Error::Internal("no component left after removing X∩I".into()))?;
    let best_piece = piece(best);
    if best_piece.i == 0 {
        return Err(Error::Internal("every remaining component lacks I-vertices".into()));
    }

    let two = Rational64::from_integer(2);
    let (chosen, split): (Vec<usize>, bool) = if delta * best_piece.i as i64 <= two {
        (best.iter().copied().filter(|&v| in_i[v]).collect(), false)
    } else {
        let hubs: Vec<usize> = best.iter().copied().filter(|&v| in_x[v] && !in_i[v]).collect();
        let &[hub] = hubs.as_slice() else {
            return Err(Error::Internal(format!("large component has {} X∩J vertices", hubs.len())));
        };
        let mut alive_c = vec![false; n];
        for &v in best {
            alive_c[v] = v != hub;
        }
        let mut sub_comps: Vec<(Piece, Vec<usize>)> =
            components(&adj, &alive_c).into_iter().map(|c| (piece(&c), c)).collect();
        // Increasing J/I, so every prefix has ratio at most the overall one.
        sub_comps.sort_by(|a, b| by_ratio(&a.0, &b.0));
        let mut chosen = Vec::new();
        for (p, c) in &sub_comps {
            chosen.extend(c.iter().copied().filter(|&v| in_i[v]));
            if p.i > 0 && delta * chosen.len() as i64 >= Rational64::one() {
                break;
            }
        }
        (chosen, true)
    };

    let subset = VertexSet::new(chosen);
    let nsize = forest.neighborhood(&subset).len();
    let max_size = two / delta;
    if Rational64::from_integer(subset.len() as i64) > max_size
        || Rational64::from_integer(nsize as i64) > lambda_prime * subset.len() as i64
    {
        return Err(Error::Internal(format!(
            "output violates bounds: |I′| = {}, |N(I′)| = {nsize}, M = {max_size}",
            subset.len()
        )));
    }
    Ok(TreecutReport { subset, neighborhood_size: nsize, delta, max_size, split })
}
