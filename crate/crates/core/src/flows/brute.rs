use std::collections::{HashMap, HashSet};

use super::bipartite::CapacitatedBipartite;
use crate::error::{Error, Result};

/// Largest |X| + |Y| accepted by the exhaustive oracles.
pub const MAX_BRUTEFORCE_VERTICES: usize = 16;

fn guard(g: &CapacitatedBipartite) -> Result<()> {
    g.validate()?;
    let n = g.x.len() + g.y.len();
    if n > MAX_BRUTEFORCE_VERTICES {
        return Err(Error::InvalidInput(format!("exhaustive search limited to {MAX_BRUTEFORCE_VERTICES} vertices, got {n}")));
    }
    Ok(())
}

/// Largest total of a capacity-feasible integral flow, by enumerating every
/// way each X vertex can spread at most r units over its edges and keeping
/// the set of reachable Y load vectors.
pub fn max_flow_bruteforce(g: &CapacitatedBipartite) -> Result<u64> {
    guard(g)?;
    let yi: HashMap<usize, usize> = g.y.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut states: HashSet<Vec<u64>> = HashSet::from([vec![0; g.y.len()]]);
    for &x in &g.x {
        let nbrs: Vec<usize> = g.edges.iter().filter(|e| e.0 == x).map(|e| yi[&e.1]).collect();
        let mut next = HashSet::new();
        for st in &states {
            spread(&nbrs, 0, g.r, g.s, &mut st.clone(), &mut next);
        }
        states = next;
    }
    Ok(states.iter().map(|st| st.iter().sum()).max().unwrap_or(0))
}

/// Every way to place at most `budget` units on nbrs[k..] within capacity s.
fn spread(nbrs: &[usize], k: usize, budget: u64, s: u64, loads: &mut Vec<u64>, out: &mut HashSet<Vec<u64>>) {
    if k == nbrs.len() {
        out.insert(loads.clone());
        return;
    }
    let y = nbrs[k];
    let room = (s - loads[y]).min(budget);
    for f in 0..=room {
        loads[y] += f;
        spread(nbrs, k + 1, budget - f, s, loads, out);
        loads[y] -= f;
    }
}

/// Least r|Z∩X| + s|Z∩Y| over every vertex cover Z.
pub fn min_cover_bruteforce(g: &CapacitatedBipartite) -> Result<u64> {
    guard(g)?;
    let verts: Vec<usize> = g.x.iter().chain(&g.y).copied().collect();
    let nx = g.x.len();
    let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut best = u64::MAX;
    for mask in 0u32..(1 << verts.len()) {
        let inz = |v: usize| mask >> pos[&v] & 1 == 1;
        if g.edges.iter().all(|&(u, v)| inz(u) || inz(v)) {
            let w = (0..verts.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| if i < nx { g.r } else { g.s })
                .sum();
            best = best.min(w);
        }
    }
    Ok(best)
}
