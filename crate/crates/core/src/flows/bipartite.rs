use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bipartite graph with capacity r on every X vertex and s on every Y vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacitatedBipartite {
    #[serde(rename = "X")]
    pub x: Vec<usize>,
    #[serde(rename = "Y")]
    pub y: Vec<usize>,
    /// Pairs (x, y) with x ∈ X and y ∈ Y.
    pub edges: Vec<(usize, usize)>,
    pub r: u64,
    pub s: u64,
}

impl CapacitatedBipartite {
    pub fn new(x: Vec<usize>, y: Vec<usize>, edges: Vec<(usize, usize)>, r: u64, s: u64) -> Result<Self> {
        let g = Self { x, y, edges, r, s };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 || self.s == 0 {
            return Err(Error::InvalidInput(format!("capacities must be positive, got r = {}, s = {}", self.r, self.s)));
        }
        let xs: HashSet<usize> = self.x.iter().copied().collect();
        let ys: HashSet<usize> = self.y.iter().copied().collect();
        if xs.len() != self.x.len() || ys.len() != self.y.len() {
            return Err(Error::InvalidInput("repeated vertex label".into()));
        }
        if let Some(v) = xs.intersection(&ys).next() {
            return Err(Error::InvalidInput(format!("vertex {v} is on both sides")));
        }
        let mut seen = HashSet::new();
        for &(u, v) in &self.edges {
            if !xs.contains(&u) || !ys.contains(&v) {
                return Err(Error::InvalidInput(format!("edge ({u}, {v}) is not in X × Y")));
            }
            if !seen.insert((u, v)) {
                return Err(Error::InvalidInput(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(())
    }
}

/// Maximum flow value D, an optimal integral h and a cover Z of weight D.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowCertificate {
    #[serde(rename = "D")]
    pub d: u64,
    /// Edges with positive flow as (x, y, h(xy)), in input edge order.
    pub h: Vec<(usize, usize, u64)>,
    /// Cover vertices in ascending label order.
    #[serde(rename = "Z")]
    pub z: Vec<usize>,
}

impl FlowCertificate {
    /// Every certificate invariant that fails on `g`.
    pub fn violations(&self, g: &CapacitatedBipartite) -> Vec<String> {
        let mut out = Vec::new();
        let edge_set: HashSet<(usize, usize)> = g.edges.iter().copied().collect();
        let mut load: HashMap<usize, u64> = HashMap::new();
        let mut total = 0;
        for &(u, v, f) in &self.h {
            if !edge_set.contains(&(u, v)) {
                out.push(format!("flow on non-edge ({u}, {v})"));
            }
            *load.entry(u).or_default() += f;
            *load.entry(v).or_default() += f;
            total += f;
        }
        if total != self.d {
            out.push(format!("flow sums to {total}, D = {}", self.d));
        }
        for (side, cap) in [(&g.x, g.r), (&g.y, g.s)] {
            for v in side {
                let l = load.get(v).copied().unwrap_or(0);
                if l > cap {
                    out.push(format!("vertex {v} carries {l} > {cap}"));
                }
            }
        }
        let z: HashSet<usize> = self.z.iter().copied().collect();
        if let Some(&(u, v)) = g.edges.iter().find(|(u, v)| !z.contains(u) && !z.contains(v)) {
            out.push(format!("edge ({u}, {v}) is not covered"));
        }
        let weight = g.r * g.x.iter().filter(|v| z.contains(v)).count() as u64
            + g.s * g.y.iter().filter(|v| z.contains(v)).count() as u64;
        if weight != self.d {
            out.push(format!("cover weight {weight} differs from D = {}", self.d));
        }
        out
    }
}

/// Shortest-augmenting-path max flow on the network source → X → Y → sink
/// with capacities r, ∞, s. Y vertices can be switched on one at a time; the
/// current flow stays feasible, so augmenting again restores maximality.
pub(crate) struct FlowEngine {
    r: u64,
    s: u64,
    edges: Vec<(usize, usize)>,
    x_adj: Vec<Vec<usize>>,
    y_adj: Vec<Vec<usize>>,
    flow: Vec<u64>,
    x_load: Vec<u64>,
    y_load: Vec<u64>,
    y_active: Vec<bool>,
    value: u64,
}

/// How a vertex was first reached in the residual search.
#[derive(Clone, Copy)]
enum Via {
    Unseen,
    Source,
    Edge(usize),
}

impl FlowEngine {
    /// Local indices: X is 0..nx, Y is 0..ny; every Y vertex starts inactive.
    pub(crate) fn new(nx: usize, ny: usize, edges: Vec<(usize, usize)>, r: u64, s: u64) -> Self {
        let mut x_adj = vec![Vec::new(); nx];
        let mut y_adj = vec![Vec::new(); ny];
        for (id, &(u, v)) in edges.iter().enumerate() {
            x_adj[u].push(id);
            y_adj[v].push(id);
        }
        let m = edges.len();
        Self {
            r,
            s,
            edges,
            x_adj,
            y_adj,
            flow: vec![0; m],
            x_load: vec![0; nx],
            y_load: vec![0; ny],
            y_active: vec![false; ny],
            value: 0,
        }
    }

    pub(crate) fn activate(&mut self, y: usize) {
        self.y_active[y] = true;
    }

    pub(crate) fn activate_all(&mut self) {
        self.y_active.iter_mut().for_each(|a| *a = true);
    }

    pub(crate) fn value(&self) -> u64 {
        self.value
    }

    pub(crate) fn flows(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.edges.iter().zip(&self.flow).filter(|(_, &f)| f > 0).map(|(&(u, v), &f)| (u, v, f))
    }

    /// Residual BFS from the source. Returns the reach marks of X and Y and
    /// the first unsaturated active Y vertex found, if any.
    fn search(&self) -> (Vec<Via>, Vec<Via>, Option<usize>) {
        let mut vx = vec![Via::Unseen; self.x_adj.len()];
        let mut vy = vec![Via::Unseen; self.y_adj.len()];
        let mut queue = VecDeque::new();
        for x in 0..self.x_adj.len() {
            if self.x_load[x] < self.r {
                vx[x] = Via::Source;
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &e in &self.x_adj[x] {
                let y = self.edges[e].1;
                if !self.y_active[y] || !matches!(vy[y], Via::Unseen) {
                    continue;
                }
                vy[y] = Via::Edge(e);
                if self.y_load[y] < self.s {
                    return (vx, vy, Some(y));
                }
                for &back in &self.y_adj[y] {
                    let x2 = self.edges[back].0;
                    if self.flow[back] > 0 && matches!(vx[x2], Via::Unseen) {
                        vx[x2] = Via::Edge(back);
                        queue.push_back(x2);
                    }
                }
            }
        }
        (vx, vy, None)
    }

    /// Augments until no residual path remains.
    pub(crate) fn augment(&mut self) {
        loop {
            let (vx, vy, end) = self.search();
            let Some(end) = end else { return };
            // Walk back: forward edges y ← x, backward edges x ← y.
            let mut path = Vec::new();
            let mut y = end;
            let start = loop {
                let Via::Edge(fwd) = vy[y] else { unreachable!("reached Y vertex has a parent edge") };
                let x = self.edges[fwd].0;
                path.push((fwd, true));
                match vx[x] {
                    Via::Source => break x,
                    Via::Edge(back) => {
                        path.push((back, false));
                        y = self.edges[back].1;
                    }
                    Via::Unseen => unreachable!("path vertices were reached"),
                }
            };
            let mut push = (self.r - self.x_load[start]).min(self.s - self.y_load[end]);
            for &(e, forward) in &path {
                if !forward {
                    push = push.min(self.flow[e]);
                }
            }
            for &(e, forward) in &path {
                if forward {
                    self.flow[e] += push;
                } else {
                    self.flow[e] -= push;
                }
            }
            self.x_load[start] += push;
            self.y_load[end] += push;
            self.value += push;
        }
    }

    /// Cover (X unreached) ∪ (Y reached) from the final residual search, as
    /// local indices (xs, ys).
    pub(crate) fn min_cover(&self) -> (Vec<usize>, Vec<usize>) {
        let (vx, vy, end) = self.search();
        debug_assert!(end.is_none(), "flow is maximum");
        let xs = (0..vx.len()).filter(|&x| matches!(vx[x], Via::Unseen)).collect();
        let ys = (0..vy.len()).filter(|&y| self.y_active[y] && !matches!(vy[y], Via::Unseen)).collect();
        (xs, ys)
    }
}

/// Maximum flow with its matching minimum-weight vertex cover.
pub fn mfmc(g: &CapacitatedBipartite) -> Result<FlowCertificate> {
    g.validate()?;
    let xi: HashMap<usize, usize> = g.x.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let yi: HashMap<usize, usize> = g.y.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let local = g.edges.iter().map(|(u, v)| (xi[u], yi[v])).collect();
    let mut eng = FlowEngine::new(g.x.len(), g.y.len(), local, g.r, g.s);
    eng.activate_all();
    eng.augment();
    let h = eng.flows().map(|(u, v, f)| (g.x[u], g.y[v], f)).collect();
    let (zx, zy) = eng.min_cover();
    let mut z: Vec<usize> = zx.into_iter().map(|i| g.x[i]).chain(zy.into_iter().map(|i| g.y[i])).collect();
    z.sort_unstable();
    let cert = FlowCertificate { d: eng.value(), h, z };
    let bad = cert.violations(g);
    if !bad.is_empty() {
        return Err(Error::Internal(format!("flow certificate check failed: {}", bad.join("; "))));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = CapacitatedBipartite::new(vec![0], vec![1], vec![(0, 1)], 2, 3).unwrap();
        let c = mfmc(&g).unwrap();
        assert_eq!(c.d, 2);
        assert_eq!(c.z, vec![0]);
        assert_eq!(c.h, vec![(0, 1, 2)]);
    }

    #[test]
    fn no_edges() {
        let g = CapacitatedBipartite::new(vec![0, 1], vec![2], vec![], 1, 1).unwrap();
        let c = mfmc(&g).unwrap();
        assert_eq!(c.d, 0);
        assert!(c.z.is_empty());
    }

    #[test]
    fn k22_cover_is_y() {
        let g = CapacitatedBipartite::new(vec![0, 1], vec![2, 3], vec![(0, 2), (0, 3), (1, 2), (1, 3)], 3, 1).unwrap();
        let c = mfmc(&g).unwrap();
        assert_eq!(c.d, 2);
        assert_eq!(c.z, vec![2, 3]);
    }

    #[test]
    fn json_shape() {
        let g = CapacitatedBipartite::new(vec![0], vec![1], vec![(0, 1)], 2, 3).unwrap();
        let json = serde_json::to_string(&mfmc(&g).unwrap()).unwrap();
        assert_eq!(json, r#"{"D":2,"h":[[0,1,2]],"Z":[0]}"#);
        let back: CapacitatedBipartite = serde_json::from_str(r#"{"X":[0],"Y":[1],"edges":[[0,1]],"r":2,"s":3}"#).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(CapacitatedBipartite::new(vec![0], vec![1], vec![(0, 1)], 0, 1).is_err());
        assert!(CapacitatedBipartite::new(vec![0], vec![0], vec![], 1, 1).is_err());
        assert!(CapacitatedBipartite::new(vec![0], vec![1], vec![(0, 1), (0, 1)], 1, 1).is_err());
        assert!(CapacitatedBipartite::new(vec![0], vec![1], vec![(1, 0)], 1, 1).is_err());
    }

    #[test]
    fn rerouting_through_backward_edges() {
        // Greedy 0–2 blocks 1; the optimum routes 0–3 and 1–2.
        let g = CapacitatedBipartite::new(vec![0, 1], vec![2, 3], vec![(0, 2), (0, 3), (1, 2)], 1, 1).unwrap();
        assert_eq!(mfmc(&g).unwrap().d, 2);
    }
}
