use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on vertices 0..n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl FiniteGraph {
    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { n, adj })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, adj: vec![Vec::new(); n] }
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::new(n, &edges).expect("valid complete graph")
    }

    /// K_{a,b} with parts 0..a and a..a+b.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Self::new(a + b, &edges).expect("valid complete bipartite graph")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::new(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Self::new(n, &edges)
    }

    /// Star K_{1,k} with center 0.
    pub fn star(k: usize) -> Self {
        Self::complete_bipartite(1, k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges (u, v) with u < v in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for u in 0..self.n {
            out.extend(self.adj[u].iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Induced subgraph on the first m vertices.
    pub fn induced_prefix(&self, m: usize) -> Self {
        let m = m.min(self.n);
        let adj = self.adj[..m].iter().map(|l| l.iter().copied().filter(|&v| v < m).collect()).collect();
        Self { n: m, adj }
    }

    /// Induced subgraph on `vs`, relabelled 0..vs.len() in the given order.
    pub fn induced(&self, vs: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i;
        }
        let adj = vs
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> =
                    self.adj[v].iter().filter(|&&w| pos[w] != usize::MAX).map(|&w| pos[w]).collect();
                l.sort_unstable();
                l
            })
            .collect();
        Self { n: vs.len(), adj }
    }

    /// Disjoint union of `copies` copies of self, copy by copy.
    pub fn disjoint_copies(&self, copies: usize) -> Self {
        let mut adj = Vec::with_capacity(self.n * copies);
        for c in 0..copies {
            let off = c * self.n;
            adj.extend(self.adj.iter().map(|l| l.iter().map(|&v| v + off).collect()));
        }
        Self { n: self.n * copies, adj }
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.adj[v].iter().all(|&w| !set.contains(w)))
    }

    /// N(S) = (∪_{v∈S} N(v)) ∖ S.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out: Vec<usize> =
            set.iter().flat_map(|v| self.adj[v].iter().copied()).filter(|&w| !set.contains(w)).collect();
        out.sort_unstable();
        out.dedup();
        VertexSet { members: out }
    }

    /// Component id of every vertex, numbered in order of least vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_acyclic(&self) -> bool {
        // A graph is a forest iff m = n − (number of components).
        let comps = self.components().into_iter().max().map_or(0, |c| c + 1);
        self.num_edges() + comps == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        stack.push(w);
                    } else if side[w] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Edge-list text: "n m" then m lines "u v".
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let nums = parse_numbers(hl, header, 2)?;
        let (n, m) = (nums[0], nums[1]);
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines.by_ref().take(m) {
            let uv = parse_numbers(line, l, 2)?;
            edges.push((uv[0], uv[1]));
        }
        if edges.len() != m {
            return Err(Error::Parse { line: hl, msg: format!("header promises {m} edges, found {}", edges.len()) });
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse { line, msg: "trailing content after edge list".into() });
        }
        Self::new(n, &edges).map_err(|e| Error::Parse { line: hl, msg: e.to_string() })
    }
}

pub(crate) fn parse_numbers(line: usize, text: &str, count: usize) -> Result<Vec<usize>> {
    let nums: Vec<usize> = text
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|e| Error::Parse { line, msg: format!("{t:?}: {e}") }))
        .collect::<Result<_>>()?;
    if nums.len() != count {
        return Err(Error::Parse { line, msg: format!("expected {count} integers, got {}", nums.len()) });
    }
    Ok(nums)
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::new(iter.into_iter().collect())
    }
}
