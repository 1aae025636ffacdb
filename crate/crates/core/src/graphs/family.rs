use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::finite::FiniteGraph;
use crate::error::{Error, Result};

/// Locally finite infinite graphs with a canonical vertex order, plus finite
/// graphs treated as their own prefixes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphFamily {
    /// k-th power of the one-way infinite path: i ~ j iff 0 < |i − j| ≤ k.
    PathPower(usize),
    /// Rooted tree in which every vertex has k children, in BFS order.
    KAryTree(usize),
    /// Z^d with unit-distance edges, ordered by L∞ radius then lexicographically.
    Grid(usize),
    /// Countably many disjoint copies of F, copy by copy.
    OmegaFactor(FiniteGraph),
    ExplicitForest(FiniteGraph),
    Explicit(FiniteGraph),
}

impl GraphFamily {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::PathPower(0) | Self::KAryTree(0) => Err(Error::InvalidInput("k must be at least 1".into())),
            Self::Grid(0) => Err(Error::InvalidInput("d must be at least 1".into())),
            Self::OmegaFactor(f) if f.n() == 0 => Err(Error::InvalidInput("factor graph is empty".into())),
            Self::ExplicitForest(f) if !f.is_acyclic() => {
                Err(Error::InvalidInput("explicit forest contains a cycle".into()))
            }
            _ => Ok(()),
        }
    }

    /// Whether the family is an infinite graph (as opposed to an explicit finite one).
    pub fn is_infinite(&self) -> bool {
        !matches!(self, Self::ExplicitForest(_) | Self::Explicit(_))
    }

    /// Induced subgraph on the first n vertices of the canonical order.
    /// Explicit graphs are clamped to their own size.
    pub fn prefix(&self, n: usize) -> Result<FiniteGraph> {
        self.validate()?;
        if n == 0 {
            return Err(Error::InvalidInput("prefix size must be at least 1".into()));
        }
        match self {
            Self::PathPower(k) => {
                let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n.min(u + k + 1)).map(move |v| (u, v))).collect();
                FiniteGraph::new(n, &edges)
            }
            Self::KAryTree(k) => {
                let edges: Vec<_> = (1..n).map(|v| ((v - 1) / k, v)).collect();
                FiniteGraph::new(n, &edges)
            }
            Self::Grid(d) => {
                let coords = grid_coords(*d, n);
                let index: HashMap<&[i64], usize> = coords.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
                let mut edges = Vec::new();
                for (u, c) in coords.iter().enumerate() {
                    for axis in 0..*d {
                        let mut nb = c.clone();
                        nb[axis] += 1;
                        if let Some(&v) = index.get(nb.as_slice()) {
                            edges.push((u, v));
                        }
                    }
                }
                FiniteGraph::new(n, &edges)
            }
            Self::OmegaFactor(f) => {
                let copies = n.div_ceil(f.n());
                Ok(f.disjoint_copies(copies).induced_prefix(n))
            }
            Self::ExplicitForest(f) | Self::Explicit(f) => Ok(f.induced_prefix(n)),
        }
    }

    /// Degree of vertex v in the full (infinite or explicit) graph.
    pub fn full_degree(&self, v: usize) -> usize {
        match self {
            Self::PathPower(k) => k + v.min(*k),
            Self::KAryTree(k) => {
                if v == 0 {
                    *k
                } else {
                    k + 1
                }
            }
            Self::Grid(d) => 2 * d,
            Self::OmegaFactor(f) => f.degree(v % f.n()),
            Self::ExplicitForest(f) | Self::Explicit(f) => f.degree(v),
        }
    }
}

/// Advances c to the next point of [−r, r]^d in lexicographic order.
fn next_lex(c: &mut [i64], r: i64) -> bool {
    for axis in (0..c.len()).rev() {
        if c[axis] < r {
            c[axis] += 1;
            for x in &mut c[axis + 1..] {
                *x = -r;
            }
            return true;
        }
    }
    false
}

/// Coordinates of the first n vertices of Z^d in canonical order.
pub fn grid_coords(d: usize, n: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::with_capacity(n);
    let mut r: i64 = 0;
    while out.len() < n {
        // Lexicographic walk over [−r, r]^d keeping points on the shell.
        let mut c = vec![-r; d];
        loop {
            if c.iter().any(|x| x.abs() == r) {
                out.push(c.clone());
                if out.len() == n {
                    return out;
                }
            }
            if !next_lex(&mut c, r) {
                break;
            }
        }
        r += 1;
    }
    out
}
