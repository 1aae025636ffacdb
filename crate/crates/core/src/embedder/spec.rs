use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{FiniteGraph, GraphFamily, VertexSet};

/// A prefix of H with a proper coloring Ψ into 1..=a and the doubly
/// independent templates I_i used to absorb K_{r,s} pieces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HPrefixSpec {
    pub family: GraphFamily,
    pub size: usize,
    pub a: usize,
    /// Ψ(v) for every prefix vertex.
    pub psi: Vec<usize>,
    pub templates: Vec<VertexSet>,
    #[serde(skip)]
    graph: FiniteGraph,
    #[serde(skip)]
    component: Vec<usize>,
}

impl HPrefixSpec {
    pub fn new(family: GraphFamily, size: usize, a: usize, psi: Vec<usize>, templates: Vec<VertexSet>) -> Result<Self> {
        let graph = family.prefix(size)?;
        let size = graph.n();
        if a < 2 {
            return Err(Error::InvalidInput(format!("a must be at least 2, got {a}")));
        }
        if psi.len() != size {
            return Err(Error::InvalidInput(format!("Ψ has {} entries for a prefix of {size}", psi.len())));
        }
        if let Some(v) = (0..size).find(|&v| psi[v] == 0 || psi[v] > a) {
            return Err(Error::InvalidInput(format!("Ψ({v}) = {} is outside 1..={a}", psi[v])));
        }
        if let Some((u, v)) = graph.edges().into_iter().find(|&(u, v)| psi[u] == psi[v]) {
            return Err(Error::InvalidInput(format!("Ψ is not proper on edge {u}{v}")));
        }
        let component = graph.components();
        let spec = Self { family, size, a, psi, templates, graph, component };
        spec.check_templates()?;
        Ok(spec)
    }

    /// H = ω·F with Ψ and the template I repeated on every copy.
    pub fn omega_factor(factor: FiniteGraph, copies: usize, a: usize, psi_f: Vec<usize>, i_f: VertexSet) -> Result<Self> {
        let k = factor.n();
        if psi_f.len() != k {
            return Err(Error::InvalidInput(format!("Ψ has {} entries for a factor on {k} vertices", psi_f.len())));
        }
        if copies == 0 {
            return Err(Error::InvalidInput("need at least one copy".into()));
        }
        let psi = (0..copies * k).map(|v| psi_f[v % k]).collect();
        let templates = (0..copies).map(|c| i_f.iter().map(|v| c * k + v).collect()).collect();
        Self::new(GraphFamily::OmegaFactor(factor), copies * k, a, psi, templates)
    }

    fn check_templates(&self) -> Result<()> {
        let Some(first) = self.templates.first() else { return Ok(()) };
        let r = first.len();
        for (idx, t) in self.templates.iter().enumerate() {
            let bad = |msg: String| Err(Error::InvalidInput(format!("template {idx}: {msg}")));
            if t.is_empty() || t.len() != r {
                return bad(format!("size {} differs from {r}", t.len()));
            }
            if let Some(v) = t.iter().find(|&v| v >= self.size) {
                return bad(format!("vertex {v} is outside the prefix"));
            }
            let nb = self.graph.neighborhood(t);
            // N(I) must be the neighbourhood in H itself, not just in the prefix.
            if let Some(v) = t.iter().chain(nb.iter()).find(|&v| v >= self.size || self.graph.degree(v) != self.family.full_degree(v)) {
                return bad(format!("vertex {v} touches the prefix boundary"));
            }
            if !self.graph.is_independent(t) || !self.graph.is_independent(&nb) {
                return bad("not doubly independent".into());
            }
            if nb.iter().any(|v| self.psi[v] != self.a) {
                return bad(format!("Ψ(N(I)) is not {{{}}}", self.a));
            }
            let c = self.component[t.as_slice()[0]];
            if t.iter().any(|v| self.component[v] != c) {
                return bad("spans several components".into());
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn num_components(&self) -> usize {
        self.component.iter().max().map_or(0, |c| c + 1)
    }

    /// |I| of the templates, or 0 without templates.
    pub fn r(&self) -> usize {
        self.templates.first().map_or(0, |t| t.len())
    }

    /// Largest |N(I)| over the templates.
    pub fn s(&self) -> usize {
        self.templates.iter().map(|t| self.graph.neighborhood(t).len()).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.size).map(|v| self.graph.degree(v)).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_k12_with_leaves_as_template() {
        let f = FiniteGraph::star(2);
        let spec = HPrefixSpec::omega_factor(f, 4, 2, vec![2, 1, 1], VertexSet::new(vec![1, 2])).unwrap();
        assert_eq!((spec.r(), spec.s(), spec.num_components()), (2, 1, 4));
        assert_eq!(spec.templates[3].as_slice(), &[10, 11]);
    }

    #[test]
    fn rejects_bad_specs() {
        let f = FiniteGraph::star(2);
        // Ψ not proper.
        assert!(HPrefixSpec::omega_factor(f.clone(), 2, 2, vec![1, 1, 2], VertexSet::new(vec![1, 2])).is_err());
        // Ψ(N(I)) ≠ a.
        assert!(HPrefixSpec::omega_factor(f.clone(), 2, 2, vec![1, 2, 2], VertexSet::new(vec![1, 2])).is_err());
        // I not independent.
        assert!(HPrefixSpec::omega_factor(f, 2, 2, vec![2, 1, 1], VertexSet::new(vec![0, 1])).is_err());
        // Template on the prefix boundary of the one-way path.
        let psi = (0..6).map(|v| 1 + v % 2).collect();
        assert!(HPrefixSpec::new(GraphFamily::PathPower(1), 6, 2, psi, vec![VertexSet::new(vec![4])]).is_err());
    }
}
