use num_rational::Rational64;
use serde::Serialize;

use super::family::GraphFamily;
use super::finite::{FiniteGraph, VertexSet};
use crate::error::{Error, Result};

/// Optimum of the μ(H, n) search together with a witness set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuReport {
    pub value: usize,
    pub witness: VertexSet,
    pub prefix_size: usize,
}

/// Incremental independent-set state: chosen vertices, how many chosen
/// neighbours each vertex has, and |N(I)|.
struct Frontier<'g> {
    g: &'g FiniteGraph,
    chosen: Vec<usize>,
    hits: Vec<u32>,
    nsize: usize,
}

impl<'g> Frontier<'g> {
    fn new(g: &'g FiniteGraph) -> Self {
        Self { g, chosen: Vec::new(), hits: vec![0; g.n()], nsize: 0 }
    }

    fn can_add(&self, v: usize) -> bool {
        self.hits[v] == 0
    }

    fn push(&mut self, v: usize) {
        self.chosen.push(v);
        for &w in self.g.neighbors(v) {
            if self.hits[w] == 0 {
                self.nsize += 1;
            }
            self.hits[w] += 1;
        }
    }

    fn pop(&mut self) {
        let v = self.chosen.pop().expect("pop on empty frontier");
        for &w in self.g.neighbors(v) {
            self.hits[w] -= 1;
            if self.hits[w] == 0 {
                self.nsize -= 1;
            }
        }
    }
}

/// Calls `visit` on every nonempty independent set of g (as an increasing
/// vertex list) together with |N(I)|.
fn for_each_independent(g: &FiniteGraph, mut visit: impl FnMut(&[usize], usize)) {
    fn rec(fr: &mut Frontier, from: usize, visit: &mut dyn FnMut(&[usize], usize)) {
        for v in from..fr.g.n() {
            if fr.can_add(v) {
                fr.push(v);
                visit(&fr.chosen, fr.nsize);
                rec(fr, v + 1, visit);
                fr.pop();
            }
        }
    }
    let mut fr = Frontier::new(g);
    rec(&mut fr, 0, &mut visit);
}

/// μ(H, n): the least |N(I)| over independent I with |I| = n, measured in the
/// full graph.
///
/// I ranges over interior vertices of the prefix (those whose full degree is
/// already present), so N(I) is exact. An optimum is only accepted if some
/// optimal I has N(I) disjoint from the boundary; otherwise the prefix is
/// reported as too small.
pub fn mu_bruteforce(family: &GraphFamily, n: usize, prefix_size: usize) -> Result<MuReport> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let g = family.prefix(prefix_size)?;
    let boundary: Vec<bool> = (0..g.n()).map(|v| g.degree(v) < family.full_degree(v)).collect();
    let interior: Vec<usize> = (0..g.n()).filter(|&v| !boundary[v]).collect();

    struct Search<'a> {
        fr: Frontier<'a>,
        boundary: &'a [bool],
        interior: &'a [usize],
        n: usize,
        // (|N|, touches boundary, witness)
        best: Option<(usize, bool, Vec<usize>)>,
    }

    impl Search<'_> {
        fn touches(&self) -> bool {
            self.fr.hits.iter().zip(self.boundary).any(|(&h, &b)| h > 0 && b)
        }

        fn dominated(&self) -> bool {
            match &self.best {
                None => false,
                Some((size, touch, _)) => self.fr.nsize > *size || (self.fr.nsize == *size && !*touch),
            }
        }

        fn run(&mut self, from: usize) {
            if self.dominated() {
                return;
            }
            if self.fr.chosen.len() == self.n {
                let touch = self.touches();
                let better = match &self.best {
                    None => true,
                    Some((size, t, _)) => self.fr.nsize < *size || (*t && !touch),
                };
                if better {
                    self.best = Some((self.fr.nsize, touch, self.fr.chosen.clone()));
                }
                return;
            }
            let need = self.n - self.fr.chosen.len();
            for idx in from..self.interior.len() {
                if self.interior.len() - idx < need {
                    break;
                }
                let v = self.interior[idx];
                if self.fr.can_add(v) {
                    self.fr.push(v);
                    self.run(idx + 1);
                    self.fr.pop();
                }
            }
        }
    }

    let mut s = Search { fr: Frontier::new(&g), boundary: &boundary, interior: &interior, n, best: None };
    s.run(0);
    match s.best {
        None => Err(Error::PrefixTooSmall(format!(
            "no independent set of size {n} among the {} interior vertices of a {prefix_size}-vertex prefix",
            interior.len()
        ))),
        Some((size, true, _)) => Err(Error::PrefixTooSmall(format!(
            "every optimum (|N(I)| = {size}) touches the boundary of a {prefix_size}-vertex prefix"
        ))),
        Some((size, false, w)) => Ok(MuReport { value: size, witness: VertexSet::new(w), prefix_size }),
    }
}

/// mu_bruteforce with the prefix doubled until the optimum is certified.
pub fn mu_auto(family: &GraphFamily, n: usize, start: usize, max_prefix: usize) -> Result<MuReport> {
    let mut size = start.max(1);
    loop {
        match mu_bruteforce(family, n, size) {
            Err(Error::PrefixTooSmall(_)) if size < max_prefix && family.is_infinite() => {
                size = (size * 2).min(max_prefix);
            }
            other => return other,
        }
    }
}

/// Exact minimum of |N(I)|/|I| over nonempty independent I.
pub fn min_expansion(f: &FiniteGraph) -> Result<Rational64> {
    if f.n() == 0 {
        return Err(Error::InvalidInput("graph is empty".into()));
    }
    let mut best: Option<Rational64> = None;
    for_each_independent(f, |set, nsize| {
        let r = Rational64::new(nsize as i64, set.len() as i64);
        if best.is_none_or(|b| r < b) {
            best = Some(r);
        }
    });
    Ok(best.expect("a nonempty graph has an independent singleton"))
}

/// All nonempty I such that both I and N(I) are independent, sorted by size
/// then lexicographically.
pub fn doubly_independent_sets(f: &FiniteGraph) -> Result<Vec<VertexSet>> {
    if f.n() == 0 {
        return Err(Error::InvalidInput("graph is empty".into()));
    }
    let mut out = Vec::new();
    for_each_independent(f, |set, _| {
        let s = VertexSet::new(set.to_vec());
        if f.is_independent(&f.neighborhood(&s)) {
            out.push(s);
        }
    });
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.as_slice().cmp(b.as_slice())));
    Ok(out)
}

/// |N(I)|/|I| for a nonempty independent I.
pub fn expansion_ratio(g: &FiniteGraph, set: &VertexSet) -> Result<Rational64> {
    if set.is_empty() {
        return Err(Error::InvalidInput("set is empty".into()));
    }
    if let Some(v) = set.iter().find(|&v| v >= g.n()) {
        return Err(Error::InvalidInput(format!("vertex {v} out of range")));
    }
    if !g.is_independent(set) {
        return Err(Error::InvalidInput("set is not independent".into()));
    }
    Ok(Rational64::new(g.neighborhood(set).len() as i64, set.len() as i64))
}
