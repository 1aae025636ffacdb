use std::collections::VecDeque;

use serde::Serialize;

use super::spec::HPrefixSpec;
use super::wstructure::{WComponent, WStructure};
use crate::colorings::{Color, Shade, Shading, TwoColoring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EmbedStatus {
    /// Every prefix vertex has an image.
    Complete,
    BudgetExhausted,
    /// No admissible host vertex for the given H vertex.
    Stuck { vertex: usize, reason: String },
}

/// How an H vertex received its image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Origin {
    /// Vertex-image step; `step` is the position in the global definition order.
    Vertex { step: usize },
    /// Mapped onto W component `component`.
    Absorbed { step: usize, component: usize },
}

impl Origin {
    pub fn step(self) -> usize {
        match self {
            Origin::Vertex { step } | Origin::Absorbed { step, .. } => step,
        }
    }
}

/// Partial injective map Φ from the H prefix into the host.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingState {
    pub color: Color,
    pub a: usize,
    /// Φ(v) for every prefix vertex.
    pub phi: Vec<Option<usize>>,
    pub origin: Vec<Option<Origin>>,
    /// κ per H component, in 1..=a; empty when no shade of color C exists.
    pub kappa: Vec<usize>,
    /// W components mapped onto, in consumption order.
    pub consumed: Vec<usize>,
    /// W components whose reservation was given up to feed vertex images.
    pub released: Vec<usize>,
    /// |T| for each vertex-image step taken with κ = a.
    pub t_sizes: Vec<usize>,
    pub steps: usize,
    pub status: EmbedStatus,
}

/// The serialized form: image pairs sorted by H vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingSummary {
    pub pairs: Vec<(usize, usize)>,
    pub color: Color,
    pub consumed_components: Vec<usize>,
    pub complete: bool,
}

impl EmbeddingState {
    pub fn empty(color: Color, a: usize, size: usize) -> Self {
        Self {
            color,
            a,
            phi: vec![None; size],
            origin: vec![None; size],
            kappa: Vec::new(),
            consumed: Vec::new(),
            released: Vec::new(),
            t_sizes: Vec::new(),
            steps: 0,
            status: EmbedStatus::BudgetExhausted,
        }
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.phi.iter().enumerate().filter_map(|(h, x)| x.map(|x| (h, x))).collect()
    }

    /// Host vertices in the image, sorted.
    pub fn image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = self.phi.iter().flatten().copied().collect();
        img.sort_unstable();
        img
    }

    pub fn is_complete(&self) -> bool {
        self.status == EmbedStatus::Complete
    }

    pub fn summary(&self) -> EmbeddingSummary {
        EmbeddingSummary {
            pairs: self.pairs(),
            color: self.color,
            consumed_components: self.consumed.clone(),
            complete: self.is_complete(),
        }
    }
}

/// Round-robin κ over the shade indices carrying W components, or over the
/// nonempty C shades when W is empty.
pub fn assign_kappa(sh: &Shading, w: &WStructure, components: usize) -> Vec<usize> {
    let mut shades: Vec<usize> = w.components.iter().map(WComponent::c_shade).collect();
    if shades.is_empty() {
        shades = (1..=sh.a).filter(|&j| !sh.members(w.color, j).is_empty()).collect();
    }
    shades.sort_unstable();
    shades.dedup();
    if shades.is_empty() {
        return Vec::new();
    }
    (0..components).map(|c| shades[c % shades.len()]).collect()
}

struct Embedder<'a> {
    chi: &'a TwoColoring,
    sh: &'a Shading,
    w: &'a WStructure,
    spec: &'a HPrefixSpec,
    st: EmbeddingState,
    used: Vec<bool>,
    /// Owning W component of each reserved host vertex.
    reserved: Vec<Option<usize>>,
    /// W components neither consumed nor released, in order.
    pending: Vec<bool>,
    template_used: Vec<bool>,
    next_step: usize,
}

/// Runs the alternating W-absorbing / vertex-image procedure for at most
/// `budget` steps, absorbing first. Every W vertex is reserved up front; a
/// vertex image may only take a reserved vertex by releasing its whole
/// component, isolated vertices before pieces and highest component first.
pub fn embed(chi: &TwoColoring, sh: &Shading, w: &WStructure, spec: &HPrefixSpec, budget: usize) -> Result<EmbeddingState> {
    if sh.shades.len() != chi.n() {
        return Err(Error::InvalidInput(format!("shading has {} vertices, coloring {}", sh.shades.len(), chi.n())));
    }
    if sh.a != spec.a {
        return Err(Error::InvalidInput(format!("shading uses a = {}, Ψ uses a = {}", sh.a, spec.a)));
    }
    let bad = w.violations(chi, sh);
    if !bad.is_empty() {
        return Err(Error::InvalidInput(format!("W is inconsistent: {}", bad.join("; "))));
    }
    if w.num_pieces() > 0 && !spec.templates.is_empty() && w.r != spec.r() {
        return Err(Error::InvalidInput(format!("W pieces have r = {}, templates have |I| = {}", w.r, spec.r())));
    }
    let mut reserved = vec![None; chi.n()];
    for (idx, comp) in w.components.iter().enumerate() {
        for v in comp.vertices() {
            reserved[v] = Some(idx);
        }
    }
    let mut e = Embedder {
        chi,
        sh,
        w,
        spec,
        st: EmbeddingState::empty(w.color, spec.a, spec.size),
        used: vec![false; chi.n()],
        reserved,
        pending: vec![true; w.components.len()],
        template_used: vec![false; spec.templates.len()],
        next_step: 0,
    };
    e.st.kappa = assign_kappa(sh, w, spec.num_components());
    e.run(budget);
    Ok(e.st)
}

impl Embedder<'_> {
    fn run(&mut self, budget: usize) {
        if self.st.phi.iter().all(Option::is_some) {
            self.st.status = EmbedStatus::Complete;
            return;
        }
        if self.st.kappa.is_empty() {
            self.st.status = EmbedStatus::Stuck { vertex: 0, reason: format!("no shade of color {:?} is nonempty", self.w.color) };
            return;
        }
        while self.st.steps < budget {
            let absorb_turn = self.st.steps % 2 == 0;
            if !(absorb_turn && self.absorb()) {
                if let Err(status) = self.vertex_image() {
                    self.st.status = status;
                    return;
                }
            }
            self.st.steps += 1;
            if self.st.phi.iter().all(Option::is_some) {
                self.st.status = EmbedStatus::Complete;
                return;
            }
        }
        self.st.status = EmbedStatus::BudgetExhausted;
    }

    fn kappa_of(&self, v: usize) -> usize {
        self.st.kappa[self.spec.component_of(v)]
    }

    fn defined(&self, v: usize) -> bool {
        self.st.phi[v].is_some()
    }

    fn assign(&mut self, h: usize, x: usize, component: Option<usize>) {
        let step = self.next_step;
        self.next_step += 1;
        self.st.phi[h] = Some(x);
        self.st.origin[h] = Some(match component {
            Some(component) => Origin::Absorbed { step, component },
            None => Origin::Vertex { step },
        });
        self.used[x] = true;
    }

    /// Host shade prescribed for a vertex-image step on v.
    fn target_shade(&self, v: usize) -> Shade {
        let (c, a, k) = (self.w.color, self.spec.a, self.kappa_of(v));
        let psi = self.spec.psi[v];
        if k != a {
            Shade::Colored { color: c, index: k }
        } else if psi == a {
            Shade::Colored { color: c, index: a }
        } else {
            Shade::Colored { color: c.other(), index: psi }
        }
    }

    /// Whether x is joined in color C to the image of every defined neighbour of v.
    fn fits(&self, v: usize, x: usize) -> bool {
        self.spec.graph().neighbors(v).iter().all(|&u| match self.st.phi[u] {
            Some(y) => self.chi.color(x, y) == self.w.color,
            None => true,
        })
    }

    /// Lowest free admissible vertex; failing that, the least admissible vertex
    /// of the highest pending W component, which is then released.
    fn choose(&mut self, v: usize) -> Option<usize> {
        let shade = self.target_shade(v);
        let fits = |x: usize| self.sh.shades[x] == shade && !self.used[x] && self.fits(v, x);
        if let Some(x) = (0..self.chi.n()).find(|&x| self.reserved[x].is_none() && fits(x)) {
            return Some(x);
        }
        // Isolated vertices go first so that pieces stay available for absorption.
        let w = self.w;
        let pending: Vec<usize> = (0..w.components.len()).rev().filter(|&i| self.pending[i]).collect();
        let isolated = |i: &usize| matches!(w.components[*i], WComponent::IsolatedVertex { .. });
        let order = pending.iter().filter(|i| isolated(i)).chain(pending.iter().filter(|i| !isolated(i)));
        let found = order.copied().find_map(|idx| w.components[idx].vertices().into_iter().filter(|&x| fits(x)).min().map(|x| (idx, x)));
        let (idx, x) = found?;
        self.release(idx);
        Some(x)
    }

    fn release(&mut self, idx: usize) {
        self.pending[idx] = false;
        self.st.released.push(idx);
        for x in self.w.components[idx].vertices() {
            self.reserved[x] = None;
        }
    }

    /// One vertex-image step on the least undefined vertex.
    fn vertex_image(&mut self) -> std::result::Result<(), EmbedStatus> {
        let v = self.st.phi.iter().position(Option::is_none).expect("run stops once Φ is total");
        let order = if self.kappa_of(v) == self.spec.a {
            let t = self.t_set(v);
            self.st.t_sizes.push(t.len());
            t
        } else {
            vec![v]
        };
        for u in order {
            match self.choose(u) {
                Some(x) => self.assign(u, x, None),
                None => {
                    let reason = format!("no host vertex in shade {:?} fits the defined neighbours", self.target_shade(u));
                    return Err(EmbedStatus::Stuck { vertex: u, reason });
                }
            }
        }
        Ok(())
    }

    /// Undefined vertices reachable from v along Ψ-increasing edges, in
    /// decreasing order of Ψ (ties by vertex id).
    pub(crate) fn t_set(&self, v: usize) -> Vec<usize> {
        let psi = &self.spec.psi;
        let mut seen = vec![false; self.spec.size];
        seen[v] = true;
        let mut queue = VecDeque::from([v]);
        let mut t = Vec::new();
        while let Some(u) = queue.pop_front() {
            t.push(u);
            for &w in self.spec.graph().neighbors(u) {
                if psi[w] > psi[u] && !seen[w] && !self.defined(w) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        t.sort_by_key(|&u| (std::cmp::Reverse(psi[u]), u));
        t
    }

    /// Maps the first pending W component that fits somewhere, pieces before
    /// isolated vertices; false if none does.
    fn absorb(&mut self) -> bool {
        let w = self.w;
        let is_piece = |i: &usize| matches!(w.components[*i], WComponent::BipartitePiece { .. });
        let pending: Vec<usize> = (0..w.components.len()).filter(|&i| self.pending[i]).collect();
        let order: Vec<usize> = pending.iter().copied().filter(is_piece).chain(pending.iter().copied().filter(|i| !is_piece(i))).collect();
        for idx in order {
            let placed = match &w.components[idx] {
                WComponent::IsolatedVertex { v, shade } => self.absorb_vertex(idx, *v, *shade),
                WComponent::BipartitePiece { x, y, y_shade, .. } => self.absorb_piece(idx, x, y, *y_shade),
            };
            if placed {
                self.pending[idx] = false;
                self.st.consumed.push(idx);
                return true;
            }
        }
        false
    }

    /// Whether every vertex of the set and all its neighbours are undefined.
    fn untouched(&self, set: &[usize]) -> bool {
        set.iter().all(|&v| !self.defined(v) && self.spec.graph().neighbors(v).iter().all(|&u| !self.defined(u)))
    }

    fn absorb_vertex(&mut self, idx: usize, x: usize, shade: usize) -> bool {
        let a = self.spec.a;
        let found = (0..self.spec.size).find(|&h| self.spec.psi[h] == a && self.kappa_of(h) == shade && self.untouched(&[h]));
        match found {
            Some(h) => {
                self.assign(h, x, Some(idx));
                true
            }
            None => false,
        }
    }

    fn absorb_piece(&mut self, idx: usize, x: &[usize], y: &[usize], shade: usize) -> bool {
        for t in 0..self.spec.templates.len() {
            if self.template_used[t] {
                continue;
            }
            let i_set = &self.spec.templates[t];
            let first = i_set.as_slice()[0];
            if self.kappa_of(first) != shade {
                continue;
            }
            let nb = self.spec.graph().neighborhood(i_set);
            if i_set.len() != x.len() || nb.len() != y.len() {
                continue;
            }
            let all: Vec<usize> = i_set.iter().chain(nb.iter()).collect();
            if !self.untouched(&all) {
                continue;
            }
            self.template_used[t] = true;
            for (h, &hx) in i_set.iter().zip(x) {
                self.assign(h, hx, Some(idx));
            }
            for (h, &hy) in nb.iter().zip(y) {
                self.assign(h, hy, Some(idx));
            }
            for &hv in x.iter().chain(y) {
                self.reserved[hv] = None;
            }
            return true;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedder::build_w;
    use crate::graphs::{FiniteGraph, VertexSet};
    use num_rational::Rational64;

    fn all_red(n: usize) -> (TwoColoring, Shading) {
        let chi = TwoColoring::monochromatic(n, Color::Red);
        let sh = crate::colorings::a_good_shading(&chi, 2, Rational64::new(1, 4), 2).unwrap();
        (chi, sh)
    }

    fn omega_k2(copies: usize) -> HPrefixSpec {
        HPrefixSpec::omega_factor(FiniteGraph::complete(2), copies, 2, vec![2, 1], VertexSet::new(vec![1])).unwrap()
    }

    #[test]
    fn all_red_host_embeds_omega_k2() {
        let (chi, sh) = all_red(40);
        let w = build_w(&chi, &sh, 1, 1).unwrap();
        for copies in [1, 5, 20] {
            let spec = omega_k2(copies);
            let st = embed(&chi, &sh, &w, &spec, usize::MAX).unwrap();
            assert!(st.is_complete(), "{:?}", st.status);
            assert_eq!(st.image().len(), 2 * copies);
            assert_eq!(st.image()[0], 0);
        }
    }

    #[test]
    fn zero_budget_is_empty() {
        let (chi, sh) = all_red(10);
        let w = build_w(&chi, &sh, 1, 1).unwrap();
        let st = embed(&chi, &sh, &w, &omega_k2(3), 0).unwrap();
        assert!(st.pairs().is_empty());
        assert_eq!(st.status, EmbedStatus::BudgetExhausted);
        assert_eq!(st.steps, 0);
    }

    #[test]
    fn t_set_runs_in_decreasing_psi() {
        // Path 0-1-2 with Ψ = 1, 2, 3: from 0 everything is reachable.
        let psi = vec![1, 2, 3];
        let spec = HPrefixSpec::new(crate::graphs::GraphFamily::Explicit(FiniteGraph::path(3)), 3, 3, psi, Vec::new()).unwrap();
        let chi = TwoColoring::monochromatic(3, Color::Red);
        let sh = Shading { a: 3, min_count: 1, shades: vec![Shade::X; 3], rounds: Vec::new() };
        let w = WStructure { color: Color::Red, r: 1, s: 1, components: Vec::new(), density: Rational64::from_integer(0) };
        let e = Embedder {
            chi: &chi,
            sh: &sh,
            w: &w,
            spec: &spec,
            st: EmbeddingState::empty(Color::Red, 3, 3),
            used: vec![false; 3],
            reserved: vec![None; 3],
            pending: Vec::new(),
            template_used: Vec::new(),
            next_step: 0,
        };
        assert_eq!(e.t_set(0), vec![2, 1, 0]);
        assert_eq!(e.t_set(1), vec![2, 1]);
        assert_eq!(e.t_set(2), vec![2]);
    }
}
