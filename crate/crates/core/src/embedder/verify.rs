use num_rational::Rational64;
use serde::Serialize;

use super::embed::{EmbeddingState, Origin};
use super::spec::HPrefixSpec;
use super::wstructure::WStructure;
use crate::colorings::{density, Shade, Shading, TwoColoring};
use crate::graphs::VertexSet;

/// Pass/fail per property, with the first few failures spelled out.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingReport {
    pub injective: bool,
    pub edges_monochromatic: bool,
    pub progress_conditions: bool,
    pub w_contained: bool,
    pub t_sets_bounded: bool,
    /// Upper density of the image over checkpoints 1..=n, 0 for an empty image.
    pub image_density: Rational64,
    pub w_density: Rational64,
    /// Least checkpoint at which W attains its density.
    pub w_argmax: usize,
    /// W components not consumed.
    pub unconsumed: usize,
    /// (r + s)·unconsumed / w_argmax.
    pub slack: Rational64,
    /// image_density ≥ w_density − slack.
    pub density_bound: bool,
    pub failures: Vec<String>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.injective && self.edges_monochromatic && self.progress_conditions && self.w_contained && self.t_sets_bounded && self.density_bound
    }
}

/// Σ_{ℓ<a} Δ^ℓ: the number of Ψ-increasing walks from one vertex, which have
/// at most a − 1 edges.
pub fn t_set_bound(max_degree: usize, a: usize) -> u128 {
    (0..a as u32).map(|l| (max_degree as u128).saturating_pow(l)).fold(0u128, u128::saturating_add)
}

/// Read-only check of an embedding state against its inputs.
pub fn verify_embedding(st: &EmbeddingState, chi: &TwoColoring, sh: &Shading, spec: &HPrefixSpec, w: &WStructure) -> EmbeddingReport {
    let mut failures = Vec::new();
    let mut fail = |flag: &mut bool, msg: String| {
        *flag = false;
        if failures.len() < 20 {
            failures.push(msg);
        }
    };
    let n = chi.n();
    let c = st.color;
    let size = spec.size.min(st.phi.len());

    let mut injective = st.phi.len() == spec.size;
    if !injective {
        fail(&mut injective, format!("Φ covers {} vertices, prefix has {}", st.phi.len(), spec.size));
    }
    let mut owner = vec![None; n];
    for (h, x) in st.pairs() {
        if x >= n {
            fail(&mut injective, format!("Φ({h}) = {x} is outside the host"));
        } else if let Some(prev) = owner[x].replace(h) {
            fail(&mut injective, format!("Φ({prev}) = Φ({h}) = {x}"));
        }
    }

    let mut edges_monochromatic = true;
    for (u, v) in spec.graph().edges() {
        if let (Some(Some(x)), Some(Some(y))) = (st.phi.get(u), st.phi.get(v)) {
            if x < &n && y < &n && (x == y || chi.color(*x, *y) != c) {
                fail(&mut edges_monochromatic, format!("edge {u}{v} maps to {x}{y}, not {c:?}"));
            }
        }
    }

    let mut progress_conditions = true;
    let a = spec.a;
    for v in 0..size {
        let (Some(x), Some(Origin::Vertex { step })) = (st.phi[v], st.origin[v]) else { continue };
        if x >= n {
            continue;
        }
        let Some(&k) = st.kappa.get(spec.component_of(v)) else {
            fail(&mut progress_conditions, format!("no κ for the component of {v}"));
            continue;
        };
        let psi = spec.psi[v];
        let want = if k != a {
            Shade::Colored { color: c, index: k }
        } else if psi == a {
            Shade::Colored { color: c, index: a }
        } else {
            Shade::Colored { color: c.other(), index: psi }
        };
        if sh.shades[x] != want {
            fail(&mut progress_conditions, format!("Φ({v}) = {x} is in {:?}, expected {want:?}", sh.shades[x]));
        }
        if k == a && psi < a {
            for &u in spec.graph().neighbors(v) {
                if spec.psi[u] > psi && st.origin[u].map_or(true, |o| o.step() > step) {
                    fail(&mut progress_conditions, format!("neighbour {u} of {v} with larger Ψ was not embedded first"));
                }
            }
        }
    }

    let mut w_contained = true;
    let image: VertexSet = VertexSet::new(st.image());
    for &idx in &st.consumed {
        match w.components.get(idx) {
            Some(comp) => {
                if let Some(x) = comp.vertices().into_iter().find(|&x| !image.contains(x)) {
                    fail(&mut w_contained, format!("consumed component {idx} misses host vertex {x}"));
                }
            }
            None => fail(&mut w_contained, format!("consumed component {idx} does not exist")),
        }
    }

    let mut t_sets_bounded = true;
    let bound = t_set_bound(spec.max_degree(), a);
    if let Some(&t) = st.t_sizes.iter().find(|&&t| t as u128 > bound) {
        fail(&mut t_sets_bounded, format!("|T| = {t} exceeds {bound}"));
    }

    let checkpoints: Vec<usize> = (1..=n).collect();
    let image_density = if image.is_empty() || n == 0 || image.as_slice().last() >= Some(&n) {
        Rational64::from_integer(0)
    } else {
        density(&image, n, &checkpoints).expect("checkpoints lie in 1..=n").max_ratio
    };
    let w_vertices = w.vertices();
    let (w_density, w_argmax) = argmax_density(&w_vertices);
    let mut consumed = vec![false; w.components.len()];
    for &idx in &st.consumed {
        if idx < consumed.len() {
            consumed[idx] = true;
        }
    }
    let unconsumed = consumed.iter().filter(|&&b| !b).count();
    let slack = if w_argmax == 0 {
        Rational64::from_integer(0)
    } else {
        Rational64::new(((w.r + w.s) * unconsumed) as i64, w_argmax as i64)
    };
    let mut density_bound = image_density >= w_density - slack;
    if !density_bound {
        fail(&mut density_bound, format!("image density {image_density} < {w_density} − {slack}"));
    }

    EmbeddingReport {
        injective,
        edges_monochromatic,
        progress_conditions,
        w_contained,
        t_sets_bounded,
        image_density,
        w_density,
        w_argmax,
        unconsumed,
        slack,
        density_bound,
        failures,
    }
}

/// max over m of |S ∩ [m]|/m together with the least m attaining it; (0, 0) for S = ∅.
fn argmax_density(members: &[usize]) -> (Rational64, usize) {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    let mut best = (Rational64::from_integer(0), 0);
    for (k, &v) in sorted.iter().enumerate() {
        let ratio = Rational64::new(k as i64 + 1, v as i64 + 1);
        if ratio > best.0 {
            best = (ratio, v + 1);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedder::{build_w, embed};
    use crate::colorings::Color;
    use crate::graphs::FiniteGraph;

    fn setup(n: usize, copies: usize) -> (TwoColoring, Shading, HPrefixSpec, WStructure) {
        let chi = TwoColoring::monochromatic(n, Color::Red);
        let sh = crate::colorings::a_good_shading(&chi, 2, Rational64::new(1, 4), 2).unwrap();
        let spec = HPrefixSpec::omega_factor(FiniteGraph::complete(2), copies, 2, vec![2, 1], VertexSet::new(vec![1])).unwrap();
        let w = build_w(&chi, &sh, 1, 1).unwrap();
        (chi, sh, spec, w)
    }

    #[test]
    fn all_red_embedding_passes_with_density_one() {
        let (chi, sh, spec, w) = setup(30, 10);
        let st = embed(&chi, &sh, &w, &spec, usize::MAX).unwrap();
        let rep = verify_embedding(&st, &chi, &sh, &spec, &w);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.image_density, Rational64::from_integer(1));
    }

    #[test]
    fn corrupted_image_breaks_an_edge() {
        // Red clique on 0..10; every edge touching 10..20 is blue.
        let n = 20;
        let (_, _, spec, _) = setup(n, 3);
        let chi = TwoColoring::from_fn(n, |u, v| if u < 10 && v < 10 { Color::Red } else { Color::Blue });
        let sh = Shading { a: 2, min_count: 1, shades: vec![Shade::Colored { color: Color::Red, index: 1 }; n], rounds: Vec::new() };
        let w = crate::embedder::build_w_for_color(&chi, &sh, 1, 1, Color::Red, 16).unwrap();
        let mut st = embed(&chi, &sh, &w, &spec, usize::MAX).unwrap();
        assert!(st.is_complete());
        assert!(verify_embedding(&st, &chi, &sh, &spec, &w).passed());
        assert!(st.image().iter().all(|&x| x < 10));
        st.phi[0] = Some(15);
        let rep = verify_embedding(&st, &chi, &sh, &spec, &w);
        assert!(!rep.edges_monochromatic);
        assert!(rep.injective);
        assert!(!rep.passed());
    }

    #[test]
    fn empty_state_passes() {
        let (chi, sh, spec, w) = setup(10, 3);
        let st = embed(&chi, &sh, &w, &spec, 0).unwrap();
        let rep = verify_embedding(&st, &chi, &sh, &spec, &w);
        assert!(rep.injective && rep.edges_monochromatic && rep.progress_conditions && rep.w_contained);
        assert_eq!(rep.image_density, Rational64::from_integer(0));
    }

    #[test]
    fn t_bound_values() {
        assert_eq!(t_set_bound(2, 2), 3);
        assert_eq!(t_set_bound(0, 3), 1);
        assert_eq!(t_set_bound(1, 3), 3);
    }
}
