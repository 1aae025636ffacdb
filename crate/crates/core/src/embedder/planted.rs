use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::spec::HPrefixSpec;
use super::wstructure::{build_w_for_color, WStructure, DEFAULT_WINDOW};
use crate::colorings::{Color, Shade, Shading, TwoColoring};
use crate::error::{Error, Result};
use crate::graphs::{FiniteGraph, VertexSet};

/// Host with red K_{r,s} pieces planted between blue-shaded X vertices and
/// red-shaded Y vertices, shaded by construction with a = 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedConfig {
    pub r: usize,
    pub s: usize,
    pub pieces: usize,
    /// Extra red-shaded vertices.
    pub reservoir: usize,
    /// Extra B1 vertices.
    pub blue_pool: usize,
    /// B2 vertices whose every edge is blue.
    pub decoys: usize,
    /// 1: everything red sits in R1. 2: red vertices split between R1 and R2.
    pub shades: usize,
    /// Probability that a non-planted R1–B1 edge is red.
    pub cross_red: f64,
    /// Copies of K_{r,s} in the H prefix.
    pub copies: usize,
    pub seed: u64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        Self { r: 2, s: 1, pieces: 5, reservoir: 30, blue_pool: 0, decoys: 5, shades: 1, cross_red: 0.0, copies: 10, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    PieceX(usize),
    PieceY(usize),
    Red,
    Blue,
    Decoy,
}

#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub chi: TwoColoring,
    pub sh: Shading,
    pub spec: HPrefixSpec,
    pub w: WStructure,
    /// Host (X, Y) of each planted piece.
    pub planted: Vec<(Vec<usize>, Vec<usize>)>,
}

/// Builds the host in a seeded random vertex order. R1 is a red clique,
/// R2 is red to all of B1, planted pieces are red, decoys are blue to
/// everything and the remaining pairs are fair coin flips (R1–B1 uses
/// `cross_red`). H is ω·K_{r,s} with Ψ = 1 on the r side, Ψ = 2 on the s side
/// and the r side as template; W is the red W-structure of the host.
pub fn planted_instance(cfg: &PlantedConfig) -> Result<PlantedInstance> {
    if cfg.r == 0 || cfg.s == 0 || cfg.copies == 0 {
        return Err(Error::InvalidInput("r, s and copies must be positive".into()));
    }
    if !(1..=2).contains(&cfg.shades) {
        return Err(Error::InvalidInput(format!("shades must be 1 or 2, got {}", cfg.shades)));
    }
    if !(0.0..=1.0).contains(&cfg.cross_red) {
        return Err(Error::InvalidInput(format!("cross_red must lie in [0, 1], got {}", cfg.cross_red)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut roles = Vec::new();
    for p in 0..cfg.pieces {
        roles.extend(std::iter::repeat(Role::PieceX(p)).take(cfg.r));
        roles.extend(std::iter::repeat(Role::PieceY(p)).take(cfg.s));
    }
    roles.extend(std::iter::repeat(Role::Red).take(cfg.reservoir));
    roles.extend(std::iter::repeat(Role::Blue).take(cfg.blue_pool));
    roles.extend(std::iter::repeat(Role::Decoy).take(cfg.decoys));
    roles.shuffle(&mut rng);
    let n = roles.len();
    if n < 2 {
        return Err(Error::InvalidInput("host needs at least two vertices".into()));
    }

    let piece_shade: Vec<usize> = (0..cfg.pieces).map(|_| rng.gen_range(1..=cfg.shades)).collect();
    let shades: Vec<Shade> = roles
        .iter()
        .map(|role| match *role {
            Role::PieceX(_) | Role::Blue => Shade::Colored { color: Color::Blue, index: 1 },
            Role::PieceY(p) => Shade::Colored { color: Color::Red, index: piece_shade[p] },
            Role::Red => Shade::Colored { color: Color::Red, index: rng.gen_range(1..=cfg.shades) },
            Role::Decoy => Shade::Colored { color: Color::Blue, index: 2 },
        })
        .collect();

    let r1 = Shade::Colored { color: Color::Red, index: 1 };
    let r2 = Shade::Colored { color: Color::Red, index: 2 };
    let b1 = Shade::Colored { color: Color::Blue, index: 1 };
    let coin = |rng: &mut ChaCha8Rng, p: f64| if rng.gen_bool(p) { Color::Red } else { Color::Blue };
    let mut colors = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            let (su, sv) = (shades[u], shades[v]);
            let same_piece = match (roles[u], roles[v]) {
                (Role::PieceX(p), Role::PieceY(q)) | (Role::PieceY(p), Role::PieceX(q)) => p == q,
                _ => false,
            };
            let pair = |x: Shade, y: Shade| (su == x && sv == y) || (su == y && sv == x);
            let c = if roles[u] == Role::Decoy || roles[v] == Role::Decoy {
                Color::Blue
            } else if same_piece || pair(r1, r1) || pair(r2, b1) {
                Color::Red
            } else if pair(r1, b1) {
                coin(&mut rng, cfg.cross_red)
            } else {
                coin(&mut rng, 0.5)
            };
            colors.push(c);
        }
    }
    let chi = TwoColoring::new(n, crate::colorings::ColoringRule::Explicit(colors))?;
    let sh = Shading { a: 2, min_count: 1, shades, rounds: Vec::new() };

    let factor = FiniteGraph::complete_bipartite(cfg.r, cfg.s);
    let psi_f = (0..cfg.r + cfg.s).map(|v| if v < cfg.r { 1 } else { 2 }).collect();
    let spec = HPrefixSpec::omega_factor(factor, cfg.copies, 2, psi_f, VertexSet::new((0..cfg.r).collect()))?;
    let w = build_w_for_color(&chi, &sh, cfg.r, cfg.s, Color::Red, DEFAULT_WINDOW.max(cfg.r).max(cfg.s))?;

    let mut planted = vec![(Vec::new(), Vec::new()); cfg.pieces];
    for (v, role) in roles.iter().enumerate() {
        match *role {
            Role::PieceX(p) => planted[p].0.push(v),
            Role::PieceY(p) => planted[p].1.push(v),
            _ => {}
        }
    }
    Ok(PlantedInstance { chi, sh, spec, w, planted })
}
