use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::format::{rational, rational_f64, sig9};
use crate::{parse_family, Artifact, Outcome};
use rdl_core::colorings::{self, Color, ColoringRule, TwoColoring};
use rdl_core::embedder::{self, PlantedConfig};
use rdl_core::flows::{self, CapacitatedBipartite, FindFlowConfig, TotalColoring};
use rdl_core::graphs::{self, FiniteGraph, VertexSet};
use rdl_core::lipschitz::{f_closed, f_from_h, sigma, sigma_g, sigma_window, sup_ratio, GammaParam, PLFunction};

/// "p/q" or an integer.
pub fn parse_rational(text: &str) -> Result<Rational64> {
    let text = text.trim();
    let q = match text.split_once('/') {
        Some((p, q)) => {
            let (p, q): (i64, i64) = (p.trim().parse()?, q.trim().parse()?);
            if q == 0 {
                bail!("zero denominator in {text:?}");
            }
            Rational64::new(p, q)
        }
        None => Rational64::from_integer(text.parse().with_context(|| format!("{text:?} is not p/q or an integer"))?),
    };
    Ok(q)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FEvalArgs {
    #[arg(long)]
    pub lambda: f64,
    /// Sawtooth periods used for the crossing-ratio evaluation.
    #[arg(long, default_value_t = 12)]
    pub periods: usize,
}

/// f via the sawtooth: the crossing-ratio supremum over its periodic window.
pub fn sawtooth_f(lambda: f64, periods: usize) -> Result<(f64, f64)> {
    let p = GammaParam::from_lambda(lambda)?;
    let g = sigma_g(p, periods)?;
    let (lo, hi) = sigma_window(p, periods);
    let h = sup_ratio(&g, p, lo, hi)?;
    Ok((h, f_from_h(p, h)))
}

pub fn f_eval(a: &FEvalArgs) -> Result<Outcome> {
    let b = f_closed(a.lambda)?;
    // The sawtooth needs γ < 1/2, i.e. λ < 3.
    let saw = if a.lambda > 0.0 && a.lambda < 3.0 { Some(sawtooth_f(a.lambda, a.periods)?) } else { None };
    let mut summary = format!("lambda {}\nlower {}\nupper {}\n", sig9(a.lambda), sig9(b.lower), sig9(b.upper));
    let _ = writeln!(summary, "exact {}", b.exact.map_or("none".into(), sig9));
    if let Some((_, f)) = saw {
        let _ = writeln!(summary, "sawtooth {}", sig9(f));
    }
    let verified = saw.map_or(true, |(_, f)| (f - b.upper).abs() <= 1e-6);
    let result = json!({
        "lambda": a.lambda,
        "lower": b.lower,
        "upper": b.upper,
        "exact": b.exact,
        "sawtooth_h": saw.map(|s| s.0),
        "sawtooth_f": saw.map(|s| s.1),
    });
    Ok(Outcome { summary, artifact: Artifact::Json(result), verified })
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Fig1Args {
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    #[arg(long, default_value_t = 3.0)]
    pub max: f64,
}

pub fn fig1_rows(step: f64, max: f64) -> Result<Vec<Vec<String>>> {
    if !(step > 0.0 && max >= 0.0 && (max / step) < 1e7) {
        bail!("need step > 0 and 0 ≤ max with at most 10^7 rows");
    }
    let count = (max / step + 1e-9).floor() as usize;
    (0..=count)
        .map(|k| {
            let x = k as f64 * step;
            let b = f_closed(x)?;
            Ok(vec![sig9(x), sig9(b.lower), sig9(b.upper), b.exact.map_or(String::new(), sig9)])
        })
        .collect()
}

pub fn fig1(a: &Fig1Args) -> Result<Outcome> {
    let rows = fig1_rows(a.step, a.max)?;
    let mut summary = String::from("x,lower,upper,exact\n");
    for row in &rows {
        summary.push_str(&row.join(","));
        summary.push('\n');
    }
    Ok(Outcome { summary, artifact: Artifact::Csv { columns: vec!["x", "lower", "upper", "exact"], rows }, verified: true })
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MuArgs {
    /// pathpower:k, karytree:k, grid:d, omega-kbip:r,s, omega:FILE, forest:FILE or graph:FILE.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    /// Initial prefix size; doubled until the optimum is certified.
    #[arg(long, default_value_t = 8)]
    pub start: usize,
    #[arg(long, default_value_t = 256)]
    pub max_prefix: usize,
}

pub fn mu(a: &MuArgs) -> Result<Outcome> {
    let family = parse_family(&a.family)?;
    let rep = graphs::mu_auto(&family, a.n, a.start, a.max_prefix)?;
    let summary = format!("{}\n", rep.value);
    let result = json!({ "family": a.family, "n": a.n, "value": rep.value, "witness": rep.witness, "prefix_size": rep.prefix_size });
    Ok(Outcome { summary, artifact: Artifact::Json(result), verified: true })
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AdversaryArgs {
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    /// "sawtooth" (needs s/r < 3) or "zero".
    #[arg(long, default_value = "sawtooth")]
    pub g: String,
}

pub fn adversary(a: &AdversaryArgs) -> Result<Outcome> {
    if a.r == 0 || a.s == 0 {
        bail!("s and r must be positive");
    }
    let g = match a.g.as_str() {
        "zero" => PLFunction::zero(),
        "sawtooth" => {
            let p = GammaParam::from_lambda(a.s as f64 / a.r as f64)?;
            let periods = ((2.0 * a.n as f64).ln() / sigma(p).ln()).ceil().max(2.0) as usize + 2;
            sigma_g(p, periods)?
        }
        other => bail!("unknown g {other:?}; use sawtooth or zero"),
    };
    let inst = colorings::adversary(a.s, a.r, &g, a.n)?;
    let check = inst.check_invariants();
    let colors: String = inst.vertex_colors.iter().map(|c| c.letter()).collect();
    let summary = format!(
        "reds {}\nblocks {}\nbound_checked {}\npassed {}\n",
        inst.red_positions.len(),
        inst.blocks,
        check.bound_checked,
        check.passed()
    );
    let result = json!({
        "lambda": inst.lambda(),
        "vertex_colors": colors,
        "alpha": inst.alpha,
        "beta": inst.beta,
        "blocks": inst.blocks,
        "phi": inst.phi,
        "check": check,
    });
    Ok(Outcome { summary, artifact: Artifact::Json(result), verified: check.passed() })
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MfmcArgs {
    /// JSON instance {"X": [...], "Y": [...], "edges": [[x, y], ...], "r": r, "s": s}.
    #[arg(long)]
    pub input: PathBuf,
}

pub fn mfmc(a: &MfmcArgs) -> Result<Outcome> {
    let text = std::fs::read_to_string(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let g: CapacitatedBipartite = serde_json::from_str(&text).context("parsing the instance")?;
    let cert = flows::mfmc(&g)?;
    let bad = cert.violations(&g);
    let summary = format!("{}\n", serde_json::to_string(&cert)?);
    Ok(Outcome { summary, artifact: Artifact::Json(serde_json::to_value(&cert)?), verified: bad.is_empty() })
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FindflowArgs {
    #[arg(long, default_value_t = 40)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub r: u64,
    #[arg(long, default_value_t = 1)]
    pub s: u64,
    /// Probability that a vertex is red.
    #[arg(long, default_value_t = 0.5)]
    pub red_share: f64,
    /// Probability that an edge is red.
    #[arg(long, default_value_t = 0.5)]
    pub edge_red: f64,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long)]
    pub gamma: Option<f64>,
}

pub fn random_total_coloring(n: usize, red_share: f64, edge_red: f64, seed: u64) -> Result<TotalColoring> {
    if n < 2 || !(0.0..=1.0).contains(&red_share) || !(0.0..=1.0).contains(&edge_red) {
        bail!("need n ≥ 2 and probabilities in [0, 1]");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vc: Vec<Color> = (0..n).map(|_| pick(&mut rng, red_share)).collect();
    let edges = random_coloring_with(&mut rng, n, edge_red)?;
    Ok(TotalColoring::new(vc, edges, None)?)
}

fn pick(rng: &mut ChaCha8Rng, p: f64) -> Color {
    if rng.gen_bool(p) {
        Color::Red
    } else {
        Color::Blue
    }
}

fn random_coloring_with(rng: &mut ChaCha8Rng, n: usize, edge_red: f64) -> Result<TwoColoring> {
    let cols: Vec<Color> = (0..n * n.saturating_sub(1) / 2).map(|_| pick(rng, edge_red)).collect();
    Ok(TwoColoring::new(n, ColoringRule::Explicit(cols))?)
}

/// Seeded uniformly random edge 2-coloring of K_n.
pub fn random_coloring(n: usize, seed: u64) -> Result<TwoColoring> {
    random_coloring_with(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.5)
}

pub fn findflow(a: &FindflowArgs, seed: u64) -> Result<Outcome> {
    let tc = random_total_coloring(a.n, a.red_share, a.edge_red, seed)?;
    let config = FindFlowConfig { epsilon: a.epsilon, gamma: a.gamma, ..Default::default() };
    let res = flows::findflow(&tc, a.r, a.s, &config)?;
    let issues = flows::verify_findflow(&tc, a.r, a.s, &res);
    let summary = format!(
        "t {}\ncolor {}\nflow {}\nvalue {} ({})\n",
        res.t,
        res.color.letter(),
        res.flow_value,
        rational(res.value),
        sig9(rational_f64(res.value))
    );
    let mut result = serde_json::to_value(&res)?;
    result["issues"] = json!(issues);
    Ok(Outcome { summary, artifact: Artifact::Json(result), verified: issues.is_empty() })
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ShadeArgs {
    /// Coloring file in the text format ("n explicit" plus a color string).
    #[arg(long)]
    pub coloring: Option<PathBuf>,
    /// Modulus of the modular clique coloring used when no file is given.
    #[arg(long, default_value_t = 3)]
    pub clique: usize,
    /// Use a seeded uniformly random coloring instead; small hosts often fail
    /// the sampled check since common neighbourhoods shrink geometrically.
    #[arg(long, conflicts_with = "coloring")]
    pub random: bool,
    /// Vertex count for the modular or random coloring.
    #[arg(long, default_value_t = 150)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub a: usize,
    #[arg(long, default_value = "1/8")]
    pub theta: String,
    #[arg(long, default_value_t = 5)]
    pub min_count: usize,
    /// Random subsets checked per pool.
    #[arg(long, default_value_t = 200)]
    pub sample: usize,
    #[arg(long, default_value_t = 4)]
    pub subset_cap: usize,
}

pub fn shade(a: &ShadeArgs, seed: u64) -> Result<Outcome> {
    let chi = match &a.coloring {
        Some(path) => TwoColoring::parse_text(&std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)?,
        None if a.random => random_coloring(a.n, seed)?,
        None => colorings::clique_coloring(a.clique, a.n)?,
    };
    let theta = parse_rational(&a.theta)?;
    let sh = colorings::a_good_shading(&chi, a.a, theta, a.min_count)?;
    let rep = colorings::verify_shading(&chi, &sh, a.sample, a.subset_cap, seed)?;
    let labels = sh.labels();
    let summary = format!("{}\nX {}\npassed {}\n", labels.join(" "), sh.x_members().len(), rep.passed);
    let result = json!({ "labels": labels, "rounds": sh.rounds, "report": rep });
    Ok(Outcome { summary, artifact: Artifact::Json(result), verified: rep.passed })
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EmbedArgs {
    #[arg(long, default_value_t = 2)]
    pub r: usize,
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    #[arg(long, default_value_t = 5)]
    pub pieces: usize,
    #[arg(long, default_value_t = 30)]
    pub reservoir: usize,
    #[arg(long, default_value_t = 0)]
    pub blue_pool: usize,
    #[arg(long, default_value_t = 5)]
    pub decoys: usize,
    #[arg(long, default_value_t = 1)]
    pub shades: usize,
    #[arg(long, default_value_t = 0.0)]
    pub cross_red: f64,
    #[arg(long, default_value_t = 12)]
    pub copies: usize,
    /// Step budget; unlimited when absent.
    #[arg(long)]
    pub budget: Option<usize>,
}

pub fn embed(a: &EmbedArgs, seed: u64) -> Result<Outcome> {
    let cfg = PlantedConfig {
        r: a.r,
        s: a.s,
        pieces: a.pieces,
        reservoir: a.reservoir,
        blue_pool: a.blue_pool,
        decoys: a.decoys,
        shades: a.shades,
        cross_red: a.cross_red,
        copies: a.copies,
        seed,
    };
    let inst = embedder::planted_instance(&cfg)?;
    let st = embedder::embed(&inst.chi, &inst.sh, &inst.w, &inst.spec, a.budget.unwrap_or(usize::MAX))?;
    let rep = embedder::verify_embedding(&st, &inst.chi, &inst.sh, &inst.spec, &inst.w);
    let summary = format!(
        "status {:?}\nimage {}/{}\nconsumed {}/{}\nimage_density {}\nw_density {}\npassed {}\n",
        st.status,
        st.pairs().len(),
        inst.spec.size,
        st.consumed.len(),
        inst.w.components.len(),
        rational(rep.image_density),
        rational(rep.w_density),
        rep.passed()
    );
    let result = json!({
        "embedding": st.summary(),
        "status": st.status,
        "w": { "color": inst.w.color, "components": inst.w.components.len(), "pieces": inst.w.num_pieces(), "density": inst.w.density },
        "report": rep,
    });
    Ok(Outcome { summary, artifact: Artifact::Json(result), verified: rep.passed() })
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TreecutArgs {
    /// Forest edge-list file; a seeded random forest is used when absent.
    #[arg(long)]
    pub forest: Option<PathBuf>,
    /// Comma-separated independent set I (required with --forest).
    #[arg(long)]
    pub set: Option<String>,
    /// Vertex count of the random forest.
    #[arg(long, default_value_t = 40)]
    pub n: usize,
    /// λ as p/q; defaults to |N(I)|/|I|.
    #[arg(long)]
    pub lambda: Option<String>,
    /// λ′ as p/q; defaults to λ + 1/2.
    #[arg(long)]
    pub lambda_prime: Option<String>,
    #[arg(long)]
    pub delta: Option<String>,
}

/// Seeded random forest (each vertex joins a random earlier one with
/// probability 0.9) and its even-depth vertices as I.
pub fn random_forest(n: usize, seed: u64) -> Result<(FiniteGraph, VertexSet)> {
    if n == 0 {
        bail!("forest needs at least one vertex");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut depth = vec![0usize; n];
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(0.9) {
            let u = rng.gen_range(0..v);
            depth[v] = depth[u] + 1;
            edges.push((u, v));
        }
    }
    let set = (0..n).filter(|&v| depth[v] % 2 == 0).collect();
    Ok((FiniteGraph::new(n, &edges)?, VertexSet::new(set)))
}

pub fn treecut(a: &TreecutArgs, seed: u64) -> Result<Outcome> {
    let (forest, set) = match &a.forest {
        Some(path) => {
            let forest = FiniteGraph::parse_edge_list(&std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)?;
            let text = a.set.as_deref().context("--set is required with --forest")?;
            let set: Vec<usize> = text.split(',').map(|t| t.trim().parse()).collect::<std::result::Result<_, _>>()?;
            (forest, VertexSet::new(set))
        }
        None => random_forest(a.n, seed)?,
    };
    if set.is_empty() {
        bail!("I is empty");
    }
    let lambda = match &a.lambda {
        Some(t) => parse_rational(t)?,
        None => Rational64::new(forest.neighborhood(&set).len() as i64, set.len() as i64),
    };
    let lambda_prime = match &a.lambda_prime {
        Some(t) => parse_rational(t)?,
        None => lambda + Rational64::new(1, 2),
    };
    let delta = a.delta.as_deref().map(parse_rational).transpose()?;
    let rep = graphs::treecut(&forest, &set, lambda, lambda_prime, delta)?;
    let size = rep.subset.len() as i64;
    let verified = Rational64::from_integer(size) <= rep.max_size
        && Rational64::from_integer(rep.neighborhood_size as i64) <= lambda_prime * size;
    let summary = format!(
        "subset {:?}\nneighborhood {}\ndelta {}\nmax_size {}\nsplit {}\n",
        rep.subset.as_slice(),
        rep.neighborhood_size,
        rational(rep.delta),
        rational(rep.max_size),
        rep.split
    );
    let result = json!({
        "n": forest.n(),
        "set_size": set.len(),
        "lambda": rational(lambda),
        "lambda_prime": rational(lambda_prime),
        "report": rep,
    });
    Ok(Outcome { summary, artifact: Artifact::Json(result), verified })
}
