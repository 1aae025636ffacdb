use num_rational::Rational64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdl_core::colorings::{Color, TwoColoring};
use rdl_core::flows::*;

fn random_instance(rng: &mut ChaCha8Rng) -> CapacitatedBipartite {
    let nx = rng.gen_range(0..=5);
    let ny = rng.gen_range(0..=5);
    let x: Vec<usize> = (0..nx).collect();
    let y: Vec<usize> = (nx..nx + ny).collect();
    let p = rng.gen_range(0.1..0.9);
    let edges = x.iter().flat_map(|&u| y.iter().map(move |&v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    CapacitatedBipartite::new(x, y, edges, rng.gen_range(1..=3), rng.gen_range(1..=3)).unwrap()
}

#[test]
fn weighted_konig_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xf10);
    for case in 0..300 {
        let g = random_instance(&mut rng);
        let cert = mfmc(&g).unwrap();
        assert!(cert.violations(&g).is_empty(), "case {case}");
        assert_eq!(cert.d, max_flow_bruteforce(&g).unwrap(), "case {case}: {g:?}");
        assert_eq!(cert.d, min_cover_bruteforce(&g).unwrap(), "case {case}: {g:?}");
    }
}

fn random_total_coloring(rng: &mut ChaCha8Rng, n: usize) -> TotalColoring {
    let red_share = rng.gen_range(0.2..0.8);
    let vc: Vec<Color> = (0..n).map(|_| if rng.gen_bool(red_share) { Color::Red } else { Color::Blue }).collect();
    let p = rng.gen_range(0.1..0.9);
    let cols: Vec<Color> = (0..n * (n - 1) / 2).map(|_| if rng.gen_bool(p) { Color::Red } else { Color::Blue }).collect();
    let edges = TwoColoring::new(n, rdl_core::colorings::ColoringRule::Explicit(cols)).unwrap();
    TotalColoring::new(vc, edges, None).unwrap()
}

/// Random vertex colors with every edge uv (u < v) taking the color of u.
fn leftmost_total_coloring(rng: &mut ChaCha8Rng, n: usize) -> TotalColoring {
    let vc: Vec<Color> = (0..n).map(|_| if rng.gen_bool(0.5) { Color::Red } else { Color::Blue }).collect();
    let edges = TwoColoring::new(n, rdl_core::colorings::ColoringRule::LeftmostEndpoint(vc.clone())).unwrap();
    TotalColoring::new(vc, edges, None).unwrap()
}

/// Best value over t ≥ t_lo, both colors and every integral h of total at
/// most `max_d` meeting the capacity and edge-color conditions.
fn findflow_oracle(tc: &TotalColoring, r: u64, s: u64, t_lo: usize, max_d: u64) -> Rational64 {
    let n = tc.n();
    let mut best = Rational64::from_integer(0);
    for c in [Color::Red, Color::Blue] {
        for t in t_lo..=n {
            // Only flow into C̄ ∩ [t] counts, so edges elsewhere are left at 0.
            let edges: Vec<(usize, usize)> = (0..t)
                .filter(|&v| tc.vertex_color(v) != c)
                .flat_map(|v| (0..n).map(move |u| (u, v)))
                .filter(|&(u, v)| tc.vertex_color(u) == c && tc.edge_color(u, v) == Some(c))
                .collect();
            let mut load = vec![0u64; n];
            let inflow = best_total(&edges, 0, max_d, r, s, &mut load);
            let own = (0..t).filter(|&v| tc.vertex_color(v) == c).count() as i64;
            let value = Rational64::new(own, t as i64) + Rational64::new(inflow as i64, (s * t as u64) as i64);
            best = best.max(value);
        }
    }
    best
}

/// Largest total over every assignment of h on edges[k..] within capacities.
fn best_total(edges: &[(usize, usize)], k: usize, budget: u64, r: u64, s: u64, load: &mut [u64]) -> u64 {
    if k == edges.len() || budget == 0 {
        return 0;
    }
    let (u, v) = edges[k];
    let room = budget.min(r - load[u]).min(s - load[v]);
    let mut best = 0;
    for f in 0..=room {
        load[u] += f;
        load[v] += f;
        best = best.max(f + best_total(edges, k + 1, budget - f, r, s, load));
        load[u] -= f;
        load[v] -= f;
    }
    best
}

#[test]
fn findflow_matches_exhaustive_on_small_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x12);
    // Every value is at most 1 and t = 1 always reaches it, so the window
    // must start well above 1 for the comparison to mean anything.
    let config = FindFlowConfig { gamma: Some(0.5), ..Default::default() };
    let mut below_one = 0;
    for case in 0..80 {
        let tc = if case % 2 == 0 { random_total_coloring(&mut rng, 12) } else { leftmost_total_coloring(&mut rng, 12) };
        let (r, s) = [(1, 1), (1, 2), (2, 1)][case % 3];
        let res = findflow(&tc, r, s, &config).unwrap();
        assert_eq!(res.t_range, (6, 12));
        let bounded = findflow_oracle(&tc, r, s, 6, 6);
        assert!(res.value >= bounded, "case {case}: findflow {} < exhaustive {bounded}", res.value);
        assert_eq!(res.value, findflow_oracle(&tc, r, s, 6, u64::MAX), "case {case}");
        assert!(verify_findflow(&tc, r, s, &res).is_empty());
        below_one += usize::from(res.value < Rational64::from_integer(1));
    }
    assert!(below_one >= 10, "only {below_one} instances had a nontrivial optimum");
}

#[test]
fn findflow_output_conditions_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x38);
    for case in 0..100 {
        let n = rng.gen_range(2..60);
        let tc = random_total_coloring(&mut rng, n);
        let (r, s) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let config = FindFlowConfig { gamma: Some(rng.gen_range(0.0..=1.0)), ..Default::default() };
        let res = findflow(&tc, r, s, &config).unwrap();
        assert!(res.t >= res.t_range.0 && res.t <= n);
        // Literal re-check of the three conditions.
        let mut load = vec![0u64; n];
        for &(u, v, f) in &res.h {
            assert!(f > 0);
            assert_eq!(tc.edge_color(u, v), Some(res.color), "case {case}");
            assert_ne!(tc.vertex_color(u), tc.vertex_color(v), "case {case}");
            load[u] += f;
            load[v] += f;
        }
        for v in 0..n {
            assert!(load[v] <= if tc.vertex_color(v) == res.color { r } else { s }, "case {case}, vertex {v}");
        }
        let own = (0..res.t).filter(|&v| tc.vertex_color(v) == res.color).count() as f64;
        let inflow: u64 = (0..res.t).filter(|&v| tc.vertex_color(v) != res.color).map(|v| load[v]).sum();
        let value = own / res.t as f64 + inflow as f64 / (s * res.t as u64) as f64;
        assert!(value >= res.value_f64() - 1e-12, "case {case}: {value} < {}", res.value);
    }
}

proptest! {
    #[test]
    fn degree_profile_interpolates(seed in any::<u64>(), n in 1usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tc = if n == 1 {
            TotalColoring::new(vec![Color::Red], TwoColoring::monochromatic(1, Color::Red), None).unwrap()
        } else {
            random_total_coloring(&mut rng, n)
        };
        let p = ColoredDegreeProfile::new(&tc);
        let reds = tc.vertex_colors().iter().filter(|&&c| c == Color::Red).count();
        prop_assert_eq!(p.degrees.len(), reds);
        prop_assert!(p.degrees.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(p.g.eval(0.0), 0.0);
        for (k, &d) in p.degrees.iter().enumerate() {
            prop_assert_eq!(p.g.eval((k + 1) as f64), d as f64);
        }
        prop_assert_eq!(p.g.eval(reds as f64 + 5.0), p.degrees.last().map_or(0.0, |&d| d as f64));
    }
}
