use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdl_core::colorings::{a_good_shading, Color, TwoColoring};
use rdl_core::embedder::*;
use rdl_core::graphs::{FiniteGraph, VertexSet};

fn random_config(rng: &mut ChaCha8Rng, seed: u64) -> PlantedConfig {
    PlantedConfig {
        r: rng.gen_range(1..=3),
        s: rng.gen_range(1..=3),
        pieces: rng.gen_range(0..=8),
        reservoir: rng.gen_range(5..=60),
        blue_pool: rng.gen_range(0..=15),
        decoys: rng.gen_range(0..=6),
        shades: rng.gen_range(1..=2),
        cross_red: rng.gen_range(0.0..=0.5),
        copies: rng.gen_range(1..=25),
        seed,
    }
}

#[test]
fn planted_runs_pass_verification() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe1);
    let (mut complete, mut with_t, mut absorbed) = (0, 0, 0);
    for seed in 0..1000u64 {
        let cfg = random_config(&mut rng, seed);
        let inst = planted_instance(&cfg).unwrap();
        assert!(inst.w.violations(&inst.chi, &inst.sh).is_empty(), "seed {seed}");
        let budget = if seed % 10 == 0 { rng.gen_range(0..20) } else { usize::MAX };
        let st = embed(&inst.chi, &inst.sh, &inst.w, &inst.spec, budget).unwrap();
        let rep = verify_embedding(&st, &inst.chi, &inst.sh, &inst.spec, &inst.w);
        assert!(rep.passed(), "seed {seed}, {cfg:?}: {:?}", rep.failures);
        // Slack inequality, recomputed from the report's parts.
        assert!(rep.image_density >= rep.w_density - rep.slack, "seed {seed}");
        let delta = inst.spec.max_degree();
        for &t in &st.t_sizes {
            assert!(t as u128 <= t_set_bound(delta, 2));
            if delta >= 2 {
                assert!(t <= delta * delta, "seed {seed}: |T| = {t}, Δ = {delta}");
            }
        }
        complete += usize::from(st.is_complete());
        with_t += usize::from(!st.t_sizes.is_empty());
        absorbed += st.consumed.len();
    }
    assert!(complete >= 300, "only {complete} complete runs");
    assert!(with_t >= 50, "only {with_t} runs used T-sets");
    assert!(absorbed >= 1000, "only {absorbed} W components absorbed");
}

#[test]
fn single_shade_planted_pieces_are_absorbed() {
    // One red shade, no stray red R1–B1 edges and enough copies (vertex-image
    // steps claim at most one component per absorbed piece): every planted
    // piece is found by the W builder and lands in the image.
    let mut rng = ChaCha8Rng::seed_from_u64(0xe2);
    for seed in 0..100u64 {
        let (r, s) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let pieces = rng.gen_range(1..=6);
        let cfg = PlantedConfig { r, s, pieces, reservoir: 3 * pieces * (r + s), blue_pool: 0, decoys: 4, shades: 1, cross_red: 0.0, copies: 2 * pieces + 1, seed };
        let inst = planted_instance(&cfg).unwrap();
        assert_eq!(inst.w.num_pieces(), pieces, "seed {seed}");
        let st = embed(&inst.chi, &inst.sh, &inst.w, &inst.spec, usize::MAX).unwrap();
        assert!(st.is_complete(), "seed {seed}: {:?}", st.status);
        let img = st.image();
        for (x, y) in &inst.planted {
            assert!(x.iter().chain(y).all(|v| img.binary_search(v).is_ok()), "seed {seed}");
        }
        assert!(verify_embedding(&st, &inst.chi, &inst.sh, &inst.spec, &inst.w).passed());
    }
}

#[test]
fn all_red_host_gives_density_one_for_any_prefix() {
    let chi = TwoColoring::monochromatic(60, Color::Red);
    let sh = a_good_shading(&chi, 2, Rational64::new(1, 4), 2).unwrap();
    let w = build_w(&chi, &sh, 1, 1).unwrap();
    for copies in 1..=30 {
        let spec = HPrefixSpec::omega_factor(FiniteGraph::complete(2), copies, 2, vec![2, 1], VertexSet::new(vec![1])).unwrap();
        let st = embed(&chi, &sh, &w, &spec, usize::MAX).unwrap();
        assert!(st.is_complete());
        let rep = verify_embedding(&st, &chi, &sh, &spec, &w);
        assert!(rep.passed());
        assert_eq!(rep.image_density, Rational64::from_integer(1));
    }
}
