use bsteiner_core::decision::decide;
use bsteiner_core::oracle::candidate_values;
use bsteiner_core::testkit::{
    gen_maxgap_instance, gen_membership_instance, gen_random_instance, verify_membership, Perturbation,
};
use bsteiner_core::{
    binary_search_threshold, brute_force_optimum, compare_to_optimal, preprocess, solve, squared_distance,
    yao_bruteforce, Point, Point64, SquaredLength,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_sets(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> (Vec<Point64>, Vec<Point64>) {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(1..=max_m);
    let inst = gen_random_instance(n, m, 10.0, rng.gen()).unwrap();
    inst.into_parts()
}

#[test]
fn solver_matches_oracle_and_sandwich_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for _ in 0..150 {
        let (p, s) = random_sets(&mut rng, 15, 15);
        let (oracle, witness) = brute_force_optimum(&p, &s).unwrap();
        witness.validate(&p, &s).unwrap();
        let ctx = preprocess(p.clone(), s.clone()).unwrap();
        let report = solve(p.clone(), s.clone()).unwrap();
        assert_eq!(report.lambda_star, oracle);
        report.tree.validate(&p, &s).unwrap();

        let l = report.threshold_index;
        assert_eq!(l, binary_search_threshold(&ctx));
        assert!(ctx.threshold(l - 1) <= oracle && oracle < ctx.threshold(l));
        for e in &report.tree.skeleton_edges {
            assert!(e.w <= oracle);
        }
    }
}

#[test]
fn threshold_test_directions_and_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..60 {
        let (p, s) = random_sets(&mut rng, 10, 12);
        let (oracle, _) = brute_force_optimum(&p, &s).unwrap();
        let ctx = preprocess(p.clone(), s.clone()).unwrap();
        let mut was_nonempty = false;
        for lambda in candidate_values(&p, &s).into_iter().filter(|c| c.value() > 0.0) {
            let (labeling, j) = decide(&ctx, lambda).unwrap();
            assert!(j.len() <= 6);
            // Non-empty exactly above the optimum.
            assert_eq!(!j.is_empty(), oracle < lambda);
            // Once non-empty, it stays non-empty.
            assert!(!was_nonempty || !j.is_empty());
            was_nonempty |= !j.is_empty();

            if oracle < lambda {
                // Some candidate component carries a tree whose external edges are ≤ λ*.
                let good = j.iter().any(|c| {
                    let tree = bsteiner_core::build_tree_for_component(&ctx, &labeling, c, lambda).unwrap();
                    tree.validate(&p, &s).is_ok() && tree.external_edges.iter().all(|a| a.w <= oracle)
                });
                assert!(good);
            }
        }
    }
}

#[test]
fn bounds_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..100 {
        let (p, s) = random_sets(&mut rng, 30, 30);
        let report = solve(p.clone(), s.clone()).unwrap();
        let ctx = preprocess(p.clone(), s.clone()).unwrap();
        let attach = p
            .iter()
            .map(|&q| {
                s.iter()
                    .map(|&t| squared_distance(q, t))
                    .fold(SquaredLength::infinity(), |a, b| if b < a { b } else { a })
            })
            .fold(SquaredLength::zero(), |a, b| if b > a { b } else { a });
        let longest_mst = ctx.emst().edges().last().map_or(SquaredLength::zero(), |e| e.w);
        let upper = if longest_mst > attach { longest_mst } else { attach };
        assert!(attach <= report.lambda_star && report.lambda_star <= upper);
    }
}

#[test]
fn reports_are_deterministic() {
    let inst = gen_random_instance::<f64>(200, 300, 50.0, 5).unwrap();
    let (p, s) = inst.into_parts();
    let mut a = solve(p.clone(), s.clone()).unwrap();
    let mut b = solve(p, s).unwrap();
    a.timings = Default::default();
    b.timings = Default::default();
    assert_eq!(a, b);
}

#[test]
fn collinear_instance() {
    let p = vec![Point::new(-1.0, 0.0), Point::new(3.0, 0.0)];
    let s = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(2.0, 0.0)];
    let ctx = preprocess(p.clone(), s.clone()).unwrap();
    assert_eq!(binary_search_threshold(&ctx), 2);
    assert!(compare_to_optimal(&ctx, SquaredLength::new(1.0)).unwrap().is_empty());
    assert_eq!(brute_force_optimum(&p, &s).unwrap().0.value(), 1.0);
    assert_eq!(solve(p, s).unwrap().lambda_star.value(), 1.0);
}

#[test]
fn maxgap_instance_small() {
    let inst = gen_maxgap_instance(&[0.0, 1.0, 5.0, 6.0], 4, 3).unwrap();
    let (p, s) = (inst.instance.terminals(), inst.instance.steiner());
    let report = solve(p.to_vec(), s.to_vec()).unwrap();
    assert_eq!(report.lambda_star.value(), 16.0);
    assert_eq!(report.lambda_star.length(), inst.expected);
    assert_eq!(brute_force_optimum(p, s).unwrap().0.value(), 16.0);

    let ctx = preprocess(p.to_vec(), s.to_vec()).unwrap();
    let l = binary_search_threshold(&ctx);
    assert!(ctx.threshold(l - 1).value() <= 16.0 && 16.0 < ctx.threshold(l).value());

    // Each terminal's cone edges include the nearest extreme candidate.
    let yao = yao_bruteforce(p, s).unwrap();
    for (t, q) in p.iter().enumerate() {
        let nearest_extreme = if q.x < 0.0 { 0 } else { 3 };
        assert!(yao.edges_of(t).iter().any(|e| e.steiner == nearest_extreme));
    }
}

#[test]
fn maxgap_random_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..20 {
        let values: Vec<f64> = (0..100).map(|_| rng.gen_range(-50.0..50.0)).collect();
        let inst = gen_maxgap_instance(&values, 10, rng.gen()).unwrap();
        let (p, s) = inst.instance.clone().into_parts();
        let got = solve(p, s).unwrap().lambda_star.length();
        assert!((got - inst.expected).abs() <= 1e-9 * inst.expected);
        assert!(inst.expected >= inst.g);
    }
}

#[test]
fn membership_instances() {
    let inst = gen_membership_instance::<f64>(&[1, 3], 3, None).unwrap();
    let (p, s) = inst.instance.clone().into_parts();
    let report = solve(p.clone(), s.clone()).unwrap();
    assert_eq!(report.tree.external_edges[2].steiner, 0);
    assert_eq!(report.tree.external_edges[3].steiner, 2);
    assert_eq!(brute_force_optimum(&p, &s).unwrap().0, report.lambda_star);
    assert!(verify_membership(&report.tree, &inst).unwrap());

    let pert = Perturbation {
        terminal: 1,
        to: Point::new(1.5, 1.0),
    };
    let inst = gen_membership_instance(&[1, 3], 3, Some(pert)).unwrap();
    let (p, s) = inst.instance.clone().into_parts();
    let report = solve(p, s).unwrap();
    assert!(!verify_membership(&report.tree, &inst).unwrap());

    let anchors = gen_membership_instance::<f64>(&[], 1, None).unwrap();
    let (p, s) = anchors.instance.clone().into_parts();
    let report = solve(p, s).unwrap();
    assert!(verify_membership(&report.tree, &anchors).unwrap());

    // A tree for a different instance is rejected.
    assert!(verify_membership(&report.tree, &inst).is_err());
}

#[test]
fn preprocess_yao_matches_bruteforce_at_scale() {
    let inst = gen_random_instance::<f64>(500, 500, 100.0, 104).unwrap();
    let (p, s) = inst.into_parts();
    let ctx = preprocess(p.clone(), s.clone()).unwrap();
    assert_eq!(ctx.yao(), &yao_bruteforce(&p, &s).unwrap());
}
