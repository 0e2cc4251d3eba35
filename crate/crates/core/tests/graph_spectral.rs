use expanders::constructions::random_regular;
use expanders::graph::{bipartition, cheeger_exact, components};
use expanders::spectral::{
    cheeger_bounds, connectivity_tests, mixing_profile, spectrum, spectrum_dense, spectrum_extremes, LanczosOptions, TOL,
};
use expanders::Graph;
use proptest::prelude::*;

fn shape(seed: u64, max_n: usize) -> (usize, usize) {
    let k = 2 + (seed % 4) as usize;
    let n = 4 + (seed * 31 % (max_n as u64 - 3)) as usize;
    (n - (n * k) % 2, k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotation_is_an_involution_and_rows_sum_to_k(seed in 0u64..10_000) {
        let (n, k) = shape(seed, 64);
        let g = random_regular(n, k, seed).unwrap();
        prop_assert!(g.check_involution().is_ok());
        let a = g.adjacency_matrix();
        for r in 0..n {
            prop_assert_eq!(a.row(r).sum(), k as i64);
        }
    }

    #[test]
    fn square_is_the_matrix_square(seed in 0u64..10_000) {
        let (n, k) = shape(seed, 64);
        let g = random_regular(n, k, seed).unwrap();
        let a = g.adjacency_matrix();
        prop_assert_eq!(g.square().adjacency_matrix(), &a * &a);
    }
}

#[test]
fn girth_is_at_most_twice_log_n() {
    for seed in 0..300 {
        let (n, k) = shape(seed, 200);
        if k < 3 {
            continue;
        }
        let g = random_regular(n, k, seed).unwrap();
        if let Some(girth) = g.girth() {
            let bound = 2.0 * (n as f64).ln() / ((k - 1) as f64).ln();
            assert!(girth as f64 <= bound, "n={n} k={k} girth={girth}");
        }
    }
    assert_eq!(Graph::petersen().girth(), Some(5));
}

#[test]
fn cheeger_bracket_holds_below_the_exact_cap() {
    for seed in 0..60 {
        let (n, k) = shape(seed, 20);
        let g = random_regular(n, k, seed).unwrap();
        let h = cheeger_exact(&g).unwrap().value;
        let h = *h.numer() as f64 / *h.denom() as f64;
        let (lo, hi) = cheeger_bounds(&spectrum(&g).unwrap());
        assert!(lo <= h + TOL && h <= hi + TOL, "seed {seed}: {lo} ≤ {h} ≤ {hi}");
    }
}

#[test]
fn mixing_distance_never_increases() {
    let mut checked = 0;
    for seed in 0..80 {
        let (n, k) = shape(seed, 120);
        let g = random_regular(n, k, seed).unwrap();
        if !g.is_connected() || bipartition(&g).is_some() {
            continue;
        }
        let mut mu0 = vec![0.0; n];
        mu0[seed as usize % n] = 1.0;
        let prof = mixing_profile(&g, &mu0, 40).unwrap();
        assert!(prof.distances.windows(2).all(|w| w[1] <= w[0] + TOL), "seed {seed}");
        assert_eq!(prof.first_violation(TOL), None);
        checked += 1;
    }
    assert!(checked > 20);
}

#[test]
fn top_eigenvalue_is_k() {
    for seed in 0..100 {
        let (n, k) = shape(seed, 64);
        let g = random_regular(n, k, seed).unwrap();
        assert!((spectrum(&g).unwrap().lambda0() - k as f64).abs() < TOL);
    }
}

#[test]
fn connectivity_tests_agree_with_search() {
    for seed in 0..500u64 {
        let (n, k) = shape(seed, 32);
        let mut g = random_regular(n, k, seed).unwrap();
        if seed % 3 == 0 {
            g = g.disjoint_union(&random_regular(n, k, seed + 1).unwrap()).unwrap();
        }
        let (connected, bipartite) = connectivity_tests(&spectrum(&g).unwrap());
        let bfs_connected = components(&g).len() == 1;
        assert_eq!(connected, bfs_connected, "seed {seed}");
        if bfs_connected {
            assert_eq!(bipartite, bipartition(&g).is_some(), "seed {seed}");
        }
    }
}

#[test]
fn dense_and_lanczos_agree_on_extremes() {
    for seed in 0..20 {
        let k = 3 + (seed % 3) as usize;
        let n = 40 + 2 * (seed as usize * 37 % 180);
        let g = random_regular(n, k, seed).unwrap();
        let dense = spectrum_dense(&g);
        let ex = spectrum_extremes(&g, &LanczosOptions::default()).unwrap();
        assert!((ex.lambda0() - dense.lambda0()).abs() < 10.0 * TOL, "seed {seed}");
        assert!((ex.lambda1() - dense.lambda1()).abs() < 10.0 * TOL, "seed {seed}");
        assert!((ex.lambda_min() - dense.lambda_min()).abs() < 10.0 * TOL, "seed {seed}");
    }
}
