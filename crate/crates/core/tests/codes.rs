use expanders::codes::{
    alon_chung_check, cycle_code, min_distance_exact, tanner_code, EdgeLabeling, LinearCode, MINDIST_CAP,
};
use expanders::constructions::random_regular;
use expanders::{Graph, VertexSet};

#[test]
fn cycle_code_dimension_on_random_regular_graphs() {
    let mut checked = 0;
    for seed in 0..400u64 {
        let k = 3 + (seed % 3) as usize;
        let n = 6 + (seed % 20) as usize;
        let Ok(g) = random_regular(n, k, seed) else { continue };
        if !g.is_connected() {
            continue;
        }
        let c = cycle_code(&g);
        assert_eq!(c.code.dim(), g.edge_count() + 1 - g.n(), "seed {seed}");
        if c.code.dim() <= MINDIST_CAP {
            assert_eq!(min_distance_exact(&c.code).unwrap(), g.girth(), "seed {seed}");
        }
        checked += 1;
        if checked == 100 {
            break;
        }
    }
    assert_eq!(checked, 100);
}

#[test]
fn tanner_codes_meet_the_row_count_bound_and_are_sparse() {
    for seed in 0..40u64 {
        let k = 4 + (seed % 4) as usize;
        let n = 8 + 2 * (seed % 5) as usize;
        let g = random_regular(n, k, seed).unwrap();
        for c0 in [LinearCode::even_weight(k), LinearCode::repetition(k), LinearCode::full(k)] {
            for lab in [EdgeLabeling::by_port(&g), EdgeLabeling::random(&g, seed)] {
                let t = tanner_code(&g, &c0, &lab).unwrap();
                let r0 = c0.dim() as f64 / k as f64;
                let edges = g.edge_count() as f64;
                assert!(t.dim() as f64 >= (2.0 * r0 - 1.0) * edges - 1e-9, "seed {seed}");
                assert!(t.parity_check().rows().iter().all(|row| row.weight() <= k));
            }
        }
    }
}

#[test]
fn alon_chung_holds_on_every_subset_of_small_graphs() {
    for (i, g) in [Graph::petersen(), Graph::complete(6), Graph::cycle(9), random_regular(12, 3, 5).unwrap()]
        .iter()
        .enumerate()
    {
        for mask in 0u64..1 << g.n() {
            let r = alon_chung_check(g, &VertexSet::from_mask(g.n(), mask)).unwrap();
            assert!(r.ok, "graph {i}, mask {mask:b}: {r:?}");
        }
    }
}
