use expanders::graph::components;
use expanders::group::{
    cayley_graph, close_group, m_power_set, schreier_graph, triple_product_growth, Cyclic, GenSet, GroupElement,
    GroupTable, ModMatrix, Perm,
};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

fn sym(n: usize) -> GroupTable<Perm> {
    let shift: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    close_group(&[Perm::from_cycles(n, &[&[0, 1]]), Perm::from_images(shift)]).unwrap()
}

fn sl2(p: u64) -> GroupTable<ModMatrix> {
    close_group(&[ModMatrix::new(2, p, &[1, 1, 0, 1]), ModMatrix::new(2, p, &[1, 0, 1, 1])]).unwrap()
}

fn cyclic(n: u64) -> GroupTable<Cyclic> {
    close_group(&[Cyclic::new(n, 1)]).unwrap()
}

/// A random symmetric generating list of one to three elements.
fn random_sigma<E: GroupElement>(tbl: &GroupTable<E>, rng: &mut ChaCha8Rng) -> GenSet<E> {
    let count = rng.random_range(1..=3);
    let picks: Vec<E> = (0..count).map(|_| tbl.elements().choose(rng).unwrap().clone()).collect();
    GenSet::symmetrize(picks)
}

fn check_transitive<E: GroupElement>(tbl: &GroupTable<E>, sigma: &GenSet<E>) {
    let g = cayley_graph(tbl, sigma).unwrap();
    g.check_involution().unwrap();
    let comps = components(&g);
    assert_eq!(comps.len() == 1, tbl.generates(&tbl.indices_of(sigma.elements()).unwrap()));
    if comps.len() == 1 {
        let ecc = g.eccentricities().unwrap();
        assert!(ecc.iter().all(|&e| e == ecc[0]), "{sigma:?}");
    } else {
        // the components are the cosets of ⟨Σ⟩
        assert!(comps.iter().all(|c| c.len() == comps[0].len()));
        assert_eq!(comps.len() * comps[0].len(), tbl.order());
    }
}

#[test]
fn cayley_graphs_are_vertex_transitive() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (s3, s4, sl3, sl5, c12, c30) = (sym(3), sym(4), sl2(3), sl2(5), cyclic(12), cyclic(30));
    for i in 0..200 {
        match i % 6 {
            0 => check_transitive(&s3, &random_sigma(&s3, &mut rng)),
            1 => check_transitive(&s4, &random_sigma(&s4, &mut rng)),
            2 => check_transitive(&sl3, &random_sigma(&sl3, &mut rng)),
            3 => check_transitive(&sl5, &random_sigma(&sl5, &mut rng)),
            4 => check_transitive(&c12, &random_sigma(&c12, &mut rng)),
            _ => check_transitive(&c30, &random_sigma(&c30, &mut rng)),
        }
    }
}

#[test]
fn triple_products_are_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for tbl in [sl2(5), sl2(7)] {
        let n = tbl.order();
        for _ in 0..30 {
            let size = rng.random_range(1..12);
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(&mut rng);
            let a = &idx[..size];
            let t = triple_product_growth(&tbl, a).unwrap();
            assert!(t.a <= t.aaa && t.aaa <= n.min(t.a.pow(3)), "{t:?}");
        }
    }
}

#[test]
fn power_sets_are_closed_under_conjugation() {
    for tbl in [sl2(5), sl2(7)] {
        for m in 2..=6 {
            let z: HashSet<usize> = m_power_set(&tbl, m).into_iter().collect();
            for &x in &z {
                for g in 0..tbl.order() {
                    let c = tbl.mul(tbl.mul(g, x), tbl.inv(g));
                    assert!(z.contains(&c));
                }
            }
        }
    }
    let s4 = sym(4);
    let squares: HashSet<usize> = m_power_set(&s4, 2).into_iter().collect();
    // squares in Sym(4): the identity, 3-cycles and double transpositions
    assert_eq!(squares.len(), 1 + 8 + 3);
}

#[test]
fn regular_action_schreier_graph_is_the_cayley_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let tbl = sym(4);
    for _ in 0..20 {
        let sigma = random_sigma(&tbl, &mut rng);
        let s = schreier_graph(tbl.elements(), &sigma, |a, x| a.op(x)).unwrap();
        assert_eq!(s, cayley_graph(&tbl, &sigma).unwrap());
    }
}
