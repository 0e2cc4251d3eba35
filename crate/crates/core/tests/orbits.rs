use expanders::group::ZMatrix;
use expanders::sieve::{
    apollonian_generators, apollonian_orbit, content, descartes_gram, fibonacci_preset, nu, orbit_ball, pell_preset,
    preserves_form, pythagorean_bootstrap_search, pythagorean_generators, pythagorean_gram, pythagorean_orbit,
};
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn every_generator_preserves_its_form() {
    for s in apollonian_generators() {
        assert!(preserves_form(&s, &descartes_gram()));
    }
    for m in pythagorean_generators() {
        assert!(preserves_form(&m, &pythagorean_gram()));
    }
    let pell_form = ZMatrix::from_rows(2, &[4, 0, 0, -3]);
    for m in pell_preset().0 {
        assert!(preserves_form(&m, &pell_form));
    }
    // twice the Gram matrix of x² − 3xy + y²
    let fib_form = ZMatrix::from_rows(2, &[2, -3, -3, 2]);
    for m in fibonacci_preset().0 {
        assert!(preserves_form(&m, &fib_form));
    }
}

#[test]
fn bootstrap_search_recovers_the_frozen_generators() {
    let mut frozen = pythagorean_generators().to_vec();
    frozen.sort_by_key(|m| m.entries().to_vec());
    assert_eq!(pythagorean_bootstrap_search(), frozen);
}

#[test]
fn pythagorean_orbit_is_primitive_and_on_the_cone() {
    let ball = pythagorean_orbit(6);
    assert_eq!(ball.points.len(), (3usize.pow(7) - 1) / 2);
    for p in &ball.points {
        assert_eq!(&p[0] * &p[0] + &p[1] * &p[1], &p[2] * &p[2]);
        assert!(content(p).is_one());
        assert!(p.iter().all(|x| x > &BigInt::from(0)));
    }
}

#[test]
fn apollonian_and_pell_orbits_stay_on_their_quadrics() {
    for root in [[18, 23, 27, 146], [-1, 2, 2, 3], [0, 0, 1, 1]] {
        let orbit = apollonian_orbit(root, 6).unwrap();
        for q in &orbit.quadruples {
            let s: i128 = q.iter().sum();
            let sq: i128 = q.iter().map(|a| a * a).sum();
            assert_eq!(2 * sq, s * s, "{q:?}");
        }
    }
    let (gens, base) = pell_preset();
    for p in orbit_ball(&gens, &base, 20).unwrap().points {
        assert_eq!(BigInt::from(4) * &p[0] * &p[0] - BigInt::from(3) * &p[1] * &p[1], BigInt::from(1));
    }
}

#[test]
fn nu_is_completely_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let a = BigInt::from(rng.random_range(1u64..1 << 40));
        let b = BigInt::from(rng.random_range(1u64..1 << 40));
        assert_eq!(nu(&(&a * &b)).unwrap(), nu(&a).unwrap() + nu(&b).unwrap());
    }
}
