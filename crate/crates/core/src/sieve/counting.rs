//! Legendre's inclusion–exclusion count, local densities `β(d)` and the
//! sifted sum `S(f, z)`.

use super::factor::primes_up_to;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

/// Largest `|P(√x)|` [`legendre_count`] accepts.
pub const LEGENDRE_CAP: usize = 25;

/// `π(n)` by a direct sieve.
pub fn prime_pi(n: u64) -> u64 {
    primes_up_to(n).len() as u64
}

/// `−1 + Σ_{S ⊆ P(√x)} (−1)^{|S|} ⌊x / Π_{p∈S} p⌋`, which equals
/// `π(x) − π(√x)`. Subsets whose product exceeds `x` contribute zero and
/// are skipped.
pub fn legendre_count(x: f64) -> Result<i64> {
    if !x.is_finite() || x < 4.0 {
        return Err(Error::invalid(format!("cutoff {x} < 4")));
    }
    let xi = x.floor() as u64;
    let root = xi.isqrt();
    let ps = primes_up_to(root);
    if ps.len() > LEGENDRE_CAP {
        return Err(Error::cap("|P(√x)|", ps.len() as u128, LEGENDRE_CAP as u128));
    }
    fn walk(ps: &[u64], x: u64, prod: u64, sign: i64) -> i64 {
        let mut acc = sign * (x / prod) as i64;
        for (i, &p) in ps.iter().enumerate() {
            match prod.checked_mul(p) {
                Some(q) if q <= x => acc += walk(&ps[i + 1..], x, q, -sign),
                _ => break,
            }
        }
        acc
    }
    Ok(walk(&ps, xi, 1, 1) - 1)
}

/// `β(d) = |{m mod d : f(m) ≡ 0 (mod d)}|` for a one-variable integer
/// polynomial.
pub fn beta(f: &Polynomial, d: u64) -> Result<u64> {
    check_univariate(f)?;
    if d == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    Ok((0..d).filter(|&m| f.eval_mod(m, d) == 0).count() as u64)
}

fn check_univariate(f: &Polynomial) -> Result<()> {
    if f.arity() > 1 {
        return Err(Error::invalid(format!("{f} is not a polynomial in one variable")));
    }
    if !f.has_integer_coefficients() {
        return Err(Error::invalid(format!("{f} has non-integer coefficients")));
    }
    Ok(())
}

/// `S(f, z) = #{1 ≤ n ≤ x : gcd(f(n), P(z)) = 1}` with `P(z)` the product
/// of the primes up to `z`.
pub fn sieve_sum(f: &Polynomial, x: u64, z: u64) -> Result<u64> {
    check_univariate(f)?;
    if z > x {
        return Err(Error::invalid(format!("sieve level {z} exceeds cutoff {x}")));
    }
    let pz: BigInt = primes_up_to(z).into_iter().map(BigInt::from).product();
    let mut count = 0;
    for n in 1..=x {
        let v = f.eval_integer(&[BigInt::from(n)])?;
        if v.gcd(&pz).is_one() {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_count(30.0).unwrap(), 7);
        assert_eq!(legendre_count(4.0).unwrap(), 1);
        assert_eq!(legendre_count(100.0).unwrap(), 21);
        assert_eq!(legendre_count(30.7).unwrap(), 7);
        assert!(legendre_count(3.0).is_err());
        assert!(legendre_count(11_000.0).unwrap_err().is_limit());
    }

    #[test]
    fn legendre_matches_direct_sieve() {
        for x in (4u64..=2000).step_by(7) {
            let direct = prime_pi(x) as i64 - prime_pi(x.isqrt()) as i64;
            assert_eq!(legendre_count(x as f64).unwrap(), direct, "{x}");
        }
    }

    #[test]
    fn beta_examples() {
        let f = Polynomial::parse("x(x+2)").unwrap();
        assert_eq!(beta(&f, 3).unwrap(), 2);
        assert_eq!(beta(&f, 5).unwrap(), 2);
        assert_eq!(beta(&f, 15).unwrap(), 4);
        let x = Polynomial::parse("x").unwrap();
        for d in 1..20 {
            assert_eq!(beta(&x, d).unwrap(), 1);
        }
    }

    #[test]
    fn sieve_sum_examples() {
        let f = Polynomial::parse("x(x+2)").unwrap();
        assert_eq!(sieve_sum(&f, 30, 3).unwrap(), 5);
        assert_eq!(sieve_sum(&f, 30, 1).unwrap(), 30);
        assert!(sieve_sum(&f, 3, 5).is_err());
    }
}
