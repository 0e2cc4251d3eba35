//! Sieve-side arithmetic: prime factor counts, Legendre and Möbius
//! identities, orbit enumeration, and almost-prime counts along orbits.
//!
//! `ν` counts prime factors with multiplicity throughout.

mod counting;
mod factor;
mod orbit;
mod poly;

pub use counting::{beta, legendre_count, prime_pi, sieve_sum, LEGENDRE_CAP};
pub use factor::{
    factor_u64, factorize, is_prime, is_prime_u64, mobius, nu, nu_u64, primes_up_to, Factorization, TRIAL_BOUND,
};
pub use orbit::*;
pub use poly::Polynomial;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Number of witnesses kept in a [`SieveReport`].
pub const WITNESSES: usize = 5;

/// `ν(f(p))` over the points of an orbit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SieveReport {
    pub points: usize,
    /// Points where `f` vanishes; not in the histogram.
    pub zeros: usize,
    /// Values too large to factor; not in the histogram.
    pub unfactored: usize,
    /// `ν` to number of points.
    pub histogram: BTreeMap<u32, usize>,
    /// Least `ν` observed.
    pub r_star: Option<u32>,
    /// The first points, in enumeration order, attaining `r_star`.
    pub witnesses: Vec<Vec<String>>,
    /// `gcd` of all nonzero values of `f`, a fixed divisor diagnostic.
    pub gcd: String,
}

/// Factors `f` at every point. Rejects constant `f` and non-integral
/// values (naming the point).
pub fn saturation_report(points: &[Point], f: &Polynomial) -> Result<SieveReport> {
    if f.is_constant() {
        return Err(Error::invalid(format!("f = {f} is constant")));
    }
    let values: Vec<BigInt> = points.iter().map(|p| f.eval_integer(p)).collect::<Result<_>>()?;
    let nus: Vec<Option<Option<u32>>> =
        values.par_iter().map(|v| if v.is_zero() { None } else { Some(nu(v)) }).collect();
    let mut histogram = BTreeMap::new();
    let (mut zeros, mut unfactored) = (0, 0);
    for n in &nus {
        match n {
            None => zeros += 1,
            Some(None) => unfactored += 1,
            Some(Some(k)) => *histogram.entry(*k).or_insert(0) += 1,
        }
    }
    let r_star = histogram.keys().next().copied();
    let witnesses = points
        .iter()
        .zip(&nus)
        .filter(|(_, n)| r_star.is_some() && **n == Some(r_star))
        .take(WITNESSES)
        .map(|(p, _)| p.iter().map(|x| x.to_string()).collect())
        .collect();
    let gcd = values.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    Ok(SieveReport { points: points.len(), zeros, unfactored, histogram, r_star, witnesses, gcd: gcd.to_string() })
}
