//! Integer factorization: trial division by the primes below 10⁶, then
//! Miller–Rabin and Pollard–Brent rho on the cofactor.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::OnceLock;

/// Trial division covers primes below this bound.
pub const TRIAL_BOUND: u64 = 1_000_000;

/// Values above `2^128` in absolute value are not factored.
pub const FACTOR_BITS: u64 = 128;

/// Primes up to `n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_BOUND))
}

/// Prime factorization with multiplicity, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factorization {
    Factored(Vec<(BigUint, u32)>),
    /// `|x| > 2^128`.
    Unfactored,
}

impl Factorization {
    /// `ν`: the number of prime factors with multiplicity.
    pub fn nu(&self) -> Option<u32> {
        match self {
            Factorization::Factored(f) => Some(f.iter().map(|(_, e)| e).sum()),
            Factorization::Unfactored => None,
        }
    }
}

/// Factors `|x|`; `x = 0` has no factorization and panics.
pub fn factorize(x: &BigInt) -> Factorization {
    assert!(!x.is_zero(), "0 has no factorization");
    let m = x.magnitude();
    if m.bits() > FACTOR_BITS {
        return Factorization::Unfactored;
    }
    let mut primes: Vec<BigUint> = Vec::new();
    match m.to_u64() {
        Some(v) => primes.extend(factor_u64(v).into_iter().map(BigUint::from)),
        None => {
            let v = m.to_u128().unwrap();
            let (small, rest) = trial_divide_u128(v);
            primes.extend(small.into_iter().map(BigUint::from));
            if rest > 1 {
                let mut big = Vec::new();
                factor_big(BigUint::from(rest), &mut big);
                primes.extend(big);
            }
        }
    }
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Factorization::Factored(out)
}

/// `ν(x)` for `x ≠ 0`; `None` when `x` is too large to factor.
pub fn nu(x: &BigInt) -> Option<u32> {
    factorize(x).nu()
}

pub fn nu_u64(x: u64) -> u32 {
    assert!(x != 0, "ν(0) is undefined");
    factor_u64(x).len() as u32
}

/// The Möbius function.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1);
    let f = factor_u64(n);
    if f.windows(2).any(|w| w[0] == w[1]) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    miller_rabin_u64(n)
}

pub fn is_prime(x: &BigInt) -> bool {
    match x.to_u64() {
        Some(v) => is_prime_u64(v),
        None if x.sign() == num_bigint::Sign::Minus => false,
        None => {
            let m = x.magnitude();
            small_primes()[..64].iter().all(|&p| !(m % p).is_zero()) && miller_rabin_big(m)
        }
    }
}

/// Prime factors of `n` with repetition, ascending.
pub fn factor_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
    }
    if n > 1 {
        if n < TRIAL_BOUND * TRIAL_BOUND || is_prime_u64(n) {
            out.push(n);
        } else {
            rho_split_u64(n, &mut out);
        }
    }
    out.sort_unstable();
    out
}

fn rho_split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent_u64(n);
    rho_split_u64(d, out);
    rho_split_u64(n / d, out);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic for all `u64` with these bases.
fn miller_rabin_u64(n: u64) -> bool {
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'bases: for &a in &[2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of the odd composite `n`, with fixed start values.
fn pollard_brent_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g, mut q) = (2u64, 2u64, 1u64, 1u64);
        let mut r = 1u64;
        let mut ys = 2u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128).min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn trial_divide_u128(mut n: u128) -> (Vec<u64>, u128) {
    let mut out = Vec::new();
    for &p in small_primes() {
        let pp = p as u128;
        if pp * pp > n {
            break;
        }
        while n % pp == 0 {
            out.push(p);
            n /= pp;
        }
    }
    (out, n)
}

/// Miller–Rabin with the first 24 prime bases; exact below `3.3·10^24`.
fn miller_rabin_big(n: &BigUint) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &a in &small_primes()[..24] {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn factor_big(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if let Some(v) = n.to_u64() {
        out.extend(factor_u64(v).into_iter().map(BigUint::from));
        return;
    }
    if miller_rabin_big(&n) {
        out.push(n);
        return;
    }
    let d = pollard_brent_big(&n);
    factor_big(d.clone(), out);
    factor_big(n / d, out);
}

fn pollard_brent_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    for c in 1u64.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut g = one.clone();
        let mut r = 1u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut q = one.clone();
            for _ in 0..r {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            r *= 2;
            if r > 1 << 24 {
                break;
            }
        }
        if !g.is_one() && &g != n {
            return g;
        }
    }
    unreachable!()
}
