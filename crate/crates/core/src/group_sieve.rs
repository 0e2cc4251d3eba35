//! Random walks on finitely generated subgroups of `SL_d(Z)`: how often the
//! walk lands in a "bad" set, and how characteristic polynomials factor
//! modulo primes.
//!
//! A walk draws generators uniformly and independently and multiplies on the
//! right, `w_k = s_1 s_2 ⋯ s_k`. Trial `t` uses a ChaCha8 stream seeded with
//! `seed + t`, so the integer walk and its reduction mod `p` see the same
//! generator sequence.

use crate::error::{Error, Result};
use crate::group::{GroupElement, ModMatrix, Perm, ZMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, StudentsT};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

/// Integer walks stop once an entry exceeds this many bits.
pub const WALK_MAGNITUDE_BITS: u64 = 4096;
/// Default right end of the tail window for the decay fit.
pub const TAIL_KMAX: usize = 60;
/// Two-sided 95% normal quantile.
pub const WILSON_Z: f64 = 1.959_963_984_540_054;
/// Largest quotient group explored for exact fractions and bipartiteness.
pub const QUOTIENT_CAP: usize = 2_000_000;
/// Minimum samples and primes for a Galois verdict.
pub const MIN_SAMPLES: usize = 200;
pub const MIN_PRIMES: usize = 20;
/// Significance level of the chi-square test in [`generic_galois_verdict`].
pub const VERDICT_ALPHA: f64 = 0.01;

/// Walk parameters. The generator list must be inverse-closed.
#[derive(Clone, Debug)]
pub struct WalkConfig {
    pub gens: Vec<ZMatrix>,
    pub steps: usize,
    pub trials: usize,
    pub seed: u64,
    pub magnitude_bits: u64,
}

impl WalkConfig {
    /// Checks that the generators are square of one size, have determinant
    /// 1 and are closed under inversion.
    pub fn new(gens: Vec<ZMatrix>, steps: usize, trials: usize, seed: u64) -> Result<Self> {
        let first = gens.first().ok_or_else(|| Error::invalid("no generators"))?;
        let d = first.dim();
        for g in &gens {
            if g.dim() != d {
                return Err(Error::Mismatch { expected: d, found: g.dim() });
            }
            if g.det() != BigInt::from(1) {
                return Err(Error::invalid(format!("{g:?} does not have determinant 1")));
            }
        }
        for g in &gens {
            let inv = g.inverse_unimodular().expect("determinant 1");
            if !gens.contains(&inv) {
                return Err(Error::invalid(format!("inverse of {g:?} is missing")));
            }
        }
        Ok(WalkConfig { gens, steps, trials, seed, magnitude_bits: WALK_MAGNITUDE_BITS })
    }

    pub fn dim(&self) -> usize {
        self.gens[0].dim()
    }
}

/// `E_ij(±1)` for all `i ≠ j`, each followed by its inverse: the elementary
/// generators of `SL_d(Z)`.
pub fn elementary_generators(d: usize) -> Vec<ZMatrix> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            for s in [1i64, -1] {
                let mut e = vec![0i64; d * d];
                for l in 0..d {
                    e[l * d + l] = 1;
                }
                e[i * d + j] = s;
                out.push(ZMatrix::from_rows(d, &e));
            }
        }
    }
    out
}

/// `w_0 = I, w_1, …` for one trial.
#[derive(Clone, Debug)]
pub struct Walk {
    pub trial: usize,
    pub matrices: Vec<ZMatrix>,
    /// The walk stopped early at the magnitude cap.
    pub truncated: bool,
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64))
}

/// Runs one integer walk, calling `visit(k, w_k)` for `k = 0..=steps`.
/// Returns whether the walk was truncated.
fn run_walk(cfg: &WalkConfig, trial: usize, mut visit: impl FnMut(usize, &ZMatrix)) -> bool {
    let mut rng = trial_rng(cfg.seed, trial);
    let mut w = ZMatrix::identity(cfg.dim());
    visit(0, &w);
    for k in 1..=cfg.steps {
        let s = &cfg.gens[rng.random_range(0..cfg.gens.len())];
        w = w.mul(s);
        if w.max_abs().bits() > cfg.magnitude_bits {
            return true;
        }
        visit(k, &w);
    }
    false
}

/// All `trials` walks with every intermediate product.
pub fn walk_samples(cfg: &WalkConfig) -> Vec<Walk> {
    (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut matrices = Vec::with_capacity(cfg.steps + 1);
            let truncated = run_walk(cfg, trial, |_, w| matrices.push(w.clone()));
            Walk { trial, matrices, truncated }
        })
        .collect()
}

/// `w_steps` for each trial, `None` when truncated.
pub fn final_samples(cfg: &WalkConfig) -> Vec<Option<ZMatrix>> {
    (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut last = None;
            let truncated = run_walk(cfg, trial, |k, w| {
                if k == cfg.steps {
                    last = Some(w.clone());
                }
            });
            if truncated {
                None
            } else {
                last
            }
        })
        .collect()
}

/// Which images mod `p` count as hits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    Always,
    /// The characteristic polynomial has a repeated root mod `p`; for
    /// `SL_2` this is `trace ≡ ±2`.
    Disc,
    /// The image is an `m`-th power in the group generated mod `p`.
    /// A miss certifies that the integer matrix is not an `m`-th power in
    /// the integer group; a hit certifies nothing.
    Power(u64),
    /// The image lies in a fixed set.
    Subset(Vec<ModMatrix>),
}

impl Predicate {
    /// `always`, `disc` or `power:m`. Subsets come from a file and are
    /// built by the caller.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "always" => Ok(Predicate::Always),
            "disc" => Ok(Predicate::Disc),
            _ => match s.strip_prefix("power:") {
                Some(m) => match m.parse::<u64>() {
                    Ok(m) if m >= 2 => Ok(Predicate::Power(m)),
                    _ => Err(Error::invalid(format!("bad power exponent {m:?}"))),
                },
                None => Err(Error::invalid(format!("unknown predicate {s:?}"))),
            },
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Always => write!(f, "always"),
            Predicate::Disc => write!(f, "disc"),
            Predicate::Power(m) => write!(f, "power:{m}"),
            Predicate::Subset(s) => write!(f, "subset[{}]", s.len()),
        }
    }
}

/// The group generated by the reduced generators, in BFS order, and
/// whether its Cayley graph is bipartite.
pub struct Quotient {
    pub p: u64,
    pub gens: Vec<ModMatrix>,
    pub elements: Vec<ModMatrix>,
    pub bipartite: bool,
}

/// Enumerates `⟨Σ mod p⟩`, two-colouring the Cayley graph on the way.
pub fn quotient(gens: &[ZMatrix], p: u64, cap: usize) -> Result<Quotient> {
    check_prime_modulus(p)?;
    let gens: Vec<ModMatrix> = gens.iter().map(|g| g.reduce(p)).collect();
    let d = gens[0].dim();
    let mut colour: HashMap<ModMatrix, bool> = HashMap::new();
    let id = ModMatrix::identity(d, p);
    colour.insert(id.clone(), false);
    let mut elements = vec![id];
    let mut bipartite = true;
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        let c = colour[&x];
        head += 1;
        for s in &gens {
            let y = x.op(s);
            match colour.get(&y) {
                Some(&cy) => bipartite &= cy != c,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::cap("quotient group order", elements.len() as u128 + 1, cap as u128));
                    }
                    colour.insert(y.clone(), !c);
                    elements.push(y);
                }
            }
        }
    }
    Ok(Quotient { p, gens, elements, bipartite })
}

fn check_prime_modulus(p: u64) -> Result<()> {
    if !crate::sieve::is_prime_u64(p) {
        return Err(Error::invalid(format!("modulus {p} is not prime")));
    }
    Ok(())
}

/// A predicate specialised to one prime.
enum Test {
    Always,
    Disc,
    Set(HashSet<ModMatrix>),
}

impl Test {
    fn hit(&self, x: &ModMatrix) -> bool {
        match self {
            Test::Always => true,
            Test::Disc => has_repeated_root(x),
            Test::Set(s) => s.contains(x),
        }
    }
}

fn prepare(pred: &Predicate, q: Option<&Quotient>, gens: &[ZMatrix], p: u64) -> Result<Test> {
    Ok(match pred {
        Predicate::Always => Test::Always,
        Predicate::Disc => Test::Disc,
        Predicate::Subset(s) => {
            if let Some(bad) = s.iter().find(|x| x.modulus() != p || x.dim() != gens[0].dim()) {
                return Err(Error::invalid(format!("{bad:?} is not a matrix mod {p} of the walk's size")));
            }
            Test::Set(s.iter().cloned().collect())
        }
        Predicate::Power(m) => {
            let owned;
            let q = match q {
                Some(q) => q,
                None => {
                    owned = quotient(gens, p, QUOTIENT_CAP)?;
                    &owned
                }
            };
            Test::Set(q.elements.par_iter().map(|g| g.pow(*m)).collect::<Vec<_>>().into_iter().collect())
        }
    })
}

fn has_repeated_root(x: &ModMatrix) -> bool {
    let p = x.modulus();
    if x.dim() == 2 {
        let (t, det) = (x.trace() as u128, x.det() as u128);
        let p = p as u128;
        return (t * t % p + 4 * (p - det)) % p == 0;
    }
    !fp::is_squarefree(&x.charpoly(), p)
}

/// `hits / n` with its Wilson score interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rate {
    pub hits: usize,
    pub n: usize,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Rate {
    pub fn wilson(hits: usize, n: usize) -> Rate {
        assert!(n > 0 && hits <= n);
        let (h, nf) = (hits as f64, n as f64);
        let p = h / nf;
        let z2 = WILSON_Z * WILSON_Z;
        let denom = 1.0 + z2 / nf;
        let centre = (p + z2 / (2.0 * nf)) / denom;
        let half = WILSON_Z / denom * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt();
        Rate { hits, n, p_hat: p, ci_low: (centre - half).max(0.0), ci_high: (centre + half).min(1.0) }
    }

    pub fn half_width(&self) -> f64 {
        (self.ci_high - self.ci_low) / 2.0
    }
}

/// Least-squares fit of `ln p_k = ln c − α k` over a tail window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    pub window: (usize, usize),
    /// Steps in the window with `p_k > 0`.
    pub points: usize,
    pub c: f64,
    pub alpha: f64,
    /// 95% interval from the t distribution with `points − 2` degrees of
    /// freedom.
    pub alpha_ci: (f64, f64),
    pub r_squared: f64,
    /// Every `p_k` in the window was zero (or too few were positive).
    /// `alpha` is then the lower bound `ln(trials) / window.0`, which holds
    /// when `c ≤ 1`.
    pub lower_bound_only: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub modulus: u64,
    pub predicate: String,
    /// Whether the quotient Cayley graph is bipartite; `None` if the
    /// quotient was too large to explore.
    pub bipartite: Option<bool>,
    pub lazy: bool,
    /// `rates[k]` for `k = 0..=steps`.
    pub rates: Vec<Rate>,
    pub fit: TailFit,
}

impl DecayFit {
    /// The rate at the last step.
    pub fn limit(&self) -> Rate {
        *self.rates.last().expect("at least step 0")
    }
}

/// [`hit_probability_with`] with the tail window ending at
/// `min(steps, 60)`.
pub fn hit_probability(cfg: &WalkConfig, pred: &Predicate, p: u64) -> Result<DecayFit> {
    hit_probability_with(cfg, pred, p, cfg.steps.min(TAIL_KMAX))
}

/// Empirical `P(w_k mod p ∈ Z)` for every step, fitted over
/// `[kmax/2, kmax]`.
///
/// The walk runs on the reduced generators, which gives the same images as
/// reducing the integer walk. When the quotient Cayley graph is bipartite the
/// walk is made lazy (stay put with probability 1/2).
pub fn hit_probability_with(cfg: &WalkConfig, pred: &Predicate, p: u64, kmax: usize) -> Result<DecayFit> {
    check_prime_modulus(p)?;
    if cfg.trials == 0 {
        return Err(Error::invalid("no trials"));
    }
    if kmax > cfg.steps || kmax < 2 {
        return Err(Error::invalid(format!("fit window end {kmax} outside 2..={}", cfg.steps)));
    }
    let q = match quotient(&cfg.gens, p, QUOTIENT_CAP) {
        Ok(q) => Some(q),
        Err(e) if e.is_limit() => None,
        Err(e) => return Err(e),
    };
    let test = prepare(pred, q.as_ref(), &cfg.gens, p)?;
    let bipartite = q.as_ref().map(|q| q.bipartite);
    let lazy = bipartite == Some(true);
    let gens: Vec<ModMatrix> = cfg.gens.iter().map(|g| g.reduce(p)).collect();
    let d = cfg.dim();

    let per_trial: Vec<Vec<bool>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(cfg.seed, trial);
            let mut w = ModMatrix::identity(d, p);
            let mut hits = Vec::with_capacity(cfg.steps + 1);
            hits.push(test.hit(&w));
            for _ in 0..cfg.steps {
                if !lazy || rng.random_bool(0.5) {
                    w = w.op(&gens[rng.random_range(0..gens.len())]);
                }
                hits.push(test.hit(&w));
            }
            hits
        })
        .collect();
    let rates: Vec<Rate> = (0..=cfg.steps)
        .map(|k| Rate::wilson(per_trial.iter().filter(|h| h[k]).count(), cfg.trials))
        .collect();
    let fit = tail_fit(&rates, kmax, cfg.trials);
    Ok(DecayFit { modulus: p, predicate: pred.to_string(), bipartite, lazy, rates, fit })
}

fn tail_fit(rates: &[Rate], kmax: usize, trials: usize) -> TailFit {
    let lo = kmax / 2;
    let pts: Vec<(f64, f64)> =
        (lo..=kmax).filter(|&k| rates[k].p_hat > 0.0).map(|k| (k as f64, rates[k].p_hat.ln())).collect();
    let n = pts.len();
    if n < 3 {
        let alpha = (trials as f64).ln() / lo.max(1) as f64;
        return TailFit {
            window: (lo, kmax),
            points: n,
            c: 1.0,
            alpha,
            alpha_ci: (alpha, f64::INFINITY),
            r_squared: f64::NAN,
            lower_bound_only: true,
        };
    }
    let nf = n as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let se = (sse / (nf - 2.0) / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, nf - 2.0).expect("positive degrees of freedom").inverse_cdf(0.975);
    let alpha = -slope;
    TailFit {
        window: (lo, kmax),
        points: n,
        c: intercept.exp(),
        alpha,
        alpha_ci: (alpha - t * se, alpha + t * se),
        r_squared: if syy > 0.0 { 1.0 - sse / syy } else { 1.0 },
        lower_bound_only: false,
    }
}

/// `|Z_p| / |⟨Σ mod p⟩|` by enumerating the quotient, as `(hits, order)`.
pub fn exact_fraction(gens: &[ZMatrix], pred: &Predicate, p: u64) -> Result<(usize, usize)> {
    let q = quotient(gens, p, QUOTIENT_CAP)?;
    let test = prepare(pred, Some(&q), gens, p)?;
    let hits = q.elements.par_iter().filter(|x| test.hit(x)).count();
    Ok((hits, q.elements.len()))
}

/// `step,p_hat,ci_low,ci_high`.
pub fn decay_csv(fit: &DecayFit) -> String {
    let mut s = String::from("step,p_hat,ci_low,ci_high\n");
    for (k, r) in fit.rates.iter().enumerate() {
        s.push_str(&format!("{k},{},{},{}\n", r.p_hat, r.ci_low, r.ci_high));
    }
    s
}

/// Degrees of the irreducible factors, ascending.
pub type Pattern = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeRow {
    pub p: u64,
    pub counts: BTreeMap<Pattern, usize>,
    /// The part of `counts` coming from generic samples.
    pub generic: BTreeMap<Pattern, usize>,
    /// Samples with a squarefree polynomial that acquires a repeated factor
    /// mod `p` (bad reduction).
    pub skipped: usize,
}

impl PrimeRow {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn frequency(&self, pattern: &[usize]) -> f64 {
        let t = self.total();
        if t == 0 {
            return 0.0;
        }
        self.counts.get(pattern).copied().unwrap_or(0) as f64 / t as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatternHistogram {
    pub d: usize,
    /// Walks that reached the last step.
    pub samples: usize,
    pub truncated: usize,
    /// Samples whose polynomial has the root `1` or `−1` over `Q`. For
    /// `d ≤ 3` these are exactly the reducible ones.
    pub non_generic: usize,
    /// Samples with neither a rational root nor a repeated factor.
    pub generic: usize,
    /// Samples whose polynomial has a repeated factor over `Q`. Their
    /// patterns are recorded with multiplicity at every prime.
    pub inseparable: usize,
    pub rows: Vec<PrimeRow>,
}

/// Factors the characteristic polynomial of every final sample modulo every
/// prime and records the degree pattern. Primes must exceed `d`.
pub fn charpoly_pattern_histogram(cfg: &WalkConfig, primes: &[u64]) -> Result<PatternHistogram> {
    let d = cfg.dim();
    for &p in primes {
        check_prime_modulus(p)?;
        if p as usize <= d {
            return Err(Error::invalid(format!("prime {p} must exceed the dimension {d}")));
        }
    }
    let finals = final_samples(cfg);
    let truncated = finals.iter().filter(|f| f.is_none()).count();
    let polys: Vec<Vec<BigInt>> = finals.par_iter().flatten().map(|w| w.charpoly()).collect();
    let rational_root: Vec<bool> = polys
        .iter()
        .map(|f| {
            let at = |x: i64| f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c);
            at(1).is_zero() || at(-1).is_zero()
        })
        .collect();
    let non_generic = rational_root.iter().filter(|r| **r).count();
    let separable: Vec<bool> = polys.par_iter().map(|f| !discriminant(f).is_zero()).collect();
    let inseparable = separable.iter().filter(|s| !**s).count();
    let generic: Vec<bool> = rational_root.iter().zip(&separable).map(|(r, s)| !r && *s).collect();
    let rows = primes
        .par_iter()
        .map(|&p| {
            let pb = BigInt::from(p);
            let mut row = PrimeRow { p, counts: BTreeMap::new(), generic: BTreeMap::new(), skipped: 0 };
            for ((f, &sep), &gen) in polys.iter().zip(&separable).zip(&generic) {
                let fp: Vec<u64> = f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
                let pat = if sep { fp::degree_pattern(&fp, p) } else { Some(fp::degree_pattern_with_multiplicity(&fp, p)) };
                match pat {
                    Some(pat) => {
                        if gen {
                            *row.generic.entry(pat.clone()).or_insert(0) += 1;
                        }
                        *row.counts.entry(pat).or_insert(0) += 1;
                    }
                    None => row.skipped += 1,
                }
            }
            row
        })
        .collect();
    let generic = generic.iter().filter(|g| **g).count();
    Ok(PatternHistogram { d, samples: polys.len(), truncated, non_generic, generic, inseparable, rows })
}

/// Discriminant of a monic integer polynomial (constant term first), up to
/// sign: the resultant of `f` and `f'` as a Sylvester determinant.
fn discriminant(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    if n < 2 {
        return BigInt::from(1);
    }
    let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
    let size = 2 * n - 1;
    let mut m = vec![BigInt::zero(); size * size];
    // rows 0..n-1 hold shifts of f, rows n-1.. hold shifts of f'
    for r in 0..n - 1 {
        for (j, c) in f.iter().rev().enumerate() {
            m[r * size + r + j] = c.clone();
        }
    }
    for r in 0..n {
        for (j, c) in df.iter().rev().enumerate() {
            m[(n - 1 + r) * size + r + j] = c.clone();
        }
    }
    ZMatrix::from_big(size, m).det()
}

/// `prime,pattern,frequency` with patterns written like `1+2`.
pub fn pattern_csv(h: &PatternHistogram) -> String {
    let mut s = String::from("prime,pattern,frequency\n");
    for row in &h.rows {
        for pat in row.counts.keys() {
            let name: Vec<String> = pat.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("{},{},{}\n", row.p, name.join("+"), row.frequency(pat)));
        }
    }
    s
}

/// Cycle-type proportions of `Sym(d)`, by enumeration.
pub fn symmetric_cycle_law(d: usize) -> BTreeMap<Pattern, f64> {
    let all = Perm::all(d);
    let mut counts: BTreeMap<Pattern, usize> = BTreeMap::new();
    for g in &all {
        let mut t = g.cycle_type();
        t.sort_unstable();
        *counts.entry(t).or_insert(0) += 1;
    }
    counts.into_iter().map(|(k, v)| (k, v as f64 / all.len() as f64)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The pooled frequencies pass the chi-square test. This is evidence,
    /// not a proof, that the Galois group is the full symmetric group.
    ConsistentWithFullSymmetric,
    Inconsistent,
    Insufficient,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ConsistentWithFullSymmetric => "consistent-with-full-symmetric",
            Verdict::Inconsistent => "inconsistent",
            Verdict::Insufficient => "insufficient",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaloisVerdict {
    pub verdict: Verdict,
    pub chi_square: f64,
    pub dof: usize,
    pub p_value: Option<f64>,
    /// Counts pooled over primes.
    pub observed: BTreeMap<Pattern, usize>,
    pub expected: BTreeMap<Pattern, f64>,
}

/// Pools the generic samples' pattern counts over all primes and compares
/// them with the cycle-type law of `Sym(d)` by a chi-square test at level
/// 1%. When most samples are non-generic the typical polynomial is
/// reducible, which is reported as inconsistent; the statistic is then taken
/// over all samples.
pub fn generic_galois_verdict(h: &PatternHistogram) -> GaloisVerdict {
    let law = symmetric_cycle_law(h.d);
    let mostly_reducible = h.samples >= MIN_SAMPLES && 2 * (h.samples - h.generic) > h.samples;
    let mut observed: BTreeMap<Pattern, usize> = law.keys().map(|k| (k.clone(), 0)).collect();
    for row in &h.rows {
        let counts = if mostly_reducible { &row.counts } else { &row.generic };
        for (pat, c) in counts {
            *observed.entry(pat.clone()).or_insert(0) += c;
        }
    }
    let total: usize = observed.values().sum();
    let expected: BTreeMap<Pattern, f64> = law.iter().map(|(k, q)| (k.clone(), q * total as f64)).collect();
    let dof = law.len().saturating_sub(1);
    let primes_used = h.rows.iter().filter(|r| r.total() > 0).count();
    let used = if mostly_reducible { h.samples } else { h.generic };
    if used < MIN_SAMPLES || primes_used < MIN_PRIMES || dof == 0 {
        return GaloisVerdict { verdict: Verdict::Insufficient, chi_square: f64::NAN, dof, p_value: None, observed, expected };
    }
    // patterns outside the law (repeated factors) count fully against it
    let chi_square: f64 = observed
        .iter()
        .map(|(k, &o)| match expected.get(k) {
            Some(&e) => (o as f64 - e).powi(2) / e,
            None => f64::INFINITY,
        })
        .sum();
    let p_value = ChiSquared::new(dof as f64).expect("positive degrees of freedom").sf(chi_square);
    let verdict = if !mostly_reducible && p_value >= VERDICT_ALPHA {
        Verdict::ConsistentWithFullSymmetric
    } else {
        Verdict::Inconsistent
    };
    GaloisVerdict { verdict, chi_square, dof, p_value: Some(p_value), observed, expected }
}

/// Polynomials over `F_p` as coefficient vectors, constant term first,
/// without trailing zeros.
mod fp {
    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn inv(a: u64, p: u64) -> u64 {
        let (mut acc, mut b, mut e) = (1u128, a as u128 % p as u128, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p as u128;
            }
            b = b * b % p as u128;
            e >>= 1;
        }
        acc as u64
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        trim((0..n).map(|i| (get(a, i) + p - get(b, i)) % p).collect())
    }

    fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u128 * y as u128) % p as u128;
            }
        }
        trim(out.into_iter().map(|x| x as u64).collect())
    }

    /// Quotient and remainder; `b` must be nonzero.
    fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead = inv(*b.last().unwrap(), p);
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = (*r.last().unwrap() as u128 * lead as u128 % p as u128) as u64;
            q[shift] = c;
            for (i, &bi) in b.iter().enumerate() {
                let t = (c as u128 * bi as u128 % p as u128) as u64;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    fn monic(a: Vec<u64>, p: u64) -> Vec<u64> {
        match a.last() {
            None => a,
            Some(&l) => {
                let li = inv(l, p) as u128;
                a.into_iter().map(|x| (x as u128 * li % p as u128) as u64).collect()
            }
        }
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = divrem(&a, &b, p).1;
            a = b;
            b = r;
        }
        monic(a, p)
    }

    fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u128 * c as u128 % p as u128) as u64).collect())
    }

    fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = divrem(base, f, p).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = divrem(&mul(&acc, &b, p), f, p).1;
            }
            b = divrem(&mul(&b, &b, p), f, p).1;
            e >>= 1;
        }
        acc
    }

    /// `f` (monic, degree ≥ 1) has no repeated factor over `F_p`.
    pub fn is_squarefree(f: &[u64], p: u64) -> bool {
        let f = trim(f.to_vec());
        gcd(&f, &derivative(&f, p), p).len() == 1
    }

    /// Irreducible factor degrees of a monic polynomial, ascending and with
    /// multiplicity. Requires `p > deg f`.
    pub fn degree_pattern_with_multiplicity(f: &[u64], p: u64) -> Vec<usize> {
        let f = trim(f.to_vec());
        if f.len() < 2 {
            return Vec::new();
        }
        // each factor of multiplicity e appears e − 1 times in gcd(f, f')
        let g = gcd(&f, &derivative(&f, p), p);
        let radical = divrem(&f, &g, p).0;
        let mut out = degree_pattern(&radical, p).expect("radical is squarefree");
        out.extend(degree_pattern_with_multiplicity(&g, p));
        out.sort_unstable();
        out
    }

    /// Distinct-degree factorization of a monic polynomial: the ascending
    /// list of irreducible factor degrees, or `None` if `f` is not
    /// squarefree mod `p`.
    pub fn degree_pattern(f: &[u64], p: u64) -> Option<Vec<usize>> {
        let mut f = trim(f.to_vec());
        if f.len() < 2 || !is_squarefree(&f, p) {
            return None;
        }
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut i = 1;
        while f.len() > 2 * i {
            h = powmod(&h, p, &f, p);
            let g = gcd(&f, &sub(&h, &x, p), p);
            let dg = g.len() - 1;
            if dg > 0 {
                out.extend(std::iter::repeat_n(i, dg / i));
                f = divrem(&f, &g, p).0;
                h = divrem(&h, &f, p).1;
            }
            i += 1;
        }
        if f.len() > 1 {
            out.push(f.len() - 1);
        }
        out.sort_unstable();
        Some(out)
    }

}
