//! Group-level experiments: girth of the 1-2-3 Cayley graphs, strong
//! approximation, triple products, invariable generation and power sets.

use super::{close_group, cayley_graph, GenSet, GroupElement, GroupTable};
use super::{sl_order_enumerated, sl_order_formula, ModMatrix, ZMatrix, PRODUCT_CAP};
use crate::error::{Error, Result};
use fixedbitset::FixedBitSet;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Groups above this order are refused by [`invariable_generation_check`].
pub const INVARIABLE_CAP: usize = 10_000;
/// Largest `q^{d²}` for which strong approximation compares against an
/// enumerated SL order.
const ENUMERATION_CAP: u128 = 50_000_000;

/// `{(1 ±t; 0 1), (1 0; ±t 1)}` reduced mod `p`, in that order.
pub fn sl2_onetwothree_generators(t: i64, p: u64) -> Result<GenSet<ModMatrix>> {
    if t <= 0 || p <= t as u64 {
        return Err(Error::invalid(format!("need 0 < t < p, got t = {t}, p = {p}")));
    }
    GenSet::new(vec![
        ModMatrix::new(2, p, &[1, t, 0, 1]),
        ModMatrix::new(2, p, &[1, -t, 0, 1]),
        ModMatrix::new(2, p, &[1, 0, t, 1]),
        ModMatrix::new(2, p, &[1, 0, -t, 1]),
    ])
}

/// Every element of `SL2(F_p)`, `p` prime, in lexicographic order of
/// `(a, b, c, d)`.
pub fn sl2_elements(p: u64) -> Vec<ModMatrix> {
    let mut out = Vec::with_capacity((p * (p * p - 1)) as usize);
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                // ad − bc = 1
                let rhs = (1 + b * c) % p;
                if a != 0 {
                    let ai = super::matrix::mod_inverse(a as i128, p as i128).unwrap() as u64;
                    let d = rhs * ai % p;
                    out.push(ModMatrix::new(2, p, &[a as i64, b as i64, c as i64, d as i64]));
                } else if rhs == 0 {
                    for d in 0..p {
                        out.push(ModMatrix::new(2, p, &[0, b as i64, c as i64, d as i64]));
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GirthRow {
    pub p: u64,
    pub order: usize,
    pub girth: Option<usize>,
    pub ratio: Option<f64>,
}

/// Girth of `Cay(SL2(F_p); (1 ±t; 0 1), (1 0; ±t 1))` for each prime.
pub fn girth_vs_logp_experiment(t: i64, primes: &[u64]) -> Result<Vec<GirthRow>> {
    primes
        .iter()
        .map(|&p| {
            let sigma = sl2_onetwothree_generators(t, p)?;
            let tbl = close_group(sigma.elements())?;
            let g = cayley_graph(&tbl, &sigma)?;
            let girth = g.girth();
            Ok(GirthRow { p, order: tbl.order(), girth, ratio: girth.map(|x| x as f64 / (p as f64).ln()) })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrongApprox {
    pub q: u64,
    pub image_order: usize,
    pub sl_order: u128,
    /// Whether `sl_order` came from enumeration rather than the formula.
    pub enumerated: bool,
    pub onto: bool,
}

/// Whether the reductions of `gens` mod `q` generate `SL_d(Z/q)`.
pub fn strong_approx_check(gens: &[ZMatrix], q: u64) -> Result<StrongApprox> {
    let first = gens.first().ok_or_else(|| Error::invalid("no generators"))?;
    let d = first.dim();
    for g in gens {
        if g.dim() != d {
            return Err(Error::invalid("generators of different dimensions"));
        }
        if !g.det().is_one() {
            return Err(Error::invalid(format!("{g:?} is not in SL_{d}(Z)")));
        }
    }
    let reduced: Vec<ModMatrix> = gens.iter().map(|g| g.reduce(q)).collect();
    let image = close_group(&reduced)?.order();
    let space = (q as u128).checked_pow((d * d) as u32);
    let (sl_order, enumerated) = match space {
        Some(s) if s <= ENUMERATION_CAP => (sl_order_enumerated(d, q, ENUMERATION_CAP)? as u128, true),
        _ => (sl_order_formula(d, q), false),
    };
    Ok(StrongApprox { q, image_order: image, sl_order, enumerated, onto: image as u128 == sl_order })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleProduct {
    pub a: usize,
    pub aaa: usize,
    /// `log|AAA| / log|A|`; `None` when `|A| = 1`.
    pub exponent: Option<f64>,
    pub generates: bool,
}

fn product_set(tbl: &GroupTable<impl GroupElement>, x: &[usize], y: &[usize]) -> Vec<usize> {
    let mut seen = FixedBitSet::with_capacity(tbl.order());
    for &a in x {
        for &b in y {
            seen.insert(tbl.mul(a, b));
        }
    }
    seen.ones().collect()
}

/// Exact `|A·A·A|` for a subset `A` of the table (by index).
pub fn triple_product_growth<E: GroupElement>(tbl: &GroupTable<E>, a: &[usize]) -> Result<TripleProduct> {
    if a.is_empty() {
        return Err(Error::invalid("A is empty"));
    }
    if tbl.order() > PRODUCT_CAP {
        return Err(Error::cap("group order", tbl.order() as u128, PRODUCT_CAP as u128));
    }
    let mut set = a.to_vec();
    set.sort_unstable();
    set.dedup();
    let aa = product_set(tbl, &set, &set);
    let aaa = product_set(tbl, &aa, &set).len();
    let exponent = (set.len() > 1).then(|| (aaa as f64).ln() / (set.len() as f64).ln());
    Ok(TripleProduct { a: set.len(), aaa, exponent, generates: tbl.generates(&set) })
}

/// Whether every choice of one conjugate of each element of `s` generates
/// the group.
///
/// Simultaneous conjugation preserves generation, so the first element is
/// kept fixed; the remaining choices are searched depth first, pruning as
/// soon as the chosen conjugates already generate.
pub fn invariable_generation_check<E: GroupElement>(tbl: &GroupTable<E>, s: &[usize]) -> Result<bool> {
    let n = tbl.order();
    if n > INVARIABLE_CAP {
        return Err(Error::cap("group order", n as u128, INVARIABLE_CAP as u128));
    }
    // one entry per conjugacy class met
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut seen = FixedBitSet::with_capacity(n);
    for &x in s {
        if !seen.contains(x) {
            let c = tbl.conjugacy_class(x);
            for &y in &c {
                seen.insert(y);
            }
            classes.push(c);
        }
    }
    let Some(first) = classes.first() else {
        return Ok(n == 1);
    };
    let start = vec![first[0]];
    let mut memo = HashMap::new();
    Ok(search(tbl, &classes, 1, start, &mut memo))
}

fn search<E: GroupElement>(
    tbl: &GroupTable<E>,
    classes: &[Vec<usize>],
    i: usize,
    gens: Vec<usize>,
    memo: &mut HashMap<(usize, FixedBitSet), bool>,
) -> bool {
    let h = tbl.subgroup(&gens);
    if h.count_ones(..) == tbl.order() {
        return true;
    }
    if i == classes.len() {
        return false;
    }
    let key = (i, h);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut ok = true;
    for &c in &classes[i] {
        let mut next = gens.clone();
        next.push(c);
        if !search(tbl, classes, i + 1, next, memo) {
            ok = false;
            break;
        }
    }
    memo.insert(key, ok);
    ok
}

/// `Z(m) = {g^m : g ∈ G}` as sorted indices.
pub fn m_power_set<E: GroupElement>(tbl: &GroupTable<E>, m: u64) -> Vec<usize> {
    let mut seen = FixedBitSet::with_capacity(tbl.order());
    let hits: Vec<usize> = (0..tbl.order()).into_par_iter().map(|g| tbl.pow(g, m)).collect();
    for h in hits {
        seen.insert(h);
    }
    seen.ones().collect()
}
