//! Finite groups as element tables, and the Cayley and Schreier graphs they
//! define.
//!
//! A [`GroupTable`] lists the elements of `⟨Σ⟩` in breadth-first discovery
//! order from the identity, generators taken in their given order, with
//! left multiplication `a ↦ s·a`. Every graph built from a table is therefore
//! reproducible bit for bit.

mod element;
pub mod experiments;
mod matrix;

pub use element::{Cyclic, GroupElement, Perm};
pub use experiments::*;
pub use matrix::{
    parse_generator_file, sl_order_enumerated, sl_order_formula, write_generator_file, ModMatrix, ZMatrix,
};

use crate::error::{Error, Result};
use crate::graph::Graph;
use fixedbitset::FixedBitSet;
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::OnceLock;

/// Largest group [`close_group`] will enumerate by default.
pub const CLOSURE_CAP: usize = 2_000_000;
/// Largest group for product-set computations.
pub const PRODUCT_CAP: usize = 200_000;
/// Groups up to this order get a full multiplication table.
const MUL_TABLE_CAP: usize = 2048;

/// A symmetric generating list: inverse-closed, no repeats.
#[derive(Clone, Debug, PartialEq)]
pub struct GenSet<E> {
    elements: Vec<E>,
    inverse: Vec<usize>,
}

impl<E: GroupElement> GenSet<E> {
    pub fn new(elements: Vec<E>) -> Result<Self> {
        let mut pos: HashMap<&E, usize> = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if pos.insert(e, i).is_some() {
                return Err(Error::invalid(format!("generator {e:?} is listed twice")));
            }
        }
        let mut inverse = Vec::with_capacity(elements.len());
        for e in &elements {
            match pos.get(&e.inv()) {
                Some(&j) => inverse.push(j),
                None => return Err(Error::invalid(format!("inverse of {e:?} is missing"))),
            }
        }
        Ok(GenSet { elements, inverse })
    }

    /// Appends missing inverses after each element and drops repeats.
    pub fn symmetrize(elements: Vec<E>) -> Self {
        let mut out: Vec<E> = Vec::new();
        for e in elements {
            for x in [e.clone(), e.inv()] {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        GenSet::new(out).expect("symmetrized by construction")
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Position of the inverse of generator `i`.
    pub fn inverse_of(&self, i: usize) -> usize {
        self.inverse[i]
    }
}

/// The elements of a finite group, indexed.
#[derive(Debug)]
pub struct GroupTable<E> {
    elements: Vec<E>,
    index: HashMap<E, usize>,
    mul: OnceLock<Option<Vec<u32>>>,
}

impl<E: GroupElement> GroupTable<E> {
    /// Builds a table from a list of distinct elements closed under the
    /// group law; the identity is moved to position 0 if needed.
    pub fn from_elements(mut elements: Vec<E>) -> Result<Self> {
        let first = elements.first().ok_or_else(|| Error::invalid("empty group"))?.clone();
        let id = first.identity_like();
        if let Some(p) = elements.iter().position(|e| *e == id) {
            elements[..=p].rotate_right(1);
        } else {
            return Err(Error::invalid("element list has no identity"));
        }
        let index: HashMap<E, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != elements.len() {
            return Err(Error::invalid("element list has repeats"));
        }
        let t = GroupTable { elements, index, mul: OnceLock::new() };
        for a in &t.elements {
            for b in &t.elements {
                if !t.index.contains_key(&a.op(b)) {
                    return Err(Error::NotClosed(format!("{:?}", a.op(b))));
                }
            }
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    fn mul_table(&self) -> Option<&Vec<u32>> {
        self.mul
            .get_or_init(|| {
                let n = self.order();
                (n <= MUL_TABLE_CAP).then(|| {
                    let mut t = Vec::with_capacity(n * n);
                    for a in &self.elements {
                        for b in &self.elements {
                            t.push(self.index[&a.op(b)] as u32);
                        }
                    }
                    t
                })
            })
            .as_ref()
    }

    /// Index of `elements[a] · elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.mul_table() {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].op(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inv()]
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        self.index[&self.elements[a].pow(e)]
    }

    /// Indices of the subgroup generated by `gens`, as a bitset.
    pub fn subgroup(&self, gens: &[usize]) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.order());
        seen.insert(0);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &s in gens {
                let y = self.mul(s, x);
                if !seen.put(y) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.subgroup(gens).count_ones(..) == self.order()
    }

    /// Conjugacy class of element `a`, as sorted indices.
    pub fn conjugacy_class(&self, a: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.order())
            .map(|g| self.mul(self.mul(g, a), self.inv(g)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Indices of a list of elements; fails on the first one not in the
    /// table.
    pub fn indices_of(&self, es: &[E]) -> Result<Vec<usize>> {
        es.iter()
            .map(|e| self.index_of(e).ok_or_else(|| Error::NotClosed(format!("{e:?}"))))
            .collect()
    }
}

/// Enumerates `⟨gens⟩` by breadth-first search from the identity.
pub fn close_group<E: GroupElement>(gens: &[E]) -> Result<GroupTable<E>> {
    close_group_capped(gens, CLOSURE_CAP)
}

pub fn close_group_capped<E: GroupElement>(gens: &[E], cap: usize) -> Result<GroupTable<E>> {
    let first = gens.first().ok_or_else(|| Error::invalid("no generators"))?;
    if let Some(bad) = gens.iter().find(|g| !g.compatible(first)) {
        return Err(Error::invalid(format!("{bad:?} is not in the same group as {first:?}")));
    }
    let id = first.identity_like();
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0usize);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for s in gens {
            let y = s.op(&x);
            if !index.contains_key(&y) {
                if elements.len() >= cap {
                    return Err(Error::cap("group order", elements.len() as u128 + 1, cap as u128));
                }
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
    }
    Ok(GroupTable { elements, index, mul: OnceLock::new() })
}

/// `Cay(G; Σ)`: vertex `a` is joined to `s·a` for each `s ∈ Σ`. Port `p` of
/// `a` leads to `s_p · a`, arriving at the port of `s_p⁻¹`.
pub fn cayley_graph<E: GroupElement>(tbl: &GroupTable<E>, sigma: &GenSet<E>) -> Result<Graph> {
    let k = sigma.len();
    let n = tbl.order();
    let gens = tbl.indices_of(sigma.elements())?;
    let mut rot = Vec::with_capacity(n * k);
    for a in 0..n {
        for (p, &s) in gens.iter().enumerate() {
            rot.push((tbl.mul(s, a) as u32, sigma.inverse_of(p) as u32));
        }
    }
    Graph::from_rotation(n, k, rot)
}

/// Schreier graph of an action of `Σ` on `points`: `x` is joined to `σ·x`.
/// Fixed points become loops.
pub fn schreier_graph<E, X, F>(points: &[X], sigma: &GenSet<E>, act: F) -> Result<Graph>
where
    E: GroupElement,
    X: Clone + Eq + Hash + std::fmt::Debug,
    F: Fn(&E, &X) -> X,
{
    let index: HashMap<&X, usize> = points.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let k = sigma.len();
    let mut rot = Vec::with_capacity(points.len() * k);
    for x in points {
        for (p, s) in sigma.elements().iter().enumerate() {
            let y = act(s, x);
            let &j = index.get(&y).ok_or_else(|| Error::NotClosed(format!("{s:?} · {x:?} = {y:?}")))?;
            rot.push((j as u32, sigma.inverse_of(p) as u32));
        }
    }
    Graph::from_rotation(points.len(), k, rot)
}
