//! Direct quotient of a small slot by every STU, AS and IHX instance.
//!
//! This is independent of the chord-diagram route used by the normal form
//! and serves as a cross-check for small degrees.

use std::collections::{BTreeSet, HashMap};

use num::One;

use super::diagram::{canonical, Anchor, Diagram};
use super::enumerate::{all_matchings, distributions};
use super::linalg::{Echelon, SparseVec};
use super::relations::{flip_vertex, ihx_terms, stu_pair};
use crate::error::{Error, Result};
use crate::Q;

/// All diagrams of a fixed degree over a set of anchors together with the
/// echelon form of every local relation among them.
#[derive(Debug)]
pub struct BruteSlot {
    pub basis: Vec<Diagram>,
    pub index: HashMap<Diagram, usize>,
    pub relations: Echelon,
}

impl BruteSlot {
    /// Dimension of the quotient.
    pub fn dimension(&self) -> usize {
        self.basis.len() - self.relations.rank()
    }

    /// Sparse row of a combination; errors if a diagram lies outside the slot.
    pub fn row(&self, terms: &[(Diagram, Q)]) -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (d, c) in terms {
            if d.has_tadpole() {
                continue;
            }
            let cd = canonical(d);
            let i = *self
                .index
                .get(&cd)
                .ok_or_else(|| Error::Inconsistent(format!("{} outside the slot", cd.encode())))?;
            *v.entry(i).or_insert_with(|| Q::from_integer(0.into())) += c;
        }
        v.retain(|_, c| *c != Q::from_integer(0.into()));
        Ok(v)
    }

    /// Whether a combination vanishes in the quotient.
    pub fn is_zero(&self, terms: &[(Diagram, Q)]) -> Result<bool> {
        let mut v = self.row(terms)?;
        self.relations.reduce(&mut v);
        Ok(v.is_empty())
    }
}

/// Builds the slot of diagrams of degree `deg` with legs on `anchors`.
/// With `attached_only`, every component must touch a non-color anchor.
/// With `max_tri`, only diagrams with at most that many vertices are kept;
/// the relations among them are still valid, so vanishing in the truncated
/// quotient implies vanishing in the full one.
pub fn brute_slot(anchors: &[Anchor], deg: usize, attached_only: bool, max_tri: Option<usize>) -> Result<BruteSlot> {
    let mut set = BTreeSet::new();
    for l in 0..=2 * deg {
        let t = 2 * deg - l;
        if (l + 3 * t) % 2 == 1 || max_tri.is_some_and(|m| t > m) {
            continue;
        }
        if l + 3 * t > 14 {
            return Err(Error::Budget(format!("brute-force slot with {l} legs and {t} vertices")));
        }
        for legs in distributions(anchors, l) {
            for d in all_matchings(&legs, t)? {
                if attached_only && !all_attached(&d) {
                    continue;
                }
                set.insert(d);
            }
        }
    }
    let basis: Vec<Diagram> = set.into_iter().collect();
    let index: HashMap<Diagram, usize> = basis.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
    let mut slot = BruteSlot { basis, index, relations: Echelon::new() };
    let inside = |d: &Diagram| max_tri.is_none_or(|m| d.num_tri() <= m);
    let one = Q::one();
    for k in 0..slot.basis.len() {
        let d = slot.basis[k].clone();
        if !inside(&d) {
            continue;
        }
        for v in 0..d.num_tri() {
            let row = slot.row(&[(d.clone(), one.clone()), (flip_vertex(&d, v), one.clone())])?;
            slot.relations.insert(row);
            for s in 0..3 {
                if let Some([a, b, c]) = ihx_terms(&d, v, s) {
                    let row = slot.row(&[(a, one.clone()), (b, one.clone()), (c, one.clone())])?;
                    slot.relations.insert(row);
                }
            }
        }
        for i in 0..d.legs.len() {
            if d.legs[i].is_color() {
                continue;
            }
            if let Some((t, u)) = stu_pair(&d, i) {
                let row = slot.row(&[(d.clone(), one.clone()), (t, -one.clone()), (u, one.clone())])?;
                slot.relations.insert(row);
            }
        }
    }
    Ok(slot)
}

fn all_attached(d: &Diagram) -> bool {
    let (comp, n) = d.component_ids();
    let mut touch = vec![false; n];
    for (i, a) in d.legs.iter().enumerate() {
        if !a.is_color() {
            touch[comp[i]] = true;
        }
    }
    touch.iter().all(|&t| t)
}
