//! Normal forms modulo STU, AS and IHX.
//!
//! A diagram splits into the part touching the skeleton, free components
//! (carrying only colored legs or no legs) and dashed loops. The skeleton
//! part is fully resolved into chord diagrams by STU and reduced modulo the
//! four-term relations of its slot. Free components are reduced one by one
//! modulo AS and IHX in the slot of their leg colors and vertex count. The
//! residues multiply back together by disjoint union.
//!
//! Each slot stores an echelon basis of its relation span over a column
//! order given by sorting canonical diagrams; pivots sit at the largest
//! column, so a residue is a combination of the smaller diagrams.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num::{One, Zero};

use super::build::{Builder, LegFate};
use super::diagram::{canonical, Anchor, Diagram};
use super::enumerate;
use super::linalg::{Echelon, SparseVec};
use super::ops::subdiagram;
use super::relations::{flip_vertex, ihx_terms, stu_pair};
use super::vector::DVec;
use crate::error::{Error, Result};
use crate::Q;

/// Default degree budget for skeleton slots.
pub const DEFAULT_BUDGET: usize = 4;

/// A reduced slot: its diagrams and the echelon form of its relations.
#[derive(Debug)]
pub struct Slot {
    pub basis: Vec<Diagram>,
    pub index: HashMap<Diagram, usize>,
    pub relations: Echelon,
}

impl Slot {
    fn new(mut basis: Vec<Diagram>) -> Slot {
        basis.sort();
        basis.dedup();
        let index = basis.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
        Slot { basis, index, relations: Echelon::new() }
    }

    fn row(&self, terms: &[(Diagram, Q)]) -> Result<SparseVec> {
        let mut v = SparseVec::new();
        for (d, c) in terms {
            if d.has_tadpole() {
                continue;
            }
            let cd = canonical(d);
            let &i = self
                .index
                .get(&cd)
                .ok_or_else(|| Error::Inconsistent(format!("diagram {} outside its slot", cd.encode())))?;
            let e = v.entry(i).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                v.remove(&i);
            }
        }
        Ok(v)
    }

    /// Dimension of the quotient.
    pub fn dimension(&self) -> usize {
        self.basis.len() - self.relations.rank()
    }

    /// Diagrams that are not pivots, i.e. the basis of the quotient.
    pub fn quotient_basis(&self) -> Vec<Diagram> {
        (0..self.basis.len()).filter(|&i| !self.relations.is_pivot(i)).map(|i| self.basis[i].clone()).collect()
    }

    /// Reduces a combination of diagrams of this slot.
    pub fn reduce(&self, terms: &[(Diagram, Q)]) -> Result<Vec<(Diagram, Q)>> {
        let mut v = self.row(terms)?;
        self.relations.reduce(&mut v);
        Ok(v.into_iter().map(|(i, c)| (self.basis[i].clone(), c)).collect())
    }
}

type ChordKey = (u16, u16, usize);
type FreeKey = (Vec<u16>, usize);

fn chord_slots() -> &'static Mutex<HashMap<ChordKey, Arc<Slot>>> {
    static C: OnceLock<Mutex<HashMap<ChordKey, Arc<Slot>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn free_slots() -> &'static Mutex<HashMap<FreeKey, Arc<Slot>>> {
    static C: OnceLock<Mutex<HashMap<FreeKey, Arc<Slot>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn anchors_for(nseg: u16, ncirc: u16) -> Vec<Anchor> {
    (0..nseg).map(Anchor::Seg).chain((0..ncirc).map(Anchor::Circ)).collect()
}

/// The chord-diagram slot with `nseg` strands, `ncirc` circles and `d` chords,
/// reduced modulo four-term relations.
pub fn chord_slot(nseg: u16, ncirc: u16, d: usize) -> Result<Arc<Slot>> {
    let key = (nseg, ncirc, d);
    if let Some(s) = chord_slots().lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    if d > DEFAULT_BUDGET {
        return Err(Error::Budget(format!("chord slot of degree {d}")));
    }
    let anchors = anchors_for(nseg, ncirc);
    let mut slot = Slot::new(enumerate::on_anchors(&anchors, 2 * d, 0)?);
    if d >= 2 {
        for y in enumerate::on_anchors(&anchors, 2 * d - 1, 1)? {
            let legs: Vec<usize> = (0..y.legs.len()).filter(|&i| y.mate(i) >= y.legs.len()).collect();
            let exps: Vec<Vec<(Diagram, Q)>> = legs
                .iter()
                .map(|&i| {
                    let (t, u) = stu_pair(&y, i).expect("leg meets the vertex");
                    vec![(t, Q::one()), (u, -Q::one())]
                })
                .collect();
            for k in 1..exps.len() {
                let mut terms = exps[0].clone();
                terms.extend(exps[k].iter().map(|(d, c)| (d.clone(), -c.clone())));
                let row = slot.row(&terms)?;
                slot.relations.insert(row);
            }
        }
    }
    let arc = Arc::new(slot);
    chord_slots().lock().unwrap().insert(key, arc.clone());
    Ok(arc)
}

/// The slot of connected free diagrams with the given leg colors and vertex
/// count, reduced modulo AS and IHX.
pub fn free_slot(colors: &[u16], ntri: usize) -> Result<Arc<Slot>> {
    let mut sorted = colors.to_vec();
    sorted.sort();
    let key = (sorted.clone(), ntri);
    if let Some(s) = free_slots().lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let mut slot = Slot::new(enumerate::connected_free(&sorted, ntri)?);
    let basis = slot.basis.clone();
    for d in &basis {
        for v in 0..d.num_tri() {
            let row = slot.row(&[(d.clone(), Q::one()), (flip_vertex(d, v), Q::one())])?;
            slot.relations.insert(row);
            for s in 0..3 {
                if let Some([a, b, c]) = ihx_terms(d, v, s) {
                    let row = slot.row(&[(a, Q::one()), (b, Q::one()), (c, Q::one())])?;
                    slot.relations.insert(row);
                }
            }
        }
    }
    let arc = Arc::new(slot);
    free_slots().lock().unwrap().insert(key, arc.clone());
    Ok(arc)
}

/// Resolves every vertex of a diagram whose components all touch the
/// skeleton, returning a combination of chord diagrams.
pub fn stu_expand(d: &Diagram, memo: &mut HashMap<Diagram, Vec<(Diagram, Q)>>) -> Vec<(Diagram, Q)> {
    let cd = canonical(d);
    if let Some(v) = memo.get(&cd) {
        return v.clone();
    }
    let leg = (0..cd.legs.len()).find(|&i| !cd.legs[i].is_color() && cd.mate(i) >= cd.legs.len());
    let out = match leg {
        None => vec![(cd.clone(), Q::one())],
        Some(i) => match stu_pair(&cd, i) {
            None => vec![],
            Some((t, u)) => {
                let mut acc: BTreeMap<Diagram, Q> = BTreeMap::new();
                for (x, sign) in [(t, Q::one()), (u, -Q::one())] {
                    if x.has_tadpole() {
                        continue;
                    }
                    for (y, c) in stu_expand(&x, memo) {
                        let e = acc.entry(y).or_insert_with(Q::zero);
                        *e += c * &sign;
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
        },
    };
    memo.insert(cd, out.clone());
    out
}

/// Cache for repeated normal-form computations within one call.
#[derive(Default)]
pub struct NfCache {
    stu: HashMap<Diagram, Vec<(Diagram, Q)>>,
    attached: HashMap<Diagram, Vec<(Diagram, Q)>>,
    free: HashMap<Diagram, Vec<(Diagram, Q)>>,
}

fn count_segments_and_circles(d: &Diagram) -> (u16, u16) {
    let mut ns = 0;
    let mut nc = 0;
    for a in &d.legs {
        match a {
            Anchor::Seg(i) => ns = ns.max(i + 1),
            Anchor::Circ(i) => nc = nc.max(i + 1),
            Anchor::Color(_) => {}
        }
    }
    (ns, nc)
}

impl NfCache {
    /// A fresh cache.
    pub fn new() -> Self {
        Self::default()
    }

    fn reduce_attached(&mut self, d: &Diagram, nseg: u16, ncirc: u16) -> Result<Vec<(Diagram, Q)>> {
        if let Some(v) = self.attached.get(d) {
            return Ok(v.clone());
        }
        let chords = stu_expand(d, &mut self.stu);
        let deg = d.degree();
        let out = if chords.is_empty() {
            vec![]
        } else {
            let slot = chord_slot(nseg, ncirc, deg)?;
            slot.reduce(&chords)?
        };
        self.attached.insert(d.clone(), out.clone());
        Ok(out)
    }

    fn reduce_free(&mut self, d: &Diagram) -> Result<Vec<(Diagram, Q)>> {
        if let Some(v) = self.free.get(d) {
            return Ok(v.clone());
        }
        let colors: Vec<u16> = d
            .legs
            .iter()
            .map(|a| match a {
                Anchor::Color(c) => *c,
                _ => unreachable!("free component with skeleton legs"),
            })
            .collect();
        let slot = free_slot(&colors, d.num_tri())?;
        let out = slot.reduce(&[(d.clone(), Q::one())])?;
        self.free.insert(d.clone(), out.clone());
        Ok(out)
    }

    /// Normal form of a single diagram in a context with `nseg` strands and
    /// `ncirc` circles.
    pub fn diagram(&mut self, d: &Diagram, nseg: u16, ncirc: u16) -> Result<Vec<(Diagram, Q)>> {
        if d.has_tadpole() {
            return Ok(vec![]);
        }
        let (comp, ncomp) = d.component_ids();
        let mut touches_skeleton = vec![false; ncomp];
        let mut has_color = vec![false; ncomp];
        for (i, a) in d.legs.iter().enumerate() {
            if a.is_color() {
                has_color[comp[i]] = true;
            } else {
                touches_skeleton[comp[i]] = true;
            }
        }
        if (0..ncomp).any(|c| touches_skeleton[c] && has_color[c]) {
            return Err(Error::Unsupported("components touching both the skeleton and free colors".into()));
        }
        let attached = canonical(&subdiagram(d, &comp, &touches_skeleton, 0));
        let mut factors: Vec<Vec<(Diagram, Q)>> = vec![if attached.partner.is_empty() {
            vec![(attached, Q::one())]
        } else {
            self.reduce_attached(&attached, nseg, ncirc)?
        }];
        for c in 0..ncomp {
            if touches_skeleton[c] {
                continue;
            }
            let mut only = vec![false; ncomp];
            only[c] = true;
            let piece = canonical(&subdiagram(d, &comp, &only, 0));
            factors.push(self.reduce_free(&piece)?);
        }
        // Multiply the factors by disjoint union.
        let mut acc: Vec<(Diagram, Q)> = vec![(Diagram::loops(d.loops), Q::one())];
        for f in factors {
            let mut next = Vec::new();
            for (a, ca) in &acc {
                for (b, cb) in &f {
                    let mut bld = Builder::new();
                    bld.add(a, |i| LegFate::Keep(a.legs[i], i as u64));
                    bld.add(b, |i| LegFate::Keep(b.legs[i], (1u64 << 32) + i as u64));
                    next.push((bld.finish(), ca * cb));
                }
            }
            acc = next;
        }
        let mut merged: BTreeMap<Diagram, Q> = BTreeMap::new();
        for (x, c) in acc {
            let e = merged.entry(canonical(&x)).or_insert_with(Q::zero);
            *e += c;
        }
        Ok(merged.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

/// Normal form of a vector.
pub fn normal_form(v: &DVec) -> Result<DVec> {
    let mut cache = NfCache::new();
    normal_form_with(v, &mut cache)
}

/// Normal form of a vector reusing a cache.
pub fn normal_form_with(v: &DVec, cache: &mut NfCache) -> Result<DVec> {
    let nseg = v.ctx.skeleton.num_components() as u16;
    let ncirc = v.ctx.circles;
    let mut out = DVec::zero(v.ctx.clone(), v.max_deg);
    for (d, c) in v.terms() {
        let (ns, nc) = count_segments_and_circles(d);
        debug_assert!(ns <= nseg && nc <= ncirc);
        for (x, k) in cache.diagram(d, nseg, ncirc)? {
            out.insert_raw(x, c * k);
        }
    }
    Ok(out)
}

/// Whether two vectors agree modulo the relations.
pub fn equivalent(a: &DVec, b: &DVec) -> Result<bool> {
    Ok(normal_form(&a.sub(b)?)?.is_zero())
}
