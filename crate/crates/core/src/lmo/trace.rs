//! Diagrammatic traces: families of free-colored diagrams indexed by the
//! number of legs that are invariant under rotation of the colors and
//! compatible with sliding a vertex off a circle.
//!
//! Conventions. A trace diagram with `m` legs carries one leg of each color
//! `0..m`. When a trace replaces a circle, color `j` is glued to the `j`-th
//! leg met along the orientation of that circle. Compatibility reads
//! `T_m - (i i+1) T_m = T_{m-1} *_i Y`, where the glued vertex has cyclic
//! order `(edge, i, i+1)`, matching the vertex convention of the STU
//! relation used throughout the crate.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::jacobi::build::{Builder, LegFate};
use crate::jacobi::linalg::nullspace_sparse;
use crate::jacobi::linalg::SparseVec;
use crate::jacobi::nf::{free_slot, Slot};
use crate::jacobi::{Anchor, Context, DVec, Diagram};
use crate::Q;

/// Default largest leg count of a solved trace family.
pub const DEFAULT_TRACE_LEGS: usize = 5;

/// Hard limit on the leg count of a solved trace family.
pub const MAX_TRACE_LEGS: usize = 7;

/// A truncated diagrammatic trace `(T_m)_{m ≤ max_legs}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagrammaticTrace {
    /// `family[m]` lives in the context with `m` colors.
    pub family: Vec<DVec>,
    /// Number of circles and cyclic degree, so that `deg T_m = m + d - c`.
    pub bidegree: (usize, usize),
}

/// Relabels the colors of a free diagram.
pub fn relabel(d: &Diagram, f: impl Fn(u16) -> u16) -> Diagram {
    let legs = d
        .legs
        .iter()
        .map(|a| match *a {
            Anchor::Color(c) => Anchor::Color(f(c)),
            other => other,
        })
        .collect();
    Diagram { legs, partner: d.partner.clone(), loops: d.loops }
}

/// Relabels the colors of every term of a vector.
pub fn relabel_vec(x: &DVec, f: impl Fn(u16) -> u16) -> DVec {
    let mut out = DVec::zero(x.ctx.clone(), x.max_deg);
    for (d, c) in x.terms() {
        out.add_term(relabel(d, &f), c.clone());
    }
    out
}

/// Glues a vertex to the leg of color `i` of a diagram with colors `0..m-1`.
/// The two new legs get colors `i` and `i + 1`, later colors shift up by one,
/// and the vertex has cyclic order `(edge, i, i + 1)`.
pub fn glue_y(d: &Diagram, i: u16) -> Diagram {
    let l = d.legs.len();
    let n = d.partner.len();
    let leg = d.legs.iter().position(|a| *a == Anchor::Color(i)).expect("color present");
    let (nx, ny, va, vx, vy) = (n, n + 1, n + 2, n + 3, n + 4);
    let mut legs = Vec::with_capacity(l + 1);
    let mut leg_ends = Vec::with_capacity(l + 1);
    for (j, a) in d.legs.iter().enumerate() {
        if j == leg {
            continue;
        }
        let Anchor::Color(c) = *a else { unreachable!("free diagram") };
        legs.push(Anchor::Color(if c > i { c + 1 } else { c }));
        leg_ends.push(j);
    }
    legs.push(Anchor::Color(i));
    leg_ends.push(nx);
    legs.push(Anchor::Color(i + 1));
    leg_ends.push(ny);
    let mut tris: Vec<[usize; 3]> = (0..d.num_tri()).map(|v| [d.slot(v, 0), d.slot(v, 1), d.slot(v, 2)]).collect();
    tris.push([va, vx, vy]);
    let mut pairs: Vec<(usize, usize)> =
        (0..n).filter(|&e| e < d.mate(e) && e != leg && d.mate(e) != leg).map(|e| (e, d.mate(e))).collect();
    pairs.push((va, d.mate(leg)));
    pairs.push((vx, nx));
    pairs.push((vy, ny));
    Diagram::assemble(legs, &leg_ends, &tris, &pairs, d.loops)
}

fn swap_colors(i: u16, m: u16) -> impl Fn(u16) -> u16 {
    let j = (i + 1) % m;
    move |c| {
        if c == i {
            j
        } else if c == j {
            i
        } else {
            c
        }
    }
}

/// Coordinates of a combination in the quotient basis of a slot.
fn coords(slot: &Slot, qindex: &HashMap<Diagram, usize>, terms: &[(Diagram, Q)]) -> Result<SparseVec> {
    let mut v = SparseVec::new();
    for (d, c) in slot.reduce(terms)? {
        let &k = qindex.get(&d).ok_or_else(|| Error::Inconsistent("residue outside the quotient basis".into()))?;
        v.insert(k, c);
    }
    Ok(v)
}

struct TraceSlot {
    slot: Arc<Slot>,
    basis: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
}

fn trace_slot(m: usize) -> Result<TraceSlot> {
    let colors: Vec<u16> = (0..m as u16).collect();
    let slot = free_slot(&colors, m - 2)?;
    let basis = slot.quotient_basis();
    let index = basis.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
    Ok(TraceSlot { slot, basis, index })
}

/// Solves for the tree-valued trace up to `max_legs` legs.
///
/// The unknowns are the coefficients of `T_2, ..., T_max` on the quotient
/// bases of connected trees; the constraints are rotation invariance and
/// compatibility. The solution space must be one-dimensional; it is
/// normalized by requiring `T_2` to be the strut with coefficient one.
pub fn solve_trace_lmo(max_legs: usize) -> Result<DiagrammaticTrace> {
    if !(2..=MAX_TRACE_LEGS).contains(&max_legs) {
        return Err(Error::Budget(format!("trace with {max_legs} legs (allowed 2..={MAX_TRACE_LEGS})")));
    }
    let slots: Vec<TraceSlot> = (2..=max_legs).map(trace_slot).collect::<Result<_>>()?;
    let mut offset = vec![0usize];
    for s in &slots {
        offset.push(offset.last().unwrap() + s.basis.len());
    }
    let nvars = *offset.last().unwrap();
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut push_rows = |columns: Vec<(usize, SparseVec)>| {
        // `columns[v]` is the image of variable `v`; transpose into rows.
        let mut by_row: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (var, img) in columns {
            for (r, c) in img {
                by_row.entry(r).or_default().insert(var, c);
            }
        }
        rows.extend(by_row.into_values());
    };
    for (k, ts) in slots.iter().enumerate() {
        let m = (k + 2) as u16;
        let rot = |c: u16| (c + 1) % m;
        let mut columns = Vec::new();
        for (b, d) in ts.basis.iter().enumerate() {
            let img = coords(&ts.slot, &ts.index, &[(d.clone(), Q::one()), (relabel(d, rot), -Q::one())])?;
            columns.push((offset[k] + b, img));
        }
        push_rows(columns);
        if m < 3 {
            continue;
        }
        let prev = &slots[k - 1];
        for i in 0..m - 1 {
            let mut columns = Vec::new();
            for (b, d) in ts.basis.iter().enumerate() {
                let img = coords(&ts.slot, &ts.index, &[(d.clone(), Q::one()), (relabel(d, swap_colors(i, m)), -Q::one())])?;
                columns.push((offset[k] + b, img));
            }
            for (b, d) in prev.basis.iter().enumerate() {
                let img = coords(&ts.slot, &ts.index, &[(glue_y(d, i), -Q::one())])?;
                columns.push((offset[k - 1] + b, img));
            }
            push_rows(columns);
        }
    }
    let null = nullspace_sparse(&rows, nvars);
    if null.len() != 1 {
        return Err(Error::Inconsistent(format!(
            "the space of tree-valued traces should be one-dimensional, found dimension {}",
            null.len()
        )));
    }
    let v = &null[0];
    let scale = v[offset[0]].clone();
    if scale.is_zero() {
        return Err(Error::Inconsistent("trace solution vanishes on two legs".into()));
    }
    let mut family = vec![DVec::zero(Context::colors(0), 0), DVec::zero(Context::colors(1), 0)];
    for (k, ts) in slots.iter().enumerate() {
        let m = k + 2;
        let mut t = DVec::zero(Context::colors(m as u16), m);
        for (b, d) in ts.basis.iter().enumerate() {
            t.add_term(d.clone(), &v[offset[k] + b] / &scale);
        }
        family.push(t);
    }
    Ok(DiagrammaticTrace { family, bidegree: (1, 0) })
}

/// The tree-valued trace up to `max_legs` legs, computed once per size.
pub fn trace_lmo(max_legs: usize) -> Result<Arc<DiagrammaticTrace>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<DiagrammaticTrace>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&max_legs) {
        return Ok(t.clone());
    }
    let t = Arc::new(solve_trace_lmo(max_legs)?);
    cache.lock().unwrap().insert(max_legs, t.clone());
    Ok(t)
}

/// Increasing injections of `0..p` into `0..p+q` with their complements.
fn shuffles(p: usize, q: usize) -> Vec<(Vec<u16>, Vec<u16>)> {
    let n = p + q;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let a: Vec<u16> = (0..n as u16).filter(|&i| mask >> i & 1 == 1).collect();
        let b: Vec<u16> = (0..n as u16).filter(|&i| mask >> i & 1 == 0).collect();
        out.push((a, b));
    }
    out
}

impl DiagrammaticTrace {
    /// Largest leg count available.
    pub fn max_legs(&self) -> usize {
        self.family.len() - 1
    }

    /// The member with `m` legs.
    pub fn get(&self, m: usize) -> Result<&DVec> {
        self.family
            .get(m)
            .ok_or_else(|| Error::Budget(format!("trace family known up to {} legs, {m} needed", self.max_legs())))
    }

    /// Smallest leg count with a nonzero member.
    pub fn lowest(&self) -> usize {
        self.family.iter().position(|t| !t.is_zero()).unwrap_or(self.family.len())
    }

    /// The product of traces: sum over shuffles of disjoint unions. The
    /// result is known up to the leg count where a missing member of either
    /// factor could contribute.
    pub fn product(&self, other: &DiagrammaticTrace) -> DiagrammaticTrace {
        let max = (self.max_legs() + other.lowest()).min(other.max_legs() + self.lowest());
        let mut family = Vec::with_capacity(max + 1);
        for m in 0..=max {
            let mut t = DVec::zero(Context::colors(m as u16), m);
            for p in 0..=m {
                let q = m - p;
                let (Some(x), Some(y)) = (self.family.get(p), other.family.get(q)) else { continue };
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                for (a, b) in shuffles(p, q) {
                    for (dx, cx) in x.terms() {
                        for (dy, cy) in y.terms() {
                            let mut bld = Builder::new();
                            bld.add(dx, |i| match dx.legs[i] {
                                Anchor::Color(c) => LegFate::Keep(Anchor::Color(a[c as usize]), i as u64),
                                other => LegFate::Keep(other, i as u64),
                            });
                            bld.add(dy, |i| match dy.legs[i] {
                                Anchor::Color(c) => LegFate::Keep(Anchor::Color(b[c as usize]), (1 << 32) + i as u64),
                                other => LegFate::Keep(other, (1 << 32) + i as u64),
                            });
                            t.add_term(bld.finish(), cx * cy);
                        }
                    }
                }
            }
            family.push(t);
        }
        let (c1, d1) = self.bidegree;
        let (c2, d2) = other.bidegree;
        DiagrammaticTrace { family, bidegree: (c1 + c2, d1 + d2) }
    }

    /// The `n`-th power under the product of traces.
    pub fn power(&self, n: usize) -> Result<DiagrammaticTrace> {
        if n == 0 {
            return Err(Error::InvalidArgument("trace powers start at one".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self);
        }
        Ok(acc)
    }

    /// The divided power: the `n`-th power divided by `n!`.
    pub fn divided_power(&self, n: usize) -> Result<DiagrammaticTrace> {
        let mut t = self.power(n)?;
        let mut fact = Q::one();
        for i in 1..=n {
            fact *= Q::from_integer((i as i64).into());
        }
        let inv = Q::one() / fact;
        for m in t.family.iter_mut() {
            *m = m.scale(&inv);
        }
        Ok(t)
    }

    /// Residual of the rotation and compatibility conditions at `m` legs,
    /// in normal form; zero for a genuine trace.
    pub fn defect(&self, m: usize) -> Result<Vec<DVec>> {
        let t = self.get(m)?;
        let mu = m as u16;
        let mut out = Vec::new();
        if m < 2 {
            out.push(t.clone());
            return Ok(out);
        }
        let rot = relabel_vec(t, |c| (c + 1) % mu);
        out.push(crate::jacobi::normal_form(&t.sub(&rot)?)?);
        if m >= 3 {
            let prev = self.get(m - 1)?;
            for i in 0..mu - 1 {
                let mut r = t.sub(&relabel_vec(t, swap_colors(i, mu)))?;
                for (d, c) in prev.terms() {
                    r.add_term(glue_y(d, i), -c.clone());
                }
                out.push(crate::jacobi::normal_form(&r)?);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(2, 2).len(), 6);
        assert_eq!(shuffles(0, 3).len(), 1);
    }

    #[test]
    fn glued_vertex_has_the_expected_legs() {
        let s = Diagram::strut(Anchor::Color(0), Anchor::Color(1));
        let y = glue_y(&s, 0);
        assert_eq!(y.num_tri(), 1);
        let mut colors: Vec<Anchor> = y.legs.clone();
        colors.sort();
        assert_eq!(colors, vec![Anchor::Color(0), Anchor::Color(1), Anchor::Color(2)]);
    }
}
