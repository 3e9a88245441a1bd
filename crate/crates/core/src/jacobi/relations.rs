//! Local relations: STU resolution of a vertex next to the skeleton, vertex
//! reversal and the IHX move, each acting on single diagrams.
//!
//! Conventions. A vertex whose cyclic order is `(a, x, y)` with `a` attached
//! to the skeleton equals `T - U`, where `T` attaches `x` then `y` at that
//! point (in the direction of the skeleton orientation) and `U` attaches `y`
//! then `x`. Reversing the cyclic order of a vertex changes the sign. For an
//! edge joining vertices `(e, A, B)` and `(e', C, R)` the three diagrams
//! obtained by cyclically permuting `A, B, C` sum to zero.

use num::One;

use super::diagram::{Anchor, Diagram, End};
use crate::Q;

/// Replaces leg `i` (which must meet a vertex) by its two STU resolutions.
/// Returns `(T, U)`; the vertex diagram equals `T - U`.
pub fn stu_pair(d: &Diagram, i: usize) -> Option<(Diagram, Diagram)> {
    let End::Slot(v, s) = d.end(d.mate(i)) else { return None };
    let x = d.mate(d.slot(v, (s + 1) % 3));
    let y = d.mate(d.slot(v, (s + 2) % 3));
    let vbase = d.slot(v, 0);
    if (vbase..vbase + 3).contains(&x) {
        return None;
    }
    let build = |first_x: bool| -> Diagram {
        let n = d.partner.len();
        let (nx, ny) = (n, n + 1);
        let mut legs = Vec::with_capacity(d.legs.len() + 1);
        let mut leg_ends = Vec::with_capacity(d.legs.len() + 1);
        for (j, &a) in d.legs.iter().enumerate() {
            if j == i {
                let (p, q) = if first_x { (nx, ny) } else { (ny, nx) };
                legs.push(a);
                leg_ends.push(p);
                legs.push(a);
                leg_ends.push(q);
            } else {
                legs.push(a);
                leg_ends.push(j);
            }
        }
        let tris: Vec<[usize; 3]> = (0..d.num_tri())
            .filter(|&u| u != v)
            .map(|u| [d.slot(u, 0), d.slot(u, 1), d.slot(u, 2)])
            .collect();
        let skip = |e: usize| e == i || (vbase..vbase + 3).contains(&e);
        let mut pairs: Vec<(usize, usize)> = (0..n).filter(|&e| e < d.mate(e) && !skip(e) && !skip(d.mate(e))).map(|e| (e, d.mate(e))).collect();
        pairs.push((nx, x));
        pairs.push((ny, y));
        Diagram::assemble(legs, &leg_ends, &tris, &pairs, d.loops)
    };
    Some((build(true), build(false)))
}

/// Rewires stub ends: stub `stubs[k]` receives the original far end of
/// `stubs[perm[k]]`. Far ends that are themselves stubs are followed through
/// the permutation so the local picture is preserved.
pub fn rewire(d: &Diagram, stubs: &[usize], perm: &[usize]) -> Diagram {
    let mut partner = d.partner.clone();
    let idx = |e: usize| stubs.iter().position(|&s| s == e);
    let inv: Vec<usize> = {
        let mut v = vec![0; perm.len()];
        for (k, &p) in perm.iter().enumerate() {
            v[p] = k;
        }
        v
    };
    for k in 0..stubs.len() {
        let far = d.mate(stubs[perm[k]]);
        let target = match idx(far) {
            Some(j) => stubs[inv[j]],
            None => far,
        };
        partner[stubs[k]] = target as u32;
        partner[target] = stubs[k] as u32;
    }
    Diagram { legs: d.legs.clone(), partner, loops: d.loops }
}

/// The AS partner of vertex `v`: the same diagram with slots 1 and 2 swapped.
pub fn flip_vertex(d: &Diagram, v: usize) -> Diagram {
    rewire(d, &[d.slot(v, 1), d.slot(v, 2)], &[1, 0])
}

/// The three IHX terms for the edge leaving slot `s` of vertex `u`, or
/// `None` when the edge is not an internal edge between distinct vertices.
/// The terms sum to zero.
pub fn ihx_terms(d: &Diagram, u: usize, s: usize) -> Option<[Diagram; 3]> {
    let e = d.slot(u, s);
    let End::Slot(w, t) = d.end(d.mate(e)) else { return None };
    if w == u {
        return None;
    }
    let stubs = [
        d.slot(u, (s + 1) % 3),
        d.slot(u, (s + 2) % 3),
        d.slot(w, (t + 1) % 3),
        d.slot(w, (t + 2) % 3),
    ];
    // Stubs hold A, B, C, R; the terms place (A,B,C), (B,C,A), (C,A,B).
    let d2 = rewire(d, &stubs, &[1, 2, 0, 3]);
    let d3 = rewire(d, &stubs, &[2, 0, 1, 3]);
    Some([d.clone(), d2, d3])
}

/// The single-vertex diagram-level STU relation `Y - T + U` as signed terms.
pub fn stu_relation(d: &Diagram, i: usize) -> Option<Vec<(Diagram, Q)>> {
    let (t, u) = stu_pair(d, i)?;
    Some(vec![(d.clone(), Q::one()), (t, -Q::one()), (u, Q::one())])
}

/// Whether leg `i` sits on the skeleton (segment or circle).
pub fn on_skeleton(a: Anchor) -> bool {
    !a.is_color()
}
