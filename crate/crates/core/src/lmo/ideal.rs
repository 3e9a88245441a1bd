//! The ideal of vacuum diagrams obtained by gluing an arbitrary diagram with
//! `2k` colored legs to the sum of all perfect strut matchings of those
//! colors. Spans are built degree by degree, with loop multiples up to a
//! fixed power, for membership checks.

use std::collections::HashMap;

use num::One;

use crate::error::{Error, Result};
use crate::jacobi::build::{Builder, LegFate};
use crate::jacobi::enumerate::connected_free;
use crate::jacobi::linalg::{Echelon, SparseVec};
use crate::jacobi::ops::pair_legs;
use crate::jacobi::{normal_form, Anchor, Context, DVec, Diagram};
use crate::partitions::{enumerate_fpfi, enumerate_partitions, Partition};
use crate::Q;

/// Sum over all perfect matchings of the colors `0..2k` of the product of
/// the matching struts.
pub fn strut_matchings(k: usize) -> DVec {
    let m = 2 * k;
    let mut out = DVec::zero(Context::colors(m as u16), k);
    for inv in enumerate_fpfi(m) {
        let legs: Vec<Anchor> = (0..m as u16).map(Anchor::Color).collect();
        let partner: Vec<u32> = (0..m).map(|i| inv.apply(i) as u32).collect();
        out.add_term(Diagram { legs, partner, loops: 0 }, Q::one());
    }
    out
}

/// Compositions of `total` into `parts` nonnegative summands.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Loop-free vacuum diagrams with `ntri` vertices, as products of connected
/// ones in nondecreasing vertex count.
fn vacuum_products(ntri: usize, min_part: usize) -> Result<Vec<Vec<Diagram>>> {
    if ntri == 0 {
        return Ok(vec![vec![]]);
    }
    let mut out = Vec::new();
    for first in (min_part.max(2)..=ntri).filter(|t| t % 2 == 0) {
        let heads = connected_free(&[], first)?;
        for rest in vacuum_products(ntri - first, first)? {
            for h in &heads {
                let mut v = vec![h.clone()];
                v.extend(rest.iter().cloned());
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// All loop-free diagrams with one leg of each color `0..m` and `ntri`
/// vertices, built as disjoint unions of connected pieces.
pub fn colored_generators(m: usize, ntri: usize) -> Result<Vec<Diagram>> {
    let mut out = Vec::new();
    for blocks in enumerate_partitions(m).iter().map(Partition::blocks) {
        for split in compositions(ntri, blocks.len() + 1) {
            let mut choices: Vec<Vec<Diagram>> = Vec::with_capacity(blocks.len());
            for (b, &t) in blocks.iter().zip(&split) {
                let cols: Vec<u16> = b.iter().map(|&c| c as u16).collect();
                choices.push(connected_free(&cols, t)?);
            }
            if choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            for vac in vacuum_products(split[blocks.len()], 2)? {
                let mut pick = vec![0usize; choices.len()];
                loop {
                    let mut bld = Builder::new();
                    let mut key = 0u64;
                    for (c, &p) in choices.iter().zip(&pick) {
                        let d = &c[p];
                        bld.add(d, |i| LegFate::Keep(d.legs[i], key + i as u64));
                        key += 1 << 20;
                    }
                    for d in &vac {
                        bld.add(d, |_| LegFate::Skip);
                    }
                    out.push(bld.finish());
                    let mut s = 0;
                    while s < pick.len() {
                        pick[s] += 1;
                        if pick[s] < choices[s].len() {
                            break;
                        }
                        pick[s] = 0;
                        s += 1;
                    }
                    if s == pick.len() {
                        break;
                    }
                }
            }
        }
    }
    Ok(out)
}

fn with_loops(v: &DVec, j: u32) -> DVec {
    let mut out = DVec::zero(v.ctx.clone(), v.max_deg);
    for (d, c) in v.terms() {
        out.add_canonical(Diagram { loops: d.loops + j, ..d.clone() }, c.clone());
    }
    out
}

/// The degree-`d` part of the ideal generated by gluing to the matchings of
/// `2k` colors, spanned by loop multiples up to `X^loop_bound`.
#[derive(Debug, Clone)]
pub struct IdealSpan {
    pub k: usize,
    pub degree: usize,
    pub loop_bound: u32,
    index: HashMap<Diagram, usize>,
    span: Echelon,
}

impl IdealSpan {
    /// Builds the span.
    pub fn build(k: usize, degree: usize, loop_bound: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("the ideal needs at least two colors".into()));
        }
        let sigma = strut_matchings(k);
        let mut s = IdealSpan { k, degree, loop_bound, index: HashMap::new(), span: Echelon::new() };
        let ctx = Context::colors((2 * k) as u16);
        let xdeg = degree + k;
        for x in colored_generators(2 * k, 2 * degree)? {
            let xv = DVec::from_diagram(ctx.clone(), xdeg, x, Q::one());
            let g = normal_form(&pair_legs(&xv, &sigma)?)?;
            for j in 0..=loop_bound {
                let row = s.coordinates(&with_loops(&g, j));
                s.span.insert(row);
            }
        }
        Ok(s)
    }

    fn coordinates(&mut self, v: &DVec) -> SparseVec {
        let mut row = SparseVec::new();
        for (d, c) in v.terms() {
            let next = self.index.len();
            let i = *self.index.entry(d.clone()).or_insert(next);
            row.insert(i, c.clone());
        }
        row
    }

    /// Rank of the span.
    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    /// Whether a vacuum vector lies in the span.
    pub fn contains(&self, v: &DVec) -> Result<bool> {
        let mut row = SparseVec::new();
        for (d, c) in normal_form(v)?.terms() {
            match self.index.get(d) {
                Some(&i) => {
                    row.insert(i, c.clone());
                }
                None => return Ok(false),
            }
        }
        self.span.reduce(&mut row);
        Ok(row.is_empty())
    }
}
