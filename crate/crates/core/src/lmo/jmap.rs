//! Closing circles with a trace: every circle carrying `m` legs is replaced
//! by the trace member with `m` legs, glued in the cyclic order of the
//! circle. The result lives on the empty skeleton and may contain dashed
//! loops.

use num::{One, Zero};

use super::trace::{trace_lmo, DiagrammaticTrace, MAX_TRACE_LEGS};
use crate::error::{Error, Result};
use crate::jacobi::build::{Builder, LegFate};
use crate::jacobi::{Anchor, Context, DVec, Diagram};
use crate::Q;

/// How the level-`n` map is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JMode {
    /// Glue the divided `n`-th power of the trace directly.
    Direct,
    /// Split every circle into `n` circles, glue the trace itself and divide
    /// by `(n!)^k`.
    ViaSplitting,
}

fn check_circles_only(x: &DVec) -> Result<u16> {
    if x.ctx.skeleton.num_components() > 0 || x.ctx.colors > 0 {
        return Err(Error::InvalidArgument("closing circles needs a circles-only context".into()));
    }
    Ok(x.ctx.circles)
}

/// Largest number of legs on a single circle over all terms.
pub fn max_circle_legs(x: &DVec) -> usize {
    let k = x.ctx.circles as usize;
    x.terms()
        .map(|(d, _)| {
            let mut count = vec![0usize; k];
            for a in &d.legs {
                if let Anchor::Circ(s) = a {
                    count[*s as usize] += 1;
                }
            }
            count.into_iter().max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// Replaces every circle by the trace member with as many legs.
///
/// The output degree bound is lowered by `k (c - d)` for a trace of bidegree
/// `(c, d)` on `k` circles, which is exact on homogeneous terms.
pub fn j_trace(x: &DVec, t: &DiagrammaticTrace) -> Result<DVec> {
    let k = check_circles_only(x)? as usize;
    let (c, d) = t.bidegree;
    let shift = k * c.saturating_sub(d);
    if x.max_deg < shift {
        return Err(Error::Budget(format!("degree bound {} below the shift {shift}", x.max_deg)));
    }
    let mut out = DVec::zero(Context::vacuum(), x.max_deg - shift);
    for (dg, cd) in x.terms() {
        let mut positions: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (i, a) in dg.legs.iter().enumerate() {
            if let Anchor::Circ(s) = a {
                positions[*s as usize].push(i);
            }
        }
        let mut members = Vec::with_capacity(k);
        for p in &positions {
            members.push(t.get(p.len())?);
        }
        if members.iter().any(|m| m.is_zero()) {
            continue;
        }
        let lists: Vec<Vec<(&Diagram, &Q)>> = members.iter().map(|m| m.terms().collect()).collect();
        let mut choice = vec![0usize; k];
        loop {
            let mut coef = cd.clone();
            let mut bld = Builder::new();
            let slot_of = |i: usize| -> Option<(usize, usize)> {
                match dg.legs[i] {
                    Anchor::Circ(s) => Some((s as usize, positions[s as usize].iter().position(|&j| j == i).unwrap())),
                    _ => None,
                }
            };
            bld.add(dg, |i| match slot_of(i) {
                Some((s, j)) => LegFate::Glue(tag(s, j)),
                None => LegFate::Keep(dg.legs[i], i as u64),
            });
            for s in 0..k {
                let (td, tc) = lists[s][choice[s]];
                coef *= tc;
                bld.add(td, |i| match td.legs[i] {
                    Anchor::Color(col) => LegFate::Glue(tag(s, col as usize)),
                    other => LegFate::Keep(other, (1 << 40) + i as u64),
                });
            }
            out.add_term(bld.finish(), coef);
            // Advance the mixed-radix counter.
            let mut s = 0;
            while s < k {
                choice[s] += 1;
                if choice[s] < lists[s].len() {
                    break;
                }
                choice[s] = 0;
                s += 1;
            }
            if s == k {
                break;
            }
        }
    }
    Ok(out)
}

fn tag(s: usize, j: usize) -> u64 {
    ((s as u64) << 20) | j as u64
}

/// Splits every circle into `n` circles: each leg of circle `s` moves to one
/// of the circles `s·n .. s·n + n`, keeping the induced cyclic order. All
/// assignments are summed.
pub fn split_circles(x: &DVec, n: usize) -> Result<DVec> {
    let k = check_circles_only(x)? as usize;
    let ctx = Context::circles((k * n) as u16);
    let mut out = DVec::zero(ctx, x.max_deg);
    for (d, c) in x.terms() {
        let circ: Vec<usize> = (0..d.legs.len()).filter(|&i| matches!(d.legs[i], Anchor::Circ(_))).collect();
        let total = (n as u64).checked_pow(circ.len() as u32).filter(|&t| t <= 1 << 22);
        let Some(total) = total else {
            return Err(Error::Budget("too many legs to split".into()));
        };
        for code in 0..total {
            let mut assign = vec![0usize; d.legs.len()];
            let mut r = code;
            for &i in &circ {
                assign[i] = (r % n as u64) as usize;
                r /= n as u64;
            }
            let mut bld = Builder::new();
            bld.add(d, |i| match d.legs[i] {
                Anchor::Circ(s) => LegFate::Keep(Anchor::Circ((s as usize * n + assign[i]) as u16), i as u64),
                other => LegFate::Keep(other, i as u64),
            });
            out.add_term(bld.finish(), c.clone());
        }
    }
    Ok(out)
}

/// The level-`n` map built on the tree-valued trace, in either mode. It is
/// normalized so that `r` parallel chords on one circle map to
/// `X (X + 2) ... (X + 2(r - 1))` at level `r`.
pub fn j_n(x: &DVec, n: usize, mode: JMode) -> Result<DVec> {
    if n == 0 {
        return Err(Error::InvalidArgument("the level starts at one".into()));
    }
    let k = check_circles_only(x)?;
    let m = max_circle_legs(x);
    match mode {
        JMode::Direct => {
            // The power trace with m legs uses trees with at most m - 2(n-1) legs.
            let need = m.saturating_sub(2 * (n - 1)).max(2);
            if need > MAX_TRACE_LEGS {
                return Err(Error::Budget(format!("trace members with {need} legs")));
            }
            let base = trace_lmo(need.clamp(super::trace::DEFAULT_TRACE_LEGS, MAX_TRACE_LEGS))?;
            let mut t = base.divided_power(n)?;
            truncate_family(&mut t, m);
            if t.max_legs() < m {
                return Err(Error::Budget(format!("trace members with {m} legs")));
            }
            j_trace(x, &t)
        }
        JMode::ViaSplitting => {
            let need = m.max(2);
            if need > MAX_TRACE_LEGS {
                return Err(Error::Budget(format!("trace members with {need} legs")));
            }
            let base = trace_lmo(need.clamp(super::trace::DEFAULT_TRACE_LEGS, MAX_TRACE_LEGS))?;
            let split = split_circles(x, n)?;
            let raw = j_trace(&split, &base)?;
            let mut fact = Q::one();
            for i in 1..=n {
                fact *= Q::from_integer((i as i64).into());
            }
            let mut denom = Q::one();
            for _ in 0..k {
                denom *= &fact;
            }
            Ok(raw.scale(&(Q::one() / denom)))
        }
    }
}

fn truncate_family(t: &mut DiagrammaticTrace, m: usize) {
    if t.family.len() > m + 1 {
        t.family.truncate(m + 1);
    }
}

/// The circle carrying `r` parallel chords, nested so that no two cross.
pub fn theta(r: usize, max_deg: usize) -> DVec {
    let legs = vec![Anchor::Circ(0); 2 * r];
    let mut partner = vec![0u32; 2 * r];
    for i in 0..r {
        partner[i] = (2 * r - 1 - i) as u32;
        partner[2 * r - 1 - i] = i as u32;
    }
    DVec::from_diagram(Context::circles(1), max_deg, Diagram { legs, partner, loops: 0 }, Q::one())
}

/// `X (X + 2) ... (X + 2(r - 1))` as a vacuum vector of loop diagrams.
pub fn loop_falling_product(r: usize) -> DVec {
    // Coefficients of the polynomial in X, lowest degree first.
    let mut poly = vec![Q::one()];
    for i in 0..r {
        let a = Q::from_integer((2 * i as i64).into());
        let mut next = vec![Q::zero(); poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j + 1] += c;
            next[j] += c * &a;
        }
        poly = next;
    }
    let mut out = DVec::zero(Context::vacuum(), 0);
    for (j, c) in poly.into_iter().enumerate() {
        out.add_term(Diagram::loops(j as u32), c);
    }
    out
}
