//! Helpers for truncated algebras of diagrams on identity skeleta: chords,
//! products, power series and the transport of three-strand elements to
//! arbitrary words by doubling and orientation reversal.

use num::{One, Zero};

use crate::brauer::{OrientedBrauer, Sign};
use crate::error::{Error, Result};
use crate::jacobi::ops::{co_segment, compose, dbl, identity, tensor};
use crate::jacobi::vector::{Context, DVec};
use crate::jacobi::{Anchor, Diagram};
use crate::Q;

/// The chord between strands `i` and `j` of the identity on `w`.
pub fn chord(w: &[Sign], i: usize, j: usize, n: usize) -> DVec {
    let ctx = Context::skeleton(OrientedBrauer::identity(w));
    DVec::from_diagram(ctx, n, Diagram::strut(Anchor::Seg(i as u16), Anchor::Seg(j as u16)), Q::one())
}

/// Product in the algebra of an identity skeleton: `x` below, `y` above.
pub fn mul(x: &DVec, y: &DVec) -> Result<DVec> {
    compose(x, y)
}

/// `Σ_{k ≥ 0} coeffs[k] · u^k` for `u` without constant term.
pub fn series(u: &DVec, coeffs: &[Q]) -> Result<DVec> {
    if !u.constant().is_zero() {
        return Err(Error::InvalidArgument("series argument must have zero constant term".into()));
    }
    let mut out = DVec::zero(u.ctx.clone(), u.max_deg);
    let mut pow = DVec::one(u.ctx.clone(), u.max_deg);
    for (k, c) in coeffs.iter().enumerate() {
        if k > u.max_deg {
            break;
        }
        out.axpy(c, &pow)?;
        pow = mul(&pow, u)?;
    }
    Ok(out)
}

/// `exp(u)` truncated at the degree bound of `u`.
pub fn exp(u: &DVec) -> Result<DVec> {
    let mut coeffs = vec![Q::one()];
    for k in 1..=u.max_deg {
        let prev = coeffs[k - 1].clone();
        coeffs.push(prev / Q::from_integer((k as i64).into()));
    }
    series(u, &coeffs)
}

/// `x^alpha` for `x` with constant term one, by the binomial series.
pub fn power(x: &DVec, alpha: &Q) -> Result<DVec> {
    if !x.constant().is_one() {
        return Err(Error::InvalidArgument("power needs constant term one".into()));
    }
    let u = x.sub(&DVec::one(x.ctx.clone(), x.max_deg))?;
    let mut coeffs = vec![Q::one()];
    for k in 1..=x.max_deg {
        let kq = Q::from_integer((k as i64).into());
        let prev = coeffs[k - 1].clone();
        coeffs.push(prev * (alpha - (&kq - Q::one())) / kq);
    }
    series(&u, &coeffs)
}

/// Multiplicative inverse of an element with constant term one.
pub fn inverse(x: &DVec) -> Result<DVec> {
    power(x, &-Q::one())
}

/// `Id_left ⊗ x ⊗ Id_right`.
pub fn between(left: &[Sign], x: &DVec, right: &[Sign]) -> DVec {
    tensor(&tensor(&identity(left, x.max_deg), x), &identity(right, x.max_deg))
}

/// Transports an element on three downward strands to the word obtained by
/// replacing strand `k` with the group `groups[k]`: each strand is doubled
/// as often as needed and the upward strands are reversed. An empty group
/// kills every term with a leg on that strand.
pub fn transport3(x: &DVec, groups: [&[Sign]; 3]) -> Result<DVec> {
    let mut v = x.clone();
    for k in (0..3).rev() {
        let g = groups[k];
        if g.is_empty() {
            v = remove_strand(&v, k)?;
            continue;
        }
        for _ in 1..g.len() {
            v = dbl(&v, &[k])?;
        }
    }
    let word: Vec<Sign> = groups.iter().flat_map(|g| g.iter().copied()).collect();
    for (i, s) in word.iter().enumerate() {
        if *s == Sign::Minus {
            v = co_segment(&v, i)?;
        }
    }
    Ok(v)
}

/// Deletes strand `k` of an identity skeleton, keeping only the terms with
/// no leg on it.
pub fn remove_strand(x: &DVec, k: usize) -> Result<DVec> {
    let w = x.ctx.skeleton.source();
    if x.ctx.skeleton != OrientedBrauer::identity(&w) || k >= w.len() {
        return Err(Error::InvalidArgument("strand removal needs an identity skeleton".into()));
    }
    let mut nw = w.clone();
    nw.remove(k);
    let ctx = Context { skeleton: OrientedBrauer::identity(&nw), ..x.ctx.clone() };
    let mut out = DVec::zero(ctx, x.max_deg);
    for (d, c) in x.terms() {
        if d.legs.contains(&Anchor::Seg(k as u16)) {
            continue;
        }
        let mut e = d.clone();
        for a in e.legs.iter_mut() {
            if let Anchor::Seg(s) = a {
                if *s as usize > k {
                    *s -= 1;
                }
            }
        }
        out.add_term(e, c.clone());
    }
    Ok(out)
}
