//! Finite rational combinations of canonical diagrams in a fixed context.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::diagram::{canonical, Anchor, Diagram};
use crate::brauer::OrientedBrauer;
use crate::error::{Error, Result};
use crate::Q;

/// The space a diagram lives in: a skeleton, a number of labeled circles and
/// a number of free colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context {
    pub skeleton: OrientedBrauer,
    pub circles: u16,
    pub colors: u16,
}

impl Context {
    /// Context with no skeleton, `circles` circles and no colors.
    pub fn circles(circles: u16) -> Self {
        Context { skeleton: OrientedBrauer::empty(), circles, colors: 0 }
    }

    /// Context with only free colors.
    pub fn colors(colors: u16) -> Self {
        Context { skeleton: OrientedBrauer::empty(), circles: 0, colors }
    }

    /// The vacuum context.
    pub fn vacuum() -> Self {
        Self::circles(0)
    }

    /// Context on a skeleton without circles or colors.
    pub fn skeleton(skeleton: OrientedBrauer) -> Self {
        Context { skeleton, circles: 0, colors: 0 }
    }

    /// Whether `d` is a well-formed diagram in this context.
    pub fn admits(&self, d: &Diagram) -> bool {
        let nseg = self.skeleton.num_components();
        d.legs.iter().all(|a| match *a {
            Anchor::Seg(i) => (i as usize) < nseg,
            Anchor::Circ(i) => i < self.circles,
            Anchor::Color(i) => i < self.colors,
        })
    }
}

/// A truncated rational combination of diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DVec {
    pub ctx: Context,
    /// Terms of degree above this bound are dropped.
    pub max_deg: usize,
    terms: BTreeMap<Diagram, Q>,
}

impl DVec {
    /// The zero vector.
    pub fn zero(ctx: Context, max_deg: usize) -> Self {
        DVec { ctx, max_deg, terms: BTreeMap::new() }
    }

    /// The unit: the empty diagram with coefficient one.
    pub fn one(ctx: Context, max_deg: usize) -> Self {
        Self::from_diagram(ctx, max_deg, Diagram::empty(), Q::one())
    }

    /// A single diagram with a coefficient.
    pub fn from_diagram(ctx: Context, max_deg: usize, d: Diagram, c: Q) -> Self {
        let mut v = Self::zero(ctx, max_deg);
        v.add_term(d, c);
        v
    }

    /// Adds `c · d`, canonicalizing `d`; tadpoles and over-degree terms are dropped.
    pub fn add_term(&mut self, d: Diagram, c: Q) {
        if c.is_zero() || d.degree() > self.max_deg || d.has_tadpole() {
            return;
        }
        debug_assert!(self.ctx.admits(&d), "diagram outside its context");
        self.add_canonical(canonical(&d), c);
    }

    /// Adds `c · d` where `d` is already canonical.
    pub fn add_canonical(&mut self, d: Diagram, c: Q) {
        if c.is_zero() || d.degree() > self.max_deg {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(d) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Iterates over terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Q)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Whether the vector is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`DVec::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Coefficient of a canonical diagram.
    pub fn coeff(&self, d: &Diagram) -> Q {
        self.terms.get(d).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient of the empty diagram.
    pub fn constant(&self) -> Q {
        self.coeff(&Diagram::empty())
    }

    /// Checks that `other` lives in the same context.
    pub fn check_same(&self, other: &DVec) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::BoundaryMismatch("vectors live in different contexts".into()));
        }
        Ok(())
    }

    /// `self + other`, truncated to the smaller bound.
    pub fn add(&self, other: &DVec) -> Result<DVec> {
        self.check_same(other)?;
        let mut out = self.truncated(self.max_deg.min(other.max_deg));
        for (d, c) in &other.terms {
            out.add_canonical(d.clone(), c.clone());
        }
        Ok(out)
    }

    /// `self - other`.
    pub fn sub(&self, other: &DVec) -> Result<DVec> {
        self.add(&other.scale(&-Q::one()))
    }

    /// `c · self`.
    pub fn scale(&self, c: &Q) -> DVec {
        let mut out = DVec::zero(self.ctx.clone(), self.max_deg);
        if c.is_zero() {
            return out;
        }
        for (d, x) in &self.terms {
            out.terms.insert(d.clone(), x * c);
        }
        out
    }

    /// Adds `c · other` in place.
    pub fn axpy(&mut self, c: &Q, other: &DVec) -> Result<()> {
        self.check_same(other)?;
        self.max_deg = self.max_deg.min(other.max_deg);
        self.terms.retain(|d, _| d.degree() <= other.max_deg);
        for (d, x) in &other.terms {
            self.add_canonical(d.clone(), x * c);
        }
        Ok(())
    }

    /// Drops terms of degree above `n` and lowers the bound to `n`.
    pub fn truncated(&self, n: usize) -> DVec {
        let n = n.min(self.max_deg);
        let terms = self.terms.iter().filter(|(d, _)| d.degree() <= n).map(|(d, c)| (d.clone(), c.clone())).collect();
        DVec { ctx: self.ctx.clone(), max_deg: n, terms }
    }

    /// The homogeneous part of degree `k`.
    pub fn part(&self, k: usize) -> DVec {
        let terms = self.terms.iter().filter(|(d, _)| d.degree() == k).map(|(d, c)| (d.clone(), c.clone())).collect();
        DVec { ctx: self.ctx.clone(), max_deg: self.max_deg, terms }
    }

    /// Largest degree present, if any.
    pub fn top_degree(&self) -> Option<usize> {
        self.terms.keys().map(|d| d.degree()).max()
    }

    /// Applies a linear map defined on diagrams.
    pub fn map_linear<F>(&self, ctx: Context, max_deg: usize, mut f: F) -> Result<DVec>
    where
        F: FnMut(&Diagram, &Q, &mut DVec) -> Result<()>,
    {
        let mut out = DVec::zero(ctx, max_deg);
        for (d, c) in &self.terms {
            f(d, c, &mut out)?;
        }
        Ok(out)
    }

    /// Replaces the context (used when a computation changes only labels).
    pub fn with_context(mut self, ctx: Context) -> DVec {
        self.ctx = ctx;
        self
    }

    /// Raw insertion bypassing canonicalization; `d` must be canonical.
    pub(crate) fn insert_raw(&mut self, d: Diagram, c: Q) {
        self.add_canonical(d, c);
    }

    /// Terms as `(encoding, "p/q")` pairs in canonical order.
    pub fn encoded_terms(&self) -> Vec<(String, String)> {
        self.terms.iter().map(|(d, c)| (d.encode(), format_q(c))).collect()
    }
}

/// Renders a rational as `p/q` with `q > 0`, or `p` when `q = 1`.
pub fn format_q(c: &Q) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for DVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(d, c)| format!("({})[{}]", format_q(c), d.encode())).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Rational from a pair of integers.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}
