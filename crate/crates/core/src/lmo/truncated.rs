//! The degree-truncated vacuum algebra at level `n`: vacuum diagrams
//! without dashed loops, modulo AS and IHX and modulo degree above `n`, with
//! the disjoint union as product. Loops are evaluated at `-2n`.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::jacobi::ops::{coproduct, disjoint_product, Tensor2};
use crate::jacobi::{normal_form, Context, DVec, Diagram};
use crate::Q;

/// An element of the truncated algebra at level `n`. The vector's degree
/// bound records how far the value is known; it equals `n` when complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedInvariant {
    pub n: usize,
    pub value: DVec,
}

impl TruncatedInvariant {
    /// The unit at level `n`.
    pub fn one(n: usize) -> Self {
        TruncatedInvariant { n, value: DVec::one(Context::vacuum(), n) }
    }

    /// Wraps a loop-free vacuum vector, reducing it to normal form.
    pub fn new(n: usize, value: &DVec) -> Result<Self> {
        if value.ctx != Context::vacuum() {
            return Err(Error::InvalidArgument("truncated invariants live on the vacuum context".into()));
        }
        if value.terms().any(|(d, _)| d.loops > 0) {
            return Err(Error::InvalidArgument("truncated invariants carry no dashed loops".into()));
        }
        let v = normal_form(&value.truncated(n.min(value.max_deg)))?;
        Ok(TruncatedInvariant { n, value: v })
    }

    /// Largest degree up to which the value is known.
    pub fn known_degree(&self) -> usize {
        self.value.max_deg
    }

    /// Whether every degree up to `n` is known.
    pub fn is_complete(&self) -> bool {
        self.value.max_deg >= self.n
    }

    /// The degree-zero scalar.
    pub fn epsilon(&self) -> Q {
        self.value.constant()
    }

    /// The homogeneous part of degree `k`.
    pub fn part(&self, k: usize) -> DVec {
        self.value.part(k)
    }

    /// Product in the truncated algebra.
    pub fn mul(&self, other: &TruncatedInvariant) -> Result<TruncatedInvariant> {
        if self.n != other.n {
            return Err(Error::InvalidArgument("levels differ".into()));
        }
        let p = disjoint_product(&self.value, &other.value)?;
        Ok(TruncatedInvariant { n: self.n, value: normal_form(&p)? })
    }

    /// Multiplicative inverse by the finite geometric series.
    pub fn inverse(&self) -> Result<TruncatedInvariant> {
        let e = self.epsilon();
        if e.is_zero() {
            return Err(Error::InvalidArgument("element with zero degree-zero part is not invertible".into()));
        }
        let one = DVec::one(Context::vacuum(), self.value.max_deg);
        let u = self.value.scale(&(Q::one() / &e)).sub(&one)?;
        let mut acc = one.clone();
        let mut pow = one;
        for k in 1..=self.value.max_deg {
            pow = normal_form(&disjoint_product(&pow, &u)?)?;
            let sign = if k % 2 == 1 { -Q::one() } else { Q::one() };
            acc.axpy(&sign, &pow)?;
        }
        Ok(TruncatedInvariant { n: self.n, value: normal_form(&acc.scale(&(Q::one() / e)))? })
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, k: i64) -> Result<TruncatedInvariant> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = TruncatedInvariant { n: self.n, value: DVec::one(Context::vacuum(), self.value.max_deg) };
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Projection to a lower level by truncating degrees.
    pub fn project(&self, m: usize) -> Result<TruncatedInvariant> {
        if m > self.n {
            return Err(Error::InvalidArgument(format!("cannot project level {} to level {m}", self.n)));
        }
        Ok(TruncatedInvariant { n: m, value: self.value.truncated(m) })
    }
}

/// Evaluates dashed loops at `-2n`, truncates to degree `n` and reduces.
pub fn to_e(x: &DVec, n: usize) -> Result<TruncatedInvariant> {
    if x.ctx != Context::vacuum() {
        return Err(Error::InvalidArgument("expected a vacuum vector".into()));
    }
    let bound = n.min(x.max_deg);
    let mut out = DVec::zero(Context::vacuum(), bound);
    let minus_2n = Q::from_integer((-2 * n as i64).into());
    for (d, c) in x.terms() {
        let mut coef = c.clone();
        for _ in 0..d.loops {
            coef *= &minus_2n;
        }
        out.add_term(Diagram { loops: 0, ..d.clone() }, coef);
    }
    Ok(TruncatedInvariant { n, value: normal_form(&out)? })
}

/// Element of `e(p) ⊗ e(q)` as a sum of pairs of normal-form diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPair {
    pub left_level: usize,
    pub right_level: usize,
    pub terms: Tensor2,
}

impl TruncatedPair {
    /// `a ⊗ b`.
    pub fn outer(a: &TruncatedInvariant, b: &TruncatedInvariant) -> TruncatedPair {
        let mut terms = Tensor2::new();
        for (x, cx) in a.value.terms() {
            for (y, cy) in b.value.terms() {
                crate::jacobi::ops::tensor2_add(&mut terms, x.clone(), y.clone(), cx * cy);
            }
        }
        TruncatedPair { left_level: a.n, right_level: b.n, terms }
    }
}

/// Component-splitting coproduct at level `n`, followed by the truncations
/// to levels `p` and `n - p`.
pub fn delta_e(x: &TruncatedInvariant, p: usize) -> Result<TruncatedPair> {
    if p == 0 || p >= x.n {
        return Err(Error::InvalidArgument(format!("split level {p} must lie in 1..{}", x.n)));
    }
    let q = x.n - p;
    let mut terms = Tensor2::new();
    for ((l, r), c) in coproduct(&x.value)? {
        if l.degree() <= p && r.degree() <= q {
            crate::jacobi::ops::tensor2_add(&mut terms, l, r, c);
        }
    }
    Ok(TruncatedPair { left_level: p, right_level: q, terms })
}

/// Applies the degree-zero scalar on the left factor.
pub fn counit_left(t: &TruncatedPair) -> TruncatedInvariant {
    let mut v = DVec::zero(Context::vacuum(), t.right_level);
    for ((l, r), c) in &t.terms {
        if l.partner.is_empty() && l.loops == 0 {
            v.add_term(r.clone(), c.clone());
        }
    }
    TruncatedInvariant { n: t.right_level, value: v }
}
