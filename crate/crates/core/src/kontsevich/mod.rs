//! A degree-truncated Kontsevich integral of tangle programs.
//!
//! Crossings evaluate to the crossing skeleton times `exp(±chord/2)`. Every
//! word is read with the right-comb parenthesization; before a generator acts
//! on positions `i, i+1`, the word `(w_i (w_{i+1} R))` is rebracketed to
//! `((w_i w_{i+1}) R)` by the associator transported to these letters, and
//! back afterwards. Cups and caps carry the square root of `ν`, the inverse
//! of the value of the bare zig-zag.
//!
//! The associator is even, so up to degree three it is `1 + c·(A·B − B·A)`
//! with `A`, `B` the chords on strands `(0,1)` and `(1,2)` of three downward
//! strands and `A·B` meaning `A` below `B`. The constant `c` is solved from
//! the compatibility of a crossing with doubling, and the result is checked
//! against both such identities for both crossing signs and the pentagon.

pub mod algebra;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{One, Zero};

use crate::brauer::{OrientedBrauer, Sign, Word};
use crate::error::{Error, Result};
use crate::jacobi::nf::{normal_form, normal_form_with, NfCache};
use crate::jacobi::ops::{co_segment, compose, compose_all, cs_alpha_circle, dbl, identity, tensor};
use crate::jacobi::vector::{Context, DVec};
use crate::tangles::{Gen, TangleProgram};
use crate::Q;
use algebra::{between, chord, exp, inverse, mul, power, transport3};

/// Largest degree for which the associator is determined here.
pub const MAX_DEGREE: usize = 3;

/// A truncated even associator on three downward strands.
#[derive(Debug, Clone)]
pub struct Associator {
    /// Degree bound.
    pub n: usize,
    /// The associator itself.
    pub value: DVec,
    /// Coefficient of `A·B − B·A`.
    pub coefficient: Q,
}

/// The unknot normalization `ν` on one downward strand, with its inverse
/// and square roots.
#[derive(Debug, Clone)]
pub struct Nu {
    pub value: DVec,
    pub inverse: DVec,
    pub sqrt: DVec,
    pub inv_sqrt: DVec,
}

const DOWN3: [Sign; 3] = [Sign::Plus, Sign::Plus, Sign::Plus];

fn commutator_ab(n: usize) -> Result<DVec> {
    let a = chord(&DOWN3, 0, 1, n);
    let b = chord(&DOWN3, 1, 2, n);
    mul(&a, &b)?.sub(&mul(&b, &a)?)
}

fn even_associator(n: usize, c: &Q) -> Result<DVec> {
    let one = identity(&DOWN3, n);
    one.add(&commutator_ab(n)?.scale(c))
}

/// Evaluation machinery for a fixed associator and cup/cap factor.
struct Evaluator {
    n: usize,
    phi: DVec,
    phi_inv: DVec,
    half: DVec,
    psi: Mutex<HashMap<(Word, usize, bool), DVec>>,
}

impl Evaluator {
    fn new(phi: DVec, half: DVec) -> Result<Self> {
        let phi_inv = inverse(&phi)?;
        Ok(Evaluator { n: phi.max_deg, phi, phi_inv, half, psi: Mutex::new(HashMap::new()) })
    }

    /// Rebracketing `(w_i (w_{i+1} R)) -> ((w_i w_{i+1}) R)` on `w`, or its
    /// inverse.
    fn psi(&self, w: &[Sign], i: usize, inv: bool) -> Result<DVec> {
        if i + 2 >= w.len() {
            return Ok(identity(w, self.n));
        }
        let key = (w.to_vec(), i, inv);
        if let Some(v) = self.psi.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let base = if inv { &self.phi_inv } else { &self.phi };
        let t = transport3(base, [&w[i..i + 1], &w[i + 1..i + 2], &w[i + 2..]])?;
        let v = between(&w[..i], &t, &[]);
        self.psi.lock().expect("cache lock").insert(key, v.clone());
        Ok(v)
    }

    fn crossing(&self, a: Sign, b: Sign, positive: bool) -> Result<DVec> {
        let half = Q::new(if positive { 1.into() } else { (-1).into() }, 2.into());
        let e = exp(&chord(&[a, b], 0, 1, self.n).scale(&half))?;
        compose(&e, &DVec::one(Context::skeleton(OrientedBrauer::swap([a, b])), self.n))
    }

    fn half_on(&self, s: Sign) -> Result<DVec> {
        match s {
            Sign::Plus => Ok(self.half.clone()),
            Sign::Minus => co_segment(&self.half, 0),
        }
    }

    fn cup(&self, first: Sign) -> Result<DVec> {
        let c = DVec::one(Context::skeleton(OrientedBrauer::cup(first)), self.n);
        let h = tensor(&self.half_on(first)?, &identity(&[first.flip()], self.n));
        compose(&c, &h)
    }

    fn cap(&self, first: Sign) -> Result<DVec> {
        let c = DVec::one(Context::skeleton(OrientedBrauer::cap(first)), self.n);
        let h = tensor(&self.half_on(first)?, &identity(&[first.flip()], self.n));
        compose(&h, &c)
    }

    fn slice(&self, g: &Gen, w: &[Sign], next: &[Sign]) -> Result<DVec> {
        match *g {
            Gen::Cross { pos, positive } => {
                let x = between(&w[..pos], &self.crossing(w[pos], w[pos + 1], positive)?, &w[pos + 2..]);
                compose_all(&[self.psi(w, pos, false)?, x, self.psi(next, pos, true)?])
            }
            Gen::Cup { pos, first } => {
                let x = between(&w[..pos], &self.cup(first)?, &w[pos..]);
                compose(&x, &self.psi(next, pos, true)?)
            }
            Gen::Cap { pos, first } => {
                let x = between(&w[..pos], &self.cap(first)?, &w[pos + 2..]);
                compose(&self.psi(w, pos, false)?, &x)
            }
        }
    }

    fn eval(&self, t: &TangleProgram) -> Result<DVec> {
        let mut acc = identity(t.source(), self.n);
        let mut cache = NfCache::new();
        for (k, g) in t.gens().iter().enumerate() {
            let s = self.slice(g, &t.words()[k], &t.words()[k + 1])?;
            acc = compose(&acc, &s)?;
            if acc.len() > REDUCE_ABOVE {
                acc = normal_form_with(&acc, &mut cache)?;
            }
        }
        Ok(acc)
    }
}

const REDUCE_ABOVE: usize = 400;

/// Residuals of the two crossing/doubling identities for one crossing sign,
/// in normal form.
fn hexagon_residuals(ev: &Evaluator, positive: bool) -> Result<[DVec; 2]> {
    use Sign::Plus;
    let n = ev.n;
    let x = ev.crossing(Plus, Plus, positive)?;
    let cross = |pos| Gen::Cross { pos, positive };
    // Doubling the strand that starts on the right.
    let lhs1 = compose(&ev.eval(&TangleProgram::new(DOWN3.to_vec(), vec![cross(0), cross(1)])?)?, &ev.psi(&DOWN3, 0, false)?)?;
    let rhs1 = dbl(&x, &[1])?;
    // Doubling the strand that starts on the left.
    let lhs2 = compose(&ev.psi(&DOWN3, 0, true)?, &ev.eval(&TangleProgram::new(DOWN3.to_vec(), vec![cross(1), cross(0)])?)?)?;
    let rhs2 = dbl(&x, &[0])?;
    debug_assert_eq!(lhs1.max_deg, n);
    Ok([normal_form(&lhs1.sub(&rhs1)?)?, normal_form(&lhs2.sub(&rhs2)?)?])
}

/// Residual of the pentagon on four downward strands, in normal form.
fn pentagon_residual(phi: &DVec) -> Result<DVec> {
    use Sign::Plus;
    let one: &[Sign] = &[Plus];
    let two: &[Sign] = &[Plus, Plus];
    let w = [Plus; 4];
    let lhs = compose(&between(&[], &transport3(phi, [one, one, two])?, &[]), &transport3(phi, [two, one, one])?)?;
    let rhs = compose_all(&[
        between(one, &transport3(phi, [one, one, one])?, &[]),
        transport3(phi, [one, two, one])?,
        between(&[], phi, one),
    ])?;
    debug_assert_eq!(lhs.ctx.skeleton, OrientedBrauer::identity(&w));
    normal_form(&lhs.sub(&rhs)?)
}

/// Solves for the even associator up to degree `n`.
pub fn solve_associator(n: usize) -> Result<Associator> {
    if n > MAX_DEGREE {
        return Err(Error::Budget(format!("associator requested at degree {n}, supported up to {MAX_DEGREE}")));
    }
    let one_strand = identity(&[Sign::Plus], 2);
    let trial = |c: &Q| -> Result<Vec<DVec>> {
        let ev = Evaluator::new(even_associator(2, c)?, one_strand.clone())?;
        let [a, b] = hexagon_residuals(&ev, true)?;
        Ok(vec![a, b])
    };
    let r0 = trial(&Q::zero())?;
    let r1 = trial(&Q::one())?;
    let mut c: Option<Q> = None;
    for (a, b) in r0.iter().zip(&r1) {
        let slope = b.sub(a)?;
        for (d, s) in slope.terms() {
            let cand = -a.coeff(d) / s;
            match &c {
                None => c = Some(cand),
                Some(prev) if *prev != cand => {
                    return Err(Error::Inconsistent("associator coefficient is overdetermined".into()));
                }
                _ => {}
            }
        }
    }
    let c = c.ok_or_else(|| Error::Inconsistent("associator coefficient is undetermined".into()))?;
    let value = even_associator(n, &c)?;
    let assoc = Associator { n, value, coefficient: c };
    verify_associator(&assoc)?;
    Ok(assoc)
}

/// Checks both crossing/doubling identities for both signs and the pentagon.
pub fn verify_associator(a: &Associator) -> Result<()> {
    let ev = Evaluator::new(a.value.clone(), identity(&[Sign::Plus], a.n))?;
    for positive in [true, false] {
        for (k, r) in hexagon_residuals(&ev, positive)?.iter().enumerate() {
            if !r.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "hexagon {} for the {} crossing fails: {r}",
                    k + 1,
                    if positive { "positive" } else { "negative" }
                )));
            }
        }
    }
    let p = pentagon_residual(&a.value)?;
    if !p.is_zero() {
        return Err(Error::Inconsistent(format!("pentagon fails: {p}")));
    }
    Ok(())
}

/// The bare zig-zag `Id ⊗ cup`, rebracketing, `cap ⊗ Id` on one downward
/// strand, evaluated without cup/cap factors.
pub fn zigzag(a: &Associator, mirrored: bool) -> Result<DVec> {
    use Sign::{Minus, Plus};
    let ev = Evaluator::new(a.value.clone(), identity(&[Plus], a.n))?;
    let t = if mirrored {
        TangleProgram::new(vec![Plus], vec![Gen::Cup { pos: 0, first: Plus }, Gen::Cap { pos: 1, first: Minus }])?
    } else {
        TangleProgram::new(vec![Plus], vec![Gen::Cup { pos: 1, first: Minus }, Gen::Cap { pos: 0, first: Plus }])?
    };
    normal_form(&ev.eval(&t)?)
}

/// `ν` as the inverse of the zig-zag value, with its square roots.
pub fn compute_nu(a: &Associator) -> Result<Nu> {
    let inv = zigzag(a, false)?;
    let value = normal_form(&inverse(&inv)?)?;
    let half = Q::new(1.into(), 2.into());
    let sqrt = normal_form(&power(&value, &half)?)?;
    let inv_sqrt = normal_form(&power(&value, &-half)?)?;
    Ok(Nu { value, inverse: inv, sqrt, inv_sqrt })
}

/// The truncated integral with its associator and normalization.
pub struct Kontsevich {
    pub associator: Associator,
    pub nu: Nu,
    ev: Evaluator,
}

impl std::fmt::Debug for Kontsevich {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Kontsevich").field("n", &self.ev.n).field("associator", &self.associator).finish()
    }
}

impl Kontsevich {
    /// Solves the associator and `ν` up to degree `n`.
    pub fn new(n: usize) -> Result<Self> {
        let associator = solve_associator(n)?;
        let nu = compute_nu(&associator)?;
        let ev = Evaluator::new(associator.value.clone(), nu.sqrt.clone())?;
        Ok(Kontsevich { associator, nu, ev })
    }

    /// A process-wide instance for degree `n`.
    pub fn shared(n: usize) -> Result<Arc<Kontsevich>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Kontsevich>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(k) = cache.lock().expect("cache lock").get(&n) {
            return Ok(k.clone());
        }
        let k = Arc::new(Kontsevich::new(n)?);
        cache.lock().expect("cache lock").insert(n, k.clone());
        Ok(k)
    }

    /// Degree bound.
    pub fn degree(&self) -> usize {
        self.ev.n
    }

    /// The value of a program, in normal form.
    pub fn z_eval(&self, t: &TangleProgram) -> Result<DVec> {
        normal_form(&self.ev.eval(t)?)
    }

    /// The value of the slice `g` acting on `w`, including rebracketing.
    pub fn slice_value(&self, g: &Gen, w: &[Sign]) -> Result<DVec> {
        let next = g.apply(w)?;
        self.ev.slice(g, w, &next)
    }

    /// Rebracketing from the right comb on `w` to the bracketing that groups
    /// positions `i, i+1` as one letter.
    pub fn regroup(&self, w: &[Sign], i: usize) -> Result<DVec> {
        self.ev.psi(w, i, false)
    }

    /// Inserts `ν` into every circle.
    pub fn cs_nu(&self, x: &DVec) -> Result<DVec> {
        let mut v = x.clone();
        for s in 0..x.ctx.circles {
            v = cs_alpha_circle(&v, &self.nu.value, s)?;
        }
        normal_form(&v)
    }

    /// `cs^ν ∘ Z` of a closed program.
    pub fn normalized(&self, l: &TangleProgram) -> Result<DVec> {
        if !l.is_closed() {
            return Err(Error::InvalidArgument("normalized value needs a closed program".into()));
        }
        self.cs_nu(&self.z_eval(l)?)
    }
}
