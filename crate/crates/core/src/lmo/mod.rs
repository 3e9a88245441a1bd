//! Level-`n` invariants built from the tree-valued trace: closing circles,
//! reducing to the degree-truncated vacuum algebra, and normalizing by the
//! stabilization unknots.

pub mod ideal;
pub mod jmap;
pub mod trace;
pub mod truncated;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::jacobi::{Context, DVec};
use crate::kontsevich::Kontsevich;
use crate::tangles::linking::{determinant, linking, LinkingData};
use crate::tangles::parse::unknot;
use crate::tangles::TangleProgram;
use crate::Q;
use jmap::{j_n, JMode};
use truncated::{to_e, TruncatedInvariant};

/// Which assembly of the levels is returned by [`zlmo`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `1 + Σ_k Ω_k[k]`.
    Plain,
    /// `1 + Σ_k |H₁|^{-k} Ω_k[k]`, defined for rational homology spheres.
    Tilde,
}

/// `to_e(j_n(cs^ν Z(L)))` with the degree known as far as the budget allows.
fn closed_value(l: &TangleProgram, n: usize, budget: usize) -> Result<TruncatedInvariant> {
    let k = l.components().closed;
    if budget < k * n {
        return Err(Error::Budget(format!("degree budget {budget} is below {} for {k} components at level {n}", k * n)));
    }
    let z = Kontsevich::shared(budget)?.normalized(l)?;
    to_e(&j_n(&z, n, JMode::ViaSplitting)?, n)
}

type NormalizerCache = Mutex<HashMap<(bool, usize, usize), TruncatedInvariant>>;

/// The value of the `±1`-framed unknot, shared between calls.
pub fn normalizer(positive: bool, n: usize, budget: usize) -> Result<TruncatedInvariant> {
    static CACHE: OnceLock<NormalizerCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache lock").get(&(positive, n, budget)) {
        return Ok(v.clone());
    }
    let v = closed_value(&unknot(if positive { 1 } else { -1 }), n, budget)?;
    cache.lock().expect("cache lock").insert((positive, n, budget), v.clone());
    Ok(v)
}

/// The level-`n` invariant known up to degree `min(n, N - k n)` for a link
/// with `k` components and degree budget `N`.
pub fn omega_partial(l: &TangleProgram, n: usize, budget: usize) -> Result<TruncatedInvariant> {
    let lk = linking(l)?;
    let raw = closed_value(l, n, budget)?;
    let plus = normalizer(true, n, budget)?.pow(-(lk.sigma_plus as i64))?;
    let minus = normalizer(false, n, budget)?.pow(-(lk.sigma_minus as i64))?;
    let known = raw.known_degree().min(plus.known_degree()).min(minus.known_degree());
    let mut v = raw.mul(&plus)?.mul(&minus)?;
    v.value = v.value.truncated(known);
    Ok(v)
}

/// Smallest degree budget for which [`omega_e`] is complete.
pub fn required_budget(components: usize, n: usize) -> usize {
    (components + 1) * n
}

/// The level-`n` invariant, refusing budgets that leave any degree unknown.
pub fn omega_e(l: &TangleProgram, n: usize, budget: usize) -> Result<TruncatedInvariant> {
    let k = l.components().closed;
    let need = required_budget(k, n);
    if budget < need {
        return Err(Error::Budget(format!("level {n} with {k} components needs degree budget {need}, got {budget}")));
    }
    let v = omega_partial(l, n, budget)?;
    debug_assert!(v.is_complete());
    Ok(v)
}

/// Order of the first homology of the surgered manifold, `|det Lk|`, or
/// `None` when it is infinite.
pub fn h1_order(lk: &LinkingData) -> Option<Q> {
    let d = determinant(&lk.matrix).abs();
    (!d.is_zero()).then_some(d)
}

/// Assembles the levels `1..=level` into one vacuum series.
pub fn zlmo(l: &TangleProgram, level: usize, budget: usize, variant: Variant) -> Result<DVec> {
    let lk = linking(l)?;
    let scale = match variant {
        Variant::Plain => Q::one(),
        Variant::Tilde => match h1_order(&lk) {
            Some(h) => Q::one() / h,
            None => return Err(Error::NonRegular { nullity: lk.sigma_zero }),
        },
    };
    let mut out = DVec::one(Context::vacuum(), level);
    let mut factor = Q::one();
    for k in 1..=level {
        factor *= &scale;
        let om = omega_partial(l, k, budget)?;
        if om.known_degree() < k {
            return Err(Error::Budget(format!("degree {k} of level {k} needs a larger degree budget than {budget}")));
        }
        for (d, c) in om.part(k).terms() {
            out.add_canonical(d.clone(), c * &factor);
        }
    }
    Ok(out)
}
