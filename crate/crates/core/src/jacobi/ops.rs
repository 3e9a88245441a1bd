//! Categorical operations on diagram vectors: tensor product, composition,
//! orientation reversal, doubling, connected sum, leg pairing and the
//! component-splitting coproduct.

use std::collections::BTreeMap;

use num::{One, Zero};

use super::build::{keep_same, Builder, LegFate};
use super::diagram::{canonical, Anchor, Diagram};
use super::vector::{Context, DVec};
use crate::brauer::{OrientedBrauer, Piece};
use crate::error::{Error, Result};
use crate::Q;

const HI: u64 = 1 << 32;

/// Horizontal product `x ⊗ y`: skeleta juxtaposed, circles and colors of `y`
/// numbered after those of `x`.
pub fn tensor(x: &DVec, y: &DVec) -> DVec {
    let (sk, ma, mb) = x.ctx.skeleton.tensor_with_maps(&y.ctx.skeleton);
    let ctx = Context { skeleton: sk, circles: x.ctx.circles + y.ctx.circles, colors: x.ctx.colors + y.ctx.colors };
    let n = x.max_deg.min(y.max_deg);
    let mut out = DVec::zero(ctx, n);
    let (xc, xk) = (x.ctx.circles, x.ctx.colors);
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            if a.degree() + b.degree() > n {
                continue;
            }
            let mut bld = Builder::new();
            bld.add(a, |i| {
                LegFate::Keep(
                    match a.legs[i] {
                        Anchor::Seg(s) => Anchor::Seg(ma[s as usize] as u16),
                        other => other,
                    },
                    i as u64,
                )
            });
            bld.add(b, |i| {
                let an = match b.legs[i] {
                    Anchor::Seg(s) => Anchor::Seg(mb[s as usize] as u16),
                    Anchor::Circ(c) => Anchor::Circ(c + xc),
                    Anchor::Color(c) => Anchor::Color(c + xk),
                };
                LegFate::Keep(an, HI + i as u64)
            });
            out.add_term(bld.finish(), ca * cb);
        }
    }
    out
}

/// Disjoint-union product of two vectors in the same skeleton-free context.
/// Legs on a common circle are not allowed.
pub fn disjoint_product(x: &DVec, y: &DVec) -> Result<DVec> {
    x.check_same(y)?;
    if x.ctx.skeleton.num_components() > 0 {
        return Err(Error::Unsupported("disjoint product needs an empty skeleton".into()));
    }
    let n = x.max_deg.min(y.max_deg);
    let mut out = DVec::zero(x.ctx.clone(), n);
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            if a.degree() + b.degree() > n {
                continue;
            }
            if a.legs.iter().any(|l| matches!(l, Anchor::Circ(_)) && b.legs.contains(l)) {
                return Err(Error::Unsupported("both factors have legs on one circle".into()));
            }
            let mut bld = Builder::new();
            bld.add(a, keep_same(a));
            bld.add(b, |i| LegFate::Keep(b.legs[i], HI + i as u64));
            out.add_term(bld.finish(), ca * cb);
        }
    }
    Ok(out)
}

/// Power of a vector under the disjoint-union product.
pub fn disjoint_power(x: &DVec, k: usize) -> Result<DVec> {
    let mut acc = DVec::one(x.ctx.clone(), x.max_deg);
    for _ in 0..k {
        acc = disjoint_product(&acc, x)?;
    }
    Ok(acc)
}

/// Locates each component piece of a composition inside the result.
fn piece_anchors(
    segs: &[Vec<Piece>],
    circs: &[Vec<Piece>],
    circle_base: u16,
) -> BTreeMap<Piece, (Anchor, u64)> {
    let mut map = BTreeMap::new();
    for (j, pieces) in segs.iter().enumerate() {
        for (k, p) in pieces.iter().enumerate() {
            map.insert(*p, (Anchor::Seg(j as u16), k as u64));
        }
    }
    for (j, pieces) in circs.iter().enumerate() {
        for (k, p) in pieces.iter().enumerate() {
            map.insert(*p, (Anchor::Circ(circle_base + j as u16), k as u64));
        }
    }
    map
}

/// Vertical composition: `x` below, `y` stacked on top.
///
/// Circles of `x` come first, then circles of `y`, then the closed orbits
/// created by the composition, ordered by minimal middle point.
pub fn compose(x: &DVec, y: &DVec) -> Result<DVec> {
    let comp = x.ctx.skeleton.then(&y.ctx.skeleton)?;
    let base = x.ctx.circles + y.ctx.circles;
    let pieces = piece_anchors(&comp.segment_pieces, &comp.circle_pieces, base);
    let ctx = Context {
        skeleton: comp.diagram.clone(),
        circles: base + comp.circles.len() as u16,
        colors: x.ctx.colors + y.ctx.colors,
    };
    let n = x.max_deg.min(y.max_deg);
    let mut out = DVec::zero(ctx, n);
    let (xc, xk) = (x.ctx.circles, x.ctx.colors);
    let remap = |factor: u8, d: &Diagram, i: usize| -> LegFate {
        match d.legs[i] {
            Anchor::Seg(s) => {
                let (a, k) = pieces[&Piece { factor, comp: s as usize }];
                LegFate::Keep(a, k * HI + i as u64)
            }
            Anchor::Circ(c) => LegFate::Keep(Anchor::Circ(if factor == 0 { c } else { c + xc }), i as u64),
            Anchor::Color(c) => LegFate::Keep(Anchor::Color(if factor == 0 { c } else { c + xk }), i as u64 + HI),
        }
    };
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            if a.degree() + b.degree() > n {
                continue;
            }
            let mut bld = Builder::new();
            bld.add(a, |i| remap(0, a, i));
            bld.add(b, |i| remap(1, b, i));
            out.add_term(bld.finish(), ca * cb);
        }
    }
    Ok(out)
}

/// Composition of several vectors, first applied first.
pub fn compose_all(parts: &[DVec]) -> Result<DVec> {
    let mut it = parts.iter();
    let mut acc = it.next().ok_or_else(|| Error::InvalidArgument("nothing to compose".into()))?.clone();
    for p in it {
        acc = compose(&acc, p)?;
    }
    Ok(acc)
}

fn reverse_anchor(x: &DVec, target: Anchor, ctx: Context) -> DVec {
    let mut out = DVec::zero(ctx, x.max_deg);
    for (d, c) in x.terms() {
        let k = d.legs.iter().filter(|&&a| a == target).count();
        let sign = if k % 2 == 0 { c.clone() } else { -c.clone() };
        let mut bld = Builder::new();
        bld.add(d, |i| {
            if d.legs[i] == target {
                LegFate::Keep(target, HI - i as u64)
            } else {
                LegFate::Keep(d.legs[i], i as u64)
            }
        });
        out.add_term(bld.finish(), sign);
    }
    out
}

/// Reverses a circle: opposite cyclic order, sign `(-1)^{legs on it}`.
pub fn co_circle(x: &DVec, s: u16) -> Result<DVec> {
    if s >= x.ctx.circles {
        return Err(Error::InvalidArgument(format!("no circle {s}")));
    }
    Ok(reverse_anchor(x, Anchor::Circ(s), x.ctx.clone()))
}

/// Reverses a skeleton component: opposite linear order, sign `(-1)^{legs on it}`.
pub fn co_segment(x: &DVec, a: usize) -> Result<DVec> {
    let sk = x.ctx.skeleton.co(a)?;
    let ctx = Context { skeleton: sk, ..x.ctx.clone() };
    Ok(reverse_anchor(x, Anchor::Seg(a as u16), ctx))
}

/// Doubles skeleton components: every leg on a doubled component is lifted
/// to either copy, summing over all choices.
pub fn dbl(x: &DVec, comps: &[usize]) -> Result<DVec> {
    let (sk, maps) = x.ctx.skeleton.dbl(comps)?;
    let ctx = Context { skeleton: sk, ..x.ctx.clone() };
    let mut out = DVec::zero(ctx, x.max_deg);
    for (d, c) in x.terms() {
        let lifted: Vec<usize> = (0..d.legs.len())
            .filter(|&i| matches!(d.legs[i], Anchor::Seg(s) if comps.contains(&(s as usize))))
            .collect();
        let k = lifted.len();
        if k > 20 {
            return Err(Error::Budget("too many legs to double".into()));
        }
        for mask in 0u32..(1 << k) {
            let mut bld = Builder::new();
            bld.add(d, |i| match d.legs[i] {
                Anchor::Seg(s) => {
                    let copy = match lifted.iter().position(|&j| j == i) {
                        Some(b) => ((mask >> b) & 1) as usize,
                        None => 0,
                    };
                    LegFate::Keep(Anchor::Seg(maps[s as usize][copy] as u16), i as u64)
                }
                other => LegFate::Keep(other, i as u64),
            });
            out.add_term(bld.finish(), c.clone());
        }
    }
    Ok(out)
}

/// Inserts `alpha` (a vector on a single downward strand) into circle `s`
/// just before the first stored leg of that circle.
pub fn cs_alpha_circle(x: &DVec, alpha: &DVec, s: u16) -> Result<DVec> {
    check_single_strand(alpha)?;
    if s >= x.ctx.circles {
        return Err(Error::InvalidArgument(format!("no circle {s}")));
    }
    let n = x.max_deg.min(alpha.max_deg);
    let mut out = DVec::zero(x.ctx.clone(), n);
    for (d, c) in x.terms() {
        for (a, ca) in alpha.terms() {
            if d.degree() + a.degree() > n {
                continue;
            }
            let mut bld = Builder::new();
            bld.add(d, |i| LegFate::Keep(d.legs[i], HI + i as u64));
            bld.add(a, |i| match a.legs[i] {
                Anchor::Seg(_) => LegFate::Keep(Anchor::Circ(s), i as u64),
                other => LegFate::Keep(other, 2 * HI + i as u64),
            });
            out.add_term(bld.finish(), c * ca);
        }
    }
    Ok(out)
}

/// Inserts `alpha` into every circle.
pub fn cs_alpha(x: &DVec, alpha: &DVec) -> Result<DVec> {
    if x.ctx.skeleton.num_components() > 0 || x.ctx.colors > 0 {
        return Err(Error::InvalidArgument("connected sum needs a circles-only context".into()));
    }
    let mut acc = x.clone();
    for s in 0..x.ctx.circles {
        acc = cs_alpha_circle(&acc, alpha, s)?;
    }
    Ok(acc)
}

fn check_single_strand(alpha: &DVec) -> Result<()> {
    let sk = &alpha.ctx.skeleton;
    if sk.num_components() != 1 || sk.p() != 1 || sk.q() != 1 || alpha.ctx.circles > 0 || alpha.ctx.colors > 0 {
        return Err(Error::InvalidArgument("expected a vector on a single strand".into()));
    }
    Ok(())
}

/// Glues the color legs of `x` to those of `y` color by color.
///
/// Both sides must carry exactly one leg of every color; the result lives on
/// the tensor product of the skeleta with circles of `x` first and no colors.
pub fn pair_legs(x: &DVec, y: &DVec) -> Result<DVec> {
    if x.ctx.colors != y.ctx.colors {
        return Err(Error::InvalidArgument("color sets differ".into()));
    }
    let k = x.ctx.colors;
    let (sk, ma, mb) = x.ctx.skeleton.tensor_with_maps(&y.ctx.skeleton);
    let ctx = Context { skeleton: sk, circles: x.ctx.circles + y.ctx.circles, colors: 0 };
    let mut out = DVec::zero(ctx, (x.max_deg + y.max_deg).saturating_sub(k as usize));
    let xc = x.ctx.circles;
    for (a, ca) in x.terms() {
        check_colors_once(a, k)?;
        for (b, cb) in y.terms() {
            check_colors_once(b, k)?;
            let mut bld = Builder::new();
            bld.add(a, |i| match a.legs[i] {
                Anchor::Color(c) => LegFate::Glue(c as u64),
                Anchor::Seg(s) => LegFate::Keep(Anchor::Seg(ma[s as usize] as u16), i as u64),
                other => LegFate::Keep(other, i as u64),
            });
            bld.add(b, |i| match b.legs[i] {
                Anchor::Color(c) => LegFate::Glue(c as u64),
                Anchor::Seg(s) => LegFate::Keep(Anchor::Seg(mb[s as usize] as u16), HI + i as u64),
                Anchor::Circ(c) => LegFate::Keep(Anchor::Circ(c + xc), HI + i as u64),
            });
            out.add_term(bld.finish(), ca * cb);
        }
    }
    Ok(out)
}

fn check_colors_once(d: &Diagram, k: u16) -> Result<()> {
    let mut seen = vec![0u8; k as usize];
    for a in &d.legs {
        if let Anchor::Color(c) = a {
            seen[*c as usize] += 1;
        }
    }
    if seen.iter().any(|&s| s != 1) {
        return Err(Error::InvalidArgument("every color must carry exactly one leg".into()));
    }
    Ok(())
}

/// Sub-diagram made of the listed dashed components (by component id) and `loops` loops.
pub fn subdiagram(d: &Diagram, comp: &[usize], keep: &[bool], loops: u32) -> Diagram {
    let mut bld = Builder::new();
    bld.add_filtered(d, |i| LegFate::Keep(d.legs[i], i as u64), |e| keep[comp[e]]);
    bld.add_loops(loops);
    bld.finish()
}

/// Pairs of canonical diagrams with coefficients, for tensor squares.
pub type Tensor2 = BTreeMap<(Diagram, Diagram), Q>;

/// Adds `c · (a ⊗ b)` to a tensor square.
pub fn tensor2_add(t: &mut Tensor2, a: Diagram, b: Diagram, c: Q) {
    if c.is_zero() {
        return;
    }
    let key = (a, b);
    let v = t.entry(key.clone()).or_insert_with(Q::zero);
    *v += c;
    if v.is_zero() {
        t.remove(&key);
    }
}

fn binomial(n: u32, k: u32) -> Q {
    let mut r = Q::one();
    for i in 0..k {
        r = r * Q::from_integer((n - i).into()) / Q::from_integer((i + 1).into());
    }
    r
}

/// Component-splitting coproduct of a single diagram: every dashed
/// component and every loop goes to the left or to the right factor.
pub fn coproduct_diagram(d: &Diagram) -> Vec<(Diagram, Diagram, Q)> {
    let (comp, ncomp) = d.component_ids();
    if ncomp > 24 {
        panic!("too many components for the coproduct");
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << ncomp) {
        let left: Vec<bool> = (0..ncomp).map(|c| mask >> c & 1 == 1).collect();
        let right: Vec<bool> = left.iter().map(|b| !b).collect();
        for j in 0..=d.loops {
            let l = canonical(&subdiagram(d, &comp, &left, j));
            let r = canonical(&subdiagram(d, &comp, &right, d.loops - j));
            out.push((l, r, binomial(d.loops, j)));
        }
    }
    out
}

/// Coproduct of a vector without free colors.
pub fn coproduct(x: &DVec) -> Result<Tensor2> {
    if x.ctx.colors > 0 {
        return Err(Error::InvalidArgument("coproduct is defined without free colors".into()));
    }
    let mut t = Tensor2::new();
    for (d, c) in x.terms() {
        for (l, r, k) in coproduct_diagram(d) {
            tensor2_add(&mut t, l, r, c * k);
        }
    }
    Ok(t)
}

/// Reduces both factors of a tensor square to normal form in `ctx`, keeping
/// pairs of total degree at most `max_deg`.
pub fn tensor2_normal_form(t: &Tensor2, ctx: &Context, max_deg: usize) -> Result<Tensor2> {
    let mut memo: BTreeMap<Diagram, DVec> = BTreeMap::new();
    let mut nf = |d: &Diagram| -> Result<DVec> {
        if let Some(v) = memo.get(d) {
            return Ok(v.clone());
        }
        let v = super::nf::normal_form(&DVec::from_diagram(ctx.clone(), max_deg, d.clone(), Q::one()))?;
        memo.insert(d.clone(), v.clone());
        Ok(v)
    };
    let mut out = Tensor2::new();
    for ((l, r), c) in t {
        if l.degree() + r.degree() > max_deg {
            continue;
        }
        let (lv, rv) = (nf(l)?, nf(r)?);
        for (a, ca) in lv.terms() {
            for (b, cb) in rv.terms() {
                tensor2_add(&mut out, a.clone(), b.clone(), c * ca * cb);
            }
        }
    }
    Ok(out)
}

/// `x ⊗ y` as an element of a tensor square.
pub fn outer(x: &DVec, y: &DVec) -> Tensor2 {
    let mut t = Tensor2::new();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            if a.degree() + b.degree() <= x.max_deg.min(y.max_deg) {
                tensor2_add(&mut t, a.clone(), b.clone(), ca * cb);
            }
        }
    }
    t
}

/// Identity element on a word.
pub fn identity(word: &[crate::brauer::Sign], max_deg: usize) -> DVec {
    DVec::one(Context::skeleton(OrientedBrauer::identity(word)), max_deg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::Sign::{Minus, Plus};

    fn chord_on_circle() -> Diagram {
        Diagram::strut(Anchor::Circ(0), Anchor::Circ(0))
    }

    #[test]
    fn closing_a_chord_across_two_strands() {
        let cup = DVec::one(Context::skeleton(OrientedBrauer::cup(Plus)), 3);
        let cap = DVec::one(Context::skeleton(OrientedBrauer::cap(Plus)), 3);
        let id = Context::skeleton(OrientedBrauer::identity(&[Plus, Minus]));
        let chord = DVec::from_diagram(id, 3, Diagram::strut(Anchor::Seg(0), Anchor::Seg(1)), Q::one());
        let closed = compose_all(&[cup, chord, cap]).unwrap();
        assert_eq!(closed.ctx, Context::circles(1));
        let expect = DVec::from_diagram(Context::circles(1), 3, chord_on_circle(), Q::one());
        assert_eq!(closed, expect);
    }

    #[test]
    fn pairing_two_struts_gives_a_loop() {
        let s = DVec::from_diagram(Context::colors(2), 2, Diagram::strut(Anchor::Color(0), Anchor::Color(1)), Q::one());
        let p = pair_legs(&s, &s).unwrap();
        assert_eq!(p.coeff(&Diagram::loops(1)), Q::one());
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn coproduct_of_one_chord_is_primitive() {
        let x = DVec::from_diagram(Context::circles(1), 2, chord_on_circle(), Q::one());
        let t = coproduct(&x).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.get(&(canonical(&chord_on_circle()), Diagram::empty())), Some(&Q::one()));
    }

    #[test]
    fn doubling_three_legs_gives_eight_lifts() {
        let ctx = Context::skeleton(OrientedBrauer::identity(&[Plus]));
        let d = Diagram {
            legs: vec![Anchor::Seg(0); 3],
            partner: vec![3, 4, 5, 0, 1, 2],
            loops: 0,
        };
        let x = DVec::from_diagram(ctx, 3, d, Q::one());
        let y = dbl(&x, &[0]).unwrap();
        let total: usize = y.terms().count();
        assert!(total <= 8);
        let sum: Q = y.terms().map(|(_, c)| c.clone()).sum();
        assert_eq!(sum, Q::from_integer(8.into()));
    }
}
