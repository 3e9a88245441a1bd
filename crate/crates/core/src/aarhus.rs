//! Formal Gaussian integration of link values: the averaging map from
//! colored diagrams to diagrams on parallel strands and its inverse, the
//! split of a group-like colored series into a strut exponential and a
//! strut-free remainder, and the integral that glues the remainder with the
//! negated inverse strut matrix.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num::{One, Zero};

use crate::brauer::{OrientedBrauer, Sign};
use crate::error::{Error, Result};
use crate::jacobi::build::{Builder, LegFate};
use crate::jacobi::linalg::{inverse_dense, nullspace_dense, solve_dense};
use crate::jacobi::nf::free_slot;
use crate::jacobi::ops::{compose, disjoint_product, identity, tensor};
use crate::jacobi::{normal_form, Anchor, Context, DVec, Diagram};
use crate::kontsevich::Kontsevich;
use crate::lmo::truncated::TruncatedInvariant;
use crate::partitions::enumerate_fpfi;
use crate::tangles::linking::linking;
use crate::tangles::parse::unknot;
use crate::tangles::{Gen, TangleProgram};
use crate::Q;

/// Largest number of legs glued in one term of the integral.
pub const MAX_GLUED_LEGS: usize = 12;

/// Direction of the averaging isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pbw {
    /// Colored diagrams to diagrams on strands, averaging over leg orders.
    Chi,
    /// The inverse, solved degree by degree.
    Sigma,
}

/// Context of `k` parallel upward strands.
pub fn strands(k: usize) -> Context {
    Context::skeleton(OrientedBrauer::identity(&vec![Sign::Plus; k]))
}

/// Opens every component of a closed program just before its last cap and
/// moves the two loose ends to the right edge by passing them over the
/// strands in the way. Returns the open program and, for each pair of top
/// points from left to right, the index of the component it belongs to.
pub fn open_components(l: &TangleProgram) -> Result<(TangleProgram, Vec<usize>)> {
    if !l.is_closed() {
        return Err(Error::InvalidArgument("opening needs a closed program".into()));
    }
    let comps = l.components();
    let mut last_cap = vec![usize::MAX; comps.closed];
    for (k, g) in l.gens().iter().enumerate() {
        if let Gen::Cap { pos, .. } = *g {
            last_cap[comps.labels[k][pos]] = k;
        }
    }
    let mut gens = Vec::new();
    let mut word: Vec<Sign> = Vec::new();
    let mut order = Vec::new();
    let push = |g: Gen, word: &mut Vec<Sign>, gens: &mut Vec<Gen>| -> Result<()> {
        *word = g.apply(word)?;
        gens.push(g);
        Ok(())
    };
    for (k, g) in l.gens().iter().enumerate() {
        match *g {
            Gen::Cap { pos, .. } if last_cap[comps.labels[k][pos]] == k => {
                let width = l.words()[k].len();
                for q in pos..width - 2 {
                    for p in [q + 1, q] {
                        let positive = word[p] == word[p + 1];
                        push(Gen::Cross { pos: p, positive }, &mut word, &mut gens)?;
                    }
                }
                order.insert(0, comps.labels[k][pos]);
            }
            other => push(other, &mut word, &mut gens)?,
        }
    }
    Ok((TangleProgram::new(vec![], gens)?, order))
}

/// A group-like value on parallel strands whose closure is `cs^ν Z(L)`:
/// the open program's value with `ν^{3/2}` on every strand, strand `s`
/// carrying component `s`.
pub fn strand_lift(l: &TangleProgram, budget: usize) -> Result<DVec> {
    let kz = Kontsevich::shared(budget)?;
    let (open, order) = open_components(l)?;
    let z = kz.z_eval(&open)?;
    let top = z.ctx.skeleton.component_of_points();
    let mut target = vec![0u16; top.len()];
    for (j, &s) in order.iter().enumerate() {
        target[top[2 * j]] = s as u16;
    }
    let k = order.len();
    let mut x = DVec::zero(strands(k), budget);
    for (d, c) in z.terms() {
        let mut bld = Builder::new();
        bld.add(d, |i| match d.legs[i] {
            Anchor::Seg(c) => LegFate::Keep(Anchor::Seg(target[c as usize]), i as u64),
            other => LegFate::Keep(other, i as u64),
        });
        x.add_term(bld.finish(), c.clone());
    }
    let weight = compose(&kz.nu.value, &kz.nu.sqrt)?;
    for s in 0..k {
        let left = vec![Sign::Plus; s];
        let right = vec![Sign::Plus; k - s - 1];
        let on_s = tensor(&tensor(&identity(&left, budget), &weight), &identity(&right, budget));
        x = compose(&x, &on_s)?;
    }
    normal_form(&x)
}

/// Closes every strand into the circle with the same index.
pub fn close_strands(x: &DVec) -> Result<DVec> {
    let sk = &x.ctx.skeleton;
    let k = sk.num_components();
    if x.ctx.circles > 0 || x.ctx.colors > 0 || *sk != OrientedBrauer::identity(&vec![Sign::Plus; k]) {
        return Err(Error::InvalidArgument("closing needs parallel upward strands".into()));
    }
    let mut out = DVec::zero(Context::circles(k as u16), x.max_deg);
    for (d, c) in x.terms() {
        let mut bld = Builder::new();
        bld.add(d, |i| match d.legs[i] {
            Anchor::Seg(s) => LegFate::Keep(Anchor::Circ(s), i as u64),
            other => LegFate::Keep(other, i as u64),
        });
        out.add_term(bld.finish(), c.clone());
    }
    normal_form(&out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn factorial(n: usize) -> Q {
    (1..=n).fold(Q::one(), |acc, i| acc * Q::from_integer((i as i64).into()))
}

/// Averaging map on one colored diagram; the strand context has one strand
/// per color.
fn chi_diagram(d: &Diagram, k: usize, max_deg: usize) -> Result<DVec> {
    let mut by_color: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, a) in d.legs.iter().enumerate() {
        match a {
            Anchor::Color(c) if (*c as usize) < k => by_color[*c as usize].push(i),
            _ => return Err(Error::InvalidArgument("averaging needs legs on colors only".into())),
        }
    }
    let perms: Vec<Vec<Vec<usize>>> = by_color.iter().map(|l| permutations(l.len())).collect();
    let weight = Q::one() / by_color.iter().fold(Q::one(), |acc, l| acc * factorial(l.len()));
    let mut out = DVec::zero(strands(k), max_deg);
    let mut pick = vec![0usize; k];
    loop {
        let mut key = vec![0u64; d.legs.len()];
        for c in 0..k {
            for (j, &leg) in by_color[c].iter().enumerate() {
                key[leg] = perms[c][pick[c]][j] as u64;
            }
        }
        let mut bld = Builder::new();
        bld.add(d, |i| match d.legs[i] {
            Anchor::Color(c) => LegFate::Keep(Anchor::Seg(c), key[i]),
            other => LegFate::Keep(other, key[i]),
        });
        out.add_term(bld.finish(), weight.clone());
        let mut s = 0;
        while s < k {
            pick[s] += 1;
            if pick[s] < perms[s].len() {
                break;
            }
            pick[s] = 0;
            s += 1;
        }
        if s == k {
            break;
        }
    }
    normal_form(&out)
}

/// Averaging map from colored diagrams to diagrams on strands.
pub fn chi(y: &DVec) -> Result<DVec> {
    if y.ctx.skeleton.num_components() > 0 || y.ctx.circles > 0 {
        return Err(Error::InvalidArgument("averaging needs a colors-only context".into()));
    }
    let k = y.ctx.colors as usize;
    let mut out = DVec::zero(strands(k), y.max_deg);
    for (d, c) in y.terms() {
        out.axpy(c, &chi_diagram(d, k, y.max_deg)?)?;
    }
    Ok(out)
}

fn color_multisets(k: usize, m: usize) -> Vec<Vec<u16>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in color_multisets(k, m - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for c in lo..k as u16 {
            let mut v = rest.clone();
            v.push(c);
            out.push(v);
        }
    }
    out
}

/// Connected colored diagrams with at least two legs and degree `1..=max_deg`,
/// one per quotient basis element.
fn atoms(k: usize, max_deg: usize) -> Result<Vec<Diagram>> {
    let mut out = Vec::new();
    for deg in 1..=max_deg {
        for m in 2..=2 * deg {
            let t = 2 * deg - m;
            for colors in color_multisets(k, m) {
                out.extend(free_slot(&colors, t)?.quotient_basis());
            }
        }
    }
    Ok(out)
}

/// Products of atoms with total degree exactly `d`.
fn monomials(atoms: &[Diagram], d: usize) -> Vec<Diagram> {
    fn rec(atoms: &[Diagram], from: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Diagram>) {
        if left == 0 {
            let mut bld = Builder::new();
            for (n, &a) in cur.iter().enumerate() {
                let dg = &atoms[a];
                bld.add(dg, |i| LegFate::Keep(dg.legs[i], ((n as u64) << 20) + i as u64));
            }
            out.push(crate::jacobi::canonical(&bld.finish()));
            return;
        }
        for a in from..atoms.len() {
            let deg = atoms[a].degree();
            if deg <= left {
                cur.push(a);
                rec(atoms, a, left - deg, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(atoms, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Colored basis of one degree with the averaged images of its members.
#[derive(Debug)]
struct PbwSlot {
    basis: Vec<Diagram>,
    images: Vec<DVec>,
}

type PbwCache = Mutex<HashMap<(usize, usize), Arc<PbwSlot>>>;

fn pbw_slot(k: usize, d: usize) -> Result<Arc<PbwSlot>> {
    static CACHE: OnceLock<PbwCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().expect("cache lock").get(&(k, d)) {
        return Ok(s.clone());
    }
    let basis = monomials(&atoms(k, d)?, d);
    let images = basis.iter().map(|b| chi_diagram(b, k, d)).collect::<Result<Vec<_>>>()?;
    let slot = Arc::new(PbwSlot { basis, images });
    cache.lock().expect("cache lock").insert((k, d), slot.clone());
    Ok(slot)
}

/// Inverse of the averaging map, solved degree by degree.
pub fn sigma(x: &DVec) -> Result<DVec> {
    let sk = &x.ctx.skeleton;
    let k = sk.num_components();
    if x.ctx.circles > 0 || x.ctx.colors > 0 || *sk != OrientedBrauer::identity(&vec![Sign::Plus; k]) {
        return Err(Error::InvalidArgument("the inverse averaging map needs parallel upward strands".into()));
    }
    let x = normal_form(x)?;
    let mut out = DVec::zero(Context::colors(k as u16), x.max_deg);
    out.add_term(Diagram::empty(), x.constant());
    for d in 1..=x.max_deg {
        let part = x.part(d);
        if part.is_zero() {
            continue;
        }
        let slot = pbw_slot(k, d)?;
        let mut rows: BTreeMap<Diagram, usize> = BTreeMap::new();
        for v in slot.images.iter().chain(std::iter::once(&part)) {
            for (dg, _) in v.terms() {
                let n = rows.len();
                rows.entry(dg.clone()).or_insert(n);
            }
        }
        let ncols = slot.basis.len();
        let mut a = vec![vec![Q::zero(); ncols]; rows.len()];
        for (j, img) in slot.images.iter().enumerate() {
            for (dg, c) in img.terms() {
                a[rows[dg]][j] = c.clone();
            }
        }
        let mut b = vec![Q::zero(); rows.len()];
        for (dg, c) in part.terms() {
            b[rows[dg]] = c.clone();
        }
        if !nullspace_dense(&a, ncols).is_empty() {
            return Err(Error::Inconsistent(format!("averaging map is not injective in degree {d}")));
        }
        let y = solve_dense(&a, &b, ncols)?;
        for (bd, c) in slot.basis.iter().zip(y) {
            out.add_canonical(bd.clone(), c);
        }
    }
    Ok(out)
}

/// Applies the averaging map or its inverse.
pub fn pbw(x: &DVec, direction: Pbw) -> Result<DVec> {
    match direction {
        Pbw::Chi => chi(x),
        Pbw::Sigma => sigma(x),
    }
}

/// A colored series written as `exp(½ Σ Λ_xy s_xy) ⊔ P` with `P` strut-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianElement {
    pub colors: usize,
    pub lambda: Vec<Vec<Q>>,
    pub p: DVec,
}

fn strut(x: u16, y: u16) -> Diagram {
    Diagram::strut(Anchor::Color(x), Anchor::Color(y))
}

fn has_strut(d: &Diagram) -> bool {
    let l = d.legs.len();
    (0..l).any(|i| (d.partner[i] as usize) < l)
}

/// `exp(½ Σ m_xy s_xy)` on `k` colors up to degree `max_deg`.
pub fn strut_exponential(m: &[Vec<Q>], max_deg: usize) -> Result<DVec> {
    let k = m.len();
    let ctx = Context::colors(k as u16);
    let mut s = DVec::zero(ctx.clone(), max_deg);
    for x in 0..k {
        for y in 0..k {
            s.add_term(strut(x as u16, y as u16), &m[x][y] / Q::from_integer(2.into()));
        }
    }
    let mut acc = DVec::one(ctx.clone(), max_deg);
    let mut pow = DVec::one(ctx, max_deg);
    for j in 1..=max_deg {
        pow = disjoint_product(&pow, &s)?.scale(&(Q::one() / Q::from_integer((j as i64).into())));
        acc.axpy(&Q::one(), &pow)?;
    }
    Ok(acc)
}

/// Splits a group-like colored series into its strut matrix and strut-free
/// remainder.
pub fn gaussian_split(y: &DVec) -> Result<GaussianElement> {
    if y.ctx.skeleton.num_components() > 0 || y.ctx.circles > 0 {
        return Err(Error::InvalidArgument("splitting needs a colors-only context".into()));
    }
    if y.constant() != Q::one() {
        return Err(Error::InvalidArgument("splitting needs constant term one".into()));
    }
    let k = y.ctx.colors as usize;
    let mut lambda = vec![vec![Q::zero(); k]; k];
    for x in 0..k {
        for z in x..k {
            let c = y.coeff(&crate::jacobi::canonical(&strut(x as u16, z as u16)));
            if x == z {
                lambda[x][x] = c * Q::from_integer(2.into());
            } else {
                lambda[x][z] = c.clone();
                lambda[z][x] = c;
            }
        }
    }
    let neg: Vec<Vec<Q>> = lambda.iter().map(|r| r.iter().map(|c| -c).collect()).collect();
    let p = normal_form(&disjoint_product(&strut_exponential(&neg, y.max_deg)?, y)?)?;
    if p.terms().any(|(d, _)| has_strut(d)) {
        return Err(Error::Inconsistent("series is not group-like: struts remain after the split".into()));
    }
    Ok(GaussianElement { colors: k, lambda, p })
}

impl GaussianElement {
    /// Largest output degree for which every contributing term of `P` is
    /// present.
    pub fn complete_degree(&self) -> usize {
        let has_vertex = self.p.part(2).terms().any(|(d, _)| {
            let (comp, n) = d.component_ids();
            (0..n).any(|c| {
                let tri = (0..d.num_tri()).filter(|&v| comp[d.legs.len() + 3 * v] == c).count();
                let legs = (0..d.legs.len()).filter(|&i| comp[i] == c).count();
                tri == 1 && legs == 3
            })
        });
        self.p.max_deg / if has_vertex { 4 } else { 3 }
    }
}

/// Glues the legs of `P` pairwise in all ways, weighting a pair of colors
/// `x, y` by `-(Λ^{-1})_xy`.
pub fn gaussian_integral(g: &GaussianElement) -> Result<DVec> {
    let inv = inverse_dense(&g.lambda).ok_or_else(|| Error::InvalidArgument("degenerate Gaussian: strut matrix is singular".into()))?;
    let out_deg = g.complete_degree();
    let mut out = DVec::zero(Context::vacuum(), out_deg);
    for (d, c) in g.p.terms() {
        if d.num_tri() > 2 * out_deg {
            continue;
        }
        let l = d.legs.len();
        if l % 2 == 1 {
            continue;
        }
        if l > MAX_GLUED_LEGS {
            return Err(Error::Budget(format!("gluing {l} legs")));
        }
        let col: Vec<usize> = d
            .legs
            .iter()
            .map(|a| match a {
                Anchor::Color(x) => Ok(*x as usize),
                _ => Err(Error::InvalidArgument("integrand must carry colored legs only".into())),
            })
            .collect::<Result<_>>()?;
        for m in enumerate_fpfi(l) {
            let mut w = c.clone();
            for (a, b) in m.pairs() {
                w *= -&inv[col[a]][col[b]];
            }
            if w.is_zero() {
                continue;
            }
            let mut bld = Builder::new();
            bld.add(d, |i| LegFate::Glue(i.min(m.apply(i)) as u64));
            out.add_term(bld.finish(), w);
        }
    }
    normal_form(&out)
}

/// The integral of `σ` applied to the strand lift of `cs^ν Z(L)`.
pub fn aarhus_raw(l: &TangleProgram, budget: usize) -> Result<DVec> {
    gaussian_integral(&link_gaussian(l, budget)?)
}

/// The Gaussian split of a link value, for inspection.
pub fn link_gaussian(l: &TangleProgram, budget: usize) -> Result<GaussianElement> {
    gaussian_split(&sigma(&strand_lift(l, budget)?)?)
}

/// The integral normalized by the `±1`-framed unknots according to the
/// signature of the linking matrix.
pub fn aarhus_invariant(l: &TangleProgram, budget: usize) -> Result<DVec> {
    let lk = linking(l)?;
    if lk.sigma_zero > 0 {
        return Err(Error::NonRegular { nullity: lk.sigma_zero });
    }
    let raw = aarhus_raw(l, budget)?;
    let plus = aarhus_raw(&unknot(1), budget)?;
    let minus = aarhus_raw(&unknot(-1), budget)?;
    let level = raw.max_deg.min(plus.max_deg).min(minus.max_deg);
    let wrap = |v: &DVec| TruncatedInvariant::new(level, v);
    let value = wrap(&raw)?
        .mul(&wrap(&plus)?.pow(-(lk.sigma_plus as i64))?)?
        .mul(&wrap(&minus)?.pow(-(lk.sigma_minus as i64))?)?;
    Ok(value.value)
}
