//! The acceptance suite: ten end-to-end criteria, each with a pinned time
//! limit, shared by the `selftest` command and the `acceptance` test target.
//!
//! All comparisons are exact. A criterion passes when its check succeeds
//! and it finishes within its limit.

use std::collections::HashMap;
use std::time::Instant;

use num::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aarhus::aarhus_invariant;
use crate::brauer::{OrientedBrauer, Sign, Word};
use crate::jacobi::build::{Builder, LegFate};
use crate::jacobi::enumerate::on_anchors;
use crate::jacobi::nf::free_slot;
use crate::jacobi::ops::{
    co_circle, compose, coproduct, dbl, disjoint_product, identity, outer, tensor, tensor2_normal_form,
};
use crate::jacobi::{normal_form, Anchor, Context, DVec, Diagram};
use crate::kontsevich::Kontsevich;
use crate::lmo::ideal::IdealSpan;
use crate::lmo::jmap::{j_n, loop_falling_product, theta, JMode};
use crate::lmo::truncated::{counit_left, delta_e, TruncatedInvariant};
use crate::lmo::{normalizer, omega_e, zlmo, Variant};
use crate::partitions::{enumerate_fpfi, enumerate_partitions, rising_even_product, Involution, Partition, Tracked};
use crate::tangles::parse::{hopf, unknot};
use crate::tangles::{kii_pair, Gen, TangleProgram};
use crate::Q;

/// Number of randomized instances per family in criterion 9.
pub const RANDOM_INSTANCES: usize = 1000;

/// Seed of every randomized check.
pub const SEED: u64 = 0x5eed_2024;

/// Outcome of one criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: f64,
}

impl CriterionResult {
    /// One summary line.
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {}: {} ({:.2}s of {:.0}s) {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.seconds,
            self.limit_seconds,
            self.detail
        )
    }
}

type Check = fn() -> std::result::Result<String, String>;

/// `(id, title, time limit in seconds, check)` for every criterion.
pub const CRITERIA: [(usize, &str, f64, Check); 10] = [
    (1, "fixed-point-free involution orbit polynomial", 1.0, fpfi_identity),
    (2, "closing parallel chords gives the rising loop product", 10.0, parallel_chords),
    (3, "degree-zero part of the stabilization unknots", 60.0, normalizer_constants),
    (4, "level-one constant is the homology order", 120.0, homology_order),
    (5, "Kirby moves at level one", 600.0, kirby_moves),
    (6, "Hopf presentation of the sphere", 1800.0, hopf_sphere),
    (7, "multiplicativity and comultiplicativity", 300.0, multiplicativity),
    (8, "structural linear algebra", 300.0, structural),
    (9, "category axioms on exhaustive and random instances", 120.0, axioms),
    (10, "Gaussian integration agrees with the rescaled invariant", 300.0, aarhus_oracle),
];

/// Runs one criterion by number.
pub fn run(id: usize) -> Option<CriterionResult> {
    let &(id, title, limit, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let outcome = check();
    let seconds = start.elapsed().as_secs_f64();
    let (ok, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    let passed = ok && seconds <= limit;
    let detail = if ok && !passed { format!("{detail}; exceeded the time limit") } else { detail };
    Some(CriterionResult { id, title, passed, detail, seconds, limit_seconds: limit })
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().filter_map(|c| run(c.0)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn int(x: i64) -> Q {
    Q::from_integer(x.into())
}

/// Whether two vectors in the same context agree modulo the relations.
fn equivalent(a: &DVec, b: &DVec) -> std::result::Result<bool, String> {
    if a.ctx != b.ctx {
        return Ok(false);
    }
    Ok(lift(normal_form(&lift(a.sub(b))?))?.is_zero())
}

fn fpfi_identity() -> std::result::Result<String, String> {
    for n in [2usize, 4, 6, 8] {
        let sigma0 = lift(Involution::standard(n))?;
        let mut coeffs = vec![0u64; n / 2 + 1];
        let all = enumerate_fpfi(n);
        for s in &all {
            coeffs[lift(sigma0.orbits_with(s))?] += 1;
        }
        ensure(coeffs == rising_even_product(n / 2), || format!("|S| = {n}: {coeffs:?}"))?;
    }
    Ok("|S| = 2, 4, 6, 8 by brute force".into())
}

fn parallel_chords() -> std::result::Result<String, String> {
    for r in 1..=3 {
        let x = theta(r, r);
        for mode in [JMode::Direct, JMode::ViaSplitting] {
            let j = lift(j_n(&x, r, mode))?;
            ensure(equivalent(&j, &loop_falling_product(r))?, || format!("r = {r}, {mode:?}: {j}"))?;
        }
    }
    Ok("r = 1, 2, 3 in both evaluation modes".into())
}

fn normalizer_constants() -> std::result::Result<String, String> {
    for n in [1usize, 2] {
        for (positive, sign) in [(true, -1i64), (false, 1)] {
            let e = lift(normalizer(positive, n, n))?.epsilon();
            ensure(e == int(sign.pow(n as u32)), || format!("n = {n}, positive = {positive}: {e}"))?;
        }
    }
    Ok("(∓1)^n for n = 1, 2".into())
}

fn homology_order() -> std::result::Result<String, String> {
    for p in [1i64, -1, 2, -2, 3, 5] {
        let e = lift(omega_e(&unknot(p), 1, 2))?.epsilon();
        ensure(e == int(p.abs()), || format!("framing {p}: {e}"))?;
    }
    let one = TruncatedInvariant::one(1);
    let empty = lift(omega_e(&TangleProgram::empty(), 1, 3))?;
    ensure(equivalent(&empty.value, &one.value)?, || format!("empty link: {}", empty.value))?;
    let pair = lift(unknot(1).disjoint_union(&unknot(-1)))?;
    let v = lift(omega_e(&pair, 1, 3))?;
    ensure(equivalent(&v.value, &one.value)?, || format!("cancelling unknots: {}", v.value))?;
    Ok("framings ±1, ±2, 3, 5; empty link; cancelling unknots".into())
}

fn kirby_moves() -> std::result::Result<String, String> {
    let id = TangleProgram::identity(&[Sign::Plus, Sign::Minus]);
    let twist = lift(TangleProgram::new(
        vec![Sign::Plus, Sign::Minus],
        vec![Gen::Cross { pos: 0, positive: true }, Gen::Cross { pos: 0, positive: true }],
    ))?;
    for (name, s) in [("identity", id), ("full twist", twist)] {
        let (l1, l2) = lift(kii_pair(&s))?;
        let (a, b) = (lift(omega_e(&l1, 1, 3))?, lift(omega_e(&l2, 1, 3))?);
        ensure(equivalent(&a.value, &b.value)?, || format!("handle slide with {name}: {} vs {}", a.value, b.value))?;
    }
    for (f1, f2) in [(0, 0), (1, 1), (2, -1)] {
        let h = hopf(f1, f2);
        let base = lift(omega_e(&h, 1, 3))?;
        for c in 0..2 {
            let v = lift(omega_e(&lift(h.co(c))?, 1, 3))?;
            ensure(equivalent(&v.value, &base.value)?, || format!("reversal of component {c} of hopf({f1},{f2})"))?;
        }
    }
    let l = unknot(2);
    let base = lift(omega_e(&l, 1, 3))?;
    for s in [true, false] {
        let v = lift(omega_e(&lift(l.ki(s))?, 1, 3))?;
        ensure(equivalent(&v.value, &base.value)?, || format!("stabilization {s}"))?;
    }
    Ok("handle slides, orientation reversal and stabilization".into())
}

fn hopf_sphere() -> std::result::Result<String, String> {
    let z = lift(zlmo(&hopf(0, 0), 1, 3, Variant::Tilde))?;
    ensure(equivalent(&z, &DVec::one(Context::vacuum(), 1))?, || format!("got {z}"))?;
    Ok("rescaled invariant of hopf(0,0) is 1 at budget 3".into())
}

fn random_e2(rng: &mut ChaCha8Rng) -> std::result::Result<TruncatedInvariant, String> {
    let theta = lift(free_slot(&[], 2))?.quotient_basis()[0].clone();
    let mut basis = vec![Diagram::empty(), theta.clone()];
    basis.extend(lift(free_slot(&[], 4))?.quotient_basis());
    let th = DVec::from_diagram(Context::vacuum(), 2, theta, Q::one());
    let sq = lift(disjoint_product(&th, &th))?;
    let mut v = DVec::zero(Context::vacuum(), 2);
    for d in basis {
        v.add_term(d, Q::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into()));
    }
    lift(v.axpy(&int(rng.gen_range(-5i64..=5)), &sq))?;
    lift(TruncatedInvariant::new(2, &v))
}

fn multiplicativity() -> std::result::Result<String, String> {
    for (a, b) in [(1i64, 2i64), (-2, 3), (1, -1)] {
        let u = lift(unknot(a).disjoint_union(&unknot(b)))?;
        let lhs = lift(omega_e(&u, 1, 3))?;
        let rhs = lift(lift(omega_e(&unknot(a), 1, 3))?.mul(&lift(omega_e(&unknot(b), 1, 3))?))?;
        ensure(equivalent(&lhs.value, &rhs.value)?, || format!("unknots {a}, {b}"))?;
    }
    let z = lift(Kontsevich::shared(3))?;
    for l in [unknot(2), hopf(0, 1)] {
        let x = lift(z.normalized(&l))?;
        let lhs = lift(tensor2_normal_form(&lift(coproduct(&x))?, &x.ctx, 3))?;
        let rhs = lift(tensor2_normal_form(&outer(&x, &x), &x.ctx, 3))?;
        ensure(lhs == rhs, || format!("not group-like: {}", l.to_dsl()))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..20 {
        let x = random_e2(&mut rng)?;
        let lhs = counit_left(&lift(delta_e(&x, 1))?);
        let rhs = lift(x.project(1))?;
        ensure(equivalent(&lhs.value, &rhs.value)?, || format!("counit law fails on {}", x.value))?;
    }
    Ok("unknot pairs, group-like values, counit law on 20 random elements".into())
}

/// Dimension of the loop-free span of diagrams with legs of one color in a
/// given degree, from the connected dimensions by the multiset transform.
fn one_color_dimension(degree: usize) -> std::result::Result<usize, String> {
    let mut connected = vec![0usize; degree + 1];
    for (d, slot) in connected.iter_mut().enumerate().skip(1) {
        for ntri in 0..=2 * d {
            let legs = 2 * d - ntri;
            *slot += lift(free_slot(&vec![0u16; legs], ntri))?.dimension();
        }
    }
    // Multisets of connected pieces: multiply the series Π (1 - t^d)^{-c_d}.
    let mut series = vec![0usize; degree + 1];
    series[0] = 1;
    for (d, &c) in connected.iter().enumerate().skip(1) {
        for _ in 0..c {
            for k in d..=degree {
                series[k] += series[k - d];
            }
        }
    }
    Ok(series[degree])
}

fn structural() -> std::result::Result<String, String> {
    let dim = one_color_dimension(1)?;
    ensure(dim == 2, || format!("degree-one dimension {dim}"))?;
    let bound = 3;
    let span0 = lift(IdealSpan::build(2, 0, bound))?;
    ensure(span0.rank() == bound as usize + 1, || format!("degree-zero rank {}", span0.rank()))?;
    let loops = |coeffs: &[i64]| {
        let mut v = DVec::zero(Context::vacuum(), 0);
        for (j, &c) in coeffs.iter().enumerate() {
            v.add_term(Diagram::loops(j as u32), int(c));
        }
        v
    };
    ensure(lift(span0.contains(&loops(&[0, 2, 1])))?, || "X(X+2) is missing".into())?;
    ensure(!lift(span0.contains(&loops(&[0, 1])))?, || "X lies in the ideal".into())?;
    ensure(!lift(span0.contains(&loops(&[2, 1])))?, || "X+2 lies in the ideal".into())?;
    let span2 = lift(IdealSpan::build(2, 2, 1))?;
    let theta = lift(free_slot(&[], 2))?.quotient_basis()[0].clone();
    let th = DVec::from_diagram(Context::vacuum(), 2, theta, Q::one());
    ensure(lift(span2.contains(&lift(disjoint_product(&th, &th))?))?, || "Θ² is missing".into())?;
    for d in lift(free_slot(&[], 4))?.quotient_basis() {
        let v = DVec::from_diagram(Context::vacuum(), 2, d, Q::one());
        ensure(lift(span2.contains(&v))?, || format!("{v} is missing"))?;
    }
    Ok("dimension 2 in degree one; degree-zero ideal is (X(X+2)); degree-two quotient vanishes".into())
}

fn tracked_chain(parts: &[(Partition, usize)], labels: &[Vec<usize>], bracket: &Bracket) -> crate::Result<Tracked> {
    fn go(parts: &[(Partition, usize)], labels: &[Vec<usize>], b: &Bracket, lo: usize) -> crate::Result<(Tracked, usize, usize)> {
        match b {
            Bracket::Leaf => Ok((Tracked::leaf(parts[lo].0.clone()), parts[lo].1, lo + 1)),
            Bracket::Node(l, r) => {
                let (a, x, mid) = go(parts, labels, l, lo)?;
                let (c, _, hi) = go(parts, labels, r, mid)?;
                Ok((a.then(x, &c, &labels[mid - 1])?, x, hi))
            }
        }
    }
    go(parts, labels, bracket, 0).map(|t| t.0)
}

#[derive(Debug, Clone)]
enum Bracket {
    Leaf,
    Node(Box<Bracket>, Box<Bracket>),
}

fn bracketings(n: usize) -> Vec<Bracket> {
    if n == 1 {
        return vec![Bracket::Leaf];
    }
    let mut out = Vec::new();
    for k in 1..n {
        for l in bracketings(k) {
            for r in bracketings(n - k) {
                out.push(Bracket::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

/// Checks that every bracketing of a chain of partitions yields the same
/// composite, hidden points and closed orbits. `sizes` lists the grounds
/// `X_0, X_1, ..., X_k`; part `i` lives on `X_i ⊔ X_{i+1}`.
fn chain_is_coherent(parts: &[Partition], sizes: &[usize]) -> std::result::Result<(), String> {
    let mut labels = Vec::new();
    let mut next = 0;
    for &s in &sizes[1..sizes.len() - 1] {
        labels.push((next..next + s).collect::<Vec<_>>());
        next += s;
    }
    let with_sizes: Vec<(Partition, usize)> = parts.iter().cloned().zip(sizes.iter().copied()).collect();
    let all = bracketings(parts.len());
    let first = lift(tracked_chain(&with_sizes, &labels, &all[0]))?;
    for b in &all[1..] {
        let other = lift(tracked_chain(&with_sizes, &labels, b))?;
        ensure(other == first, || format!("bracketings disagree on sizes {sizes:?}: {parts:?}"))?;
    }
    if parts.len() == 3 {
        // The orbit count identity for triples.
        let cir = |a: &Partition, x: usize, b: &Partition, y: usize| -> crate::Result<(Partition, usize)> {
            let c = crate::partitions::compose_with_cir(a, x, b, y)?;
            Ok((c.partition, c.circles.len()))
        };
        let (x, y, z) = (sizes[0], sizes[1], sizes[2]);
        let (cb, n_cb) = lift(cir(&parts[1], y, &parts[2], z))?;
        let (ba, n_ba) = lift(cir(&parts[0], x, &parts[1], y))?;
        let (_, n_left) = lift(cir(&parts[0], x, &cb, y))?;
        let (_, n_right) = lift(cir(&ba, x, &parts[2], z))?;
        ensure(n_cb + n_left == n_ba + n_right, || format!("orbit counts differ on {parts:?}"))?;
    }
    Ok(())
}

fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Partition {
    let blocks = rng.gen_range(1..=n.max(1));
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..blocks)).collect();
    Partition::from_labels(&labels)
}

fn partition_axioms(rng: &mut ChaCha8Rng) -> std::result::Result<usize, String> {
    let mut count = 0;
    // Exhaustive: all triples on grounds of at most three points each.
    for x in 0..=1 {
        for y in 1..=2 {
            for z in 1..=2 {
                for w in 0..=1 {
                    let (pa, pb, pc) = (enumerate_partitions(x + y), enumerate_partitions(y + z), enumerate_partitions(z + w));
                    for a in &pa {
                        for b in &pb {
                            for c in &pc {
                                chain_is_coherent(&[a.clone(), b.clone(), c.clone()], &[x, y, z, w])?;
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    // Randomized quadruples and triples with grounds up to twelve points.
    for i in 0..RANDOM_INSTANCES {
        let k = if i % 2 == 0 { 3 } else { 4 };
        let sizes: Vec<usize> = (0..=k).map(|j| if j == 0 || j == k { rng.gen_range(0..=2) } else { rng.gen_range(1..=3) }).collect();
        let parts: Vec<Partition> = (0..k).map(|j| random_partition(rng, sizes[j] + sizes[j + 1])).collect();
        chain_is_coherent(&parts, &sizes)?;
        count += 1;
    }
    Ok(count)
}

/// A random tangle program on `source` with at most `max_width` strands.
pub fn random_program(rng: &mut ChaCha8Rng, source: &[Sign], steps: usize, max_width: usize) -> crate::Result<TangleProgram> {
    let mut w: Word = source.to_vec();
    let mut gens = Vec::new();
    for _ in 0..steps {
        let mut moves = Vec::new();
        for pos in 0..w.len().saturating_sub(1) {
            moves.push(Gen::Cross { pos, positive: rng.gen() });
            if w[pos] != w[pos + 1] {
                moves.push(Gen::Cap { pos, first: w[pos] });
            }
        }
        if w.len() + 2 <= max_width {
            for pos in 0..=w.len() {
                moves.push(Gen::Cup { pos, first: if rng.gen() { Sign::Plus } else { Sign::Minus } });
            }
        }
        if moves.is_empty() {
            break;
        }
        let g = moves[rng.gen_range(0..moves.len())];
        w = g.apply(&w)?;
        gens.push(g);
    }
    TangleProgram::new(source.to_vec(), gens)
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    (0..len).map(|_| if rng.gen() { Sign::Plus } else { Sign::Minus }).collect()
}

/// Diagram pools of degree one and two on a set of anchors.
struct Pools {
    cache: HashMap<(u16, u16), Vec<Diagram>>,
}

impl Pools {
    fn get(&mut self, nseg: u16, ncirc: u16) -> crate::Result<&Vec<Diagram>> {
        if let std::collections::hash_map::Entry::Vacant(e) = self.cache.entry((nseg, ncirc)) {
            let anchors: Vec<Anchor> = (0..nseg).map(Anchor::Seg).chain((0..ncirc).map(Anchor::Circ)).collect();
            let mut pool = Vec::new();
            if !anchors.is_empty() {
                for deg in 1..=2usize {
                    for ntri in 0..=(2 * deg - 2) {
                        pool.extend(on_anchors(&anchors, 2 * deg - ntri, ntri)?);
                    }
                }
            }
            e.insert(pool);
        }
        Ok(&self.cache[&(nseg, ncirc)])
    }
}

fn random_vector(rng: &mut ChaCha8Rng, pools: &mut Pools, ctx: Context) -> crate::Result<DVec> {
    let pool = pools.get(ctx.skeleton.num_components() as u16, ctx.circles)?;
    let mut x = DVec::zero(ctx, 2);
    if rng.gen_bool(0.5) {
        x.add_term(Diagram::empty(), int(rng.gen_range(-2..=2)));
    }
    if !pool.is_empty() {
        for _ in 0..rng.gen_range(1..=3) {
            x.add_term(pool[rng.gen_range(0..pool.len())].clone(), int(rng.gen_range(-3..=3)));
        }
    }
    Ok(x)
}

fn relabel_circles(x: &DVec, perm: &[u16]) -> DVec {
    let mut out = DVec::zero(x.ctx.clone(), x.max_deg);
    for (d, c) in x.terms() {
        let mut bld = Builder::new();
        bld.add(d, |i| match d.legs[i] {
            Anchor::Circ(s) => LegFate::Keep(Anchor::Circ(perm[s as usize]), i as u64),
            other => LegFate::Keep(other, i as u64),
        });
        out.add_term(bld.finish(), c.clone());
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<u16>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, (n - 1) as u16);
            out.push(q);
        }
    }
    out
}

/// Equality after some renumbering of the circles.
fn equivalent_up_to_circles(a: &DVec, b: &DVec) -> std::result::Result<bool, String> {
    if a.ctx != b.ctx {
        return Ok(false);
    }
    for p in permutations(a.ctx.circles as usize) {
        if equivalent(&relabel_circles(a, &p), b)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn skeleton_of(p: &TangleProgram) -> crate::Result<OrientedBrauer> {
    Ok(p.skeleton()?.0)
}

/// One randomized instance of the category identities, chosen by `kind`.
fn jacobi_instance(rng: &mut ChaCha8Rng, pools: &mut Pools, kind: usize) -> std::result::Result<(), String> {
    let len = rng.gen_range(0..=2);
    let w0 = random_word(rng, len);
    let steps: [usize; 3] = [rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3)];
    let p1 = lift(random_program(rng, &w0, steps[0], 4))?;
    let p2 = lift(random_program(rng, p1.target(), steps[1], 4))?;
    let p3 = lift(random_program(rng, p2.target(), steps[2], 4))?;
    let (s1, s2, s3) = (lift(skeleton_of(&p1))?, lift(skeleton_of(&p2))?, lift(skeleton_of(&p3))?);
    let mut vec_on = |rng: &mut ChaCha8Rng, s: &OrientedBrauer| lift(random_vector(rng, pools, Context::skeleton(s.clone())));
    let x = vec_on(rng, &s1)?;
    match kind {
        0 => {
            let left = lift(compose(&identity(&s1.source(), 2), &x))?;
            let right = lift(compose(&x, &identity(&s1.target(), 2)))?;
            ensure(equivalent(&left, &x)? && equivalent(&right, &x)?, || format!("unit law fails on {x}"))
        }
        1 => {
            let (y, z) = (vec_on(rng, &s2)?, vec_on(rng, &s3)?);
            let lhs = lift(compose(&lift(compose(&x, &y))?, &z))?;
            let rhs = lift(compose(&x, &lift(compose(&y, &z))?))?;
            ensure(equivalent_up_to_circles(&lhs, &rhs)?, || format!("composition is not associative on {x} | {y} | {z}"))
        }
        2 => {
            let (y, z) = (vec_on(rng, &s2)?, vec_on(rng, &s3)?);
            let lhs = tensor(&tensor(&x, &y), &z);
            let rhs = tensor(&x, &tensor(&y, &z));
            ensure(lhs == rhs, || "tensor product is not associative".into())?;
            let e = DVec::one(Context::vacuum(), 2);
            ensure(tensor(&x, &e) == x && tensor(&e, &x) == x, || "empty skeleton is not a unit".into())
        }
        3 => {
            let y = vec_on(rng, &s2)?;
            let len = rng.gen_range(0..=2);
            let w = random_word(rng, len);
            let steps: [usize; 2] = [rng.gen_range(1..=2), rng.gen_range(1..=2)];
            let q1 = lift(random_program(rng, &w, steps[0], 3))?;
            let q2 = lift(random_program(rng, q1.target(), steps[1], 3))?;
            let (t1, t2) = (lift(skeleton_of(&q1))?, lift(skeleton_of(&q2))?);
            let (u, v) = (vec_on(rng, &t1)?, vec_on(rng, &t2)?);
            let lhs = lift(compose(&tensor(&x, &u), &tensor(&y, &v)))?;
            let rhs = tensor(&lift(compose(&x, &y))?, &lift(compose(&u, &v))?);
            ensure(equivalent_up_to_circles(&lhs, &rhs)?, || "interchange law fails".into())
        }
        4 | 5 => {
            // Close the chain to get vectors with circles and no skeleton.
            let closed = lift(random_closed_vector(rng, pools))?;
            if kind == 4 {
                let k = closed.ctx.circles;
                for s in 0..k {
                    let twice = lift(co_circle(&lift(co_circle(&closed, s))?, s))?;
                    ensure(twice == closed, || "circle reversal is not an involution".into())?;
                    for t in 0..k {
                        let a = lift(co_circle(&lift(co_circle(&closed, s))?, t))?;
                        let b = lift(co_circle(&lift(co_circle(&closed, t))?, s))?;
                        ensure(equivalent(&a, &b)?, || "circle reversals do not commute".into())?;
                    }
                }
                Ok(())
            } else {
                let other = lift(random_closed_vector(rng, pools))?;
                for s in 0..closed.ctx.circles {
                    let lhs = lift(co_circle(&tensor(&closed, &other), s))?;
                    let rhs = tensor(&lift(co_circle(&closed, s))?, &other);
                    ensure(equivalent(&lhs, &rhs)?, || "circle reversal does not commute with tensor".into())?;
                }
                Ok(())
            }
        }
        _ => {
            let y = vec_on(rng, &s2)?;
            let n = x.ctx.skeleton.num_components();
            if n == 0 {
                return Ok(());
            }
            let a = rng.gen_range(0..n);
            let (_, ma, _) = x.ctx.skeleton.tensor_with_maps(&y.ctx.skeleton);
            let lhs = lift(dbl(&tensor(&x, &y), &[ma[a]]))?;
            let rhs = tensor(&lift(dbl(&x, &[a]))?, &y);
            ensure(equivalent(&lhs, &rhs)?, || "doubling does not commute with tensor".into())
        }
    }
}

fn random_closed_vector(rng: &mut ChaCha8Rng, pools: &mut Pools) -> crate::Result<DVec> {
    let k = rng.gen_range(1..=2u16);
    random_vector(rng, pools, Context::circles(k))
}

fn jacobi_axioms(rng: &mut ChaCha8Rng) -> std::result::Result<usize, String> {
    let mut pools = Pools { cache: HashMap::new() };
    let mut count = 0;
    // Exhaustive: every basis diagram of degree at most one on small skeleta.
    let small = [
        OrientedBrauer::identity(&[Sign::Plus]),
        OrientedBrauer::identity(&[Sign::Minus]),
        OrientedBrauer::identity(&[Sign::Plus, Sign::Minus]),
        OrientedBrauer::cup(Sign::Plus),
        OrientedBrauer::cap(Sign::Minus),
        OrientedBrauer::swap([Sign::Plus, Sign::Minus]),
    ];
    for s in &small {
        let anchors: Vec<Anchor> = (0..s.num_components() as u16).map(Anchor::Seg).collect();
        let mut basis = vec![Diagram::empty()];
        basis.extend(lift(on_anchors(&anchors, 2, 0))?);
        for d in basis {
            let x = DVec::from_diagram(Context::skeleton(s.clone()), 1, d, Q::one());
            let left = lift(compose(&identity(&s.source(), 1), &x))?;
            let right = lift(compose(&x, &identity(&s.target(), 1)))?;
            ensure(equivalent(&left, &x)? && equivalent(&right, &x)?, || format!("unit law fails on {x}"))?;
            for t in &small {
                let y = DVec::one(Context::skeleton(t.clone()), 1);
                let lhs = tensor(&tensor(&x, &y), &x);
                let rhs = tensor(&x, &tensor(&y, &x));
                ensure(lhs == rhs, || "tensor product is not associative".into())?;
                count += 1;
            }
        }
    }
    for i in 0..RANDOM_INSTANCES {
        jacobi_instance(rng, &mut pools, i % 7)?;
        count += 1;
    }
    Ok(count)
}

fn axioms() -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let p = partition_axioms(&mut rng)?;
    let j = jacobi_axioms(&mut rng)?;
    Ok(format!("{p} partition chains and {j} diagram instances"))
}

fn aarhus_oracle() -> std::result::Result<String, String> {
    let presets = [unknot(1), unknot(-1), unknot(2), unknot(-2), lift(unknot(1).disjoint_union(&unknot(-1)))?];
    for l in &presets {
        let a = lift(aarhus_invariant(l, 3))?;
        ensure(a.max_deg >= 1, || format!("only degree {} is determined", a.max_deg))?;
        let z = lift(zlmo(l, 1, 3, Variant::Tilde))?;
        ensure(equivalent(&a.truncated(1), &z)?, || format!("{}: {} vs {}", l.to_dsl(), a.truncated(1), z))?;
    }
    for l in [unknot(0), hopf(1, 1)] {
        match aarhus_invariant(&l, 3) {
            Err(crate::Error::NonRegular { .. }) => {}
            other => return Err(format!("non-regular input accepted: {other:?}")),
        }
    }
    Ok("unknots ±1, ±2 and the cancelling pair; unknot(0) and hopf(1,1) rejected".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracketings_are_counted_by_catalan_numbers() {
        let counts: Vec<usize> = (1..=5).map(|n| bracketings(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14]);
    }
}
