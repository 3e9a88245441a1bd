use lmokit::acceptance::random_program;
use lmokit::brauer::{OrientedBrauer, Sign, Word};
use lmokit::jacobi::enumerate::on_anchors;
use lmokit::jacobi::ops::co_circle;
use lmokit::jacobi::{normal_form, Anchor, Context, DVec};
use lmokit::lmo::jmap::{j_n, JMode};
use lmokit::partitions::{
    compose_with_cir, fpfi_polynomial, odd_double_factorial, rising_even_product, Involution, Partition, Tracked,
};
use lmokit::tangles::linking::linking;
use lmokit::tangles::parse::parse;
use lmokit::tangles::{Gen, TangleProgram};
use lmokit::Q;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn partition(n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..n.max(1), n).prop_map(|l| Partition::from_labels(&l))
}

fn involution(m: usize) -> impl Strategy<Value = Involution> {
    Just((0..2 * m).collect::<Vec<usize>>()).prop_shuffle().prop_map(move |p| {
        let pairs: Vec<(usize, usize)> = p.chunks(2).map(|c| (c[0], c[1])).collect();
        Involution::from_pairs(2 * m, &pairs).unwrap()
    })
}

fn word(len: usize, rng: &mut ChaCha8Rng) -> Word {
    (0..len).map(|_| if rng.gen() { Sign::Plus } else { Sign::Minus }).collect()
}

/// A random program cut into three consecutive pieces.
fn three_pieces(seed: u64) -> (TangleProgram, TangleProgram, TangleProgram) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = rng.gen_range(0..=3);
    let w = word(len, &mut rng);
    let steps: [usize; 3] = [rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3)];
    let a = random_program(&mut rng, &w, steps[0], 5).unwrap();
    let b = random_program(&mut rng, a.target(), steps[1], 5).unwrap();
    let c = random_program(&mut rng, b.target(), steps[2], 5).unwrap();
    (a, b, c)
}

/// A random closed program: strands left open are capped off in order.
fn closed_program(seed: u64) -> TangleProgram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_program(&mut rng, &[], 8, 6).unwrap();
    let mut gens = p.gens().to_vec();
    let mut w = p.target().to_vec();
    while let Some(pos) = (0..w.len().saturating_sub(1)).find(|&i| w[i] != w[i + 1]) {
        let g = Gen::Cap { pos, first: w[pos] };
        w = g.apply(&w).unwrap();
        gens.push(g);
    }
    TangleProgram::new(Vec::new(), gens).unwrap()
}

fn skeleton(p: &TangleProgram) -> (OrientedBrauer, usize) {
    p.skeleton().unwrap()
}

fn circle_vector(seed: u64, k: u16, max_deg: usize) -> DVec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let anchors: Vec<Anchor> = (0..k).map(Anchor::Circ).collect();
    let mut pool = Vec::new();
    for deg in 1..=max_deg {
        for ntri in 0..=(2 * deg - 2) {
            pool.extend(on_anchors(&anchors, 2 * deg - ntri, ntri).unwrap());
        }
    }
    let mut x = DVec::zero(Context::circles(k), max_deg);
    for _ in 0..rng.gen_range(1..=4) {
        let d = pool[rng.gen_range(0..pool.len())].clone();
        x.add_term(d, Q::from_integer(rng.gen_range(-3i64..=3).into()));
    }
    x
}

fn assert_equiv(a: &DVec, b: &DVec) {
    let d = normal_form(&a.sub(b).unwrap()).unwrap();
    assert!(d.is_zero(), "difference: {d}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn join_is_a_semilattice((a, b, c) in (1usize..7).prop_flat_map(|n| (partition(n), partition(n), partition(n)))) {
        let ab = a.join(&b).unwrap();
        prop_assert_eq!(&ab, &b.join(&a).unwrap());
        prop_assert_eq!(ab.join(&c).unwrap(), a.join(&b.join(&c).unwrap()).unwrap());
        prop_assert_eq!(a.join(&a).unwrap(), a.clone());
        prop_assert!(a.refines(&ab) && b.refines(&ab));
        prop_assert!(Partition::discrete(a.len()).refines(&a));
        prop_assert!(a.refines(&Partition::indiscrete(a.len())));
    }

    #[test]
    fn pull_of_push_is_coarser((p, f, m) in (1usize..6, 1usize..6).prop_flat_map(|(n, m)| {
        (partition(n), prop::collection::vec(0..m, n), Just(m))
    })) {
        let pushed = p.push(&f, m).unwrap();
        prop_assert!(p.refines(&pushed.pull(&f).unwrap()));
        prop_assert_eq!(pushed.num_blocks() <= m, true);
    }

    #[test]
    fn tracked_composition_is_associative(
        (a, b, c, x, y, z) in (0usize..3, 1usize..3, 1usize..3, 0usize..3).prop_flat_map(|(x, y, z, w)| {
            (partition(x + y), partition(y + z), partition(z + w), Just(x), Just(y), Just(z))
        })
    ) {
        let ly: Vec<usize> = (0..y).collect();
        let lz: Vec<usize> = (y..y + z).collect();
        let (ta, tb, tc) = (Tracked::leaf(a.clone()), Tracked::leaf(b.clone()), Tracked::leaf(c.clone()));
        let left = ta.then(x, &tb, &ly).unwrap().then(x, &tc, &lz).unwrap();
        let right = ta.then(x, &tb.then(y, &tc, &lz).unwrap(), &ly).unwrap();
        prop_assert_eq!(&left, &right);
        let ab = compose_with_cir(&a, x, &b, y).unwrap();
        let bc = compose_with_cir(&b, y, &c, z).unwrap();
        let ab_c = compose_with_cir(&ab.partition, x, &c, z).unwrap();
        let a_bc = compose_with_cir(&a, x, &bc.partition, y).unwrap();
        prop_assert_eq!(ab.circles.len() + ab_c.circles.len(), bc.circles.len() + a_bc.circles.len());
        prop_assert_eq!(left.circles.len(), ab.circles.len() + ab_c.circles.len());
    }

    #[test]
    fn fpfi_orbit_polynomial_is_the_rising_even_product(s in (1usize..5).prop_flat_map(involution)) {
        let m = s.len() / 2;
        let poly = fpfi_polynomial(&s);
        prop_assert_eq!(&poly, &rising_even_product(m));
        prop_assert_eq!(poly.iter().sum::<u64>(), odd_double_factorial(m));
    }

    #[test]
    fn brauer_composition_is_associative_and_unital(seed in any::<u64>()) {
        let (a, b, c) = three_pieces(seed);
        let (sa, na) = skeleton(&a);
        let (sb, nb) = skeleton(&b);
        let (sc, nc) = skeleton(&c);
        let ab = sa.then(&sb).unwrap();
        let bc = sb.then(&sc).unwrap();
        let ab_c = ab.diagram.then(&sc).unwrap();
        let a_bc = sa.then(&bc.diagram).unwrap();
        prop_assert_eq!(&ab_c.diagram, &a_bc.diagram);
        prop_assert_eq!(ab.circles.len() + ab_c.circles.len(), bc.circles.len() + a_bc.circles.len());
        let (whole, nw) = skeleton(&a.then(&b).unwrap().then(&c).unwrap());
        prop_assert_eq!(&whole, &ab_c.diagram);
        prop_assert_eq!(nw, na + nb + nc + ab.circles.len() + ab_c.circles.len());
        let unit_left = OrientedBrauer::identity(&sa.source()).then(&sa).unwrap();
        let unit_right = sa.then(&OrientedBrauer::identity(&sa.target())).unwrap();
        prop_assert_eq!(&unit_left.diagram, &sa);
        prop_assert_eq!(&unit_right.diagram, &sa);
        prop_assert!(unit_left.circles.is_empty() && unit_right.circles.is_empty());
    }

    #[test]
    fn orientation_reversal_is_an_involution(seed in any::<u64>()) {
        let (a, b, _) = three_pieces(seed);
        let p = a.then(&b).unwrap();
        let (s, _) = skeleton(&p);
        for c in 0..p.components().len() {
            prop_assert_eq!(&p.co(c).unwrap().co(c).unwrap(), &p);
        }
        for c in 0..s.num_components() {
            prop_assert_eq!(&s.co(c).unwrap().co(c).unwrap(), &s);
        }
    }

    #[test]
    fn text_format_round_trips(seed in any::<u64>()) {
        let (a, b, c) = three_pieces(seed);
        let p = a.then(&b).unwrap().then(&c).unwrap();
        prop_assert_eq!(parse(&p.to_dsl()).unwrap(), p);
    }

    #[test]
    fn linking_matrices_are_symmetric(seed in any::<u64>()) {
        let p = closed_program(seed);
        prop_assert!(p.is_closed());
        let lk = linking(&p).unwrap();
        let n = lk.matrix.len();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(lk.matrix[i][j], lk.matrix[j][i]);
            }
        }
        prop_assert_eq!(lk.sigma_plus + lk.sigma_minus + lk.sigma_zero, n);
        let doubled = linking(&p.disjoint_union(&p).unwrap()).unwrap();
        prop_assert_eq!(doubled.matrix.len(), 2 * n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn normal_form_is_a_linear_projection(s1 in any::<u64>(), s2 in any::<u64>(), k in 1u16..3, c in -3i64..4) {
        let x = circle_vector(s1, k, 2);
        let y = circle_vector(s2, k, 2);
        let nx = normal_form(&x).unwrap();
        prop_assert_eq!(&normal_form(&nx).unwrap(), &nx);
        let c = Q::from_integer(c.into());
        let lhs = normal_form(&x.scale(&c).add(&y).unwrap()).unwrap();
        let rhs = nx.scale(&c).add(&normal_form(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, normal_form(&rhs).unwrap());
    }

    #[test]
    fn circle_reversal_is_an_involution(seed in any::<u64>(), k in 1u16..3) {
        let x = circle_vector(seed, k, 2);
        for s in 0..k {
            assert_equiv(&co_circle(&co_circle(&x, s).unwrap(), s).unwrap(), &x);
        }
    }

    #[test]
    fn both_j_modes_agree(seed in any::<u64>(), n in 1usize..3) {
        let x = circle_vector(seed, 1, 2);
        assert_equiv(&j_n(&x, n, JMode::Direct).unwrap(), &j_n(&x, n, JMode::ViaSplitting).unwrap());
    }
}
