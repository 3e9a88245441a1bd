use lmokit::aarhus::{aarhus_invariant, chi, close_strands, strand_lift, gaussian_integral, link_gaussian, sigma, strands, GaussianElement};
use lmokit::jacobi::{normal_form, Anchor, Context, DVec, Diagram};
use lmokit::lmo::{zlmo, Variant};
use lmokit::tangles::linking::linking;
use lmokit::tangles::parse::{hopf, unknot};
use lmokit::tangles::TangleProgram;
use lmokit::Q;
use num::{One, Zero};

fn int(x: i64) -> Q {
    Q::from_integer(x.into())
}

fn assert_equiv(a: &DVec, b: &DVec) {
    let d = normal_form(&a.sub(b).unwrap()).unwrap();
    assert!(d.is_zero(), "difference: {d}");
}

fn regular_presets() -> Vec<TangleProgram> {
    vec![unknot(1), unknot(-1), unknot(2), unknot(-2), unknot(3), unknot(1).disjoint_union(&unknot(-1)).unwrap(), hopf(0, 0), hopf(1, 2)]
}

#[test]
fn averaging_the_empty_diagram() {
    let one = DVec::one(Context::colors(2), 2);
    assert_eq!(chi(&one).unwrap(), DVec::one(strands(2), 2));
}

#[test]
fn averaging_a_self_strut_gives_the_chord() {
    let s = DVec::from_diagram(Context::colors(1), 1, Diagram::strut(Anchor::Color(0), Anchor::Color(0)), Q::one());
    let chord = DVec::from_diagram(strands(1), 1, Diagram::strut(Anchor::Seg(0), Anchor::Seg(0)), Q::one());
    assert_equiv(&chi(&s).unwrap(), &chord);
}

fn every_component_has_a_leg(d: &Diagram) -> bool {
    let (comp, n) = d.component_ids();
    d.loops == 0 && (0..n).all(|c| (0..d.legs.len()).any(|i| comp[i] == c))
}

#[test]
fn inverse_averaging_round_trips() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for k in 1..=2u16 {
        for _ in 0..5 {
            let mut y = DVec::zero(Context::colors(k), 2);
            let pool: Vec<Diagram> = lmokit::jacobi::enumerate::on_anchors(&(0..k).map(Anchor::Color).collect::<Vec<_>>(), 2, 0)
                .unwrap()
                .into_iter()
                .chain(lmokit::jacobi::enumerate::on_anchors(&(0..k).map(Anchor::Color).collect::<Vec<_>>(), 4, 0).unwrap())
                .chain(lmokit::jacobi::enumerate::on_anchors(&(0..k).map(Anchor::Color).collect::<Vec<_>>(), 2, 2).unwrap())
                .filter(every_component_has_a_leg)
                .collect();
            for _ in 0..4 {
                y.add_term(pool[rng.gen_range(0..pool.len())].clone(), int(rng.gen_range(-4..=4)));
            }
            let y = normal_form(&y).unwrap();
            assert_equiv(&sigma(&chi(&y).unwrap()).unwrap(), &y);
        }
    }
}

#[test]
fn integral_of_one_is_one() {
    let g = GaussianElement { colors: 2, lambda: vec![vec![int(2), int(1)], vec![int(1), int(-3)]], p: DVec::one(Context::colors(2), 3) };
    assert_eq!(gaussian_integral(&g).unwrap(), DVec::one(Context::vacuum(), 1));
}

#[test]
fn singular_strut_matrix_is_rejected() {
    let g = GaussianElement { colors: 1, lambda: vec![vec![Q::zero()]], p: DVec::one(Context::colors(1), 3) };
    assert!(gaussian_integral(&g).is_err());
}

#[test]
fn struts_of_the_integrand_are_the_linking_matrix() {
    for l in regular_presets().into_iter().chain([unknot(0), hopf(0, 1)]) {
        let g = link_gaussian(&l, 3).unwrap();
        let lk = linking(&l).unwrap();
        let expect: Vec<Vec<Q>> = lk.matrix.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        assert_eq!(g.lambda, expect, "{}", l.to_dsl());
    }
}

#[test]
fn agrees_with_the_rescaled_level_one_invariant() {
    for l in regular_presets() {
        let a = aarhus_invariant(&l, 3).unwrap();
        assert!(a.max_deg >= 1);
        let z = zlmo(&l, 1, 3, Variant::Tilde).unwrap();
        assert_equiv(&a.truncated(1), &z);
    }
}

#[test]
fn non_regular_presentations_are_rejected() {
    for l in [unknot(0), hopf(1, 1)] {
        assert!(matches!(aarhus_invariant(&l, 3), Err(lmokit::Error::NonRegular { .. })));
    }
}

#[test]
fn strand_lift_closes_to_the_normalized_link_value() {
    let z = lmokit::kontsevich::Kontsevich::shared(3).unwrap();
    for l in regular_presets() {
        let lift = strand_lift(&l, 3).unwrap();
        assert_equiv(&close_strands(&lift).unwrap(), &z.normalized(&l).unwrap());
    }
}
