use lmokit::jacobi::{normal_form, Context, DVec, Diagram};
use lmokit::lmo::truncated::{to_e, TruncatedInvariant};
use lmokit::lmo::{h1_order, normalizer, omega_e, omega_partial, zlmo, Variant};
use lmokit::tangles::linking::linking;
use lmokit::tangles::parse::{hopf, unknot};
use lmokit::tangles::{kii_pair, TangleProgram};
use lmokit::Q;
use num::{One, Signed};

fn assert_same(a: &TruncatedInvariant, b: &TruncatedInvariant) {
    assert_eq!(a.n, b.n);
    let d = normal_form(&a.value.sub(&b.value).unwrap()).unwrap();
    assert!(d.is_zero(), "difference: {d}");
}

fn int(x: i64) -> Q {
    Q::from_integer(x.into())
}

#[test]
fn normalizers_have_unit_sign_constants() {
    for n in [1, 2] {
        for (pos, sign) in [(true, -1i64), (false, 1)] {
            let v = normalizer(pos, n, n).unwrap();
            assert_eq!(v.epsilon(), int(sign.pow(n as u32)));
        }
    }
}

#[test]
fn level_one_constant_is_the_homology_order_of_lens_spaces() {
    for p in [1i64, -1, 2, -2, 3, 5] {
        let om = omega_e(&unknot(p), 1, 2).unwrap();
        assert_eq!(om.epsilon(), int(p.abs()), "framing {p}");
    }
}

#[test]
fn empty_link_and_cancelling_unknots_give_one() {
    assert_same(&omega_e(&TangleProgram::empty(), 1, 3).unwrap(), &TruncatedInvariant::one(1));
    let l = unknot(1).disjoint_union(&unknot(-1)).unwrap();
    assert_same(&omega_e(&l, 1, 3).unwrap(), &TruncatedInvariant::one(1));
}

#[test]
fn budget_below_the_completeness_bound_is_refused() {
    assert!(matches!(omega_e(&unknot(2), 1, 1), Err(lmokit::Error::Budget(_))));
    assert!(matches!(omega_e(&unknot(2), 2, 3), Err(lmokit::Error::Budget(_))));
    let partial = omega_partial(&unknot(2), 2, 3).unwrap();
    assert_eq!(partial.known_degree(), 1);
}

#[test]
fn stabilization_does_not_change_level_one() {
    let l = unknot(2);
    let base = omega_e(&l, 1, 3).unwrap();
    for s in [true, false] {
        assert_same(&omega_e(&l.ki(s).unwrap(), 1, 3).unwrap(), &base);
    }
}

#[test]
fn multiplicative_under_disjoint_union() {
    for (a, b) in [(1i64, 2i64), (-2, 3)] {
        let u = unknot(a).disjoint_union(&unknot(b)).unwrap();
        let lhs = omega_e(&u, 1, 3).unwrap();
        let rhs = omega_e(&unknot(a), 1, 3).unwrap().mul(&omega_e(&unknot(b), 1, 3).unwrap()).unwrap();
        assert_same(&lhs, &rhs);
    }
}

#[test]
fn orientation_reversal_on_hopf_links() {
    for (f1, f2) in [(0, 0), (1, 1), (2, -1)] {
        let h = hopf(f1, f2);
        let base = omega_e(&h, 1, 3).unwrap();
        for c in 0..2 {
            assert_same(&omega_e(&h.co(c).unwrap(), 1, 3).unwrap(), &base);
        }
    }
}

#[test]
fn handle_slides_at_level_one() {
    use lmokit::brauer::Sign::{Minus, Plus};
    use lmokit::tangles::Gen;
    let id = TangleProgram::identity(&[Plus, Minus]);
    let twist = TangleProgram::new(vec![Plus, Minus], vec![Gen::Cross { pos: 0, positive: true }, Gen::Cross { pos: 0, positive: true }]).unwrap();
    for s in [id, twist] {
        let (l1, l2) = kii_pair(&s).unwrap();
        assert_same(&omega_e(&l1, 1, 3).unwrap(), &omega_e(&l2, 1, 3).unwrap());
    }
}

#[test]
fn hopf_link_presents_the_sphere() {
    let z = zlmo(&hopf(0, 0), 1, 3, Variant::Tilde).unwrap();
    assert_eq!(z, DVec::one(Context::vacuum(), 1));
}

#[test]
fn tilde_variant_rescales_level_one() {
    for p in [1i64, -2, 3] {
        let l = unknot(p);
        let om = omega_e(&l, 1, 2).unwrap();
        let h = h1_order(&linking(&l).unwrap()).unwrap();
        let z = zlmo(&l, 1, 2, Variant::Tilde).unwrap();
        let expect = om.value.scale(&(Q::one() / h));
        assert!(normal_form(&z.sub(&expect).unwrap()).unwrap().is_zero());
    }
}

#[test]
fn tilde_variant_rejects_non_spheres() {
    assert!(matches!(zlmo(&unknot(0), 1, 2, Variant::Tilde), Err(lmokit::Error::NonRegular { .. })));
}

#[test]
fn loop_at_minus_two_n_vanishes_with_its_shift() {
    use lmokit::jacobi::Diagram;
    for n in 1..=3usize {
        let mut x = DVec::zero(Context::vacuum(), 0);
        x.add_term(Diagram::loops(1), Q::one());
        x.add_term(Diagram::empty(), int(2 * n as i64));
        assert!(to_e(&x, n).unwrap().value.is_zero());
    }
}

#[test]
fn level_two_low_degree_matches_level_one() {
    // Ω_2 at degree 1 equals ε(Ω_1) times Ω_1 at degree 1.
    let l = unknot(3);
    let om1 = omega_e(&l, 1, 3).unwrap();
    let om2 = omega_partial(&l, 2, 3).unwrap();
    assert_eq!(om2.known_degree(), 1);
    assert_eq!(om2.epsilon(), om1.epsilon() * om1.epsilon());
    let lhs = om2.part(1);
    let rhs = om1.part(1).scale(&om1.epsilon());
    assert!(normal_form(&lhs.sub(&rhs).unwrap()).unwrap().is_zero());
    let _ = Signed::abs(&Q::one());
}

fn theta_term(ctx: Context, max_deg: usize, c: Q) -> DVec {
    let theta = Diagram::assemble(vec![], &[], &[[0, 1, 2], [3, 4, 5]], &[(0, 3), (1, 4), (2, 5)], 0);
    DVec::from_diagram(ctx, max_deg, theta, c)
}

/// Degree-one parts computed by this pipeline, frozen as a regression guard.
#[test]
fn degree_one_part_of_lens_spaces_is_frozen() {
    for p in [1i64, -1, 2, -2, 3, -3, 4, 5] {
        let om = omega_e(&unknot(p), 1, 2).unwrap();
        let c = Q::new((p.signum() * (p.abs() - 1) * (p.abs() - 2)).into(), 48.into());
        let expect = theta_term(om.value.ctx.clone(), om.value.max_deg, c);
        let d = normal_form(&om.value.part(1).sub(&expect).unwrap()).unwrap();
        assert!(d.is_zero(), "framing {p}: {d}");
    }
    let om = omega_e(&hopf(1, 1), 1, 3).unwrap();
    let expect = theta_term(om.value.ctx.clone(), om.value.max_deg, Q::new((-1).into(), 24.into()));
    let d = normal_form(&om.value.part(1).sub(&expect).unwrap()).unwrap();
    assert!(d.is_zero(), "hopf(1, 1): {d}");
}
