use lmokit::brauer::Sign::{self, Minus, Plus};
use lmokit::jacobi::nf::normal_form;
use lmokit::jacobi::ops::{co_segment, compose_all, cs_alpha_circle, dbl, identity};
use lmokit::jacobi::vector::{Context, DVec};
use lmokit::jacobi::{Anchor, Diagram};
use lmokit::kontsevich::algebra::inverse;
use lmokit::kontsevich::{compute_nu, solve_associator, zigzag, Kontsevich};
use lmokit::tangles::parse::{hopf, unknot};
use lmokit::tangles::{Gen, TangleProgram};
use lmokit::Q;
use num::One;

fn z3() -> std::sync::Arc<Kontsevich> {
    Kontsevich::shared(3).unwrap()
}

fn prog(src: &[Sign], gens: Vec<Gen>) -> TangleProgram {
    TangleProgram::new(src.to_vec(), gens).unwrap()
}

fn x(pos: usize, positive: bool) -> Gen {
    Gen::Cross { pos, positive }
}

fn assert_equiv(a: &DVec, b: &DVec) {
    let d = normal_form(&a.sub(b).unwrap()).unwrap();
    assert!(d.is_zero(), "difference: {d}");
}

fn two_wheel_on_strand(n: usize) -> DVec {
    // Legs on the strand meet the spokes of a two-vertex wheel.
    let d = Diagram::assemble(
        vec![Anchor::Seg(0), Anchor::Seg(0)],
        &[0, 1],
        &[[2, 3, 4], [5, 6, 7]],
        &[(0, 2), (1, 5), (3, 7), (6, 4)],
        0,
    );
    DVec::from_diagram(Context::skeleton(lmokit::brauer::OrientedBrauer::identity(&[Plus])), n, d, Q::one())
}

#[test]
fn associator_is_even_with_coefficient_one_twenty_fourth() {
    let a = solve_associator(3).unwrap();
    assert_eq!(a.coefficient, Q::new(1.into(), 24.into()));
    assert!(a.value.part(1).is_zero());
    assert!(a.value.part(3).is_zero());
    assert_eq!(a.value.constant(), Q::one());
}

#[test]
fn associator_beyond_budget_is_refused() {
    assert!(matches!(solve_associator(4), Err(lmokit::Error::Budget(_))));
}

#[test]
fn both_zigzags_agree() {
    let a = solve_associator(3).unwrap();
    assert_eq!(zigzag(&a, false).unwrap(), zigzag(&a, true).unwrap());
}

#[test]
fn nu_in_degree_two_is_the_two_wheel_over_48() {
    let nu = compute_nu(&solve_associator(3).unwrap()).unwrap();
    assert!(nu.value.part(1).is_zero());
    assert!(nu.value.part(3).is_zero());
    assert_equiv(&nu.value.part(2), &two_wheel_on_strand(3).scale(&Q::new(1.into(), 48.into())));
}

#[test]
fn nu_square_root_squares_to_nu() {
    let nu = compute_nu(&solve_associator(3).unwrap()).unwrap();
    assert_equiv(&compose_all(&[nu.sqrt.clone(), nu.sqrt.clone()]).unwrap(), &nu.value);
    assert_equiv(&compose_all(&[nu.sqrt.clone(), nu.inv_sqrt.clone()]).unwrap(), &identity(&[Plus], 3));
}

#[test]
fn identity_program_evaluates_to_identity() {
    let w = [Plus, Minus, Plus];
    assert_eq!(z3().z_eval(&TangleProgram::identity(&w)).unwrap(), identity(&w, 3));
}

#[test]
fn reidemeister_two() {
    let z = z3();
    for w in [[Plus, Plus], [Plus, Minus], [Minus, Plus], [Minus, Minus]] {
        for s in [true, false] {
            let t = prog(&w, vec![x(0, s), x(0, !s)]);
            assert_equiv(&z.z_eval(&t).unwrap(), &identity(&w, 3));
        }
    }
    let w = [Plus, Minus, Plus];
    let t = prog(&w, vec![x(0, true), x(0, false)]);
    assert_equiv(&z.z_eval(&t).unwrap(), &identity(&w, 3));
}

/// Sign of a crossing of fixed over/under type between strands of letters `a`, `b`.
fn typed(pos: usize, w: &[Sign], over: bool) -> Gen {
    let parallel = w[pos] == w[pos + 1];
    x(pos, over == parallel)
}

fn braid_word(w: &[Sign], positions: &[usize], over: bool) -> TangleProgram {
    let mut cur = w.to_vec();
    let mut gens = Vec::new();
    for &p in positions {
        let g = typed(p, &cur, over);
        cur = g.apply(&cur).unwrap();
        gens.push(g);
    }
    prog(w, gens)
}

#[test]
fn reidemeister_three() {
    let z = z3();
    for w in [[Plus, Plus, Plus], [Plus, Minus, Plus], [Minus, Minus, Plus], [Minus, Plus, Plus]] {
        for over in [true, false] {
            let a = braid_word(&w, &[0, 1, 0], over);
            let b = braid_word(&w, &[1, 0, 1], over);
            assert_equiv(&z.z_eval(&a).unwrap(), &z.z_eval(&b).unwrap());
        }
    }
}

#[test]
fn distant_crossings_commute() {
    let z = z3();
    let w = [Plus, Minus, Plus, Plus];
    let a = prog(&w, vec![x(0, true), x(2, false)]);
    let b = prog(&w, vec![x(2, false), x(0, true)]);
    assert_equiv(&z.z_eval(&a).unwrap(), &z.z_eval(&b).unwrap());
}

#[test]
fn unknot_evaluates_to_nu() {
    let z = z3();
    let closed_nu = cs_alpha_circle(&DVec::one(Context::circles(1), 3), &z.nu.value, 0).unwrap();
    assert_equiv(&z.z_eval(&unknot(0)).unwrap(), &closed_nu);
}

#[test]
fn other_unknot_words_agree() {
    let z = z3();
    let u = z.z_eval(&unknot(0)).unwrap();
    let r2 = prog(
        &[],
        vec![Gen::Cup { pos: 0, first: Plus }, Gen::Cup { pos: 2, first: Minus }, x(1, true), x(1, false), Gen::Cap { pos: 0, first: Plus }, Gen::Cap { pos: 0, first: Minus }],
    );
    assert_eq!(r2.components().closed, 2);
    let opposite = prog(&[], vec![Gen::Cup { pos: 0, first: Minus }, Gen::Cap { pos: 0, first: Minus }]);
    assert_equiv(&z.z_eval(&opposite).unwrap(), &u);
    let kinks = prog(
        &[],
        [vec![Gen::Cup { pos: 0, first: Plus }], lmokit::tangles::parse::kinks(0, Plus, 1), lmokit::tangles::parse::kinks(0, Plus, -1), vec![Gen::Cap { pos: 0, first: Plus }]].concat(),
    );
    assert_equiv(&z.z_eval(&kinks).unwrap(), &u);
}

#[test]
fn kinks_on_either_side_agree() {
    let z = z3();
    // A kink built with a cup on the left of the strand.
    for f in [true, false] {
        let right = prog(&[Plus], lmokit::tangles::parse::kinks(0, Plus, if f { 1 } else { -1 }));
        let left = prog(&[Plus], vec![Gen::Cup { pos: 0, first: Minus }, x(1, f), Gen::Cap { pos: 0, first: Minus }]);
        assert_eq!(left.target(), [Plus]);
        assert_equiv(&z.z_eval(&left).unwrap(), &z.z_eval(&right).unwrap());
    }
}

#[test]
fn hopf_link_is_symmetric_under_reversal_of_both_components() {
    let z = z3();
    let h = hopf(0, 0);
    let both = h.co(0).unwrap().co(1).unwrap();
    let a = z.z_eval(&h).unwrap();
    let mut b = z.z_eval(&both).unwrap();
    for s in 0..2 {
        b = lmokit::jacobi::ops::co_circle(&b, s).unwrap();
    }
    assert_equiv(&a, &b);
}

#[test]
fn evaluation_commutes_with_orientation_reversal() {
    let z = z3();
    let t = prog(&[Plus, Minus, Plus], vec![x(0, true), x(1, false), Gen::Cap { pos: 0, first: Minus }]);
    let comps = t.components();
    for c in 0..comps.open {
        let lhs = z.z_eval(&t.co(c).unwrap()).unwrap();
        let rhs = co_segment(&z.z_eval(&t).unwrap(), c).unwrap();
        assert_equiv(&lhs, &rhs);
    }
}

#[test]
fn evaluation_commutes_with_doubling() {
    let z = z3();
    // The doubled strand runs from bottom position 0 to top position 1.
    let t = prog(&[Plus, Plus, Minus], vec![x(0, true), x(1, false), x(1, false)]);
    let (sk, _) = t.skeleton().unwrap();
    let comp = sk.component_of_points()[0];
    let src = lmokit::brauer::dbl_word(t.source(), &[0]);
    let tgt = lmokit::brauer::dbl_word(t.target(), &[1]);
    let lhs = z.z_eval(&t.dbl(comp).unwrap()).unwrap();
    let rhs = compose_all(&[
        z.regroup(&src, 0).unwrap(),
        dbl(&z.z_eval(&t).unwrap(), &[comp]).unwrap(),
        inverse(&z.regroup(&tgt, 1).unwrap()).unwrap(),
    ])
    .unwrap();
    assert_equiv(&lhs, &rhs);
}
