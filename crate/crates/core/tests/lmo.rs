use lmokit::jacobi::{normal_form, Anchor, Context, DVec, Diagram};
use lmokit::lmo::jmap::{j_n, loop_falling_product, theta, JMode};
use lmokit::lmo::trace::{solve_trace_lmo, trace_lmo};
use lmokit::Q;
use num::{One, Zero};

fn assert_equiv(a: &DVec, b: &DVec) {
    let d = normal_form(&a.sub(b).unwrap()).unwrap();
    assert!(d.is_zero(), "difference: {d}");
}

#[test]
fn trace_starts_with_zero_and_a_strut() {
    let t = trace_lmo(4).unwrap();
    assert!(t.family[0].is_zero());
    assert!(t.family[1].is_zero());
    let strut = Diagram::strut(Anchor::Color(0), Anchor::Color(1));
    let expect = DVec::from_diagram(Context::colors(2), 2, strut, Q::one());
    assert_eq!(t.family[2], expect);
}

#[test]
fn trace_is_a_trace() {
    let t = trace_lmo(5).unwrap();
    for m in 0..=5 {
        for r in t.defect(m).unwrap() {
            assert!(r.is_zero(), "defect at {m}: {r}");
        }
    }
}

#[test]
fn trace_members_are_trees_of_the_right_degree() {
    let t = trace_lmo(5).unwrap();
    for m in 2..=5 {
        assert!(!t.family[m].is_zero());
        for (d, _) in t.family[m].terms() {
            assert_eq!(d.num_tri(), m - 2);
            assert_eq!(d.degree(), m - 1);
            assert_eq!(d.component_ids().1, 1);
        }
    }
}

#[test]
fn three_leg_member_is_half_the_vertex() {
    let t = trace_lmo(3).unwrap();
    let terms: Vec<_> = t.family[3].terms().collect();
    assert_eq!(terms.len(), 1);
    let (d, c) = terms[0];
    // Compare with the vertex (0, 1, 2) in normal form.
    let y = Diagram::assemble(
        vec![Anchor::Color(0), Anchor::Color(1), Anchor::Color(2)],
        &[0, 1, 2],
        &[[3, 4, 5]],
        &[(0, 3), (1, 4), (2, 5)],
        0,
    );
    let y = DVec::from_diagram(Context::colors(3), 3, y, Q::new(1.into(), 2.into()));
    let t3 = DVec::from_diagram(Context::colors(3), 3, d.clone(), c.clone());
    assert_equiv(&t3, &y);
}

#[test]
fn solver_rejects_out_of_budget() {
    assert!(matches!(solve_trace_lmo(9), Err(lmokit::Error::Budget(_))));
}

#[test]
fn j_of_parallel_chords_is_the_rising_loop_product() {
    for r in 1..=3 {
        for mode in [JMode::Direct, JMode::ViaSplitting] {
            let j = j_n(&theta(r, r), r, mode).unwrap();
            assert_equiv(&j, &loop_falling_product(r));
        }
    }
}

#[test]
fn circle_with_one_leg_goes_to_zero() {
    let d = Diagram::assemble(
        vec![Anchor::Circ(0)],
        &[0],
        &[[1, 2, 3]],
        &[(0, 1), (2, 3)],
        0,
    );
    let x = DVec::from_diagram(Context::circles(1), 3, d, Q::one());
    assert!(j_n(&x, 1, JMode::Direct).unwrap().is_zero());
    let _ = Q::zero();
}

mod random {
    use super::*;
    use lmokit::jacobi::enumerate::on_anchors;
    use lmokit::jacobi::nf::free_slot;
    use lmokit::jacobi::ops::{co_circle, coproduct, outer, tensor2_normal_form};
    use lmokit::lmo::truncated::{counit_left, delta_e, TruncatedInvariant};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_circle_vector(rng: &mut ChaCha8Rng, k: u16, max_deg: usize, terms: usize) -> DVec {
        let anchors: Vec<Anchor> = (0..k).map(Anchor::Circ).collect();
        let mut pool = Vec::new();
        for deg in 1..=max_deg {
            for ntri in 0..=(2 * deg - 2) {
                let nlegs = 2 * deg - ntri;
                if nlegs >= 1 {
                    pool.extend(on_anchors(&anchors, nlegs, ntri).unwrap());
                }
            }
        }
        let mut x = DVec::zero(Context::circles(k), max_deg);
        for _ in 0..terms {
            let d = pool[rng.gen_range(0..pool.len())].clone();
            x.add_term(d, Q::from_integer(rng.gen_range(-3i64..=3).into()));
        }
        x
    }

    #[test]
    fn both_modes_agree_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..6 {
            let x = random_circle_vector(&mut rng, 1, 3, 4);
            for n in 1..=3 {
                assert_equiv(&j_n(&x, n, JMode::Direct).unwrap(), &j_n(&x, n, JMode::ViaSplitting).unwrap());
            }
            let y = random_circle_vector(&mut rng, 2, 3, 4);
            assert_equiv(&j_n(&y, 1, JMode::Direct).unwrap(), &j_n(&y, 1, JMode::ViaSplitting).unwrap());
        }
    }

    #[test]
    fn level_one_ignores_circle_orientation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..6 {
            let x = random_circle_vector(&mut rng, 2, 2, 5);
            let base = j_n(&x, 1, JMode::Direct).unwrap();
            for s in 0..2 {
                assert_equiv(&j_n(&co_circle(&x, s).unwrap(), 1, JMode::Direct).unwrap(), &base);
            }
        }
    }

    fn random_e2(rng: &mut ChaCha8Rng) -> TruncatedInvariant {
        let theta = free_slot(&[], 2).unwrap().quotient_basis()[0].clone();
        let mut basis = vec![Diagram::empty(), theta.clone()];
        basis.extend(free_slot(&[], 4).unwrap().quotient_basis());
        let th = DVec::from_diagram(Context::vacuum(), 2, theta, Q::one());
        let sq = lmokit::jacobi::ops::disjoint_product(&th, &th).unwrap();
        let mut v = DVec::zero(Context::vacuum(), 2);
        for d in basis {
            v.add_term(d, Q::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into()));
        }
        v.axpy(&Q::from_integer(rng.gen_range(-5i64..=5).into()), &sq).unwrap();
        TruncatedInvariant::new(2, &v).unwrap()
    }

    #[test]
    fn counit_on_the_left_is_the_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = random_e2(&mut rng);
            let lhs = counit_left(&delta_e(&x, 1).unwrap());
            let rhs = x.project(1).unwrap();
            assert_equiv(&lhs.value, &rhs.value);
        }
    }

    #[test]
    fn split_of_one_is_one_tensor_one() {
        let one = TruncatedInvariant::one(2);
        let t = delta_e(&one, 1).unwrap();
        assert_eq!(t.terms.len(), 1);
        assert!(delta_e(&one, 0).is_err());
        assert!(delta_e(&one, 2).is_err());
    }

    #[test]
    fn normalized_link_values_are_group_like() {
        use lmokit::kontsevich::Kontsevich;
        use lmokit::tangles::parse::{hopf, unknot};
        let z = Kontsevich::shared(3).unwrap();
        for l in [unknot(2), hopf(0, 1)] {
            let x = z.normalized(&l).unwrap();
            let lhs = tensor2_normal_form(&coproduct(&x).unwrap(), &x.ctx, 3).unwrap();
            let rhs = tensor2_normal_form(&outer(&x, &x), &x.ctx, 3).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

mod ideal {
    use super::*;
    use lmokit::jacobi::nf::free_slot;
    use lmokit::jacobi::ops::disjoint_product;
    use lmokit::lmo::ideal::{strut_matchings, IdealSpan};

    fn loops_poly(coeffs: &[i64]) -> DVec {
        let mut v = DVec::zero(Context::vacuum(), 0);
        for (j, c) in coeffs.iter().enumerate() {
            v.add_term(Diagram::loops(j as u32), Q::from_integer((*c).into()));
        }
        v
    }

    #[test]
    fn matchings_of_four_colors() {
        assert_eq!(strut_matchings(2).len(), 3);
        assert_eq!(strut_matchings(3).len(), 15);
    }

    #[test]
    fn degree_zero_part_is_generated_by_x_times_x_plus_two() {
        let bound = 3;
        let span = IdealSpan::build(2, 0, bound).unwrap();
        assert_eq!(span.rank(), bound as usize + 1);
        for j in 0..=bound as usize {
            let mut c = vec![0i64; j + 3];
            c[j + 1] = 2;
            c[j + 2] = 1;
            assert!(span.contains(&loops_poly(&c)).unwrap());
        }
        assert!(!span.contains(&loops_poly(&[0, 1])).unwrap());
        assert!(!span.contains(&loops_poly(&[1])).unwrap());
    }

    #[test]
    fn degree_two_quotient_vanishes() {
        let span = IdealSpan::build(2, 2, 1).unwrap();
        let theta = DVec::from_diagram(Context::vacuum(), 2, free_slot(&[], 2).unwrap().quotient_basis()[0].clone(), Q::one());
        assert!(span.contains(&disjoint_product(&theta, &theta).unwrap()).unwrap());
        for d in free_slot(&[], 4).unwrap().quotient_basis() {
            assert!(span.contains(&DVec::from_diagram(Context::vacuum(), 2, d, Q::one())).unwrap());
        }
    }
}
