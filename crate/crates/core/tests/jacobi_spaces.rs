use lmokit::jacobi::enumerate;
use lmokit::jacobi::nf::{chord_slot, free_slot};

#[test]
fn chord_diagrams_on_one_strand_modulo_four_term() {
    let dims: Vec<usize> = (1..=4).map(|d| chord_slot(1, 0, d).unwrap().dimension()).collect();
    assert_eq!(dims, vec![1, 2, 3, 6]);
}

#[test]
fn chord_diagrams_on_one_circle_match_the_strand() {
    let dims: Vec<usize> = (1..=4).map(|d| chord_slot(0, 1, d).unwrap().dimension()).collect();
    assert_eq!(dims, vec![1, 2, 3, 6]);
}

#[test]
fn chord_diagrams_on_two_strands() {
    // Degree 1: chords (1,1),(2,2),(1,2); degree 2 has dimension 5 for two strands.
    assert_eq!(chord_slot(2, 0, 1).unwrap().dimension(), 3);
}

#[test]
fn connected_vacuum_diagrams() {
    assert_eq!(free_slot(&[], 2).unwrap().dimension(), 1);
    assert_eq!(free_slot(&[], 4).unwrap().dimension(), 1);
}

#[test]
fn trees_modulo_antisymmetry_and_jacobi() {
    let dims: Vec<usize> = (3..=6)
        .map(|m| {
            let colors: Vec<u16> = (0..m as u16).collect();
            free_slot(&colors, m - 2).unwrap().dimension()
        })
        .collect();
    assert_eq!(dims, vec![1, 2, 6, 24]);
}

#[test]
fn tree_enumeration_counts() {
    assert_eq!(enumerate::trees(6).unwrap().len(), 105 * 16);
}

mod brute_force {
    use lmokit::jacobi::brute::brute_slot;
    use lmokit::jacobi::nf::NfCache;
    use lmokit::jacobi::Anchor;
    use lmokit::Q;
    use num::One;

    fn check_normal_form_agrees(anchors: &[Anchor], deg: usize, attached_only: bool, max_tri: Option<usize>, nseg: u16, ncirc: u16) -> usize {
        let slot = brute_slot(anchors, deg, attached_only, max_tri).unwrap();
        let mut cache = NfCache::new();
        for d in &slot.basis {
            let mut terms = vec![(d.clone(), Q::one())];
            for (x, c) in cache.diagram(d, nseg, ncirc).unwrap() {
                terms.push((x, -c));
            }
            assert!(slot.is_zero(&terms).unwrap(), "normal form disagrees on {}", d.encode());
        }
        slot.dimension()
    }

    #[test]
    fn degree_one_on_a_circle_has_dimension_two() {
        assert_eq!(check_normal_form_agrees(&[Anchor::Circ(0)], 1, false, None, 0, 1), 2);
    }

    #[test]
    fn degree_two_on_a_circle() {
        // chords: 2, chord times theta: 1, theta squared: 1, connected vacuum: 1
        assert_eq!(check_normal_form_agrees(&[Anchor::Circ(0)], 2, false, None, 0, 1), 5);
    }

    #[test]
    fn degree_three_on_a_strand_attached() {
        assert!(check_normal_form_agrees(&[Anchor::Seg(0)], 3, true, Some(3), 1, 0) >= 3);
    }

    #[test]
    fn degree_two_on_two_strands() {
        check_normal_form_agrees(&[Anchor::Seg(0), Anchor::Seg(1)], 2, false, None, 2, 0);
    }

    #[test]
    fn degree_three_on_strand_and_circle_attached() {
        check_normal_form_agrees(&[Anchor::Seg(0), Anchor::Circ(0)], 3, true, Some(2), 1, 1);
    }
}
