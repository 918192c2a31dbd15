use std::collections::BTreeMap;

use hqp::pathalg::{cyclic_derivative, mutate_qp, mutate_qp_full, split_reduce, CycWord, Path, PathElem, Potential, Qp, DEFAULT_TRUNCATION};
use hqp::quiver::{mutate_matrix, Arrow, HQuiver, MutationDatum};
use hqp::arith::rat;
use hqp::verify::library::{cubic_three_cycle, loopy_three_cycle};
use proptest::prelude::*;

#[test]
fn cubic_three_cycle_mutates_to_a_path() {
    let qp = cubic_three_cycle();
    let m = mutate_qp_full(&qp, 1).unwrap();
    assert_eq!(m.reduction.log.trivial_pairs.len(), 1);
    let out = m.result();
    let expect: BTreeMap<(usize, usize), usize> = [((1, 3), 1), ((2, 1), 1)].into_iter().collect();
    assert_eq!(out.quiver().counts(), expect);
    assert!(out.potential().is_zero());
    assert!(out.is_reduced());
}

#[test]
fn cyclic_derivative_of_the_cubic_term() {
    let qp = cubic_three_cycle();
    let q = qp.quiver();
    // d/da0 of a2 a1 a0 is the path a2 a1 from 2 to 1.
    let d = cyclic_derivative(q, qp.potential(), 0);
    let expected = Path::arrow(q, 2).compose(q, &Path::arrow(q, 1)).unwrap();
    assert_eq!(d, PathElem::single(expected, rat(1)));
}

#[test]
fn rotation_is_cyclic_equivalence() {
    let q = cubic_three_cycle().quiver().clone();
    let w = CycWord::from_pairs(&q, &[(0, 2), (0, 1), (0, 0)]).unwrap();
    for r in 0..3 {
        assert_eq!(w.rotate(r).canonical(), w.canonical());
    }
    let p = Potential::from_terms(DEFAULT_TRUNCATION, [(w.clone(), rat(1)), (w.rotate(1), rat(2))]);
    assert_eq!(p.coeff(&w.canonical()), rat(3));
}

#[test]
fn trivial_two_cycle_is_split_off() {
    let q = HQuiver::new(MutationDatum::ones(vec![1, 1]), vec![Arrow { tail: 1, head: 2 }, Arrow { tail: 2, head: 1 }]).unwrap();
    let w = CycWord::from_pairs(&q, &[(0, 1), (0, 0)]).unwrap();
    let qp = Qp::new(q, Potential::from_terms(DEFAULT_TRUNCATION, [(w, rat(1))])).unwrap();
    let r = split_reduce(&qp).unwrap();
    assert!(r.reduced.quiver().arrows().is_empty());
    assert!(r.reduced.potential().is_zero());
    assert_eq!(r.log.trivial_pairs.len(), 1);
}

#[test]
fn rank2_mutation_reverses_the_arrow() {
    let q = HQuiver::new(MutationDatum::symbolic(vec![2, 1]), vec![Arrow { tail: 2, head: 1 }]).unwrap();
    let qp = Qp::with_zero_potential(q, DEFAULT_TRUNCATION);
    let m = mutate_qp(&qp, 1).unwrap();
    assert_eq!(m.quiver().arrows(), &[Arrow { tail: 1, head: 2 }]);
    assert!(mutate_qp(&qp, 3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn mutation_tracks_the_exchange_matrix(seed in any::<u64>(), d2 in 1u32..=2, k in 1usize..=3) {
        let qp = loopy_three_cycle(vec![1, d2, 1], seed);
        let b = qp.quiver().b_matrix();
        let m = mutate_qp(&qp, k).unwrap();
        prop_assert!(m.is_reduced());
        prop_assert!(m.quiver().is_two_acyclic());
        prop_assert_eq!(m.quiver().b_matrix(), mutate_matrix(&b, qp.quiver().datum(), k).unwrap());
    }
}
