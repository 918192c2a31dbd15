use std::collections::BTreeMap;

use hqp::quiver::{cancel_two_cycles, mutate_matrix, mutate_quiver, Arrow, ExchangeMatrix, HQuiver, MutationDatum, QuiverError};
use proptest::prelude::*;

fn em(rows: &[&[i64]]) -> ExchangeMatrix {
    ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

#[test]
fn three_cycle_mutation_by_hand() {
    let b = em(&[&[0, 1, -1], &[-1, 0, 1], &[1, -1, 0]]);
    let m = mutate_matrix(&b, &MutationDatum::ones(vec![1, 1, 1]), 1).unwrap();
    assert_eq!(m, em(&[&[0, -1, 1], &[1, 0, 0], &[-1, 0, 0]]));
}

#[test]
fn loop_degree_scales_the_composite_term() {
    // 1 -> 2 -> 3 mutated at 2 with d_2 = 2 gives two composite arrows.
    let b = em(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]);
    let m = mutate_matrix(&b, &MutationDatum::symbolic(vec![1, 2, 1]), 2).unwrap();
    assert_eq!(m, em(&[&[0, -1, 2], &[1, 0, -1], &[-2, 1, 0]]));
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(matches!(ExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]]), Err(QuiverError::NotSkewSymmetric(1, 2))));
    assert!(ExchangeMatrix::new(vec![vec![0, 1]]).is_err());
    let d = MutationDatum::ones(vec![1, 1]);
    assert!(matches!(HQuiver::new(d.clone(), vec![Arrow { tail: 1, head: 1 }]), Err(QuiverError::ExplicitLoop(0))));
    assert!(HQuiver::new(d, vec![Arrow { tail: 1, head: 3 }]).is_err());
    assert!(mutate_matrix(&em(&[&[0]]), &MutationDatum::ones(vec![1]), 2).is_err());
}

#[test]
fn quiver_mutation_cancels_two_cycles() {
    let arrows = vec![Arrow { tail: 1, head: 2 }, Arrow { tail: 2, head: 3 }, Arrow { tail: 3, head: 1 }];
    let q = HQuiver::new(MutationDatum::ones(vec![1, 1, 1]), arrows).unwrap();
    let m = mutate_quiver(&q, 1).unwrap();
    let expect: BTreeMap<(usize, usize), usize> = [((1, 3), 1), ((2, 1), 1)].into_iter().collect();
    assert_eq!(m.counts(), expect);
    assert!(m.is_two_acyclic());
}

#[test]
fn cancellation_keeps_the_surplus() {
    let a = |t, h| Arrow { tail: t, head: h };
    let left = cancel_two_cycles(vec![a(1, 2), a(1, 2), a(2, 1), a(2, 3)]);
    let mut counts = BTreeMap::new();
    for x in left {
        *counts.entry((x.tail, x.head)).or_insert(0) += 1;
    }
    assert_eq!(counts, [((1, 2), 1), ((2, 3), 1)].into_iter().collect());
}

#[test]
fn exchange_matrix_of_quiver() {
    // b_ij > 0 counts arrows j -> i.
    let q = HQuiver::new(MutationDatum::ones(vec![1, 1]), vec![Arrow { tail: 2, head: 1 }]).unwrap();
    assert_eq!(q.b_matrix(), em(&[&[0, 1], &[-1, 0]]));
}

fn arb_case() -> impl Strategy<Value = (ExchangeMatrix, Vec<u32>)> {
    (1usize..=6).prop_flat_map(|n| {
        (prop::collection::vec(-3i64..=3, n * (n - 1) / 2), prop::collection::vec(1u32..=3, n)).prop_map(move |(upper, d)| {
            let mut b = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let v = it.next().unwrap();
                    b[i][j] = v;
                    b[j][i] = -v;
                }
            }
            (ExchangeMatrix::new(b).unwrap(), d)
        })
    })
}

proptest! {
    #[test]
    fn matrix_mutation_is_an_involution((b, d) in arb_case(), k in 0usize..6) {
        let k = k % b.n() + 1;
        let datum = MutationDatum::symbolic(d);
        let m = mutate_matrix(&b, &datum, k).unwrap();
        prop_assert!(m.is_skew_symmetric());
        prop_assert_eq!(mutate_matrix(&m, &datum, k).unwrap(), b);
    }

    #[test]
    fn quiver_and_matrix_mutation_agree((b, d) in arb_case(), k in 0usize..6) {
        let k = k % b.n() + 1;
        let datum = MutationDatum::symbolic(d);
        let q = HQuiver::from_matrix(&b, datum.clone()).unwrap();
        prop_assert_eq!(q.b_matrix(), b.clone());
        let m = mutate_quiver(&q, k).unwrap();
        prop_assert!(m.is_two_acyclic());
        prop_assert_eq!(m.b_matrix(), mutate_matrix(&b, &datum, k).unwrap());
    }
}
