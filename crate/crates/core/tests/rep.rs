use hqp::arith::LaurentPoly;
use hqp::gca::{cluster_character, mutate_seed, CoefficientMode, Seed};
use hqp::rep::fpoly::DEFAULT_PRIMES;
use hqp::rep::hmodule::PivotOrder;
use hqp::rep::{check_rep, local_freeness, LocalFreeness, f_polynomial_oracle, mutate_rep, rat_matrix, weight_vectors, DecoratedRep, RepError, Violation};
use hqp::verify::library::{cubic_three_cycle, rank2};

#[test]
fn negative_simple_weights() {
    let qp = cubic_three_cycle();
    for l in 1..=3 {
        let w = weight_vectors(&qp, &DecoratedRep::negative_simple(&qp, l)).unwrap();
        let mut e = vec![0; 3];
        e[l - 1] = 1;
        assert_eq!(w.g_check, e);
    }
}

#[test]
fn mutating_a_negative_simple_gives_the_generalized_simple() {
    let qp = rank2(vec![2, 1]);
    let m = mutate_rep(&qp, &DecoratedRep::negative_simple(&qp, 1), 1, PivotOrder::Ascending).unwrap();
    assert_eq!(m.rep.dims(), &[2, 0]);
    assert_eq!(m.rep.decoration(), &[0, 0]);
    let back = mutate_rep(m.mutated_qp(), &m.rep, 1, PivotOrder::Ascending).unwrap();
    assert_eq!(back.rep, DecoratedRep::negative_simple(&qp, 1));
}

#[test]
fn f_polynomial_of_the_generalized_simple() {
    let qp = rank2(vec![2, 1]);
    let f = f_polynomial_oracle(&qp, &DecoratedRep::generalized_simple(&qp, 1), &DEFAULT_PRIMES).unwrap();
    // Submodules of H_1 = k[e]/e^2 are 0, the socle and everything.
    assert_eq!(f, LaurentPoly::parse(f.ctx(), "1 + z1_1*y1 + y1^2").unwrap());
    let g = f_polynomial_oracle(&qp, &DecoratedRep::generalized_simple(&qp, 2), &DEFAULT_PRIMES).unwrap();
    assert_eq!(g, LaurentPoly::parse(g.ctx(), "1 + y2").unwrap());
}

#[test]
fn relations_are_checked() {
    let qp = cubic_three_cycle();
    let one = || rat_matrix(&[&[1]]);
    let zero = || rat_matrix(&[&[0]]);
    let r = DecoratedRep::new(vec![1, 1, 1], vec![zero(), zero(), zero()], vec![one(), one(), one()], vec![0; 3]).unwrap();
    assert!(matches!(check_rep(&qp, &r).unwrap(), Some(Violation::JacobianRelation { .. })));

    let qp2 = rank2(vec![2, 1]);
    let id2 = rat_matrix(&[&[1, 0], &[0, 1]]);
    let bad = DecoratedRep::new(vec![2, 0], vec![id2, rat_matrix(&[])], vec![hqp::QMatrix::zeros(2, 0)], vec![0, 0]).unwrap();
    assert_eq!(check_rep(&qp2, &bad).unwrap(), Some(Violation::LoopNotNilpotent { vertex: 1 }));
    assert!(matches!(f_polynomial_oracle(&qp2, &bad, &DEFAULT_PRIMES), Err(RepError::Relation(_))));
    assert!(DecoratedRep::new(vec![1], vec![], vec![], vec![0]).is_err());
}

#[test]
fn cluster_character_is_the_cluster_variable() {
    let qp = rank2(vec![2, 1]);
    let s0 = Seed::initial(qp.quiver().b_matrix(), qp.quiver().datum().clone(), CoefficientMode::Principal).unwrap();
    let s1 = mutate_seed(&s0, 1).unwrap();
    let c = cluster_character(&qp, &DecoratedRep::generalized_simple(&qp, 1), &s0, &DEFAULT_PRIMES).unwrap();
    assert_eq!(c, s1.x[0]);
    let neg = cluster_character(&qp, &DecoratedRep::negative_simple(&qp, 2), &s0, &DEFAULT_PRIMES).unwrap();
    assert_eq!(neg, s0.x[1].clone());
}

#[test]
fn rank2_jacobian_algebra_is_locally_free_on_both_sides() {
    // e_1 J = <e_1, eps, a, eps a> and J e_1 = <e_1, eps>: both free over k[eps]/eps^2.
    let both = LocalFreeness { left: true, right: true };
    assert_eq!(local_freeness(&rank2(vec![2, 1])).unwrap(), vec![both; 2]);
    assert_eq!(local_freeness(&rank2(vec![2, 2])).unwrap(), vec![both; 2]);
}
