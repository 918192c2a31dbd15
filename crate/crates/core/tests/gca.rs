use hqp::arith::{RatFunc, VarCtx};
use hqp::gca::{
    explore, f_context, gf_recursion, h_vector, laurent_check, mutate_seed, separation, upper_membership, yhat_mutation_check, CoefficientMode,
    ExploreMode, FSignConvention, Membership, Seed,
};
use hqp::quiver::{ExchangeMatrix, MutationDatum};
use proptest::prelude::*;

fn rank2() -> ExchangeMatrix {
    ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap()
}

fn seed(b: ExchangeMatrix, d: Vec<u32>, mode: CoefficientMode) -> Seed {
    Seed::initial(b, MutationDatum::symbolic(d), mode).unwrap()
}

fn along(s: &Seed, path: &[usize]) -> Seed {
    path.iter().fold(s.clone(), |s, &k| mutate_seed(&s, k).unwrap())
}

fn parse(s: &Seed, text: &str) -> RatFunc {
    RatFunc::parse(s.ctx(), text).unwrap()
}

#[test]
fn generalized_exchange_relation() {
    let s0 = seed(rank2(), vec![2, 1], CoefficientMode::TropZ);
    let s1 = mutate_seed(&s0, 1).unwrap();
    assert_eq!(s1.x[0], parse(&s0, "(x2^2 + z1_1*x2 + 1)/x1"));
    assert_eq!(s1.x[1], parse(&s0, "x2"));
    assert_eq!(s1.b.rows(), &[vec![0, -1], vec![1, 0]]);
    let s2 = mutate_seed(&s0, 2).unwrap();
    assert_eq!(s2.x[1], parse(&s0, "(x1 + 1)/x2"));
}

#[test]
fn principal_coefficients_enter_the_exchange() {
    let s0 = seed(rank2(), vec![2, 1], CoefficientMode::Principal);
    let s1 = mutate_seed(&s0, 1).unwrap();
    assert_eq!(s1.x[0], parse(&s0, "(y1^2 + z1_1*y1*x2 + x2^2)/x1"));
    assert_eq!(s1.y[0].exps(), &[-1, 0, 0]);
    // y2' = y2 y1^{d_1 [b_12]+} (1 ⊕ z y1 ⊕ y1^2)^{-b_12} = y2 y1^2 in Trop.
    assert_eq!(s1.y[1].exps(), &[2, 1, 0]);
}

#[test]
fn a2_pentagon() {
    let s0 = Seed::initial(rank2(), MutationDatum::classical(2), CoefficientMode::TropZ).unwrap();
    let steps: Vec<Seed> = (1..=5).map(|i| along(&s0, &[1, 2, 1, 2, 1][..i])).collect();
    assert_eq!(steps[0].x[0], parse(&s0, "(1 + x2)/x1"));
    assert_eq!(steps[1].x[1], parse(&s0, "(1 + x1 + x2)/(x1*x2)"));
    assert_eq!(steps[2].x[0], parse(&s0, "(1 + x1)/x2"));
    assert_eq!(steps[4].x, vec![s0.x[1].clone(), s0.x[0].clone()]);
}

#[test]
fn b2_type_generalized_period_six() {
    let s0 = seed(rank2(), vec![2, 1], CoefficientMode::TropZ);
    let back = along(&s0, &[1, 2, 1, 2, 1, 2]);
    assert_eq!(back.x, s0.x);
    let g = explore(&s0, 8, ExploreMode::Unlabeled, 100).unwrap();
    assert_eq!(g.nodes.len(), 6);
    assert_eq!(g.edges.len(), 6);
    let a2 = explore(&Seed::initial(rank2(), MutationDatum::classical(2), CoefficientMode::TropZ).unwrap(), 8, ExploreMode::Unlabeled, 100).unwrap();
    assert_eq!(a2.nodes.len(), 5);
    assert_eq!(a2.edges.len(), 5);
}

#[test]
fn f_polynomials_and_vectors_by_hand() {
    let b = rank2();
    let datum = MutationDatum::symbolic(vec![2, 1]);
    let states = gf_recursion(&b, &datum, &[1, 2], FSignConvention::Classical).unwrap();
    let ctx = f_context(&datum);
    assert_eq!(ctx.names(), &["y1", "y2", "z1_1"]);
    let s1 = &states[1];
    assert_eq!(s1.f[0], RatFunc::parse(&ctx, "1 + z1_1*y1 + y1^2").unwrap());
    assert_eq!(s1.g[0], vec![-1, 2]);
    assert_eq!(s1.c, vec![vec![-1, 0], vec![2, 1]]);
    // x2'' = (y2 y1^2 + x1') / x2 at x = 1 gives 1 + y2 + z y1 y2 + y1^2 y2.
    let s2 = &states[2];
    assert_eq!(s2.f[1], RatFunc::parse(&ctx, "1 + z1_1*y1 + y1^2 + y1^2*y2").unwrap());
    assert_eq!(s2.g_det().abs(), 1);
}

#[test]
fn printed_sign_convention_differs_at_first_step() {
    let b = rank2();
    let datum = MutationDatum::classical(2);
    let ctx = f_context(&datum);
    let classical = gf_recursion(&b, &datum, &[1], FSignConvention::Classical).unwrap();
    assert_eq!(classical[1].f[0], RatFunc::parse(&ctx, "1 + y1").unwrap());
    let printed = gf_recursion(&b, &datum, &[1], FSignConvention::Printed).unwrap();
    assert_ne!(printed[1].f[0], classical[1].f[0]);
}

#[test]
fn h_vector_of_first_f() {
    let b = rank2();
    let datum = MutationDatum::symbolic(vec![2, 1]);
    let st = gf_recursion(&b, &datum, &[1], FSignConvention::Classical).unwrap().pop().unwrap();
    // F(y1^{-1}, ...) tropicalizes to y1^{-2}.
    assert_eq!(h_vector(&st.f[0], &b, &datum).unwrap(), vec![-2, 0]);
}

#[test]
fn separation_matches_direct_mutation() {
    let b = ExchangeMatrix::new(vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]).unwrap();
    let datum = MutationDatum::symbolic(vec![1, 2, 1]);
    let s0 = Seed::initial(b.clone(), datum.clone(), CoefficientMode::Principal).unwrap();
    let path = [2, 1, 3];
    let states = gf_recursion(&b, &datum, &path, FSignConvention::Classical).unwrap();
    let mut cur = s0.clone();
    for (i, &k) in path.iter().enumerate() {
        cur = mutate_seed(&cur, k).unwrap();
        assert_eq!(separation(&states[i + 1], k, &s0).unwrap(), cur.x[k - 1]);
    }
}

#[test]
fn laurent_and_upper_bound() {
    let s0 = seed(rank2(), vec![2, 2], CoefficientMode::TropZ);
    let r = laurent_check(&s0, &[1, 2, 1, 2, 1, 2, 1, 2]).unwrap();
    assert_eq!(r.checked, 8);
    assert!(r.ok(), "{:?}", r.violations);
    let x1x2 = parse(&s0, "x1*x2");
    assert_eq!(upper_membership(&x1x2, &s0).unwrap(), Membership::Member);
    let bad = parse(&s0, "(1)/(x1 + 1)");
    assert_eq!(upper_membership(&bad, &s0).unwrap(), Membership::NotLaurentIn(0));
    // 1/x1 is Laurent in the initial cluster only.
    let inv = parse(&s0, "(1)/(x1)");
    assert_eq!(upper_membership(&inv, &s0).unwrap(), Membership::NotLaurentIn(1));
}

#[test]
fn y_hat_transforms_by_y_mutation() {
    let s0 = seed(rank2(), vec![2, 1], CoefficientMode::Principal);
    for path in [vec![], vec![1], vec![1, 2]] {
        let s = along(&s0, &path);
        for k in 1..=2 {
            assert!(yhat_mutation_check(&s, k).unwrap());
        }
    }
}

#[test]
fn contexts_are_by_name() {
    assert_eq!(VarCtx::new(["a", "b"]), VarCtx::new(["a", "b"]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn seed_mutation_is_an_involution(
        b01 in -2i64..=2, b02 in -1i64..=1, b12 in -1i64..=1,
        d in prop::collection::vec(1u32..=2, 3),
        principal in any::<bool>(),
        pre in prop::collection::vec(1usize..=3, 0..3),
        k in 1usize..=3,
    ) {
        let b = ExchangeMatrix::new(vec![vec![0, b01, b02], vec![-b01, 0, b12], vec![-b02, -b12, 0]]).unwrap();
        let mode = if principal { CoefficientMode::Principal } else { CoefficientMode::TropZ };
        let s = along(&seed(b, d, mode), &pre);
        let back = mutate_seed(&mutate_seed(&s, k).unwrap(), k).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn g_vectors_sign_coherent_with_unit_determinant(path in prop::collection::vec(1usize..=3, 0..5), d in prop::collection::vec(1u32..=2, 3)) {
        let b = ExchangeMatrix::new(vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]).unwrap();
        for st in gf_recursion(&b, &MutationDatum::symbolic(d), &path, FSignConvention::Classical).unwrap() {
            prop_assert_eq!(st.g_det().abs(), 1);
            for k in 0..3 {
                prop_assert!(st.g.iter().all(|g| g[k] >= 0) || st.g.iter().all(|g| g[k] <= 0));
            }
        }
    }
}
