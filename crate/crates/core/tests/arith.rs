use hqp::arith::{fmt_rat, parse_rat, rat, rat2, trop_add, Fp, LaurentPoly, RatFunc, TropicalValue, VarCtx};
use hqp::{QMatrix, QPoly};
use proptest::prelude::*;

fn ctx2() -> hqp::arith::Ctx {
    VarCtx::new(["x1", "x2"])
}

fn poly(terms: &[((i32, i32), i64)]) -> QPoly {
    let ctx = ctx2();
    LaurentPoly::from_terms(&ctx, terms.iter().map(|&((a, b), c)| (vec![a, b], rat(c))))
}

fn arb_poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(((-2i32..3, -2i32..3), -4i64..5), 0..5).prop_map(|t| poly(&t))
}

#[test]
fn rationals_print_and_parse() {
    assert_eq!(fmt_rat(&rat2(6, -4)), "-3/2");
    assert_eq!(fmt_rat(&rat(2)), "2/1");
    assert_eq!(parse_rat("-3/2").unwrap(), rat2(-3, 2));
    assert_eq!(parse_rat("5").unwrap(), rat(5));
    assert!(parse_rat("1/0").is_err());
    assert!(parse_rat("a").is_err());
}

#[test]
fn exchange_polynomial_division_is_exact() {
    let ctx = VarCtx::new(["x1", "x2", "z"]);
    let num = QPoly::parse(&ctx, "x2^2 + z*x2 + 1").unwrap();
    let den = QPoly::parse(&ctx, "x2 + 1").unwrap();
    assert!(num.divexact(&den).is_err());
    let prod = num.mul(&den);
    assert_eq!(prod.divexact(&den).unwrap(), num);
    // Monomial denominators stay Laurent.
    let x1 = QPoly::var(&ctx, 0);
    let r = RatFunc::from(num.clone()).div(&RatFunc::from(x1)).unwrap();
    assert!(r.is_laurent());
    assert_eq!(r, RatFunc::parse(&ctx, "(x2^2 + z*x2 + 1)/x1").unwrap());
}

#[test]
fn ratfunc_cancels_common_factors() {
    let ctx = ctx2();
    let a = RatFunc::parse(&ctx, "(x1^2 - 1)/(x1 - 1)").unwrap();
    assert_eq!(a, RatFunc::parse(&ctx, "x1 + 1").unwrap());
    assert!(a.is_laurent());
    let b = RatFunc::parse(&ctx, "(1)/(x1 + x2)").unwrap();
    assert!(!b.is_laurent());
    assert_eq!(b.inv().unwrap(), RatFunc::parse(&ctx, "x2 + x1").unwrap());
    assert!(RatFunc::constant(&ctx, rat(0)).inv().is_err());
}

#[test]
fn substitution_matches_hand_expansion() {
    let ctx = ctx2();
    let p = RatFunc::parse(&ctx, "(1 + x2)/x1").unwrap();
    let images = vec![RatFunc::parse(&ctx, "(1 + x2)/x1").unwrap(), RatFunc::parse(&ctx, "x2").unwrap()];
    // (1 + x2) / ((1 + x2) / x1) = x1
    assert_eq!(p.substitute(&images).unwrap(), RatFunc::parse(&ctx, "x1").unwrap());
}

#[test]
fn tropical_sum_is_componentwise_min() {
    let g = VarCtx::new(["y1", "y2"]);
    let a = TropicalValue::new(&g, vec![1, -2]).unwrap();
    let b = TropicalValue::new(&g, vec![0, 3]).unwrap();
    assert_eq!(trop_add(&a, &b).unwrap().exps(), &[0, -2]);
    assert_eq!(a.mul(&b).unwrap().exps(), &[1, 1]);
    assert_eq!(a.pow(-2).exps(), &[-2, 4]);
    assert!(TropicalValue::new(&g, vec![1]).is_err());
}

#[test]
fn prime_field_inverses() {
    for v in 1..13 {
        let a = Fp::<13>::new(v);
        assert_eq!((a * a.inv()).value(), 1);
        assert_eq!(a.pow(12).value(), 1);
    }
    assert_eq!(Fp::<7>::new(-1).value(), 6);
}

#[test]
fn small_matrix_facts() {
    let m = QMatrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]], 2).unwrap();
    assert_eq!(m.rank(), 1);
    assert_eq!(m.det(), rat(0));
    let k = m.kernel();
    assert_eq!(k.cols(), 1);
    assert!(m.mul(&k).unwrap().is_zero());
    let n = QMatrix::from_rows(vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]], 2).unwrap();
    assert_eq!(n.inverse().unwrap().mul(&n).unwrap(), QMatrix::identity(2));
}

fn arb_matrix() -> impl Strategy<Value = QMatrix> {
    (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
            .prop_map(move |rows| QMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect(), c).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn exact_division_undoes_multiplication(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).divexact(&b).unwrap(), a);
    }

    #[test]
    fn canonical_strings_round_trip(a in arb_poly(), b in arb_poly()) {
        prop_assert_eq!(QPoly::parse(a.ctx(), &a.to_canonical()).unwrap(), a.clone());
        prop_assume!(!b.is_zero());
        let r = RatFunc::from(a).div(&RatFunc::from(b)).unwrap();
        let text = r.to_canonical();
        let back = RatFunc::parse(r.ctx(), &text).unwrap();
        prop_assert_eq!(back.to_canonical(), text);
        prop_assert_eq!(back, r);
    }

    #[test]
    fn ratfunc_field_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assume!(!b.is_zero() && !c.is_zero());
        let (fa, fb, fc) = (RatFunc::from(a), RatFunc::from(b), RatFunc::from(c));
        let q = fa.div(&fb).unwrap();
        prop_assert_eq!(q.mul(&fb), fa.clone());
        prop_assert_eq!(fa.div(&fb).unwrap().add(&fc.div(&fb).unwrap()), fa.add(&fc).div(&fb).unwrap());
    }

    #[test]
    fn rank_nullity(m in arb_matrix()) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        if k.cols() > 0 {
            prop_assert!(m.mul(&k).unwrap().is_zero());
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn determinant_is_multiplicative(a in prop::collection::vec(-3i64..4, 9), b in prop::collection::vec(-3i64..4, 9)) {
        let mk = |v: &[i64]| QMatrix::from_rows(v.chunks(3).map(|r| r.iter().map(|&x| rat(x)).collect()).collect(), 3).unwrap();
        let (ma, mb) = (mk(&a), mk(&b));
        prop_assert_eq!(ma.mul(&mb).unwrap().det(), ma.det() * mb.det());
    }
}
