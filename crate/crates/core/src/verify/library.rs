//! Curated quivers with potential, seeds and representations used by the
//! verification suites.

use crate::arith::rat;
use crate::gca::{CoefficientMode, Seed};
use crate::pathalg::{random_potential, CycWord, Potential, Qp, DEFAULT_TRUNCATION};
use crate::quiver::{Arrow, ExchangeMatrix, HQuiver, MutationDatum};
use crate::rep::{random_kernel_rep, DecoratedRep};

/// A named QP together with a flag telling whether canonical forms are
/// expected to survive `μ_k²` (no potential terms beyond what reduction
/// fixes canonically).
#[derive(Debug, Clone)]
pub struct LibraryQp {
    pub name: String,
    pub qp: Qp,
    pub canonical_involution: bool,
}

fn three_cycle(d: Vec<u32>) -> HQuiver {
    let arrows = vec![Arrow { tail: 1, head: 2 }, Arrow { tail: 2, head: 3 }, Arrow { tail: 3, head: 1 }];
    HQuiver::new(MutationDatum::symbolic(d), arrows).expect("valid 3-cycle")
}

/// `1 → 2 → 3 → 1` with the cubic potential and no loops.
pub fn cubic_three_cycle() -> Qp {
    let q = three_cycle(vec![1, 1, 1]);
    let w = CycWord::from_pairs(&q, &[(0, 2), (0, 1), (0, 0)]).expect("3-cycle word");
    Qp::new(q, Potential::from_terms(DEFAULT_TRUNCATION, [(w, rat(1))])).expect("cubic potential")
}

/// 3-cycle with loops and a sampled potential on words of length at most 4.
/// The plain 3-cycle term is forced to be nonzero so that every vertex
/// can be mutated.
pub fn loopy_three_cycle(d: Vec<u32>, seed: u64) -> Qp {
    let q = three_cycle(d);
    let mut pot = random_potential(&q, 4, 3, seed, DEFAULT_TRUNCATION);
    let cubic = CycWord::from_pairs(&q, &[(0, 2), (0, 1), (0, 0)]).expect("3-cycle word");
    if pot.coeff(&cubic) == rat(0) {
        pot.add_term(cubic, rat(1));
    }
    Qp::new(q, pot).expect("sampled potential")
}

/// Single arrow `2 → 1`; the potential is necessarily zero.
pub fn rank2(d: Vec<u32>) -> Qp {
    let q = HQuiver::new(MutationDatum::symbolic(d), vec![Arrow { tail: 2, head: 1 }]).expect("rank-2 quiver");
    Qp::with_zero_potential(q, DEFAULT_TRUNCATION)
}

pub fn qp_library(seed: u64) -> Vec<LibraryQp> {
    let mut out = vec![LibraryQp { name: "3-cycle cubic".into(), qp: cubic_three_cycle(), canonical_involution: true }];
    for d in [vec![2, 1], vec![1, 2], vec![2, 2]] {
        out.push(LibraryQp { name: format!("rank-2 d={d:?}"), qp: rank2(d), canonical_involution: true });
    }
    for d in [vec![2, 1, 1], vec![1, 2, 1]] {
        out.push(LibraryQp { name: format!("3-cycle d={d:?} sampled"), qp: loopy_three_cycle(d, seed), canonical_involution: false });
    }
    out
}

/// ǧ-vectors tried for general representations on a QP with `n` vertices.
fn kernel_targets(n: usize) -> Vec<Vec<i64>> {
    let base: Vec<Vec<i64>> = vec![vec![-1, 0, 0], vec![1, -1, 0], vec![-1, -1, 1], vec![0, -1, 0], vec![-1, 1, -1]];
    base.into_iter().map(|v| v.into_iter().take(n).collect()).collect()
}

/// Negative simples, generalized simples and general kernel representations.
/// Kernel draws that fail are skipped.
pub fn rep_library(qp: &Qp, seed: u64) -> Vec<DecoratedRep> {
    let n = qp.quiver().n();
    let mut out = Vec::new();
    for l in 1..=n {
        out.push(DecoratedRep::negative_simple(qp, l));
        out.push(DecoratedRep::generalized_simple(qp, l));
    }
    let mut targets = kernel_targets(n);
    targets.dedup();
    for (i, g) in targets.into_iter().enumerate() {
        if let Ok(r) = random_kernel_rep(qp, &g, 10, seed.wrapping_add(i as u64)) {
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

pub fn rank2_matrix() -> ExchangeMatrix {
    ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).expect("skew")
}

pub fn kronecker_matrix() -> ExchangeMatrix {
    ExchangeMatrix::new(vec![vec![0, 2], vec![-2, 0]]).expect("skew")
}

pub fn cyclic3_matrix() -> ExchangeMatrix {
    ExchangeMatrix::new(vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]).expect("skew")
}

pub fn linear3_matrix() -> ExchangeMatrix {
    ExchangeMatrix::new(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).expect("skew")
}

/// The bundled rank-3 seed: 3-cycle with `d = (1, 2, 1)`.
pub fn bundled_rank3_seed() -> Seed {
    Seed::initial(cyclic3_matrix(), MutationDatum::symbolic(vec![1, 2, 1]), CoefficientMode::TropZ).expect("rank-3 seed")
}

/// Rank-3 `(B, d)` pairs whose cluster variables stay small enough for
/// exact checks along paths of length 8.
pub fn rank3_laurent_family() -> Vec<(ExchangeMatrix, Vec<u32>)> {
    let mut out = Vec::new();
    for mask in 0..7u32 {
        out.push((cyclic3_matrix(), (0..3).map(|i| 1 + ((mask >> i) & 1)).collect()));
    }
    for d in [vec![1, 1, 1], vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2], vec![2, 1, 2]] {
        out.push((linear3_matrix(), d));
    }
    out
}

/// Alternating path `k, k', k, ...` of the given length on two vertices.
pub fn alternating(start: usize, other: usize, len: usize) -> Vec<usize> {
    (0..len).map(|i| if i % 2 == 0 { start } else { other }).collect()
}
