//! Seeded random potentials.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::potential::Potential;
use super::word::{ArrowId, CycWord};
use crate::arith::rat;
use crate::quiver::HQuiver;

/// All canonical cyclic words of arrow length `2..=max_len`, loop powers
/// included.
pub fn cyclic_words(q: &HQuiver, max_len: usize) -> Vec<CycWord> {
    let arrows = q.arrows();
    let mut found = BTreeSet::new();
    let mut stack: Vec<Vec<ArrowId>> = (0..arrows.len()).map(|a| vec![a]).collect();
    while let Some(seq) = stack.pop() {
        let first = arrows[seq[0]];
        let last = arrows[*seq.last().unwrap()];
        if seq.len() >= 2 && last.tail == first.head {
            expand_loops(q, &seq, &mut found);
        }
        if seq.len() < max_len {
            for (b, arr) in arrows.iter().enumerate() {
                if arr.head == last.tail {
                    let mut s = seq.clone();
                    s.push(b);
                    stack.push(s);
                }
            }
        }
    }
    found.into_iter().collect()
}

fn expand_loops(q: &HQuiver, seq: &[ArrowId], found: &mut BTreeSet<CycWord>) {
    let d: Vec<u32> = seq.iter().map(|&a| q.datum().d()[q.arrows()[a].head - 1]).collect();
    let mut loops = vec![0u32; seq.len()];
    loop {
        let pairs: Vec<(u32, ArrowId)> = loops.iter().copied().zip(seq.iter().copied()).collect();
        if let Ok(w) = CycWord::from_pairs(q, &pairs) {
            found.insert(w);
        }
        let mut i = 0;
        loop {
            if i == loops.len() {
                return;
            }
            loops[i] += 1;
            if loops[i] < d[i] {
                break;
            }
            loops[i] = 0;
            i += 1;
        }
    }
}

/// Integer coefficients uniform in `[-bound, bound]` on every canonical
/// cyclic word up to `max_len`, drawn from a ChaCha stream seeded by `seed`.
pub fn random_potential(q: &HQuiver, max_len: usize, bound: i64, seed: u64, trunc: usize) -> Potential {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = Potential::zero(trunc);
    for w in cyclic_words(q, max_len.min(trunc)) {
        let c = rng.gen_range(-bound..=bound);
        p.add_term(w, rat(c));
    }
    p
}
