// SPDX-License-Identifier: Apache-2.0

//! Codeword scans over F_2-linear spans.
//!
//! Exhaustive scans walk the binary reflected Gray code, so consecutive
//! codewords differ by one basis vector and each step is a single vector
//! addition. The index range is split into chunks that run in parallel; each
//! chunk keeps its own minimum and the chunks are reduced by (value, message)
//! so the result does not depend on scheduling.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::field::FieldElement;

pub(crate) struct Best<P> {
    pub value: usize,
    pub message: Vec<u64>,
    pub payload: P,
}

fn add_into(acc: &mut [FieldElement], v: &[FieldElement]) {
    for (a, &b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

fn better(value: usize, message: &[u64], best: &Option<(usize, Vec<u64>)>) -> bool {
    match best {
        None => true,
        Some((bv, bm)) => (value, cmp_key(message)) < (*bv, cmp_key(bm)),
    }
}

fn cmp_key(m: &[u64]) -> Vec<u64> {
    let mut k: Vec<u64> = m.to_vec();
    while k.last() == Some(&0) {
        k.pop();
    }
    k.reverse();
    let mut out = vec![k.len() as u64];
    out.extend(k);
    out
}

/// Minimum of `eval` over all nonzero combinations of `basis` (at most 63
/// vectors). `eval(word, cutoff)` must return the exact value whenever it is
/// below `cutoff` and may return `None` otherwise.
pub(crate) fn exhaustive_min<P, F>(basis: &[Vec<FieldElement>], eval: F) -> Option<Best<P>>
where
    P: Send,
    F: Fn(&[FieldElement], usize) -> Option<(usize, P)> + Sync,
{
    let m = basis.len();
    assert!(m < 64, "exhaustive scan over 2^{m} codewords");
    if m == 0 {
        return None;
    }
    let len = basis[0].len();
    let total: u64 = 1 << m;
    let chunk: u64 = (total / 256).max(1 << 10).min(total);
    let chunks: Vec<(u64, u64)> = (0..total.div_ceil(chunk))
        .map(|c| (c * chunk, ((c + 1) * chunk).min(total)))
        .collect();

    let results: Vec<Option<Best<P>>> = chunks
        .into_par_iter()
        .map(|(start, end)| {
            let mut gray = start ^ (start >> 1);
            let mut word = vec![FieldElement::ZERO; len];
            for (j, b) in basis.iter().enumerate() {
                if gray >> j & 1 == 1 {
                    add_into(&mut word, b);
                }
            }
            let mut best: Option<Best<P>> = None;
            let mut key: Option<(usize, Vec<u64>)> = None;
            for i in start..end {
                if i > start {
                    let j = i.trailing_zeros() as usize;
                    gray ^= 1 << j;
                    add_into(&mut word, &basis[j]);
                }
                if gray == 0 {
                    continue;
                }
                let cutoff = key.as_ref().map_or(usize::MAX, |(v, _)| v + 1);
                if let Some((v, p)) = eval(&word, cutoff) {
                    let msg = vec![gray];
                    if better(v, &msg, &key) {
                        key = Some((v, msg.clone()));
                        best = Some(Best {
                            value: v,
                            message: msg,
                            payload: p,
                        });
                    }
                }
            }
            best
        })
        .collect();

    let mut out: Option<Best<P>> = None;
    for b in results.into_iter().flatten() {
        let replace = match &out {
            None => true,
            Some(o) => (b.value, cmp_key(&b.message)) < (o.value, cmp_key(&o.message)),
        };
        if replace {
            out = Some(b);
        }
    }
    out
}

/// Uniform nonzero messages of `bits` bits drawn from ChaCha20 seeded with
/// `seed`. Each message consumes ceil(bits/64) successive `next_u64` outputs,
/// masked to `bits`; all-zero draws are redrawn.
pub(crate) fn random_messages(bits: usize, samples: u64, seed: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let words = bits.div_ceil(64);
    let mut out = Vec::with_capacity(samples as usize);
    while (out.len() as u64) < samples {
        let mut m: Vec<u64> = (0..words).map(|_| rng.next_u64()).collect();
        if !bits.is_multiple_of(64) {
            let last = m.len() - 1;
            m[last] &= (1u64 << (bits % 64)) - 1;
        }
        if m.iter().any(|&w| w != 0) {
            out.push(m);
        }
    }
    out
}

pub(crate) fn combine(basis: &[Vec<FieldElement>], message: &[u64]) -> Vec<FieldElement> {
    let len = basis.first().map_or(0, Vec::len);
    let mut word = vec![FieldElement::ZERO; len];
    for (j, b) in basis.iter().enumerate() {
        if message.get(j / 64).is_some_and(|w| w >> (j % 64) & 1 == 1) {
            add_into(&mut word, b);
        }
    }
    word
}

/// Minimum of `eval` over sampled nonzero combinations.
pub(crate) fn sampled_min<P, F>(basis: &[Vec<FieldElement>], samples: u64, seed: u64, eval: F) -> Option<Best<P>>
where
    P: Send,
    F: Fn(&[FieldElement]) -> (usize, P) + Sync,
{
    if basis.is_empty() {
        return None;
    }
    let messages = random_messages(basis.len(), samples, seed);
    let results: Vec<(usize, Vec<u64>, P)> = messages
        .into_par_iter()
        .map(|m| {
            let word = combine(basis, &m);
            let (v, p) = eval(&word);
            (v, m, p)
        })
        .collect();
    let mut out: Option<Best<P>> = None;
    for (v, m, p) in results {
        let replace = match &out {
            None => true,
            Some(o) => (v, cmp_key(&m)) < (o.value, cmp_key(&o.message)),
        };
        if replace {
            out = Some(Best {
                value: v,
                message: m,
                payload: p,
            });
        }
    }
    out
}
