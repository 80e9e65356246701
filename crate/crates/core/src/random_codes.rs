// SPDX-License-Identifier: Apache-2.0

//! Random linear graph codes and brute-force-verified directed inner codes.
//!
//! Randomness comes from ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded with
//! `seed_from_u64(seed)`. A random binary matrix or graph consumes
//! successive `next_u64` outputs, 64 entries per output, least significant
//! bit first: graphs in the order (i, j) with i < j row by row, matrices in
//! row-major order. Attempts run sequentially on one generator, so a seed
//! fixes every attempt.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::code::{GraphCode, Linearity};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::metric::code_distance;
use crate::rational::{self, Rational};
use crate::report::{DistanceOptions, DistanceReport, Metric};
use crate::words::MatrixWord;

/// Default retry cap for the samplers.
pub const DEFAULT_RETRIES: usize = 64;

/// h_2(x) = -x log_2 x - (1 - x) log_2(1 - x), with h_2(0) = h_2(1) = 0.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("binary entropy of {x} outside [0, 1]")));
    }
    let term = |p: f64| if p == 0.0 { 0.0 } else { -p * p.log2() };
    Ok(term(x) + term(1.0 - x))
}

/// The x in [0, 1/2] with h_2(x) = y, by bisection to 1e-12.
pub fn binary_entropy_inverse(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::Domain(format!("entropy value {y} outside [0, 1]")));
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if binary_entropy(mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A sampled code with its certificate and the attempt log.
#[derive(Debug, Clone)]
pub struct Sampled {
    pub code: GraphCode,
    pub report: DistanceReport,
    /// Attempts used, counting the successful one.
    pub attempts: usize,
    pub transcript: Vec<String>,
}

/// Integer parameters of the random graph code for (n, delta).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomCodeParams {
    /// floor(n (1 - delta)).
    pub m: usize,
    /// Whether n (1 - delta) had to be floored.
    pub m_floored: bool,
    /// floor(C(m, 2) - h_2(delta) n - 2).
    pub k: i64,
}

pub fn random_code_params(n: usize, delta: Rational) -> Result<RandomCodeParams> {
    let one = Rational::from_integer(1);
    if delta < Rational::from_integer(0) || delta > one {
        return Err(Error::InvalidParameter(format!("delta = {delta} outside [0, 1]")));
    }
    let keep = Rational::from_integer(n as i64) * (one - delta);
    let m = rational::floor(keep) as usize;
    let h = binary_entropy(rational::to_f64(delta))?;
    let k = ((m * m.saturating_sub(1) / 2) as f64 - h * n as f64 - 2.0).floor() as i64;
    Ok(RandomCodeParams {
        m,
        m_floored: !keep.is_integer(),
        k,
    })
}

fn random_graph(rng: &mut ChaCha20Rng, n: usize) -> MatrixWord {
    let mut m = MatrixWord::zeros(FieldContext::binary(), n);
    let mut word = 0u64;
    let mut e = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if e.is_multiple_of(64) {
                word = rng.next_u64();
            }
            if word >> (e % 64) & 1 == 1 {
                m.set(i, j, FieldElement::ONE);
                m.set(j, i, FieldElement::ONE);
            }
            e += 1;
        }
    }
    m
}

fn random_matrix(rng: &mut ChaCha20Rng, n: usize) -> MatrixWord {
    let mut m = MatrixWord::zeros(FieldContext::binary(), n);
    let mut word = 0u64;
    for e in 0..n * n {
        if e.is_multiple_of(64) {
            word = rng.next_u64();
        }
        if word >> (e % 64) & 1 == 1 {
            m.set(e / n, e % n, FieldElement::ONE);
        }
    }
    m
}

// one sampled space: None when the draws are dependent
fn sample_space(
    rng: &mut ChaCha20Rng,
    n: usize,
    k: usize,
    directed: bool,
) -> Result<std::result::Result<GraphCode, usize>> {
    let words: Vec<MatrixWord> = (0..k)
        .map(|_| {
            if directed {
                random_matrix(rng, n)
            } else {
                random_graph(rng, n)
            }
        })
        .collect();
    let kept = GraphCode::reduce_basis(FieldContext::binary(), n, words, Linearity::Alphabet);
    if kept.len() < k {
        return Ok(Err(kept.len()));
    }
    GraphCode::new(FieldContext::binary(), n, kept, Linearity::Alphabet, directed).map(Ok)
}

fn retries_exhausted(attempts: usize, transcript: &[String]) -> Error {
    Error::RetriesExhausted {
        attempts,
        transcript: transcript.join("; "),
    }
}

/// Span of k uniform random graphs on n vertices, k from
/// [`random_code_params`], resampled until its exact distance exceeds
/// delta n.
pub fn sample_random_graph_code(
    n: usize,
    delta: Rational,
    seed: u64,
    retries: usize,
    opts: &DistanceOptions,
) -> Result<Sampled> {
    let params = random_code_params(n, delta)?;
    if params.k <= 0 {
        return Err(Error::InvalidParameter(format!(
            "dimension C({}, 2) - h2({delta}) {n} - 2 = {} is not positive",
            params.m, params.k
        )));
    }
    let k = params.k as usize;
    let threshold = delta * Rational::from_integer(n as i64);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut transcript = Vec::new();
    if params.m_floored {
        transcript.push(format!(
            "n(1-delta) = {} floored to m = {}",
            Rational::from_integer(n as i64) * (Rational::from_integer(1) - delta),
            params.m
        ));
    }
    for attempt in 1..=retries {
        let code = match sample_space(&mut rng, n, k, false)? {
            Ok(c) => c,
            Err(rank) => {
                transcript.push(format!("attempt {attempt}: rank {rank} < {k}, rejected"));
                continue;
            }
        };
        let report = code_distance(&code, Metric::Undirected, opts)?;
        let d = report.value().expect("exact mode");
        if Rational::from_integer(d as i64) > threshold {
            transcript.push(format!("attempt {attempt}: distance {d} > {threshold}, accepted"));
            let code = code.with_claimed_distance(d);
            return Ok(Sampled {
                code,
                report,
                attempts: attempt,
                transcript,
            });
        }
        transcript.push(format!("attempt {attempt}: distance {d} <= {threshold}, rejected"));
    }
    Err(retries_exhausted(retries, &transcript))
}

/// ceil((1 - eps) n), the directed distance an inner code must reach.
pub fn opt_target(eps: Rational, n: usize) -> usize {
    rational::ceil((Rational::from_integer(1) - eps) * Rational::from_integer(n as i64)).max(0) as usize
}

/// Rejection-samples k-dimensional spaces of n x n binary matrices until
/// one has exact directed distance at least ceil((1 - eps) n). Requires
/// k < eps^2 n^2 - 2n.
pub fn search_opt_directed(
    eps: Rational,
    n: usize,
    k: usize,
    seed: u64,
    max_attempts: usize,
    opts: &DistanceOptions,
) -> Result<Sampled> {
    let zero = Rational::from_integer(0);
    if eps <= zero || eps >= Rational::from_integer(1) {
        return Err(Error::InvalidParameter(format!("eps = {eps} outside (0, 1)")));
    }
    let nn = Rational::from_integer(n as i64);
    let cap = eps * eps * nn * nn - nn * Rational::from_integer(2);
    if k == 0 || Rational::from_integer(k as i64) >= cap {
        return Err(Error::InvalidParameter(format!(
            "need 0 < k < eps^2 n^2 - 2n = {cap}, got k = {k}"
        )));
    }
    let target = opt_target(eps, n);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut transcript = Vec::new();
    for attempt in 1..=max_attempts {
        let code = match sample_space(&mut rng, n, k, true)? {
            Ok(c) => c,
            Err(rank) => {
                transcript.push(format!("attempt {attempt}: rank {rank} < {k}, rejected"));
                continue;
            }
        };
        let report = code_distance(&code, Metric::Directed, opts)?;
        let d = report.value().expect("exact mode");
        if d >= target {
            transcript.push(format!(
                "attempt {attempt}: directed distance {d} >= {target}, accepted"
            ));
            let code = code.with_claimed_distance(d);
            return Ok(Sampled {
                code,
                report,
                attempts: attempt,
                transcript,
            });
        }
        transcript.push(format!("attempt {attempt}: directed distance {d} < {target}, rejected"));
    }
    Err(retries_exhausted(max_attempts, &transcript))
}
