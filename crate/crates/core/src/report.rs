// SPDX-License-Identifier: Apache-2.0

//! Distance certificates and the knobs that control how they are produced.

use serde::{Deserialize, Serialize};

/// Default cap on exhaustive enumeration for Hamming codes (q^k <= 2^20).
pub const DEFAULT_HAMMING_BUDGET: u64 = 1 << 20;
/// Default cap on exhaustive enumeration for graph codes.
pub const DEFAULT_GRAPH_BUDGET: u64 = 1 << 22;
/// Default branch-and-bound node cap per solver call; stands in for a
/// wall-clock soft cap so that results stay deterministic.
pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000;

/// Which metric a report certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Hamming,
    Undirected,
    Directed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certification {
    /// Every nonzero codeword was scanned; `lower == upper` is certified.
    Exact,
    /// Random codewords only; the upper bound is certified, nothing below it.
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceOptions {
    pub mode: Mode,
    /// Maximum number of codewords an exact scan may visit.
    pub budget: u64,
    /// Node cap for each branch-and-bound call.
    pub node_limit: u64,
}

impl DistanceOptions {
    pub fn exact(budget: u64) -> Self {
        DistanceOptions {
            mode: Mode::Exact,
            budget,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }

    pub fn sampled(samples: u64, seed: u64) -> Self {
        DistanceOptions {
            mode: Mode::Sampled { samples, seed },
            budget: DEFAULT_GRAPH_BUDGET,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions::exact(DEFAULT_GRAPH_BUDGET)
    }
}

/// Minimizing codeword together with its cover.
///
/// `message` holds the F_2 coordinates of the codeword in the code's binary
/// basis, packed little-endian into u64 words. For graph metrics `rows` and
/// `cols` are the deleted sets S and T (equal for the undirected metric);
/// for the Hamming metric `rows` is the support and `cols` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub message: Vec<u64>,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Witness {
    /// Message as a single integer, when it fits.
    pub fn index(&self) -> Option<u64> {
        match self.message.as_slice() {
            [] => Some(0),
            [w, rest @ ..] if rest.iter().all(|&x| x == 0) => Some(*w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub metric: Metric,
    pub mode: Certification,
    /// Certified lower bound; `None` in sampled mode.
    pub lower: Option<usize>,
    /// Certified upper bound (the witness distance).
    pub upper: usize,
    pub witness: Option<Witness>,
    /// Codewords examined (all nonzero ones in exact mode).
    pub codewords: u64,
    pub seed: Option<u64>,
}

impl DistanceReport {
    /// Exact distance, if certified.
    pub fn value(&self) -> Option<usize> {
        match self.mode {
            Certification::Exact => self.lower,
            Certification::Sampled => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.mode == Certification::Exact
    }
}
