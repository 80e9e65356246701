// SPDX-License-Identifier: Apache-2.0

//! Undirected and directed graph distance, and code-level certification.
//!
//! For words of a linear code d(A, B) = d(A - B, 0), so both metrics reduce
//! to a cover problem on the nonzero pattern of a single matrix: a vertex
//! cover of its support graph (undirected) or a pair of row and column sets
//! of equal size that hits every nonzero entry (directed).

use std::sync::atomic::{AtomicBool, Ordering};

use crate::code::GraphCode;
use crate::enumerate::{exhaustive_min, sampled_min};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::report::{Certification, DistanceOptions, DistanceReport, Metric, Mode, Witness, DEFAULT_NODE_LIMIT};
use crate::solvers::{
    directed_cover, greedy_directed_cover, greedy_vertex_cover, max_clique, max_independent_set, min_vertex_cover,
    Outcome,
};
use crate::words::{GraphWord, MatrixWord, Support};

/// Largest side the exact solvers accept.
pub const MAX_EXACT_SIDE: usize = 128;

fn packed_rows(sup: &Support) -> Result<Vec<u128>> {
    sup.rows_u128()
        .ok_or_else(|| Error::BudgetExceeded(format!("exact cover needs n <= {MAX_EXACT_SIDE}, got {}", sup.n())))
}

fn require_complete(o: Outcome) -> Result<Outcome> {
    if o.exact {
        Ok(o)
    } else {
        Err(Error::BudgetExceeded(
            "branch and bound stopped at the node limit".into(),
        ))
    }
}

/// Exact minimum vertex cover of the support graph of `word`, which must be
/// symmetric with zero diagonal.
pub fn vertex_cover(word: &MatrixWord, node_limit: u64) -> Result<Outcome> {
    if !word.is_symmetric() || !word.has_zero_diagonal() {
        return Err(Error::InvalidParameter(
            "undirected distance needs a symmetric zero-diagonal word".into(),
        ));
    }
    let adj = packed_rows(&word.support())?;
    let n = adj.len();
    let o = min_vertex_cover(&adj, n + 1, node_limit)?.expect("n vertices always cover");
    require_complete(o)
}

/// Exact directed cover of the nonzero pattern of `word`.
pub fn matrix_cover(word: &MatrixWord, node_limit: u64) -> Result<Outcome> {
    let rows = packed_rows(&word.support())?;
    let o = directed_cover(&rows, usize::MAX, node_limit)?.expect("unbounded cutoff");
    require_complete(o)
}

pub fn graph_distance(g: &GraphWord, h: &GraphWord) -> Result<usize> {
    let diff = g.matrix().difference(h.matrix())?;
    Ok(vertex_cover(&diff, DEFAULT_NODE_LIMIT)?.value)
}

pub fn directed_graph_distance(a: &MatrixWord, b: &MatrixWord) -> Result<usize> {
    let diff = a.difference(b)?;
    Ok(matrix_cover(&diff, DEFAULT_NODE_LIMIT)?.value)
}

fn binary_adjacency(g: &GraphWord) -> Result<Vec<u128>> {
    if !g.is_binary() {
        return Err(Error::Domain(
            "independence and clique numbers need a binary graph".into(),
        ));
    }
    packed_rows(&g.matrix().support())
}

pub fn independence_number(g: &GraphWord) -> Result<usize> {
    let adj = binary_adjacency(g)?;
    let o = max_independent_set(&adj, 0, DEFAULT_NODE_LIMIT)?.expect("empty set is independent");
    Ok(require_complete(o)?.value)
}

pub fn clique_number(g: &GraphWord) -> Result<usize> {
    let adj = binary_adjacency(g)?;
    let o = max_clique(&adj, 0, DEFAULT_NODE_LIMIT)?.expect("empty set is a clique");
    Ok(require_complete(o)?.value)
}

/// The metric a code is measured in by default.
pub fn natural_metric(c: &GraphCode) -> Metric {
    if c.directed() {
        Metric::Directed
    } else {
        Metric::Undirected
    }
}

/// Minimum distance of `c` in `metric` over its nonzero codewords.
///
/// Exact mode visits all 2^b - 1 nonzero codewords (b the F_2 dimension) and
/// fails with `BudgetExceeded` when 2^b exceeds the budget or a solver call
/// hits its node limit. Sampled mode certifies only the upper bound.
pub fn code_distance(c: &GraphCode, metric: Metric, opts: &DistanceOptions) -> Result<DistanceReport> {
    if c.is_empty() {
        return Err(Error::Undefined("distance of a zero-dimensional code".into()));
    }
    match metric {
        Metric::Hamming => {
            return Err(Error::InvalidParameter(
                "graph codes are measured in a graph metric".into(),
            ))
        }
        Metric::Undirected if !c.symmetric_zero_diag() => {
            return Err(Error::InvalidParameter(
                "undirected distance needs a symmetric zero-diagonal code".into(),
            ))
        }
        _ => {}
    }
    let n = c.n();
    let basis = c.binary_basis();
    let bits = basis.len();
    let directed = metric == Metric::Directed;
    match opts.mode {
        Mode::Exact => {
            if n > MAX_EXACT_SIDE {
                return Err(Error::BudgetExceeded(format!(
                    "exact distance needs n <= {MAX_EXACT_SIDE}, got {n}"
                )));
            }
            if bits >= 63 || (1u64 << bits) > opts.budget {
                return Err(Error::BudgetExceeded(format!(
                    "2^{bits} codewords exceed the exact budget {}",
                    opts.budget
                )));
            }
            let stopped = AtomicBool::new(false);
            let best = exhaustive_min(&basis, |w, cutoff| {
                let rows = Support::from_entries(n, w).rows_u128().expect("n checked");
                let found = if directed {
                    directed_cover(&rows, cutoff, opts.node_limit)
                } else {
                    min_vertex_cover(&rows, cutoff, opts.node_limit)
                };
                match found {
                    Ok(Some(o)) => {
                        if !o.exact {
                            stopped.store(true, Ordering::Relaxed);
                        }
                        Some((o.value, (o.rows, o.cols)))
                    }
                    Ok(None) => None,
                    Err(_) => {
                        stopped.store(true, Ordering::Relaxed);
                        None
                    }
                }
            })
            .expect("nonempty basis has a nonzero codeword");
            if stopped.load(Ordering::Relaxed) {
                return Err(Error::BudgetExceeded(format!(
                    "a cover search hit the node limit {}",
                    opts.node_limit
                )));
            }
            let (rows, cols) = best.payload;
            Ok(DistanceReport {
                metric,
                mode: Certification::Exact,
                lower: Some(best.value),
                upper: best.value,
                witness: Some(Witness {
                    message: best.message,
                    rows,
                    cols,
                }),
                codewords: (1u64 << bits) - 1,
                seed: None,
            })
        }
        Mode::Sampled { samples, seed } => {
            if samples == 0 {
                return Err(Error::InvalidParameter("sampled mode needs at least one sample".into()));
            }
            let best = sampled_min(&basis, samples, seed, |w| {
                let o = sampled_cover(n, w, directed, opts.node_limit);
                (o.value, (o.rows, o.cols))
            })
            .expect("nonempty basis");
            let (rows, cols) = best.payload;
            Ok(DistanceReport {
                metric,
                mode: Certification::Sampled,
                lower: None,
                upper: best.value,
                witness: Some(Witness {
                    message: best.message,
                    rows,
                    cols,
                }),
                codewords: samples,
                seed: Some(seed),
            })
        }
    }
}

// Greedy cover, improved by a node-limited exact search when n is small
// enough. Any cover found is a valid upper bound.
fn sampled_cover(n: usize, w: &[FieldElement], directed: bool, node_limit: u64) -> Outcome {
    let sup = Support::from_entries(n, w);
    let greedy = if directed {
        greedy_directed_cover(&sup)
    } else {
        greedy_vertex_cover(&sup)
    };
    let Some(rows) = sup.rows_u128() else {
        return greedy;
    };
    let refined = if directed {
        directed_cover(&rows, greedy.value, node_limit)
    } else {
        min_vertex_cover(&rows, greedy.value, node_limit)
    };
    match refined {
        Ok(Some(o)) => o,
        _ => greedy,
    }
}

fn binom2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

/// Whether the certified distance is compatible with the Singleton-type
/// bound log_2|C| <= C(n - d + 1, 2) log_2 q for symmetric zero-diagonal
/// codes, and log_2|C| <= (n - d + 1)^2 log_2 q for general matrix codes.
pub fn singleton_check(c: &GraphCode, report: &DistanceReport) -> Result<bool> {
    let d = report
        .value()
        .ok_or_else(|| Error::InvalidParameter("Singleton check needs an exact report".into()))?;
    if report.metric == Metric::Hamming {
        return Err(Error::InvalidParameter(
            "Singleton check takes a graph-metric report".into(),
        ));
    }
    let n = c.n() as u64;
    let d = d as u64;
    if d == 0 || d > n {
        return Ok(false);
    }
    let free = n - d + 1;
    let positions = if c.symmetric_zero_diag() {
        binom2(free)
    } else {
        free * free
    };
    Ok(c.binary_dimension() as u64 <= positions * c.ctx().t() as u64)
}
