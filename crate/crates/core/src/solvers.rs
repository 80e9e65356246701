// SPDX-License-Identifier: Apache-2.0

//! Exponential-time combinatorial oracles on packed bit rows.
//!
//! * maximum clique / independent set: branch and bound with a greedy
//!   coloring bound, n <= 128;
//! * directed cover: the smallest d with S, T of size d such that deleting
//!   rows S and columns T leaves no nonzero entry, n <= 128;
//! * greedy covers of any size, used for upper bounds in sampled mode.
//!
//! Exact solvers take a `cutoff` and only report solutions strictly below it
//! (above it for cliques), which lets code-level scans prune against their
//! incumbent. Node limits replace wall-clock caps; when a limit is hit the
//! best solution found so far is returned with `exact = false`, and a search
//! stopped before finding any solution is a `BudgetExceeded` error, since
//! `None` has to mean that no solution beats the cutoff.

use crate::error::{Error, Result};
use crate::words::Support;

/// Sets are u128 masks over vertex / row / column indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub value: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// False when the node limit stopped the search early; `value` is then
    /// only an upper bound (or a lower bound, for cliques).
    pub exact: bool,
}

fn mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn members(set: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(set.count_ones() as usize);
    let mut s = set;
    while s != 0 {
        out.push(s.trailing_zeros() as usize);
        s &= s - 1;
    }
    out
}

struct CliqueSearch<'a> {
    adj: &'a [u128],
    best_size: usize,
    best: Option<u128>,
    nodes: u64,
    limit: u64,
    stopped: bool,
}

impl CliqueSearch<'_> {
    // greedy sequential coloring; returns vertices ordered by color with the
    // color number (1-based) of each
    fn color_sort(&self, cand: u128) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(cand.count_ones() as usize);
        let mut uncolored = cand;
        let mut color = 0;
        while uncolored != 0 {
            color += 1;
            let mut q = uncolored;
            while q != 0 {
                let v = q.trailing_zeros() as usize;
                q &= !(1u128 << v);
                q &= !self.adj[v];
                uncolored &= !(1u128 << v);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, mut cand: u128, current: u128, size: usize) {
        self.nodes += 1;
        if self.nodes > self.limit {
            self.stopped = true;
            return;
        }
        let order = self.color_sort(cand);
        for &(v, color) in order.iter().rev() {
            if self.stopped || size + color <= self.best_size {
                return;
            }
            let next = cand & self.adj[v];
            let with_v = current | 1u128 << v;
            if next == 0 {
                if size + 1 > self.best_size {
                    self.best_size = size + 1;
                    self.best = Some(with_v);
                }
            } else {
                self.expand(next, with_v, size + 1);
            }
            cand &= !(1u128 << v);
        }
    }
}

/// Maximum clique of the graph with adjacency rows `adj` (symmetric, no
/// loops), restricted to cliques of size >= `at_least`. Returns `None` when
/// no such clique exists.
pub fn max_clique(adj: &[u128], at_least: usize, node_limit: u64) -> Result<Option<Outcome>> {
    let n = adj.len();
    assert!(n <= 128, "clique solver supports n <= 128");
    if n == 0 {
        return Ok((at_least == 0).then(|| Outcome {
            value: 0,
            rows: vec![],
            cols: vec![],
            exact: true,
        }));
    }
    let at_least = at_least.max(1);
    let mut s = CliqueSearch {
        adj,
        best_size: at_least - 1,
        best: None,
        nodes: 0,
        limit: node_limit,
        stopped: false,
    };
    s.expand(mask(n), 0, 0);
    let exact = !s.stopped;
    if s.stopped && s.best.is_none() {
        return Err(node_limit_hit(node_limit));
    }
    Ok(s.best.map(|set| {
        let rows = members(set);
        Outcome {
            value: rows.len(),
            cols: rows.clone(),
            rows,
            exact,
        }
    }))
}

fn node_limit_hit(limit: u64) -> Error {
    Error::BudgetExceeded(format!("branch and bound stopped at the node limit {limit}"))
}

/// Complement adjacency of `adj` on n vertices.
pub fn complement(adj: &[u128]) -> Vec<u128> {
    let m = mask(adj.len());
    adj.iter().enumerate().map(|(i, &r)| !r & m & !(1u128 << i)).collect()
}

/// Maximum independent set of size >= `at_least`.
pub fn max_independent_set(adj: &[u128], at_least: usize, node_limit: u64) -> Result<Option<Outcome>> {
    max_clique(&complement(adj), at_least, node_limit)
}

/// Minimum vertex cover of size < `cutoff`, as the complement of a maximum
/// independent set. `adj` must be symmetric without loops.
pub fn min_vertex_cover(adj: &[u128], cutoff: usize, node_limit: u64) -> Result<Option<Outcome>> {
    let n = adj.len();
    // cover < cutoff  <=>  independent set > n - cutoff
    let at_least = (n + 1).saturating_sub(cutoff);
    let Some(mis) = max_independent_set(adj, at_least, node_limit)? else {
        return Ok(None);
    };
    let in_set: u128 = mis.rows.iter().fold(0, |acc, &v| acc | 1u128 << v);
    let cover = members(mask(n) & !in_set);
    Ok(Some(Outcome {
        value: cover.len(),
        cols: cover.clone(),
        rows: cover,
        exact: mis.exact,
    }))
}

struct DirectedSearch<'a> {
    rows: &'a [u128],
    cols: Vec<u128>,
    best: usize,
    best_sets: Option<(u128, u128)>,
    nodes: u64,
    limit: u64,
    stopped: bool,
}

impl DirectedSearch<'_> {
    // maximum matching on the entries outside rows s and columns t
    fn matching(&self, s: u128, t: u128) -> usize {
        let mut mate = [u8::MAX; 128];
        let mut size = 0;
        for (i, &r) in self.rows.iter().enumerate() {
            if s >> i & 1 == 0 && r & !t != 0 {
                let mut seen = t;
                size += usize::from(self.augment(i, &mut seen, &mut mate));
            }
        }
        size
    }

    fn augment(&self, i: usize, seen: &mut u128, mate: &mut [u8; 128]) -> bool {
        let mut cand = self.rows[i] & !*seen;
        while cand != 0 {
            let j = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            *seen |= 1u128 << j;
            if mate[j] == u8::MAX || self.augment(mate[j] as usize, seen, mate) {
                mate[j] = i as u8;
                return true;
            }
        }
        false
    }

    fn search(&mut self, mut s: u128, mut t: u128, mut ns: usize, mut nt: usize) {
        self.nodes += 1;
        if self.nodes > self.limit {
            self.stopped = true;
            return;
        }
        if self.best == 0 {
            return;
        }
        let target = self.best - 1;
        let n = self.rows.len();
        // a line with more entries than the other side's budget must be deleted
        loop {
            if ns > target || nt > target {
                return;
            }
            let mut changed = false;
            for i in 0..n {
                if s >> i & 1 == 0 && (self.rows[i] & !t).count_ones() as usize > target - nt {
                    s |= 1u128 << i;
                    ns += 1;
                    changed = true;
                    if ns > target {
                        return;
                    }
                }
            }
            for j in 0..n {
                if t >> j & 1 == 0 && (self.cols[j] & !s).count_ones() as usize > target - ns {
                    t |= 1u128 << j;
                    nt += 1;
                    changed = true;
                    if nt > target {
                        return;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        // heaviest remaining line, rows first on ties
        let mut pick = (0u32, false, 0usize);
        for i in 0..n {
            let d = if s >> i & 1 == 0 {
                (self.rows[i] & !t).count_ones()
            } else {
                0
            };
            if d > pick.0 {
                pick = (d, true, i);
            }
        }
        for j in 0..n {
            let d = if t >> j & 1 == 0 {
                (self.cols[j] & !s).count_ones()
            } else {
                0
            };
            if d > pick.0 {
                pick = (d, false, j);
            }
        }
        if pick.0 == 0 {
            self.best = ns.max(nt);
            self.best_sets = Some((s, t));
            return;
        }
        // Koenig: the remaining entries need at least a maximum matching of lines
        if ns + nt + self.matching(s, t) > 2 * target {
            return;
        }
        let (deg, is_row, v) = (pick.0 as usize, pick.1, pick.2);
        if is_row {
            self.search(s | 1u128 << v, t, ns + 1, nt);
            if !self.stopped {
                self.search(s, t | (self.rows[v] & !t), ns, nt + deg);
            }
        } else {
            self.search(s, t | 1u128 << v, ns, nt + 1);
            if !self.stopped {
                self.search(s | (self.cols[v] & !s), t, ns + deg, nt);
            }
        }
    }
}

fn pad(set: u128, n: usize, size: usize) -> Vec<usize> {
    let mut out = set;
    let mut i = 0;
    while (out.count_ones() as usize) < size && i < n {
        out |= 1u128 << i;
        i += 1;
    }
    members(out)
}

/// Directed cover number of the nonzero pattern `rows` (bit j of `rows[i]`
/// marks entry (i, j)), provided it is below `cutoff`.
///
/// Lines whose remaining count exceeds the other side's budget are forced
/// into the cover; otherwise the heaviest line (rows first on ties) is
/// either deleted or has all its remaining neighbours deleted, deletion
/// first. Nodes are pruned with a maximum matching of the uncovered
/// entries.
pub fn directed_cover(rows: &[u128], cutoff: usize, node_limit: u64) -> Result<Option<Outcome>> {
    let n = rows.len();
    assert!(n <= 128, "directed solver supports n <= 128");
    let cols: Vec<u128> = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&i| rows[i] >> j & 1 == 1)
                .fold(0u128, |a, i| a | 1u128 << i)
        })
        .collect();
    let nonzero_rows: u128 = rows
        .iter()
        .enumerate()
        .filter(|(_, &r)| r != 0)
        .fold(0, |acc, (i, _)| acc | 1u128 << i);
    let trivial = nonzero_rows.count_ones() as usize;
    let mut search = DirectedSearch {
        rows,
        cols,
        best: cutoff.min(n + 1),
        best_sets: None,
        nodes: 0,
        limit: node_limit,
        stopped: false,
    };
    if trivial < search.best {
        search.best = trivial;
        search.best_sets = Some((nonzero_rows, 0));
    }
    search.search(0, 0, 0, 0);
    let exact = !search.stopped;
    if search.stopped && search.best_sets.is_none() {
        return Err(node_limit_hit(node_limit));
    }
    let d = search.best;
    Ok(search.best_sets.map(|(s, t)| Outcome {
        value: d,
        rows: pad(s, n, d),
        cols: pad(t, n, d),
        exact,
    }))
}

/// Greedy vertex cover of the symmetrized support: repeatedly take a vertex
/// of maximum remaining degree (lowest index on ties).
pub fn greedy_vertex_cover(sup: &Support) -> Outcome {
    let sym = sup.symmetrize();
    let n = sym.n();
    let words = sym.row(0).len().max(1);
    let mut alive: Vec<u64> = vec![0; words];
    for v in 0..n {
        alive[v / 64] |= 1 << (v % 64);
    }
    let degree =
        |v: usize, alive: &[u64]| -> u32 { sym.row(v).iter().zip(alive).map(|(a, b)| (a & b).count_ones()).sum() };
    let mut cover = Vec::new();
    loop {
        let mut best = (0u32, usize::MAX);
        for v in 0..n {
            if alive[v / 64] >> (v % 64) & 1 == 0 {
                continue;
            }
            let d = degree(v, &alive);
            if d > best.0 {
                best = (d, v);
            }
        }
        if best.0 == 0 {
            break;
        }
        let v = best.1;
        alive[v / 64] &= !(1 << (v % 64));
        cover.push(v);
    }
    // nonzero diagonal entries need their own vertex
    cover.extend((0..n).filter(|&v| sup.get(v, v) && alive[v / 64] >> (v % 64) & 1 == 1));
    cover.sort_unstable();
    Outcome {
        value: cover.len(),
        cols: cover.clone(),
        rows: cover,
        exact: false,
    }
}

/// Greedy directed cover: delete the row (while |S| <= |T|) or column of
/// largest remaining count, switching sides when one side is exhausted. The
/// result is compared with the symmetric greedy cover and the better one is
/// returned.
pub fn greedy_directed_cover(sup: &Support) -> Outcome {
    let n = sup.n();
    let tr = sup.transpose();
    let words = sup.row(0).len().max(1);
    let mut live_rows = vec![0u64; words];
    let mut live_cols = vec![0u64; words];
    for v in 0..n {
        live_rows[v / 64] |= 1 << (v % 64);
        live_cols[v / 64] |= 1 << (v % 64);
    }
    let heaviest = |lines: &Support, live_self: &[u64], live_other: &[u64]| -> (u32, usize) {
        let mut best = (0u32, usize::MAX);
        for v in 0..n {
            if live_self[v / 64] >> (v % 64) & 1 == 0 {
                continue;
            }
            let c: u32 = lines
                .row(v)
                .iter()
                .zip(live_other)
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            if c > best.0 {
                best = (c, v);
            }
        }
        best
    };
    let (mut s, mut t) = (Vec::new(), Vec::new());
    loop {
        let row = heaviest(sup, &live_rows, &live_cols);
        let col = heaviest(&tr, &live_cols, &live_rows);
        if row.0 == 0 {
            break;
        }
        if (s.len() <= t.len() || col.0 == 0) && row.0 > 0 {
            live_rows[row.1 / 64] &= !(1 << (row.1 % 64));
            s.push(row.1);
        } else {
            live_cols[col.1 / 64] &= !(1 << (col.1 % 64));
            t.push(col.1);
        }
    }
    let d = s.len().max(t.len());
    let sym = greedy_vertex_cover(sup);
    if sym.value <= d {
        return sym;
    }
    let fill = |mut v: Vec<usize>| {
        let mut i = 0;
        while v.len() < d {
            if !v.contains(&i) {
                v.push(i);
            }
            i += 1;
        }
        v.sort_unstable();
        v
    };
    Outcome {
        value: d,
        rows: fill(s),
        cols: fill(t),
        exact: false,
    }
}

/// Checks that deleting `rows` and `cols` leaves no nonzero entry.
pub fn is_directed_cover(sup: &Support, rows: &[usize], cols: &[usize]) -> bool {
    let n = sup.n();
    let mut dead_col = vec![false; n];
    for &c in cols {
        dead_col[c] = true;
    }
    let mut dead_row = vec![false; n];
    for &r in rows {
        dead_row[r] = true;
    }
    (0..n).all(|i| dead_row[i] || (0..n).all(|j| dead_col[j] || !sup.get(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::MatrixWord;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn adj_of(n: usize, edges: &[(usize, usize)]) -> Vec<u128> {
        let mut a = vec![0u128; n];
        for &(u, v) in edges {
            a[u] |= 1 << v;
            a[v] |= 1 << u;
        }
        a
    }

    fn brute_independence(adj: &[u128]) -> usize {
        let n = adj.len();
        (0u32..1 << n)
            .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || (adj[v] as u32) & s == 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    fn brute_directed(rows: &[u128]) -> usize {
        // min over row subsets S of max(|S|, #columns hit outside S)
        let n = rows.len();
        (0u32..1 << n)
            .map(|s| {
                let cols = (0..n).filter(|&i| s >> i & 1 == 0).fold(0u128, |a, i| a | rows[i]);
                (s.count_ones() as usize).max(cols.count_ones() as usize)
            })
            .min()
            .unwrap()
    }

    #[test]
    fn cycle_and_complete() {
        let c5 = adj_of(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(max_independent_set(&c5, 0, u64::MAX).unwrap().unwrap().value, 2);
        assert_eq!(max_clique(&c5, 0, u64::MAX).unwrap().unwrap().value, 2);
        let k4 = adj_of(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(max_independent_set(&k4, 0, u64::MAX).unwrap().unwrap().value, 1);
        assert_eq!(max_clique(&k4, 0, u64::MAX).unwrap().unwrap().value, 4);
        // cutoff semantics
        assert!(max_clique(&k4, 5, u64::MAX).unwrap().is_none());
        assert_eq!(min_vertex_cover(&k4, 4, u64::MAX).unwrap().unwrap().value, 3);
        assert!(min_vertex_cover(&k4, 3, u64::MAX).unwrap().is_none());
    }

    #[test]
    fn mis_matches_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=14);
            let p: f64 = rng.gen_range(0.1..0.9);
            let mut edges = vec![];
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let adj = adj_of(n, &edges);
            let got = max_independent_set(&adj, 0, u64::MAX).unwrap().unwrap();
            assert_eq!(got.value, brute_independence(&adj));
            for &u in &got.rows {
                assert_eq!(adj[u] & got.rows.iter().fold(0, |a, &v| a | 1 << v), 0);
            }
        }
    }

    #[test]
    fn directed_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.gen_range(1..=10);
            let p: f64 = rng.gen_range(0.05..0.8);
            let rows: Vec<u128> = (0..n)
                .map(|_| (0..n).filter(|_| rng.gen_bool(p)).fold(0u128, |a, j| a | 1 << j))
                .collect();
            let got = directed_cover(&rows, usize::MAX, u64::MAX).unwrap().unwrap();
            assert_eq!(got.value, brute_directed(&rows));
            assert!(got.exact);
            assert_eq!(got.rows.len(), got.value);
            assert_eq!(got.cols.len(), got.value);
            let m = MatrixWord::from_bool(n, |i, j| rows[i] >> j & 1 == 1);
            assert!(is_directed_cover(&m.support(), &got.rows, &got.cols));
        }
    }

    #[test]
    fn directed_small_cases() {
        assert_eq!(
            directed_cover(&[0, 0, 0], usize::MAX, u64::MAX).unwrap().unwrap().value,
            0
        );
        assert_eq!(
            directed_cover(&[0, 0b100, 0], usize::MAX, u64::MAX)
                .unwrap()
                .unwrap()
                .value,
            1
        );
        // perfect matching 0-1, 2-3 as a symmetric matrix
        let pm = [0b0010u128, 0b0001, 0b1000, 0b0100];
        assert_eq!(directed_cover(&pm, usize::MAX, u64::MAX).unwrap().unwrap().value, 2);
        assert!(directed_cover(&pm, 2, u64::MAX).unwrap().is_none());
    }

    #[test]
    fn node_limit_returns_an_upper_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let rows: Vec<u128> = (0..40).map(|_| rng.gen::<u128>() & ((1 << 40) - 1)).collect();
        let r = directed_cover(&rows, usize::MAX, 10).unwrap().unwrap();
        assert!(!r.exact);
        let m = MatrixWord::from_bool(40, |i, j| rows[i] >> j & 1 == 1);
        assert!(is_directed_cover(&m.support(), &r.rows, &r.cols));
    }

    #[test]
    fn greedy_covers_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [5usize, 33, 70, 150] {
            let m = MatrixWord::from_bool(n, |_, _| rng.gen_bool(0.2));
            let sup = m.support();
            let d = greedy_directed_cover(&sup);
            assert!(is_directed_cover(&sup, &d.rows, &d.cols));
            assert_eq!(d.rows.len(), d.value);
            let u = greedy_vertex_cover(&sup);
            assert!(is_directed_cover(&sup, &u.rows, &u.cols));
        }
    }
}
