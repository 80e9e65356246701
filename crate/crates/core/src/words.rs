// SPDX-License-Identifier: Apache-2.0

//! Square matrices over GF(2^t) and the symmetric zero-diagonal subset that
//! represents (weighted) graphs.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

/// An n x n matrix over GF(2^t), row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixWord {
    ctx: FieldContext,
    n: usize,
    entries: Vec<FieldElement>,
}

impl MatrixWord {
    pub fn zeros(ctx: FieldContext, n: usize) -> Self {
        MatrixWord {
            ctx,
            n,
            entries: vec![FieldElement::ZERO; n * n],
        }
    }

    pub fn from_entries(ctx: FieldContext, n: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        for &e in &entries {
            ctx.check(e)?;
        }
        Ok(MatrixWord { ctx, n, entries })
    }

    /// Builds the matrix entrywise from `(row, col)`.
    pub fn from_fn(ctx: FieldContext, n: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        debug_assert!(entries.iter().all(|&e| ctx.contains(e)));
        MatrixWord { ctx, n, entries }
    }

    /// A binary matrix from an adjacency predicate.
    pub fn from_bool(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        Self::from_fn(FieldContext::binary(), n, |i, j| FieldElement(f(i, j) as u32))
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<FieldElement> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i).is_zero())
    }

    pub fn transpose(&self) -> MatrixWord {
        MatrixWord::from_fn(self.ctx, self.n, |i, j| self.get(j, i))
    }

    fn check_compatible(&self, other: &MatrixWord) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.ctx, other.ctx)));
        }
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!("side {} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    /// Entrywise difference (= sum in characteristic 2).
    pub fn difference(&self, other: &MatrixWord) -> Result<MatrixWord> {
        self.check_compatible(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| a + b).collect();
        Ok(MatrixWord {
            ctx: self.ctx,
            n: self.n,
            entries,
        })
    }

    pub fn scale(&self, s: FieldElement) -> MatrixWord {
        let entries = self.entries.iter().map(|&e| self.ctx.mul(s, e)).collect();
        MatrixWord {
            ctx: self.ctx,
            n: self.n,
            entries,
        }
    }

    /// Support rows: bit j of `rows[i]` is set iff entry (i, j) is nonzero.
    pub fn support(&self) -> Support {
        Support::from_entries(self.n, &self.entries)
    }

    /// The `n=<n> q=<hex-modulus>` text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("n={} q={:x}\n", self.n, self.ctx.modulus());
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }

    /// Parses one matrix from the front of `lines`.
    pub fn parse_lines<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<MatrixWord> {
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing matrix header".into()))?;
        let mut n = None;
        let mut modulus = None;
        for field in header.split(' ') {
            match field.split_once('=') {
                Some(("n", v)) => n = v.parse::<usize>().ok(),
                Some(("q", v)) => modulus = u32::from_str_radix(v, 16).ok(),
                _ => return Err(Error::Parse(format!("bad header field {field:?}"))),
            }
        }
        let (Some(n), Some(modulus)) = (n, modulus) else {
            return Err(Error::Parse(format!("incomplete header {header:?}")));
        };
        let ctx = FieldContext::from_modulus(modulus)?;
        let mut entries = Vec::with_capacity(n * n);
        for _ in 0..n {
            let line = lines.next().ok_or_else(|| Error::Parse("missing matrix row".into()))?;
            let before = entries.len();
            for sym in line.split(' ') {
                entries.push(ctx.parse_element(sym)?);
            }
            if entries.len() - before != n {
                return Err(Error::Parse(format!(
                    "row with {} symbols for n={n}",
                    entries.len() - before
                )));
            }
        }
        MatrixWord::from_entries(ctx, n, entries)
    }

    pub fn from_text(text: &str) -> Result<MatrixWord> {
        let mut lines = text.lines();
        let m = Self::parse_lines(&mut lines)?;
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing data after matrix".into()));
        }
        Ok(m)
    }
}

/// A symmetric matrix with zero diagonal; over F_2 exactly an adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphWord(MatrixWord);

impl GraphWord {
    pub fn new(m: MatrixWord) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::InvalidParameter("graph word is not symmetric".into()));
        }
        if !m.has_zero_diagonal() {
            return Err(Error::InvalidParameter("graph word has a nonzero diagonal".into()));
        }
        Ok(GraphWord(m))
    }

    pub fn empty(ctx: FieldContext, n: usize) -> Self {
        GraphWord(MatrixWord::zeros(ctx, n))
    }

    pub fn complete(n: usize) -> Self {
        GraphWord(MatrixWord::from_bool(n, |i, j| i != j))
    }

    /// Binary graph from an edge list on `n` vertices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut m = MatrixWord::zeros(FieldContext::binary(), n);
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidParameter(format!("bad edge ({u}, {v}) for n={n}")));
            }
            m.set(u, v, FieldElement::ONE);
            m.set(v, u, FieldElement::ONE);
        }
        Ok(GraphWord(m))
    }

    pub fn matrix(&self) -> &MatrixWord {
        &self.0
    }

    pub fn into_matrix(self) -> MatrixWord {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn is_binary(&self) -> bool {
        self.0.ctx().is_binary()
    }

    /// Pairs u < v with a nonzero entry.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !self.0.get(u, v).is_zero() {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Edge list format: one `u v` line per edge, 0-indexed, u < v.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    /// Complement of a binary graph.
    pub fn complement(&self) -> Result<GraphWord> {
        if !self.is_binary() {
            return Err(Error::Domain("complement of a non-binary graph".into()));
        }
        let n = self.n();
        Ok(GraphWord(MatrixWord::from_bool(n, |i, j| {
            i != j && self.0.get(i, j).is_zero()
        })))
    }
}

impl TryFrom<MatrixWord> for GraphWord {
    type Error = Error;

    fn try_from(m: MatrixWord) -> Result<Self> {
        GraphWord::new(m)
    }
}

/// Nonzero pattern of a matrix as packed bit rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Support {
    pub fn from_entries(n: usize, entries: &[FieldElement]) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if !entries[i * n + j].is_zero() {
                    bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        Support { n, words, bits }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Rows as u128 masks, for n <= 128.
    pub fn rows_u128(&self) -> Option<Vec<u128>> {
        if self.n > 128 {
            return None;
        }
        Some(
            (0..self.n)
                .map(|i| {
                    let r = self.row(i);
                    let lo = r[0] as u128;
                    let hi = r.get(1).copied().unwrap_or(0) as u128;
                    lo | hi << 64
                })
                .collect(),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn transpose(&self) -> Support {
        let mut out = Support {
            n: self.n,
            words: self.words,
            bits: vec![0; self.bits.len()],
        };
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    out.bits[j * self.words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        out
    }

    /// Symmetrized support (an entry or its mirror is nonzero), diagonal dropped.
    pub fn symmetrize(&self) -> Support {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    out.bits[j * self.words + i / 64] |= 1 << (i % 64);
                }
            }
            out.bits[i * self.words + i / 64] &= !(1 << (i % 64));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_word_validation() {
        let asym = MatrixWord::from_bool(3, |i, j| i == 0 && j == 1);
        assert!(GraphWord::new(asym).is_err());
        let diag = MatrixWord::from_bool(2, |i, j| i == j);
        assert!(GraphWord::new(diag).is_err());
        let k3 = GraphWord::complete(3);
        assert_eq!(k3.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(k3.complement().unwrap(), GraphWord::empty(FieldContext::binary(), 3));
    }

    #[test]
    fn text_format_is_bit_exact() {
        let ctx = FieldContext::new(3).unwrap();
        let m = MatrixWord::from_fn(ctx, 3, |i, j| FieldElement(((i * 3 + j) % 8) as u32));
        let text = m.to_text();
        assert_eq!(text, "n=3 q=b\n0 1 2\n3 4 5\n6 7 0\n");
        let back = MatrixWord::from_text(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_text(), text);
        assert!(MatrixWord::from_text("n=2 q=3\n0 1\n1\n").is_err());
        assert!(MatrixWord::from_text("n=2 q=3\n0 2\n1 0\n").is_err());
    }

    #[test]
    fn edge_list_export() {
        let g = GraphWord::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.to_edge_list(), "0 1\n2 3\n");
        assert!(GraphWord::from_edges(3, &[(1, 1)]).is_err());
    }

    #[test]
    fn support_bits_across_word_boundary() {
        let m = MatrixWord::from_bool(130, |i, j| (i + j) % 65 == 0 && i != j);
        let s = m.support();
        for i in 0..130 {
            for j in 0..130 {
                assert_eq!(s.get(i, j), !m.get(i, j).is_zero());
            }
        }
        assert!(s.rows_u128().is_none());
        assert_eq!(s.transpose(), m.transpose().support());
    }
}
