// SPDX-License-Identifier: Apache-2.0

//! Dense linear algebra over GF(2^t): row reduction, rank, null spaces and
//! incremental spans.

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

/// Row-major dense matrix over a binary extension field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix, ctx: &FieldContext) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + ctx.mul(a, other.get(k, c));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, ctx: &FieldContext) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = ctx.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = ctx.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(i, j) + ctx.mul(f, self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, ctx: &FieldContext) -> usize {
        self.clone().rref(ctx).len()
    }

    /// Basis of the right null space {x : M x = 0}, one vector per free column
    /// in increasing column order.
    pub fn nullspace(&self, ctx: &FieldContext) -> Vec<Vec<FieldElement>> {
        let mut m = self.clone();
        let pivots = m.rref(ctx);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![FieldElement::ZERO; self.cols];
            v[free] = FieldElement::ONE;
            for (row, &p) in pivots.iter().enumerate() {
                // char 2: -a = a
                v[p] = m.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Incrementally maintained row space with membership tests.
#[derive(Debug, Clone)]
pub struct Span {
    ctx: FieldContext,
    len: usize,
    // reduced rows; each has a leading 1 at `pivots[i]` and zeros at the
    // other rows' pivots
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(ctx: FieldContext, len: usize) -> Self {
        Span {
            ctx,
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [FieldElement]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = v[p];
            if f.is_zero() {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row.iter()) {
                if !r.is_zero() {
                    *x += self.ctx.mul(f, r);
                }
            }
        }
    }

    /// Adds `v` to the span; returns false when it was already a member.
    pub fn insert(&mut self, v: &[FieldElement]) -> Result<bool> {
        if v.len() != self.len {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} in span of length {}",
                v.len(),
                self.len
            )));
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = self.ctx.inv(w[p]).expect("nonzero");
        for x in w.iter_mut().skip(p) {
            *x = self.ctx.mul(*x, inv);
        }
        for row in &mut self.rows {
            let f = row[p];
            if f.is_zero() {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(w.iter()).skip(p) {
                if !r.is_zero() {
                    *x += self.ctx.mul(f, r);
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        Ok(true)
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        if v.len() != self.len {
            return false;
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| x.is_zero())
    }
}

/// Rank of a family of binary vectors packed into u64 words, by elimination
/// over F_2.
#[derive(Debug, Clone, Default)]
pub struct BitSpan {
    rows: Vec<(usize, Vec<u64>)>,
}

impl BitSpan {
    pub fn new() -> Self {
        BitSpan::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u64]) {
        for (p, row) in &self.rows {
            if v[p / 64] >> (p % 64) & 1 == 1 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x ^= r;
                }
            }
        }
    }

    /// Adds the vector; false when already spanned.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(word) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = word * 64 + w[word].trailing_zeros() as usize;
        for (_, row) in &mut self.rows {
            if row[p / 64] >> (p % 64) & 1 == 1 {
                for (x, r) in row.iter_mut().zip(&w) {
                    *x ^= r;
                }
            }
        }
        self.rows.push((p, w));
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }
}
