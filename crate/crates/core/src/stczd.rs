// SPDX-License-Identifier: Apache-2.0

//! Symmetric tensor codes with zero diagonal, the strongly explicit
//! Reed-Solomon subcode, and plain tensor product codes.

use rayon::prelude::*;

use crate::code::{GraphCode, Linearity};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::hamming::{certified_distance, systematic_form, LinearCode};
use crate::linalg::Matrix;
use crate::words::MatrixWord;

/// C(k+1, 2) - n, the guaranteed dimension of STCZD(C) for an [n, k] code C
/// (it can be negative, in which case it says nothing).
pub fn stczd_dimension_bound(n: usize, k: usize) -> i64 {
    (k * (k + 1) / 2) as i64 - n as i64
}

/// STCZD(c): all symmetric zero-diagonal n x n matrices whose rows and
/// columns lie in `c`.
///
/// With c systematic, G = [I | A], such matrices are exactly G^T X G for a
/// k x k matrix X with X symmetric, diag(X) = 0 and diag(A^T X A) = 0. The
/// system is solved over all k^2 entries of X and the solution basis is
/// mapped back through the column permutation of the systematic form, so
/// the result is a subcode of the tensor code of `c` as given. The claimed
/// distance is the Hamming distance of `c` whenever it can be certified.
pub fn stczd_basis(c: &LinearCode) -> Result<GraphCode> {
    let ctx = *c.ctx();
    let sys = systematic_form(c)?;
    let (n, k) = (c.n(), c.k());
    let a = sys.redundancy();
    let var = |r: usize, s: usize| r * k + s;

    let mut constraints: Vec<Vec<FieldElement>> = Vec::new();
    for r in 0..k {
        let mut diag = vec![FieldElement::ZERO; k * k];
        diag[var(r, r)] = FieldElement::ONE;
        constraints.push(diag);
        for s in r + 1..k {
            let mut sym = vec![FieldElement::ZERO; k * k];
            sym[var(r, s)] = FieldElement::ONE;
            sym[var(s, r)] = FieldElement::ONE;
            constraints.push(sym);
        }
    }
    // (A^T X A)_{ll} = sum_{r,s} A_{rl} A_{sl} X_{rs}
    for l in 0..n - k {
        let mut row = vec![FieldElement::ZERO; k * k];
        for r in 0..k {
            for s in 0..k {
                let coeff = ctx.mul(a.get(r, l), a.get(s, l));
                row[var(r, s)] += coeff;
            }
        }
        if row.iter().any(|x| !x.is_zero()) {
            constraints.push(row);
        }
    }
    let solutions = Matrix::from_rows(constraints)?.nullspace(&ctx);

    let g = sys.code.generator().clone();
    let gt = g.transpose();
    let basis: Vec<MatrixWord> = solutions
        .par_iter()
        .map(|x| {
            let xm = Matrix::from_rows(x.chunks(k).map(<[FieldElement]>::to_vec).collect())?;
            let m = gt.mul(&xm, &ctx)?.mul(&g, &ctx)?;
            // undo the column permutation on both sides
            let rows: Vec<Vec<FieldElement>> = (0..n).map(|i| sys.unpermute(m.row(i))).collect();
            let mut entries = vec![FieldElement::ZERO; n * n];
            for (i, &pi) in sys.permutation.iter().enumerate() {
                for j in 0..n {
                    entries[pi * n + j] = rows[i][j];
                }
            }
            MatrixWord::from_entries(ctx, n, entries)
        })
        .collect::<Result<_>>()?;

    let code = GraphCode::new(ctx, n, basis, Linearity::Alphabet, false)?;
    Ok(match certified_distance(c) {
        Some(d) => code.with_claimed_distance(d),
        None => code,
    })
}

/// The strongly explicit subcode of STCZD(RS(n, k)): evaluations on the
/// n x n grid of (X - Y)^2 p(X, Y) with p in the symmetric monomial basis
/// X^a Y^b + X^b Y^a (a < b) and X^a Y^a, 0 <= a <= b <= k - 3.
#[derive(Debug, Clone)]
pub struct ExplicitRsSubcode {
    ctx: FieldContext,
    n: usize,
    k: usize,
    pairs: Vec<(usize, usize)>,
}

impl ExplicitRsSubcode {
    pub fn new(n: usize, k: usize, ctx: FieldContext) -> Result<Self> {
        if n > ctx.order() {
            return Err(Error::InvalidParameter(format!(
                "n = {n} exceeds field order {}",
                ctx.order()
            )));
        }
        if k > n {
            return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
        }
        let top = k.saturating_sub(2);
        let pairs = (0..top).flat_map(|a| (a..top).map(move |b| (a, b))).collect();
        Ok(ExplicitRsSubcode { ctx, n, k, pairs })
    }

    /// C(k-1, 2) for k >= 3, zero otherwise.
    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Exponent pair (a, b) of basis word `idx`.
    pub fn pair(&self, idx: usize) -> (usize, usize) {
        self.pairs[idx]
    }

    /// Index of the exponent pair (a, b), a <= b <= k - 3, as a closed form.
    pub fn index_of(&self, a: usize, b: usize) -> usize {
        let top = self.k - 2;
        a * top - a * a.saturating_sub(1) / 2 + (b - a)
    }

    /// Entry (i, j) of basis word `idx`, from the indices alone.
    pub fn entry(&self, idx: usize, i: usize, j: usize) -> FieldElement {
        let ctx = &self.ctx;
        let (a, b) = self.pairs[idx];
        let x = FieldElement(i as u32);
        let y = FieldElement(j as u32);
        let p = if a == b {
            ctx.mul(ctx.pow(x, a as u64), ctx.pow(y, a as u64))
        } else {
            ctx.mul(ctx.pow(x, a as u64), ctx.pow(y, b as u64)) + ctx.mul(ctx.pow(x, b as u64), ctx.pow(y, a as u64))
        };
        ctx.mul(ctx.square(x + y), p)
    }

    pub fn word(&self, idx: usize) -> MatrixWord {
        MatrixWord::from_fn(self.ctx, self.n, |i, j| self.entry(idx, i, j))
    }

    pub fn to_code(&self) -> Result<GraphCode> {
        let basis = (0..self.dim()).into_par_iter().map(|idx| self.word(idx)).collect();
        let code = GraphCode::new(self.ctx, self.n, basis, Linearity::Alphabet, false)?;
        Ok(code.with_claimed_distance(self.n + 1 - self.k))
    }
}

pub fn stczd_rs_explicit(n: usize, k: usize, ctx: FieldContext) -> Result<GraphCode> {
    ExplicitRsSubcode::new(n, k, ctx)?.to_code()
}

/// TC(c): the span of g_i^T g_j over generator rows, ordered (i, j). This
/// is every matrix whose rows and columns all lie in `c`.
pub fn tensor_code(c: &LinearCode) -> Result<GraphCode> {
    let ctx = *c.ctx();
    let (n, k) = (c.n(), c.k());
    let g = c.generator();
    let basis = (0..k * k)
        .into_par_iter()
        .map(|idx| {
            let (r, s) = (idx / k, idx % k);
            MatrixWord::from_fn(ctx, n, |i, j| ctx.mul(g.get(r, i), g.get(s, j)))
        })
        .collect();
    let code = GraphCode::new(ctx, n, basis, Linearity::Alphabet, true)?;
    Ok(match certified_distance(c) {
        Some(d) => code.with_claimed_distance(d),
        None => code,
    })
}

/// Whether every row and every column of `word` is a codeword of `c`.
pub fn rows_and_columns_in(c: &LinearCode, word: &MatrixWord) -> bool {
    let n = word.n();
    if n != c.n() || word.ctx() != c.ctx() {
        return false;
    }
    let t = word.transpose();
    (0..n).all(|i| c.contains(&word.entries()[i * n..(i + 1) * n]) && c.contains(&t.entries()[i * n..(i + 1) * n]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamming::rs_generate;
    use crate::metric::code_distance;
    use crate::report::{DistanceOptions, Metric};
    use crate::words::GraphWord;

    fn f2_code(rows: &[&[u32]]) -> LinearCode {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| FieldElement(x)).collect())
            .collect();
        LinearCode::new(FieldContext::binary(), Matrix::from_rows(rows).unwrap()).unwrap()
    }

    // all symmetric zero-diagonal binary n x n matrices with every row in c
    fn brute_stczd(c: &LinearCode) -> Vec<MatrixWord> {
        let n = c.n();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        (0u32..1 << pairs.len())
            .map(|m| {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| m >> b & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                GraphWord::from_edges(n, &edges).unwrap().into_matrix()
            })
            .filter(|w| rows_and_columns_in(c, w))
            .collect()
    }

    #[test]
    fn small_binary_cases() {
        let even = f2_code(&[&[1, 1, 0], &[0, 1, 1]]);
        let s = stczd_basis(&even).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.basis()[0], GraphWord::complete(3).into_matrix());
        assert_eq!(brute_stczd(&even).len(), 2);

        let rep = f2_code(&[&[1, 1, 1]]);
        assert_eq!(stczd_basis(&rep).unwrap().len(), 0);
        assert_eq!(brute_stczd(&rep).len(), 1);

        let parity4 = f2_code(&[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let s = stczd_basis(&parity4).unwrap();
        assert_eq!(1 << s.len(), brute_stczd(&parity4).len());
    }

    #[test]
    fn dimension_is_k_choose_2_in_characteristic_two() {
        for t in 2..=4 {
            let ctx = FieldContext::new(t).unwrap();
            for n in [ctx.order() - 1, ctx.order()] {
                for k in 1..=n.min(6) {
                    let rs = rs_generate(n, k, ctx).unwrap();
                    let s = stczd_basis(&rs).unwrap();
                    assert_eq!(s.len(), k * (k - 1) / 2, "RS({n},{k}) over 2^{t}");
                    assert!(s.len() as i64 >= stczd_dimension_bound(n, k));
                    for w in s.basis() {
                        assert!(w.is_symmetric() && w.has_zero_diagonal());
                        assert!(rows_and_columns_in(&rs, w));
                    }
                }
            }
        }
    }

    #[test]
    fn permutation_is_undone() {
        // pivots are not the leading columns here
        let c = f2_code(&[&[0, 1, 1, 0, 1], &[0, 0, 1, 1, 1], &[1, 1, 0, 0, 0]]);
        let s = stczd_basis(&c).unwrap();
        for w in s.basis() {
            assert!(rows_and_columns_in(&c, w));
        }
        assert_eq!(1 << s.len(), brute_stczd(&c).len());
    }

    #[test]
    fn explicit_subcode() {
        let f4 = FieldContext::new(2).unwrap();
        let e = stczd_rs_explicit(4, 3, f4).unwrap();
        assert_eq!(e.len(), 1);
        let expect = MatrixWord::from_fn(f4, 4, |i, j| f4.square(FieldElement(i as u32) + FieldElement(j as u32)));
        assert_eq!(e.basis()[0], expect);
        assert_eq!(stczd_rs_explicit(4, 2, f4).unwrap().len(), 0);

        let f8 = FieldContext::new(3).unwrap();
        let e = stczd_rs_explicit(8, 5, f8).unwrap();
        assert_eq!(e.len(), 6);
        let rs = rs_generate(8, 5, f8).unwrap();
        for w in e.basis() {
            assert!(rows_and_columns_in(&rs, w));
        }
        let sub = ExplicitRsSubcode::new(8, 5, f8).unwrap();
        for idx in 0..sub.dim() {
            let (a, b) = sub.pair(idx);
            assert_eq!(sub.index_of(a, b), idx);
        }
    }

    #[test]
    fn tensor_codes() {
        let rep = f2_code(&[&[1, 1, 1]]);
        let tc = tensor_code(&rep).unwrap();
        assert_eq!(tc.len(), 1);
        assert!(tc.basis()[0].entries().iter().all(|&x| x == FieldElement::ONE));

        let f4 = FieldContext::new(2).unwrap();
        let rs = rs_generate(4, 2, f4).unwrap();
        let tc = tensor_code(&rs).unwrap();
        assert_eq!(tc.len(), 4);
        let r = code_distance(&tc, Metric::Directed, &DistanceOptions::default()).unwrap();
        assert_eq!(r.value(), Some(3));
        // u^T v is a member
        let u = rs.encode(&[FieldElement(1), FieldElement(2)]).unwrap();
        let v = rs.encode(&[FieldElement(3), FieldElement(1)]).unwrap();
        let uv = MatrixWord::from_fn(f4, 4, |i, j| f4.mul(u[i], v[j]));
        assert!(tc.contains(&uv));
        assert!(rows_and_columns_in(&rs, &uv));
    }

    #[test]
    fn stczd_directed_distance_matches_base() {
        let f8 = FieldContext::new(3).unwrap();
        let rs = rs_generate(5, 3, f8).unwrap();
        let s = stczd_basis(&rs).unwrap();
        let opts = DistanceOptions::default();
        let d = code_distance(&s, Metric::Directed, &opts).unwrap();
        assert_eq!(d.value(), Some(3));
        let u = code_distance(&s, Metric::Undirected, &opts).unwrap();
        assert!(u.value().unwrap() >= 3);
        assert_eq!(s.claimed_distance(), Some(3));
    }
}
