// SPDX-License-Identifier: Apache-2.0

//! Trace-polynomial graph codes over GF(2^t) and character-sum checks.
//!
//! Vertices are the field elements in canonical order (integers 0..2^t read
//! as polynomial-basis coordinates). The codeword of f has entry
//! Tr(f(x + y)) at (x, y); it only depends on x + y, so one table of
//! g(z) = Tr(f(z)) determines the whole matrix.

use std::collections::BTreeMap;

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{GraphCode, Linearity};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::metric::{clique_number, independence_number};
use crate::words::{GraphWord, MatrixWord};

/// Largest t for full-domain character sums.
pub const MAX_SUM_DEGREE: u32 = 24;

/// Largest d allowed at extension degree t: floor(2^{t/2}), but never
/// below 3 so that the cubic family exists for every t.
pub fn max_design_degree(t: u32) -> usize {
    // floor(sqrt(2^t)) without floating point
    let q = 1u64 << t;
    let mut r = (q as f64).sqrt() as u64;
    while r * r > q {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= q {
        r += 1;
    }
    (r as usize).max(3)
}

/// f(X) = sum_j alpha_j X^j over odd j in [3, d].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracePolynomial {
    ctx: FieldContext,
    d: usize,
    coeffs: BTreeMap<usize, FieldElement>,
}

impl TracePolynomial {
    pub fn new(ctx: FieldContext, d: usize, coeffs: BTreeMap<usize, FieldElement>) -> Result<Self> {
        if d < 3 || d > max_design_degree(ctx.t()) {
            return Err(Error::InvalidParameter(format!(
                "d = {d} outside [3, {}] for t = {}",
                max_design_degree(ctx.t()),
                ctx.t()
            )));
        }
        for (&j, &a) in &coeffs {
            if j % 2 == 0 || j < 3 || j > d {
                return Err(Error::InvalidParameter(format!("exponent {j} is not odd in [3, {d}]")));
            }
            ctx.check(a)?;
        }
        Ok(TracePolynomial {
            ctx,
            d,
            coeffs: coeffs.into_iter().filter(|(_, a)| !a.is_zero()).collect(),
        })
    }

    pub fn monomial(ctx: FieldContext, d: usize, j: usize, alpha: FieldElement) -> Result<Self> {
        Self::new(ctx, d, BTreeMap::from([(j, alpha)]))
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, FieldElement> {
        &self.coeffs
    }

    pub fn eval(&self, z: FieldElement) -> FieldElement {
        self.coeffs.iter().fold(FieldElement::ZERO, |acc, (&j, &a)| {
            acc + self.ctx.mul(a, self.ctx.pow(z, j as u64))
        })
    }

    /// Entry (x, y) of the codeword, from the indices alone.
    pub fn entry(&self, x: usize, y: usize) -> u8 {
        self.ctx.trace(self.eval(FieldElement((x ^ y) as u32))) as u8
    }

    /// Tr(f(z)) for every z in canonical order.
    pub fn trace_table(&self) -> Vec<u8> {
        self.ctx
            .elements()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&z| self.ctx.trace(self.eval(z)) as u8)
            .collect()
    }
}

fn word_from_table(n: usize, g: &[u8]) -> GraphWord {
    let m = MatrixWord::from_bool(n, |x, y| g[x ^ y] == 1);
    GraphWord::new(m).expect("g(0) = 0 and x + y = y + x")
}

pub fn dualbch_codeword(f: &TracePolynomial) -> GraphWord {
    word_from_table(f.ctx.order(), &f.trace_table())
}

/// 2^t x 2^t binary matrix with entry Tr(alpha (x + y)^3).
pub fn warmup_codeword(alpha: FieldElement, ctx: &FieldContext) -> Result<GraphWord> {
    ctx.check(alpha)?;
    let g: Vec<u8> = ctx
        .elements()
        .map(|z| ctx.trace(ctx.mul(alpha, ctx.pow(z, 3))) as u8)
        .collect();
    Ok(word_from_table(ctx.order(), &g))
}

/// The dual-BCH code with its nominal and actual dimension.
#[derive(Debug, Clone)]
pub struct DualBch {
    pub code: GraphCode,
    pub d: usize,
    /// t times the number of odd j in [3, d].
    pub nominal: usize,
    /// (j, i) of each kept basis word M_{X^i Z^j}.
    pub labels: Vec<(usize, u32)>,
}

/// F_2 basis {M_{X^i Z^j}}: j odd in [3, d], X^i the polynomial basis of
/// GF(2^t); dependent words are dropped.
pub fn dualbch_basis(ctx: FieldContext, d: usize) -> Result<DualBch> {
    let mut candidates = Vec::new();
    for j in (3..=d).step_by(2) {
        for i in 0..ctx.t() {
            candidates.push((j, i));
        }
    }
    // validates d
    TracePolynomial::new(ctx, d, BTreeMap::new())?;
    let words: Vec<(usize, u32, MatrixWord)> = candidates
        .par_iter()
        .map(|&(j, i)| {
            let f = TracePolynomial::monomial(ctx, d, j, FieldElement(1 << i))?;
            Ok((j, i, dualbch_codeword(&f).into_matrix()))
        })
        .collect::<Result<_>>()?;
    let n = ctx.order();
    let mut span = crate::linalg::BitSpan::new();
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for (j, i, w) in words {
        let bits = crate::code::binary_coordinates(&FieldContext::binary(), w.entries());
        if span.insert(&bits) {
            basis.push(w);
            labels.push((j, i));
        }
    }
    let code = GraphCode::new(FieldContext::binary(), n, basis, Linearity::Alphabet, false)?;
    Ok(DualBch {
        code,
        d,
        nominal: candidates.len(),
        labels,
    })
}

/// Dense polynomial over GF(2^t), coefficient of X^i at index i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, ctx: &FieldContext, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| ctx.mul(acc, x) + c)
    }
}

/// sum over x in GF(2^t) of (-1)^Tr(p(x)).
pub fn character_sum(p: &Polynomial, ctx: &FieldContext) -> Result<i64> {
    if ctx.t() > MAX_SUM_DEGREE {
        return Err(Error::BudgetExceeded(format!(
            "character sum over 2^{} points",
            ctx.t()
        )));
    }
    let q = ctx.order() as u32;
    Ok((0..q)
        .into_par_iter()
        .with_min_len(1 << 10)
        .map(|x| {
            if !ctx.trace(p.eval(ctx, FieldElement(x))) {
                1i64
            } else {
                -1
            }
        })
        .sum())
}

fn signed_sum_serial(p: &Polynomial, ctx: &FieldContext) -> i64 {
    ctx.elements()
        .map(|x| if !ctx.trace(p.eval(ctx, x)) { 1i64 } else { -1 })
        .sum()
}

/// Replaces every a X^{j 2^s} (j odd, s >= 1) with a^{1/2^s} X^j; the
/// trace of p(x) is unchanged pointwise, so character sums agree.
pub fn frobenius_reduce(p: &Polynomial, ctx: &FieldContext) -> Polynomial {
    let mut out = vec![FieldElement::ZERO; p.coeffs.len()];
    for (e, &a) in p.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        if e == 0 {
            out[0] += a;
            continue;
        }
        let s = e.trailing_zeros();
        let mut root = a;
        for _ in 0..s {
            root = ctx.sqrt(root);
        }
        out[e >> s] += root;
    }
    Polynomial::new(out)
}

/// Result of a Weil-bound check over one class of monic polynomials.
#[derive(Debug, Clone, Serialize)]
pub struct WeilRow {
    pub t: u32,
    pub degree: usize,
    pub method: &'static str,
    /// Polynomials whose sums were evaluated.
    pub polynomials: u64,
    pub max_abs: i64,
    /// (e - 1) 2^{t/2}.
    pub bound: f64,
    pub pass: bool,
}

fn weil_row(ctx: &FieldContext, e: usize, method: &'static str, polynomials: u64, max_abs: i64) -> WeilRow {
    // |S| <= (e - 1) 2^{t/2}  <=>  S^2 <= (e - 1)^2 2^t
    let lhs = (max_abs as i128) * (max_abs as i128);
    let rhs = ((e - 1) * (e - 1)) as i128 * ctx.order() as i128;
    WeilRow {
        t: ctx.t(),
        degree: e,
        method,
        polynomials,
        max_abs,
        bound: (e - 1) as f64 * (ctx.order() as f64).sqrt(),
        pass: lhs <= rhs,
    }
}

fn check_weil_degree(ctx: &FieldContext, e: usize) -> Result<()> {
    if e.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("degree {e} is not odd")));
    }
    if ctx.t() > 12 {
        return Err(Error::BudgetExceeded(format!("Weil enumeration at t = {}", ctx.t())));
    }
    Ok(())
}

// polynomial with monic X^e and the given coefficients on `slots`
fn assemble(e: usize, slots: &[usize], index: u64, t: u32) -> Polynomial {
    let mut c = vec![FieldElement::ZERO; e + 1];
    c[e] = FieldElement::ONE;
    let mask = (1u64 << t) - 1;
    for (k, &s) in slots.iter().enumerate() {
        c[s] = FieldElement((index >> (k as u32 * t) & mask) as u32);
    }
    Polynomial::new(c)
}

fn max_abs_over(ctx: &FieldContext, e: usize, slots: &[usize]) -> (u64, i64) {
    let count = 1u64 << (slots.len() as u32 * ctx.t());
    let m = (0..count)
        .into_par_iter()
        .map(|i| signed_sum_serial(&assemble(e, slots, i, ctx.t()), ctx).abs())
        .max()
        .unwrap_or(0);
    (count, m)
}

/// Covers every monic polynomial of degree e. Frobenius reduction maps
/// X^e + sum_{i<e} c_i X^i onto X^e + sum_{odd j<e} r_j X^j + c_0, each
/// fibre having the same size, and the constant term only flips the sign,
/// so the maximum |sum| is attained on the q^{(e-1)/2} reduced classes.
pub fn weil_exhaustive(ctx: &FieldContext, e: usize) -> Result<WeilRow> {
    check_weil_degree(ctx, e)?;
    let slots: Vec<usize> = (1..e).step_by(2).collect();
    let (count, m) = max_abs_over(ctx, e, &slots);
    Ok(weil_row(ctx, e, "reduced-exhaustive", count, m))
}

/// Literal enumeration of all q^e monic polynomials of degree e, for
/// q^e <= 2^24.
pub fn weil_literal(ctx: &FieldContext, e: usize) -> Result<WeilRow> {
    check_weil_degree(ctx, e)?;
    if ctx.t() as usize * e > 24 {
        return Err(Error::BudgetExceeded(format!("2^{} polynomials", ctx.t() as usize * e)));
    }
    let slots: Vec<usize> = (0..e).collect();
    let (count, m) = max_abs_over(ctx, e, &slots);
    Ok(weil_row(ctx, e, "literal-exhaustive", count, m))
}

/// Uniform random monic polynomials of degree e (ChaCha20, seed_from_u64;
/// one next_u64 per coefficient, masked to t bits, from X^0 upward).
pub fn weil_sampled(ctx: &FieldContext, e: usize, samples: u64, seed: u64) -> Result<WeilRow> {
    check_weil_degree(ctx, e)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mask = (ctx.order() - 1) as u64;
    let polys: Vec<Polynomial> = (0..samples)
        .map(|_| {
            let mut c: Vec<FieldElement> = (0..e).map(|_| FieldElement((rng.next_u64() & mask) as u32)).collect();
            c.push(FieldElement::ONE);
            Polynomial::new(c)
        })
        .collect();
    let m = polys
        .par_iter()
        .map(|p| signed_sum_serial(p, ctx).abs())
        .max()
        .unwrap_or(0);
    Ok(weil_row(ctx, e, "sampled", samples, m))
}

/// Independence and clique number of one nonzero codeword.
#[derive(Debug, Clone, Serialize)]
pub struct RamseyRow {
    pub message: u64,
    pub independence: usize,
    pub clique: usize,
}

/// Exact independence and clique numbers of every nonzero codeword of a
/// binary symmetric code with at most 2^20 codewords.
pub fn ramsey_profile(code: &GraphCode) -> Result<Vec<RamseyRow>> {
    let bits = code.binary_dimension();
    if bits > 20 || !code.ctx().is_binary() {
        return Err(Error::BudgetExceeded(format!("Ramsey profile of 2^{bits} codewords")));
    }
    (1u64..1 << bits)
        .into_par_iter()
        .map(|m| {
            let g = code.graph_word(&[m])?;
            Ok(RamseyRow {
                message: m,
                independence: independence_number(&g)?,
                clique: clique_number(&g)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::graph_distance;
    use rand::Rng;

    #[test]
    fn warmup_over_f4() {
        let f4 = FieldContext::new(2).unwrap();
        let w = warmup_codeword(FieldElement(2), &f4).unwrap();
        assert_eq!(w, GraphWord::complete(4));
        assert_eq!(w.edges().len(), 6);
        assert!(warmup_codeword(FieldElement(1), &f4).unwrap().edges().is_empty());
        assert!(warmup_codeword(FieldElement(0), &f4).unwrap().edges().is_empty());
        let b = dualbch_basis(f4, 3).unwrap();
        assert_eq!((b.nominal, b.code.len()), (2, 1));
    }

    #[test]
    fn monomial_matches_warmup_and_scalar_evaluator() {
        let f16 = FieldContext::new(4).unwrap();
        for a in f16.elements() {
            let f = TracePolynomial::monomial(f16, 3, 3, a).unwrap();
            assert_eq!(dualbch_codeword(&f), warmup_codeword(a, &f16).unwrap());
        }
        assert!(TracePolynomial::new(f16, 4, BTreeMap::from([(3, FieldElement::ONE)])).is_ok());
        assert!(TracePolynomial::new(f16, 4, BTreeMap::from([(5, FieldElement::ONE)])).is_err());
        // t = 4 allows d <= 4; X^3 + X^5 needs t >= 5 under the strict rule
        let f32 = FieldContext::new(5).unwrap();
        let f = TracePolynomial::new(f32, 5, BTreeMap::from([(3, FieldElement::ONE), (5, FieldElement::ONE)])).unwrap();
        let w = dualbch_codeword(&f);
        for x in 0..32u32 {
            for y in 0..32u32 {
                // independent path: expand (x+y)^3 + (x+y)^5 by repeated multiplication
                let z = FieldElement(x ^ y);
                let z2 = f32.mul(z, z);
                let z3 = f32.mul(z2, z);
                let z5 = f32.mul(z3, z2);
                let v = z3 + z5;
                let tr = (0..5)
                    .fold((FieldElement::ZERO, v), |(acc, p), _| (acc + p, f32.mul(p, p)))
                    .0;
                assert_eq!(w.matrix().get(x as usize, y as usize), tr);
            }
        }
    }

    #[test]
    fn basis_ranks() {
        let f32 = FieldContext::new(5).unwrap();
        let b = dualbch_basis(f32, 5).unwrap();
        assert_eq!(b.nominal, 10);
        assert_eq!(b.code.len(), 10);
        assert!(dualbch_basis(f32, 6).is_err());
        assert!(dualbch_basis(f32, 2).is_err());
        let f16 = FieldContext::new(4).unwrap();
        assert_eq!(dualbch_basis(f16, 3).unwrap().code.len(), 4);
    }

    #[test]
    fn character_sum_cases() {
        let f8 = FieldContext::new(3).unwrap();
        for c in f8.elements() {
            let s = character_sum(&Polynomial::new(vec![c]), &f8).unwrap();
            assert_eq!(s, if !f8.trace(c) { 8 } else { -8 });
        }
        for g in f8.elements().skip(1) {
            assert_eq!(
                character_sum(&Polynomial::new(vec![FieldElement::ZERO, g]), &f8).unwrap(),
                0
            );
        }
        let cube = Polynomial::new(vec![
            FieldElement::ZERO,
            FieldElement::ZERO,
            FieldElement::ZERO,
            FieldElement::ONE,
        ]);
        let s = character_sum(&cube, &f8).unwrap();
        assert!(s * s <= 4 * 8);
    }

    #[test]
    fn quadratic_trace_is_balanced_unless_a_is_a_square_of_b() {
        for t in 1..=8 {
            let ctx = FieldContext::new(t).unwrap();
            for a in ctx.elements() {
                for b in ctx.elements() {
                    let p = Polynomial::new(vec![FieldElement::ZERO, b, a]);
                    let s = signed_sum_serial(&p, &ctx);
                    if a != ctx.square(b) {
                        assert_eq!(s, 0);
                    } else {
                        assert_eq!(s, ctx.order() as i64);
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_reduction_preserves_sums() {
        for t in 1..=6 {
            let ctx = FieldContext::new(t).unwrap();
            // every monomial of degree <= 8: trace is additive, so this covers sums of them
            for e in 0..=8usize {
                for a in ctx.elements() {
                    let mut c = vec![FieldElement::ZERO; e + 1];
                    c[e] = a;
                    let p = Polynomial::new(c);
                    let r = frobenius_reduce(&p, &ctx);
                    assert!(r
                        .coeffs
                        .iter()
                        .enumerate()
                        .all(|(j, x)| j == 0 || j % 2 == 1 || x.is_zero()));
                    for x in ctx.elements() {
                        assert_eq!(ctx.trace(p.eval(&ctx, x)), ctx.trace(r.eval(&ctx, x)));
                    }
                }
            }
            let mut rng = ChaCha20Rng::seed_from_u64(t as u64);
            for _ in 0..200 {
                let c: Vec<FieldElement> = (0..=8)
                    .map(|_| FieldElement(rng.gen_range(0..ctx.order() as u32)))
                    .collect();
                let p = Polynomial::new(c);
                assert_eq!(
                    character_sum(&p, &ctx).unwrap(),
                    character_sum(&frobenius_reduce(&p, &ctx), &ctx).unwrap()
                );
            }
        }
    }

    #[test]
    fn reduced_and_literal_weil_agree() {
        let f16 = FieldContext::new(4).unwrap();
        for e in [3, 5] {
            let a = weil_exhaustive(&f16, e).unwrap();
            let b = weil_literal(&f16, e).unwrap();
            assert_eq!(a.max_abs, b.max_abs);
            assert!(a.pass && b.pass);
        }
        assert!(weil_literal(&f16, 7).is_err());
        assert!(weil_exhaustive(&f16, 4).is_err());
    }

    #[test]
    fn ramsey_rows_match_distances() {
        let f16 = FieldContext::new(4).unwrap();
        let b = dualbch_basis(f16, 3).unwrap();
        let rows = ramsey_profile(&b.code).unwrap();
        assert_eq!(rows.len(), 15);
        let empty = GraphWord::empty(FieldContext::binary(), 16);
        for r in &rows {
            let g = b.code.graph_word(&[r.message]).unwrap();
            assert_eq!(graph_distance(&g, &empty).unwrap(), 16 - r.independence);
            assert_eq!(graph_distance(&g, &GraphWord::complete(16)).unwrap(), 16 - r.clique);
        }
    }

    #[test]
    fn design_degree() {
        assert_eq!(max_design_degree(4), 4);
        assert_eq!(max_design_degree(5), 5);
        assert_eq!(max_design_degree(6), 8);
        assert_eq!(max_design_degree(2), 3);
    }
}
