// SPDX-License-Identifier: Apache-2.0

//! Symmetric concatenation and the composite families built from it.
//!
//! An outer symbol s in GF(2^T) is identified with its polynomial-basis
//! coordinates (s_0, ..., s_{T-1}) and encoded as sum_b s_b W_b, where W_b is
//! the b-th vector of the inner code's F_2 basis. Block (I, J) of a
//! composite word encodes the outer entry at (I, J) when I <= J and holds the
//! transpose of that encoding when I > J. The result is F_2-linear, its F_2
//! basis is the image of the outer F_2 basis, and its directed distance is at
//! least the product of the component directed distances.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::code::{GraphCode, Linearity};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::hamming::{rs_generate, wozencraft_code};
use crate::metric::code_distance;
use crate::random_codes::{binary_entropy_inverse, search_opt_directed, DEFAULT_RETRIES};
use crate::rational::{self, Rational};
use crate::report::{DistanceOptions, Metric};
use crate::stczd::{stczd_basis, stczd_rs_explicit, tensor_code};
use crate::words::MatrixWord;

/// F_2-linear injection of GF(2^T) symbols into an inner matrix code.
#[derive(Debug, Clone)]
pub struct InnerEncoder {
    symbol_bits: usize,
    ctx: FieldContext,
    n: usize,
    words: Vec<MatrixWord>,
    distance: Option<usize>,
}

impl InnerEncoder {
    /// Uses the first `symbols.t()` vectors of the inner F_2 basis.
    pub fn new(symbols: &FieldContext, inner: &GraphCode) -> Result<Self> {
        let bits = symbols.t() as usize;
        if inner.binary_dimension() < bits {
            return Err(Error::InvalidParameter(format!(
                "inner code has {} bits, outer symbols need {bits}",
                inner.binary_dimension()
            )));
        }
        let words = inner
            .binary_basis()
            .into_iter()
            .take(bits)
            .map(|e| MatrixWord::from_entries(*inner.ctx(), inner.n(), e))
            .collect::<Result<_>>()?;
        Ok(InnerEncoder {
            symbol_bits: bits,
            ctx: *inner.ctx(),
            n: inner.n(),
            words,
            distance: inner.claimed_distance(),
        })
    }

    pub fn symbol_bits(&self) -> usize {
        self.symbol_bits
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    /// Images of the unit symbols X^b; these fix the linear map.
    pub fn embedding(&self) -> &[MatrixWord] {
        &self.words
    }

    /// Certified directed distance of the inner code, if known.
    pub fn distance(&self) -> Option<usize> {
        self.distance
    }

    pub fn encode(&self, s: FieldElement) -> MatrixWord {
        let mut out = vec![FieldElement::ZERO; self.n * self.n];
        for (b, w) in self.words.iter().enumerate() {
            if s.0 >> b & 1 == 1 {
                for (o, &x) in out.iter_mut().zip(w.entries()) {
                    *o += x;
                }
            }
        }
        MatrixWord::from_entries(self.ctx, self.n, out).expect("sum of inner words")
    }
}

/// One outer word concatenated with the encoder chosen by `select(I, J)`
/// for I <= J.
pub fn concatenate_word<'a, F>(outer: &MatrixWord, select: &F) -> Result<MatrixWord>
where
    F: Fn(usize, usize) -> &'a InnerEncoder,
{
    let big_n = outer.n();
    let first = select(0, big_n.saturating_sub(1));
    let (n, ctx) = (first.n, first.ctx);
    let side = n * big_n;
    let mut entries = vec![FieldElement::ZERO; side * side];
    for bi in 0..big_n {
        for bj in bi..big_n {
            let s = outer.get(bi, bj);
            if s.is_zero() {
                continue;
            }
            let enc = select(bi, bj);
            if enc.n != n || enc.ctx != ctx {
                return Err(Error::ShapeMismatch("inner encoders disagree on side or field".into()));
            }
            if s.0 >> enc.symbol_bits != 0 {
                return Err(Error::ContextMismatch(format!(
                    "outer symbol {s} wider than {} bits",
                    enc.symbol_bits
                )));
            }
            let block = enc.encode(s);
            for i in 0..n {
                for j in 0..n {
                    let v = block.get(i, j);
                    entries[(bi * n + i) * side + bj * n + j] = v;
                    if bi != bj {
                        entries[(bj * n + j) * side + bi * n + i] = v;
                    }
                }
            }
        }
    }
    MatrixWord::from_entries(ctx, side, entries)
}

/// C_in o C_out with the encoder for block (I, J), I <= J, chosen by
/// `select`. The outer code must be symmetric with zero diagonal; the
/// claimed distance is D * min d_in over the encoders used off the
/// diagonal, when all of them are certified.
pub fn symmetric_concatenate_with<'a, F>(outer: &GraphCode, select: F) -> Result<GraphCode>
where
    F: Fn(usize, usize) -> &'a InnerEncoder + Sync,
{
    if !outer.symmetric_zero_diag() {
        return Err(Error::InvalidParameter(
            "outer code must be symmetric with zero diagonal".into(),
        ));
    }
    let big_n = outer.n();
    let bits = outer.ctx().t() as usize;
    let mut inner_distance: Option<usize> = None;
    let mut certified = true;
    let mut shape: Option<(usize, FieldContext)> = None;
    for bi in 0..big_n {
        for bj in bi + 1..big_n {
            let e = select(bi, bj);
            if e.symbol_bits != bits {
                return Err(Error::ContextMismatch(format!(
                    "inner encoder takes {}-bit symbols, outer alphabet has {bits}",
                    e.symbol_bits
                )));
            }
            match shape {
                None => shape = Some((e.n, e.ctx)),
                Some(s) if s != (e.n, e.ctx) => {
                    return Err(Error::ShapeMismatch("inner encoders disagree on side or field".into()))
                }
                _ => {}
            }
            match e.distance {
                Some(d) => inner_distance = Some(inner_distance.map_or(d, |m: usize| m.min(d))),
                None => certified = false,
            }
        }
    }
    let Some((n, ctx)) = shape else {
        return Err(Error::InvalidParameter("outer side must be at least 2".into()));
    };
    let basis: Vec<MatrixWord> = outer
        .binary_basis()
        .into_par_iter()
        .map(|e| concatenate_word(&MatrixWord::from_entries(*outer.ctx(), big_n, e)?, &select))
        .collect::<Result<_>>()?;
    let code = GraphCode::new(ctx, n * big_n, basis, Linearity::Binary, false)?;
    Ok(match (outer.claimed_distance(), inner_distance, certified) {
        (Some(big_d), Some(d), true) => code.with_claimed_distance(big_d * d),
        _ => code,
    })
}

pub fn symmetric_concatenate(outer: &GraphCode, inner: &InnerEncoder) -> Result<GraphCode> {
    symmetric_concatenate_with(outer, |_, _| inner)
}

/// One component of a composite code, as recorded in descriptors.
#[derive(Debug, Clone, Serialize)]
pub struct Layer {
    pub family: String,
    pub params: Value,
    pub n: usize,
    pub field: String,
    pub dimension_bits: usize,
    /// Certified directed distance of the component.
    pub directed_distance: Option<usize>,
    pub seed: Option<u64>,
    /// Images of the unit outer symbols, in matrix-word text format. Empty
    /// for the outermost layer.
    pub embedding: Vec<String>,
}

impl Layer {
    fn of(family: &str, params: Value, code: &GraphCode, seed: Option<u64>, enc: Option<&InnerEncoder>) -> Self {
        Layer {
            family: family.into(),
            params,
            n: code.n(),
            field: code.ctx().to_string(),
            dimension_bits: code.binary_dimension(),
            directed_distance: code.claimed_distance(),
            seed,
            embedding: enc.map_or_else(Vec::new, |e| e.embedding().iter().map(MatrixWord::to_text).collect()),
        }
    }
}

/// A composite code together with its layer chain, outermost first.
#[derive(Debug, Clone)]
pub struct Composite {
    pub code: GraphCode,
    pub layers: Vec<Layer>,
}

fn outer_dimension(rho: Rational, n: usize) -> Result<usize> {
    if rho <= Rational::from_integer(0) || rho >= Rational::from_integer(1) {
        return Err(Error::InvalidParameter(format!("rho = {rho} outside (0, 1)")));
    }
    Ok(rational::floor(rho * Rational::from_integer(n as i64)) as usize)
}

/// Opt(eps, n, k) o STCZD(RS(N, floor(rho N), 2^k)).
pub fn concat_rs(
    eps: Rational,
    n: usize,
    k: usize,
    big_n: usize,
    rho: Rational,
    seed: u64,
    opts: &DistanceOptions,
) -> Result<Composite> {
    let big_q = FieldContext::new(k as u32)?;
    if big_n > big_q.order() {
        return Err(Error::InvalidParameter(format!(
            "N = {big_n} exceeds Q = {}",
            big_q.order()
        )));
    }
    let big_k = outer_dimension(rho, big_n)?;
    if big_k < 2 {
        return Err(Error::InvalidParameter(format!(
            "outer RS({big_n}, {big_k}) has a zero-dimensional STCZD"
        )));
    }
    let rs = rs_generate(big_n, big_k, big_q)?;
    let outer = stczd_basis(&rs)?;
    let inner = search_opt_directed(eps, n, k, seed, DEFAULT_RETRIES, opts)?;
    let enc = InnerEncoder::new(&big_q, &inner.code)?;
    let code = symmetric_concatenate(&outer, &enc)?;
    let layers = vec![
        Layer::of(
            "stczd-rs",
            json!({"N": big_n, "k": big_k, "q": big_q.to_string()}),
            &outer,
            None,
            None,
        ),
        Layer::of(
            "opt",
            json!({"eps": eps.to_string(), "n": n, "k": k, "attempts": inner.attempts}),
            &inner.code,
            Some(seed),
            Some(&enc),
        ),
    ];
    Ok(Composite { code, layers })
}

/// Layer sizes (N1, N2, N3) of the triple concatenation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleSizes {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

fn log2(n: usize) -> usize {
    n.trailing_zeros() as usize
}

// smallest power of two m with floor(rho m)^2 log2(m) >= bits
fn tensor_layer_size(rho: Rational, bits: usize) -> Option<usize> {
    (1..=16).map(|e| 1usize << e).find(|&m| {
        let k = rational::floor(rho * Rational::from_integer(m as i64)) as usize;
        k >= 1 && k * k * log2(m) >= bits
    })
}

/// N1, N2 are the smallest powers of two with floor(rho N_i)^2 log2 N_i at
/// least log2 of the previous alphabet; N3 is the smallest integer with
/// rho^2 N3^2 - 2 N3 > log2 N2, strict, as the inner search requires k < eps^2 n^2 - 2n.
pub fn triple_sizes(rho: Rational, big_n: usize) -> Result<TripleSizes> {
    let fail = |layer: &str| Error::InvalidParameter(format!("triple concatenation infeasible at the {layer} layer"));
    let n1 = tensor_layer_size(rho, log2(big_n)).ok_or_else(|| fail("first tensor"))?;
    let n2 = tensor_layer_size(rho, log2(n1)).ok_or_else(|| fail("second tensor"))?;
    let bits = Rational::from_integer(log2(n2) as i64);
    let n3 = (1..=64usize)
        .find(|&m| {
            let m = Rational::from_integer(m as i64);
            rho * rho * m * m - m * Rational::from_integer(2) > bits
        })
        .ok_or_else(|| fail("inner"))?;
    Ok(TripleSizes { n1, n2, n3 })
}

/// Opt(N3, rho) o TC(RS(N2, rho)) o TC(RS(N1, rho)) o S, with S the
/// explicit subcode of STCZD(RS(N, floor(rho N), N)) and N a power of two.
pub fn triple_concat(rho: Rational, big_n: usize, seed: u64, opts: &DistanceOptions) -> Result<Composite> {
    if big_n < 2 || !big_n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "N = {big_n} is not a power of two >= 2"
        )));
    }
    let k0 = outer_dimension(rho, big_n)?;
    if k0 < 3 {
        return Err(Error::InvalidParameter(format!(
            "triple concatenation infeasible at the outer layer: RS({big_n}, {k0}) has no explicit subcode"
        )));
    }
    let sizes = triple_sizes(rho, big_n)?;
    let f0 = FieldContext::new(log2(big_n) as u32)?;
    let outer = stczd_rs_explicit(big_n, k0, f0)?;
    let mut layers = vec![Layer::of(
        "stczd-rs-explicit",
        json!({"N": big_n, "k": k0}),
        &outer,
        None,
        None,
    )];

    let mut code = outer;
    for (i, m) in [sizes.n1, sizes.n2].into_iter().enumerate() {
        let field = FieldContext::new(log2(m) as u32)?;
        let km = outer_dimension(rho, m)?;
        let tc = tensor_code(&rs_generate(m, km, field)?)?;
        let enc = InnerEncoder::new(code.ctx(), &tc)?;
        code = symmetric_concatenate(&code, &enc)?;
        layers.push(Layer::of(
            if i == 0 { "tc-rs-1" } else { "tc-rs-2" },
            json!({"N": m, "k": km}),
            &tc,
            None,
            Some(&enc),
        ));
    }
    let inner = search_opt_directed(rho, sizes.n3, log2(sizes.n2), seed, DEFAULT_RETRIES, opts)?;
    let enc = InnerEncoder::new(code.ctx(), &inner.code)?;
    code = symmetric_concatenate(&code, &enc)?;
    layers.push(Layer::of(
        "opt",
        json!({"eps": rho.to_string(), "n": sizes.n3, "k": log2(sizes.n2), "attempts": inner.attempts}),
        &inner.code,
        Some(seed),
        Some(&enc),
    ));
    Ok(Composite { code, layers })
}

/// Directed distance and rank of one modified Wozencraft code D^(I).
#[derive(Debug, Clone, Serialize)]
pub struct InnerRow {
    pub index: u32,
    pub rank: usize,
    pub directed_distance: usize,
    pub good: bool,
}

#[derive(Debug, Clone)]
pub struct Justesen {
    pub composite: Composite,
    pub encoders: Vec<InnerEncoder>,
    pub table: Vec<InnerRow>,
    /// H^{-1}(1/2 - eps) * 2k, the distance a good inner code reaches.
    pub threshold: f64,
    pub good_fraction: f64,
}

/// 1-based index of the inner code used at block (I, J) (0-based blocks).
pub fn justesen_index(bi: usize, bj: usize) -> usize {
    bi.min(bj) + 1
}

/// Outer STCZD(RS(2^k - 1, floor(rho N), 2^k)); block (I, J) uses
/// D^(min(I, J)) = STCZD(Wozencraft(k, min(I, J))) (its first k F_2 basis
/// words), transposed below the diagonal.
pub fn justesen_like(eps: Rational, k: u32, rho: Rational) -> Result<Justesen> {
    if eps <= Rational::from_integer(0) || eps >= Rational::from_integer(1) {
        return Err(Error::InvalidParameter(format!("eps = {eps} outside (0, 1)")));
    }
    if !(3..=6).contains(&k) {
        return Err(Error::InvalidParameter(format!("k = {k} outside 3..=6")));
    }
    let big_q = FieldContext::new(k)?;
    let big_n = big_q.order() - 1;
    let big_k = outer_dimension(rho, big_n)?;
    if big_k < 2 {
        return Err(Error::InvalidParameter(format!(
            "outer RS({big_n}, {big_k}) has a zero-dimensional STCZD"
        )));
    }
    let outer = stczd_basis(&rs_generate(big_n, big_k, big_q)?)?;

    let threshold = binary_entropy_inverse(0.5 - rational::to_f64(eps))? * 2.0 * k as f64;
    let inner: Vec<(GraphCode, usize)> = (1..=big_n as u32)
        .into_par_iter()
        .map(|i| {
            let d_i = stczd_basis(&wozencraft_code(k, FieldElement(i))?)?;
            let r = code_distance(&d_i, Metric::Directed, &DistanceOptions::default())?;
            Ok((d_i, r.value().expect("exact")))
        })
        .collect::<Result<_>>()?;
    let table: Vec<InnerRow> = inner
        .iter()
        .enumerate()
        .map(|(i, (c, d))| InnerRow {
            index: i as u32 + 1,
            rank: c.rank(),
            directed_distance: *d,
            good: *d as f64 >= threshold,
        })
        .collect();
    let good_fraction = table.iter().filter(|r| r.good).count() as f64 / big_n as f64;
    let encoders: Vec<InnerEncoder> = inner
        .iter()
        .map(|(c, d)| InnerEncoder::new(&big_q, &c.clone().with_claimed_distance(*d)))
        .collect::<Result<_>>()?;
    let code = symmetric_concatenate_with(&outer, |bi, bj| &encoders[justesen_index(bi, bj) - 1])?;
    let layers = vec![
        Layer::of(
            "stczd-rs",
            json!({"N": big_n, "k": big_k, "q": big_q.to_string()}),
            &outer,
            None,
            None,
        ),
        Layer::of(
            "wozencraft-stczd",
            json!({"k": k, "codes": big_n}),
            &inner[0].0,
            None,
            Some(&encoders[0]),
        ),
    ];
    Ok(Justesen {
        composite: Composite { code, layers },
        encoders,
        table,
        threshold,
        good_fraction,
    })
}

/// Block (I, J) of side `n` of a composite word.
pub fn block(word: &MatrixWord, n: usize, bi: usize, bj: usize) -> MatrixWord {
    MatrixWord::from_fn(*word.ctx(), n, |i, j| word.get(bi * n + i, bj * n + j))
}

/// The certified outer directed distance of an RS-based STCZD layer.
pub fn rs_outer_distance(big_n: usize, big_k: usize) -> usize {
    big_n - big_k + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamming::LinearCode;
    use crate::linalg::Matrix;

    fn f4() -> FieldContext {
        FieldContext::new(2).unwrap()
    }

    // directed 2 x 2 inner code over F_2 with 2 bits: w0 = I, w1 = antidiagonal
    fn toy_inner() -> GraphCode {
        let b = FieldContext::binary();
        let w0 = MatrixWord::from_bool(2, |i, j| i == j);
        let w1 = MatrixWord::from_bool(2, |i, j| i != j);
        GraphCode::new(b, 2, vec![w0, w1], Linearity::Alphabet, true)
            .unwrap()
            .with_claimed_distance(1)
    }

    #[test]
    fn two_by_two_outer_word() {
        let enc = InnerEncoder::new(&f4(), &toy_inner()).unwrap();
        let s = FieldElement(3);
        let mut outer = MatrixWord::zeros(f4(), 2);
        outer.set(0, 1, s);
        outer.set(1, 0, s);
        let w = concatenate_word(&outer, &|_, _| &enc).unwrap();
        let e = enc.encode(s);
        assert_eq!(block(&w, 2, 0, 1), e);
        assert_eq!(block(&w, 2, 1, 0), e.transpose());
        assert!(block(&w, 2, 0, 0).is_zero() && block(&w, 2, 1, 1).is_zero());
        assert!(w.is_symmetric() && w.has_zero_diagonal());
        assert!(concatenate_word(&MatrixWord::zeros(f4(), 2), &|_, _| &enc)
            .unwrap()
            .is_zero());
        assert!(enc.encode(FieldElement::ZERO).is_zero());
    }

    #[test]
    fn composite_of_small_codes() {
        let rs = rs_generate(3, 2, f4()).unwrap();
        let outer = stczd_basis(&rs).unwrap();
        assert_eq!(outer.len(), 1);
        let enc = InnerEncoder::new(&f4(), &toy_inner()).unwrap();
        let c = symmetric_concatenate(&outer, &enc).unwrap();
        assert_eq!(c.binary_dimension(), 2);
        assert_eq!(c.n(), 6);
        assert_eq!(c.claimed_distance(), Some(2));
        let r = code_distance(&c, Metric::Directed, &DistanceOptions::default()).unwrap();
        assert!(r.value().unwrap() >= 2);
        for w in c.basis() {
            assert!(w.is_symmetric() && w.has_zero_diagonal());
        }
    }

    #[test]
    fn mismatched_alphabet_is_rejected() {
        let f8 = FieldContext::new(3).unwrap();
        let outer = stczd_basis(&rs_generate(4, 3, f8).unwrap()).unwrap();
        let enc = InnerEncoder::new(&f4(), &toy_inner()).unwrap();
        assert!(symmetric_concatenate(&outer, &enc).is_err());
        assert!(InnerEncoder::new(&f8, &toy_inner()).is_err());
        let rep = LinearCode::new(
            FieldContext::binary(),
            Matrix::from_rows(vec![vec![FieldElement::ONE; 3]]).unwrap(),
        )
        .unwrap();
        let directed = tensor_code(&rep).unwrap();
        assert!(symmetric_concatenate(&directed, &enc).is_err());
    }

    #[test]
    fn triple_sizing() {
        let half = Rational::new(1, 2);
        assert_eq!(triple_sizes(half, 8).unwrap(), TripleSizes { n1: 4, n2: 4, n3: 9 });
        assert!(triple_concat(half, 4, 0, &DistanceOptions::default()).is_err());
        assert!(triple_concat(half, 6, 0, &DistanceOptions::default()).is_err());
    }

    #[test]
    fn justesen_arrangement() {
        let j = justesen_like(Rational::new(1, 10), 3, Rational::new(1, 2)).unwrap();
        assert_eq!(j.table.len(), 7);
        let c = &j.composite.code;
        assert_eq!(c.n(), 7 * 6);
        let outer = stczd_basis(&rs_generate(7, 3, FieldContext::new(3).unwrap()).unwrap()).unwrap();
        let ow = outer.codeword(&[0b101]);
        let w = c.codeword(&[0b101]);
        for bi in 0..7 {
            for bj in 0..7 {
                let enc = &j.encoders[justesen_index(bi, bj) - 1];
                let e = enc.encode(ow.get(bi, bj));
                let got = block(&w, 6, bi, bj);
                if bi <= bj {
                    assert_eq!(got, e);
                } else {
                    assert_eq!(got, block(&w, 6, bj, bi).transpose());
                }
            }
        }
    }
}
