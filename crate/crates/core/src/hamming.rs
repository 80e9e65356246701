// SPDX-License-Identifier: Apache-2.0

//! Hamming-metric linear codes used as building blocks: Reed-Solomon codes,
//! systematic forms, exact minimum distance and the Wozencraft ensemble.

use std::fmt::Write as _;

use crate::enumerate::{exhaustive_min, sampled_min};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::linalg::{Matrix, Span};
use crate::report::{Certification, DistanceOptions, DistanceReport, Metric, Mode, Witness};

/// A linear [n, k] code over GF(2^t) given by a full-rank k x n generator.
#[derive(Debug, Clone)]
pub struct LinearCode {
    ctx: FieldContext,
    generator: Matrix,
    eval_points: Option<Vec<FieldElement>>,
    span: Span,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.generator == other.generator && self.eval_points == other.eval_points
    }
}

impl LinearCode {
    pub fn new(ctx: FieldContext, generator: Matrix) -> Result<Self> {
        if generator.rows() == 0 {
            return Err(Error::InvalidParameter("generator has no rows".into()));
        }
        for r in 0..generator.rows() {
            for &x in generator.row(r) {
                ctx.check(x)?;
            }
        }
        let mut span = Span::new(ctx, generator.cols());
        for r in 0..generator.rows() {
            span.insert(generator.row(r))?;
        }
        if span.dim() != generator.rows() {
            return Err(Error::RankDeficient {
                rank: span.dim(),
                expected: generator.rows(),
            });
        }
        Ok(LinearCode {
            ctx,
            generator,
            eval_points: None,
            span,
        })
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    /// Block length.
    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    /// Dimension.
    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn eval_points(&self) -> Option<&[FieldElement]> {
        self.eval_points.as_deref()
    }

    /// Encodes a length-k message as a row vector times the generator.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if message.len() != self.k() {
            return Err(Error::ShapeMismatch(format!(
                "message of length {} for dimension {}",
                message.len(),
                self.k()
            )));
        }
        let mut out = vec![FieldElement::ZERO; self.n()];
        for (r, &m) in message.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.generator.row(r)) {
                *o += self.ctx.mul(m, g);
            }
        }
        Ok(out)
    }

    pub fn contains(&self, word: &[FieldElement]) -> bool {
        self.span.contains(word)
    }

    /// F_2-basis of the code: row r scaled by X^j for j < t, ordered (r, j).
    pub fn binary_basis(&self) -> Vec<Vec<FieldElement>> {
        let t = self.ctx.t();
        let mut out = Vec::with_capacity(self.k() * t as usize);
        for r in 0..self.k() {
            for j in 0..t {
                let s = FieldElement(1 << j);
                out.push(self.generator.row(r).iter().map(|&g| self.ctx.mul(s, g)).collect());
            }
        }
        out
    }

    /// Generator matrix text format: header `q=<hex-modulus> n=<n> k=<k>`
    /// followed by k lines of n space-separated hex symbols.
    pub fn to_text(&self) -> String {
        let mut s = format!("q={:x} n={} k={}\n", self.ctx.modulus(), self.n(), self.k());
        for r in 0..self.k() {
            let line: Vec<String> = self.generator.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(s, "{}", line.join(" ")).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty generator file".into()))?;
        let mut modulus = None;
        let mut n = None;
        let mut k = None;
        for field in header.split(' ') {
            let (key, val) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header field {field:?}")))?;
            match key {
                "q" => {
                    modulus =
                        Some(u32::from_str_radix(val, 16).map_err(|_| Error::Parse(format!("bad modulus {val:?}")))?)
                }
                "n" => n = val.parse::<usize>().ok(),
                "k" => k = val.parse::<usize>().ok(),
                _ => return Err(Error::Parse(format!("unknown header key {key:?}"))),
            }
        }
        let (Some(modulus), Some(n), Some(k)) = (modulus, n, k) else {
            return Err(Error::Parse(format!("incomplete header {header:?}")));
        };
        let ctx = FieldContext::from_modulus(modulus)?;
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse("missing generator row".into()))?;
            let row: Vec<FieldElement> = line.split(' ').map(|s| ctx.parse_element(s)).collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::Parse(format!("row of length {} for n={n}", row.len())));
            }
            rows.push(row);
        }
        LinearCode::new(ctx, Matrix::from_rows(rows)?)
    }
}

/// Reed-Solomon code RS(n, k) over `ctx`: row i evaluates X^i on the field
/// elements 0, 1, ..., n-1 in canonical order.
pub fn rs_generate(n: usize, k: usize, ctx: FieldContext) -> Result<LinearCode> {
    if n > ctx.order() {
        return Err(Error::InvalidParameter(format!(
            "RS length {n} exceeds field order {}",
            ctx.order()
        )));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "RS needs 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let points: Vec<FieldElement> = (0..n as u32).map(FieldElement).collect();
    let rows: Vec<Vec<FieldElement>> = (0..k)
        .map(|i| points.iter().map(|&x| ctx.pow(x, i as u64)).collect())
        .collect();
    let mut code = LinearCode::new(ctx, Matrix::from_rows(rows)?)?;
    code.eval_points = Some(points);
    Ok(code)
}

/// Systematic generator [I | A] together with the column permutation that
/// produced it: column j of `code` is column `permutation[j]` of the input.
#[derive(Debug, Clone)]
pub struct SystematicForm {
    pub code: LinearCode,
    pub permutation: Vec<usize>,
}

impl SystematicForm {
    /// The k x (n-k) block A.
    pub fn redundancy(&self) -> Matrix {
        let k = self.code.k();
        let n = self.code.n();
        let g = self.code.generator();
        let mut a = Matrix::zeros(k, n - k);
        for r in 0..k {
            for c in k..n {
                a.set(r, c - k, g.get(r, c));
            }
        }
        a
    }

    /// Maps a word in systematic coordinates back to the original ordering.
    pub fn unpermute(&self, word: &[FieldElement]) -> Vec<FieldElement> {
        let mut out = vec![FieldElement::ZERO; word.len()];
        for (j, &p) in self.permutation.iter().enumerate() {
            out[p] = word[j];
        }
        out
    }
}

/// Reduces the generator to RREF and moves pivot columns to the front.
pub fn systematic_form(c: &LinearCode) -> Result<SystematicForm> {
    let mut g = c.generator().clone();
    let pivots = g.rref(c.ctx());
    if pivots.len() != c.k() {
        return Err(Error::RankDeficient {
            rank: pivots.len(),
            expected: c.k(),
        });
    }
    let mut permutation = pivots.clone();
    permutation.extend((0..c.n()).filter(|j| !pivots.contains(j)));
    let mut out = Matrix::zeros(c.k(), c.n());
    for r in 0..c.k() {
        for (j, &p) in permutation.iter().enumerate() {
            out.set(r, j, g.get(r, p));
        }
    }
    Ok(SystematicForm {
        code: LinearCode::new(*c.ctx(), out)?,
        permutation,
    })
}

fn weight(w: &[FieldElement]) -> usize {
    w.iter().filter(|x| !x.is_zero()).count()
}

fn support(w: &[FieldElement]) -> Vec<usize> {
    w.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// Minimum Hamming weight over nonzero codewords.
///
/// Exact mode enumerates all q^k - 1 nonzero codewords and fails when q^k
/// exceeds the budget; sampled mode returns an upper bound only.
pub fn hamming_min_distance(c: &LinearCode, opts: &DistanceOptions) -> Result<DistanceReport> {
    let basis = c.binary_basis();
    let bits = basis.len();
    match opts.mode {
        Mode::Exact => {
            if bits >= 63 || (1u64 << bits) > opts.budget {
                return Err(Error::BudgetExceeded(format!(
                    "2^{bits} codewords exceed the exact budget {}",
                    opts.budget
                )));
            }
            let best = exhaustive_min(&basis, |w, _| Some((weight(w), support(w)))).expect("k >= 1");
            Ok(DistanceReport {
                metric: Metric::Hamming,
                mode: Certification::Exact,
                lower: Some(best.value),
                upper: best.value,
                witness: Some(Witness {
                    message: best.message,
                    rows: best.payload,
                    cols: vec![],
                }),
                codewords: (1u64 << bits) - 1,
                seed: None,
            })
        }
        Mode::Sampled { samples, seed } => {
            if samples == 0 {
                return Err(Error::InvalidParameter("sampled mode needs at least one sample".into()));
            }
            let best = sampled_min(&basis, samples, seed, |w| (weight(w), support(w))).expect("k >= 1");
            Ok(DistanceReport {
                metric: Metric::Hamming,
                mode: Certification::Sampled,
                lower: None,
                upper: best.value,
                witness: Some(Witness {
                    message: best.message,
                    rows: best.payload,
                    cols: vec![],
                }),
                codewords: samples,
                seed: Some(seed),
            })
        }
    }
}

/// Exact minimum distance from column ranks: a nonzero codeword vanishes on
/// a column set S exactly when the columns of S have rank below k, so
/// d = n - max{|S| : rank(G_S) < k}. Cost grows with C(n, s), usable for
/// n <= 24 regardless of the field size.
pub fn min_distance_from_column_ranks(c: &LinearCode) -> Result<usize> {
    let n = c.n();
    let k = c.k();
    if n > 24 {
        return Err(Error::BudgetExceeded(format!("column-subset scan with n={n} > 24")));
    }
    let g = c.generator().transpose();
    let deficient_of_size = |s: usize| -> bool {
        // Gosper's hack over s-element subsets of [n]
        if s == 0 {
            return k > 0;
        }
        let mut set: u32 = (1 << s) - 1;
        let limit: u32 = 1 << n;
        while set < limit {
            let mut span = Span::new(*c.ctx(), k);
            for col in (0..n).filter(|&j| set >> j & 1 == 1) {
                let _ = span.insert(g.row(col));
                if span.dim() == k {
                    break;
                }
            }
            if span.dim() < k {
                return true;
            }
            let lo = set & set.wrapping_neg();
            let hi = set + lo;
            set = (((set ^ hi) >> 2) / lo) | hi;
        }
        false
    };
    // deficiency is inherited by subsets, so scan sizes upward
    let mut largest = k.saturating_sub(1);
    for s in k..=n {
        if deficient_of_size(s) {
            largest = s;
        } else {
            break;
        }
    }
    Ok(n - largest)
}

/// Minimum distance when it can be certified without a sampled fallback:
/// n - k + 1 for Reed-Solomon codes (they are MDS), exhaustive enumeration
/// within the default budget, then the column-rank scan for n <= 24.
pub fn certified_distance(c: &LinearCode) -> Option<usize> {
    if c.eval_points().is_some() {
        return Some(c.n() - c.k() + 1);
    }
    let opts = DistanceOptions::exact(crate::report::DEFAULT_HAMMING_BUDGET);
    if let Ok(r) = hamming_min_distance(c, &opts) {
        return r.value();
    }
    min_distance_from_column_ranks(c).ok()
}

/// The binary [2k, k] Wozencraft code {(x, alpha x) : x in GF(2^k)}, each
/// half written in polynomial-basis coordinates.
pub fn wozencraft_code(k: u32, index: FieldElement) -> Result<LinearCode> {
    let big = FieldContext::new(k)?;
    big.check(index)?;
    if index.is_zero() {
        return Err(Error::InvalidParameter("Wozencraft index must be nonzero".into()));
    }
    let rows: Vec<Vec<FieldElement>> = (0..k)
        .map(|i| {
            let x = FieldElement(1 << i);
            big.embed(x)
                .into_iter()
                .chain(big.embed(big.mul(index, x)))
                .map(|b| FieldElement(b as u32))
                .collect()
        })
        .collect();
    LinearCode::new(FieldContext::binary(), Matrix::from_rows(rows)?)
}

/// All 2^k - 1 members of the ensemble, indexed by the nonzero elements in
/// canonical order.
pub fn wozencraft_ensemble(k: u32) -> Result<Vec<LinearCode>> {
    let big = FieldContext::new(k)?;
    big.elements().skip(1).map(|a| wozencraft_code(k, a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2_code(rows: &[&[u32]]) -> LinearCode {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| FieldElement(x)).collect())
            .collect();
        LinearCode::new(FieldContext::binary(), Matrix::from_rows(rows).unwrap()).unwrap()
    }

    fn exact(c: &LinearCode) -> usize {
        hamming_min_distance(c, &DistanceOptions::exact(1 << 20))
            .unwrap()
            .value()
            .unwrap()
    }

    #[test]
    fn small_binary_distances() {
        assert_eq!(exact(&f2_code(&[&[1, 1, 1]])), 3);
        assert_eq!(exact(&f2_code(&[&[1, 1, 0], &[0, 1, 1]])), 2);
    }

    #[test]
    fn rs_endpoints_and_f4_example() {
        let f4 = FieldContext::new(2).unwrap();
        let full = rs_generate(4, 4, f4).unwrap();
        assert_eq!(exact(&full), 1);
        let rs = rs_generate(4, 2, f4).unwrap();
        assert_eq!(exact(&rs), 3);
        assert_eq!(min_distance_from_column_ranks(&rs).unwrap(), 3);
        // message (1, w) -> (1 + w x) for x in F_4
        let w = FieldElement(2);
        let cw = rs.encode(&[FieldElement::ONE, w]).unwrap();
        let expect: Vec<FieldElement> = f4.elements().map(|x| FieldElement::ONE + f4.mul(w, x)).collect();
        assert_eq!(cw, expect);
        assert!(rs_generate(5, 2, f4).is_err());
        assert!(rs_generate(4, 0, f4).is_err());
    }

    #[test]
    fn rs_is_mds() {
        for t in 1..=4 {
            let ctx = FieldContext::new(t).unwrap();
            let q = ctx.order();
            for n in 1..=q {
                for k in 1..=n {
                    if t as usize * k > 16 {
                        continue;
                    }
                    let rs = rs_generate(n, k, ctx).unwrap();
                    assert_eq!(exact(&rs), n - k + 1, "RS({n},{k}) over 2^{t}");
                }
            }
        }
    }

    #[test]
    fn column_rank_route_matches_enumeration() {
        let f8 = FieldContext::new(3).unwrap();
        for (n, k) in [(7, 3), (8, 4), (5, 2)] {
            let rs = rs_generate(n, k, f8).unwrap();
            assert_eq!(min_distance_from_column_ranks(&rs).unwrap(), exact(&rs));
        }
        for k in 2..=5 {
            for code in wozencraft_ensemble(k).unwrap() {
                assert_eq!(min_distance_from_column_ranks(&code).unwrap(), exact(&code));
            }
        }
        let f8_big = rs_generate(8, 4, FieldContext::new(8).unwrap()).unwrap();
        assert_eq!(min_distance_from_column_ranks(&f8_big).unwrap(), 5);
    }

    #[test]
    fn systematic_form_cases() {
        let c = f2_code(&[&[1, 0, 1], &[0, 1, 1]]);
        let s = systematic_form(&c).unwrap();
        assert_eq!(s.permutation, vec![0, 1, 2]);
        assert_eq!(s.code.generator(), c.generator());

        let f4 = FieldContext::new(2).unwrap();
        let rs = rs_generate(4, 2, f4).unwrap();
        let s = systematic_form(&rs).unwrap();
        let g = s.code.generator();
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(g.get(r, c), FieldElement((r == c) as u32));
            }
        }
        let a = s.redundancy();
        assert!((0..2).all(|r| (0..2).all(|c| !a.get(r, c).is_zero())));

        let zero = Matrix::zeros(2, 3);
        assert!(matches!(
            LinearCode::new(FieldContext::binary(), zero),
            Err(Error::RankDeficient { rank: 0, expected: 2 })
        ));
    }

    #[test]
    fn systematic_form_needs_a_permutation_when_leading_columns_are_dependent() {
        let c = f2_code(&[&[1, 1, 0, 1], &[1, 1, 1, 0]]);
        let s = systematic_form(&c).unwrap();
        assert_eq!(s.permutation, vec![0, 2, 1, 3]);
        // every systematic codeword maps back into the original code
        for m in [[1u32, 0], [0, 1], [1, 1]] {
            let msg: Vec<FieldElement> = m.iter().map(|&x| FieldElement(x)).collect();
            let w = s.code.encode(&msg).unwrap();
            assert!(c.contains(&s.unpermute(&w)));
        }
    }

    fn weight_distribution(c: &LinearCode) -> Vec<usize> {
        let basis = c.binary_basis();
        let mut counts = vec![0; c.n() + 1];
        for m in 0..(1u64 << basis.len()) {
            let w = crate::enumerate::combine(&basis, &[m]);
            counts[weight(&w)] += 1;
        }
        counts
    }

    #[test]
    fn systematic_form_preserves_weight_distribution() {
        let f8 = FieldContext::new(3).unwrap();
        for (n, k) in [(7, 3), (6, 4), (8, 2)] {
            let rs = rs_generate(n, k, f8).unwrap();
            let s = systematic_form(&rs).unwrap();
            assert_eq!(weight_distribution(&rs), weight_distribution(&s.code));
        }
        let c = f2_code(&[&[1, 1, 0, 1, 0], &[1, 1, 1, 0, 1], &[0, 0, 1, 1, 0]]);
        let s = systematic_form(&c).unwrap();
        assert_eq!(weight_distribution(&c), weight_distribution(&s.code));
    }

    #[test]
    fn wozencraft_cases() {
        let doubled = wozencraft_code(3, FieldElement::ONE).unwrap();
        assert_eq!(exact(&doubled), 2);
        assert_eq!(
            doubled.encode(&[FieldElement::ZERO; 3]).unwrap(),
            vec![FieldElement::ZERO; 6]
        );
        assert!(wozencraft_code(3, FieldElement::ZERO).is_err());
        assert!(wozencraft_code(3, FieldElement(8)).is_err());
        // X generates F_8^* for the modulus X^3 + X + 1; x = 1 gives (1, X)
        let g = FieldContext::new(3).unwrap().x();
        let code = wozencraft_code(3, g).unwrap();
        assert_eq!((code.n(), code.k()), (6, 3));
        assert_eq!(exact(&code), 2);
    }

    #[test]
    fn wozencraft_ensemble_size_and_rate() {
        for k in 1..=6 {
            let ens = wozencraft_ensemble(k).unwrap();
            assert_eq!(ens.len(), (1 << k) - 1);
            assert!(ens.iter().all(|c| c.n() == 2 * c.k()));
        }
    }

    #[test]
    fn sampled_mode_is_an_upper_bound() {
        let f8 = FieldContext::new(3).unwrap();
        let rs = rs_generate(7, 3, f8).unwrap();
        let r = hamming_min_distance(&rs, &DistanceOptions::sampled(50, 3)).unwrap();
        assert_eq!(r.lower, None);
        assert!(r.upper >= 5);
        assert!(hamming_min_distance(&rs, &DistanceOptions::sampled(0, 3)).is_err());
        let big = rs_generate(16, 8, FieldContext::new(4).unwrap()).unwrap();
        assert!(matches!(
            hamming_min_distance(&big, &DistanceOptions::exact(1 << 20)),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn generator_text_round_trip() {
        let rs = rs_generate(5, 3, FieldContext::new(3).unwrap()).unwrap();
        let text = rs.to_text();
        assert!(text.starts_with("q=b n=5 k=3\n"));
        let back = LinearCode::from_text(&text).unwrap();
        assert_eq!(back.generator(), rs.generator());
    }
}
