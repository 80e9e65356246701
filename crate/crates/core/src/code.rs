// SPDX-License-Identifier: Apache-2.0

//! Linear spaces of matrix words.

use crate::enumerate::combine;
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::linalg::{BitSpan, Span};
use crate::rational::Rational;
use crate::words::{GraphWord, MatrixWord};

/// Scalars the basis is taken over.
///
/// Concatenated codes identify outer symbols with inner messages through a
/// fixed F_2-linear map, so their span is only closed under F_2 even when the
/// alphabet is larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Linearity {
    /// Span over the alphabet GF(2^t).
    Alphabet,
    /// Span over GF(2).
    Binary,
}

#[derive(Debug, Clone)]
pub struct GraphCode {
    ctx: FieldContext,
    n: usize,
    basis: Vec<MatrixWord>,
    linearity: Linearity,
    directed: bool,
    symmetric_zero_diag: bool,
    claimed_distance: Option<usize>,
}

fn binom2(n: usize) -> u64 {
    (n as u64) * (n as u64).saturating_sub(1) / 2
}

impl GraphCode {
    /// Validates shapes, contexts and linear independence of `basis`. Codes
    /// that are not `directed` must have a symmetric zero-diagonal basis.
    pub fn new(
        ctx: FieldContext,
        n: usize,
        basis: Vec<MatrixWord>,
        linearity: Linearity,
        directed: bool,
    ) -> Result<Self> {
        for w in &basis {
            if *w.ctx() != ctx {
                return Err(Error::ContextMismatch(format!(
                    "basis word over {} in code over {ctx}",
                    w.ctx()
                )));
            }
            if w.n() != n {
                return Err(Error::ShapeMismatch(format!(
                    "basis word of side {} in code of side {n}",
                    w.n()
                )));
            }
        }
        let symmetric_zero_diag = basis.iter().all(|w| w.is_symmetric() && w.has_zero_diagonal());
        if !directed && !symmetric_zero_diag {
            return Err(Error::InvalidParameter(
                "undirected graph code needs symmetric zero-diagonal basis words".into(),
            ));
        }
        let code = GraphCode {
            ctx,
            n,
            basis,
            linearity,
            directed,
            symmetric_zero_diag,
            claimed_distance: None,
        };
        let rank = code.rank();
        if rank != code.basis.len() {
            return Err(Error::RankDeficient {
                rank,
                expected: code.basis.len(),
            });
        }
        Ok(code)
    }

    /// Keeps the words that are independent of the ones before them.
    pub fn reduce_basis(ctx: FieldContext, n: usize, words: Vec<MatrixWord>, linearity: Linearity) -> Vec<MatrixWord> {
        let mut span = Span::new(ctx, n * n);
        let mut bits = BitSpan::new();
        words
            .into_iter()
            .filter(|w| match linearity {
                Linearity::Alphabet => span.insert(w.entries()).unwrap_or(false),
                Linearity::Binary => bits.insert(&binary_coordinates(&ctx, w.entries())),
            })
            .collect()
    }

    pub fn with_claimed_distance(mut self, d: usize) -> Self {
        self.claimed_distance = Some(d);
        self
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[MatrixWord] {
        &self.basis
    }

    pub fn linearity(&self) -> Linearity {
        self.linearity
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn symmetric_zero_diag(&self) -> bool {
        self.symmetric_zero_diag
    }

    /// Certified-by-construction lower bound on the distance, in vertices.
    pub fn claimed_distance(&self) -> Option<usize> {
        self.claimed_distance
    }

    pub fn claimed_relative_distance(&self) -> Option<Rational> {
        self.claimed_distance
            .map(|d| Rational::new(d as i64, self.n.max(1) as i64))
    }

    /// Number of basis words.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// log_2 |C|.
    pub fn binary_dimension(&self) -> usize {
        match self.linearity {
            Linearity::Alphabet => self.basis.len() * self.ctx.t() as usize,
            Linearity::Binary => self.basis.len(),
        }
    }

    /// log_q |C| as an exact rational.
    pub fn dimension(&self) -> Rational {
        Rational::new(self.binary_dimension() as i64, self.ctx.t() as i64)
    }

    /// log_q|C| / C(n,2) for undirected codes, log_q|C| / n^2 for directed ones.
    pub fn rate(&self) -> Rational {
        let positions = if self.directed {
            (self.n * self.n) as u64
        } else {
            binom2(self.n)
        };
        if positions == 0 {
            return Rational::from_integer(0);
        }
        self.dimension() / Rational::from_integer(positions as i64)
    }

    /// F_2 basis as flattened entry vectors: for alphabet-linear codes each
    /// word w contributes X^j w for j < t, ordered (word, j).
    pub fn binary_basis(&self) -> Vec<Vec<FieldElement>> {
        self.basis
            .iter()
            .flat_map(|w| binary_expansion(&self.ctx, w, self.linearity))
            .collect()
    }

    /// The codeword with F_2 coordinates `message` in [`GraphCode::binary_basis`].
    pub fn codeword(&self, message: &[u64]) -> MatrixWord {
        let basis = self.binary_basis();
        let entries = if basis.is_empty() {
            vec![FieldElement::ZERO; self.n * self.n]
        } else {
            combine(&basis, message)
        };
        MatrixWord::from_entries(self.ctx, self.n, entries).expect("combination stays in field")
    }

    /// The codeword sum_i c_i w_i for alphabet coefficients `coeffs`.
    pub fn codeword_from_coefficients(&self, coeffs: &[FieldElement]) -> Result<MatrixWord> {
        if coeffs.len() != self.basis.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for {} basis words",
                coeffs.len(),
                self.basis.len()
            )));
        }
        let mut acc = MatrixWord::zeros(self.ctx, self.n);
        for (&c, w) in coeffs.iter().zip(&self.basis) {
            match self.linearity {
                Linearity::Alphabet => self.ctx.check(c)?,
                Linearity::Binary if c.0 > 1 => {
                    return Err(Error::Domain("binary-linear code takes 0/1 coefficients".into()))
                }
                Linearity::Binary => {}
            }
            if !c.is_zero() {
                acc = acc.difference(&w.scale(c))?;
            }
        }
        Ok(acc)
    }

    pub fn graph_word(&self, message: &[u64]) -> Result<GraphWord> {
        GraphWord::new(self.codeword(message))
    }

    /// Rank of the basis over its scalars.
    pub fn rank(&self) -> usize {
        match self.linearity {
            Linearity::Alphabet => {
                let mut span = Span::new(self.ctx, self.n * self.n);
                self.basis
                    .iter()
                    .filter(|w| span.insert(w.entries()).unwrap_or(false))
                    .count()
            }
            Linearity::Binary => {
                let mut span = BitSpan::new();
                self.basis
                    .iter()
                    .filter(|w| span.insert(&binary_coordinates(&self.ctx, w.entries())))
                    .count()
            }
        }
    }

    /// Whether `word` lies in the span (over the code's scalars).
    pub fn contains(&self, word: &MatrixWord) -> bool {
        if word.n() != self.n || *word.ctx() != self.ctx {
            return false;
        }
        match self.linearity {
            Linearity::Alphabet => {
                let mut span = Span::new(self.ctx, self.n * self.n);
                for w in &self.basis {
                    let _ = span.insert(w.entries());
                }
                span.contains(word.entries())
            }
            Linearity::Binary => {
                let bits = |w: &[FieldElement]| binary_coordinates(&self.ctx, w);
                let mut span = BitSpan::new();
                for w in &self.basis {
                    span.insert(&bits(w.entries()));
                }
                span.contains(&bits(word.entries()))
            }
        }
    }
}

fn binary_expansion(ctx: &FieldContext, w: &MatrixWord, linearity: Linearity) -> Vec<Vec<FieldElement>> {
    match linearity {
        Linearity::Binary => vec![w.entries().to_vec()],
        Linearity::Alphabet => (0..ctx.t())
            .map(|j| {
                let s = FieldElement(1 << j);
                w.entries().iter().map(|&e| ctx.mul(s, e)).collect()
            })
            .collect(),
    }
}

/// Entries unpacked into F_2 coordinates, t bits per entry.
pub(crate) fn binary_coordinates(ctx: &FieldContext, entries: &[FieldElement]) -> Vec<u64> {
    let t = ctx.t() as usize;
    let total = entries.len() * t;
    let mut out = vec![0u64; total.div_ceil(64).max(1)];
    for (i, e) in entries.iter().enumerate() {
        for b in 0..t {
            if e.0 >> b & 1 == 1 {
                let p = i * t + b;
                out[p / 64] |= 1 << (p % 64);
            }
        }
    }
    out
}
