// SPDX-License-Identifier: Apache-2.0

//! Arithmetic in binary extension fields GF(2^t), 1 <= t <= 16.
//!
//! Elements are stored as t-bit integers holding coefficients in the
//! polynomial basis {1, X, ..., X^(t-1)} of the context modulus. Addition is
//! XOR; multiplication is a carry-less product followed by shift-XOR
//! reduction. The trace map is F_2-linear, so it is evaluated as the parity
//! of `a & trace_mask` where bit i of the mask holds Tr(X^i).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// Lexicographically least irreducible polynomial of each degree with a
/// nonzero constant term, indexed by degree. Bit i is the coefficient of X^i.
pub const DEFAULT_MODULI: [u32; 17] = [
    0, 0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021, 0x8003, 0x1002b,
];

/// An element of GF(2^t) in polynomial-basis coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

// addition in characteristic 2 is XOR
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl std::ops::AddAssign for FieldElement {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

impl fmt::LowerHex for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// The field GF(2^t) defined by a fixed irreducible modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldContext {
    t: u32,
    modulus: u32,
    trace_mask: u32,
}

fn degree(p: u64) -> u32 {
    63 - p.leading_zeros()
}

fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

/// Irreducibility over F_2 by trial division with every polynomial of degree
/// 1..=t/2.
pub fn is_irreducible(modulus: u32) -> bool {
    if modulus < 2 {
        return false;
    }
    let p = modulus as u64;
    let t = degree(p);
    for d in 1..=t / 2 {
        for f in (1u64 << d)..(1u64 << (d + 1)) {
            if poly_rem(p, f) == 0 {
                return false;
            }
        }
    }
    true
}

impl FieldContext {
    /// GF(2^t) with the default modulus for degree t.
    pub fn new(t: u32) -> Result<Self> {
        if t == 0 || t > MAX_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "extension degree {t} outside 1..={MAX_DEGREE}"
            )));
        }
        Self::with_modulus(t, DEFAULT_MODULI[t as usize])
    }

    /// GF(2) as a context (modulus X + 1).
    pub fn binary() -> Self {
        Self::new(1).expect("degree 1 is supported")
    }

    /// GF(2^t) with an explicit modulus; the modulus must have degree t and
    /// be irreducible.
    pub fn with_modulus(t: u32, modulus: u32) -> Result<Self> {
        if t == 0 || t > MAX_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "extension degree {t} outside 1..={MAX_DEGREE}"
            )));
        }
        if modulus == 0 || degree(modulus as u64) != t {
            return Err(Error::InvalidParameter(format!(
                "modulus {modulus:#x} does not have degree {t}"
            )));
        }
        if !is_irreducible(modulus) {
            return Err(Error::InvalidParameter(format!(
                "modulus {modulus:#x} is reducible over F_2"
            )));
        }
        let mut ctx = FieldContext {
            t,
            modulus,
            trace_mask: 0,
        };
        let mut mask = 0;
        for i in 0..t {
            if ctx.trace_by_squaring(FieldElement(1 << i)) {
                mask |= 1 << i;
            }
        }
        ctx.trace_mask = mask;
        Ok(ctx)
    }

    /// Context for the modulus alone; the degree is read off the polynomial.
    pub fn from_modulus(modulus: u32) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidParameter(format!("modulus {modulus:#x} has degree 0")));
        }
        Self::with_modulus(degree(modulus as u64), modulus)
    }

    #[inline]
    pub fn t(&self) -> u32 {
        self.t
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Field order q = 2^t.
    #[inline]
    pub fn order(&self) -> usize {
        1usize << self.t
    }

    #[inline]
    pub fn is_binary(&self) -> bool {
        self.t == 1
    }

    /// Checked constructor: bits must fit in t bits.
    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        if (bits as u64) >> self.t != 0 {
            return Err(Error::ContextMismatch(format!(
                "{bits:#x} is not reduced in GF(2^{})",
                self.t
            )));
        }
        Ok(FieldElement(bits))
    }

    #[inline]
    pub fn contains(&self, a: FieldElement) -> bool {
        (a.0 as u64) >> self.t == 0
    }

    /// Elements in canonical order: integers 0..q read as bit strings.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order() as u32).map(FieldElement)
    }

    /// The fixed primitive-looking generator X of the polynomial basis
    /// (equal to 1 when t = 1).
    pub fn x(&self) -> FieldElement {
        if self.t == 1 {
            FieldElement::ONE
        } else {
            FieldElement(2)
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut acc = 0u64;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            x <<= 1;
            y >>= 1;
        }
        let m = self.modulus as u64;
        let t = self.t;
        let mut d = 2 * t;
        while d >= t {
            if acc >> d & 1 == 1 {
                acc ^= m << (d - t);
            }
            if d == 0 {
                break;
            }
            d -= 1;
        }
        FieldElement(acc as u32)
    }

    /// Multiplication with operand validation.
    pub fn try_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn check(&self, a: FieldElement) -> Result<()> {
        self.element(a.0).map(|_| ())
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, a^(2^t - 2).
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::Domain("zero has no multiplicative inverse".into()));
        }
        Ok(self.pow(a, (1u64 << self.t) - 2))
    }

    /// The unique square root, a^(2^(t-1)).
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        let mut r = a;
        for _ in 1..self.t {
            r = self.square(r);
        }
        r
    }

    /// Absolute trace Tr: GF(2^t) -> GF(2).
    #[inline]
    pub fn trace(&self, a: FieldElement) -> bool {
        (a.0 & self.trace_mask).count_ones() & 1 == 1
    }

    /// Bit i holds Tr(X^i).
    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    fn trace_by_squaring(&self, a: FieldElement) -> bool {
        let mut acc = FieldElement::ZERO;
        let mut p = a;
        for _ in 0..self.t {
            acc += p;
            p = self.square(p);
        }
        debug_assert!(acc.0 <= 1);
        acc.0 == 1
    }

    /// Polynomial-basis coordinates of `a`, least significant first.
    pub fn embed(&self, a: FieldElement) -> Vec<u8> {
        (0..self.t).map(|i| ((a.0 >> i) & 1) as u8).collect()
    }

    /// Inverse of [`FieldContext::embed`].
    pub fn from_coordinates(&self, bits: &[u8]) -> Result<FieldElement> {
        if bits.len() != self.t as usize {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coordinates, got {}",
                self.t,
                bits.len()
            )));
        }
        let mut v = 0u32;
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => v |= 1 << i,
                _ => return Err(Error::Domain(format!("coordinate {b} is not a bit"))),
            }
        }
        Ok(FieldElement(v))
    }

    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let bits = u32::from_str_radix(s.trim(), 16).map_err(|e| Error::Parse(format!("field element {s:?}: {e}")))?;
        self.element(bits)
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={},mod={:x}", self.t, self.modulus)
    }
}

impl FromStr for FieldContext {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("field context {s:?}, expected t=<int>,mod=<hex>"));
        let (t_part, m_part) = s.trim().split_once(',').ok_or_else(bad)?;
        let t = t_part.strip_prefix("t=").ok_or_else(bad)?;
        let m = m_part.strip_prefix("mod=").ok_or_else(bad)?;
        let t: u32 = t.parse().map_err(|_| bad())?;
        let m = u32::from_str_radix(m, 16).map_err(|_| bad())?;
        FieldContext::with_modulus(t, m)
    }
}
