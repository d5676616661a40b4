//! Exact arithmetic in `Q(ζ)` for `ζ` a primitive `2^L`-th root of unity.
//!
//! `Q(ζ) = Q[x]/(x^{2^{L-1}} + 1)`, so elements are rational vectors of length
//! `2^{L-1}` and multiplication is negacyclic convolution. Most values the
//! engine touches are single roots of unity, so coefficients are kept sparse.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::residue::mask;

/// Largest level for which `primitive_product_identity` will expand products.
pub const MAX_IDENTITY_LEVEL: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("division by zero in Q(ζ_2^{level})")]
    DivisionByZero { level: u32 },
    #[error("root of level {root} does not embed in level {field}")]
    LevelTooSmall { root: u32, field: u32 },
    #[error("a + k = {0} exceeds the configured maximum level {MAX_IDENTITY_LEVEL}")]
    IdentityTooLarge(u32),
    #[error("k must be at least 1")]
    NoPrimitiveRoots,
}

/// The root of unity `ζ_{2^level}^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub level: u32,
    pub exp: u64,
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order_log() {
            0 => write!(f, "1"),
            1 => write!(f, "-1"),
            _ => write!(f, "ζ{}^{}", 1u64 << self.level, self.exp),
        }
    }
}

impl RootOfUnity {
    pub fn new(level: u32, exp: i128) -> Self {
        let m = 1i128 << level;
        RootOfUnity { level, exp: exp.rem_euclid(m) as u64 }
    }

    pub fn one(level: u32) -> Self {
        RootOfUnity { level, exp: 0 }
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0
    }

    /// `log2` of the multiplicative order.
    pub fn order_log(&self) -> u32 {
        if self.exp == 0 {
            0
        } else {
            self.level - self.exp.trailing_zeros()
        }
    }

    /// Same root, written at a higher level.
    pub fn lift(&self, level: u32) -> RootOfUnity {
        assert!(level >= self.level);
        RootOfUnity { level, exp: self.exp << (level - self.level) }
    }

    /// Same root at the lowest level that holds it.
    pub fn reduced(&self) -> RootOfUnity {
        let level = self.order_log();
        RootOfUnity { level, exp: if level == 0 { 0 } else { self.exp >> (self.level - level) } }
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let level = self.level.max(other.level);
        let a = self.lift(level);
        let b = other.lift(level);
        RootOfUnity { level, exp: a.exp.wrapping_add(b.exp) & mask(level) }
    }

    pub fn inv(&self) -> RootOfUnity {
        RootOfUnity { level: self.level, exp: self.exp.wrapping_neg() & mask(self.level) }
    }

    pub fn pow(&self, e: u64) -> RootOfUnity {
        RootOfUnity { level: self.level, exp: self.exp.wrapping_mul(e) & mask(self.level) }
    }
}

/// An element of `Q(ζ_{2^level})` in the power basis `1, ζ, ..., ζ^{2^{level-1}-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    level: u32,
    terms: BTreeMap<u64, BigRational>,
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| if *i == 0 { format!("{c}") } else { format!("{c}·ζ^{i}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl CycloNum {
    pub fn zero(level: u32) -> Self {
        assert!(level >= 1, "Q(ζ) needs level >= 1");
        CycloNum { level, terms: BTreeMap::new() }
    }

    pub fn one(level: u32) -> Self {
        Self::from_rational(level, BigRational::one())
    }

    pub fn from_int(level: u32, v: i64) -> Self {
        Self::from_rational(level, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(level: u32, q: BigRational) -> Self {
        let mut out = Self::zero(level);
        if !q.is_zero() {
            out.terms.insert(0, q);
        }
        out
    }

    /// Embeds a root of unity of level at most `level`.
    pub fn from_root(level: u32, root: &RootOfUnity) -> Result<Self, CycloError> {
        if root.level > level {
            return Err(CycloError::LevelTooSmall { root: root.level, field: level });
        }
        let e = root.lift(level).exp;
        let half = Self::half_of(level);
        let mut out = Self::zero(level);
        if e < half {
            out.terms.insert(e, BigRational::one());
        } else {
            out.terms.insert(e - half, -BigRational::one());
        }
        Ok(out)
    }

    fn half_of(level: u32) -> u64 {
        1u64 << (level - 1)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Field degree `2^{level-1}`.
    pub fn degree(&self) -> usize {
        Self::half_of(self.level) as usize
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero power-basis coefficients.
    pub fn support(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    /// Dense coefficient vector of length `2^{level-1}`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.degree()];
        for (i, c) in &self.terms {
            out[*i as usize] = c.clone();
        }
        out
    }

    pub fn from_coeffs(level: u32, coeffs: &[BigRational]) -> Self {
        assert_eq!(coeffs.len(), Self::half_of(level) as usize);
        let mut out = Self::zero(level);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(i as u64, c.clone());
            }
        }
        out
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// The value as `±ζ^e`, if it is a root of unity.
    pub fn as_root(&self) -> Option<RootOfUnity> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&i, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some(RootOfUnity { level: self.level, exp: i })
        } else if (-c).is_one() {
            Some(RootOfUnity { level: self.level, exp: i + Self::half_of(self.level) })
        } else {
            None
        }
    }

    fn accumulate(&mut self, index: u64, c: BigRational) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c · ζ^e` for any exponent `e`.
    pub fn add_root_term(&mut self, e: u64, c: BigRational) {
        let half = Self::half_of(self.level);
        let e = e & mask(self.level);
        if e < half {
            self.accumulate(e, c);
        } else {
            self.accumulate(e - half, -c);
        }
    }

    pub fn scale(&self, q: &BigRational) -> CycloNum {
        if q.is_zero() {
            return CycloNum::zero(self.level);
        }
        CycloNum {
            level: self.level,
            terms: self.terms.iter().map(|(i, c)| (*i, c * q)).collect(),
        }
    }

    /// Multiplies by `ζ^e`.
    pub fn mul_root(&self, e: u64) -> CycloNum {
        let mut out = CycloNum::zero(self.level);
        for (i, c) in &self.terms {
            out.add_root_term(i + e, c.clone());
        }
        out
    }

    /// Same value in `Q(ζ_{2^level})` for a larger level.
    pub fn lift(&self, level: u32) -> CycloNum {
        assert!(level >= self.level);
        let shift = level - self.level;
        CycloNum { level, terms: self.terms.iter().map(|(i, c)| (i << shift, c.clone())).collect() }
    }

    /// Image under the automorphism `ζ -> ζ^{-1}` (complex conjugation).
    pub fn conj(&self) -> CycloNum {
        let mut out = CycloNum::zero(self.level);
        for (i, c) in &self.terms {
            out.add_root_term(i.wrapping_neg(), c.clone());
        }
        out
    }

    fn check_level(&self, other: &CycloNum) {
        assert_eq!(self.level, other.level, "mixed cyclotomic levels");
    }

    /// Multiplicative inverse. Roots of unity and rationals invert directly;
    /// anything else is solved as a linear system over `Q`.
    pub fn inverse(&self) -> Result<CycloNum, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero { level: self.level });
        }
        if self.terms.len() == 1 {
            let (&i, c) = self.terms.iter().next().expect("one term");
            let mut out = CycloNum::zero(self.level);
            out.add_root_term(i.wrapping_neg(), c.recip());
            return Ok(out);
        }
        // Columns of the multiplication-by-self map, then solve M x = 1.
        let d = self.degree();
        let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); d + 1]; d];
        for j in 0..d {
            let col = self.mul_root(j as u64);
            for (i, c) in col.terms {
                rows[i as usize][j] = c;
            }
        }
        rows[0][d] = BigRational::one();
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !rows[r][col].is_zero())
                .ok_or(CycloError::DivisionByZero { level: self.level })?;
            rows.swap(col, pivot);
            let p = rows[col][col].clone();
            for x in rows[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..d {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for k in col..=d {
                        let delta = &f * &rows[col][k];
                        rows[r][k] -= delta;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = rows.into_iter().map(|r| r[d].clone()).collect();
        Ok(CycloNum::from_coeffs(self.level, &sol))
    }
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.check_level(rhs);
        let mut out = self.clone();
        for (i, c) in &rhs.terms {
            out.accumulate(*i, c.clone());
        }
        out
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.check_level(rhs);
        let mut out = self.clone();
        for (i, c) in &rhs.terms {
            out.accumulate(*i, -c.clone());
        }
        out
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            level: self.level,
            terms: self.terms.iter().map(|(i, c)| (*i, -c.clone())).collect(),
        }
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    /// Negacyclic convolution: `ζ^{2^{level-1}} = -1`.
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.check_level(rhs);
        let mut out = CycloNum::zero(self.level);
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_root_term(i + j, a * b);
            }
        }
        out
    }
}

/// A polynomial with coefficients in `Q(ζ_{2^level})`, lowest degree first,
/// with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloPoly {
    level: u32,
    coeffs: Vec<CycloNum>,
}

impl fmt::Debug for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| format!("({c})x^{d}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl CycloPoly {
    pub fn zero(level: u32) -> Self {
        CycloPoly { level, coeffs: Vec::new() }
    }

    pub fn constant(c: CycloNum) -> Self {
        let level = c.level();
        Self::from_coeffs(level, vec![c])
    }

    pub fn one(level: u32) -> Self {
        Self::constant(CycloNum::one(level))
    }

    /// `c · x^deg`.
    pub fn monomial(deg: usize, c: CycloNum) -> Self {
        let level = c.level();
        let mut coeffs = vec![CycloNum::zero(level); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(level, coeffs)
    }

    /// `x^deg - root`.
    pub fn binomial(level: u32, deg: usize, root: &RootOfUnity) -> Result<Self, CycloError> {
        let mut coeffs = vec![CycloNum::zero(level); deg + 1];
        coeffs[deg] = CycloNum::one(level);
        coeffs[0] = &coeffs[0] - &CycloNum::from_root(level, root)?;
        Ok(Self::from_coeffs(level, coeffs))
    }

    pub fn from_coeffs(level: u32, mut coeffs: Vec<CycloNum>) -> Self {
        while coeffs.last().is_some_and(CycloNum::is_zero) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.level() == level));
        CycloPoly { level, coeffs }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> CycloNum {
        self.coeffs.get(d).cloned().unwrap_or_else(|| CycloNum::zero(self.level))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Indices of nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&d| !self.coeffs[d].is_zero()).collect()
    }

    pub fn lift(&self, level: u32) -> CycloPoly {
        CycloPoly { level, coeffs: self.coeffs.iter().map(|c| c.lift(level)).collect() }
    }

    pub fn scale(&self, c: &CycloNum) -> CycloPoly {
        Self::from_coeffs(self.level, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> CycloPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![CycloNum::zero(self.level); k];
        coeffs.extend(self.coeffs.iter().cloned());
        CycloPoly { level: self.level, coeffs }
    }
}

impl Add for &CycloPoly {
    type Output = CycloPoly;
    fn add(self, rhs: &CycloPoly) -> CycloPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|d| &self.coeff(d) + &rhs.coeff(d)).collect();
        CycloPoly::from_coeffs(self.level, coeffs)
    }
}

impl Sub for &CycloPoly {
    type Output = CycloPoly;
    fn sub(self, rhs: &CycloPoly) -> CycloPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|d| &self.coeff(d) - &rhs.coeff(d)).collect();
        CycloPoly::from_coeffs(self.level, coeffs)
    }
}

impl Neg for &CycloPoly {
    type Output = CycloPoly;
    fn neg(self) -> CycloPoly {
        CycloPoly { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &CycloPoly {
    type Output = CycloPoly;
    fn mul(self, rhs: &CycloPoly) -> CycloPoly {
        assert_eq!(self.level, rhs.level, "mixed cyclotomic levels");
        if self.is_zero() || rhs.is_zero() {
            return CycloPoly::zero(self.level);
        }
        let mut coeffs = vec![CycloNum::zero(self.level); self.coeffs.len() + rhs.coeffs.len() - 1];
        let ls = self.support();
        let rs = rhs.support();
        for &i in &ls {
            for &j in &rs {
                let p = &self.coeffs[i] * &rhs.coeffs[j];
                coeffs[i + j] = &coeffs[i + j] + &p;
            }
        }
        CycloPoly::from_coeffs(self.level, coeffs)
    }
}

/// `Φ_{2^k}` with coefficients embedded at `level`: `x - 1` for `k = 0`,
/// otherwise `x^{2^{k-1}} + 1`.
pub fn cyclotomic_poly_2power(k: u32, level: u32) -> CycloPoly {
    if k == 0 {
        return CycloPoly::from_coeffs(level, vec![CycloNum::from_int(level, -1), CycloNum::one(level)]);
    }
    let deg = 1usize << (k - 1);
    let mut coeffs = vec![CycloNum::zero(level); deg + 1];
    coeffs[0] = CycloNum::one(level);
    coeffs[deg] = CycloNum::one(level);
    CycloPoly::from_coeffs(level, coeffs)
}

fn bit_reverse(i: u64, bits: u32) -> u64 {
    if bits == 0 {
        0
    } else {
        i.reverse_bits() >> (64 - bits)
    }
}

/// Primitive `2^k`-th roots in bit-reversed order: consecutive blocks of size
/// `2^j` are cosets of the `2^j`-th roots of unity.
pub fn primitive_roots_bitrev(k: u32) -> Vec<RootOfUnity> {
    assert!(k >= 1);
    (0..1u64 << (k - 1))
        .map(|i| RootOfUnity { level: k, exp: 1 + 2 * bit_reverse(i, k - 1) })
        .collect()
}

fn product_tree(factors: &[CycloPoly]) -> CycloPoly {
    match factors.len() {
        0 => unreachable!("empty product"),
        1 => factors[0].clone(),
        len => {
            let (l, r) = factors.split_at(len / 2);
            &product_tree(l) * &product_tree(r)
        }
    }
}

/// Expands `∏ (x^{2^a} - ω)` over all primitive `2^k`-th roots `ω`.
pub fn primitive_product(a: u32, k: u32) -> Result<CycloPoly, CycloError> {
    if k == 0 {
        return Err(CycloError::NoPrimitiveRoots);
    }
    if a + k > MAX_IDENTITY_LEVEL {
        return Err(CycloError::IdentityTooLarge(a + k));
    }
    let factors = primitive_roots_bitrev(k)
        .iter()
        .map(|w| CycloPoly::binomial(k, 1usize << a, w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(product_tree(&factors))
}

/// Checks `∏_{ω primitive 2^k-th} (x^{2^a} - ω) = x^{2^{a+k-1}} + 1` by
/// expanding the left side.
pub fn primitive_product_identity(a: u32, k: u32) -> Result<bool, CycloError> {
    let lhs = primitive_product(a, k)?;
    Ok(lhs == cyclotomic_poly_2power(a + k, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn num(level: u32, coeffs: &[i64]) -> CycloNum {
        let c: Vec<BigRational> = coeffs.iter().map(|&v| q(v)).collect();
        CycloNum::from_coeffs(level, &c)
    }

    #[test]
    fn roots_square_as_expected() {
        let i = CycloNum::from_root(2, &RootOfUnity::new(2, 1)).unwrap();
        assert_eq!(&i * &i, CycloNum::from_int(2, -1));
        let z = CycloNum::from_root(3, &RootOfUnity::new(3, 1)).unwrap();
        let z4 = &(&z * &z) * &(&z * &z);
        assert_eq!(z4, CycloNum::from_int(3, -1));
        assert_eq!(z4.as_root(), Some(RootOfUnity::new(3, 4)));
    }

    #[test]
    fn root_orders() {
        assert_eq!(RootOfUnity::new(5, 0).order_log(), 0);
        assert_eq!(RootOfUnity::new(5, 16).order_log(), 1);
        assert_eq!(RootOfUnity::new(5, 12).order_log(), 3);
        assert_eq!(RootOfUnity::new(5, 12).reduced(), RootOfUnity::new(3, 3));
        assert_eq!(RootOfUnity::new(3, 3).mul(&RootOfUnity::new(4, 2)), RootOfUnity::new(4, 8));
    }

    #[test]
    fn inverse_of_roots_and_general() {
        let level = 4;
        for e in 0..16 {
            let z = CycloNum::from_root(level, &RootOfUnity::new(level, e)).unwrap();
            assert!((&z * &z.inverse().unwrap()).is_one());
        }
        let x = num(3, &[1, 2, 0, -1]);
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(
            CycloNum::zero(3).inverse(),
            Err(CycloError::DivisionByZero { level: 3 })
        );
    }

    #[test]
    fn conj_is_inverse_on_roots() {
        for e in 0..32 {
            let z = CycloNum::from_root(5, &RootOfUnity::new(5, e)).unwrap();
            assert!((&z * &z.conj()).is_one());
        }
    }

    #[test]
    fn cyclotomic_small_cases() {
        let p0 = cyclotomic_poly_2power(0, 1);
        assert_eq!(p0.degree(), Some(1));
        let p3 = cyclotomic_poly_2power(3, 2);
        assert_eq!(p3.support(), vec![0, 4]);
    }

    #[test]
    fn product_identity_small() {
        assert_eq!(primitive_product_identity(0, 1), Ok(true));
        assert_eq!(primitive_product_identity(1, 2), Ok(true));
        assert_eq!(primitive_product_identity(3, 3), Ok(true));
        assert_eq!(primitive_product(0, 0), Err(CycloError::NoPrimitiveRoots));
        assert_eq!(primitive_product(10, 7), Err(CycloError::IdentityTooLarge(17)));
    }

    #[test]
    fn bitrev_blocks_are_cosets() {
        let roots = primitive_roots_bitrev(5);
        for j in 0..4u32 {
            let block = 1usize << j;
            for chunk in roots.chunks(block) {
                // all elements of a coset share the 2^j-th power
                let p: Vec<u64> = chunk.iter().map(|r| r.pow(1 << j).exp).collect();
                assert!(p.iter().all(|&e| e == p[0]));
            }
        }
    }

    fn dense_negacyclic(level: u32, a: &[i64], b: &[i64]) -> Vec<i64> {
        // plain polynomial product, then reduce by x^h = -1
        let h = 1usize << (level - 1);
        let mut full = vec![0i64; 2 * h];
        for i in 0..h {
            for j in 0..h {
                full[i + j] += a[i] * b[j];
            }
        }
        (0..h).map(|i| full[i] - full[i + h]).collect()
    }

    proptest! {
        #[test]
        fn negacyclic_matches_reduced_product(
            level in 1u32..6,
            seed_a in proptest::collection::vec(-5i64..6, 16),
            seed_b in proptest::collection::vec(-5i64..6, 16),
        ) {
            let h = 1usize << (level - 1);
            let a = &seed_a[..h];
            let b = &seed_b[..h];
            let prod = &num(level, a) * &num(level, b);
            prop_assert_eq!(prod, num(level, &dense_negacyclic(level, a, b)));
        }

        #[test]
        fn field_axioms(
            level in 1u32..5,
            xa in proptest::collection::vec(-4i64..5, 8),
            xb in proptest::collection::vec(-4i64..5, 8),
            xc in proptest::collection::vec(-4i64..5, 8),
        ) {
            let h = 1usize << (level - 1);
            let (a, b, c) = (num(level, &xa[..h]), num(level, &xb[..h]), num(level, &xc[..h]));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }
    }
}
