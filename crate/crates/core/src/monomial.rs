//! Monomial matrices whose nonzero entries are `2^N`-th roots of unity.
//!
//! A matrix is stored as a permutation plus one exponent per column:
//! `M e_j = ζ^{coeffs[j]} e_{perm[j]}` with `ζ` a primitive `2^level`-th root.
//! The maximal cycle is `C e_j = λ^j e_j` with `λ = ζ^{2^{level-n}}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{CycloPoly, RootOfUnity};
use crate::residue::{mask, unit_decompose, Residue, UnitElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("permutation and coefficient lengths must both be 2^{n}")]
    LengthMismatch { n: u32 },
    #[error("map is not a bijection of Z_2^{n}")]
    NotBijective { n: u32 },
    #[error("coefficient level {level} is below n = {n}")]
    LevelBelowN { level: u32, n: u32 },
    #[error("matrix does not normalize <C>: {0}")]
    NotNormalizing(String),
    #[error("cycle of length {0} is not a power of two")]
    NonPowerOfTwoCycle(u64),
    #[error("index set is not invariant under the matrix")]
    NotInvariant,
    #[error("permutation does not preserve the even indices")]
    EvensNotPreserved,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    n: u32,
    level: u32,
    perm: Vec<usize>,
    coeffs: Vec<u64>,
}

impl fmt::Debug for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial(n={}, level={}, perm={:?}, coeffs={:?})", self.n, self.level, self.perm, self.coeffs)
    }
}

impl MonomialMatrix {
    pub fn new(n: u32, level: u32, perm: Vec<usize>, coeffs: Vec<u64>) -> Result<Self, MonomialError> {
        if level < n {
            return Err(MonomialError::LevelBelowN { level, n });
        }
        let dim = 1usize << n;
        if perm.len() != dim || coeffs.len() != dim {
            return Err(MonomialError::LengthMismatch { n });
        }
        let mut hit = vec![false; dim];
        for &p in &perm {
            if p >= dim || hit[p] {
                return Err(MonomialError::NotBijective { n });
            }
            hit[p] = true;
        }
        let m = mask(level);
        let coeffs = coeffs.into_iter().map(|c| c & m).collect();
        Ok(MonomialMatrix { n, level, perm, coeffs })
    }

    pub fn identity(n: u32, level: u32) -> Self {
        let dim = 1usize << n;
        MonomialMatrix { n, level, perm: (0..dim).collect(), coeffs: vec![0; dim] }
    }

    /// `C^k = diag(λ^{jk})`.
    pub fn c_power(n: u32, level: u32, k: u64) -> Self {
        Self::identity(n, level).mul_c_power(k)
    }

    /// The maximal cycle `C`.
    pub fn cycle(n: u32, level: u32) -> Self {
        Self::c_power(n, level, 1)
    }

    /// `e_j -> ζ^{coeffs[j]} e_{r j}`.
    pub fn multiplication_map(n: u32, level: u32, r: u64, coeffs: Vec<u64>) -> Result<Self, MonomialError> {
        let m = mask(n);
        let perm = (0..1u64 << n).map(|j| (j.wrapping_mul(r) & m) as usize).collect();
        Self::new(n, level, perm, coeffs)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> RootOfUnity {
        RootOfUnity { level: self.level, exp: self.coeffs[j] }
    }

    /// `2^{level-n}`: the exponent of `ζ` that gives `λ`.
    pub fn lambda_step(&self) -> u64 {
        1u64 << (self.level - self.n)
    }

    /// `self · rhs`.
    pub fn compose(&self, rhs: &MonomialMatrix) -> MonomialMatrix {
        assert_eq!((self.n, self.level), (rhs.n, rhs.level), "shape mismatch");
        let m = mask(self.level);
        let mut perm = Vec::with_capacity(self.dim());
        let mut coeffs = Vec::with_capacity(self.dim());
        for j in 0..self.dim() {
            let mid = rhs.perm[j];
            perm.push(self.perm[mid]);
            coeffs.push(rhs.coeffs[j].wrapping_add(self.coeffs[mid]) & m);
        }
        MonomialMatrix { n: self.n, level: self.level, perm, coeffs }
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let m = mask(self.level);
        let mut perm = vec![0; self.dim()];
        let mut coeffs = vec![0; self.dim()];
        for j in 0..self.dim() {
            perm[self.perm[j]] = j;
            coeffs[self.perm[j]] = self.coeffs[j].wrapping_neg() & m;
        }
        MonomialMatrix { n: self.n, level: self.level, perm, coeffs }
    }

    pub fn pow(&self, mut e: u64) -> MonomialMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n, self.level);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// `self · C^h`.
    pub fn mul_c_power(&self, h: u64) -> MonomialMatrix {
        let step = self.lambda_step();
        let m = mask(self.level);
        let coeffs = (0..self.dim() as u64)
            .map(|j| self.coeffs[j as usize].wrapping_add(h.wrapping_mul(j).wrapping_mul(step)) & m)
            .collect();
        MonomialMatrix { n: self.n, level: self.level, perm: self.perm.clone(), coeffs }
    }

    /// `D^{-1} · self · D` for `D = diag(ζ^{t_j})`: the matrix of `self` in the
    /// basis `e'_j = ζ^{t_j} e_j`.
    pub fn rescaled(&self, t: &[u64]) -> MonomialMatrix {
        assert_eq!(t.len(), self.dim());
        let m = mask(self.level);
        let coeffs = (0..self.dim())
            .map(|j| self.coeffs[j].wrapping_add(t[j]).wrapping_sub(t[self.perm[j]]) & m)
            .collect();
        MonomialMatrix { n: self.n, level: self.level, perm: self.perm.clone(), coeffs }
    }

    /// Same matrix with coefficients written at a higher level.
    pub fn lift_level(&self, level: u32) -> MonomialMatrix {
        assert!(level >= self.level);
        let shift = level - self.level;
        MonomialMatrix {
            n: self.n,
            level,
            perm: self.perm.clone(),
            coeffs: self.coeffs.iter().map(|c| c << shift).collect(),
        }
    }

    /// Restriction to the span of the even basis vectors, reindexed by
    /// `2t -> t`. The coefficient level is kept, so `C` restricts to
    /// the maximal cycle of the smaller space.
    pub fn restrict_evens(&self) -> Result<MonomialMatrix, MonomialError> {
        assert!(self.n >= 1);
        let half = self.dim() / 2;
        let mut perm = Vec::with_capacity(half);
        let mut coeffs = Vec::with_capacity(half);
        for t in 0..half {
            let img = self.perm[2 * t];
            if img % 2 != 0 {
                return Err(MonomialError::EvensNotPreserved);
            }
            perm.push(img / 2);
            coeffs.push(self.coeffs[2 * t]);
        }
        Ok(MonomialMatrix { n: self.n - 1, level: self.level, perm, coeffs })
    }

    pub fn is_identity(&self) -> bool {
        self.is_diagonal() && self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| j == p)
    }

    /// True when every coefficient is 1, i.e. a literal permutation matrix.
    pub fn is_permutation_matrix(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `Some(s)` when the matrix equals `C^s`.
    pub fn c_power_exponent(&self) -> Option<u64> {
        if !self.is_diagonal() || self.coeffs[0] != 0 {
            return None;
        }
        let step = self.lambda_step();
        if self.dim() < 2 || self.coeffs[1] % step != 0 {
            return (self.dim() < 2).then_some(0);
        }
        let s = self.coeffs[1] / step;
        (*self == Self::c_power(self.n, self.level, s)).then_some(s)
    }

    /// Cycles of the permutation, each starting at its smallest index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.dim()];
        let mut out = Vec::new();
        for s in 0..self.dim() {
            if seen[s] {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut x = self.perm[s];
            while x != s {
                seen[x] = true;
                cyc.push(x);
                x = self.perm[x];
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> u64 {
        let lcm = self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64));
        let diag = self.pow(lcm);
        let diag_order = diag
            .coeffs
            .iter()
            .map(|&c| 1u64 << RootOfUnity { level: self.level, exp: c }.order_log())
            .max()
            .unwrap_or(1);
        lcm * diag_order
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// The unit `r` with `M^{-1} C M = C^r`, or an error when `M` does not
/// normalize `<C>` in this way (its permutation must be `j -> r j`).
pub fn relation_of(m: &MonomialMatrix) -> Result<UnitElement, MonomialError> {
    let n = m.n();
    let r = m.perm[1] as u64;
    if r % 2 == 0 {
        return Err(MonomialError::NotNormalizing(format!("e_1 maps to e_{r}")));
    }
    let modmask = mask(n);
    for j in 0..m.dim() {
        let expected = (j as u64).wrapping_mul(r) & modmask;
        if m.perm[j] as u64 != expected {
            return Err(MonomialError::NotNormalizing(format!(
                "e_{j} maps to e_{} but j -> {r}j predicts e_{expected}",
                m.perm[j]
            )));
        }
    }
    Ok(unit_decompose(Residue::raw(r, n)).expect("odd"))
}

/// Characteristic polynomial of a monomial matrix as a product of binomials
/// `x^L - ω`, one per permutation cycle, where `L` is the cycle length and
/// `ω` the product of the coefficients around the cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharFactors {
    pub level: u32,
    pub blocks: Vec<(u64, RootOfUnity)>,
}

impl CharFactors {
    pub fn degree(&self) -> u64 {
        self.blocks.iter().map(|b| b.0).sum()
    }

    /// The product as an explicit polynomial over `Q(ζ_{2^level})`.
    pub fn expand(&self) -> CycloPoly {
        let level = self.level.max(1);
        let mut acc = CycloPoly::one(level);
        for (len, w) in &self.blocks {
            let b = CycloPoly::binomial(level, *len as usize, w).expect("root within level");
            acc = &acc * &b;
        }
        acc
    }
}

impl fmt::Display for CharFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut grouped: BTreeMap<(u64, RootOfUnity), u64> = BTreeMap::new();
        for (len, w) in &self.blocks {
            *grouped.entry((*len, w.reduced())).or_default() += 1;
        }
        let parts: Vec<String> = grouped
            .iter()
            .map(|((len, w), mult)| {
                let x = if *len == 1 { "x".to_string() } else { format!("x^{len}") };
                let body = match w.order_log() {
                    0 => format!("({x} - 1)"),
                    1 => format!("({x} + 1)"),
                    _ => format!("({x} - ζ{}^{})", 1u64 << w.level, w.exp),
                };
                if *mult == 1 {
                    body
                } else {
                    format!("{body}^{mult}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

pub fn char_factors(m: &MonomialMatrix) -> CharFactors {
    factors_of_cycles(m, m.cycles())
}

/// Characteristic polynomial of `m` restricted to the span of `{e_j : keep(j)}`,
/// which must be invariant.
pub fn char_factors_restricted(
    m: &MonomialMatrix,
    keep: impl Fn(usize) -> bool,
) -> Result<CharFactors, MonomialError> {
    let mut cycles = Vec::new();
    for cyc in m.cycles() {
        let inside = cyc.iter().filter(|&&j| keep(j)).count();
        if inside == cyc.len() {
            cycles.push(cyc);
        } else if inside != 0 {
            return Err(MonomialError::NotInvariant);
        }
    }
    Ok(factors_of_cycles(m, cycles))
}

fn factors_of_cycles(m: &MonomialMatrix, cycles: Vec<Vec<usize>>) -> CharFactors {
    let lm = mask(m.level);
    let mut blocks: Vec<(u64, RootOfUnity)> = cycles
        .into_iter()
        .map(|cyc| {
            let e = cyc.iter().fold(0u64, |acc, &j| acc.wrapping_add(m.coeffs[j]) & lm);
            (cyc.len() as u64, RootOfUnity { level: m.level, exp: e })
        })
        .collect();
    blocks.sort();
    CharFactors { level: m.level, blocks }
}

/// Eigenvalues with multiplicity, each root stored at its minimal level.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigenMultiset {
    pub counts: BTreeMap<RootOfUnity, u64>,
}

impl EigenMultiset {
    pub fn add(&mut self, root: RootOfUnity, mult: u64) {
        if mult > 0 {
            *self.counts.entry(root.reduced()).or_default() += mult;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, root: &RootOfUnity) -> u64 {
        self.counts.get(&root.reduced()).copied().unwrap_or(0)
    }

    /// Eigenvalues of a permutation matrix with `cycle_counts[c]` cycles of
    /// length `2^c`.
    pub fn of_cycle_type(cycle_counts: &BTreeMap<u32, u64>) -> Self {
        let mut out = EigenMultiset::default();
        for (&c, &j) in cycle_counts {
            for e in 0..1u64 << c {
                out.add(RootOfUnity { level: c, exp: e }, j);
            }
        }
        out
    }

    /// Multiplicity of each primitive `2^d`-th root, for `d = 0..=max_level`.
    pub fn level_multiplicities(&self, d: u32) -> Vec<u64> {
        if d == 0 {
            return vec![self.count(&RootOfUnity::one(0))];
        }
        (0..1u64 << (d - 1))
            .map(|i| self.count(&RootOfUnity { level: d, exp: 2 * i + 1 }))
            .collect()
    }

    pub fn max_level(&self) -> u32 {
        self.counts.keys().map(|r| r.level).max().unwrap_or(0)
    }
}

/// Roots of `∏ (x^{2^b} - ω)`: the `2^b` solutions of `x^{2^b} = ζ_N^e`
/// are `ζ_{N+b}^{e + i 2^N}`.
pub fn eigen_multiset(f: &CharFactors) -> Result<EigenMultiset, MonomialError> {
    let mut out = EigenMultiset::default();
    for (len, w) in &f.blocks {
        if !len.is_power_of_two() {
            return Err(MonomialError::NonPowerOfTwoCycle(*len));
        }
        let b = len.trailing_zeros();
        let level = w.level + b;
        let base = w.exp;
        for i in 0..*len {
            out.add(RootOfUnity { level, exp: base + (i << w.level) }, 1);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    /// Primitive roots of the same order occur with different multiplicities.
    NonConstantMultiplicity,
    /// `m(d) < m(d+1)`: more primitive `2^{d+1}`-th roots than `2^d`-th.
    NotMonotone,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PermVerdict {
    /// Similar to a permutation matrix with `cycle_counts[c]` cycles of
    /// length `2^c`.
    PermutationType { cycle_counts: BTreeMap<u32, u64>, diagonalizable: bool },
    Violation { level: u32, kind: ViolationKind, multiplicities: Vec<u64> },
}

impl PermVerdict {
    pub fn is_permutation_type(&self) -> bool {
        matches!(self, PermVerdict::PermutationType { .. })
    }
}

impl fmt::Display for PermVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermVerdict::PermutationType { cycle_counts, .. } => {
                let parts: Vec<String> =
                    cycle_counts.iter().map(|(c, j)| format!("{j} cycle(s) of length {}", 1u64 << c)).collect();
                write!(f, "permutation type: {}", parts.join(", "))
            }
            PermVerdict::Violation { level, kind: ViolationKind::NonConstantMultiplicity, multiplicities } => {
                write!(f, "primitive 2^{level}-th roots have unequal multiplicities {multiplicities:?}")
            }
            PermVerdict::Violation { level, kind: ViolationKind::NotMonotone, multiplicities } => write!(
                f,
                "multiplicity of primitive 2^{level}-th roots ({}) is below that of 2^{}-th roots ({})",
                multiplicities[0],
                level + 1,
                multiplicities[1]
            ),
        }
    }
}

/// Decides whether a monomial matrix with these characteristic factors is
/// similar to a permutation matrix.
///
/// Monomial matrices of finite order are diagonalizable, so only the
/// eigenvalue multiset matters: a permutation matrix with `j_c` cycles of
/// length `2^c` has each primitive `2^d`-th root with multiplicity
/// `m(d) = Σ_{c >= d} j_c`. That is possible exactly when `m` is constant on
/// each level and non-increasing in `d`, with `j_c = m(c) - m(c+1)`.
pub fn perm_similarity(f: &CharFactors) -> Result<PermVerdict, MonomialError> {
    let eig = eigen_multiset(f)?;
    let top = eig.max_level();
    let mut levels = Vec::with_capacity(top as usize + 1);
    for d in 0..=top {
        let mults = eig.level_multiplicities(d);
        if mults.iter().any(|&m| m != mults[0]) {
            return Ok(PermVerdict::Violation {
                level: d,
                kind: ViolationKind::NonConstantMultiplicity,
                multiplicities: mults,
            });
        }
        levels.push(mults[0]);
    }
    for d in 0..top as usize {
        if levels[d] < levels[d + 1] {
            return Ok(PermVerdict::Violation {
                level: d as u32,
                kind: ViolationKind::NotMonotone,
                multiplicities: vec![levels[d], levels[d + 1]],
            });
        }
    }
    let mut cycle_counts = BTreeMap::new();
    for c in 0..=top as usize {
        let next = levels.get(c + 1).copied().unwrap_or(0);
        let j = levels[c] - next;
        if j > 0 {
            cycle_counts.insert(c as u32, j);
        }
    }
    Ok(PermVerdict::PermutationType { cycle_counts, diagonalizable: true })
}

/// Cycle type of a permutation whose cycles all have power-of-two length.
pub fn cycle_type(perm: &[usize]) -> BTreeMap<u32, u64> {
    let m = MonomialMatrix { n: perm.len().trailing_zeros(), level: 0, perm: perm.to_vec(), coeffs: vec![0; perm.len()] };
    let mut out = BTreeMap::new();
    for cyc in m.cycles() {
        assert!(cyc.len().is_power_of_two());
        *out.entry(cyc.len().trailing_zeros()).or_default() += 1;
    }
    out
}
