//! Arithmetic on the residue ring `Z_{2^n}` and its unit group.
//!
//! Everything in the crate is indexed by residues mod `2^n`: the eigen-lines of
//! the maximal cycle `C`, the exponents of its powers, and the multipliers `r`
//! with `A^{-1} C A = C^r`. The unit group `Z_{2^n}^*` is `<5> x <-1>` for
//! `n >= 3`; every unit is written `eps + 2^b v` with `v` odd, which fixes its
//! order as `2^{n-b}`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported modulus exponent.
pub const MAX_EXPONENT: u32 = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResidueError {
    #[error("valuation undefined for 0")]
    ValuationOfZero,
    #[error("{value} is not a unit modulo 2^{n}")]
    NotAUnit { value: u64, n: u32 },
    #[error("modulus exponent {0} out of range 1..={MAX_EXPONENT}")]
    BadModulus(u32),
    #[error("geometric sum of r = 1 is the trivial sum 2^a; handle it separately")]
    TrivialGeometricSum,
    #[error("pairing requires r ≡ 1 (mod 4) of canonical form, got r = {r} mod 2^{n}")]
    PairingForm { r: u64, n: u32 },
}

/// 2-adic valuation of a nonzero integer.
pub fn v2(k: i128) -> Result<u32, ResidueError> {
    if k == 0 {
        Err(ResidueError::ValuationOfZero)
    } else {
        Ok(k.trailing_zeros())
    }
}

/// 2-adic valuation of a nonzero big integer.
pub fn v2_big(k: &BigInt) -> Result<u64, ResidueError> {
    k.trailing_zeros().ok_or(ResidueError::ValuationOfZero)
}

#[inline]
pub(crate) fn mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Inverse of an odd number modulo `2^n` (Newton iteration over `u64`).
pub(crate) fn odd_inverse(x: u64, n: u32) -> u64 {
    debug_assert!(x & 1 == 1);
    let mut y = x;
    for _ in 0..6 {
        y = y.wrapping_mul(2u64.wrapping_sub(x.wrapping_mul(y)));
    }
    y & mask(n)
}

/// An element of `Z_{2^n}`, always stored reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    value: u64,
    n: u32,
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod 2^{})", self.value, self.n)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Residue {
    pub fn new(value: i128, n: u32) -> Result<Self, ResidueError> {
        if n == 0 || n > MAX_EXPONENT {
            return Err(ResidueError::BadModulus(n));
        }
        let m = 1i128 << n;
        Ok(Residue { value: value.rem_euclid(m) as u64, n })
    }

    /// Unchecked constructor for callers that already hold a valid `n`.
    pub(crate) fn raw(value: u64, n: u32) -> Self {
        Residue { value: value & mask(n), n }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn modulus(self) -> u64 {
        1u64 << self.n
    }

    pub fn is_unit(self) -> bool {
        self.value & 1 == 1
    }

    pub fn add(self, other: Residue) -> Residue {
        debug_assert_eq!(self.n, other.n);
        Residue::raw(self.value.wrapping_add(other.value), self.n)
    }

    pub fn sub(self, other: Residue) -> Residue {
        debug_assert_eq!(self.n, other.n);
        Residue::raw(self.value.wrapping_sub(other.value), self.n)
    }

    pub fn mul(self, other: Residue) -> Residue {
        debug_assert_eq!(self.n, other.n);
        Residue::raw(self.value.wrapping_mul(other.value), self.n)
    }

    pub fn neg(self) -> Residue {
        Residue::raw(self.value.wrapping_neg(), self.n)
    }

    pub fn pow(self, mut e: u64) -> Residue {
        let mut base = self.value;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.wrapping_mul(base);
            }
            base = base.wrapping_mul(base);
            e >>= 1;
        }
        Residue::raw(acc, self.n)
    }

    pub fn inverse(self) -> Option<Residue> {
        self.is_unit()
            .then(|| Residue::raw(odd_inverse(self.value, self.n), self.n))
    }

    /// The residue viewed modulo `2^m` for `m <= n`.
    pub fn reduce_to(self, m: u32) -> Residue {
        assert!(m >= 1 && m <= self.n);
        Residue::raw(self.value, m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// A unit `r = eps + 2^b v` of `Z_{2^n}` together with its order.
///
/// `v` is odd except for `r = ±1`, where `v = 0` and `b = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitElement {
    residue: Residue,
    sign: Sign,
    b: u32,
    v: u64,
    order_log: u32,
}

impl UnitElement {
    pub fn residue(&self) -> Residue {
        self.residue
    }

    pub fn value(&self) -> u64 {
        self.residue.value
    }

    pub fn n(&self) -> u32 {
        self.residue.n
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    /// `log2` of the multiplicative order.
    pub fn order_log(&self) -> u32 {
        self.order_log
    }

    pub fn order(&self) -> u64 {
        1u64 << self.order_log
    }

    pub fn is_one(&self) -> bool {
        self.residue.value == 1
    }

    pub fn is_minus_one(&self) -> bool {
        self.residue.n >= 2 && self.residue.value == mask(self.residue.n)
    }

    pub fn inverse(&self) -> UnitElement {
        unit_decompose(self.residue.inverse().expect("unit")).expect("unit")
    }

    pub fn mul(&self, other: &UnitElement) -> UnitElement {
        unit_decompose(self.residue.mul(other.residue)).expect("unit")
    }

    pub fn pow(&self, e: u64) -> UnitElement {
        unit_decompose(self.residue.pow(e)).expect("unit")
    }
}

/// Writes an odd residue as `eps + 2^b v` and reads off its order.
pub fn unit_decompose(r: Residue) -> Result<UnitElement, ResidueError> {
    if !r.is_unit() {
        return Err(ResidueError::NotAUnit { value: r.value, n: r.n });
    }
    let n = r.n;
    let value = r.value;
    let full = mask(n);
    let unit = |sign, b, v, order_log| UnitElement { residue: r, sign, b, v, order_log };
    if value == 1 {
        return Ok(unit(Sign::Plus, n, 0, 0));
    }
    if value == full {
        // n >= 2 here since value != 1
        return Ok(unit(Sign::Minus, n, 0, 1));
    }
    // n >= 3 from here on: Z_2^* and Z_4^* only hold ±1.
    if value & 3 == 1 {
        let w = value - 1;
        let b = w.trailing_zeros();
        Ok(unit(Sign::Plus, b, w >> b, n - b))
    } else {
        let w = value + 1;
        let b = w.trailing_zeros();
        Ok(unit(Sign::Minus, b, w >> b, n - b))
    }
}

/// Convenience: decompose an integer representative.
pub fn unit(value: i128, n: u32) -> Result<UnitElement, ResidueError> {
    unit_decompose(Residue::new(value, n)?)
}

/// Closure of a set of units under multiplication, as a sorted list.
pub fn unit_closure(n: u32, gens: &[u64]) -> Vec<u64> {
    let m = mask(n);
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    seen.insert(1);
    let mut frontier = vec![1u64];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = x.wrapping_mul(g) & m;
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// The subgroups of `Z_{2^n}^*`, up to the canonical generators below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubgroupDescriptor {
    Trivial,
    MinusOne,
    /// `<1 + 2^{n-a}>`, order `2^a`.
    CyclicPlus(u32),
    /// `<-1 + 2^{n-a}>`, order `2^a`.
    CyclicMinus(u32),
    /// `<-1> x <1 + 2^{n-a}>`, order `2^{a+1}`.
    Product(u32),
}

impl fmt::Display for SubgroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupDescriptor::Trivial => write!(f, "trivial"),
            SubgroupDescriptor::MinusOne => write!(f, "<-1>"),
            SubgroupDescriptor::CyclicPlus(a) => write!(f, "<1+2^(n-{a})>"),
            SubgroupDescriptor::CyclicMinus(a) => write!(f, "<-1+2^(n-{a})>"),
            SubgroupDescriptor::Product(a) => write!(f, "<-1>x<1+2^(n-{a})>"),
        }
    }
}

impl SubgroupDescriptor {
    pub fn order_log(&self) -> u32 {
        match *self {
            SubgroupDescriptor::Trivial => 0,
            SubgroupDescriptor::MinusOne => 1,
            SubgroupDescriptor::CyclicPlus(a) | SubgroupDescriptor::CyclicMinus(a) => a,
            SubgroupDescriptor::Product(a) => a + 1,
        }
    }

    pub fn order(&self) -> u64 {
        1u64 << self.order_log()
    }

    pub fn is_cyclic(&self) -> bool {
        !matches!(self, SubgroupDescriptor::Product(_))
    }

    /// Canonical generators: one for cyclic subgroups (none for the trivial
    /// one), `[1 + 2^{n-a}, -1]` for the product.
    pub fn generators(&self, n: u32) -> Vec<u64> {
        let m = mask(n);
        match *self {
            SubgroupDescriptor::Trivial => vec![],
            SubgroupDescriptor::MinusOne => vec![m],
            SubgroupDescriptor::CyclicPlus(a) => vec![(1 + (1u64 << (n - a))) & m],
            SubgroupDescriptor::CyclicMinus(a) => vec![((1u64 << (n - a)).wrapping_sub(1)) & m],
            SubgroupDescriptor::Product(a) => vec![(1 + (1u64 << (n - a))) & m, m],
        }
    }

    /// The element set, sorted.
    pub fn elements(&self, n: u32) -> Vec<u64> {
        unit_closure(n, &self.generators(n))
    }

    /// Every subgroup of `Z_{2^n}^*`, in a fixed order.
    pub fn all(n: u32) -> Vec<SubgroupDescriptor> {
        let mut out = vec![SubgroupDescriptor::Trivial];
        if n >= 2 {
            out.push(SubgroupDescriptor::MinusOne);
        }
        if n >= 3 {
            for a in 1..=n - 2 {
                out.push(SubgroupDescriptor::CyclicPlus(a));
            }
            for a in 1..=n - 2 {
                out.push(SubgroupDescriptor::CyclicMinus(a));
            }
            for a in 1..=n - 2 {
                out.push(SubgroupDescriptor::Product(a));
            }
        }
        out
    }
}

/// Identifies the subgroup generated by `gens` among the canonical forms.
///
/// The prediction comes from the closure's size, whether it holds `-1`, and
/// whether it stays inside `<5>` (elements ≡ 1 mod 4); it is then confirmed
/// by comparing element sets.
pub fn subgroup_classify(n: u32, gens: &[UnitElement]) -> SubgroupDescriptor {
    let values: Vec<u64> = gens.iter().map(|g| g.value()).collect();
    let closure = unit_closure(n, &values);
    let size_log = closure.len().trailing_zeros();
    let minus_one = mask(n);
    let predicted = if closure.len() == 1 {
        SubgroupDescriptor::Trivial
    } else if n >= 2 && closure.binary_search(&minus_one).is_ok() {
        if size_log == 1 {
            SubgroupDescriptor::MinusOne
        } else {
            SubgroupDescriptor::Product(size_log - 1)
        }
    } else if closure.iter().all(|&x| x & 3 == 1) {
        SubgroupDescriptor::CyclicPlus(size_log)
    } else {
        SubgroupDescriptor::CyclicMinus(size_log)
    };
    if predicted.elements(n) == closure {
        return predicted;
    }
    // Every subgroup is one of the canonical ones; fall back to a search.
    SubgroupDescriptor::all(n)
        .into_iter()
        .find(|d| d.elements(n) == closure)
        .expect("every subgroup of Z_{2^n}^* has a canonical form")
}

/// `1 + r + ... + r^{j-1}` modulo `2^n`, summed term by term.
pub fn geom_sum(r: Residue, j: u64) -> Residue {
    let m = mask(r.n);
    let mut term = 1u64;
    let mut acc = 0u64;
    for _ in 0..j {
        acc = acc.wrapping_add(term) & m;
        term = term.wrapping_mul(r.value) & m;
    }
    Residue::raw(acc, r.n)
}

/// Closed-form 2-adic valuation of `1 + r + ... + r^{ord(r)-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeomSumValuation {
    Exact(u32),
    /// `r = -1`: the sum vanishes modulo `2^n`.
    ZeroSum,
}

pub fn geom_sum_valuation(r: &UnitElement) -> Result<GeomSumValuation, ResidueError> {
    if r.is_one() {
        return Err(ResidueError::TrivialGeometricSum);
    }
    if r.is_minus_one() {
        return Ok(GeomSumValuation::ZeroSum);
    }
    Ok(match r.sign() {
        Sign::Plus => GeomSumValuation::Exact(r.order_log()),
        Sign::Minus => GeomSumValuation::Exact(r.n() - 1),
    })
}

/// Index sets that are closed under every multiplication map `j -> r j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    All,
    Units,
    Evens,
    /// Even residues other than `0` and `2^{n-1}`.
    EvensMinusFixed,
    /// All residues other than `0` and `2^{n-1}`.
    AllMinusFixed,
}

impl Domain {
    pub fn contains(self, j: u64, n: u32) -> bool {
        let half = 1u64 << (n - 1);
        let fixed = j == 0 || j == half;
        match self {
            Domain::All => true,
            Domain::Units => j & 1 == 1,
            Domain::Evens => j & 1 == 0,
            Domain::EvensMinusFixed => j & 1 == 0 && !fixed,
            Domain::AllMinusFixed => !fixed,
        }
    }
}

/// One orbit of a multiplication map, listed in power order from its start.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orbit {
    pub elements: Vec<u64>,
}

impl Orbit {
    pub fn start(&self) -> u64 {
        self.elements[0]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> u64 {
        *self.elements.iter().min().expect("non-empty orbit")
    }

    pub fn as_set(&self) -> BTreeSet<u64> {
        self.elements.iter().copied().collect()
    }

    fn trace(r: u64, start: u64, n: u32) -> Orbit {
        let m = mask(n);
        let mut elements = vec![start];
        let mut x = start.wrapping_mul(r) & m;
        while x != start {
            elements.push(x);
            x = x.wrapping_mul(r) & m;
        }
        Orbit { elements }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub multiplier: UnitElement,
    pub orbits: Vec<Orbit>,
}

impl OrbitPartition {
    pub fn domain_size(&self) -> usize {
        self.orbits.iter().map(Orbit::len).sum()
    }
}

/// Orbits of `j -> r j` on `domain`; each orbit starts at its smallest element
/// and orbits are listed by increasing start.
pub fn orbits(r: &UnitElement, domain: Domain) -> OrbitPartition {
    let n = r.n();
    let size = 1usize << n;
    let mut seen = vec![false; size];
    let mut out = Vec::new();
    for j in 0..size as u64 {
        if seen[j as usize] || !domain.contains(j, n) {
            continue;
        }
        let orbit = Orbit::trace(r.value(), j, n);
        for &x in &orbit.elements {
            seen[x as usize] = true;
        }
        out.push(orbit);
    }
    OrbitPartition { multiplier: *r, orbits: out }
}

/// Orbits off `{0, 2^{n-1}}` grouped with their negatives.
///
/// `pairs[t] = (gamma, -gamma)` where `gamma` starts at the smallest element of
/// `gamma ∪ -gamma` and the partner lists `-x` for each `x` of `gamma` in the
/// same order. Orbits equal to their own negative land in `self_paired`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPairing {
    pub multiplier: UnitElement,
    pub pairs: Vec<(Orbit, Orbit)>,
    pub self_paired: Vec<Orbit>,
    pub fixed: [u64; 2],
}

/// Pairs orbits with their negatives for any unit `r`, reporting self-paired
/// orbits instead of forcing them into a pair.
pub fn pair_orbits_by_negation(r: &UnitElement) -> OrbitPairing {
    let n = r.n();
    let m = mask(n);
    let size = 1usize << n;
    let half = 1u64 << (n - 1);
    let mut seen = vec![false; size];
    let mut pairs = Vec::new();
    let mut self_paired = Vec::new();
    for j in 0..size as u64 {
        if seen[j as usize] || j == 0 || j == half {
            continue;
        }
        let gamma = Orbit::trace(r.value(), j, n);
        let partner = Orbit {
            elements: gamma.elements.iter().map(|&x| x.wrapping_neg() & m).collect(),
        };
        for &x in gamma.elements.iter().chain(partner.elements.iter()) {
            seen[x as usize] = true;
        }
        if gamma.as_set() == partner.as_set() {
            self_paired.push(gamma);
        } else {
            pairs.push((gamma, partner));
        }
    }
    OrbitPairing { multiplier: *r, pairs, self_paired, fixed: [0, half] }
}

/// Orbit pairing for `r ≡ 1 (mod 4)`.
///
/// For such `r`, `r^i + 1 ≡ 2 (mod 4)`, so `-j = r^i j` forces
/// `j ∈ {0, 2^{n-1}}` and no orbit is self-paired.
pub fn orbit_pairing(r: &UnitElement) -> Result<OrbitPairing, ResidueError> {
    let n = r.n();
    if n >= 2 && r.value() & 3 != 1 {
        return Err(ResidueError::PairingForm { r: r.value(), n });
    }
    let pairing = pair_orbits_by_negation(r);
    debug_assert!(pairing.self_paired.is_empty());
    Ok(pairing)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(r: u64, n: u32) -> u64 {
        let m = mask(n);
        let mut x = r & m;
        let mut k = 1;
        while x != 1 {
            x = x.wrapping_mul(r) & m;
            k += 1;
        }
        k
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(v2(12), Ok(2));
        // binomial(8, 2) = 28
        assert_eq!(v2(28), Ok(3 - 1));
        for n in 1..20 {
            assert_eq!(v2(1i128 << (n - 1)), Ok(n - 1));
        }
        assert_eq!(v2(0), Err(ResidueError::ValuationOfZero));
        assert_eq!(v2(-24), Ok(3));
    }

    #[test]
    fn decompose_examples() {
        let five = unit(5, 5).unwrap();
        assert_eq!(five.order(), 8);
        let seven = unit(7, 4).unwrap();
        assert_eq!((seven.sign(), seven.b(), seven.v(), seven.order()), (Sign::Minus, 3, 1, 2));
        assert_eq!(unit(1, 6).unwrap().order(), 1);
        assert_eq!(unit(3, 2).unwrap().order(), 2);
        assert_eq!(unit(1, 1).unwrap().order(), 1);
        assert_eq!(
            unit_decompose(Residue::new(6, 4).unwrap()),
            Err(ResidueError::NotAUnit { value: 6, n: 4 })
        );
    }

    #[test]
    fn decomposition_reconstructs_value() {
        for n in 3..=10u32 {
            for r in (1..(1u64 << n)).step_by(2) {
                let u = unit(r as i128, n).unwrap();
                if u.v() == 0 {
                    assert!(u.is_one() || u.is_minus_one());
                    continue;
                }
                let eps: i128 = if u.sign() == Sign::Plus { 1 } else { -1 };
                let rebuilt = Residue::new(eps + ((u.v() as i128) << u.b()), n).unwrap();
                assert_eq!(rebuilt.value(), r);
                assert!(u.v() & 1 == 1 && u.b() >= 2 && u.b() < n);
                assert!(u.v() < 1 << (n - u.b()));
            }
        }
    }

    #[test]
    fn order_matches_brute_force() {
        for n in 1..=12u32 {
            for r in (1..(1u64 << n)).step_by(2) {
                assert_eq!(unit(r as i128, n).unwrap().order(), brute_order(r, n), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn classify_examples() {
        let g = |vals: &[i128], n| -> Vec<UnitElement> {
            vals.iter().map(|&v| unit(v, n).unwrap()).collect()
        };
        assert_eq!(subgroup_classify(5, &g(&[15], 5)), SubgroupDescriptor::CyclicMinus(1));
        let prod = subgroup_classify(5, &g(&[17, 31], 5));
        assert_eq!(prod, SubgroupDescriptor::Product(1));
        assert_eq!(prod.elements(5), vec![1, 15, 17, 31]);
        assert_eq!(subgroup_classify(5, &g(&[1], 5)), SubgroupDescriptor::Trivial);
        assert_eq!(subgroup_classify(4, &g(&[], 4)), SubgroupDescriptor::Trivial);
        // 3 = -1 + 2^{3-1}: the order-2 subgroup <3> of Z_8^*
        assert_eq!(subgroup_classify(3, &g(&[3], 3)), SubgroupDescriptor::CyclicMinus(1));
        assert_eq!(subgroup_classify(2, &g(&[3], 2)), SubgroupDescriptor::MinusOne);
        // mixed generators whose product is the canonical one
        assert_eq!(subgroup_classify(6, &g(&[-1 + 16, -1], 6)), SubgroupDescriptor::Product(2));
    }

    #[test]
    fn classify_covers_every_subgroup() {
        // brute-force: every subgroup is generated by at most two elements
        for n in 1..=8u32 {
            let units: Vec<u64> = (1..(1u64 << n)).step_by(2).collect();
            let mut seen = BTreeSet::new();
            for &x in &units {
                for &y in &units {
                    let closure = unit_closure(n, &[x, y]);
                    if !seen.insert(closure.clone()) {
                        continue;
                    }
                    let gens = [unit(x as i128, n).unwrap(), unit(y as i128, n).unwrap()];
                    let d = subgroup_classify(n, &gens);
                    assert_eq!(d.elements(n), closure, "n={n} gens=({x},{y})");
                    assert_eq!(d.order() as usize, closure.len());
                }
            }
            assert_eq!(seen.len(), SubgroupDescriptor::all(n).len(), "n={n}");
        }
    }

    #[test]
    fn geom_sum_examples() {
        assert_eq!(geom_sum(Residue::new(9, 5).unwrap(), 4).value(), 20);
        assert_eq!(geom_sum(Residue::new(1, 5).unwrap(), 5).value(), 5);
        assert_eq!(geom_sum(Residue::new(-1, 5).unwrap(), 2).value(), 0);
    }

    #[test]
    fn geom_sum_valuation_examples() {
        assert_eq!(geom_sum_valuation(&unit(9, 5).unwrap()), Ok(GeomSumValuation::Exact(2)));
        assert_eq!(geom_sum_valuation(&unit(7, 5).unwrap()), Ok(GeomSumValuation::Exact(4)));
        assert_eq!(geom_sum_valuation(&unit(31, 5).unwrap()), Ok(GeomSumValuation::ZeroSum));
        assert_eq!(
            geom_sum_valuation(&unit(1, 5).unwrap()),
            Err(ResidueError::TrivialGeometricSum)
        );
    }

    fn orbit_sets(p: &OrbitPartition) -> BTreeSet<Vec<u64>> {
        p.orbits.iter().map(|o| o.elements.clone()).collect()
    }

    #[test]
    fn orbit_examples() {
        let p = orbits(&unit(3, 3).unwrap(), Domain::Units);
        assert_eq!(orbit_sets(&p), [vec![1, 3], vec![5, 7]].into_iter().collect());

        let p = orbits(&unit(5, 4).unwrap(), Domain::All);
        let expected: BTreeSet<Vec<u64>> = [
            vec![0],
            vec![8],
            vec![4],
            vec![12],
            vec![1, 5, 9, 13],
            vec![3, 15, 11, 7],
            vec![2, 10],
            vec![6, 14],
        ]
        .into_iter()
        .collect();
        assert_eq!(orbit_sets(&p), expected);

        let p = orbits(&unit(1, 4).unwrap(), Domain::All);
        assert!(p.orbits.iter().all(|o| o.len() == 1));
        assert_eq!(p.orbits.len(), 16);
    }

    #[test]
    fn pairing_examples() {
        let p = orbit_pairing(&unit(5, 4).unwrap()).unwrap();
        let pairs: Vec<(Vec<u64>, Vec<u64>)> =
            p.pairs.iter().map(|(a, b)| (a.elements.clone(), b.elements.clone())).collect();
        assert_eq!(
            pairs,
            vec![
                (vec![1, 5, 9, 13], vec![15, 11, 7, 3]),
                (vec![2, 10], vec![14, 6]),
                (vec![4], vec![12]),
            ]
        );
        assert!(p.self_paired.is_empty());
        assert_eq!(p.fixed, [0, 8]);

        // r = 3 at n = 3 is not ≡ 1 (mod 4); the lenient pairing shows why.
        let r = unit(3, 3).unwrap();
        assert_eq!(orbit_pairing(&r), Err(ResidueError::PairingForm { r: 3, n: 3 }));
        let lenient = pair_orbits_by_negation(&r);
        assert_eq!(lenient.self_paired, vec![Orbit { elements: vec![2, 6] }]);
        assert_eq!(lenient.pairs.len(), 1);

        for n in 3..=9u32 {
            let q = 1u64 << (n - 2);
            for a in 1..=n - 2 {
                let r = unit(1 + (1i128 << (n - a)), n).unwrap();
                let p = orbit_pairing(&r).unwrap();
                let hit = p.pairs.iter().find(|(g, _)| g.elements == vec![q]).unwrap();
                assert_eq!(hit.1.elements, vec![3 * q]);
            }
        }
    }
}
