//! Independent checks that share no decision logic with the engine.
//!
//! Dense matrices here have entries in `Z[ζ]` stored as plain integer
//! coefficient vectors, so the Vandermonde check `T^{-1} M' T` runs on exact
//! integers: `T^{-1} = conj(T)^T / 2^n`, and the scaled product must have
//! entries `0` or `2^n`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{CycloNum, CycloPoly};
use crate::group::GroupSpec;
use crate::monomial::{EigenMultiset, MonomialMatrix};
use crate::synth::Certificate;

/// Largest dimension `brute_char_poly` accepts.
pub const MAX_BRUTE_DIM: usize = 16;
/// Largest group the verifier will enumerate.
pub const MAX_VERIFY_ELEMENTS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("dimension {0} exceeds the brute-force limit {MAX_BRUTE_DIM}")]
    TooLarge(usize),
}

/// An element of `Z[ζ_{2^level}]`, coefficients on `1, ζ, ..., ζ^{h-1}`
/// with `ζ^h = -1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntCyclo {
    level: u32,
    coeffs: Vec<i64>,
}

impl IntCyclo {
    pub fn zero(level: u32) -> Self {
        IntCyclo { level, coeffs: vec![0; 1usize << (level - 1)] }
    }

    pub fn root(level: u32, e: u64) -> Self {
        let mut out = Self::zero(level);
        out.add_root(e, 1);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `Some(v)` when the value is the integer `v`.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    fn add_root(&mut self, e: u64, c: i64) {
        let h = self.coeffs.len() as u64;
        let e = e % (2 * h);
        if e < h {
            self.coeffs[e as usize] += c;
        } else {
            self.coeffs[(e - h) as usize] -= c;
        }
    }

    fn add_product(&mut self, a: &IntCyclo, b: &IntCyclo) {
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                if y != 0 {
                    self.add_root((i + j) as u64, x * y);
                }
            }
        }
    }

    pub fn to_cyclo(&self) -> CycloNum {
        let mut out = CycloNum::zero(self.level);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out.add_root_term(i as u64, num_rational::BigRational::from_integer(c.into()));
            }
        }
        out
    }
}

/// A square matrix over `Z[ζ_{2^level}]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    pub dim: usize,
    pub level: u32,
    pub entries: Vec<IntCyclo>,
}

impl DenseMatrix {
    pub fn zero(dim: usize, level: u32) -> Self {
        DenseMatrix { dim, level, entries: vec![IntCyclo::zero(level); dim * dim] }
    }

    pub fn scalar_identity(dim: usize, level: u32, v: i64) -> Self {
        let mut out = Self::zero(dim, level);
        for i in 0..dim {
            out.entries[i * dim + i].coeffs[0] = v;
        }
        out
    }

    pub fn get(&self, i: usize, j: usize) -> &IntCyclo {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.dim, self.level), (rhs.dim, rhs.level));
        let d = self.dim;
        let mut out = Self::zero(d, self.level);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * d + j].add_product(a, b);
                    }
                }
            }
        }
        out
    }

    /// If every entry is `0` or `scale` with exactly one `scale` per row and
    /// column, the permutation `k -> row of the nonzero entry in column k`.
    pub fn scaled_permutation(&self, scale: i64) -> Option<Vec<usize>> {
        let d = self.dim;
        let mut perm = vec![usize::MAX; d];
        let mut row_hit = vec![false; d];
        for i in 0..d {
            for j in 0..d {
                match self.get(i, j).as_integer()? {
                    0 => {}
                    v if v == scale => {
                        if perm[j] != usize::MAX || row_hit[i] {
                            return None;
                        }
                        perm[j] = i;
                        row_hit[i] = true;
                    }
                    _ => return None,
                }
            }
        }
        perm.iter().all(|&p| p != usize::MAX).then_some(perm)
    }
}

/// The matrix of `m` in the basis `e'_j = ζ^{t_j} e_j`, written out in full:
/// entry `(perm(j), j)` is `ζ^{c_j + t_j - t_{perm(j)}}`.
pub fn dense_expand(m: &MonomialMatrix, rescale: &[u64]) -> DenseMatrix {
    let d = m.dim();
    let level = m.level().max(1);
    let lift = level - m.level();
    let mut out = DenseMatrix::zero(d, level);
    for j in 0..d {
        let i = m.perm()[j];
        let e = (m.coeffs()[j] as i128 + rescale[j] as i128 - rescale[i] as i128).rem_euclid(1i128 << m.level()) as u64;
        out.entries[i * d + j] = IntCyclo::root(level, e << lift);
    }
    out
}

/// `T` with `T[j][k] = λ^{jk}` and `2^n T^{-1} = conj(T)^T`.
pub fn vandermonde(n: u32, level: u32) -> (DenseMatrix, DenseMatrix) {
    let d = 1usize << n;
    let level = level.max(1);
    let step = 1u64 << (level - n);
    let full = 1u64 << level;
    let mut t = DenseMatrix::zero(d, level);
    let mut t_inv_scaled = DenseMatrix::zero(d, level);
    for j in 0..d {
        for k in 0..d {
            let e = (j as u64 * k as u64 * step) % full;
            t.entries[j * d + k] = IntCyclo::root(level, e);
            t_inv_scaled.entries[k * d + j] = IntCyclo::root(level, (full - e) % full);
        }
    }
    (t, t_inv_scaled)
}

/// `T^{-1} M' T` as a permutation, when it is a literal 0/1 permutation matrix.
pub fn vandermonde_conjugate(
    m_dense: &DenseMatrix,
    t: &DenseMatrix,
    t_inv_scaled: &DenseMatrix,
) -> Option<Vec<usize>> {
    let scale = m_dense.dim as i64;
    t_inv_scaled.mul(&m_dense.mul(t)).scaled_permutation(scale)
}

/// `det(xI - M)` by cofactor expansion along rows, memoized on the set of
/// columns already used.
pub fn brute_char_poly(m: &DenseMatrix) -> Result<CycloPoly, OracleError> {
    let d = m.dim;
    if d > MAX_BRUTE_DIM {
        return Err(OracleError::TooLarge(d));
    }
    let level = m.level;
    let entries: Vec<Vec<Option<CycloPoly>>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let c = m.get(i, j).to_cyclo();
                    let mut p = CycloPoly::constant(-&c);
                    if i == j {
                        p = &p + &CycloPoly::monomial(1, CycloNum::one(level));
                    }
                    (!p.is_zero()).then_some(p)
                })
                .collect()
        })
        .collect();
    let mut memo: HashMap<u32, CycloPoly> = HashMap::new();
    Ok(cofactor(&entries, 0, d, level, &mut memo))
}

fn cofactor(
    entries: &[Vec<Option<CycloPoly>>],
    used: u32,
    d: usize,
    level: u32,
    memo: &mut HashMap<u32, CycloPoly>,
) -> CycloPoly {
    let row = used.count_ones() as usize;
    if row == d {
        return CycloPoly::one(level);
    }
    if let Some(p) = memo.get(&used) {
        return p.clone();
    }
    let mut acc = CycloPoly::zero(level);
    for col in 0..d {
        if used & (1 << col) != 0 {
            continue;
        }
        let Some(entry) = &entries[row][col] else { continue };
        let rest = cofactor(entries, used | (1 << col), d, level, memo);
        if rest.is_zero() {
            continue;
        }
        let term = entry * &rest;
        let inversions = (used >> (col + 1)).count_ones();
        acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    memo.insert(used, acc.clone());
    acc
}

/// Searches for cycle lengths `ℓ_1 >= ℓ_2 >= ...` whose roots of unity,
/// pooled, are exactly the given eigenvalues. Lengths are not restricted to
/// powers of two. Returns the lengths found, if any.
pub fn brute_force_factorization(eig: &EigenMultiset) -> Option<Vec<u64>> {
    let mut pool: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    for (root, &mult) in &eig.counts {
        let den = 1u64 << root.level;
        *pool.entry(reduce(root.exp, den)).or_default() += mult;
    }
    let total: u64 = pool.values().sum();
    let mut chosen = Vec::new();
    search(&mut pool, total, total, &mut chosen).then_some(chosen)
}

fn reduce(num: u64, den: u64) -> (u64, u64) {
    if num == 0 {
        return (0, 1);
    }
    let g = gcd(num, den);
    (num / g, den / g)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn search(pool: &mut BTreeMap<(u64, u64), u64>, remaining: u64, max_len: u64, chosen: &mut Vec<u64>) -> bool {
    if remaining == 0 {
        return true;
    }
    for len in (1..=max_len.min(remaining)).rev() {
        let roots: Vec<(u64, u64)> = (0..len).map(|i| reduce(i, len)).collect();
        if !roots.iter().all(|r| pool.get(r).copied().unwrap_or(0) > 0) {
            continue;
        }
        for r in &roots {
            *pool.get_mut(r).expect("present") -= 1;
        }
        chosen.push(len);
        if search(pool, remaining - len, len, chosen) {
            return true;
        }
        chosen.pop();
        for r in &roots {
            *pool.get_mut(r).expect("present") += 1;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Fast,
    Dense,
    Both,
}

impl Tier {
    fn fast(self) -> bool {
        matches!(self, Tier::Fast | Tier::Both)
    }

    fn dense(self) -> bool {
        matches!(self, Tier::Dense | Tier::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub elements_checked: usize,
    pub fast: Option<bool>,
    pub dense: Option<bool>,
    pub failure: Option<String>,
}

impl VerificationReport {
    pub fn accepted(&self) -> bool {
        self.failure.is_none()
    }

    fn reject(msg: String) -> Self {
        VerificationReport { elements_checked: 0, fast: None, dense: None, failure: Some(msg) }
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut y = x;
    while parent[y] != root {
        let next = parent[y];
        parent[y] = root;
        y = next;
    }
    root
}

/// Smallest index of each orbit of the group generated by the given permutations.
fn orbit_minima(perms: &[&[usize]], dim: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..dim).collect();
    for p in perms {
        for (j, &img) in p.iter().enumerate() {
            let (a, b) = (find(&mut parent, j), find(&mut parent, img));
            if a != b {
                // keep the smaller index as the root
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    let mut minima: Vec<usize> = (0..dim).map(|j| find(&mut parent, j)).collect();
    minima.sort_unstable();
    minima.dedup();
    minima
}

/// Rechecks a certificate against the spec from scratch.
///
/// The rescale vector must be normalized: zero at `0`, at `2^{n-1}` and at
/// the smallest index of every orbit of the generators' index permutations.
/// Every element of the group, enumerated here independently, must become
/// `X C^s` with `X` coefficient-free (fast tier) and its Vandermonde
/// conjugate must be a 0/1 permutation matrix (dense tier); in both tiers the
/// permutation must match the one composed from the claimed generator
/// permutations.
pub fn verify_certificate(spec: &GroupSpec, cert: &Certificate, tier: Tier) -> VerificationReport {
    let n = spec.n;
    let level = spec.level;
    let dim = 1usize << n;
    let modulus = 1u64 << n;
    if cert.n != n || cert.level != level {
        return VerificationReport::reject(format!(
            "certificate is for n = {}, level = {}; spec has n = {n}, level = {level}",
            cert.n, cert.level
        ));
    }
    if cert.rescale.len() != dim || cert.rescale.iter().any(|&t| t >= 1u64 << level) {
        return VerificationReport::reject("rescale vector has the wrong length or range".into());
    }
    let perms: Vec<&[usize]> = spec.generators.iter().map(|g| g.matrix.perm()).collect();
    let mut pinned = orbit_minima(&perms, dim);
    pinned.push(dim / 2);
    for j in pinned {
        if cert.rescale[j] != 0 {
            return VerificationReport::reject(format!("rescale exponent at {j} must be 0 (normalization)"));
        }
    }

    let mut claimed: Vec<(String, MonomialMatrix, Vec<u64>)> = Vec::new();
    let c = MonomialMatrix::cycle(n, level);
    let named = std::iter::once(("C".to_string(), c)).chain(spec.generators.iter().map(|g| (g.name.clone(), g.matrix.clone())));
    for (name, m) in named {
        let Some(p) = cert.generator_permutations.get(&name) else {
            return VerificationReport::reject(format!("no permutation given for generator {name}"));
        };
        let mut seen = vec![false; dim];
        if p.len() != dim || p.iter().any(|&x| x >= modulus || std::mem::replace(&mut seen[x as usize], true)) {
            return VerificationReport::reject(format!("claimed permutation for {name} is not a bijection"));
        }
        claimed.push((name, m, p.clone()));
    }
    if cert.generator_permutations.len() != claimed.len() {
        return VerificationReport::reject("certificate names generators absent from the spec".into());
    }

    // breadth-first enumeration carrying the composed claimed permutation
    let id = MonomialMatrix::identity(n, level);
    let mut index: HashMap<MonomialMatrix, usize> = HashMap::new();
    let mut elements: Vec<(String, MonomialMatrix, Vec<u64>)> = vec![("I".into(), id.clone(), (0..modulus).collect())];
    index.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (name, g, pg) in &claimed {
            let y = elements[i].1.compose(g);
            if index.contains_key(&y) {
                continue;
            }
            if elements.len() >= MAX_VERIFY_ELEMENTS {
                return VerificationReport::reject("group too large to verify".into());
            }
            let px = &elements[i].2;
            let composed: Vec<u64> = pg.iter().map(|&k| px[k as usize]).collect();
            let word = if elements[i].0 == "I" { name.clone() } else { format!("{}*{name}", elements[i].0) };
            index.insert(y.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push((word, y, composed));
        }
    }
    let mut report = VerificationReport { elements_checked: elements.len(), fast: None, dense: None, failure: None };
    let fail = |mut report: VerificationReport, msg: String| {
        report.failure = Some(msg);
        report
    };
    if tier.fast() {
        for (word, m, p) in &elements {
            match fast_permutation(m, &cert.rescale) {
                Some(derived) if &derived == p => {}
                Some(_) => {
                    report.fast = Some(false);
                    return fail(report, format!("{word}: permutation differs from the composed claim"));
                }
                None => {
                    report.fast = Some(false);
                    return fail(report, format!("{word}: not a permutation times a power of C after rescaling"));
                }
            }
        }
        report.fast = Some(true);
    }
    if tier.dense() {
        let (t, t_inv_scaled) = vandermonde(n, level);
        if t.mul(&t_inv_scaled) != DenseMatrix::scalar_identity(dim, t.level, dim as i64) {
            report.dense = Some(false);
            return fail(report, "Vandermonde inverse check failed".into());
        }
        for (word, m, p) in &elements {
            let dense = dense_expand(m, &cert.rescale);
            match vandermonde_conjugate(&dense, &t, &t_inv_scaled) {
                Some(perm) if perm.iter().zip(p).all(|(&a, &b)| a as u64 == b) => {}
                Some(_) => {
                    report.dense = Some(false);
                    return fail(report, format!("{word}: dense permutation differs from the composed claim"));
                }
                None => {
                    report.dense = Some(false);
                    return fail(report, format!("{word}: T^-1 M T is not a 0/1 permutation matrix"));
                }
            }
        }
        report.dense = Some(true);
    }
    report
}

/// `k -> r^{-1}(k + s)` when `m` becomes `μ_r C^s` after rescaling.
fn fast_permutation(m: &MonomialMatrix, rescale: &[u64]) -> Option<Vec<u64>> {
    let n = m.n();
    let modulus = 1u64 << n;
    let r = m.perm()[1] as u64;
    if (0..modulus).any(|j| m.perm()[j as usize] as u64 != (j * r) % modulus) {
        return None;
    }
    let h = m.rescaled(rescale);
    let step = 1u64 << (m.level() - n);
    let full = 1u64 << m.level();
    let s = h.coeffs()[1] / step;
    if (0..modulus).any(|j| h.coeffs()[j as usize] != (s * j % modulus) * step % full) {
        return None;
    }
    let r_inv = (1..modulus).step_by(2).find(|&x| x * r % modulus == 1)?;
    Some((0..modulus).map(|k| r_inv * ((k + s) % modulus) % modulus).collect())
}
