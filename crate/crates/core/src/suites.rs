//! Invariant suites shared by `selftest` and the acceptance target. Each
//! suite compares a computed quantity against an independent derivation
//! (closed form, integer arithmetic, dense matrices or exhaustive search).

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cli::{certificate_from_json, certificate_to_json, check_spec, Status};
use crate::cyclotomic::{cyclotomic_poly_2power, primitive_product_identity, CycloNum, CycloPoly, RootOfUnity};
use crate::group::{analyze, validate};
use crate::monomial::{
    char_factors, char_factors_restricted, eigen_multiset, perm_similarity, CharFactors, EigenMultiset,
    MonomialMatrix, PermVerdict,
};
use crate::oracle::{brute_char_poly, brute_force_factorization, dense_expand, verify_certificate, Tier};
use crate::presentations::{build_spec, presentations, Presentation, TorsionChoice, Twist, TwistPolicy};
use crate::residue::{
    geom_sum_valuation, mask, subgroup_classify, unit, unit_closure, v2_big, GeomSumValuation, SubgroupDescriptor,
};
use crate::synth::synthesize;

/// At most this many failure messages are kept per suite.
const MAX_REPORTED: usize = 5;

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: String,
    pub cases: u64,
    pub failures: Vec<String>,
    pub failure_count: u64,
    pub note: String,
    pub elapsed: Duration,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict}  {}: {} cases in {:.2?}", self.name, self.cases, self.elapsed)?;
        if !self.note.is_empty() {
            write!(f, " ({})", self.note)?;
        }
        if !self.passed() {
            write!(f, ", {} failed", self.failure_count)?;
            for msg in &self.failures {
                write!(f, "\n      {msg}")?;
            }
        }
        Ok(())
    }
}

struct Tally {
    cases: u64,
    failures: Vec<String>,
    failure_count: u64,
    note: String,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failures: Vec::new(), failure_count: 0, note: String::new() }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_REPORTED {
            self.failures.push(msg);
        }
    }

    /// Folds in per-case results computed elsewhere (e.g. in parallel).
    fn absorb(&mut self, results: Vec<Option<String>>) {
        for r in results {
            self.cases += 1;
            if let Some(msg) = r {
                self.fail(msg);
            }
        }
    }
}

fn run(name: &str, body: impl FnOnce(&mut Tally)) -> SuiteOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    body(&mut t);
    SuiteOutcome {
        name: name.to_string(),
        cases: t.cases,
        failures: t.failures,
        failure_count: t.failure_count,
        note: t.note,
        elapsed: start.elapsed(),
    }
}

fn disguise(seed: u64, n: u32, level: u32) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32));
    (0..1u64 << n).map(|_| rng.gen_range(0..1u64 << level)).collect()
}

/// Multiplicative order of every unit by repeated multiplication, and every
/// listed subgroup regenerated from its generators and reclassified.
pub fn unit_group_orders(max_n: u32) -> SuiteOutcome {
    run("unit-group orders and subgroups", |t| {
        for n in 1..=max_n {
            let modulus = 1u64 << n;
            for r in (1..modulus).step_by(2) {
                let mut x = r;
                let mut ord = 1u64;
                while x != 1 {
                    x = x * r % modulus;
                    ord += 1;
                }
                let u = unit(r as i128, n).expect("odd");
                t.check(u.order() == ord, || format!("n={n} r={r}: order {} vs {ord}", u.order()));
            }
            for h in SubgroupDescriptor::all(n) {
                let gens = h.generators(n);
                let closure = unit_closure(n, &gens);
                t.check(closure == h.elements(n) && closure.len() as u64 == h.order(), || {
                    format!("n={n} {h}: closure has {} elements", closure.len())
                });
                let units: Vec<_> = gens.iter().map(|&g| unit(g as i128, n).expect("odd")).collect();
                let back = subgroup_classify(n, &units);
                t.check(back == h, || format!("n={n}: {h} reclassified as {back}"));
            }
        }
    })
}

/// `ν2(1 + r + ... + r^{ord(r)-1})` summed over the integers, against
/// `geom_sum_valuation`; `r = -1` must give a sum divisible by `2^n`.
pub fn geometric_sum_valuations(max_n: u32) -> SuiteOutcome {
    run("geometric-sum valuations", |t| {
        let jobs: Vec<(u32, u64)> =
            (2..=max_n).flat_map(|n| (3..1u64 << n).step_by(2).map(move |r| (n, r))).collect();
        let results = jobs
            .par_iter()
            .map(|&(n, r)| {
                let u = unit(r as i128, n).expect("odd");
                let big_r = BigInt::from(r);
                let mut sum = BigInt::from(0);
                for _ in 0..u.order() {
                    sum = sum * &big_r + 1;
                }
                let direct = v2_big(&sum).expect("positive sum");
                match geom_sum_valuation(&u) {
                    Ok(GeomSumValuation::Exact(v)) if (v as u64) == direct && direct < n as u64 => None,
                    Ok(GeomSumValuation::ZeroSum) if r == mask(n) && direct >= n as u64 => None,
                    other => Some(format!("n={n} r={r}: {other:?}, direct valuation {direct}")),
                }
            })
            .collect();
        t.absorb(results);
    })
}

/// `∏_{ω primitive 2^k-th} (x^{2^a} - ω) = Φ_{2^{a+k}}` for `a + k <= max`,
/// plus `Φ_{2^{a+1}} (x^{2^a} - 1) = x^{2^{a+1}} - 1`.
pub fn cyclotomic_product_identity(max_sum: u32) -> SuiteOutcome {
    run("cyclotomic product identity", |t| {
        for s in 1..=max_sum {
            for k in 1..=s {
                let a = s - k;
                let ok = primitive_product_identity(a, k);
                t.check(ok == Ok(true), || format!("a={a} k={k}: {ok:?}"));
            }
            let a = s - 1;
            let level = 1;
            let phi = cyclotomic_poly_2power(a + 1, level);
            let minus_one = CycloNum::from_int(level, -1);
            let low = &CycloPoly::monomial(1 << a, CycloNum::one(level)) + &CycloPoly::constant(minus_one.clone());
            let high = &CycloPoly::monomial(2 << a, CycloNum::one(level)) + &CycloPoly::constant(minus_one);
            t.check(&phi * &low == high, || format!("Φ_(2^{}) does not divide x^(2^{}) - 1", a + 1, a + 1));
        }
    })
}

/// All `2^a`-th roots, each `mult` times: the roots of `(x^{2^a} - 1)^mult`.
fn all_roots(a: u32, mult: u64) -> EigenMultiset {
    let mut e = EigenMultiset::default();
    for x in 0..1u64 << a {
        e.add(RootOfUnity { level: a, exp: x }, mult);
    }
    e
}

/// Primitive `2^m`-th roots, each `mult` times: the roots of `Φ_{2^m}^mult`.
fn primitive_roots(m: u32, mult: u64) -> EigenMultiset {
    let mut e = EigenMultiset::default();
    if m == 0 {
        e.add(RootOfUnity::one(0), mult);
    } else {
        for x in (1..1u64 << m).step_by(2) {
            e.add(RootOfUnity { level: m, exp: x }, mult);
        }
    }
    e
}

fn brute_order_log(r: u64, n: u32) -> u32 {
    let modulus = 1u64 << n;
    let (mut x, mut a) = (r % modulus, 0);
    while x != 1 {
        x = x * x % modulus;
        a += 1;
    }
    a
}

/// Eigenvalues of `(A C^k)` on the odd indices, where `A^{ord r} = I`,
/// read off the closed-form table.
pub fn odd_index_table(n: u32, r: u64, k: u64) -> EigenMultiset {
    let a = brute_order_log(r, n);
    let h = 1u64 << (n - a - 1);
    let k = k % (1 << n);
    if r % 4 == 1 {
        let nu = if k == 0 { n } else { k.trailing_zeros() };
        if nu < n - a {
            primitive_roots(n - nu, 1 << nu)
        } else {
            all_roots(a, h)
        }
    } else if k % 2 == 1 {
        primitive_roots(a + 1, h)
    } else {
        all_roots(a, h)
    }
}

/// For every `r != -1` and every `k`, the computed characteristic polynomial
/// of `(A C^k)` on odd indices against the closed-form table. `A` is `j -> r j`
/// conjugated by a random diagonal matrix.
pub fn odd_index_char_table(ns: &[u32]) -> SuiteOutcome {
    run("restricted char-poly table on odd indices", |t| {
        for &n in ns {
            let level = n + 2;
            let modulus = 1u64 << n;
            let d = disguise(0x0dd, n, level);
            let c = MonomialMatrix::cycle(n, level);
            for r in (1..modulus).step_by(2).filter(|&r| r != modulus - 1) {
                let a = MonomialMatrix::multiplication_map(n, level, r, vec![0; modulus as usize])
                    .expect("odd r")
                    .rescaled(&d);
                let mut ack = a.clone();
                for k in 0..modulus {
                    let got = char_factors_restricted(&ack, |j| j % 2 == 1).and_then(|f| eigen_multiset(&f));
                    let want = odd_index_table(n, r, k);
                    t.check(got.as_ref() == Ok(&want), || format!("n={n} r={r} k={k}: {got:?} vs {want:?}"));
                    ack = ack.compose(&c);
                }
            }
        }
    })
}

/// `(x-1)^2 (x^2-1)^{h-1}` when `two_fixed`, else `(x^2-1)^h`.
fn dihedral_table(h: u64, two_fixed: bool) -> EigenMultiset {
    let mut e = EigenMultiset::default();
    if two_fixed {
        e.add(RootOfUnity::one(0), h + 1);
        e.add(RootOfUnity { level: 1, exp: 1 }, h - 1);
    } else {
        e.add(RootOfUnity::one(0), h);
        e.add(RootOfUnity { level: 1, exp: 1 }, h);
    }
    e
}

/// `(x-1)^2 (x^2+1) (x^4-1)^{q-1}` expanded at the given level.
pub fn quaternion_witness_poly(n: u32, level: u32) -> CycloPoly {
    let q = 1u64 << (n - 2);
    let one = CycloNum::one(level);
    let minus = CycloNum::from_int(level, -1);
    let x_minus_1 = &CycloPoly::monomial(1, one.clone()) + &CycloPoly::constant(minus.clone());
    let x2_plus_1 = &CycloPoly::monomial(2, one.clone()) + &CycloPoly::constant(one.clone());
    let x4_minus_1 = &CycloPoly::monomial(4, one) + &CycloPoly::constant(minus);
    let mut acc = &(&x_minus_1 * &x_minus_1) * &x2_plus_1;
    for _ in 1..q {
        acc = &acc * &x4_minus_1;
    }
    acc
}

/// Involutions inverting `C`: both dihedral classes against their parity
/// tables for every `k`, and quaternion groups rejected with the expected
/// witness polynomial.
pub fn minus_one_tables(ns: &[u32], twists: u64) -> SuiteOutcome {
    run("dihedral and quaternion polynomials", |t| {
        for &n in ns {
            let level = n + 1;
            let modulus = 1u64 << n;
            let h = modulus / 2;
            let c = MonomialMatrix::cycle(n, level);
            let d = disguise(0xd1, n, level);
            let base = MonomialMatrix::multiplication_map(n, level, modulus - 1, vec![0; modulus as usize]).expect("-1");
            for (fixing, a) in [(true, base.clone()), (false, base.compose(&c))] {
                let mut ack = a.rescaled(&d);
                for k in 0..modulus {
                    let got = eigen_multiset(&char_factors(&ack));
                    let want = dihedral_table(h, fixing == (k % 2 == 0));
                    t.check(got.as_ref() == Ok(&want), || {
                        format!("n={n} {} k={k}: {got:?}", if fixing { "fixing" } else { "negating" })
                    });
                    ack = ack.compose(&c);
                }
            }
            let p = Presentation { n, h: SubgroupDescriptor::MinusOne, a: Some(TorsionChoice::Quaternion), b: None };
            for twist in (TwistPolicy::Seeded { seed: 0x9a, count: twists }).twists(0) {
                let spec = build_spec(&p, twist);
                match analyze(&spec) {
                    Ok(g) => match &g.witness {
                        Some(w) => {
                            let got = w.factors.expand();
                            let want = quaternion_witness_poly(n, got.level());
                            let word_ok = twist != Twist::Canonical || w.word.to_string() == "A*C";
                            t.check(got == want && word_ok, || format!("n={n} {twist}: witness {w}"));
                        }
                        None => t.fail(format!("n={n} {twist}: quaternion group not rejected")),
                    },
                    Err(e) => t.fail(format!("n={n} {twist}: {e}")),
                }
            }
        }
    })
}

fn specs(ns: &[u32], policy: TwistPolicy, filter: &(dyn Fn(&Presentation) -> bool + Sync)) -> Vec<(Presentation, Twist)> {
    ns.iter()
        .flat_map(|&n| {
            presentations(n)
                .into_iter()
                .enumerate()
                .filter(|(_, p)| filter(p))
                .flat_map(move |(row, p)| policy.twists(row as u64).into_iter().map(move |t| (p, t)))
        })
        .collect()
}

/// Expanded characteristic polynomials from cycle data against cofactor
/// expansion of the dense matrix, for every element of every group.
pub fn char_poly_oracle_agreement(ns: &[u32], policy: TwistPolicy) -> SuiteOutcome {
    run("char-poly oracle agreement", |t| {
        let jobs = specs(ns, policy, &|_| true);
        let results: Vec<Vec<Option<String>>> = jobs
            .par_iter()
            .map(|(p, twist)| {
                let spec = build_spec(p, *twist);
                let group = match validate(&spec) {
                    Ok(g) => g,
                    Err(e) => return vec![Some(format!("{} {twist}: {e}", p.label()))],
                };
                let zero = vec![0u64; 1 << spec.n];
                group
                    .elements
                    .iter()
                    .map(|e| {
                        let fast = char_factors(&e.matrix).expand();
                        match brute_char_poly(&dense_expand(&e.matrix, &zero)) {
                            Ok(brute) => {
                                let level = fast.level().max(brute.level());
                                (fast.lift(level) != brute.lift(level)).then(|| {
                                    format!("n={} {} {twist} {}: {fast} vs {brute}", p.n, p.label(), e.word)
                                })
                            }
                            Err(err) => Some(format!("{}: {err}", e.word)),
                        }
                    })
                    .collect()
            })
            .collect();
        t.absorb(results.into_iter().flatten().collect());
    })
}

fn similarity_agrees(f: &CharFactors) -> Result<bool, String> {
    let verdict = perm_similarity(f).map_err(|e| e.to_string())?;
    let eig = eigen_multiset(f).map_err(|e| e.to_string())?;
    let brute = brute_force_factorization(&eig);
    Ok(match (verdict, brute) {
        (PermVerdict::PermutationType { cycle_counts, .. }, Some(lengths)) => {
            let mut counts = BTreeMap::new();
            for l in lengths {
                if !l.is_power_of_two() {
                    return Ok(false);
                }
                *counts.entry(l.trailing_zeros()).or_insert(0u64) += 1;
            }
            counts == cycle_counts
        }
        (PermVerdict::Violation { .. }, None) => true,
        _ => false,
    })
}

/// Random factor multiset of total degree `1..=max_degree`.
fn random_factors(rng: &mut ChaCha8Rng, max_degree: u64) -> CharFactors {
    let level = 5;
    let degree = rng.gen_range(1..=max_degree);
    let permutation_shaped = rng.gen_bool(0.4);
    let mut blocks = Vec::new();
    let mut left = degree;
    while left > 0 {
        let b = rng.gen_range(0..=63 - left.leading_zeros());
        let len = 1u64 << b;
        let exp = if permutation_shaped || rng.gen_bool(0.5) {
            0
        } else {
            rng.gen_range(0..1u64 << level) << rng.gen_range(0..=level)
        };
        blocks.push((len, RootOfUnity::new(level, exp as i128)));
        left -= len;
    }
    blocks.sort();
    CharFactors { level, blocks }
}

/// `perm_similarity` against exhaustive factorization search, on every
/// characteristic polynomial occurring in the groups and on random ones.
pub fn similarity_oracle(ns: &[u32], policy: TwistPolicy, random: u64, seed: u64) -> SuiteOutcome {
    run("permutation-similarity oracle", |t| {
        let jobs = specs(ns, policy, &|_| true);
        let found: Vec<Vec<CharFactors>> = jobs
            .par_iter()
            .map(|(p, twist)| match validate(&build_spec(p, *twist)) {
                Ok(g) => g.elements.iter().map(|e| char_factors(&e.matrix)).collect(),
                Err(_) => Vec::new(),
            })
            .collect();
        let mut distinct: Vec<CharFactors> = found.into_iter().flatten().collect::<HashSet<_>>().into_iter().collect();
        distinct.sort_by(|a, b| (a.level, &a.blocks).cmp(&(b.level, &b.blocks)));
        let group_count = distinct.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        distinct.extend((0..random).map(|_| random_factors(&mut rng, 32)));
        let results: Vec<(bool, Option<String>)> = distinct
            .par_iter()
            .map(|f| {
                let positive = perm_similarity(f).map(|v| v.is_permutation_type()).unwrap_or(false);
                let msg = match similarity_agrees(f) {
                    Ok(true) => None,
                    Ok(false) => Some(format!("disagreement on {f}")),
                    Err(e) => Some(format!("{f}: {e}")),
                };
                (positive, msg)
            })
            .collect();
        let positives = results.iter().filter(|r| r.0).count();
        t.note = format!(
            "{group_count} from groups, {random} random, {positives} permutation-type, {} not",
            results.len() - positives
        );
        t.absorb(results.into_iter().map(|r| r.1).collect());
    })
}

/// Runs the full check on each presentation and twist: permutation-like ones
/// must certify, verify (dense tier too for `n <= dense_max_n`) and survive a
/// JSON round trip; the rest must be rejected with a witness.
pub fn certify_presentations(
    name: &str,
    ns: &[u32],
    policy: TwistPolicy,
    dense_max_n: u32,
    filter: &(dyn Fn(&Presentation) -> bool + Sync),
) -> SuiteOutcome {
    run(name, |t| {
        let jobs = specs(ns, policy, filter);
        let results: Vec<(bool, Option<String>)> = jobs
            .par_iter()
            .map(|(p, twist)| {
                let spec = build_spec(p, *twist);
                let tier = if p.n <= dense_max_n { Tier::Both } else { Tier::Fast };
                let out = check_spec(&spec, tier);
                let tag = || format!("n={} H={} {} {twist}", p.n, p.h, p.label());
                let msg = match (p.expected_permutation_like(), out.status) {
                    (true, Status::Certified) => {
                        let cert = out.certificate.as_ref().expect("certified");
                        let back = certificate_from_json(&certificate_to_json(cert));
                        let report = out.verification.as_ref().expect("verified");
                        let tiers_ok = report.fast == Some(true) && (tier == Tier::Fast || report.dense == Some(true));
                        match back {
                            Ok(c) if &c == cert && tiers_ok => None,
                            Ok(_) => Some(format!("{}: round trip or tier mismatch", tag())),
                            Err(e) => Some(format!("{}: {e}", tag())),
                        }
                    }
                    (false, Status::NotPermutationLike) => None,
                    (_, status) => Some(format!("{}: {status:?}: {}", tag(), out.log.last().cloned().unwrap_or_default())),
                };
                (p.expected_permutation_like(), msg)
            })
            .collect();
        let certified = results.iter().filter(|r| r.0 && r.1.is_none()).count();
        t.note = format!("{certified} certified, {} rejected", results.iter().filter(|r| !r.0).count());
        t.absorb(results.into_iter().map(|r| r.1).collect());
    })
}

/// Corrupts one rescale exponent or swaps two images of one claimed
/// permutation in a valid certificate; the verifier must reject every one.
pub fn mutation_rejection(ns: &[u32], per_n: u64, seed: u64) -> SuiteOutcome {
    run("mutated certificates rejected", |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut jobs = Vec::new();
        for &n in ns {
            let candidates: Vec<(usize, Presentation)> =
                presentations(n).into_iter().enumerate().filter(|(_, p)| p.expected_permutation_like()).collect();
            for i in 0..per_n {
                let (row, p) = candidates[rng.gen_range(0..candidates.len())];
                let twist =
                    if rng.gen_bool(0.25) { Twist::Canonical } else { Twist::Seeded { seed, row: row as u64, index: i } };
                jobs.push((p, twist, rng.gen::<u64>()));
            }
        }
        let mut kinds = [0u64; 2];
        let results: Vec<(usize, Option<String>)> = jobs
            .par_iter()
            .map(|(p, twist, mseed)| {
                let tag = format!("n={} {} {twist}", p.n, p.label());
                let spec = build_spec(p, *twist);
                let cert = match analyze(&spec).map_err(|e| e.to_string()).and_then(|g| synthesize(&g).map_err(|e| e.to_string())) {
                    Ok(c) => c,
                    Err(e) => return (0, Some(format!("{tag}: {e}"))),
                };
                if !verify_certificate(&spec, &cert, Tier::Both).accepted() {
                    return (0, Some(format!("{tag}: original certificate rejected")));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*mseed);
                let mut bad = cert.clone();
                let dim = cert.rescale.len();
                let (kind, what) = if rng.gen_bool(0.5) {
                    let j = rng.gen_range(0..dim);
                    let full = 1u64 << cert.level;
                    let delta = rng.gen_range(1..full);
                    bad.rescale[j] = (bad.rescale[j] + delta) % full;
                    (0, format!("rescale[{j}] += {delta}"))
                } else {
                    let names: Vec<String> = cert.generator_permutations.keys().cloned().collect();
                    let name = &names[rng.gen_range(0..names.len())];
                    let i = rng.gen_range(0..dim);
                    let j = (i + rng.gen_range(1..dim)) % dim;
                    bad.generator_permutations.get_mut(name).expect("present").swap(i, j);
                    (1, format!("swap {name}[{i}], {name}[{j}]"))
                };
                let report = verify_certificate(&spec, &bad, Tier::Both);
                (kind, report.accepted().then(|| format!("{tag}: {what} accepted")))
            })
            .collect();
        for (kind, _) in &results {
            kinds[*kind] += 1;
        }
        t.note = format!("{} rescale, {} permutation", kinds[0], kinds[1]);
        t.absorb(results.into_iter().map(|r| r.1).collect());
    })
}

/// Small instances of every suite, for `selftest`.
pub fn quick() -> Vec<SuiteOutcome> {
    let seeded = |count| TwistPolicy::Seeded { seed: 0x5e1f, count };
    vec![
        unit_group_orders(10),
        geometric_sum_valuations(10),
        cyclotomic_product_identity(10),
        odd_index_char_table(&[4, 5]),
        minus_one_tables(&[3, 4, 5], 3),
        char_poly_oracle_agreement(&[2, 3], seeded(1)),
        similarity_oracle(&[2, 3, 4], seeded(1), 200, 0x5e1f),
        certify_presentations("certificates for every presentation", &[2, 3, 4, 5], seeded(3), 3, &|_| true),
        mutation_rejection(&[3, 4], 20, 0x5e1f),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_have_full_degree() {
        for n in 3..=6u32 {
            let half = 1u64 << (n - 1);
            for r in (1..1u64 << n).step_by(2).filter(|&r| r != (1 << n) - 1) {
                for k in 0..1u64 << n {
                    assert_eq!(odd_index_table(n, r, k).total(), half, "n={n} r={r} k={k}");
                }
            }
            assert_eq!(quaternion_witness_poly(n, 2).degree(), Some(1 << n));
        }
    }

    #[test]
    fn table_examples() {
        // r = 1: A C^k is C^k on odd indices
        assert_eq!(odd_index_table(4, 1, 0), all_roots(0, 8));
        assert_eq!(odd_index_table(4, 1, 1), primitive_roots(4, 1));
        // r = 7 = -1 + 8 at n = 4: a = 1
        assert_eq!(odd_index_table(4, 7, 3), primitive_roots(2, 4));
        assert_eq!(odd_index_table(4, 7, 2), all_roots(1, 4));
    }

    #[test]
    fn quick_suites_pass() {
        for s in quick() {
            assert!(s.passed(), "{s}");
        }
    }
}
