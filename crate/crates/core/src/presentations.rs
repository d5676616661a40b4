//! Representative groups for every subgroup `H` of `Z_{2^n}^*`, used by the
//! enumerator and the test suites.
//!
//! Each presentation fixes `H` and the torsion of its generators. A seeded
//! twist then disguises it: a random C-power multiplier per generator that
//! keeps its torsion class, followed by one random diagonal conjugation shared
//! by all generators (which fixes `C`).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::group::{Generator, GroupSpec};
use crate::monomial::MonomialMatrix;
use crate::residue::{geom_sum, mask, odd_inverse, orbit_pairing, unit, SubgroupDescriptor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TorsionChoice {
    /// `A^{ord r} = I`.
    Free,
    /// `A^{ord r} = C^{2^{n-1}}`.
    HalfTurn,
    /// `r = -1`, `A^2 = I`, `A e_{2^{n-1}} = e_{2^{n-1}}`.
    DihedralFixing,
    /// `r = -1`, `A^2 = I`, `A e_{2^{n-1}} = -e_{2^{n-1}}`.
    DihedralNegating,
    /// `r = -1`, `A^2 = C^{2^{n-1}}`.
    Quaternion,
}

impl fmt::Display for TorsionChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TorsionChoice::Free => "free",
            TorsionChoice::HalfTurn => "half-turn",
            TorsionChoice::DihedralFixing => "dihedral-fixing",
            TorsionChoice::DihedralNegating => "dihedral-negating",
            TorsionChoice::Quaternion => "quaternion",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    pub n: u32,
    pub h: SubgroupDescriptor,
    pub a: Option<TorsionChoice>,
    pub b: Option<TorsionChoice>,
}

impl Presentation {
    /// Whether the group should come out permutation-like: everything except
    /// a generalized quaternion subgroup `<A, C>` or `<B, C>`.
    pub fn expected_permutation_like(&self) -> bool {
        self.a != Some(TorsionChoice::Quaternion) && self.b != Some(TorsionChoice::Quaternion)
    }

    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if let Some(a) = self.a {
            parts.push(format!("A:{a}"));
        }
        if let Some(b) = self.b {
            parts.push(format!("B:{b}"));
        }
        if parts.is_empty() {
            "C only".into()
        } else {
            parts.join(" ")
        }
    }
}

/// All presentations for dimension `2^n`, in a fixed order.
pub fn presentations(n: u32) -> Vec<Presentation> {
    use TorsionChoice::*;
    let mut out = Vec::new();
    for h in SubgroupDescriptor::all(n) {
        let p = |a, b| Presentation { n, h, a, b };
        match h {
            SubgroupDescriptor::Trivial => out.push(p(None, None)),
            SubgroupDescriptor::MinusOne => {
                for a in [DihedralFixing, DihedralNegating, Quaternion] {
                    out.push(p(Some(a), None));
                }
            }
            SubgroupDescriptor::CyclicPlus(_) | SubgroupDescriptor::CyclicMinus(_) => {
                for a in [Free, HalfTurn] {
                    out.push(p(Some(a), None));
                }
            }
            SubgroupDescriptor::Product(_) => {
                for a in [Free, HalfTurn] {
                    for b in [DihedralFixing, DihedralNegating, Quaternion] {
                        out.push(p(Some(a), Some(b)));
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Twist {
    Canonical,
    /// Random disguise drawn from a stream determined by all four numbers.
    Seeded { seed: u64, row: u64, index: u64 },
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Twist::Canonical => write!(f, "canonical"),
            Twist::Seeded { seed, index, .. } => write!(f, "seeded:{seed}#{index}"),
        }
    }
}

fn minus_one_generator(n: u32, level: u32, choice: TorsionChoice, odd_negated: &dyn Fn(u64) -> bool) -> MonomialMatrix {
    let dim = 1u64 << n;
    let half = dim / 2;
    let neg = 1u64 << (level - 1);
    let base = |coeffs| MonomialMatrix::multiplication_map(n, level, dim - 1, coeffs).expect("valid map");
    match choice {
        TorsionChoice::DihedralFixing => base(vec![0; dim as usize]),
        TorsionChoice::DihedralNegating => base(vec![0; dim as usize]).mul_c_power(1),
        TorsionChoice::Quaternion => {
            // -1 on one side of each ± pair of odd indices and on e_half:
            // B e_j B e_{-j} multiplies to -1 exactly on odd j.
            let coeffs = (0..dim)
                .map(|j| if (j % 2 == 1 && odd_negated(j)) || j == half { neg } else { 0 })
                .collect();
            base(coeffs)
        }
        other => unreachable!("{other} is not a torsion class for r = -1"),
    }
}

/// `μ_r C^h` with `h` chosen so the `ord(r)`-th power is `I` or `C^{2^{n-1}}`.
fn cyclic_generator(n: u32, level: u32, r: u64, choice: TorsionChoice) -> MonomialMatrix {
    let base = MonomialMatrix::multiplication_map(n, level, r, vec![0; 1 << n]).expect("valid map");
    match choice {
        TorsionChoice::Free => base,
        TorsionChoice::HalfTurn => {
            let ord = unit(r as i128, n).expect("unit").order();
            let sum = geom_sum(crate::residue::Residue::new(r as i128, n).expect("n"), ord).value();
            let v = sum.trailing_zeros();
            let h = (1u64 << (n - 1 - v)).wrapping_mul(odd_inverse(sum >> v, n)) & mask(n);
            base.mul_c_power(h)
        }
        other => unreachable!("{other} is not a torsion class for r != -1"),
    }
}

/// Torsion-preserving C-power multipliers: `A C^g` keeps `A^{ord r}` when
/// `g (1 + r + ... + r^{ord-1}) = 0`, and any `g` keeps the class for `r = -1`.
fn multiplier_step(n: u32, r: u64) -> u64 {
    if r == mask(n) || n == 1 {
        return 1;
    }
    let ord = unit(r as i128, n).expect("unit").order();
    let sum = geom_sum(crate::residue::Residue::new(r as i128, n).expect("n"), ord).value();
    if sum == 0 {
        1
    } else {
        1u64 << (n - sum.trailing_zeros())
    }
}

/// Which twists to run per presentation: the canonical one, plus `count`
/// seeded ones when a seed is given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwistPolicy {
    Canonical,
    Seeded { seed: u64, count: u64 },
}

impl TwistPolicy {
    pub fn twists(&self, row: u64) -> Vec<Twist> {
        let mut out = vec![Twist::Canonical];
        if let TwistPolicy::Seeded { seed, count } = *self {
            out.extend((0..count).map(|index| Twist::Seeded { seed, row, index }));
        }
        out
    }
}

impl fmt::Display for TwistPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistPolicy::Canonical => write!(f, "canonical"),
            TwistPolicy::Seeded { seed, count } => write!(f, "seeded:{seed}:{count}"),
        }
    }
}

impl FromStr for TwistPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "canonical" {
            return Ok(TwistPolicy::Canonical);
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["seeded", seed, count] => {
                let seed = seed.parse().map_err(|e| format!("bad seed {seed:?}: {e}"))?;
                let count = count.parse().map_err(|e| format!("bad count {count:?}: {e}"))?;
                Ok(TwistPolicy::Seeded { seed, count })
            }
            _ => Err(format!("expected \"canonical\" or \"seeded:SEED:COUNT\", got {s:?}")),
        }
    }
}

/// The group for a presentation, optionally disguised by a seeded twist.
pub fn build_spec(p: &Presentation, twist: Twist) -> GroupSpec {
    let n = p.n;
    let level = match twist {
        Twist::Canonical => n,
        Twist::Seeded { .. } => n + 1,
    };
    let mut gens: Vec<(String, u64, MonomialMatrix)> = Vec::new();
    let h_gens = p.h.generators(n);
    match p.h {
        SubgroupDescriptor::Trivial => {}
        SubgroupDescriptor::MinusOne => {
            let half = 1u64 << (n - 1);
            let a = minus_one_generator(n, level, p.a.expect("A"), &|j| j < half);
            gens.push(("A".into(), h_gens[0], a));
        }
        SubgroupDescriptor::CyclicPlus(_) | SubgroupDescriptor::CyclicMinus(_) => {
            gens.push(("A".into(), h_gens[0], cyclic_generator(n, level, h_gens[0], p.a.expect("A"))));
        }
        SubgroupDescriptor::Product(_) => {
            let r = h_gens[0];
            gens.push(("A".into(), r, cyclic_generator(n, level, r, p.a.expect("A"))));
            // keep B constant on orbits of j -> r j so it commutes with μ_r
            let pairing = orbit_pairing(&unit(r as i128, n).expect("unit")).expect("r ≡ 1 mod 4");
            let mut side = vec![false; 1 << n];
            for (gamma, _) in &pairing.pairs {
                for &j in &gamma.elements {
                    side[j as usize] = true;
                }
            }
            let b = minus_one_generator(n, level, p.b.expect("B"), &|j| side[j as usize]);
            gens.push(("B".into(), h_gens[1], b));
        }
    }
    if let Twist::Seeded { seed, row, index } = twist {
        let key = seed
            ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
            ^ row.wrapping_mul(0xC2B2_AE3D_27D4_EB4F)
            ^ index.wrapping_mul(0x1656_67B1_9E37_79F9);
        let mut rng = ChaCha8Rng::seed_from_u64(key);
        let modulus = 1u64 << n;
        for (_, r, m) in gens.iter_mut() {
            let step = multiplier_step(n, *r);
            let g = rng.gen_range(0..modulus / step) * step;
            *m = m.mul_c_power(g);
        }
        let d: Vec<u64> = (0..modulus).map(|_| rng.gen_range(0..1u64 << level)).collect();
        for (_, _, m) in gens.iter_mut() {
            *m = m.rescaled(&d);
        }
    }
    let generators = gens
        .into_iter()
        .map(|(name, r, matrix)| Generator { name, matrix, declared_r: Some(r) })
        .collect();
    GroupSpec::new(n, level, generators).expect("well-formed presentation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{analyze, normalize_torsion, TorsionNormalization};

    #[test]
    fn presentation_counts() {
        assert_eq!(presentations(1).len(), 1);
        assert_eq!(presentations(2).len(), 4);
        // trivial, three for <-1>, two each for the cyclic ones, six per product
        assert_eq!(presentations(4).len(), 1 + 3 + 2 * 2 + 2 * 2 + 6 * 2);
    }

    #[test]
    fn presentations_realize_their_subgroup_and_torsion() {
        for n in 2..=5u32 {
            for p in presentations(n) {
                for twist in [Twist::Canonical, Twist::Seeded { seed: 7, row: 1, index: 3 }] {
                    let spec = build_spec(&p, twist);
                    let g = analyze(&spec).unwrap();
                    assert_eq!(g.h(), p.h, "{}", p.label());
                    assert!(g.group.in_scope());
                    assert_eq!(g.permutation_like(), p.expected_permutation_like(), "n={n} {} {twist}", p.label());
                    if let (Some(TorsionChoice::HalfTurn), Some(a)) = (p.a, spec.generator("A")) {
                        match normalize_torsion(&a.matrix).unwrap() {
                            TorsionNormalization::Split { power, .. } => assert_eq!(power, 1 << (n - 1)),
                            other => panic!("{other:?}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn twist_policy_parsing() {
        assert_eq!("canonical".parse::<TwistPolicy>().unwrap(), TwistPolicy::Canonical);
        let p: TwistPolicy = "seeded:42:100".parse().unwrap();
        assert_eq!(p, TwistPolicy::Seeded { seed: 42, count: 100 });
        assert_eq!(p.to_string(), "seeded:42:100");
        assert_eq!(p.twists(3).len(), 101);
        assert!("seeded:42".parse::<TwistPolicy>().is_err());
        assert!("seeded:x:1".parse::<TwistPolicy>().is_err());
    }

    #[test]
    fn seeded_twists_are_deterministic() {
        let p = presentations(4)[5];
        let t = Twist::Seeded { seed: 42, row: 5, index: 9 };
        assert_eq!(build_spec(&p, t), build_spec(&p, t));
        assert_ne!(build_spec(&p, t), build_spec(&p, Twist::Seeded { seed: 42, row: 5, index: 10 }));
    }
}
