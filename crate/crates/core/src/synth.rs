//! Builds a basis in which every element of a permutation-like group is a
//! permutation matrix.
//!
//! All bases have the form `e'_j = ζ^{t_j} e_j` (so `C` stays diagonal); the
//! certificate records the exponents `t_j`. Once the canonical generators are
//! coefficient-free in `{e'_j}`, the vectors `C^k f` with `f = Σ e'_j` form a
//! basis in which the whole group permutes, and each generator's permutation
//! of `k` is recorded as well.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::RootOfUnity;
use crate::group::{commuting_adjust, normalize_torsion, GroupAnalysis, GroupError, TorsionNormalization};
use crate::monomial::{relation_of, MonomialError, MonomialMatrix};
use crate::residue::{mask, odd_inverse, orbit_pairing, orbits, Domain, Orbit, ResidueError, SubgroupDescriptor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("group is outside the supported class: {0}")]
    OutsideScope(String),
    #[error("group is not permutation-like: {0}")]
    NotPermutationLike(String),
    #[error("generator does not satisfy A^(2^a) = I: {0}")]
    TorsionNotNormalized(String),
    #[error("construction reached a state a permutation-like group cannot produce: {0}")]
    Contradiction(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
}

/// Which step of the construction handled a given dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    /// `A` acts trivially on indices and is the identity.
    Identity,
    /// Odd indices: orbits of `j -> r j` rescaled along `A`.
    OddOrbits,
    /// `r = -1` with `A^2 = I`, fixing `e_{2^{n-1}}`.
    Dihedral,
    /// `r = 1 + 2^{n-1}`: `A` is the identity on even indices.
    PlusHalf,
    /// `r = -1 + 2^{n-1}`: even indices reduce to the dihedral case.
    MinusHalf,
    /// Order of `r` at least 4: recurse on even indices.
    Induction,
    /// `H = <-1> x <r>`: orbits paired through `B`.
    Paired,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub depth: u32,
    pub n: u32,
    pub r: u64,
    pub case: Case,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let case = serde_json::to_value(self.case).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        write!(f, "{:indent$}n={} r={} {}", "", self.n, self.r, case, indent = 2 * self.depth as usize)
    }
}

/// A change of basis to permutation form, checkable by `oracle::verify_certificate`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: u32,
    pub level: u32,
    /// `e'_j = ζ^{rescale[j]} e_j`.
    pub rescale: Vec<u64>,
    /// Replacements applied to canonical generators, e.g. `A := A*C^3`.
    pub substitutions: Vec<String>,
    /// `(j_t, -j_t)` for each pair of orbits in the non-cyclic case.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Vec<(u64, u64)>>,
    /// Whether the final basis is `{C^k f}` rather than `{e'_j}`.
    pub fourier: bool,
    /// For each spec generator and `C`: `k -> π(k)` with `g C^k f = C^{π(k)} f`.
    pub generator_permutations: BTreeMap<String, Vec<u64>>,
    pub trace: Vec<TraceStep>,
}

/// Rescales `e_j` along one orbit `Γ = {j, r j, ...}` of `A`, starting from
/// `t_j = 0`, so that `A` maps each basis vector to the next. Returns the
/// exponents and the corner coefficient `ω` left on the closing edge.
pub fn rescale_orbit(a: &MonomialMatrix, orbit: &Orbit) -> (Vec<(usize, u64)>, RootOfUnity) {
    let m = mask(a.level());
    let mut out = Vec::with_capacity(orbit.len());
    let mut t = 0u64;
    for &x in &orbit.elements {
        out.push((x as usize, t));
        t = t.wrapping_add(a.coeffs()[x as usize]) & m;
    }
    (out, RootOfUnity { level: a.level(), exp: t })
}

struct Builder {
    trace: Vec<TraceStep>,
}

impl Builder {
    fn step(&mut self, depth: u32, a: &MonomialMatrix, r: u64, case: Case) {
        self.trace.push(TraceStep { depth, n: a.n(), r, case });
    }

    /// Exponents making `A` coefficient-free, for `A^{ord r} = I`.
    fn a_basis(&mut self, a: &MonomialMatrix, depth: u32) -> Result<Vec<u64>, SynthError> {
        let n = a.n();
        let rel = if n == 0 { None } else { Some(relation_of(a)?) };
        let r = rel.map_or(1, |u| u.value());
        let ord = rel.map_or(1, |u| u.order());
        if !a.pow(ord).is_identity() {
            let msg = format!("A^{ord} != I at n = {n}, r = {r}");
            return Err(if depth == 0 { SynthError::TorsionNotNormalized(msg) } else { SynthError::Contradiction(msg) });
        }
        let dim = a.dim();
        if r == 1 {
            self.step(depth, a, r, Case::Identity);
            return Ok(vec![0; dim]);
        }
        let half = dim / 2;
        if rel.is_some_and(|u| u.is_minus_one()) {
            self.step(depth, a, r, Case::Dihedral);
            if a.coeffs()[0] != 0 {
                return Err(SynthError::Contradiction("A does not fix e_0".into()));
            }
            if a.coeffs()[half] != 0 {
                return Err(SynthError::Contradiction(format!("A negates e_{half} in the dihedral case")));
            }
            let mut t = vec![0u64; dim];
            for j in 1..half {
                t[dim - j] = a.coeffs()[j];
            }
            return Ok(t);
        }
        let u = rel.expect("n >= 1 here");
        let mut t = vec![0u64; dim];
        self.step(depth, a, r, Case::OddOrbits);
        for orbit in orbits(&u, Domain::Units).orbits {
            let (exps, corner) = rescale_orbit(a, &orbit);
            if !corner.is_one() {
                return Err(SynthError::Contradiction(format!(
                    "orbit of {} closes with corner {corner}",
                    orbit.start()
                )));
            }
            for (j, e) in exps {
                t[j] = e;
            }
        }
        let evens = a.restrict_evens()?;
        let r_half = r & mask(n - 1);
        let sub = if r_half == 1 {
            self.step(depth, a, r, Case::PlusHalf);
            if !evens.is_identity() {
                let detail = if evens.c_power_exponent() == Some(1 << (n - 2)) {
                    "A restricted to even indices is the central involution of <C>".to_string()
                } else {
                    "A restricted to even indices is not the identity".to_string()
                };
                return Err(SynthError::Contradiction(detail));
            }
            vec![0; half]
        } else {
            let case = if u.order_log() == 1 { Case::MinusHalf } else { Case::Induction };
            self.step(depth, a, r, case);
            self.a_basis(&evens, depth + 1)?
        };
        for (s, e) in sub.into_iter().enumerate() {
            t[2 * s] = e;
        }
        Ok(t)
    }
}

/// The permutation `k -> r^{-1}(k + s)` of `g` on `{C^k f}`, given that `g`
/// is `X C^s` with `X` coefficient-free in the rescaled basis.
pub fn fourier_permutation(g: &MonomialMatrix, rescale: &[u64]) -> Result<Vec<u64>, SynthError> {
    let n = g.n();
    let rel = relation_of(g)?;
    let h = g.rescaled(rescale);
    let step = h.lambda_step();
    let s = if h.dim() > 1 { h.coeffs()[1] / step } else { 0 };
    if h.coeffs()[1] % step != 0 || h != MonomialMatrix::multiplication_map(n, g.level(), rel.value(), vec![0; g.dim()])?.mul_c_power(s) {
        return Err(SynthError::Contradiction("generator is not a permutation times a power of C in the new basis".into()));
    }
    let r_inv = odd_inverse(rel.value(), n);
    Ok((0..1u64 << n).map(|k| r_inv.wrapping_mul(k + s) & mask(n)).collect())
}

fn check_free(name: &str, g: &MonomialMatrix, t: &[u64]) -> Result<(), SynthError> {
    if g.rescaled(t).is_permutation_matrix() {
        Ok(())
    } else {
        Err(SynthError::Contradiction(format!("{name} is not a permutation matrix in the constructed basis")))
    }
}

/// Torsion-normalizes a canonical generator, recording any substitution.
fn normalized(
    label: &str,
    m: &MonomialMatrix,
    substitutions: &mut Vec<String>,
) -> Result<MonomialMatrix, SynthError> {
    match normalize_torsion(m)? {
        TorsionNormalization::Split { shift, normalized, .. } => {
            if shift != 0 {
                substitutions.push(format!("{label} := {label}*C^{shift}"));
            }
            Ok(normalized)
        }
        TorsionNormalization::Dihedral { fixes_half: true } => Ok(m.clone()),
        TorsionNormalization::Dihedral { fixes_half: false } => {
            substitutions.push(format!("{label} := {label}*C"));
            Ok(m.mul_c_power(1))
        }
        TorsionNormalization::Quaternion => {
            Err(SynthError::Contradiction(format!("{label}^2 = C^(2^(n-1)): generalized quaternion")))
        }
    }
}

/// Builds the certificate for a group already found permutation-like.
pub fn synthesize(analysis: &GroupAnalysis) -> Result<Certificate, SynthError> {
    let group = &analysis.group;
    if !group.in_scope() {
        return Err(SynthError::OutsideScope(format!("{:?}", group.scope)));
    }
    if let Some(w) = &analysis.witness {
        return Err(SynthError::NotPermutationLike(w.to_string()));
    }
    let spec = &group.spec;
    let (n, level) = (spec.n, spec.level);
    let dim = 1usize << n;
    let mut builder = Builder { trace: Vec::new() };
    let mut substitutions = Vec::new();
    let mut pairing = None;
    let rescale = match group.h {
        SubgroupDescriptor::Trivial => vec![0; dim],
        SubgroupDescriptor::Product(_) => {
            let a = &group.canonical[0];
            let b = &group.canonical[1];
            let a_n = normalized(&a.label, &a.matrix, &mut substitutions)?;
            let b_n = match normalize_torsion(&b.matrix)? {
                TorsionNormalization::Quaternion => {
                    return Err(SynthError::Contradiction(format!("{}^2 = C^(2^(n-1))", b.label)))
                }
                _ => b.matrix.clone(),
            };
            let (b_c, h) = commuting_adjust(&a_n, &b_n)?;
            if h != 0 {
                substitutions.push(format!("{0} := {0}*C^{h}", b.label));
            }
            let (t, pairs) = paired_basis(&mut builder, &a_n, &b_c)?;
            check_free(&a.label, &a_n, &t)?;
            check_free(&b.label, &b_c, &t)?;
            pairing = Some(pairs);
            t
        }
        _ => {
            let a = &group.canonical[0];
            let a_n = normalized(&a.label, &a.matrix, &mut substitutions)?;
            let t = builder.a_basis(&a_n, 0)?;
            check_free(&a.label, &a_n, &t)?;
            t
        }
    };
    let mut generator_permutations = BTreeMap::new();
    generator_permutations.insert("C".to_string(), fourier_permutation(&spec.c(), &rescale)?);
    for g in &spec.generators {
        generator_permutations.insert(g.name.clone(), fourier_permutation(&g.matrix, &rescale)?);
    }
    Ok(Certificate {
        n,
        level,
        rescale,
        substitutions,
        pairing,
        fourier: true,
        generator_permutations,
        trace: builder.trace,
    })
}

/// Basis for `A` (acting as `1 + 2^{n-a}`) and a commuting involution `B`
/// (acting as `-1`): each orbit `Γ` of `A` is rescaled along `A` from its
/// smallest element `j`, and `-Γ` from `e'_{-j} = B e'_j`.
fn paired_basis(
    builder: &mut Builder,
    a: &MonomialMatrix,
    b: &MonomialMatrix,
) -> Result<(Vec<u64>, Vec<(u64, u64)>), SynthError> {
    let ra = relation_of(a)?;
    builder.step(0, a, ra.value(), Case::Paired);
    // The single-generator construction confirms A alone can be made
    // coefficient-free, which pins A on e_0 and e_half.
    let t_a = builder.a_basis(a, 1)?;
    check_free("A", a, &t_a)?;
    let m = mask(a.level());
    let dim = a.dim();
    let mut t = vec![0u64; dim];
    let mut pairs = Vec::new();
    for (gamma, partner) in orbit_pairing(&ra)?.pairs {
        let (exps, corner) = rescale_orbit(a, &gamma);
        if !corner.is_one() {
            return Err(SynthError::Contradiction(format!("orbit of {} has corner {corner}", gamma.start())));
        }
        for (j, e) in exps {
            t[j] = e;
        }
        let j = gamma.start() as usize;
        let base = t[j].wrapping_add(b.coeffs()[j]) & m;
        let (exps, _) = rescale_orbit(a, &partner);
        for (x, e) in exps {
            t[x] = (e + base) & m;
        }
        pairs.push((gamma.start(), partner.start()));
    }
    // B fixes e_half because AB (acting as -1 - 2^{n-a}) can be made
    // coefficient-free too.
    let ab = a.compose(b);
    builder.a_basis(&ab, 1)?;
    let half = dim / 2;
    if b.coeffs()[0] != 0 || b.coeffs()[half] != 0 {
        return Err(SynthError::Contradiction("B does not fix e_0 and e_half".into()));
    }
    Ok((t, pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{analyze, Generator, GroupSpec};

    fn spec(n: u32, level: u32, gens: Vec<(&str, u64, Vec<u64>)>) -> GroupSpec {
        let generators = gens
            .into_iter()
            .map(|(name, r, coeffs)| Generator {
                name: name.into(),
                matrix: MonomialMatrix::multiplication_map(n, level, r, coeffs).unwrap(),
                declared_r: Some(r),
            })
            .collect();
        GroupSpec::new(n, level, generators).unwrap()
    }

    fn certify(s: &GroupSpec) -> Result<Certificate, SynthError> {
        synthesize(&analyze(s).unwrap())
    }

    fn assert_all_permutations(s: &GroupSpec, cert: &Certificate) {
        let g = analyze(s).unwrap();
        for e in &g.group.elements {
            fourier_permutation(&e.matrix, &cert.rescale).unwrap();
        }
    }

    #[test]
    fn rescale_orbit_example() {
        // n = 3, r = 3: orbit {1, 3}; coefficients 2 and 6 at level 3 close to 1
        let mut c = vec![0u64; 8];
        c[1] = 2;
        c[3] = 6;
        let a = MonomialMatrix::multiplication_map(3, 3, 3, c).unwrap();
        let (exps, corner) = rescale_orbit(&a, &Orbit { elements: vec![1, 3] });
        assert_eq!(exps, vec![(1, 0), (3, 2)]);
        assert!(corner.is_one());
    }

    #[test]
    fn cyclic_cases_certify() {
        for (n, r) in [(3u32, 5u64), (3, 3), (3, 7), (4, 9), (4, 7), (4, 5), (4, 3), (5, 17), (5, 13), (5, 3), (6, 5)] {
            let dim = 1usize << n;
            // a nontrivial diagonal conjugate of the plain multiplication map
            let d: Vec<u64> = (0..dim as u64).map(|j| (j * j * 3 + j) % (1 << (n + 1))).collect();
            let a0 = MonomialMatrix::multiplication_map(n, n + 1, r, vec![0; dim]).unwrap();
            let a = a0.rescaled(&d);
            let s = GroupSpec::new(
                n,
                n + 1,
                vec![Generator { name: "A".into(), matrix: a, declared_r: Some(r) }],
            )
            .unwrap();
            let cert = certify(&s).unwrap_or_else(|e| panic!("n={n} r={r}: {e}"));
            assert_all_permutations(&s, &cert);
            assert_eq!(cert.rescale[0], 0);
        }
    }

    #[test]
    fn dihedral_case_two_substitutes() {
        let n = 4;
        let a = MonomialMatrix::multiplication_map(n, n, 15, vec![0; 16]).unwrap().mul_c_power(1);
        let s = GroupSpec::new(n, n, vec![Generator { name: "A".into(), matrix: a, declared_r: None }]).unwrap();
        let cert = certify(&s).unwrap();
        assert_eq!(cert.substitutions, vec!["A := A*C".to_string()]);
        assert_eq!(cert.trace[0].case, Case::Dihedral);
    }

    #[test]
    fn quaternion_is_rejected() {
        let n = 3;
        let q: Vec<u64> = (0..8).map(|j| if (j % 2 == 1 && j < 4) || j == 4 { 4 } else { 0 }).collect();
        let s = spec(n, n, vec![("A", 7, q)]);
        assert!(matches!(certify(&s), Err(SynthError::NotPermutationLike(_))));
    }

    #[test]
    fn product_case_with_commuting_adjustment() {
        let n = 4;
        let a = MonomialMatrix::multiplication_map(n, n, 9, vec![0; 16]).unwrap();
        let b = MonomialMatrix::multiplication_map(n, n, 15, vec![0; 16]).unwrap().mul_c_power(1);
        let s = GroupSpec::new(
            n,
            n,
            vec![
                Generator { name: "A".into(), matrix: a, declared_r: Some(9) },
                Generator { name: "B".into(), matrix: b, declared_r: Some(15) },
            ],
        )
        .unwrap();
        let cert = certify(&s).unwrap();
        assert!(cert.substitutions.contains(&"B := B*C^1".to_string()));
        assert!(cert.pairing.is_some());
        assert_all_permutations(&s, &cert);
    }

    #[test]
    fn trivial_quotient() {
        let s = GroupSpec::new(3, 3, vec![]).unwrap();
        let cert = certify(&s).unwrap();
        assert_eq!(cert.rescale, vec![0; 8]);
        assert_eq!(cert.generator_permutations["C"], (1..=8).map(|k| k % 8).collect::<Vec<_>>());
    }

    #[test]
    fn torsion_precondition() {
        // A = μ_5 C^1 at n = 3 has A^2 = C^6 ≠ I; a_basis alone refuses it
        let a = MonomialMatrix::multiplication_map(3, 3, 5, vec![0; 8]).unwrap().mul_c_power(1);
        let mut b = Builder { trace: Vec::new() };
        assert!(matches!(b.a_basis(&a, 0), Err(SynthError::TorsionNotNormalized(_))));
    }
}
