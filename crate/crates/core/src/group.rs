//! Groups `G = <A, (B,) C>` given by monomial generators.
//!
//! Validation reads off the action of each generator on `<C>`, identifies the
//! image `H` of `G` in `Aut(<C>) = Z_{2^n}^*`, and checks that `C` is
//! self-centralizing. In that case every element is uniquely `A^l B^m C^k`
//! for canonical generators `A`, `B`, which is how elements are enumerated.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monomial::{char_factors, perm_similarity, relation_of, CharFactors, MonomialError, MonomialMatrix, PermVerdict};
use crate::residue::{geom_sum, mask, odd_inverse, subgroup_classify, unit_decompose, Residue, SubgroupDescriptor, UnitElement};

/// Cap on the number of elements enumerated for any one group.
pub const MAX_ELEMENTS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator {name}: expected n = {n}, level = {level}")]
    Shape { name: String, n: u32, level: u32 },
    #[error("generator name {0:?} is used twice")]
    DuplicateName(String),
    #[error("generator name \"C\" is reserved for the maximal cycle")]
    ReservedName,
    #[error("generator {name} does not normalize <C>: {detail}")]
    NotNormalizing { name: String, detail: String },
    #[error("generator {name}: declared r = {declared} but A^-1 C A = C^{actual}")]
    RelationMismatch { name: String, declared: u64, actual: u64 },
    #[error("group has more than {0} elements")]
    TooLarge(usize),
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),
    #[error("commutator exponent {k} has valuation below {needed}")]
    CommutingValuation { k: u64, needed: u32 },
    #[error("canonical enumeration disagrees with the generated group: {0}")]
    EnumerationMismatch(String),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

/// A spec generator: a monomial matrix with an optional declared relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub matrix: MonomialMatrix,
    pub declared_r: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub n: u32,
    pub level: u32,
    pub generators: Vec<Generator>,
}

impl GroupSpec {
    pub fn new(n: u32, level: u32, generators: Vec<Generator>) -> Result<Self, GroupError> {
        let mut names = std::collections::HashSet::new();
        for g in &generators {
            if g.name == "C" {
                return Err(GroupError::ReservedName);
            }
            if !names.insert(g.name.clone()) {
                return Err(GroupError::DuplicateName(g.name.clone()));
            }
            if g.matrix.n() != n || g.matrix.level() != level {
                return Err(GroupError::Shape { name: g.name.clone(), n, level });
            }
        }
        Ok(GroupSpec { n, level, generators })
    }

    pub fn c(&self) -> MonomialMatrix {
        MonomialMatrix::cycle(self.n, self.level)
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }
}

/// A word in named generators, e.g. `A^2*B*C^3`; the empty word is `I`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<(String, u64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn single(name: &str) -> Self {
        Word(vec![(name.to_string(), 1)])
    }

    pub fn push(&mut self, name: &str, exp: u64) {
        if exp == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((last, e)) if last == name => *e += exp,
            _ => self.0.push((name.to_string(), exp)),
        }
    }

    pub fn then(&self, name: &str, exp: u64) -> Word {
        let mut w = self.clone();
        w.push(name, exp);
        w
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for (name, e) in &other.0 {
            w.push(name, *e);
        }
        w
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(name, e)| if *e == 1 { name.clone() } else { format!("{name}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A canonical generator together with how it was obtained from the spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedElement {
    pub label: String,
    pub definition: Word,
    pub matrix: MonomialMatrix,
    pub relation: UnitElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub word: Word,
    pub matrix: MonomialMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scope {
    InScope,
    /// Some diagonal element of `G` is not a power of `C`.
    NotSelfCentralized { witness: Word },
}

#[derive(Debug, Clone)]
pub struct ValidatedGroup {
    pub spec: GroupSpec,
    pub relations: Vec<UnitElement>,
    pub h: SubgroupDescriptor,
    pub scope: Scope,
    /// `[A]` for cyclic `H`, `[A, B]` for the product, empty when trivial or
    /// out of scope.
    pub canonical: Vec<NamedElement>,
    pub elements: Vec<GroupElement>,
}

impl ValidatedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn in_scope(&self) -> bool {
        self.scope == Scope::InScope
    }
}

fn bfs_closure(spec: &GroupSpec) -> Result<Vec<GroupElement>, GroupError> {
    let mut gens = vec![("C".to_string(), spec.c())];
    gens.extend(spec.generators.iter().map(|g| (g.name.clone(), g.matrix.clone())));
    let id = MonomialMatrix::identity(spec.n, spec.level);
    let mut index: HashMap<MonomialMatrix, usize> = HashMap::new();
    let mut out = vec![GroupElement { word: Word::identity(), matrix: id.clone() }];
    index.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (name, g) in &gens {
            let y = out[i].matrix.compose(g);
            if index.contains_key(&y) {
                continue;
            }
            if out.len() >= MAX_ELEMENTS {
                return Err(GroupError::TooLarge(MAX_ELEMENTS));
            }
            index.insert(y.clone(), out.len());
            queue.push_back(out.len());
            out.push(GroupElement { word: out[i].word.then(name, 1), matrix: y });
        }
    }
    Ok(out)
}

fn fresh_label(spec: &GroupSpec, preferred: &str) -> String {
    let mut label = preferred.to_string();
    while spec.generator(&label).is_some() {
        label.push('\'');
    }
    label
}

fn pick_canonical(
    spec: &GroupSpec,
    relations: &[UnitElement],
    h: SubgroupDescriptor,
    closure: &[GroupElement],
) -> Vec<NamedElement> {
    let n = spec.n;
    let labels = ["A", "B"];
    h.generators(n)
        .into_iter()
        .zip(labels)
        .map(|(r, preferred)| {
            if let Some((g, rel)) = spec.generators.iter().zip(relations).find(|(_, rel)| rel.value() == r) {
                return NamedElement {
                    label: g.name.clone(),
                    definition: Word::single(&g.name),
                    matrix: g.matrix.clone(),
                    relation: *rel,
                };
            }
            let el = closure
                .iter()
                .find(|e| e.matrix.perm()[1] as u64 == r)
                .expect("every element of H lifts to G");
            NamedElement {
                label: fresh_label(spec, preferred),
                definition: el.word.clone(),
                matrix: el.matrix.clone(),
                relation: relation_of(&el.matrix).expect("closure normalizes <C>"),
            }
        })
        .collect()
}

/// Elements `A^l B^m C^k` in that order (`l` outermost, `k` innermost).
fn canonical_elements(spec: &GroupSpec, canonical: &[NamedElement]) -> Vec<GroupElement> {
    let (n, level) = (spec.n, spec.level);
    let dim = 1u64 << n;
    let id = MonomialMatrix::identity(n, level);
    let (a_label, a_mat, a_ord) = match canonical.first() {
        Some(a) => (a.label.as_str(), a.matrix.clone(), a.relation.order()),
        None => ("A", id.clone(), 1),
    };
    let b = canonical.get(1);
    let mut out = Vec::with_capacity((a_ord * dim * if b.is_some() { 2 } else { 1 }) as usize);
    let mut a_pow = id.clone();
    for l in 0..a_ord {
        let mut prefixes = vec![(Word::identity().then(a_label, l), a_pow.clone())];
        if let Some(b) = b {
            prefixes.push((prefixes[0].0.then(&b.label, 1), a_pow.compose(&b.matrix)));
        }
        for (word, base) in prefixes {
            for k in 0..dim {
                out.push(GroupElement { word: word.then("C", k), matrix: base.mul_c_power(k) });
            }
        }
        a_pow = a_pow.compose(&a_mat);
    }
    out
}

/// Checks the generators, classifies `H`, tests self-centralization and
/// enumerates `G`.
pub fn validate(spec: &GroupSpec) -> Result<ValidatedGroup, GroupError> {
    let mut relations = Vec::with_capacity(spec.generators.len());
    for g in &spec.generators {
        let rel = relation_of(&g.matrix).map_err(|e| GroupError::NotNormalizing {
            name: g.name.clone(),
            detail: match e {
                MonomialError::NotNormalizing(d) => d,
                other => other.to_string(),
            },
        })?;
        if let Some(declared) = g.declared_r {
            let declared = declared & mask(spec.n);
            if declared != rel.value() {
                return Err(GroupError::RelationMismatch {
                    name: g.name.clone(),
                    declared,
                    actual: rel.value(),
                });
            }
        }
        relations.push(rel);
    }
    let h = subgroup_classify(spec.n, &relations);
    let closure = bfs_closure(spec)?;
    let outside = closure.iter().find(|e| e.matrix.is_diagonal() && e.matrix.c_power_exponent().is_none());
    if let Some(w) = outside {
        return Ok(ValidatedGroup {
            spec: spec.clone(),
            relations,
            h,
            scope: Scope::NotSelfCentralized { witness: w.word.clone() },
            canonical: Vec::new(),
            elements: closure,
        });
    }
    let canonical = pick_canonical(spec, &relations, h, &closure);
    let elements = canonical_elements(spec, &canonical);
    if elements.len() != closure.len() {
        return Err(GroupError::EnumerationMismatch(format!(
            "{} canonical words for {} elements",
            elements.len(),
            closure.len()
        )));
    }
    let mut seen: HashMap<&MonomialMatrix, &Word> = closure.iter().map(|e| (&e.matrix, &e.word)).collect();
    for e in &elements {
        if seen.remove(&e.matrix).is_none() {
            return Err(GroupError::EnumerationMismatch(format!("{} repeats or lies outside G", e.word)));
        }
    }
    Ok(ValidatedGroup { spec: spec.clone(), relations, h, scope: Scope::InScope, canonical, elements })
}

/// First element (in enumeration order) whose characteristic polynomial is
/// not that of a permutation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub word: Word,
    pub factors: CharFactors,
    pub verdict: PermVerdict,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} has characteristic polynomial {}: {}", self.word, self.factors, self.verdict)
    }
}

pub fn find_witness(elements: &[GroupElement]) -> Result<Option<Witness>, GroupError> {
    let found = elements
        .par_iter()
        .map(|e| {
            let factors = char_factors(&e.matrix);
            perm_similarity(&factors).map(|verdict| (e, factors, verdict))
        })
        .find_map_first(|res| match res {
            Ok((_, _, v)) if v.is_permutation_type() => None,
            Ok((e, factors, verdict)) => Some(Ok(Witness { word: e.word.clone(), factors, verdict })),
            Err(err) => Some(Err(err)),
        });
    found.transpose().map_err(GroupError::from)
}

/// Shape of `A^{2^a}` for a generator `A` of order `2^a` modulo `<C>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorsionNormalization {
    /// `A^{2^a} = C^power`, and `A C^shift` has order exactly `2^a`.
    Split { order_log: u32, power: u64, shift: u64, normalized: MonomialMatrix },
    /// `r = -1` and `A^2 = I`; `fixes_half` says whether `A e_{2^{n-1}} = e_{2^{n-1}}`.
    Dihedral { fixes_half: bool },
    /// `r = -1` and `A^2 = C^{2^{n-1}}`.
    Quaternion,
}

impl fmt::Display for TorsionNormalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionNormalization::Split { order_log, power, shift, .. } => {
                write!(f, "split (A^{} = C^{power}, shift {shift})", 1u64 << order_log)
            }
            TorsionNormalization::Dihedral { fixes_half: true } => write!(f, "dihedral, fixes e_half"),
            TorsionNormalization::Dihedral { fixes_half: false } => write!(f, "dihedral, negates e_half"),
            TorsionNormalization::Quaternion => write!(f, "quaternion"),
        }
    }
}

/// Finds `h` with `(A C^h)^{2^a} = I` when `r != -1`, and otherwise sorts `A`
/// into the dihedral and quaternion cases.
///
/// With `A^{2^a} = C^s` and `1 + r + ... + r^{2^a - 1} = 2^v u` (`u` odd),
/// `(A C^h)^{2^a} = C^{s + h 2^v u}`, so `h = -(s / 2^v) u^{-1}`.
pub fn normalize_torsion(a: &MonomialMatrix) -> Result<TorsionNormalization, GroupError> {
    let n = a.n();
    let r = relation_of(a)?;
    let order_log = r.order_log();
    let p = a.pow(r.order());
    let s = p.c_power_exponent().ok_or_else(|| {
        GroupError::InconsistentPresentation(format!("A^{} is not a power of C", r.order()))
    })?;
    if r.is_minus_one() {
        let half = 1u64 << (n - 1);
        return match s {
            0 => Ok(TorsionNormalization::Dihedral { fixes_half: a.coeffs()[half as usize] == 0 }),
            x if x == half => Ok(TorsionNormalization::Quaternion),
            other => Err(GroupError::InconsistentPresentation(format!("A^2 = C^{other} with r = -1"))),
        };
    }
    let sum = geom_sum(r.residue(), r.order()).value();
    let v = sum.trailing_zeros();
    if s % (1u64 << v) != 0 {
        return Err(GroupError::InconsistentPresentation(format!(
            "A^{} = C^{s} but C-shifts only reach multiples of 2^{v}",
            r.order()
        )));
    }
    let u_inv = odd_inverse(sum >> v, n);
    let shift = (s >> v).wrapping_mul(u_inv).wrapping_neg() & mask(n);
    let normalized = a.mul_c_power(shift);
    if !normalized.pow(r.order()).is_identity() {
        return Err(GroupError::InconsistentPresentation("torsion shift failed to normalize".into()));
    }
    Ok(TorsionNormalization::Split { order_log, power: s, shift, normalized })
}

/// Replaces `B` by `B C^h` so that it commutes with `A`.
///
/// Requires `A^{-1} C A = C^{1 + 2^e}` and `B^{-1} C B = C^{-1}` with `B^2 = I`.
/// Writing `B^{-1} A B = A C^k`, conjugating by `B C^h` gives
/// `A C^{k - 2^e h}`, so `h = k / 2^e`.
pub fn commuting_adjust(a: &MonomialMatrix, b: &MonomialMatrix) -> Result<(MonomialMatrix, u64), GroupError> {
    let ra = relation_of(a)?;
    let rb = relation_of(b)?;
    if !rb.is_minus_one() || !b.pow(2).is_identity() {
        return Err(GroupError::InconsistentPresentation("B must be a dihedral involution".into()));
    }
    let e = (ra.value() - 1).trailing_zeros();
    if ra.value() != 1 + (1u64 << e) {
        return Err(GroupError::InconsistentPresentation(format!("A must act as 1 + 2^e, got {}", ra.value())));
    }
    let comm = a.inverse().compose(&b.inverse()).compose(a).compose(b);
    let k = comm.c_power_exponent().ok_or_else(|| {
        GroupError::InconsistentPresentation("A^-1 B^-1 A B is not a power of C".into())
    })?;
    if k != 0 && k.trailing_zeros() < e {
        return Err(GroupError::CommutingValuation { k, needed: e });
    }
    let h = k >> e;
    let adjusted = b.mul_c_power(h);
    if a.compose(&adjusted) != adjusted.compose(a) || !adjusted.pow(2).is_identity() {
        return Err(GroupError::InconsistentPresentation("commuting adjustment failed".into()));
    }
    Ok((adjusted, h))
}

/// `A^l C^k` in a cyclic extension with `A^{-1} C A = C^r` and `A^{2^a} = C^s`.
///
/// Products follow `C^k A^m = A^m C^{k r^m}`, with `A^{2^a}` folded back into `C^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CanonicalCyclicElement {
    pub l: u64,
    pub k: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicPresentation {
    pub r: Residue,
    pub order_log: u32,
    pub power: u64,
}

impl CyclicPresentation {
    fn n(&self) -> u32 {
        self.r.n()
    }

    pub fn identity(&self) -> CanonicalCyclicElement {
        CanonicalCyclicElement { l: 0, k: 0 }
    }

    pub fn mul(&self, x: CanonicalCyclicElement, y: CanonicalCyclicElement) -> CanonicalCyclicElement {
        let m = mask(self.n());
        let ord = 1u64 << self.order_log;
        let twisted = x.k.wrapping_mul(self.r.pow(y.l).value());
        let mut l = x.l + y.l;
        let mut k = twisted.wrapping_add(y.k) & m;
        if l >= ord {
            l -= ord;
            k = k.wrapping_add(self.power.wrapping_mul(self.r.pow(l).value())) & m;
        }
        CanonicalCyclicElement { l, k }
    }

    pub fn pow(&self, x: CanonicalCyclicElement, mut e: u64) -> CanonicalCyclicElement {
        let mut base = x;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn to_matrix(&self, x: CanonicalCyclicElement, a: &MonomialMatrix) -> MonomialMatrix {
        a.pow(x.l).mul_c_power(x.k)
    }
}

/// Result of deciding permutation-likeness for one spec.
#[derive(Debug, Clone)]
pub struct GroupAnalysis {
    pub group: ValidatedGroup,
    pub torsion: Vec<(String, TorsionNormalization)>,
    pub witness: Option<Witness>,
}

impl GroupAnalysis {
    pub fn permutation_like(&self) -> bool {
        self.witness.is_none()
    }

    pub fn h(&self) -> SubgroupDescriptor {
        self.group.h
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}

pub fn analyze(spec: &GroupSpec) -> Result<GroupAnalysis, GroupError> {
    let group = validate(spec)?;
    let witness = find_witness(&group.elements)?;
    let torsion = group
        .canonical
        .iter()
        .map(|g| normalize_torsion(&g.matrix).map(|t| (g.label.clone(), t)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupAnalysis { group, torsion, witness })
}

/// Unit for `r`, as used by presentations and tests.
pub fn unit_of(n: u32, r: u64) -> UnitElement {
    unit_decompose(Residue::raw(r, n)).expect("odd multiplier")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gen(name: &str, n: u32, level: u32, r: u64, coeffs: Vec<u64>) -> Generator {
        Generator {
            name: name.into(),
            matrix: MonomialMatrix::multiplication_map(n, level, r, coeffs).unwrap(),
            declared_r: Some(r),
        }
    }

    #[test]
    fn word_display() {
        let w = Word::identity().then("A", 1).then("C", 3);
        assert_eq!(w.to_string(), "A*C^3");
        assert_eq!(Word::identity().to_string(), "I");
        assert_eq!(Word::single("X").then("X", 1).to_string(), "X^2");
    }

    #[test]
    fn validate_identifies_subgroup() {
        let spec = GroupSpec::new(3, 3, vec![gen("A", 3, 3, 3, vec![0; 8])]).unwrap();
        let g = validate(&spec).unwrap();
        // 3 = -1 + 2^{3-1}
        assert_eq!(g.h, SubgroupDescriptor::CyclicMinus(1));
        assert_eq!(g.order(), 16);
        assert!(g.in_scope());
    }

    #[test]
    fn validate_rejects_bad_generators() {
        let bad = Generator {
            name: "X".into(),
            matrix: MonomialMatrix::new(2, 2, vec![0, 1, 3, 2], vec![0; 4]).unwrap(),
            declared_r: None,
        };
        let spec = GroupSpec::new(2, 2, vec![bad]).unwrap();
        assert!(matches!(validate(&spec), Err(GroupError::NotNormalizing { .. })));

        let mut g = gen("A", 3, 3, 5, vec![0; 8]);
        g.declared_r = Some(3);
        let spec = GroupSpec::new(3, 3, vec![g]).unwrap();
        assert!(matches!(validate(&spec), Err(GroupError::RelationMismatch { .. })));

        assert_eq!(
            GroupSpec::new(3, 3, vec![gen("C", 3, 3, 1, vec![0; 8])]),
            Err(GroupError::ReservedName)
        );
    }

    #[test]
    fn extra_diagonal_is_out_of_scope() {
        let d = gen("D", 2, 3, 1, vec![1, 0, 0, 0]);
        let spec = GroupSpec::new(2, 3, vec![d]).unwrap();
        let g = validate(&spec).unwrap();
        assert!(matches!(g.scope, Scope::NotSelfCentralized { .. }));
        assert!(g.order() > 4);
    }

    #[test]
    fn canonical_generator_found_inside_group() {
        // generators -1 and 3 at n = 4 give <-1> x <9> with neither given directly
        let spec = GroupSpec::new(
            4,
            4,
            vec![gen("X", 4, 4, 15, vec![0; 16]), gen("Y", 4, 4, 7, vec![0; 16])],
        )
        .unwrap();
        let g = validate(&spec).unwrap();
        assert_eq!(g.h, SubgroupDescriptor::Product(1));
        assert_eq!(g.canonical[0].label, "A");
        assert_eq!(g.canonical[0].relation.value(), 9);
        assert_eq!(g.canonical[1].label, "X");
        assert_eq!(g.order(), 64);
    }

    #[test]
    fn torsion_normalization() {
        let (n, level) = (5u32, 5u32);
        for r in [5u64, 9, 17, 7, 15, 23] {
            let base = MonomialMatrix::multiplication_map(n, level, r, vec![0; 32]).unwrap();
            for h in 0..32u64 {
                let a = base.mul_c_power(h);
                match normalize_torsion(&a).unwrap() {
                    TorsionNormalization::Split { normalized, order_log, .. } => {
                        assert!(normalized.pow(1 << order_log).is_identity());
                        assert_eq!(relation_of(&normalized).unwrap().value(), r);
                    }
                    other => panic!("unexpected {other:?}"),
                }
            }
        }
        let dihedral = MonomialMatrix::multiplication_map(n, level, 31, vec![0; 32]).unwrap();
        assert_eq!(normalize_torsion(&dihedral).unwrap(), TorsionNormalization::Dihedral { fixes_half: true });
        assert_eq!(
            normalize_torsion(&dihedral.mul_c_power(1)).unwrap(),
            TorsionNormalization::Dihedral { fixes_half: false }
        );
        let q: Vec<u64> = (0..32).map(|j| if (j % 2 == 1 && j < 16) || j == 16 { 16 } else { 0 }).collect();
        let quat = MonomialMatrix::multiplication_map(n, level, 31, q).unwrap();
        assert_eq!(normalize_torsion(&quat).unwrap(), TorsionNormalization::Quaternion);
    }

    #[test]
    fn commuting_adjust_example() {
        // n = 4, A acting as 9, B = B_0 C: B^-1 A B = A C^8 and h = 1.
        let a = MonomialMatrix::multiplication_map(4, 4, 9, vec![0; 16]).unwrap();
        let b0 = MonomialMatrix::multiplication_map(4, 4, 15, vec![0; 16]).unwrap();
        let b = b0.mul_c_power(1);
        let comm = a.inverse().compose(&b.inverse()).compose(&a).compose(&b);
        assert_eq!(comm.c_power_exponent(), Some(8));
        let (adjusted, h) = commuting_adjust(&a, &b).unwrap();
        assert_eq!(h, 1);
        assert_eq!(a.compose(&adjusted), adjusted.compose(&a));
        // already commuting: no change
        assert_eq!(commuting_adjust(&a, &b0).unwrap(), (b0, 0));
    }

    #[test]
    fn enumeration_order_and_size() {
        let spec = GroupSpec::new(3, 3, vec![gen("A", 3, 3, 5, vec![0; 8])]).unwrap();
        let g = validate(&spec).unwrap();
        let words: Vec<String> = g.elements.iter().take(3).map(|e| e.word.to_string()).collect();
        assert_eq!(words, vec!["I", "C", "C^2"]);
        assert_eq!(g.elements[8].word.to_string(), "A");
        assert_eq!(g.elements[9].word.to_string(), "A*C");
    }

    proptest! {
        #[test]
        fn cyclic_multiplication_matches_matrices(
            n in 3u32..6,
            choice in 0usize..8,
            s_seed in 0u64..64,
            l1 in 0u64..64, k1 in 0u64..64, l2 in 0u64..64, k2 in 0u64..64,
        ) {
            let units: Vec<u64> = (1..1u64 << n).step_by(2).collect();
            let r = units[choice % units.len()];
            let ru = unit_of(n, r);
            let ord = ru.order();
            // torsion A^{ord} = C^s must satisfy s (r - 1) = 0
            let mut a = MonomialMatrix::multiplication_map(n, n, r, vec![0; 1 << n]).unwrap();
            let candidates: Vec<u64> = (0..1u64 << n).filter(|s| s.wrapping_mul(r.wrapping_sub(1)) & mask(n) == 0).collect();
            let s = candidates[(s_seed as usize) % candidates.len()];
            let sum = geom_sum(ru.residue(), ord).value();
            if !ru.is_minus_one() && sum != 0 {
                let v = sum.trailing_zeros();
                prop_assume!(s % (1 << v) == 0);
                let h = (s >> v).wrapping_mul(odd_inverse(sum >> v, n)) & mask(n);
                a = a.mul_c_power(h);
            } else {
                prop_assume!(s == 0 || s == 1 << (n - 1));
                if s != 0 {
                    let q: Vec<u64> = (0..1u64 << n).map(|j| if (j % 2 == 1 && j < 1 << (n - 1)) || j == 1 << (n - 1) { 1 << (n - 1) } else { 0 }).collect();
                    a = MonomialMatrix::multiplication_map(n, n, r, q).unwrap();
                }
            }
            prop_assert_eq!(a.pow(ord).c_power_exponent(), Some(s));
            let pres = CyclicPresentation { r: ru.residue(), order_log: ru.order_log(), power: s };
            let x = CanonicalCyclicElement { l: l1 % ord, k: k1 & mask(n) };
            let y = CanonicalCyclicElement { l: l2 % ord, k: k2 & mask(n) };
            let xy = pres.mul(x, y);
            prop_assert_eq!(pres.to_matrix(xy, &a), pres.to_matrix(x, &a).compose(&pres.to_matrix(y, &a)));
            prop_assert_eq!(pres.to_matrix(pres.pow(x, 5), &a), pres.to_matrix(x, &a).pow(5));
        }
    }
}
