//! File formats and the three front-end commands: `check`, `enumerate` and
//! `selftest`. The binary in `permlike-cli` is a thin wrapper around these.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{analyze, Generator, GroupError, GroupSpec, Scope};
use crate::monomial::{MonomialError, MonomialMatrix};
use crate::oracle::{verify_certificate, Tier, VerificationReport};
use crate::presentations::{build_spec, presentations, TwistPolicy};
use crate::residue::mask;
use crate::suites::{self, SuiteOutcome};
use crate::synth::{synthesize, Certificate};

pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_PERMUTATION_LIKE: i32 = 2;
pub const EXIT_OUTSIDE_SCOPE: i32 = 3;

/// Largest `n` accepted in spec files.
pub const MAX_SPEC_N: u32 = 12;
/// Largest coefficient level accepted in spec files.
pub const MAX_SPEC_LEVEL: u32 = 60;
/// Largest `n` the enumerator will run.
pub const MAX_ENUMERATE_N: u32 = 8;
/// The dense tier is run by `enumerate` up to this `n`.
pub const DENSE_ENUMERATE_N: u32 = 4;

/// On-disk group spec. `C` is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub n: u32,
    /// Coefficients are exponents of a primitive `2^level`-th root; defaults to `n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    pub generators: Vec<GeneratorFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub name: String,
    /// Declared relation `g^-1 C g = C^r`. Without `perm`, `g` maps `e_j` to
    /// a multiple of `e_{r j}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    /// `g e_j = ζ^{coeffs[j]} e_{perm[j]}`; any integer, reduced mod `2^level`.
    pub coeffs: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("{field}: {msg}")]
    Invalid { field: String, msg: String },
    #[error("generator {name} does not normalize <C>: {detail}")]
    NotNormalizing { name: String, detail: String },
}

impl SpecError {
    fn invalid(field: impl Into<String>, msg: impl Into<String>) -> Self {
        SpecError::Invalid { field: field.into(), msg: msg.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            SpecError::NotNormalizing { .. } => EXIT_OUTSIDE_SCOPE,
            _ => EXIT_ERROR,
        }
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec, SpecError> {
    let file: SpecFile = serde_json::from_str(text)
        .map_err(|e| SpecError::Parse { line: e.line(), column: e.column(), msg: e.to_string() })?;
    spec_from_file(&file)
}

pub fn spec_from_file(file: &SpecFile) -> Result<GroupSpec, SpecError> {
    let n = file.n;
    if !(1..=MAX_SPEC_N).contains(&n) {
        return Err(SpecError::invalid("n", format!("must be between 1 and {MAX_SPEC_N}, got {n}")));
    }
    let level = file.level.unwrap_or(n);
    if level < n || level > MAX_SPEC_LEVEL {
        return Err(SpecError::invalid("level", format!("must be between n = {n} and {MAX_SPEC_LEVEL}, got {level}")));
    }
    let dim = 1usize << n;
    let modulus = 1i128 << n;
    let full = 1i128 << level;
    let mut generators = Vec::new();
    for (i, g) in file.generators.iter().enumerate() {
        let field = |f: &str| format!("generators[{i}].{f}");
        if g.name.is_empty() {
            return Err(SpecError::invalid(field("name"), "must not be empty"));
        }
        if g.coeffs.len() != dim {
            return Err(SpecError::invalid(field("coeffs"), format!("expected {dim} entries, got {}", g.coeffs.len())));
        }
        let coeffs: Vec<u64> = g.coeffs.iter().map(|&c| (c as i128).rem_euclid(full) as u64).collect();
        let declared_r = g.r.map(|r| (r as i128).rem_euclid(modulus) as u64);
        let matrix = match (&g.perm, declared_r) {
            (Some(perm), _) => MonomialMatrix::new(n, level, perm.clone(), coeffs).map_err(|e| match e {
                MonomialError::NotBijective { .. } => SpecError::invalid(field("perm"), "is not a permutation"),
                other => SpecError::invalid(field("perm"), other.to_string()),
            })?,
            (None, Some(r)) if r % 2 == 0 => {
                return Err(SpecError::NotNormalizing {
                    name: g.name.clone(),
                    detail: format!("j -> {r} j is not a bijection"),
                })
            }
            (None, Some(r)) => MonomialMatrix::multiplication_map(n, level, r & mask(n), coeffs)
                .map_err(|e| SpecError::invalid(field("coeffs"), e.to_string()))?,
            (None, None) => return Err(SpecError::invalid(field("r"), "required when perm is absent")),
        };
        generators.push(Generator { name: g.name.clone(), matrix, declared_r });
    }
    GroupSpec::new(n, level, generators).map_err(|e| match e {
        GroupError::ReservedName => SpecError::invalid("generators", e.to_string()),
        GroupError::DuplicateName(_) => SpecError::invalid("generators", e.to_string()),
        other => SpecError::invalid("generators", other.to_string()),
    })
}

/// The spec file describing `spec`, with `perm` written only where it is not
/// `j -> r j`.
pub fn spec_to_file(spec: &GroupSpec) -> SpecFile {
    let modulus = 1u64 << spec.n;
    let generators = spec
        .generators
        .iter()
        .map(|g| {
            let perm = g.matrix.perm();
            let r = perm.get(1).map(|&p| p as u64).unwrap_or(0);
            let is_mult = (0..modulus).all(|j| perm[j as usize] as u64 == j * r % modulus);
            GeneratorFile {
                name: g.name.clone(),
                r: Some(g.declared_r.unwrap_or(r) as i64),
                coeffs: g.matrix.coeffs().iter().map(|&c| c as i64).collect(),
                perm: (!is_mult).then(|| perm.to_vec()),
            }
        })
        .collect();
    SpecFile { n: spec.n, level: Some(spec.level), generators }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Certified,
    NotPermutationLike,
    OutsideScope,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Certified => EXIT_CERTIFIED,
            Status::NotPermutationLike => EXIT_NOT_PERMUTATION_LIKE,
            Status::OutsideScope => EXIT_OUTSIDE_SCOPE,
            Status::Error => EXIT_ERROR,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub status: Status,
    /// Human-readable log, one line per entry.
    pub log: Vec<String>,
    pub order: Option<usize>,
    pub h: Option<String>,
    /// `None` when the scan did not run.
    pub permutation_like: Option<bool>,
    pub witness: Option<String>,
    pub certificate: Option<Certificate>,
    pub verification: Option<VerificationReport>,
}

impl CheckOutcome {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    fn stop(status: Status, log: Vec<String>) -> Self {
        CheckOutcome {
            status,
            log,
            order: None,
            h: None,
            permutation_like: None,
            witness: None,
            certificate: None,
            verification: None,
        }
    }

    pub fn report(&self) -> String {
        let mut s = String::new();
        for line in &self.log {
            let _ = writeln!(s, "{line}");
        }
        s
    }
}

/// validate, scan for a witness, synthesize, verify.
pub fn check_spec(spec: &GroupSpec, tier: Tier) -> CheckOutcome {
    let mut log = vec![format!("n = {}, level = {}, generators: {}", spec.n, spec.level, generator_names(spec))];
    let analysis = match analyze(spec) {
        Ok(a) => a,
        Err(e @ (GroupError::NotNormalizing { .. } | GroupError::RelationMismatch { .. })) => {
            log.push(format!("outside scope: {e}"));
            return CheckOutcome::stop(Status::OutsideScope, log);
        }
        Err(e) => {
            log.push(format!("error: {e}"));
            return CheckOutcome::stop(Status::Error, log);
        }
    };
    let group = &analysis.group;
    let mut out = CheckOutcome::stop(Status::Error, Vec::new());
    out.order = Some(group.order());
    out.h = Some(group.h.to_string());
    out.permutation_like = Some(analysis.permutation_like());
    log.push(format!("|G| = {}, H = {}", group.order(), group.h));
    for (name, t) in &analysis.torsion {
        log.push(format!("torsion of {name}: {t}"));
    }
    if let Some(w) = &analysis.witness {
        log.push(format!("not permutation-like: {w}"));
        out.witness = Some(w.to_string());
    }
    if let Scope::NotSelfCentralized { witness } = &group.scope {
        log.push(format!("outside scope: {witness} is diagonal but not a power of C"));
        out.status = Status::OutsideScope;
        out.log = log;
        return out;
    }
    if out.witness.is_some() {
        out.status = Status::NotPermutationLike;
        out.log = log;
        return out;
    }
    log.push("every element is similar to a permutation matrix".into());
    let cert = match synthesize(&analysis) {
        Ok(c) => c,
        Err(e) => {
            log.push(format!("error: synthesis failed: {e}"));
            out.log = log;
            return out;
        }
    };
    for s in &cert.substitutions {
        log.push(format!("substitution: {s}"));
    }
    for step in &cert.trace {
        log.push(format!("trace: {step}"));
    }
    let report = verify_certificate(spec, &cert, tier);
    log.push(format!(
        "verification ({} elements): fast = {}, dense = {}",
        report.elements_checked,
        tier_result(report.fast),
        tier_result(report.dense)
    ));
    match &report.failure {
        None => {
            log.push("certified".into());
            out.status = Status::Certified;
        }
        Some(f) => log.push(format!("error: certificate rejected: {f}")),
    }
    out.certificate = Some(cert);
    out.verification = Some(report);
    out.log = log;
    out
}

fn generator_names(spec: &GroupSpec) -> String {
    let names: Vec<&str> = std::iter::once("C").chain(spec.generators.iter().map(|g| g.name.as_str())).collect();
    names.join(", ")
}

fn tier_result(r: Option<bool>) -> &'static str {
    match r {
        None => "skipped",
        Some(true) => "pass",
        Some(false) => "fail",
    }
}

/// `check` on the text of a spec file.
pub fn run_check(text: &str, tier: Tier) -> CheckOutcome {
    match parse_spec(text) {
        Ok(spec) => check_spec(&spec, tier),
        Err(e) => {
            let status = if e.exit_code() == EXIT_OUTSIDE_SCOPE { Status::OutsideScope } else { Status::Error };
            let prefix = if status == Status::OutsideScope { "outside scope" } else { "error" };
            CheckOutcome::stop(status, vec![format!("{prefix}: {e}")])
        }
    }
}

pub fn certificate_to_json(cert: &Certificate) -> String {
    serde_json::to_string_pretty(cert).expect("certificates serialize") + "\n"
}

pub fn certificate_from_json(text: &str) -> Result<Certificate, SpecError> {
    serde_json::from_str(text).map_err(|e| SpecError::Parse { line: e.line(), column: e.column(), msg: e.to_string() })
}

/// Parses `4` or `3-6`.
pub fn parse_n_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad n {t:?}: {e}"));
    let (lo, hi) = match s.split_once('-') {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi || hi > MAX_ENUMERATE_N {
        return Err(format!("n range must lie within 1..={MAX_ENUMERATE_N}, got {s:?}"));
    }
    Ok(lo..=hi)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumRow {
    pub n: u32,
    pub h: String,
    pub torsion: String,
    pub twist: String,
    pub order: Option<usize>,
    pub expected: bool,
    pub permutation_like: Option<bool>,
    pub certified: bool,
    pub fast: Option<bool>,
    pub dense: Option<bool>,
    pub exit: i32,
    /// Witness for rejected groups, failure message for errors.
    pub detail: String,
}

impl EnumRow {
    /// The row agrees with the prediction: certified exactly when expected
    /// permutation-like, rejected with a witness otherwise.
    pub fn as_expected(&self) -> bool {
        if self.expected {
            self.certified
        } else {
            self.exit == EXIT_NOT_PERMUTATION_LIKE
        }
    }
}

/// One row per presentation and twist, in a fixed order regardless of how
/// the work is scheduled.
pub fn run_enumerate(ns: RangeInclusive<u32>, policy: TwistPolicy) -> Vec<EnumRow> {
    let jobs: Vec<_> = ns
        .flat_map(|n| {
            presentations(n)
                .into_iter()
                .enumerate()
                .flat_map(move |(row, p)| policy.twists(row as u64).into_iter().map(move |t| (p, t)))
        })
        .collect();
    jobs.par_iter()
        .map(|(p, twist)| {
            let spec = build_spec(p, *twist);
            let tier = if p.n <= DENSE_ENUMERATE_N { Tier::Both } else { Tier::Fast };
            let out = check_spec(&spec, tier);
            let detail = match out.status {
                Status::Certified => String::new(),
                Status::NotPermutationLike => out.witness.clone().unwrap_or_default(),
                _ => out.log.last().cloned().unwrap_or_default(),
            };
            EnumRow {
                n: p.n,
                h: p.h.to_string(),
                torsion: p.label(),
                twist: twist.to_string(),
                order: out.order,
                expected: p.expected_permutation_like(),
                permutation_like: out.permutation_like,
                certified: out.status == Status::Certified,
                fast: out.verification.as_ref().and_then(|v| v.fast),
                dense: out.verification.as_ref().and_then(|v| v.dense),
                exit: out.exit_code(),
                detail,
            }
        })
        .collect()
}

pub fn rows_to_tsv(rows: &[EnumRow]) -> String {
    let yes_no = |b: Option<bool>| match b {
        None => "-",
        Some(true) => "yes",
        Some(false) => "no",
    };
    let mut s = String::from("n\tH\ttorsion\ttwist\torder\texpected\tpermutation_like\tcertified\tfast\tdense\texit\twitness\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.n,
            r.h,
            r.torsion,
            r.twist,
            r.order.map(|o| o.to_string()).unwrap_or_else(|| "-".into()),
            yes_no(Some(r.expected)),
            yes_no(r.permutation_like),
            yes_no(Some(r.certified)),
            yes_no(r.fast),
            yes_no(r.dense),
            r.exit,
            r.detail.replace(['\t', '\n'], " ")
        );
    }
    s
}

/// Totals and any rows that contradict the prediction.
pub fn enumerate_summary(rows: &[EnumRow]) -> String {
    let count = |f: &dyn Fn(&EnumRow) -> bool| rows.iter().filter(|r| f(r)).count();
    let mut s = format!(
        "{} rows: {} certified, {} not permutation-like, {} outside scope, {} errors\n",
        rows.len(),
        count(&|r| r.exit == EXIT_CERTIFIED),
        count(&|r| r.exit == EXIT_NOT_PERMUTATION_LIKE),
        count(&|r| r.exit == EXIT_OUTSIDE_SCOPE),
        count(&|r| r.exit == EXIT_ERROR),
    );
    for r in rows.iter().filter(|r| !r.as_expected()) {
        let _ = writeln!(s, "unexpected: n={} H={} {} {}: exit {} {}", r.n, r.h, r.torsion, r.twist, r.exit, r.detail);
    }
    s
}

/// The quick versions of the invariant suites.
pub fn run_selftest() -> Vec<SuiteOutcome> {
    suites::quick()
}

pub fn scoreboard(results: &[SuiteOutcome]) -> String {
    let mut s = String::new();
    for r in results {
        let _ = writeln!(s, "{}", r);
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(s, "{} of {} suites passed", results.len() - failed, results.len());
    s
}
