//! End-to-end acceptance run: one PASS/FAIL line per criterion, each with a
//! wall-clock budget. Exits nonzero if any criterion fails or overruns.

use std::process::ExitCode;
use std::time::Duration;

use permlike::presentations::TwistPolicy;
use permlike::residue::SubgroupDescriptor;
use permlike::suites::{self, SuiteOutcome};

const SEEDED: TwistPolicy = TwistPolicy::Seeded { seed: 42, count: 100 };

struct Criterion {
    label: &'static str,
    limit: Duration,
    run: fn() -> Vec<SuiteOutcome>,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            label: "geometric-sum valuations, n <= 12",
            limit: secs(5),
            run: || vec![suites::geometric_sum_valuations(12)],
        },
        Criterion {
            label: "cyclotomic product identity, a + k <= 12",
            limit: secs(5),
            run: || vec![suites::cyclotomic_product_identity(12)],
        },
        Criterion {
            label: "odd-index char-poly table, n = 4, 5, 6",
            limit: secs(30),
            run: || vec![suites::odd_index_char_table(&[4, 5, 6])],
        },
        Criterion {
            label: "dihedral and quaternion polynomials, n = 3..6",
            limit: secs(10),
            run: || vec![suites::minus_one_tables(&[3, 4, 5, 6], 100)],
        },
        Criterion {
            label: "cyclic H certified and verified, n = 3..6, canonical + 100 seeded",
            limit: secs(300),
            run: || {
                vec![suites::certify_presentations("cyclic H", &[3, 4, 5, 6], SEEDED, 4, &|p| p.h.is_cyclic())]
            },
        },
        Criterion {
            label: "<-1> x <1+2^(n-a)> certified and verified, n = 3..6, canonical + 100 seeded",
            limit: secs(300),
            run: || {
                vec![suites::certify_presentations("product H", &[3, 4, 5, 6], SEEDED, 4, &|p| {
                    matches!(p.h, SubgroupDescriptor::Product(_))
                })]
            },
        },
        Criterion {
            label: "oracle independence, n <= 4",
            limit: secs(600),
            run: || {
                vec![
                    suites::char_poly_oracle_agreement(&[1, 2, 3, 4], SEEDED),
                    suites::certify_presentations("dense tier on every group", &[1, 2, 3, 4], SEEDED, 4, &|_| true),
                ]
            },
        },
        Criterion {
            label: "permutation similarity vs exhaustive search, groups n <= 5 + 1000 random",
            limit: secs(60),
            run: || vec![suites::similarity_oracle(&[1, 2, 3, 4, 5], SEEDED, 1000, 42)],
        },
        Criterion {
            label: "mutated certificates rejected, 100 per n = 3, 4",
            limit: secs(60),
            run: || vec![suites::mutation_rejection(&[3, 4], 100, 42)],
        },
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    let all = criteria();
    for (i, c) in all.iter().enumerate() {
        let results = (c.run)();
        let elapsed: Duration = results.iter().map(|r| r.elapsed).sum();
        let ok = results.iter().all(|r| r.passed()) && elapsed <= c.limit;
        if !ok {
            failed += 1;
        }
        println!(
            "{} [{}] {}: {:.2?} (limit {:?})",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            c.label,
            elapsed,
            c.limit
        );
        for r in &results {
            println!("    {r}");
        }
    }
    println!("{} of {} criteria passed", all.len() - failed, all.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
