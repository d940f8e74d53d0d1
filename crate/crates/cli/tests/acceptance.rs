//! Acceptance gate: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines;
//! the per-test ok/FAILED status carries the same information either way.
//!
//! Several expected case totals are frozen constants of the deduplicated
//! catalog of semigroups of order ≤ 4 (sizes 1, 5, 24, 188):
//!   Σ 2^n                      =  3_222   (subsets)
//!   Σ n                        =    835   (elements)
//!   Σ #subsemigroups · 2^n     = 30_790   (subsemigroup–subset pairs)
//!   Σ (2^n − 1) · 2^n          = 46_526   (nonempty-generator–subset pairs)
//! and of the order ≤ 3 catalog (sizes 1, 5, 24):
//!   Σ (2^n − 1)² · 2^n         =  9_590   (filter pairs × subsets)

use std::process::Command;
use std::time::Instant;

use syndetic_cli::{build_universe, run_sweep, Report, SweepSpec};

fn sweep(spec: SweepSpec) -> Report {
    spec.validate().expect("acceptance sweep spec must be valid");
    let universe = build_universe(&spec).expect("universe construction");
    run_sweep(&spec, &universe)
}

fn base() -> SweepSpec {
    SweepSpec {
        // Keep the arithmetic checks quiet unless a criterion asks for them.
        ep_sets: 1,
        ..SweepSpec::default()
    }
}

fn cases(report: &Report, theorem: &str, class: &str) -> u64 {
    report
        .records
        .iter()
        .filter(|r| r.theorem == theorem && r.class == class)
        .map(|r| r.cases)
        .sum()
}

fn criterion(name: &str, ok: bool, detail: &str) {
    println!(
        "acceptance {name}: {} ({detail})",
        if ok { "pass" } else { "fail" }
    );
    assert!(ok, "{name}: {detail}");
}

#[test]
fn c1_relative_factorization_theorem_on_the_full_catalog() {
    let report = sweep(SweepSpec {
        orders: vec![1, 2, 3, 4],
        theorems: vec!["pws-factorization".into()],
        ..base()
    });
    let total = cases(&report, "pws-factorization", "catalog");
    let ok = report.failures() == 0 && total == 30_790;
    criterion(
        "C1 piecewise relative syndeticity ⟺ verified syndetic∩thick factorization",
        ok,
        &format!("{total} subsemigroup–subset cases, {} failures", report.failures()),
    );
}

#[test]
fn c2_absolute_factorization_theorem_on_the_full_catalog() {
    let report = sweep(SweepSpec {
        orders: vec![1, 2, 3, 4],
        theorems: vec!["syndetic-thick-factorization".into()],
        ..base()
    });
    let total = cases(&report, "syndetic-thick-factorization", "catalog");
    let ok = report.failures() == 0 && total == 3_222;
    criterion(
        "C2 absolute piecewise syndeticity ⟺ verified syndetic∩thick factorization",
        ok,
        &format!("{total} subset cases, {} failures", report.failures()),
    );
}

#[test]
fn c3_route_agreement_on_the_full_catalog() {
    let report = sweep(SweepSpec {
        orders: vec![1, 2, 3, 4],
        theorems: vec!["pws-three-path".into(), "pws-idempotent-witness".into()],
        ..base()
    });
    let three = cases(&report, "pws-three-path", "catalog");
    let idem = cases(&report, "pws-idempotent-witness", "catalog");
    let ok = report.failures() == 0 && three == 46_526 && idem == 30_790;
    criterion(
        "C3 all decision routes agree (three-path and idempotent)",
        ok,
        &format!("{three} + {idem} cases, {} failures", report.failures()),
    );
}

#[test]
fn c4_product_characterization_and_duality_exhaustive_plus_random() {
    let report = sweep(SweepSpec {
        orders: vec![1, 2, 3, 4, 5],
        max_exhaustive_order: 3,
        random_samples: 40,
        theorems: vec![
            "size-product-characterization".into(),
            "relative-duality".into(),
        ],
        ..base()
    });
    let sup_cat = cases(&report, "size-product-characterization", "catalog");
    let sup_rand = cases(&report, "size-product-characterization", "random");
    let dual_cat = cases(&report, "relative-duality", "catalog");
    let dual_rand = cases(&report, "relative-duality", "random");
    let ok = report.failures() == 0
        && sup_cat == 9_590
        && dual_cat == 9_590
        && sup_rand >= 10_000
        && dual_rand >= 10_000;
    criterion(
        "C4 product characterization and duality, exhaustive ≤ 3 plus ≥ 10⁴ random at orders 4–5",
        ok,
        &format!(
            "catalog {sup_cat}/{dual_cat}, random {sup_rand}/{dual_rand}, {} failures",
            report.failures()
        ),
    );
}

#[test]
fn c5_stack_algebra_suite_exhaustive_and_randomized() {
    let suite: Vec<String> = [
        "mesh-involution",
        "mesh-antitone",
        "stack-product-associative",
        "product-first-position",
        "point-product",
        "closure-elimination",
        "closure-product-commute",
        "mesh-product-closure",
        "filter-product-closed-form",
        "translate-complement",
        "idempotent-translate",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    let report = sweep(SweepSpec {
        orders: vec![1, 2, 3],
        theorems: suite.clone(),
        stack_cases: 16_000,
        ..base()
    });
    let seeded: u64 = report
        .records
        .iter()
        .filter(|r| r.class == "seeded")
        .map(|r| r.cases)
        .sum();
    let exhaustive_all = suite
        .iter()
        .all(|t| cases(&report, t, "catalog") > 0);
    let ok = report.failures() == 0 && seeded >= 100_000 && exhaustive_all;
    criterion(
        "C5 stack algebra suite, exhaustive at n ≤ 3 and ≥ 10⁵ seeded cases at n ≤ 6",
        ok,
        &format!(
            "{} catalog + {seeded} seeded cases, {} failures",
            report.cases() - seeded,
            report.failures()
        ),
    );
}

#[test]
fn c6_kernel_structure_against_brute_force() {
    let report = sweep(SweepSpec {
        orders: vec![1, 2, 3, 4],
        theorems: vec!["kernel-structure".into(), "kernel-membership".into()],
        ..base()
    });
    let structure = cases(&report, "kernel-structure", "catalog");
    let membership = cases(&report, "kernel-membership", "catalog");
    let ok = report.failures() == 0 && structure == 218 && membership == 835;
    criterion(
        "C6 kernel equals brute-force least ideal; minimal left ideals carry idempotents",
        ok,
        &format!("{structure} + {membership} cases, {} failures", report.failures()),
    );
}

#[test]
fn c7_arithmetic_suite_within_two_minutes() {
    let started = Instant::now();
    let report = sweep(SweepSpec {
        orders: vec![1],
        theorems: vec![
            "periodic-classification".into(),
            "progression-witness".into(),
            "factorial-refutation".into(),
        ],
        ep_sets: 200,
        ..SweepSpec::default()
    });
    let elapsed = started.elapsed();
    let classify = cases(&report, "periodic-classification", "seeded");
    let ap = cases(&report, "progression-witness", "seeded");
    let factorial = cases(&report, "factorial-refutation", "regression");
    let ok = report.failures() == 0
        && classify == 200
        && ap == 200
        && factorial >= 5
        && elapsed.as_secs() < 120;
    criterion(
        "C7 arithmetic suite: 200 classified sets, 200 progressions, factorial set refuted",
        ok,
        &format!("{classify}+{ap}+{factorial} cases in {elapsed:.2?}, {} failures", report.failures()),
    );
}

#[test]
fn c8_reports_are_byte_identical_across_runs() {
    let args = [
        "verify",
        "--format",
        "json",
        "--orders",
        "1,2,3",
        "--stack-cases",
        "2000",
        "--ep-sets",
        "50",
        "--seed",
        "7777",
    ];
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_syndetic"))
            .args(args)
            .output()
            .expect("spawn syndetic");
        assert!(out.status.success(), "sweep run failed");
        out.stdout
    };
    let first = run();
    let second = run();
    let ok = first == second && !first.is_empty();
    criterion(
        "C8 two identical sweeps produce byte-identical reports",
        ok,
        &format!("{} bytes compared", first.len()),
    );
}
