//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pfusion_core::arith::{p_part, prime_divisors};
use pfusion_core::catalog::{quaternion_by_c3, quaternion_factor, standard_catalog, GroupSpec};
use pfusion_core::harness::{run_suite, ClaimId, SuiteOptions, SuiteReport, Verdict};
use pfusion_core::lattice::P_GROUP_CAP;
use pfusion_core::nilpotency::{
    frobenius_criterion, hall_petrescu_check, is_p_nilpotent, normal_complement_oracle, omega_bar,
    upper_central_series,
};
use pfusion_core::{controls_fusion, FiniteGroup, FusionClass, Subgroup};

const QUATERNION_TIME_LIMIT: Duration = Duration::from_secs(1);
const SUITE_TIME_LIMIT: Duration = Duration::from_secs(300);
const SUITE_MAX_ORDER: usize = 200;
const MIN_THEOREM_B_CELLS: usize = 40;
const COMPLEMENT_ORACLE_MAX_ORDER: usize = 100;

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn outcome(name: &'static str, passed: bool, detail: String) -> Outcome {
    Outcome { name, passed, detail }
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool")
        .install(f)
}

fn catalog_cells(max_order: usize) -> Vec<(String, FiniteGroup, u64)> {
    standard_catalog(max_order)
        .expect("catalog")
        .into_iter()
        .flat_map(|e| {
            prime_divisors(e.group.order())
                .into_iter()
                .map(move |p| (e.name.clone(), e.group.clone(), p))
        })
        .collect()
}

fn quaternion_example() -> Outcome {
    let start = Instant::now();
    let g = quaternion_by_c3().unwrap();
    let q = quaternion_factor(&g).unwrap();
    let involutions = controls_fusion(&q, FusionClass::CyclicP(2)).unwrap().holds();
    let nilpotent = is_p_nilpotent(&g, 2).unwrap().p_nilpotent;
    let cp = controls_fusion(&q, FusionClass::Cp(2)).unwrap();
    let witness_order = cp.witness_b.as_ref().map(|w| w.subgroup.order());
    let elapsed = start.elapsed();
    let passed = g.order() == 24
        && involutions
        && !nilpotent
        && !cp.holds()
        && witness_order == Some(4)
        && elapsed < QUATERNION_TIME_LIMIT;
    outcome(
        "quaternion example",
        passed,
        format!(
            "|G|={}, controls C2-fusion={involutions}, 2-nilpotent={nilpotent}, controls Cp-fusion={}, witness order={witness_order:?}, {elapsed:?}",
            g.order(),
            cp.holds()
        ),
    )
}

fn theorem_b(report: &SuiteReport, elapsed: Duration) -> Outcome {
    let t = report.claim_totals(ClaimId::TheoremB);
    let passed = t.fail == 0 && t.skipped == 0 && t.cells() >= MIN_THEOREM_B_CELLS && elapsed < SUITE_TIME_LIMIT;
    outcome(
        "theorem B biconditional",
        passed,
        format!("{} cells, {} failures, suite time {elapsed:?} (1 thread)", t.cells(), t.fail),
    )
}

fn frobenius_cross_oracle() -> Outcome {
    let mut checked = 0;
    let mut disagreements = Vec::new();
    for (name, g, p) in catalog_cells(400) {
        if p_part(g.order(), p) > P_GROUP_CAP {
            continue;
        }
        checked += 1;
        let frob = frobenius_criterion(&g, p).unwrap().p_nilpotent;
        let direct = is_p_nilpotent(&g, p).unwrap().p_nilpotent;
        if frob != direct {
            disagreements.push(format!("{name}@{p}"));
        }
    }
    outcome(
        "Frobenius cross-oracle",
        disagreements.is_empty() && checked > 0,
        format!("{checked} cells, disagreements: {disagreements:?}"),
    )
}

fn complement_valid(g: &FiniteGroup, p: u64, n: &Subgroup) -> bool {
    let sylow = g.sylow_subgroup(p).unwrap();
    n.is_normal_in(&g.whole())
        && n.order() == g.order() / p_part(g.order(), p)
        && n.intersection(&sylow).unwrap().is_trivial()
}

fn complement_oracle() -> Outcome {
    let mut checked = 0;
    let mut problems = Vec::new();
    for (name, g, p) in catalog_cells(COMPLEMENT_ORACLE_MAX_ORDER) {
        checked += 1;
        let verdict = is_p_nilpotent(&g, p).unwrap();
        let oracle = normal_complement_oracle(&g, p).unwrap();
        if verdict.p_nilpotent != oracle.is_some() {
            problems.push(format!("{name}@{p}: disagree"));
            continue;
        }
        if let Some(k) = &verdict.complement {
            if !complement_valid(&g, p, k) || Some(k) != oracle.as_ref() {
                problems.push(format!("{name}@{p}: complement"));
            }
        }
    }
    outcome(
        "complement oracle",
        problems.is_empty() && checked > 0,
        format!("{checked} cells, problems: {problems:?}"),
    )
}

fn implication_suites(report: &SuiteReport) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for claim in [
        ClaimId::Corollary1,
        ClaimId::PropositionPriddy,
        ClaimId::CorollaryPriddy,
        ClaimId::CorollaryPcentral,
    ] {
        let t = report.claim_totals(claim);
        ok &= t.fail == 0 && t.skipped == 0 && t.pass >= 1 && t.vacuous >= 1;
        parts.push(format!("{claim}: pass {} vacuous {} fail {}", t.pass, t.vacuous, t.fail));
    }
    outcome("implication suites", ok, parts.join("; "))
}

fn hall_petrescu() -> Outcome {
    let mut exercised = 0;
    let mut failures = Vec::new();
    for (name, g, p) in catalog_cells(400) {
        let k = omega_bar(&g, p).unwrap();
        if upper_central_series(&g).first_term_containing(&k).is_none() {
            continue;
        }
        exercised += 1;
        if !hall_petrescu_check(&g, p).unwrap().holds {
            failures.push(format!("{name}@{p}"));
        }
    }
    outcome(
        "Hall-Petrescu consequence",
        failures.is_empty() && exercised > 0,
        format!("{exercised} hypercentral cells, failures: {failures:?}"),
    )
}

fn spot_values() -> Outcome {
    let s3 = GroupSpec::Symmetric(3).build().unwrap();
    let s4 = GroupSpec::Symmetric(4).build().unwrap();
    let a4 = GroupSpec::Alternating(4).build().unwrap();
    let q8 = GroupSpec::Quaternion8.build().unwrap();
    let nil = |g: &FiniteGroup, p| is_p_nilpotent(g, p).unwrap().p_nilpotent;

    let sylow = s4.sylow_subgroup(2).unwrap().order();
    let center = q8.center();
    let center_ok = center.order() == 2
        && center.members().iter().all(|&x| q8.element_order(x) <= 2);
    let series = upper_central_series(&q8);
    let series_ok = series.len() == 3 && series.hypercenter() == &q8.whole();
    let checks = [
        ("|Syl2(S4)| = 8", sylow == 8),
        ("Z(Q8) = {±1}", center_ok),
        ("UCS(Q8) has 3 terms ending at Q8", series_ok),
        ("S3 2-nilpotent", nil(&s3, 2)),
        ("S3 not 3-nilpotent", !nil(&s3, 3)),
        ("A4 3-nilpotent", nil(&a4, 3)),
        ("A4 not 2-nilpotent", !nil(&a4, 2)),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    outcome(
        "spot values",
        failed.is_empty(),
        format!("{} checks, failed: {failed:?}", checks.len()),
    )
}

fn determinism(first: &SuiteReport) -> Outcome {
    let again = run_suite(SUITE_MAX_ORDER, &SuiteOptions::default()).unwrap();
    let (a, b) = (first.to_json(), again.to_json());
    outcome(
        "determinism",
        a == b,
        format!("{} bytes vs {} bytes", a.len(), b.len()),
    )
}

fn main() -> ExitCode {
    // Honour `cargo test -- --list` and filters without doing the work twice.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }

    let start = Instant::now();
    let report = single_threaded(|| run_suite(SUITE_MAX_ORDER, &SuiteOptions::default()).unwrap());
    let suite_time = start.elapsed();
    let failures: Vec<String> = report
        .cells
        .iter()
        .filter(|c| c.verdict == Verdict::Fail)
        .map(|c| format!("{}:{}@{}", c.claim, c.group, c.prime))
        .collect();
    if !failures.is_empty() {
        eprintln!("suite failures: {failures:?}");
    }

    let outcomes = [
        quaternion_example(),
        theorem_b(&report, suite_time),
        frobenius_cross_oracle(),
        complement_oracle(),
        implication_suites(&report),
        hall_petrescu(),
        spot_values(),
        determinism(&report),
    ];
    let mut all = true;
    for o in &outcomes {
        all &= o.passed;
        println!(
            "[{}] {:<28} {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        outcomes.iter().filter(|o| o.passed).count(),
        outcomes.len()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
