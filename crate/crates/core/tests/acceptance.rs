//! Acceptance criteria 1 to 9. Runs without the libtest harness so that the
//! per-criterion lines are always printed; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use keyforge::exec::Exec;
use keyforge::fixtures::{ft_monic_grid, ft_three_level, q2_root, q2_two_step};
use keyforge::keypoly::SearchBudget;
use keyforge::suites::{
    boundedness_rows, chain_invariant_suite, epsilon_product_laws, ft_coherence_chain, key_coherence, residual_anchors,
    residual_multiplicativity, split_root_values, sqrt17_fixture, truncation_trichotomy, valuation_axioms, SuiteReport,
};

struct Criterion {
    number: usize,
    title: &'static str,
    limit: Duration,
    run: fn(Exec) -> Vec<SuiteReport>,
}

fn axioms(e: Exec) -> Vec<SuiteReport> {
    vec![
        valuation_axioms(&q2_root(), 500, 8, 11, e),
        valuation_axioms(&q2_two_step(), 500, 8, 12, e),
        valuation_axioms(&ft_three_level(3), 500, 8, 13, e),
    ]
}

fn table(_: Exec) -> Vec<SuiteReport> {
    vec![boundedness_rows()]
}

fn epsilon_laws(e: Exec) -> Vec<SuiteReport> {
    vec![
        epsilon_product_laws(&q2_two_step(), 300, 100, 31, e),
        epsilon_product_laws(&ft_three_level(3), 300, 100, 32, e),
    ]
}

fn split_roots(e: Exec) -> Vec<SuiteReport> {
    vec![split_root_values(e)]
}

fn coherence(e: Exec) -> Vec<SuiteReport> {
    let nu = ft_coherence_chain();
    let grid = ft_monic_grid(nu.field(), 3, 2);
    vec![key_coherence(&nu, &grid, &SearchBudget::default().with_exec(e))]
}

fn residual(e: Exec) -> Vec<SuiteReport> {
    let limit = keyforge::fixtures::q2_sqrt17().materialize(5).expect("square-root chain");
    vec![
        residual_anchors(&q2_two_step()),
        residual_anchors(&ft_three_level(2)),
        residual_anchors(&ft_three_level(3)),
        residual_anchors(&limit),
        residual_multiplicativity(&q2_two_step(), 100, 6, 61, e),
        residual_multiplicativity(&ft_three_level(3), 100, 5, 62, e),
    ]
}

fn sqrt17(_: Exec) -> Vec<SuiteReport> {
    vec![sqrt17_fixture(6)]
}

fn trichotomy(e: Exec) -> Vec<SuiteReport> {
    let (mut report, outcome) = truncation_trichotomy(200, 81, e);
    if let Some((f, g)) = outcome.above_class {
        report.notes.push(format!("above the class degree: f = {f}, g = {g}"));
    }
    if let Some((f, g)) = outcome.degree_three {
        report.notes.push(format!("degree-3 non-key: f = {f}, g = {g}"));
    }
    vec![report]
}

fn invariants(e: Exec) -> Vec<SuiteReport> {
    vec![chain_invariant_suite(6, 50, 91, e)]
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { number: 1, title: "valuation axioms", limit: Duration::from_secs(5), run: axioms },
        Criterion { number: 2, title: "boundedness table", limit: Duration::from_secs(1), run: table },
        Criterion { number: 3, title: "epsilon of products", limit: Duration::from_secs(10), run: epsilon_laws },
        Criterion { number: 4, title: "split polynomials", limit: Duration::from_secs(30), run: split_roots },
        Criterion { number: 5, title: "key-decision coherence", limit: Duration::from_secs(120), run: coherence },
        Criterion { number: 6, title: "residual normalization", limit: Duration::from_secs(10), run: residual },
        Criterion { number: 7, title: "square root of 17 chain", limit: Duration::from_secs(10), run: sqrt17 },
        Criterion { number: 8, title: "truncation trichotomy", limit: Duration::from_secs(30), run: trichotomy },
        Criterion { number: 9, title: "limit-chain invariants", limit: Duration::from_secs(30), run: invariants },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let exec = Exec::default();
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| c.title.contains(f.as_str()) || c.number.to_string() == *f) {
            continue;
        }
        let start = Instant::now();
        let reports = (c.run)(exec);
        let elapsed = start.elapsed();
        let ok = reports.iter().all(SuiteReport::passed) && elapsed <= c.limit;
        let cases: usize = reports.iter().map(|r| r.cases).sum();
        println!(
            "criterion {}: {} {} ({cases} cases, {elapsed:.2?}, limit {:?})",
            c.number,
            if ok { "PASS" } else { "FAIL" },
            c.title,
            c.limit
        );
        for r in &reports {
            if !r.passed() || !r.notes.is_empty() {
                println!("  {}", r.to_string().replace('\n', "\n  "));
            }
        }
        if elapsed > c.limit {
            println!("  over the time limit");
        }
        failed += usize::from(!ok);
    }
    println!("acceptance: {} of {} criteria failed", failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
