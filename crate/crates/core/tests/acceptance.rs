//! Acceptance suite: every criterion runs at zero tolerance (structural
//! equality of exact values) and prints one pass/fail line with its runtime.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use wallcross::verify::{
    bch_cross_check, exp_log_oracle, git_numerics, gv_rationality, l_series_rigid_curve,
    lie_axioms, local_to_global, multiple_cover_equivalence, rigid_curve_forward,
    rigid_curve_inverse, CheckOutcome,
};

const SEED: u64 = 42;

struct Criterion {
    number: u32,
    label: &'static str,
    budget: Option<Duration>,
    run: fn() -> CheckOutcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        label: "rigid-curve forward transform at slopes 0, 1, 2",
        budget: Some(Duration::from_secs(1)),
        run: rigid_curve_forward,
    },
    Criterion {
        number: 2,
        label: "rigid-curve inverse transform recovers 1/m^2",
        budget: Some(Duration::from_secs(1)),
        run: rigid_curve_inverse,
    },
    Criterion {
        number: 3,
        label: "multiple-cover equivalence on 100 random tables",
        budget: Some(Duration::from_secs(30)),
        run: || multiple_cover_equivalence(SEED, 100, 6),
    },
    Criterion {
        number: 4,
        label: "adjoint-expansion cross-check on 50 random tables",
        budget: Some(Duration::from_secs(30)),
        run: || bch_cross_check(SEED, 50, 5),
    },
    Criterion {
        number: 5,
        label: "antisymmetry and Jacobi on 500 random triples",
        budget: None,
        run: || lie_axioms(SEED, 500),
    },
    Criterion {
        number: 6,
        label: "genus-zero expansion q/(1+q)^2 and product oracle",
        budget: Some(Duration::from_secs(5)),
        run: || gv_rationality(SEED),
    },
    Criterion {
        number: 7,
        label: "L-series of the rigid-curve pair is symmetric and trivial",
        budget: Some(Duration::from_secs(5)),
        run: l_series_rigid_curve,
    },
    Criterion {
        number: 8,
        label: "local-to-global aggregation on 50 synthetic models",
        budget: Some(Duration::from_secs(10)),
        run: || local_to_global(SEED, 50),
    },
    Criterion {
        number: 9,
        label: "exp matches the Taylor oracle on 200 random series",
        budget: None,
        run: || exp_log_oracle(SEED, 200, 6),
    },
    Criterion {
        number: 10,
        label: "weight vanishing, homogeneity and stability signs",
        budget: None,
        run: || git_numerics(SEED),
    },
];

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for criterion in CRITERIA {
        let start = Instant::now();
        let outcome = (criterion.run)();
        let elapsed = start.elapsed();
        let in_budget = criterion.budget.map(|b| elapsed <= b).unwrap_or(true);
        let status = if outcome.passed && in_budget {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "criterion {:2} [{}]: {status} ({:.2?}) {}",
            criterion.number, criterion.label, elapsed, outcome.detail
        );
        if !outcome.passed {
            failures.push(format!(
                "criterion {}: {}",
                criterion.number, outcome.detail
            ));
        } else if !in_budget {
            failures.push(format!(
                "criterion {}: over budget ({:.2?} > {:.2?})",
                criterion.number,
                elapsed,
                criterion.budget.unwrap()
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
