//! Property suites over the bundled fixtures. Each suite returns a report
//! listing its failures; the acceptance tests and the command-line self test
//! share them.

use std::fmt;
use std::time::{Duration, Instant};

mod chains;
mod epsilon;
mod keys;
mod residual;
mod table;
mod valuation;

pub use chains::{chain_invariant_suite, sqrt17_fixture};
pub use epsilon::{epsilon_product_laws, key_epsilon_properties, split_root_values};
pub use keys::{ft_coherence_chain, key_coherence, truncation_trichotomy, TrichotomyOutcome};
pub use residual::{residual_anchors, residual_multiplicativity};
pub use table::boundedness_rows;
pub use valuation::valuation_axioms;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    /// Informational lines (counts, witnesses).
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub(crate) fn new(name: impl Into<String>) -> Self {
        SuiteReport { name: name.into(), cases: 0, failures: Vec::new(), notes: Vec::new(), elapsed: Duration::ZERO }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub(crate) fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    /// Records one case per entry; `Some(msg)` is a failure.
    pub(crate) fn absorb(&mut self, outcomes: Vec<Option<String>>) {
        self.cases += outcomes.len();
        self.failures.extend(outcomes.into_iter().flatten());
    }

    pub(crate) fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} cases, {} failures ({:.2?})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.failures.len(),
            self.elapsed
        )?;
        for note in &self.notes {
            write!(f, "\n  {note}")?;
        }
        for msg in self.failures.iter().take(5) {
            write!(f, "\n  - {msg}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::fixtures::*;
    use crate::keypoly::SearchBudget;

    #[test]
    fn small_suites_pass() {
        let e = Exec::Parallel;
        for r in [
            valuation_axioms(&q2_two_step(), 60, 6, 1, e),
            valuation_axioms(&ft_three_level(3), 30, 5, 2, e),
            epsilon_product_laws(&q2_two_step(), 40, 10, 3, e),
            residual_anchors(&ft_three_level(2)),
            residual_multiplicativity(&q2_two_step(), 30, 5, 4, e),
            truncation_trichotomy(60, 5, e).0,
            chain_invariant_suite(6, 20, 7, e),
            boundedness_rows(),
            sqrt17_fixture(6),
        ] {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn coherence_on_low_degrees() {
        let nu = ft_coherence_chain();
        let grid = ft_monic_grid(nu.field(), 2, 2);
        let r = key_coherence(&nu, &grid, &SearchBudget::new(64, 9));
        assert!(r.passed(), "{r}");
        let r = key_epsilon_properties(&nu, &grid, 40, 6, Exec::Parallel);
        assert!(r.passed(), "{r}");
    }
}
