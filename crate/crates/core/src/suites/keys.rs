use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::BaseValuation;
use crate::exec::Exec;
use crate::fixtures::{self, q2_root, q2_two_step, qpoly, FtHandle, QHandle, QPoly};
use crate::keypoly::{falsify, structural_reason, Falsifier, SearchBudget, Verdict};
use crate::ordgroup::ExtValue;
use crate::sample;
use crate::valuation::{ValuationHandle, P};

use super::SuiteReport;

/// The two-step chain over `F_2(t)` used for the exhaustive key sweep.
pub fn ft_coherence_chain() -> FtHandle {
    fixtures::ft_three_level(2)
}

/// Structural verdicts against the budgeted falsifier: a structural yes must
/// admit no counterexample, and a structural no must be refuted by one.
pub fn key_coherence<V: BaseValuation>(
    nu: &ValuationHandle<V>,
    candidates: &[P<V>],
    budget: &SearchBudget,
) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("key-decision coherence");
    let inner = budget.with_exec(Exec::Sequential);
    let k = nu.field();
    let outcomes = budget.exec.map(candidates, |q| {
        let name = || q.format(k, "x");
        let reason = match structural_reason(nu, q) {
            Ok(r) => r,
            Err(e) => return (None, Some(format!("{}: {e}", name()))),
        };
        let Some(reason) = reason else { return (None, None) };
        let found = match falsify(nu, q, &inner) {
            Ok(Falsifier::Found { witness, .. }) => Some(witness),
            Ok(Falsifier::Exhausted { .. }) => None,
            Err(e) => return (Some(reason), Some(format!("{}: {e}", name()))),
        };
        let bad = match (reason.verdict(), found) {
            (Verdict::Yes, Some(w)) => {
                Some(format!("{}: structural yes ({reason}) refuted by {}", name(), w.format(k, "x")))
            }
            (Verdict::No, None) => {
                Some(format!("{}: structural no ({reason}) but epsilon maximal within budget", name()))
            }
            _ => None,
        };
        (Some(reason), bad)
    });
    let yes = outcomes.iter().filter(|(r, _)| r.is_some_and(|r| r.verdict() == Verdict::Yes)).count();
    let no = outcomes.iter().filter(|(r, _)| r.is_some_and(|r| r.verdict() == Verdict::No)).count();
    report.notes.push(format!(
        "{} candidates: {yes} structural yes, {no} structural no, {} left to the falsifier",
        candidates.len(),
        candidates.len() - yes - no
    ));
    report.absorb(outcomes.into_iter().map(|(_, bad)| bad).collect());
    report.timed(start)
}

/// Witnesses found by the trichotomy suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrichotomyOutcome {
    /// `(f, g)` with `nu_phi(fg) != nu_phi(f) + nu_phi(g)` for the key of
    /// degree above the class degree.
    pub above_class: Option<(String, String)>,
    /// Same for a degree-3 polynomial that is not a key.
    pub degree_three: Option<(String, String)>,
}

fn truncated(nu: &QHandle, q: &QPoly, f: &QPoly) -> ExtValue {
    nu.truncate_eval(q, f).expect("monic truncation").value
}

fn multiplicativity_witness(nu: &QHandle, q: &QPoly, pairs: &[(QPoly, QPoly)], exec: Exec) -> Option<(QPoly, QPoly)> {
    let k = nu.field();
    exec.find_first(pairs, |(f, g)| {
        let lhs = truncated(nu, q, &f.mul(k, g));
        let rhs = truncated(nu, q, f).add(&truncated(nu, q, g));
        (lhs != rhs).then(|| (f.clone(), g.clone()))
    })
    .map(|(_, w)| w)
}

/// The three branches for `mu = [v_2; x, 1/2] < nu = [mu; x^2 + 2, 3/2]`:
/// keys in the class give valuations between `mu` and `nu`, keys outside it of
/// degree at most 2 truncate to `mu`, and the key `x^4 + 2x^2 + 4` of degree
/// above the class degree truncates to a non-multiplicative function.
pub fn truncation_trichotomy(samples: usize, seed: u64, exec: Exec) -> (SuiteReport, TrichotomyOutcome) {
    let start = Instant::now();
    let mut report = SuiteReport::new("truncation trichotomy");
    let mu = q2_root();
    let nu = q2_two_step();
    let k = *nu.field();
    let base = nu.base().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(QPoly, QPoly)> = (0..samples)
        .map(|_| (sample::random_nonzero(&base, &mut rng, 6), sample::random_nonzero(&base, &mut rng, 6)))
        .collect();

    for phi in [qpoly(&[2, 0, 1]), qpoly(&[2, 2, 1])] {
        let class_phi = nu.prefix(0).equivalent_in(&phi, &qpoly(&[2, 0, 1])).unwrap_or(false);
        report.check(class_phi && mu.mlv_key_case(&phi).ok().flatten().is_some(), || {
            format!("{} should be a key in the class", phi.format(&k, "x"))
        });
        let aug = mu.augment(phi.clone(), nu.evaluate(&phi));
        let Ok(aug) = aug else {
            report.check(false, || format!("augmentation by {} failed", phi.format(&k, "x")));
            continue;
        };
        let mut strict = false;
        let outcomes = exec.map(&pairs, |(f, g)| -> Result<bool, String> {
            let t = truncated(&nu, &phi, f);
            let at = || f.format(&k, "x");
            if t != aug.evaluate(f) {
                return Err(format!("class branch: truncation differs from the augmentation at {}", at()));
            }
            if mu.evaluate(f) > t || t > nu.evaluate(f) {
                return Err(format!("class branch: not between mu and nu at {}", at()));
            }
            if truncated(&nu, &phi, &f.mul(&k, g)) != t.add(&truncated(&nu, &phi, g)) {
                return Err(format!("class branch: not multiplicative at {}", at()));
            }
            Ok(mu.evaluate(f) < t)
        });
        for o in outcomes {
            match o {
                Ok(s) => {
                    strict |= s;
                    report.cases += 1;
                }
                Err(msg) => report.check(false, || msg),
            }
        }
        // phi itself separates mu from the truncation
        strict |= mu.evaluate(&phi) < truncated(&nu, &phi, &phi);
        report.check(strict, || "class branch: truncation equals mu everywhere".into());
    }

    for phi in [qpoly(&[0, 1]), qpoly(&[2, 1])] {
        report.check(mu.mlv_key_case(&phi).ok().flatten().is_some(), || {
            format!("{} should be a key for mu", phi.format(&k, "x"))
        });
        let outcomes = exec.map(&pairs, |(f, _)| {
            (truncated(&nu, &phi, f) != mu.evaluate(f)).then(|| {
                format!(
                    "outside branch: truncation by {} differs from mu at {}",
                    phi.format(&k, "x"),
                    f.format(&k, "x")
                )
            })
        });
        report.absorb(outcomes);
    }

    let mut outcome = TrichotomyOutcome::default();
    let big = qpoly(&[4, 0, 2, 0, 1]);
    report.check(mu.mlv_key_case(&big).ok().flatten().is_some(), || "x^4 + 2x^2 + 4 should be a key for mu".into());
    let mut probe = vec![(qpoly(&[2, 0, 1]), qpoly(&[2, 0, 1]))];
    probe.extend(pairs.iter().cloned());
    let w = multiplicativity_witness(&nu, &big, &probe, exec);
    report.check(w.is_some(), || "no multiplicativity failure above the class degree".into());
    outcome.above_class = w.map(|(f, g)| (f.format(&k, "x"), g.format(&k, "x")));

    let cubic = qpoly(&[0, 0, 0, 1]);
    let budget = SearchBudget::default().with_exec(exec);
    let not_key = matches!(falsify(&nu, &cubic, &budget), Ok(Falsifier::Found { .. }));
    report.check(not_key, || "x^3 should be refuted as a key".into());
    let w = multiplicativity_witness(&nu, &cubic, &pairs, exec);
    report.check(w.is_some(), || "no multiplicativity failure for the cubic truncation".into());
    outcome.degree_three = w.map(|(f, g)| (f.format(&k, "x"), g.format(&k, "x")));
    (report.timed(start), outcome)
}
