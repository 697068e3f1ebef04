use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::BaseValuation;
use crate::exec::Exec;
use crate::sample;
use crate::valuation::ValuationHandle;

use super::SuiteReport;

/// `nu(fg) = nu(f) + nu(g)` and `nu(f + g) >= min(nu f, nu g)` on random pairs.
pub fn valuation_axioms<V: BaseValuation>(
    nu: &ValuationHandle<V>,
    pairs: usize,
    max_deg: usize,
    seed: u64,
    exec: Exec,
) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new(format!("valuation axioms on {}", nu.describe()));
    let k = nu.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<_> = (0..pairs)
        .map(|_| (sample::random_poly(nu.base(), &mut rng, max_deg), sample::random_poly(nu.base(), &mut rng, max_deg)))
        .collect();
    let outcomes = exec.map(&items, |(f, g)| {
        let (vf, vg) = (nu.evaluate(f), nu.evaluate(g));
        let show = || format!("f = {}, g = {}", f.format(k, "x"), g.format(k, "x"));
        if nu.evaluate(&f.mul(k, g)) != vf.add(&vg) {
            return Some(format!("product rule fails for {}", show()));
        }
        if nu.evaluate(&f.add(k, g)) < vf.clone().min(vg) {
            return Some(format!("ultrametric inequality fails for {}", show()));
        }
        None
    });
    report.absorb(outcomes);
    report.timed(start)
}
