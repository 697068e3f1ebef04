use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BaseValuation, FfElem, Field, Poly};
use crate::exec::Exec;
use crate::sample;
use crate::valuation::ValuationHandle;

use super::SuiteReport;

/// `R_i(phi_i) = 1` at every level, and `R_i(phi_{i+1}) = y + 1` with
/// normalizer `phi_{i+1} - phi_i` whenever consecutive keys share a degree.
pub fn residual_anchors<V: BaseValuation>(nu: &ValuationHandle<V>) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new(format!("residual anchors on {}", nu.describe()));
    let k = nu.field();
    let steps = nu.steps();
    for i in 0..=nu.depth() {
        let rho = nu.prefix(i);
        if rho.last_gamma().is_infinite() {
            continue;
        }
        let Some(kappa) = rho.residue_field() else { continue };
        let phi = &steps[i].phi;
        let r = rho.residual_canonical(phi);
        report.check(r.as_ref().is_ok_and(|r| *r == Poly::one(&kappa)), || {
            format!("R_{i}({}) = {:?}, expected 1", phi.format(k, "x"), r)
        });
        let Some(next) = steps.get(i + 1) else { continue };
        if next.phi.deg0() != phi.deg0() {
            continue;
        }
        let a = next.phi.sub(k, phi);
        let r = rho.residual_polynomial(phi, &a, &next.phi);
        let y_plus_one = Poly::from_coeffs(&kappa, vec![kappa.one(), kappa.one()]);
        report.check(r.as_ref().is_ok_and(|r| *r == y_plus_one), || {
            format!("R_{i}({}) = {:?}, expected y + 1", next.phi.format(k, "x"), r)
        });
    }
    report.timed(start)
}

/// `R(fg) = R(f) R(g)` on random pairs, canonical normalizer.
pub fn residual_multiplicativity<V: BaseValuation>(
    nu: &ValuationHandle<V>,
    pairs: usize,
    max_deg: usize,
    seed: u64,
    exec: Exec,
) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new(format!("residual multiplicativity on {}", nu.describe()));
    let Some(kappa) = nu.residue_field() else {
        report.check(false, || "residue field unavailable".into());
        return report.timed(start);
    };
    let k = nu.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<_> = (0..pairs)
        .map(|_| {
            (sample::random_nonzero(nu.base(), &mut rng, max_deg), sample::random_nonzero(nu.base(), &mut rng, max_deg))
        })
        .collect();
    let outcomes = exec.map(&items, |(f, g)| {
        let rf = nu.residual_canonical(f);
        let rg = nu.residual_canonical(g);
        let rfg = nu.residual_canonical(&f.mul(k, g));
        match (rf, rg, rfg) {
            (Ok(a), Ok(b), Ok(c)) if a.mul(&kappa, &b) == c => None,
            (a, b, c) => Some(format!(
                "f = {}, g = {}: {} * {} vs {}",
                f.format(k, "x"),
                g.format(k, "x"),
                show(&kappa, a),
                show(&kappa, b),
                show(&kappa, c)
            )),
        }
    });
    report.absorb(outcomes);
    report.timed(start)
}

fn show<K: Field<Elem = FfElem>>(kappa: &K, r: crate::Result<Poly<FfElem>>) -> String {
    match r {
        Ok(p) => p.format(kappa, "y"),
        Err(e) => e.to_string(),
    }
}
