use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use num_traits::ToPrimitive;

use crate::algebra::{BaseValuation, Field, Poly};
use crate::error::Error;
use crate::exec::Exec;
use crate::fixtures::{ft3_geometric, ft3_sqrt_one_plus_t, q2_sqrt17, q7_sqrt2};
use crate::limitchain::{chain_invariants, check_limit_theorems, stable_value, ChainSpec, CheckStatus, Stability};
use crate::ordgroup::{int, Boundedness, ExtValue};
use crate::sample;
use crate::valuation::P;

use super::SuiteReport;

/// Checks that must pass on every essential bundled chain.
const REQUIRED: [&str; 6] = [
    "t positive, non-increasing",
    "t, b powers of p",
    "t b >= mult",
    "attaining set {0, t}",
    "phi ~ a_t chi_j^t",
    "derivatives stable",
];

fn essential_chain<V: BaseValuation>(
    report: &mut SuiteReport,
    name: &str,
    chain: &ChainSpec<V>,
    budget: usize,
    samples: usize,
    seed: u64,
) {
    let Some(phi) = chain.declared_witness() else {
        report.check(false, || format!("{name}: no declared witness"));
        return;
    };
    match check_limit_theorems(chain, phi, budget) {
        Ok(r) => {
            for line in &r.lines {
                let required = REQUIRED.contains(&line.name);
                let ok = match &line.status {
                    CheckStatus::Pass => true,
                    CheckStatus::Fail(_) => false,
                    CheckStatus::Skipped(_) => !required,
                };
                report.check(ok, || format!("{name}: {line}"));
            }
            let inv = &r.invariants;
            report.notes.push(format!(
                "{name}: t = {}, alpha = {}, b = {}, delta = {}, {}",
                inv.t_inf,
                inv.alpha_inf,
                inv.b_inf,
                inv.delta_inf,
                inv.classification.as_ref().map_or("unclassified".to_string(), |c| c.class.to_string())
            ));
        }
        Err(e) => report.check(false, || format!("{name}: {e}")),
    }

    twin_witness(report, name, chain, phi, budget);

    // every sampled key of the chain degree is eventually exceeded by the betas
    let (Ok(top), Ok(betas)) = (chain.materialize(budget), chain.betas(budget)) else {
        report.check(false, || format!("{name}: materialization failed"));
        return;
    };
    let base = top.base().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let last = betas.last().expect("budget >= 1").clone();
    for _ in 0..samples {
        let f = sample::random_monic(&base, &mut rng, chain.stable_degree());
        let v = top.evaluate(&f);
        report.check(v < last, || format!("{name}: no beta exceeds the value {v} of {}", f.format(top.field(), "x")));
    }
}

/// A second witness `psi = phi + pi^K` with `v(pi^K)` above `rho_N(phi)` is
/// non-stable over the probed depth; it must be equivalent to `phi` under
/// every probed prefix and share `t` and `alpha`.
fn twin_witness<V: BaseValuation>(
    report: &mut SuiteReport,
    name: &str,
    chain: &ChainSpec<V>,
    phi: &P<V>,
    budget: usize,
) {
    let Ok(top) = chain.materialize(budget) else {
        report.check(false, || format!("{name}: materialization failed"));
        return;
    };
    let k = top.field();
    let (Some(pi), Some(coords)) = (top.base().uniformizer(), top.evaluate(phi).coords().map(<[_]>::to_vec)) else {
        report.check(false, || format!("{name}: no uniformizer or infinite value"));
        return;
    };
    let exponent = coords[top.coord()].floor().to_integer().to_u64().unwrap_or(0) + 2;
    let psi = phi.add(k, &Poly::constant(k, k.pow(&pi, exponent)));
    let equivalent = (0..=budget).all(|i| top.prefix(i).equivalent_in(phi, &psi).unwrap_or(false));
    report.check(equivalent, || format!("{name}: the perturbed witness is not equivalent at every depth"));
    match (chain_invariants(chain, phi, budget), chain_invariants(chain, &psi, budget)) {
        (Ok(a), Ok(b)) => report.check(a.t_inf == b.t_inf && a.alpha_inf == b.alpha_inf, || {
            format!("{name}: t or alpha differ between the two witnesses")
        }),
        (Err(e), _) | (_, Err(e)) => report.check(false, || format!("{name}: {e}")),
    }
}

/// Limit invariants and their identities on the bundled essential chains, and
/// the refusal on the inessential one.
pub fn chain_invariant_suite(budget: usize, samples: usize, seed: u64, exec: Exec) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("limit-chain invariants");
    let runs: Vec<SuiteReport> = exec.map(&[0usize, 1, 2], |&which| {
        let mut r = SuiteReport::new("");
        match which {
            0 => essential_chain(&mut r, "sqrt 17 over Q_2", &q2_sqrt17(), budget, samples, seed),
            1 => essential_chain(&mut r, "sqrt 2 over Q_7", &q7_sqrt2(), budget, samples, seed),
            _ => essential_chain(&mut r, "sqrt(1+t) over F_3(t)", &ft3_sqrt_one_plus_t(), budget, samples, seed),
        }
        r
    });
    for r in runs {
        report.cases += r.cases;
        report.failures.extend(r.failures);
        report.notes.extend(r.notes);
    }
    let geo = ft3_geometric(budget);
    let refused = geo
        .declared_witness()
        .map(|phi| matches!(chain_invariants(&geo, phi, budget), Err(Error::NotALimitCandidate(_))));
    report.check(refused == Some(true), || "inessential chain: limit invariants were not refused".into());
    report.timed(start)
}

/// The square root of 17 over `(Q, v_2)` to depth `depth`: stable value of
/// `x - 1`, growth of `rho_i(x^2 - 17) = 1 + beta_i`, the limit invariants and
/// the identities that hold for unbounded chains in characteristic zero.
pub fn sqrt17_fixture(depth: usize) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new(format!("square root of 17 to depth {depth}"));
    let chain = q2_sqrt17();
    let one = || ExtValue::Finite(vec![int(1)]);
    let x_minus_1 = Poly::from_i64s(&crate::algebra::Rationals, &[-1, 1]);
    let phi = Poly::from_i64s(&crate::algebra::Rationals, &[-17, 0, 1]);
    let stable = stable_value(&chain, &x_minus_1, depth);
    report.check(stable == Ok(Stability::Stable { value: ExtValue::Finite(vec![int(3)]), at_index: 2 }), || {
        format!("stable value of x - 1: {stable:?}")
    });
    let (Ok(betas), Ok(values)) = (chain.betas(depth), chain.values(&phi, depth)) else {
        report.check(false, || "materialization failed".into());
        return report.timed(start);
    };
    report.notes.push(format!("beta = {}", betas.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")));
    report.check(values.windows(2).all(|w| w[0] < w[1]), || "rho_i(x^2 - 17) is not strictly increasing".into());
    for i in 1..=depth {
        let expected = one().add(&betas[i - 1]);
        report.check(values[i] == expected, || format!("rho_{i}(x^2 - 17) = {} instead of {expected}", values[i]));
    }
    match check_limit_theorems(&chain, &phi, depth) {
        Ok(r) => {
            let inv = &r.invariants;
            report.check(inv.t_sequence.iter().all(|&t| t == 1), || format!("t = {:?}", inv.t_sequence));
            report.check(inv.t_inf == 1 && inv.b_inf == 1 && inv.alpha_inf == one() && inv.delta_inf.is_zero(), || {
                format!("t = {}, alpha = {}, b = {}, delta = {}", inv.t_inf, inv.alpha_inf, inv.b_inf, inv.delta_inf)
            });
            let ub = inv.classification.as_ref().is_ok_and(|c| c.class == Boundedness::UB);
            report.check(ub, || format!("classification {:?}", inv.classification));
            for name in ["t b = mult (unbounded)", "t = b = 1 (char 0)", "epsilon variation"] {
                report.check(r.status(name) == Some(&CheckStatus::Pass), || format!("{name}: {:?}", r.status(name)));
            }
            for line in r.failures() {
                report.check(false, || line.to_string());
            }
        }
        Err(e) => report.check(false, || e.to_string()),
    }
    report.timed(start)
}
