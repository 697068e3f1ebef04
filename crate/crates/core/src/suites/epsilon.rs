use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{is_power_of, BaseValuation};
use crate::exec::Exec;
use crate::fixtures::{q_degree_one, qpoly, r1};
use crate::keypoly::{epsilon, structural_reason, Verdict};
use crate::ordgroup::ExtValue;
use crate::sample;
use crate::valuation::{ValuationHandle, P};

use super::SuiteReport;

/// `epsilon(fg) = max(epsilon f, epsilon g)` on `pairs` random pairs, and
/// `I(fg) = I(g)` whenever `epsilon(f) < epsilon(g) < inf`, until `ordered`
/// such pairs have been seen.
pub fn epsilon_product_laws<V: BaseValuation>(
    nu: &ValuationHandle<V>,
    pairs: usize,
    ordered: usize,
    seed: u64,
    exec: Exec,
) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new(format!("epsilon product laws on {}", nu.describe()));
    let k = nu.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |n: usize| -> Vec<(P<V>, P<V>)> {
        (0..n)
            .map(|_| {
                (sample::random_nonconstant(nu.base(), &mut rng, 4), sample::random_nonconstant(nu.base(), &mut rng, 4))
            })
            .collect()
    };
    // (max law ok, ordered-pair outcome)
    let check = |(f, g): &(P<V>, P<V>)| -> (Option<String>, Option<Option<String>>) {
        let show = || format!("f = {}, g = {}", f.format(k, "x"), g.format(k, "x"));
        let (Ok(ef), Ok(eg), Ok(efg)) = (epsilon(nu, f), epsilon(nu, g), epsilon(nu, &f.mul(k, g))) else {
            return (Some(format!("epsilon failed for {}", show())), None);
        };
        let max_law = (efg.epsilon != ef.epsilon.clone().max(eg.epsilon.clone()))
            .then(|| format!("epsilon(fg) = {} for {}", efg.epsilon, show()));
        let ordered = if ef.epsilon.is_finite() && eg.epsilon.is_finite() && ef.epsilon != eg.epsilon {
            let top = if ef.epsilon < eg.epsilon { &eg } else { &ef };
            Some(
                (efg.i_set != top.i_set)
                    .then(|| format!("I(fg) = {:?}, expected {:?} for {}", efg.i_set, top.i_set, show())),
            )
        } else {
            None
        };
        (max_law, ordered)
    };
    let first = draw(pairs);
    let mut ordered_seen = 0;
    for (max_law, ord) in exec.map(&first, check) {
        report.check(max_law.is_none(), || max_law.clone().unwrap_or_default());
        if let Some(o) = ord {
            if ordered_seen < ordered {
                ordered_seen += 1;
                report.check(o.is_none(), || o.unwrap_or_default());
            }
        }
    }
    let mut rounds = 0;
    while ordered_seen < ordered && rounds < 20 {
        rounds += 1;
        for (_, ord) in exec.map(&draw(pairs.max(50)), check) {
            if let Some(o) = ord {
                if ordered_seen < ordered {
                    ordered_seen += 1;
                    report.check(o.is_none(), || o.unwrap_or_default());
                }
            }
        }
    }
    report.check(ordered_seen >= ordered, || format!("only {ordered_seen} ordered pairs sampled"));
    report.timed(start)
}

fn multisets(n: usize, max: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, lo: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            rec(n, v, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, max, &mut Vec::new(), &mut out);
    out
}

/// Split polynomials `prod (x - theta_i)`, `theta_i` in `0..=15`, up to four
/// roots, under `[v_2; x - c, gamma]` for `c` in `{0, 3}` and `gamma` in
/// `{1/2, 1, 2}`: epsilon is the largest root value and `max I` its
/// multiplicity among the roots.
pub fn split_root_values(exec: Exec) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new("split polynomials: epsilon and root values");
    let roots: Vec<Vec<i64>> = (1..=4).flat_map(|n| multisets(n, 15)).collect();
    for c in [0i64, 3] {
        for gamma in [r1(1, 2), r1(1, 1), r1(2, 1)] {
            let nu = q_degree_one(2, c, gamma.clone());
            let k = *nu.field();
            let root_value = |theta: i64| -> ExtValue {
                let d = c - theta;
                if d == 0 {
                    gamma.clone()
                } else {
                    r1(d.trailing_zeros() as i64, 1).min(gamma.clone())
                }
            };
            let outcomes = exec.map(&roots, |thetas| {
                let f = thetas.iter().fold(qpoly(&[1]), |acc, &th| acc.mul(&k, &qpoly(&[-th, 1])));
                let vals: Vec<ExtValue> = thetas.iter().map(|&th| root_value(th)).collect();
                let top = vals.iter().max().expect("nonempty").clone();
                let mult = vals.iter().filter(|v| **v == top).count();
                let rep = match epsilon(&nu, &f) {
                    Ok(r) => r,
                    Err(e) => return Some(format!("{thetas:?}: {e}")),
                };
                let max_i = *rep.i_set.iter().max().expect("nonempty");
                (rep.epsilon != top || max_i != mult).then(|| {
                    format!(
                        "roots {thetas:?}, c = {c}, gamma = {gamma}: epsilon {} vs {top}, max I {max_i} vs {mult}",
                        rep.epsilon
                    )
                })
            });
            report.absorb(outcomes);
        }
    }
    report.timed(start)
}

/// Properties of structurally verified keys among `candidates`, tested on
/// `samples` random polynomials: the truncation bound on derivatives, the
/// division identity for polynomials of smaller epsilon, the order between
/// epsilon and truncations, maximality of the minimal-degree key, and the
/// p-power shape of `I(Q)`.
pub fn key_epsilon_properties<V: BaseValuation>(
    nu: &ValuationHandle<V>,
    candidates: &[P<V>],
    samples: usize,
    seed: u64,
    exec: Exec,
) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new(format!("key epsilon properties on {}", nu.describe()));
    let k = nu.field();
    let p = nu.base().char_exponent();
    let keys: Vec<(P<V>, ExtValue, Vec<usize>)> = exec
        .map(candidates, |q| {
            let r = structural_reason(nu, q).ok().flatten()?;
            if r.verdict() != Verdict::Yes {
                return None;
            }
            let e = epsilon(nu, q).ok()?;
            Some((q.clone(), e.epsilon, e.i_set))
        })
        .into_iter()
        .flatten()
        .collect();
    report.check(!keys.is_empty(), || "no structurally verified keys among the candidates".into());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs: Vec<P<V>> = (0..samples).map(|_| sample::random_nonconstant(nu.base(), &mut rng, 6)).collect();
    let trunc = |q: &P<V>, f: &P<V>| nu.truncate_eval(q, f).expect("monic").value;

    for (q, _, i_set) in &keys {
        report.check(i_set.iter().all(|&b| is_power_of(b as u64, p)), || {
            format!("I({}) = {i_set:?} has an element that is not a power of {p}", q.format(k, "x"))
        });
    }

    let outcomes = exec.map(&fs, |f| {
        let ef = epsilon(nu, f).ok()?.epsilon;
        let mut errs = Vec::new();
        for (q, eq, _) in &keys {
            if eq.is_infinite() {
                continue;
            }
            let tf = trunc(q, f);
            if tf.is_finite() {
                for b in 1..=f.deg0() {
                    let lhs = trunc(q, &f.hasse(k, b));
                    if lhs < tf.sub(&eq.mul_int(b as i64)) {
                        errs.push(format!(
                            "derivative bound fails: Q = {}, f = {}, b = {b}",
                            q.format(k, "x"),
                            f.format(k, "x")
                        ));
                    }
                }
            }
            if ef < *eq {
                let (qq, a) = f.divrem(k, q).expect("monic divisor");
                let va = nu.evaluate(&a);
                let ok = nu.evaluate(f) == va && (qq.is_zero() || va < nu.evaluate(&qq.mul(k, q)));
                if !ok {
                    errs.push(format!("division identity fails: Q = {}, f = {}", q.format(k, "x"), f.format(k, "x")));
                }
            }
        }
        if nu.last_gamma().is_finite() {
            if let Ok(top) = epsilon(nu, nu.phi_min()) {
                if ef > top.epsilon {
                    errs.push(format!("epsilon({}) exceeds that of the minimal key", f.format(k, "x")));
                }
            }
        }
        (!errs.is_empty()).then(|| errs.join("; "))
    });
    report.absorb(outcomes);

    for (q, eq, _) in &keys {
        for (q2, eq2, _) in &keys {
            if q == q2 || eq.is_infinite() || eq2.is_infinite() {
                continue;
            }
            let strict = eq < eq2;
            let rhs = trunc(q, q2) < nu.evaluate(q2);
            report.check(strict == rhs, || {
                format!("strict order mismatch for {} and {}", q.format(k, "x"), q2.format(k, "x"))
            });
            if eq <= eq2 {
                let bad = fs.iter().find(|f| trunc(q, f) > trunc(q2, f));
                report.check(bad.is_none(), || {
                    format!("truncation order fails for {} <= {}", q.format(k, "x"), q2.format(k, "x"))
                });
            }
        }
    }
    report.timed(start)
}
