use std::fmt;

use crate::algebra::{is_power_of, BaseValuation, Field, Poly};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ordgroup::{Boundedness, Tail};

use super::invariants::{chain_invariants, ChainInvariants};
use super::search::{find_nonstable_degree, stable_value, NonStableSearch, Stability};
use super::{ChainRule, ChainSpec};
use crate::valuation::{Elem, P};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(String),
    /// Not applicable to this chain; never counted as a pass.
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: &'static str,
    pub status: CheckStatus,
}

#[derive(Clone, Debug)]
pub struct LimitReport<E> {
    pub invariants: ChainInvariants<E>,
    pub lines: Vec<CheckLine>,
}

impl<E> LimitReport<E> {
    pub fn failures(&self) -> Vec<&CheckLine> {
        self.lines.iter().filter(|l| matches!(l.status, CheckStatus::Fail(_))).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn status(&self, name: &str) -> Option<&CheckStatus> {
        self.lines.iter().find(|l| l.name == name).map(|l| &l.status)
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail(why) => write!(f, "FAIL: {why}"),
            CheckStatus::Skipped(why) => write!(f, "skipped: {why}"),
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<24} {}", self.name, self.status)
    }
}

fn status(failures: Vec<String>) -> CheckStatus {
    if failures.is_empty() {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail(failures.join("; "))
    }
}

fn expect(ok: bool, why: impl FnOnce() -> String) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail(why())
    }
}

/// Runs every limit identity that applies to `phi` on the first `budget`
/// steps of the chain. Identities whose hypotheses do not hold are reported
/// as skipped.
pub fn check_limit_theorems<V: BaseValuation>(
    chain: &ChainSpec<V>,
    phi: &P<V>,
    budget: usize,
) -> Result<LimitReport<Elem<V>>> {
    let inv = chain_invariants(chain, phi, budget)?;
    let k = chain.field();
    let n = inv.depth;
    let i0 = inv.stabilization_index;
    let t = inv.t_inf;
    let top = chain.materialize(n)?;
    let chis: Vec<P<V>> = (1..=n).map(|i| chain.step(i).map(|s| s.0)).collect::<Result<_>>()?;
    let fmt = |f: &P<V>| f.format(&k, "x");
    let mut lines = Vec::new();
    let mut push = |name: &'static str, status: CheckStatus| lines.push(CheckLine { name, status });

    let ts = &inv.t_sequence;
    push(
        "t positive, non-increasing",
        expect(ts.iter().all(|&t| t > 0) && ts.windows(2).all(|w| w[0] >= w[1]), || format!("t = {ts:?}")),
    );

    let mut bad = Vec::new();
    for i in i0..=n {
        let expected = inv.alpha_inf.add(&inv.betas[i - 1].mul_int(t as i64));
        if inv.values[i] != expected {
            bad.push(format!("rho_{i}(phi) = {} but alpha + t beta_{i} = {expected}", inv.values[i]));
        }
    }
    push("value = alpha + t beta", status(bad));

    let mut bad = Vec::new();
    for i in i0..=n {
        let mut s = top.prefix(i).truncate_eval(&chis[i - 1], phi)?.attaining;
        s.sort_unstable();
        if s != [0, t] {
            bad.push(format!("S at step {i} is {s:?}"));
        }
    }
    push("attaining set {0, t}", status(bad));

    let mut bad = Vec::new();
    let mut pairs = 0;
    for j in (i0 + 2)..=n {
        let digits = phi.q_expansion(&k, &chis[j - 1])?;
        let lead = digits[t].mul(&k, &chis[j - 1].pow(&k, t as u64));
        for i in (i0 + 1)..j {
            pairs += 1;
            if !top.prefix(i).equivalent_in(phi, &lead)? {
                bad.push(format!("phi is not equivalent to a_t chi_{j}^t under rho_{i}"));
            }
        }
    }
    push(
        "phi ~ a_t chi_j^t",
        if pairs == 0 { CheckStatus::Skipped(format!("no pair i0 < i < j <= {n}")) } else { status(bad) },
    );

    push("residual (y+1)^t", residual_check(&top, &chis, phi, i0, n, t));

    let p = top.base().char_exponent();
    push(
        "t, b powers of p",
        expect(is_power_of(t as u64, p) && is_power_of(inv.b_inf as u64, p), || {
            format!("t = {t}, b = {} with p = {p}", inv.b_inf)
        }),
    );
    push("t b >= mult", expect(t * inv.b_inf >= inv.mult, || format!("t b = {} < mult = {}", t * inv.b_inf, inv.mult)));

    // epsilon variation, from the first step where b is stable
    let j0 = (1..=n).rev().take_while(|&j| inv.b_sequence[j - 1] == inv.b_inf).last().unwrap_or(n);
    let b = inv.b_inf as i64;
    let mut bad = Vec::new();
    for j in j0..=n {
        let eps = &inv.epsilon_sequence[j - 1];
        if inv.betas[j - 1].sub(&eps.mul_int(b)) != inv.delta_inf {
            bad.push(format!("beta_{j} - b epsilon_{j} differs from delta"));
        }
        if j < n {
            let de = inv.epsilon_sequence[j].sub(eps);
            let db = inv.betas[j].sub(&inv.betas[j - 1]).div_int(b);
            if de != db {
                bad.push(format!("epsilon step {de} vs beta step / b = {db} at {j}"));
            }
        }
    }
    push("epsilon variation", status(bad));

    let class = inv.classification.as_ref().map(|c| c.class);
    let tb = t * inv.b_inf;
    push(
        "t b = mult (unbounded)",
        match class {
            Ok(Boundedness::UB) => expect(tb == inv.mult, || format!("t b = {tb}, mult = {}", inv.mult)),
            Ok(Boundedness::HB) => CheckStatus::Skipped(format!(
                "horizontally bounded: t b = {tb}, mult = {}, relation {}",
                inv.mult,
                if tb == inv.mult { "equality" } else { "strict" }
            )),
            Ok(c) => CheckStatus::Skipped(format!("classification {c}")),
            Err(e) => CheckStatus::Skipped(format!("unclassified: {e}")),
        },
    );
    push(
        "t = b = 1 (char 0)",
        match class {
            Ok(Boundedness::UB) if k.characteristic() == 0 => {
                expect(t == 1 && inv.b_inf == 1, || format!("t = {t}, b = {}", inv.b_inf))
            }
            Ok(Boundedness::UB) => CheckStatus::Skipped("positive characteristic".into()),
            _ => CheckStatus::Skipped("not unbounded".into()),
        },
    );
    push(
        "vertically bounded",
        match class {
            Ok(Boundedness::VB) => expect(inv.m_inf == inv.m * t && inv.alpha_inf.is_zero(), || {
                format!("m_inf = {}, m t = {}, alpha = {}", inv.m_inf, inv.m * t, inv.alpha_inf)
            }),
            Ok(c) => CheckStatus::Skipped(format!("classification {c}")),
            Err(e) => CheckStatus::Skipped(format!("unclassified: {e}")),
        },
    );

    let mut bad = Vec::new();
    for b in 1..=phi.deg0() {
        let d = phi.hasse(&k, b);
        if !d.is_zero() && matches!(stable_value(chain, &d, n)?, Stability::NotStabilizedWithin { .. }) {
            bad.push(format!("d_{b} phi = {} not stable", fmt(&d)));
        }
    }
    push("derivatives stable", status(bad));

    push(
        "K1 constant degree",
        expect(chis.iter().all(|c| c.deg0() == inv.m) && inv.m_inf > inv.m, || "degrees vary".into()),
    );
    let increasing = inv.betas.windows(2).all(|w| w[0] < w[1]);
    push(
        "K2 no maximal value",
        match chain.rule() {
            ChainRule::Explicit { tail: Tail::ExplicitOnly, .. } => {
                CheckStatus::Skipped("a finite list without tail has a last value".into())
            }
            _ => expect(increasing, || "betas not strictly increasing".into()),
        },
    );
    push(
        "K3 values increase",
        expect(inv.values.windows(2).all(|w| w[0] < w[1]), || "rho_i(phi) not strictly increasing".into()),
    );
    push(
        "K4 minimal degree",
        match chain.declared_witness() {
            None => CheckStatus::Skipped("no declared witness".into()),
            Some(_) => match find_nonstable_degree(chain, n, 0, 0, Exec::Sequential)? {
                NonStableSearch::Found { m_inf, exact, .. } if m_inf == inv.m_inf && exact => CheckStatus::Pass,
                NonStableSearch::Found { m_inf, exact: true, .. } => {
                    CheckStatus::Fail(format!("declared degree {m_inf} vs {}", inv.m_inf))
                }
                NonStableSearch::Found { .. } => CheckStatus::Skipped("lower degrees not verified stable".into()),
                NonStableSearch::AllStableWithin { budget } => {
                    CheckStatus::Skipped(format!("no non-stable witness within {budget} steps"))
                }
            },
        },
    );
    Ok(LimitReport { invariants: inv, lines })
}

fn residual_check<V: BaseValuation>(
    top: &crate::valuation::ValuationHandle<V>,
    chis: &[P<V>],
    phi: &P<V>,
    i0: usize,
    n: usize,
    t: usize,
) -> CheckStatus {
    let k = top.field();
    let mut bad = Vec::new();
    let mut ran = 0;
    for i in i0..n {
        let rho = top.prefix(i);
        let Some(kappa) = rho.residue_field() else {
            return CheckStatus::Skipped("residue field unavailable".into());
        };
        let u = chis[i].sub(k, &chis[i - 1]);
        match rho.residual_polynomial(&chis[i - 1], &u, phi) {
            Ok(r) => {
                ran += 1;
                let target = Poly::from_coeffs(&kappa, vec![kappa.one(), kappa.one()]).pow(&kappa, t as u64);
                if r != target {
                    bad.push(format!("R_{i}(phi) = {}", r.format(&kappa, "y")));
                }
            }
            Err(Error::ResidueUnsupported) => return CheckStatus::Skipped("residue field unavailable".into()),
            Err(e) => bad.push(format!("step {i}: {e}")),
        }
    }
    if ran == 0 && bad.is_empty() {
        return CheckStatus::Skipped("no step with a successor".into());
    }
    status(bad)
}
