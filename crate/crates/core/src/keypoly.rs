//! The epsilon invariant, residues of degree-zero units, residual polynomials
//! and the decision procedures for key polynomials.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BaseValuation, FfElem, Field, Poly};
use crate::error::{domain, Error, Result};
use crate::exec::Exec;
use crate::ordgroup::ExtValue;
use crate::sample;
use crate::valuation::{MlvCase, ValuationHandle, P};

/// One row of the epsilon table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonRow {
    pub b: usize,
    /// `nu(d_b f)`, infinite when the derivative vanishes.
    pub derivative_value: ExtValue,
    /// `(nu(f) - nu(d_b f)) / b`; `None` stands for minus infinity.
    pub quotient: Option<ExtValue>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonReport {
    pub value: ExtValue,
    pub epsilon: ExtValue,
    pub i_set: Vec<usize>,
    pub table: Vec<EpsilonRow>,
}

/// `epsilon(f) = max_b (nu(f) - nu(d_b f)) / b` and its argmax set.
pub fn epsilon<V: BaseValuation>(nu: &ValuationHandle<V>, f: &P<V>) -> Result<EpsilonReport> {
    epsilon_by(nu.field(), |g| Ok(nu.evaluate(g)), f)
}

/// [`epsilon`] for any valuation given by its evaluation map.
pub fn epsilon_by<F: Field>(
    k: &F,
    value_of: impl Fn(&Poly<F::Elem>) -> Result<ExtValue>,
    f: &Poly<F::Elem>,
) -> Result<EpsilonReport> {
    let n = f.deg0();
    if f.is_zero() || n == 0 {
        return domain("epsilon of a constant polynomial");
    }
    let value = value_of(f)?;
    let mut table = Vec::with_capacity(n);
    for b in 1..=n {
        let dv = value_of(&f.hasse(k, b))?;
        let quotient = if dv.is_infinite() {
            None
        } else if value.is_infinite() {
            Some(ExtValue::Infinity)
        } else {
            Some(value.sub(&dv).div_int(b as i64))
        };
        table.push(EpsilonRow { b, derivative_value: dv, quotient });
    }
    let epsilon =
        table.iter().filter_map(|r| r.quotient.clone()).max().expect("the top derivative is a nonzero constant");
    let i_set = if value.is_infinite() {
        vec![f.multiplicity(k)?]
    } else {
        table.iter().filter(|r| r.quotient.as_ref() == Some(&epsilon)).map(|r| r.b).collect()
    };
    Ok(EpsilonReport { value, epsilon, i_set, table })
}

/// Residue of `in g / in h`, a degree-zero unit.
pub fn residue_of_unit<V: BaseValuation>(nu: &ValuationHandle<V>, g: &P<V>, h: &P<V>) -> Result<FfElem> {
    if g.is_zero() || h.is_zero() {
        return Err(Error::NotAUnit);
    }
    if nu.evaluate(g) != nu.evaluate(h) {
        return Err(Error::NotDegreeZero);
    }
    nu.unit_residue(&[(g.clone(), 1), (h.clone(), -1)])
}

pub fn residual_polynomial<V: BaseValuation>(
    nu: &ValuationHandle<V>,
    phi: &P<V>,
    u: &P<V>,
    f: &P<V>,
) -> Result<Poly<FfElem>> {
    nu.residual_polynomial(phi, u, f)
}

/// Residual key criterion; the case is `None` exactly when the answer is false.
pub fn is_mlv_key<V: BaseValuation>(nu: &ValuationHandle<V>, chi: &P<V>) -> Result<(bool, Option<MlvCase>)> {
    let case = nu.mlv_key_case(chi)?;
    Ok((case.is_some(), case))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Undetermined => "undetermined",
        })
    }
}

/// Structural reasons. `level` indexes the chain prefix `mu_level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KeyReason {
    DegreeOne,
    SupportGenerator,
    /// Equivalent under `mu_level` to the key of the next step; the
    /// truncation is the augmentation of `mu_level` by `Q`.
    InPhiClass {
        level: usize,
    },
    /// Key of minimal degree for a proper prefix; the truncation is that prefix.
    MinimalBelow {
        level: usize,
    },
    /// Key of minimal degree for the valuation itself.
    MinimalForWhole,
    /// Key of a proper prefix, outside the class, above its minimal degree.
    NonMinimalBelow {
        level: usize,
    },
    /// Key of the valuation itself above its minimal degree.
    NonMinimalForWhole,
}

impl KeyReason {
    pub fn verdict(self) -> Verdict {
        match self {
            KeyReason::NonMinimalBelow { .. } | KeyReason::NonMinimalForWhole => Verdict::No,
            _ => Verdict::Yes,
        }
    }
}

impl fmt::Display for KeyReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KeyReason::DegreeOne => write!(f, "monic of degree one"),
            KeyReason::SupportGenerator => write!(f, "generates the support"),
            KeyReason::InPhiClass { level } => {
                write!(f, "equivalent under mu_{level} to the next chain key (class of mu_{level} < nu)")
            }
            KeyReason::MinimalBelow { level } => {
                write!(f, "key of minimal degree for mu_{level}, outside the class of mu_{level} < nu")
            }
            KeyReason::MinimalForWhole => write!(f, "key of minimal degree for nu itself"),
            KeyReason::NonMinimalBelow { level } => {
                write!(f, "key for mu_{level} of non-minimal degree, outside the class of mu_{level} < nu")
            }
            KeyReason::NonMinimalForWhole => write!(f, "key for nu of non-minimal degree"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Route<E> {
    Structural(KeyReason),
    /// A lower-degree polynomial whose epsilon reaches that of the candidate.
    Falsified {
        witness: Poly<E>,
        witness_epsilon: ExtValue,
    },
    SampledOnly {
        tried: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyCertificate<E> {
    pub verdict: Verdict,
    pub route: Route<E>,
    pub maximal: bool,
    pub epsilon: ExtValue,
}

/// Limits for the epsilon falsifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Total candidates, structural ones included.
    pub candidates: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { candidates: 256, seed: 0x5eed, exec: Exec::default() }
    }
}

impl SearchBudget {
    pub fn new(candidates: usize, seed: u64) -> Self {
        SearchBudget { candidates, seed, ..Default::default() }
    }

    pub fn with_exec(self, exec: Exec) -> Self {
        SearchBudget { exec, ..self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Falsifier<E> {
    Found { witness: Poly<E>, witness_epsilon: ExtValue },
    Exhausted { tried: usize },
}

/// Monic candidates of degree in `1..deg q`: chain keys, normalized Hasse
/// derivatives and expansion digits of `q`, then a coefficient grid, then
/// seeded random polynomials. The order is deterministic.
pub fn falsifier_candidates<V: BaseValuation>(nu: &ValuationHandle<V>, q: &P<V>, budget: &SearchBudget) -> Vec<P<V>> {
    let k = nu.field();
    let n = q.deg0();
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut seen = HashSet::new();
    let mut push = |f: P<V>, out: &mut Vec<P<V>>| {
        let f = f.monic(k);
        let d = f.deg0();
        if d >= 1 && d < n && seen.insert(f.clone()) {
            out.push(f);
        }
    };
    for s in nu.steps() {
        push(s.phi.clone(), &mut out);
    }
    for b in 1..n {
        push(q.hasse(k, b), &mut out);
    }
    for s in nu.steps() {
        if s.phi.deg0() < n {
            if let Ok(digits) = q.q_expansion(k, &s.phi) {
                for a in digits {
                    push(a, &mut out);
                }
            }
        }
    }
    let grid_share = out.len().max(budget.candidates / 2);
    let pool = sample::coefficient_pool(nu.base());
    'grid: for d in 1..n {
        for idx in 0..sample::grid_size(pool.len(), d) {
            if out.len() >= grid_share {
                break 'grid;
            }
            push(sample::grid_poly(nu.base(), &pool, d, idx), &mut out);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut misses = 0;
    while out.len() < budget.candidates && misses < 4 * budget.candidates {
        let before = out.len();
        let d = rng.gen_range(1..n);
        push(sample::random_monic(nu.base(), &mut rng, d), &mut out);
        if out.len() == before {
            misses += 1;
        }
    }
    out
}

/// Searches for `f` with `0 < deg f < deg q` and `epsilon(f) >= epsilon(q)`.
/// The first hit in candidate order is returned for every strategy.
pub fn falsify<V: BaseValuation>(
    nu: &ValuationHandle<V>,
    q: &P<V>,
    budget: &SearchBudget,
) -> Result<Falsifier<crate::valuation::Elem<V>>> {
    let eq = epsilon(nu, q)?.epsilon;
    let cands = falsifier_candidates(nu, q, budget);
    let hit = budget.exec.find_first(&cands, |f| {
        let e = epsilon(nu, f).ok()?.epsilon;
        (e >= eq).then_some(e)
    });
    Ok(match hit {
        Some((i, e)) => Falsifier::Found { witness: cands[i].clone(), witness_epsilon: e },
        None => Falsifier::Exhausted { tried: cands.len() },
    })
}

/// Structural decision alone, when one of the exact routes applies.
pub fn structural_reason<V: BaseValuation>(nu: &ValuationHandle<V>, q: &P<V>) -> Result<Option<KeyReason>> {
    let k = nu.field();
    if q.is_zero() || !q.is_monic(k) || q.deg0() == 0 {
        return domain("key candidates must be monic of positive degree");
    }
    let n = q.deg0();
    let l = nu.depth();
    if nu.last_gamma().is_infinite() && q == nu.phi_min() {
        return Ok(Some(KeyReason::SupportGenerator));
    }
    for j in 0..l {
        let next = &nu.steps()[j + 1].phi;
        if next.deg0() == n && nu.prefix(j).equivalent_in(q, next)? {
            return Ok(Some(KeyReason::InPhiClass { level: j }));
        }
    }
    for j in (0..=l).rev() {
        let mu = if j == l { nu.clone() } else { nu.prefix(j) };
        if mu.degree() > n {
            continue;
        }
        match mu.mlv_key_case(q) {
            Ok(Some(_)) => {
                let minimal = n == mu.degree();
                return Ok(Some(match (j == l, minimal) {
                    (true, true) => KeyReason::MinimalForWhole,
                    (true, false) => KeyReason::NonMinimalForWhole,
                    (false, true) => KeyReason::MinimalBelow { level: j },
                    (false, false) => KeyReason::NonMinimalBelow { level: j },
                }));
            }
            Ok(None) | Err(Error::ResidueUnsupported) => {}
            Err(e) => return Err(e),
        }
    }
    Ok((n == 1).then_some(KeyReason::DegreeOne))
}

/// Whether `q` is a maximal key: it generates the support, or it is a key of
/// minimal degree for `nu` itself.
fn is_maximal<V: BaseValuation>(nu: &ValuationHandle<V>, q: &P<V>) -> Result<bool> {
    if nu.last_gamma().is_infinite() {
        return Ok(q == nu.phi_min());
    }
    Ok(q.deg0() == nu.degree() && nu.mlv_key_case(q)?.is_some())
}

/// Abstract key decision: exact structural routes first, then the budgeted
/// epsilon falsifier.
pub fn is_abstract_key<V: BaseValuation>(
    nu: &ValuationHandle<V>,
    q: &P<V>,
    budget: &SearchBudget,
) -> Result<KeyCertificate<crate::valuation::Elem<V>>> {
    let reason = structural_reason(nu, q)?;
    let eps = epsilon(nu, q)?.epsilon;
    if let Some(r) = reason {
        let verdict = r.verdict();
        let maximal = verdict == Verdict::Yes && is_maximal(nu, q).unwrap_or(false);
        return Ok(KeyCertificate { verdict, route: Route::Structural(r), maximal, epsilon: eps });
    }
    Ok(match falsify(nu, q, budget)? {
        Falsifier::Found { witness, witness_epsilon } => KeyCertificate {
            verdict: Verdict::No,
            route: Route::Falsified { witness, witness_epsilon },
            maximal: false,
            epsilon: eps,
        },
        Falsifier::Exhausted { tried } => KeyCertificate {
            verdict: Verdict::Undetermined,
            route: Route::SampledOnly { tried },
            maximal: false,
            epsilon: eps,
        },
    })
}

#[cfg(test)]
mod tests;
