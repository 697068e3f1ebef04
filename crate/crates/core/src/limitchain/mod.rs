//! Continuous MacLane chains `rho_0 -> rho_1 -> ...` of constant degree,
//! produced lazily from a rule and memoized. Stability probes, the search for
//! non-stable polynomials, the limit invariants and their theorem checks.

use std::sync::Mutex;

use crate::algebra::{BaseValuation, Field, Poly};
use crate::error::{domain, Error, Result};
use crate::ordgroup::{ExtValue, Tail};
use crate::valuation::{Elem, ValuationHandle, P};

mod checks;
mod invariants;
mod limit;
mod search;

pub use checks::{check_limit_theorems, CheckLine, CheckStatus, LimitReport};
pub use invariants::{chain_invariants, classify_betas, ChainInvariants};
pub use limit::LimitAugmentation;
pub use search::{find_nonstable_degree, stable_value, NonStableSearch, Stability};

/// How the steps `(chi_i, beta_i)` are produced.
#[derive(Clone, Debug)]
pub enum ChainRule<V: BaseValuation> {
    /// A finite list; `tail` describes `beta_n` for `n` past the list (an
    /// affine tail in `n`, or an asserted supremum of the betas).
    Explicit { steps: Vec<(P<V>, ExtValue)>, tail: Tail },
    /// `chi_i = x - a_i` with `a_i` the Newton approximations of a square
    /// root of `radicand` starting at `first`, each truncated to the
    /// precision it guarantees.
    HenselSqrt { radicand: Elem<V>, first: Elem<V> },
}

#[derive(Debug)]
struct Cache<V: BaseValuation> {
    handles: Vec<ValuationHandle<V>>,
    steps: Vec<(P<V>, ExtValue)>,
    lifts: Vec<Elem<V>>,
}

/// A continuous MacLane chain with an idempotent, internally synchronized
/// materialization cache.
#[derive(Debug)]
pub struct ChainSpec<V: BaseValuation> {
    rule: ChainRule<V>,
    stable_degree: usize,
    declared_witness: Option<P<V>>,
    cache: Mutex<Cache<V>>,
}

impl<V: BaseValuation> Clone for ChainSpec<V> {
    fn clone(&self) -> Self {
        let c = self.cache.lock().expect("cache lock");
        ChainSpec {
            rule: self.rule.clone(),
            stable_degree: self.stable_degree,
            declared_witness: self.declared_witness.clone(),
            cache: Mutex::new(Cache { handles: c.handles.clone(), steps: c.steps.clone(), lifts: c.lifts.clone() }),
        }
    }
}

impl<V: BaseValuation> ChainSpec<V> {
    pub fn new(base: ValuationHandle<V>, rule: ChainRule<V>) -> Result<Self> {
        let k = base.field().clone();
        let stable_degree = match &rule {
            ChainRule::Explicit { steps, .. } => {
                let Some((chi, _)) = steps.first() else {
                    return domain("an explicit chain needs at least one step");
                };
                chi.deg0()
            }
            ChainRule::HenselSqrt { first, .. } => {
                if k.is_zero(&k.from_i64(2)) {
                    return domain("square-root lifting needs 2 to be invertible");
                }
                if k.is_zero(first) {
                    return domain("the first approximation must be nonzero");
                }
                1
            }
        };
        if stable_degree < base.degree() {
            return domain("chain keys must have degree at least the degree of the base valuation");
        }
        Ok(ChainSpec {
            rule,
            stable_degree,
            declared_witness: None,
            cache: Mutex::new(Cache { handles: vec![base], steps: Vec::new(), lifts: Vec::new() }),
        })
    }

    pub fn with_witness(mut self, witness: P<V>) -> Self {
        self.declared_witness = Some(witness);
        self
    }

    pub fn rule(&self) -> &ChainRule<V> {
        &self.rule
    }

    /// The common degree `m` of the chain keys.
    pub fn stable_degree(&self) -> usize {
        self.stable_degree
    }

    pub fn declared_witness(&self) -> Option<&P<V>> {
        self.declared_witness.as_ref()
    }

    pub fn base(&self) -> ValuationHandle<V> {
        self.cache.lock().expect("cache lock").handles[0].clone()
    }

    pub fn field(&self) -> V::F {
        self.base().field().clone()
    }

    /// Number of steps the rule can produce; `None` when unbounded.
    pub fn available(&self) -> Option<usize> {
        match &self.rule {
            ChainRule::Explicit { steps, .. } => Some(steps.len()),
            ChainRule::HenselSqrt { .. } => None,
        }
    }

    /// Largest index that can be probed within `budget`.
    pub fn probe_limit(&self, budget: usize) -> usize {
        self.available().map_or(budget, |a| a.min(budget))
    }

    /// `rho_i`; `rho_0` is the base.
    pub fn materialize(&self, i: usize) -> Result<ValuationHandle<V>> {
        let mut cache = self.cache.lock().expect("cache lock");
        while cache.handles.len() <= i {
            let n = cache.handles.len();
            let (chi, beta) = self.produce(&mut cache, n)?;
            let prev = cache.handles[n - 1].clone();
            self.validate_step(&prev, &cache.steps, &chi, &beta)?;
            let next = prev.augment(chi.clone(), beta.clone())?;
            if next.depth() != prev.depth() + 1 {
                return Err(Error::KeyRequired(format!(
                    "step {n} is equivalent to the previous key and does not extend the chain"
                )));
            }
            cache.steps.push((chi, beta));
            cache.handles.push(next);
        }
        Ok(cache.handles[i].clone())
    }

    /// `(chi_i, beta_i)` for `1 <= i`.
    pub fn step(&self, i: usize) -> Result<(P<V>, ExtValue)> {
        if i == 0 {
            return domain("chain steps are numbered from 1");
        }
        self.materialize(i)?;
        Ok(self.cache.lock().expect("cache lock").steps[i - 1].clone())
    }

    pub fn betas(&self, n: usize) -> Result<Vec<ExtValue>> {
        (1..=n).map(|i| self.step(i).map(|s| s.1)).collect()
    }

    fn produce(&self, cache: &mut Cache<V>, i: usize) -> Result<(P<V>, ExtValue)> {
        let base = cache.handles[0].clone();
        let k = base.field().clone();
        match &self.rule {
            ChainRule::Explicit { steps, .. } => steps
                .get(i - 1)
                .cloned()
                .ok_or_else(|| Error::BudgetExceeded(format!("explicit chain has only {} steps", steps.len()))),
            ChainRule::HenselSqrt { radicand, first } => {
                let bv = base.base();
                let two = k.from_i64(2);
                let v2 = bv.value(&two).expect("2 is nonzero");
                let gap = |a: &Elem<V>| bv.value(&k.sub(&k.mul(a, a), radicand));
                if cache.lifts.is_empty() {
                    cache.lifts.push(first.clone());
                }
                while cache.lifts.len() < i {
                    let a = cache.lifts.last().expect("nonempty").clone();
                    let Some(g) = gap(&a) else {
                        return Err(Error::BudgetExceeded("the approximation is an exact root".into()));
                    };
                    let q = k.div(radicand, &a).ok_or(Error::DivisionByZero)?;
                    let newton = k.div(&k.add(&a, &q), &two).ok_or(Error::DivisionByZero)?;
                    let prec = 2 * g - 3 * v2;
                    let next = bv
                        .truncate(&newton, prec)
                        .ok_or_else(|| Error::Domain("Newton step left the valuation ring".into()))?;
                    cache.lifts.push(next);
                }
                let a = &cache.lifts[i - 1];
                let Some(g) = gap(a) else {
                    return Err(Error::BudgetExceeded("the approximation is an exact root".into()));
                };
                let beta = unit_step(&base, g - v2);
                Ok((Poly::linear(&k, a), beta))
            }
        }
    }

    fn validate_step(
        &self,
        prev: &ValuationHandle<V>,
        steps: &[(P<V>, ExtValue)],
        chi: &P<V>,
        beta: &ExtValue,
    ) -> Result<()> {
        if chi.deg0() != self.stable_degree {
            return domain(format!("chain key of degree {} instead of {}", chi.deg0(), self.stable_degree));
        }
        if let Some((last, last_beta)) = steps.last() {
            if beta <= last_beta {
                return domain("chain values must increase strictly");
            }
            if prev.equivalent_in(chi, last)? {
                return Err(Error::KeyRequired("consecutive chain keys are equivalent".into()));
            }
        }
        Ok(())
    }
}

/// `n` times the unit of the embedding coordinate.
fn unit_step<V: BaseValuation>(h: &ValuationHandle<V>, n: i64) -> ExtValue {
    ExtValue::at(h.rank(), h.coord(), crate::ordgroup::int(n))
}
