use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BaseValuation, Field};
use crate::error::{domain, Error, Result};
use crate::exec::Exec;
use crate::ordgroup::ExtValue;
use crate::sample;
use crate::valuation::{Elem, P};

use super::ChainSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stability {
    /// `rho_i(f) = value` for every `i >= at_index - 1`; `at_index` is the
    /// first index whose value repeats the previous one, or 0 when the degree
    /// alone settles it.
    Stable {
        value: ExtValue,
        at_index: usize,
    },
    NotStabilizedWithin {
        budget: usize,
    },
}

impl<V: BaseValuation> ChainSpec<V> {
    /// `rho_0(f), ..., rho_n(f)`.
    pub fn values(&self, f: &P<V>, n: usize) -> Result<Vec<ExtValue>> {
        let top = self.materialize(n)?;
        Ok((0..=n).map(|i| top.prefix(i).evaluate(f)).collect())
    }
}

/// Stability of `f` along the chain. Two consecutive equal values are
/// conclusive, since the keys of later steps all lie in one class.
pub fn stable_value<V: BaseValuation>(chain: &ChainSpec<V>, f: &P<V>, budget: usize) -> Result<Stability> {
    if budget < 2 {
        return domain("stability probes need a budget of at least 2");
    }
    if f.deg0() < chain.stable_degree() {
        return Ok(Stability::Stable { value: chain.base().evaluate(f), at_index: 0 });
    }
    let n = chain.probe_limit(budget);
    let vals = chain.values(f, n)?;
    Ok(match (1..vals.len()).find(|&i| vals[i] == vals[i - 1]) {
        Some(i) => Stability::Stable { value: vals[i].clone(), at_index: i },
        None => Stability::NotStabilizedWithin { budget: n },
    })
}

/// Whether `rho_0(f) < ... < rho_n(f)`.
pub(super) fn nonstable_within<V: BaseValuation>(chain: &ChainSpec<V>, f: &P<V>, n: usize) -> Result<bool> {
    if f.deg0() < chain.stable_degree() || n < 2 {
        return Ok(false);
    }
    let vals = chain.values(f, n)?;
    Ok(vals.windows(2).all(|w| w[0] < w[1]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonStableSearch<E> {
    Found {
        m_inf: usize,
        witness: crate::algebra::Poly<E>,
        /// The degree is exact only for a declared witness whose lower-degree
        /// companions were all seen to stabilize.
        exact: bool,
        essential: bool,
    },
    AllStableWithin {
        budget: usize,
    },
}

/// Minimal degree of a non-stable polynomial. A declared witness is verified
/// (non-stability, stability of its Hasse derivatives and of the monomials
/// below its degree); otherwise monic polynomials of degree up to
/// `degree_bound` are searched, grid first, then seeded random ones.
pub fn find_nonstable_degree<V: BaseValuation>(
    chain: &ChainSpec<V>,
    budget: usize,
    degree_bound: usize,
    seed: u64,
    exec: Exec,
) -> Result<NonStableSearch<Elem<V>>> {
    let m = chain.stable_degree();
    let k = chain.field();
    if let Some(phi) = chain.declared_witness() {
        let n = chain.probe_limit(budget);
        if n < 2 {
            return Ok(NonStableSearch::AllStableWithin { budget: n });
        }
        if !nonstable_within(chain, phi, n)? {
            return Err(Error::NotALimitCandidate(format!("{} stabilizes along the chain", phi.format(&k, "x"))));
        }
        let d = phi.deg0();
        let mut lower: Vec<P<V>> = (1..=d).map(|b| phi.hasse(&k, b)).filter(|g| !g.is_zero()).collect();
        lower.extend((0..d).map(|e| crate::algebra::Poly::monomial(&k, k.one(), e)));
        let mut exact = true;
        for g in &lower {
            if g.deg0() >= m && !matches!(stable_value(chain, g, n)?, Stability::Stable { .. }) {
                exact = false;
            }
        }
        return Ok(NonStableSearch::Found { m_inf: d, witness: phi.clone(), exact, essential: d > m });
    }
    if chain.probe_limit(budget) < budget {
        return Ok(NonStableSearch::AllStableWithin { budget: chain.probe_limit(budget) });
    }
    chain.materialize(budget)?;
    let base = chain.base();
    let pool = sample::coefficient_pool(base.base());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for d in m.max(1)..=degree_bound {
        let mut cands: Vec<P<V>> = (0..sample::grid_size(pool.len(), d).min(256))
            .map(|i| sample::grid_poly(base.base(), &pool, d, i))
            .collect();
        cands.extend((0..64).map(|_| sample::random_monic(base.base(), &mut rng, d)));
        let hit = exec.find_first(&cands, |f| nonstable_within(chain, f, budget).ok()?.then_some(()));
        if let Some((i, ())) = hit {
            return Ok(NonStableSearch::Found { m_inf: d, witness: cands[i].clone(), exact: false, essential: d > m });
        }
    }
    Ok(NonStableSearch::AllStableWithin { budget })
}
