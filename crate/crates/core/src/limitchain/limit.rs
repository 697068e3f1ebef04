use crate::algebra::{BaseValuation, Poly};
use crate::error::{domain, Error, Result};
use crate::keypoly::{epsilon_by, EpsilonReport};
use crate::ordgroup::ExtValue;
use crate::valuation::{ValuationHandle, P};

use super::ChainSpec;

/// The limit augmentation `f = sum a_s phi^s -> min(rho_inf(a_s) + s gamma)`,
/// evaluated through a materialized prefix deep enough for the digits to
/// have stabilized. It can serve as the ambient valuation for epsilon but is
/// not augmented further.
#[derive(Clone, Debug)]
pub struct LimitAugmentation<V: BaseValuation> {
    deep: ValuationHandle<V>,
    phi: P<V>,
    gamma: ExtValue,
}

impl<V: BaseValuation> LimitAugmentation<V> {
    /// `gamma` must exceed `rho_i(phi)` for every probed `i <= depth`.
    pub fn new(chain: &ChainSpec<V>, phi: P<V>, gamma: ExtValue, depth: usize) -> Result<Self> {
        let k = chain.field();
        if !phi.is_monic(&k) || phi.deg0() <= chain.stable_degree() {
            return domain("a limit augmentation needs a monic polynomial above the chain degree");
        }
        let deep = chain.materialize(depth)?;
        if (0..=depth).any(|i| deep.prefix(i).evaluate(&phi) >= gamma) {
            return domain("the limit value must exceed every chain value of phi");
        }
        Ok(LimitAugmentation { deep, phi, gamma })
    }

    pub fn phi(&self) -> &P<V> {
        &self.phi
    }

    pub fn gamma(&self) -> &ExtValue {
        &self.gamma
    }

    /// Stable value of a polynomial of degree below `deg phi`.
    fn stable(&self, a: &P<V>) -> Result<ExtValue> {
        let n = self.deep.depth();
        let v = self.deep.evaluate(a);
        if a.deg0() >= self.deep.degree() && n >= 1 && self.deep.prefix(n - 1).evaluate(a) != v {
            return Err(Error::BudgetExceeded(format!(
                "{} has not stabilized within {n} steps",
                a.format(self.deep.field(), "x")
            )));
        }
        Ok(v)
    }

    pub fn evaluate(&self, f: &P<V>) -> Result<ExtValue> {
        let digits = f.q_expansion(self.deep.field(), &self.phi)?;
        let mut best = ExtValue::Infinity;
        for (s, a) in digits.iter().enumerate() {
            if a.is_zero() || (s > 0 && self.gamma.is_infinite()) {
                continue;
            }
            let v = if s == 0 { self.stable(a)? } else { self.stable(a)?.add(&self.gamma.mul_int(s as i64)) };
            best = best.min(v);
        }
        Ok(best)
    }

    pub fn epsilon(&self, f: &Poly<crate::valuation::Elem<V>>) -> Result<EpsilonReport> {
        epsilon_by(self.deep.field(), |g| self.evaluate(g), f)
    }
}
