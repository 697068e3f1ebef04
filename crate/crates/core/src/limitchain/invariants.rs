use crate::algebra::BaseValuation;
use crate::error::{domain, Error, Result};
use crate::keypoly::epsilon;
use crate::ordgroup::{
    classify_sequence, int, AffineCoord, ExtValue, SeqClassification, SequenceDescriptor, Tail, TailKind,
};
use crate::valuation::{ValuationHandle, P};

use super::search::nonstable_within;
use super::{ChainRule, ChainSpec};

/// Limit invariants of a non-stable polynomial, computed from the prefix
/// `rho_depth`. Sequences are indexed by chain step, `[0]` being step 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainInvariants<E> {
    pub witness: crate::algebra::Poly<E>,
    pub depth: usize,
    /// `rho_i(phi)` for `i = 0..=depth`.
    pub values: Vec<ExtValue>,
    pub betas: Vec<ExtValue>,
    /// `max S` of the `chi_i`-expansion of `phi` under `rho_i`.
    pub t_sequence: Vec<usize>,
    /// First step from which `t` and the initial term of its coefficient are stable.
    pub stabilization_index: usize,
    pub t_inf: usize,
    pub alpha_inf: ExtValue,
    /// The single element of `I(chi_i)`.
    pub b_sequence: Vec<usize>,
    pub b_inf: usize,
    /// Stable value of `d_{b_inf} chi_j`.
    pub delta_inf: ExtValue,
    pub epsilon_sequence: Vec<ExtValue>,
    /// Boundedness of `beta_i - beta_{i0}` for `i > i0`.
    pub classification: std::result::Result<SeqClassification, Error>,
    pub m: usize,
    pub m_inf: usize,
    pub mult: usize,
}

fn expansion_coeff<V: BaseValuation>(rho: &ValuationHandle<V>, chi: &P<V>, phi: &P<V>, t: usize) -> Result<P<V>> {
    let digits = phi.q_expansion(rho.field(), chi)?;
    Ok(digits.get(t).cloned().unwrap_or_else(crate::algebra::Poly::zero))
}

pub fn chain_invariants<V: BaseValuation>(
    chain: &ChainSpec<V>,
    phi: &P<V>,
    budget: usize,
) -> Result<ChainInvariants<crate::valuation::Elem<V>>> {
    let k = chain.field();
    let m = chain.stable_degree();
    let show = || phi.format(&k, "x");
    if !phi.is_monic(&k) {
        return domain("limit invariants need a monic polynomial");
    }
    if phi.deg0() <= m {
        return Err(Error::NotALimitCandidate(format!(
            "{} has degree at most the chain degree {m}; the chain is not essential for it",
            show()
        )));
    }
    let n = chain.probe_limit(budget);
    if n < 2 {
        return Err(Error::BudgetExceeded(format!("only {n} chain steps available")));
    }
    if !nonstable_within(chain, phi, n)? {
        return Err(Error::NotALimitCandidate(format!("{} stabilizes along the chain", show())));
    }
    let top = chain.materialize(n)?;
    let values: Vec<ExtValue> = (0..=n).map(|i| top.prefix(i).evaluate(phi)).collect();
    let betas = chain.betas(n)?;
    let chis: Vec<P<V>> = (1..=n).map(|i| chain.step(i).map(|s| s.0)).collect::<Result<_>>()?;

    let mut t_sequence = Vec::with_capacity(n);
    let mut coeffs = Vec::with_capacity(n);
    for i in 1..=n {
        let tr = top.prefix(i).truncate_eval(&chis[i - 1], phi)?;
        let t = *tr.attaining.iter().max().expect("nonzero phi");
        coeffs.push(expansion_coeff(&top, &chis[i - 1], phi, t)?);
        t_sequence.push(t);
    }
    let t_inf = *t_sequence.last().expect("n >= 2");
    // first step i with t_j = t_inf for j >= i and a_{t,j} ~ a_{t,j+1} under rho_n
    let mut i0 = n;
    while i0 > 1 && t_sequence[i0 - 2] == t_inf && top.equivalent_in(&coeffs[i0 - 2], &coeffs[i0 - 1])? {
        i0 -= 1;
    }
    if i0 == n {
        return Err(Error::BudgetExceeded(format!(
            "the numerical character of {} has not stabilized within {n} steps",
            show()
        )));
    }
    let alpha_inf = top.prefix(i0).evaluate(&coeffs[i0 - 1]);

    let mut b_sequence = Vec::with_capacity(n);
    let mut epsilon_sequence = Vec::with_capacity(n);
    for chi in &chis {
        let rep = epsilon(&top, chi)?;
        let [b] = rep.i_set[..] else {
            return domain(format!("I({}) = {:?} is not a singleton", chi.format(&k, "x"), rep.i_set));
        };
        b_sequence.push(b);
        epsilon_sequence.push(rep.epsilon);
    }
    let b_inf = *b_sequence.last().expect("n >= 2");
    let delta_inf = top.evaluate(&chis[n - 1].hasse(&k, b_inf));

    let classification = classify(chain, &top, &betas, i0);
    Ok(ChainInvariants {
        witness: phi.clone(),
        depth: n,
        values,
        betas,
        t_sequence,
        stabilization_index: i0,
        t_inf,
        alpha_inf,
        b_sequence,
        b_inf,
        delta_inf,
        epsilon_sequence,
        classification,
        m,
        m_inf: phi.deg0(),
        mult: phi.multiplicity(&k)?,
    })
}

/// Classifies `(beta_i - beta_{i0})_{i > i0}`, completing the data with the
/// rule's own description of the tail.
/// Boundedness of `beta_i - beta_{i0}` for `i > i0`, from the first `depth`
/// steps and the rule's tail.
pub fn classify_betas<V: BaseValuation>(
    chain: &ChainSpec<V>,
    i0: usize,
    depth: usize,
) -> Result<std::result::Result<SeqClassification, Error>> {
    if i0 == 0 || depth <= i0 {
        return domain("classification needs 1 <= i0 < depth");
    }
    let top = chain.materialize(depth)?;
    Ok(classify(chain, &top, &chain.betas(depth)?, i0))
}

fn classify<V: BaseValuation>(
    chain: &ChainSpec<V>,
    top: &ValuationHandle<V>,
    betas: &[ExtValue],
    i0: usize,
) -> std::result::Result<SeqClassification, Error> {
    let b0 = betas[i0 - 1].clone();
    let shift = |g: &ExtValue| g.sub(&b0);
    match chain.rule() {
        ChainRule::Explicit { steps, tail } => {
            let prefix: Vec<ExtValue> = steps[i0..].iter().map(|(_, b)| shift(b)).collect();
            let tail = match tail {
                Tail::Affine { coords, kind } => {
                    let zero = vec![int(0); coords.len()];
                    let base = b0.coords().unwrap_or(&zero);
                    let i0q = int(i0 as i64);
                    // beta_n = c + s n, and n = i0 + (index in the shifted sequence)
                    let coords = coords
                        .iter()
                        .zip(base)
                        .map(|(c, b)| AffineCoord::new(c.slope.clone(), &c.intercept + &c.slope * &i0q - b))
                        .collect();
                    Tail::Affine { coords, kind: *kind }
                }
                Tail::AssertedSupremum(Some(s)) => Tail::AssertedSupremum(Some(shift(s))),
                other => other.clone(),
            };
            classify_sequence(&SequenceDescriptor::new(prefix, tail))
        }
        ChainRule::HenselSqrt { .. } => {
            // integer betas increase strictly: beta_{i0 + j} - beta_{i0} >= j
            let prefix: Vec<ExtValue> = betas[i0..].iter().map(shift).collect();
            let coords = (0..top.rank())
                .map(|c| {
                    let slope = if c == top.coord() { int(1) } else { int(0) };
                    AffineCoord::new(slope, int(0))
                })
                .collect();
            classify_sequence(&SequenceDescriptor::new(prefix, Tail::Affine { coords, kind: TailKind::LowerEnvelope }))
        }
    }
}
